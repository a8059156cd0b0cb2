"""Adams-type predictor-corrector (PECE) integration of Caputo initial-value
problems on a uniform grid.

The scheme is the standard fractional Adams-Bashforth-Moulton pair: a
fractional rectangle rule predicts, a fractional trapezoid rule corrects,
both anchored at the initial state and convolving the full stored history.
For m = 1 the weights collapse to the classical one-step Adams pair.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .special import gamma_fn

__all__ = ["SolverConfig", "SolverDivergenceError", "Trajectory", "pece_solve"]


class SolverDivergenceError(RuntimeError):
    """A state component exceeded the blow-up bound or went non-finite."""

    def __init__(self, t: float, state, bound: float):
        self.t = t
        self.state = np.asarray(state)
        self.bound = bound
        super().__init__(
            f"solution escaped at t={t:g}: |state| exceeded {bound:g} "
            f"(state={np.array2string(self.state, precision=6)})"
        )


@dataclass(frozen=True)
class SolverConfig:
    """Grid and scheme options for pece_solve.

    memory_window keeps only the newest history nodes in the convolution
    (short-memory truncation); None retains everything.
    """

    step: float
    horizon: float
    corrector_sweeps: int = 1
    memory_window: Optional[int] = None
    blowup_bound: float = 1e12

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"step must be > 0, got {self.step!r}")
        if not self.horizon >= self.step:
            raise ValueError(
                f"horizon must be >= step, got horizon={self.horizon!r} step={self.step!r}"
            )
        if self.corrector_sweeps < 1:
            raise ValueError(f"corrector_sweeps must be >= 1, got {self.corrector_sweeps!r}")
        if self.memory_window is not None and self.memory_window < 1:
            raise ValueError(f"memory_window must be >= 1 or None, got {self.memory_window!r}")
        if not self.blowup_bound > 0:
            raise ValueError(f"blowup_bound must be > 0, got {self.blowup_bound!r}")


@dataclass(frozen=True)
class Trajectory:
    """Grid solution of a Caputo initial-value problem.

    times[0] = 0, strictly increasing; states has one row per node.
    """

    order: float
    times: np.ndarray
    states: np.ndarray
    scheme: str = "pece"


def pece_solve(rhs: Callable, x0, m: float, cfg: SolverConfig) -> Trajectory:
    """Integrate D^m u = rhs(u) from u(0) = x0 on the uniform grid.

    rhs maps a state vector to the rate vector (autonomous field).  The
    predictor convolves the history with rectangle-rule weights, the
    corrector with trapezoid-rule weights, repeated cfg.corrector_sweeps
    times; the final evaluation seeds the next step's history.
    """
    if not 0.0 < m <= 1.0:
        raise ValueError(f"fractional order must satisfy 0 < m <= 1, got {m!r}")
    h = cfg.step
    n_steps = int(math.floor(cfg.horizon / h + 1e-9))
    u0 = np.atleast_1d(np.asarray(x0, dtype=float))

    k = np.arange(n_steps + 2, dtype=float)
    predictor_kernel = (k + 1.0) ** m - k**m            # index = distance to new node - 1
    corrector_kernel = (k + 2.0) ** (m + 1.0) + k ** (m + 1.0) - 2.0 * (k + 1.0) ** (m + 1.0)
    c_pred = h**m / gamma_fn(m + 1.0)
    c_corr = h**m / gamma_fn(m + 2.0)

    states = np.empty((n_steps + 1, u0.size))
    rates = np.empty_like(states)
    states[0] = u0
    rates[0] = np.asarray(rhs(u0), dtype=float)

    for n in range(n_steps):
        lo = 0 if cfg.memory_window is None else max(0, n + 1 - cfg.memory_window)
        hist = rates[lo : n + 1]
        w_pred = predictor_kernel[: n + 1 - lo][::-1]
        predicted = u0 + c_pred * (w_pred @ hist)

        if lo == 0:
            # the oldest node carries its own weight in the trapezoid rule
            w0 = n ** (m + 1.0) - (n - m) * (n + 1.0) ** m
            hist_term = w0 * rates[0] + corrector_kernel[:n][::-1] @ rates[1 : n + 1]
        else:
            hist_term = corrector_kernel[: n + 1 - lo][::-1] @ hist

        value = predicted
        for _ in range(cfg.corrector_sweeps):
            value = u0 + c_corr * (np.asarray(rhs(value), dtype=float) + hist_term)

        if not np.all(np.isfinite(value)) or np.max(np.abs(value)) > cfg.blowup_bound:
            raise SolverDivergenceError((n + 1) * h, value, cfg.blowup_bound)
        states[n + 1] = value
        rates[n + 1] = np.asarray(rhs(value), dtype=float)

    times = np.arange(n_steps + 1, dtype=float) * h
    return Trajectory(order=m, times=times, states=states, scheme="pece")
