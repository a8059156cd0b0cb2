"""Special functions backing the fractional-order machinery.

Two entry points: the gamma function restricted to the positive axis (all
uses here have arguments in (0, 10]) and the one-parameter Mittag-Leffler
function E_m(z), which plays the role of exp() for Caputo derivatives of
order m.
"""

import math

from scipy.integrate import quad

__all__ = ["MittagLefflerError", "gamma_fn", "mittag_leffler"]

# Partial sums are trusted only while the largest term stays below this cap;
# past it, float64 cancellation (and the lgamma argument rounding that scales
# with the peak) eats the 1e-10 absolute budget.
_SERIES_TERM_CAP = 1e3
_MAX_TERMS = 20_000


class MittagLefflerError(ArithmeticError):
    """Requested tolerance not met within the term/quadrature budget."""


def gamma_fn(x: float) -> float:
    """Gamma function for x > 0."""
    if not x > 0:
        raise ValueError(f"gamma_fn requires x > 0, got {x!r}")
    return math.gamma(x)


def _check_order(m: float) -> None:
    if not 0.0 < m <= 1.0:
        raise ValueError(f"fractional order must satisfy 0 < m <= 1, got {m!r}")


def _series(m: float, z: float, tol: float):
    """Sum z^k / Gamma(m k + 1) directly.

    Returns None when the peak term exceeds the float64 safety cap (the sum
    would alternate through huge terms and lose the absolute-error target).
    Terms are built in log space so no intermediate power overflows.
    """
    total = 1.0  # k = 0
    log_az = math.log(abs(z))
    sign = -1.0 if z < 0 else 1.0
    prev = 1.0
    term_sign = 1.0
    for k in range(1, _MAX_TERMS):
        log_t = k * log_az - math.lgamma(m * k + 1.0)
        if log_t > math.log(_SERIES_TERM_CAP):
            return None
        term_sign *= sign
        t = term_sign * math.exp(log_t)
        total += t
        if abs(t) < 0.1 * tol and abs(t) < prev:
            # Past the peak the terms decay monotonically; for alternating
            # (z < 0) series the remainder is bounded by the next term.
            return total
        prev = abs(t)
    raise MittagLefflerError(
        f"series for E_{m}({z}) did not reach tol={tol} within {_MAX_TERMS} terms"
    )


def _negative_argument_integral(m: float, x: float, tol: float) -> float:
    """E_m(-x) for x > 0, 0 < m < 1, via the real spectral integral.

    After substituting u = r^m the representation reads

        E_m(-x) = x sin(m pi) / (m pi) *
                  integral_0^inf exp(-u^(1/m)) / (u^2 + 2 x u cos(m pi) + x^2) du

    The integrand is smooth at u = 0 and decays like exp(-u^(1/m)); the
    denominator is written in completed-square form, with a quadrature break
    at its minimum u = -x cos(m pi) when that lies inside the range.
    """
    cos_m = math.cos(math.pi * m)
    sin_m = math.sin(math.pi * m)
    width = x * sin_m  # > 0 for 0 < m < 1

    def integrand(u: float) -> float:
        return math.exp(-(u ** (1.0 / m))) / ((u + x * cos_m) ** 2 + width**2)

    prefactor = x * sin_m / (m * math.pi)
    # exp(-u^(1/m)) < 1e-19 once u^(1/m) > 44
    u_star = -x * cos_m
    cut = max(44.0**m, 2.0 * u_star, 1.0)
    eps_abs = 0.05 * tol / prefactor
    points = [u_star] if 0.0 < u_star < cut else None
    head, err_head = quad(integrand, 0.0, cut, points=points, limit=400,
                          epsabs=eps_abs, epsrel=1e-12)
    tail, err_tail = quad(integrand, cut, math.inf, limit=200,
                          epsabs=eps_abs, epsrel=1e-12)
    if prefactor * (err_head + err_tail) > tol:
        raise MittagLefflerError(
            f"quadrature for E_{m}(-{x}) reports error above tol={tol}"
        )
    return prefactor * (head + tail)


def mittag_leffler(m: float, z: float, tol: float = 1e-10) -> float:
    """One-parameter Mittag-Leffler function E_m(z) = sum z^k / Gamma(m k + 1).

    Absolute error <= tol on z <= 0 (the caller envelope: linear fractional
    decay always has a non-positive argument) and for any z the plain series
    can resolve.  E_1 reduces to exp; E_m(0) = 1.
    """
    _check_order(m)
    if m == 1.0:
        return math.exp(z)
    if z == 0.0:
        return 1.0
    val = _series(m, z, tol)
    if val is not None:
        return val
    if z < 0.0:
        return _negative_argument_integral(m, -z, tol)
    raise MittagLefflerError(
        f"E_{m}({z}): positive argument outside the series-safe region"
    )
