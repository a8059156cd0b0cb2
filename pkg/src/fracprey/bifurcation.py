"""Parameter-sweep engine: bifurcation diagrams over the step size, the
stability-region boundary in the (c, m) plane, and tabular export of
trajectories and orbits."""

from dataclasses import dataclass

import numpy as np

from .discrete import DiscreteConfig, detect_structural_bifurcations, iterate_orbit
from .model import ModelParams, thresholds
from .pece import Trajectory
from .stability import critical_order

__all__ = [
    "Dataset",
    "RegionResult",
    "SweepResult",
    "cluster_count",
    "export_series",
    "stability_region_cm",
    "sweep_step_size",
]


@dataclass(frozen=True)
class SweepResult:
    """Attractor samples per grid value of the sweep parameter.

    samples[i] holds the recorded post-transient states at
    parameter_values[i] (possibly fewer than requested when the orbit
    escaped, flagged in escaped[i]); events lists the analytic bifurcation
    locations falling inside the sweep range.
    """

    parameter_name: str
    parameter_values: np.ndarray
    samples: list
    escaped: list
    events: list


@dataclass(frozen=True)
class RegionResult:
    """Boundary points (c, m*) plus the grid values that had to be skipped."""

    points: list
    skipped: list


@dataclass(frozen=True)
class Dataset:
    """Column-oriented table ready for CSV emission."""

    columns: tuple
    rows: list


def sweep_step_size(
    p: ModelParams,
    m: float,
    s_min: float,
    s_max: float,
    n_points: int,
    transient: int = 2000,
    n_samples: int = 200,
    x0=(10.0, 5.0),
    follow: bool = True,
    kick: float = 0.0,
) -> SweepResult:
    """Sample the attractor of the map on a uniform step-size grid.

    In follow mode each grid point starts from the previous final state
    (optionally nudged by the relative perturbation `kick`, which keeps a
    followed orbit from sitting numerically frozen on an unstable fixed
    point); otherwise every point restarts from x0.  Escaped orbits are
    flagged and the follow state resets to x0.
    """
    if not 0.0 < s_min < s_max:
        raise ValueError(f"need 0 < s_min < s_max, got {s_min!r}, {s_max!r}")
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points!r}")
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples!r}")

    s_values = np.linspace(s_min, s_max, n_points)
    start = np.asarray(x0, dtype=float)
    carried = start.copy()
    samples = []
    escaped = []
    for s in s_values:
        init = carried * (1.0 + kick) if follow else start
        cfg = DiscreteConfig(s=float(s), m=m, iterations=transient + n_samples, transient=transient)
        orbit = iterate_orbit(p, cfg, init)
        samples.append(orbit.samples.copy())
        escaped.append(orbit.escaped)
        carried = start.copy() if orbit.escaped else orbit.states[-1].copy()

    events = [
        e
        for e in detect_structural_bifurcations(p, m)
        if e.s is not None and s_min <= e.s <= s_max
    ]
    return SweepResult(
        parameter_name="s",
        parameter_values=s_values,
        samples=samples,
        escaped=escaped,
        events=events,
    )


def cluster_count(points: np.ndarray, merge_radius_rel: float = 1e-4) -> int:
    """Number of distinct sample clusters under a relative merge radius.

    Greedy and deterministic: a point joins the first existing cluster
    center within radius, otherwise founds a new one.  Adequate for telling
    fixed points from period-2/4/8 orbits and from spread-out attractors.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[0] == 0:
        return 0
    scale = max(float(np.max(np.abs(pts))), 1e-30)
    radius = merge_radius_rel * scale
    centers: list = []
    for row in pts:
        for center in centers:
            if np.linalg.norm(row - center) <= radius:
                break
        else:
            centers.append(row)
    return len(centers)


def stability_region_cm(p: ModelParams, c_grid, tolerance: float = 1e-9) -> RegionResult:
    """Critical-order boundary m*(c) of the interior state over a c grid.

    Only complexities strictly inside (0, c2) produce an order-driven
    stability switch; grid values outside that window (within `tolerance`
    of its ends) are skipped with a reason.  Below the returned curve the
    interior state is stable, above it unstable.
    """
    from dataclasses import replace

    th = thresholds(p)
    points = []
    skipped = []
    for c in c_grid:
        c = float(c)
        if th.c2 is None:
            skipped.append((c, "c2 undefined for these parameters"))
            continue
        if not tolerance < c < th.c2 - tolerance:
            skipped.append((c, f"c outside (0, c2={th.c2:.6g})"))
            continue
        result = critical_order(replace(p, c=c))
        if result.value is None:
            skipped.append((c, result.reason))
        else:
            points.append((c, result.value))
    return RegionResult(points=points, skipped=skipped)


def export_series(source, format: str = "series") -> Dataset:
    """Tabulate a trajectory or orbit.

    format="series" yields (t, x, y) rows for a continuous trajectory and
    (n, x, y) rows for an orbit; format="phase" yields (x, y) pairs for
    either.  Empty sources produce a header-only dataset.
    """
    if format not in ("series", "phase"):
        raise ValueError(f"format must be 'series' or 'phase', got {format!r}")
    if isinstance(source, Trajectory):
        states = np.atleast_2d(source.states)
        index = source.times
        index_name = "t"
    else:
        states = np.atleast_2d(source.states)
        index = np.arange(states.shape[0], dtype=float)
        index_name = "n"
    if states.size == 0:
        return Dataset(columns=("x", "y") if format == "phase" else (index_name, "x", "y"), rows=[])
    if format == "phase":
        return Dataset(columns=("x", "y"), rows=[(float(r[0]), float(r[1])) for r in states])
    return Dataset(
        columns=(index_name, "x", "y"),
        rows=[(float(i), float(r[0]), float(r[1])) for i, r in zip(index, states)],
    )
