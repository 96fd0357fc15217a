"""Widom factor sequences, monotonicity classification, and parameter-grid scans.

The Widom factor of a weight at degree ``n`` is ``2**n`` times the weighted
minimax norm of the monic minimizer.  This module computes those factors,
classifies finite sequences of them as increasing / decreasing / constant /
non-monotone, scans rectangular parameter grids cell by cell, labels
parameters relative to the conjectured monotonicity disc, and probes the
continuity of ``W_n`` in the weight exponents.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from widomlab.bounds import asymptote, weight_sup_bound
from widomlab.minimax import solve
from widomlab.special import WeightParams

__all__ = [
    "CLASSIFICATIONS",
    "WidomSequence",
    "ScanCell",
    "ScanResult",
    "classify",
    "widom_factor",
    "widom_sequence",
    "scan",
    "conjecture_region",
    "continuity_probe",
]

CLASSIFICATIONS = ("Increasing", "Decreasing", "Constant", "NonMonotone")

# Conjectured monotonicity disc: centre (1/4, 1/4), squared radius 1/8.  The
# outer gate 1.184/8 marks where decreasing behaviour is observed instead.
_DISC_CENTER = 0.25
_INNER_R2 = 1.0 / 8.0
_OUTER_R2 = 1.184 / 8.0


@dataclass(frozen=True)
class WidomSequence:
    """Widom factors ``W_n`` for ``n = n_start .. n_start + len(values) - 1``."""

    weight: WeightParams
    n_start: int
    values: tuple[float, ...]
    asymptote: float
    classification: str

    def __post_init__(self) -> None:
        if self.n_start < 1:
            raise ValueError("n_start must be at least 1")
        if any(v <= 0.0 for v in self.values):
            raise ValueError("Widom factors must be positive")
        if self.classification not in CLASSIFICATIONS:
            raise ValueError(f"unknown classification {self.classification!r}")


@dataclass(frozen=True)
class ScanCell:
    """One grid cell of a parameter scan.

    ``classification`` is one of the sequence labels, or ``"Failed"`` when the
    solver raised for this cell; ``error`` then carries the message.
    """

    weight: WeightParams
    values: tuple[float, ...]
    classification: str
    error: str | None = None

    def __post_init__(self) -> None:
        if self.classification not in CLASSIFICATIONS + ("Failed",):
            raise ValueError(f"unknown classification {self.classification!r}")
        if (self.classification == "Failed") != (self.error is not None):
            raise ValueError("error message must accompany exactly the Failed label")


@dataclass(frozen=True)
class ScanResult:
    """Full grid scan: ``resolution**2`` cells over a square parameter range.

    Cells are stored row-major with ``rho_a`` varying fastest:
    ``cells[i_b * resolution + i_a]`` holds the point
    ``(grid[i_a], grid[i_b])``.
    """

    grid_spec: tuple[tuple[float, float], int]
    cells: tuple[ScanCell, ...]
    n_max: int
    runtime: float

    def __post_init__(self) -> None:
        (_, resolution) = self.grid_spec
        if len(self.cells) != resolution * resolution:
            raise ValueError("cell count must equal resolution squared")

    def grid_values(self) -> tuple[float, ...]:
        (lo, hi), resolution = self.grid_spec
        return tuple(float(v) for v in np.linspace(lo, hi, resolution))

    def cell(self, i_a: int, i_b: int) -> ScanCell:
        (_, resolution) = self.grid_spec
        if not (0 <= i_a < resolution and 0 <= i_b < resolution):
            raise IndexError("grid index out of range")
        return self.cells[i_b * resolution + i_a]


def classify(values, tol: float = 1e-9) -> str:
    """Label a finite sequence by its monotonicity at relative tolerance ``tol``.

    A sequence whose total spread is below tolerance is ``Constant``.
    Otherwise it is ``Increasing`` when no step drops below ``-tol`` and some
    step exceeds ``tol`` (``Decreasing`` symmetrically), else ``NonMonotone``.
    """
    vals = [float(v) for v in values]
    if len(vals) < 2:
        raise ValueError("classification needs at least two values")
    scale = max(abs(v) for v in vals)
    gate = tol * scale if scale > 0.0 else tol
    if max(vals) - min(vals) <= gate:
        return "Constant"
    steps = [b - a for a, b in zip(vals, vals[1:])]
    if all(s >= -gate for s in steps) and any(s > gate for s in steps):
        return "Increasing"
    if all(s <= gate for s in steps) and any(s < -gate for s in steps):
        return "Decreasing"
    return "NonMonotone"


def widom_factor(w: WeightParams, n: int) -> float:
    """Return ``W_n = 2**n`` times the weighted minimax norm at degree ``n >= 1``.

    Degree zero is excluded: ``W_0`` equals the weight supremum and is served
    by :func:`widomlab.bounds.weight_sup_bound`.
    """
    if n < 1:
        raise ValueError("widom_factor requires n >= 1; degree 0 is weight_sup_bound")
    return (2.0 ** n) * solve(w, n).norm


def widom_sequence(w: WeightParams, n_max: int, tol: float = 1e-9) -> WidomSequence:
    """Compute ``W_1 .. W_{n_max}`` and classify the resulting sequence."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    values = tuple(widom_factor(w, n) for n in range(1, n_max + 1))
    return WidomSequence(
        weight=w,
        n_start=1,
        values=values,
        asymptote=asymptote(w),
        classification=classify(values, tol),
    )


def _scan_cell(task: tuple[float, float, int, float]) -> ScanCell:
    rho_a, rho_b, n_max, tol = task
    w = WeightParams(rho_a, rho_b)
    try:
        seq = widom_sequence(w, n_max, tol)
    except Exception as exc:  # record per-cell failure, keep scanning
        return ScanCell(
            weight=w,
            values=(),
            classification="Failed",
            error=f"{type(exc).__name__}: {exc}",
        )
    return ScanCell(weight=w, values=seq.values, classification=seq.classification)


def scan(
    rho_range: tuple[float, float] = (0.0, 0.8),
    resolution: int = 40,
    n_max: int = 10,
    *,
    tol: float = 1e-9,
    workers: int = 1,
) -> ScanResult:
    """Classify every cell of a ``resolution**2`` grid over ``rho_range`` squared.

    Cells are independent work items; with ``workers > 1`` they run in a
    process pool.  Results are gathered by grid index, so the classification
    matrix is deterministic regardless of execution order.  A solver failure
    is recorded in its cell and the scan continues.
    """
    lo, hi = float(rho_range[0]), float(rho_range[1])
    if not (0.0 <= lo < hi):
        raise ValueError("rho_range must satisfy 0 <= lo < hi")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    points = np.linspace(lo, hi, resolution)
    tasks = [
        (float(ra), float(rb), n_max, tol)
        for rb in points
        for ra in points
    ]
    start = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = tuple(pool.map(_scan_cell, tasks, chunksize=8))
    else:
        cells = tuple(_scan_cell(task) for task in tasks)
    runtime = time.perf_counter() - start
    return ScanResult(
        grid_spec=((lo, hi), resolution),
        cells=cells,
        n_max=n_max,
        runtime=runtime,
    )


def conjecture_region(w: WeightParams) -> str:
    """Place a parameter point relative to the conjectured monotonicity disc.

    Returns ``"Inside"`` when the squared distance from (1/4, 1/4) is below
    1/8, ``"Outside"`` when it exceeds 1.184/8, and ``"Between"`` otherwise.
    """
    r2 = (w.rho_a - _DISC_CENTER) ** 2 + (w.rho_b - _DISC_CENTER) ** 2
    if r2 < _INNER_R2:
        return "Inside"
    if r2 > _OUTER_R2:
        return "Outside"
    return "Between"


def continuity_probe(w: WeightParams, delta: float, n: int) -> float:
    """Maximum change of ``W_n`` over the four axis perturbations of size ``delta``.

    Perturbations that would push an exponent negative are skipped, so the
    probe is well defined on the boundary of the parameter quadrant.
    """
    if delta < 0.0:
        raise ValueError("delta must be nonnegative")
    if delta == 0.0:
        return 0.0
    base = widom_factor(w, n)
    worst = 0.0
    for da, db in ((delta, 0.0), (-delta, 0.0), (0.0, delta), (0.0, -delta)):
        ra, rb = w.rho_a + da, w.rho_b + db
        if ra < 0.0 or rb < 0.0:
            continue
        worst = max(worst, abs(widom_factor(WeightParams(ra, rb), n) - base))
    return worst
