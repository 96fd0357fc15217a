"""Bernstein-type bounds for weighted Jacobi sup-norms.

Centerpiece is the quantity

    M_n(alpha, beta) = 2^{(1-alpha-beta)/2} Gamma(n+q+1) Gamma(n+alpha+beta+1)
                       / [ (n+(alpha+beta+1)/2)^{q+1/2}
                           Gamma(n+(alpha+beta+1)/2) Gamma(n+(alpha+beta)/2+1) ],

q = max(alpha, beta), which dominates the weighted sup of the monic Jacobi
polynomial for alpha, beta in [-1/2, 1/2] and increases to 2^{1-rho_a-rho_b}.
The module also carries the Chow--Gatteschi--Wong right-hand side, the ratio
function f with f(n) = M_{n+1}/M_n, and the sign analysis of the quadratic
numerator coefficients c_0, c_1, c_2 of (log f)'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from widomlab.special import JacobiParams, WeightParams, log_gamma

__all__ = [
    "BoundReport",
    "PropertyViolation",
    "m_bound",
    "m_bound_raw",
    "m_ratio",
    "c_coeffs",
    "verify_coeff_lemma",
    "cgw_rhs",
    "asymptote",
    "weight_sup_bound",
]


class PropertyViolation(RuntimeError):
    """A verified mathematical property failed beyond tolerance."""


@dataclass(frozen=True)
class BoundReport:
    """Outcome of a bound-verification sweep.

    ``values`` holds one number per index in the inclusive ``n_range``;
    ``max_violation`` is 0 when every check passed within tolerance.
    """

    n_range: tuple[int, int]
    values: tuple[float, ...]
    monotone: bool
    limit: float
    max_violation: float

    def __post_init__(self):
        lo, hi = self.n_range
        if len(self.values) != hi - lo + 1:
            raise ValueError("values must have one entry per n in n_range")
        if self.max_violation < 0.0:
            raise ValueError("max_violation must be nonnegative")


def _check_square(p: JacobiParams) -> None:
    if not (-0.5 <= p.alpha <= 0.5 and -0.5 <= p.beta <= 0.5):
        raise ValueError(
            f"bound is only asserted for alpha, beta in [-1/2, 1/2], got {p}"
        )


def m_bound(p: JacobiParams, n: int) -> float:
    """The dominating quantity M_n(alpha, beta), via log-space Gamma arithmetic."""
    _check_square(p)
    if n < 1:
        raise ValueError("degree must be at least 1")
    a, b = p.alpha, p.beta
    q, s = p.q, a + b
    return math.exp(
        0.5 * (1.0 - s) * math.log(2.0)
        + log_gamma(n + q + 1.0)
        + log_gamma(n + s + 1.0)
        - (q + 0.5) * math.log(n + 0.5 * (s + 1.0))
        - log_gamma(n + 0.5 * (s + 1.0))
        - log_gamma(n + 0.5 * s + 1.0)
    )


def m_bound_raw(p: JacobiParams, n: int) -> float:
    """M_n in its raw binomial form; algebra guard for :func:`m_bound`.

    Gamma(q+1) 2^{2n+(a+b+1)/2} C(n+q, n) / [ sqrt(pi) (n+(a+b+1)/2)^{q+1/2} C(2n+a+b, n) ].
    """
    _check_square(p)
    if n < 1:
        raise ValueError("degree must be at least 1")
    a, b = p.alpha, p.beta
    q, s = p.q, a + b
    log_binom1 = log_gamma(n + q + 1.0) - log_gamma(n + 1.0) - log_gamma(q + 1.0)
    log_binom2 = log_gamma(2.0 * n + s + 1.0) - log_gamma(n + 1.0) - log_gamma(n + s + 1.0)
    return math.exp(
        log_gamma(q + 1.0)
        + (2.0 * n + 0.5 * (s + 1.0)) * math.log(2.0)
        + log_binom1
        - 0.5 * math.log(math.pi)
        - (q + 0.5) * math.log(n + 0.5 * (s + 1.0))
        - log_binom2
    )


def m_ratio(p: JacobiParams, x: float) -> float:
    """The ratio function f with f(n) = M_{n+1}(alpha,beta) / M_n(alpha,beta).

    f(x) = (x+q+1)(x+a+b+1)(x+(a+b+1)/2)^{q-1/2}
           / [ (x+(a+b)/2+1)(x+(a+b+1)/2+1)^{q+1/2} ].
    """
    if not x > 0.0:
        raise ValueError("x must be positive")
    a, b = p.alpha, p.beta
    q, s = p.q, a + b
    return (
        (x + q + 1.0)
        * (x + s + 1.0)
        * (x + 0.5 * (s + 1.0)) ** (q - 0.5)
        / ((x + 0.5 * s + 1.0) * (x + 0.5 * (s + 1.0) + 1.0) ** (q + 0.5))
    )


def c_coeffs(p: JacobiParams) -> tuple[float, float, float]:
    """Coefficients (c0, c1, c2) of the quadratic numerator of (log f)'.

    Written for the branch beta <= alpha (so q = alpha); all three are <= 0 on
    the triangle -1/2 <= beta <= alpha <= 1/2, vanishing only at the vertices
    with |alpha| = |beta| = 1/2.
    """
    a, b = p.alpha, p.beta
    c2 = 0.5 * a * a + 0.5 * b * b - 0.25
    c1 = (
        0.75 * a**3
        + (4.0 * b + 8.0) * a**2 / 8.0
        + (b * b - 1.0) * a / 4.0
        + 0.5 * b**3
        + b * b
        - 0.25 * b
        - 0.5
    )
    c0 = (
        0.25 * a**4
        + (3.0 * b + 6.0) * a**3 / 8.0
        + (b + 2.0) ** 2 * a**2 / 8.0
        + (b * b - 1.0) * (b + 2.0) * a / 8.0
        + 0.125 * b**4
        + 0.5 * b**3
        + 0.375 * b * b
        - 0.25 * b
        - 0.25
    )
    return c0, c1, c2


# boundary factorizations of c0 and c1 along the three triangle edges,
# parametrized by t in [0, 1]
_EDGE_FACTORIZATIONS = {
    "alpha=1/2": (
        lambda t: (0.5, t - 0.5),
        lambda t: 0.125 * (t + 2.5) * (t + 1.0) * t * (t - 1.0),
        lambda t: t * (t - 1.0) * (0.5 * t + 0.875),
    ),
    "beta=-1/2": (
        lambda t: (t - 0.5, -0.5),
        lambda t: t * (t - 1.0) * (0.25 * t * t + 0.3125 * t + 0.125),
        lambda t: 0.75 * t * (t - 1.0) * (t + 0.5),
    ),
    "alpha=beta": (
        lambda t: (t - 0.5, t - 0.5),
        lambda t: (t + 0.5) ** 2 * t * (t - 1.0),
        lambda t: 2.0 * (t + 0.5) * t * (t - 1.0),
    ),
}

_TRIANGLE_VERTICES = ((0.5, 0.5), (0.5, -0.5), (-0.5, -0.5))


def verify_coeff_lemma(samples: int, tol: float = 1e-12) -> BoundReport:
    """Check c0, c1, c2 <= 0 on the triangle -1/2 <= beta <= alpha <= 1/2.

    Samples the closed triangle on a ``samples`` x ``samples`` grid, confirms
    the sign of each coefficient, that equality occurs only at the triangle
    vertices, and that the printed edge factorizations of c0 and c1 agree with
    direct evaluation.  Returns a report whose ``values`` are the per-
    coefficient maxima; raises :class:`PropertyViolation` on any failure.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples per axis")
    grid = np.linspace(-0.5, 0.5, samples)
    offenders: list[tuple[float, float, str, float]] = []
    maxima = [-math.inf, -math.inf, -math.inf]
    for a in grid:
        for b in grid[grid <= a]:
            cs = c_coeffs(JacobiParams(float(a), float(b)))
            near_vertex = any(
                abs(a - va) <= tol and abs(b - vb) <= tol for va, vb in _TRIANGLE_VERTICES
            )
            for k, val in enumerate(cs):
                maxima[k] = max(maxima[k], val)
                if val > tol:
                    offenders.append((float(a), float(b), f"c{k} > 0", val))
                elif abs(val) <= tol and not near_vertex:
                    offenders.append((float(a), float(b), f"c{k} = 0 off-vertex", val))

    for name, (point, c0_fact, c1_fact) in _EDGE_FACTORIZATIONS.items():
        for t in np.linspace(0.0, 1.0, max(samples, 5)):
            a, b = point(float(t))
            c0, c1, _ = c_coeffs(JacobiParams(a, b))
            if abs(c0 - c0_fact(float(t))) > tol or abs(c1 - c1_fact(float(t))) > tol:
                offenders.append((a, b, f"factorization mismatch on edge {name}", t))

    if offenders:
        shown = ", ".join(f"({a:.6g},{b:.6g}): {why}" for a, b, why, _ in offenders[:5])
        raise PropertyViolation(
            f"coefficient sign lemma failed at {len(offenders)} points: {shown}"
        )
    violation = max(maxima)
    return BoundReport(
        n_range=(0, 2),
        values=tuple(maxima),
        monotone=True,
        limit=0.0,
        max_violation=violation if violation > tol else 0.0,
    )


def verify_m_monotone(
    n_max: int = 1000, samples: int = 9, limit_tol: float = 1e-3
) -> BoundReport:
    """Check that M_n decreases in n toward its limit on the parameter square.

    For every (alpha, beta) on a ``samples`` x ``samples`` grid of
    [-1/2, 1/2]^2, checks M_1 <= M_2 <= ... <= M_{n_max}, strictly except at
    the four corners where the sequence is identically flat (tiny log-Gamma
    cancellation noise is tolerated), and that
    |M_{n_max} - 2^{(1-alpha-beta)/2}| <= limit_tol.  Returns a report whose
    ``values`` are the final deviations per grid point, indexed row-major with
    alpha fastest; raises :class:`PropertyViolation` on any monotonicity break
    or limit miss.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    if samples < 2:
        raise ValueError("need at least 2 samples per axis")
    grid = np.linspace(-0.5, 0.5, samples)
    step_tol = 1e-11
    offenders: list[str] = []
    deviations: list[float] = []
    for b in grid:
        for a in grid:
            p = JacobiParams(float(a), float(b))
            corner = abs(abs(p.alpha) - 0.5) < 1e-15 and abs(abs(p.beta) - 0.5) < 1e-15
            lim = 2.0 ** (0.5 * (1.0 - p.alpha - p.beta))
            first = prev = m_bound(p, 1)
            worst_step = 0.0
            for n in range(2, n_max + 1):
                cur = m_bound(p, n)
                worst_step = max(worst_step, prev - cur)
                prev = cur
            dev = abs(prev - lim)
            deviations.append(dev)
            if worst_step > step_tol:
                offenders.append(f"({a:.6g},{b:.6g}): M_n decreased by {worst_step:.3g}")
            if not corner and prev - first <= 0.0:
                offenders.append(f"({a:.6g},{b:.6g}): no strict increase off-corner")
            if dev > limit_tol:
                offenders.append(f"({a:.6g},{b:.6g}): |M_{n_max} - limit| = {dev:.3g}")
    if offenders:
        raise PropertyViolation(
            f"M_n sweep failed at {len(offenders)} points: " + ", ".join(offenders[:5])
        )
    return BoundReport(
        n_range=(1, samples * samples),
        values=tuple(deviations),
        monotone=True,
        limit=max(deviations),
        max_violation=0.0,
    )


def cgw_rhs(p: JacobiParams, n: int) -> float:
    """Chow--Gatteschi--Wong bound: Gamma(q+1)/Gamma(1/2) C(n+q,n) (n+(a+b+1)/2)^{-q-1/2}."""
    _check_square(p)
    if n < 1:
        raise ValueError("degree must be at least 1")
    q, s = p.q, p.alpha + p.beta
    return math.exp(
        log_gamma(n + q + 1.0)
        - log_gamma(n + 1.0)
        - 0.5 * math.log(math.pi)
        - (q + 0.5) * math.log(n + 0.5 * (s + 1.0))
    )


def asymptote(w: WeightParams) -> float:
    """Large-n limit of the Widom factors: 2^{1 - rho_a - rho_b}."""
    return 2.0 ** (1.0 - w.rho_a - w.rho_b)


def weight_sup_bound(w: WeightParams) -> float:
    """Max over [-1,1] of (1-x)^rho_a (1+x)^rho_b, attained at (rho_b-rho_a)/(rho_a+rho_b).

    Uses the 0^0 = 1 convention when an exponent vanishes.
    """
    ra, rb = w.rho_a, w.rho_b
    s = ra + rb
    if s == 0.0:
        return 1.0
    out = 1.0
    if ra > 0.0:
        out *= (2.0 * ra / s) ** ra
    if rb > 0.0:
        out *= (2.0 * rb / s) ** rb
    return out
