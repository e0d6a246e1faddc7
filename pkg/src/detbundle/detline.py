"""Determinant lines of finite operator families.

An element of the line over a base operator A is an equivalence class
[T, scale] with T - A trace class; [T q, scale] and [T, det(q) scale] agree
whenever q is a determinant-class change of T.  At finite size every
perturbation qualifies, so the calculus below is exact linear algebra; the
charts, transition factors and sewing maps are the parts that survive the
infinite-dimensional limit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import OutOfChart
from .opcalc import as_matrix, fredholm_det, schatten_profile

__all__ = [
    "LineElement",
    "Trivialization",
    "pad_square",
    "canonical_det",
    "chart_coordinate",
    "coordinate",
    "transition",
    "inner_product",
    "norm_sq",
    "sew",
    "sew_gauge_factor",
    "metric_norm_sq",
    "pair_metric_sq",
]


def pad_square(a) -> np.ndarray:
    """Pad a rectangular matrix with zero rows or columns to make it square.

    A surjective-side deficit (more columns than rows) gets zero rows, the
    opposite gets zero columns; square input passes through.  This realizes
    the index-zero reduction A (+) 0 used for families of nonzero index.
    """
    m = as_matrix(a)
    rows, cols = m.shape
    if rows == cols:
        return m
    n = max(rows, cols)
    out = np.zeros((n, n), dtype=complex)
    out[:rows, :cols] = m
    return out


@dataclass(frozen=True)
class LineElement:
    """Class [rep, scale] in the determinant line of ``base``."""

    base: np.ndarray
    rep: np.ndarray
    scale: complex

    def __post_init__(self):
        b = pad_square(self.base)
        r = pad_square(self.rep)
        if b.shape != r.shape:
            raise ValueError("representative and base act on different spaces")
        # trace-class surrogate: the perturbation must carry finite norms
        schatten_profile(r - b)
        object.__setattr__(self, "base", b)
        object.__setattr__(self, "rep", r)
        object.__setattr__(self, "scale", complex(self.scale))

    @property
    def dim(self) -> int:
        return self.base.shape[0]

    def scaled(self, factor: complex) -> "LineElement":
        return replace(self, scale=self.scale * complex(factor))

    def moved(self, q) -> "LineElement":
        """Equivalent element [rep q, scale / det(q)] (same class)."""
        q = as_matrix(q)
        d = complex(np.linalg.det(q))
        if d == 0:
            raise ValueError("change of representative must be invertible")
        return LineElement(self.base, self.rep @ q, self.scale / d)


def canonical_det(a) -> LineElement:
    """Canonical element [A, 1] of the determinant line of A."""
    return LineElement(pad_square(a), pad_square(a), 1.0)


def _cond_ok(m: np.ndarray, cond_bound: float) -> bool:
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0:
        return False
    return bool(s[-1] * cond_bound >= s[0])


def chart_coordinate(e: LineElement, alpha, cond_bound: float = 1e10) -> complex:
    """Coordinate of ``e`` in the chart shifted by the finite-rank matrix alpha.

    Equals scale * det((A + alpha)^-1  rep); raises OutOfChart when A + alpha
    fails the chart's condition bound.
    """
    m = e.base + as_matrix(alpha)
    if not _cond_ok(m, cond_bound):
        raise OutOfChart("base + shift is not invertible within the condition bound")
    q = np.linalg.solve(m, e.rep)
    return e.scale * fredholm_det(q - np.eye(e.dim))


def transition(a, alpha, beta, cond_bound: float = 1e10) -> complex:
    """Chart transition factor det((A + alpha)(A + beta)^-1) between two shifts."""
    a = pad_square(a)
    mb = a + as_matrix(beta)
    if not _cond_ok(mb, cond_bound):
        raise OutOfChart("beta-chart is not invertible at this point")
    q = np.linalg.solve(mb, a + as_matrix(alpha))
    return complex(fredholm_det(q - np.eye(a.shape[0])))


@dataclass
class Trivialization:
    """Finite-rank chart shifts over a grid, with a condition-number domain."""

    grid: object
    shifts: np.ndarray
    cond_bound: float = 1e10
    label: str = ""

    def __post_init__(self):
        self.shifts = np.asarray(self.shifts, dtype=complex)
        if self.shifts.shape[: self.grid.ndim] != self.grid.shape:
            raise ValueError("shift field must cover the grid")
        if self.cond_bound <= 1:
            raise ValueError("condition bound must exceed 1")

    def shift_at(self, idx) -> np.ndarray:
        idx = idx if isinstance(idx, tuple) else (idx,)
        return self.shifts[idx]

    def domain(self, family_values: np.ndarray) -> np.ndarray:
        """Recompute the membership mask for a field of base matrices.

        Never cached: the same shifts may be reused against different
        families.
        """
        m = np.asarray(family_values) + self.shifts
        s = np.linalg.svd(m, compute_uv=False)
        return (s[..., -1] * self.cond_bound >= s[..., 0]) & (s[..., 0] > 0)


def coordinate(e: LineElement, triv: Trivialization, idx) -> complex:
    """Coordinate of ``e`` in a gridded trivialization at grid index ``idx``."""
    return chart_coordinate(e, triv.shift_at(idx), triv.cond_bound)


def inner_product(e1: LineElement, e2: LineElement) -> complex:
    """Hermitian pairing conj(scale1) scale2 det(rep1* rep2), antilinear on the left."""
    if e1.base.shape != e2.base.shape:
        raise ValueError("elements live over different spaces")
    m = e1.rep.conj().T @ e2.rep
    return np.conj(e1.scale) * e2.scale * fredholm_det(m - np.eye(e1.dim))


def norm_sq(e: LineElement) -> float:
    return float(inner_product(e, e).real)


def sew(e01: LineElement, e12: LineElement) -> LineElement:
    """Compose line elements of two adjoining operator segments.

    The representative is the composition through the shared middle space and
    the scales multiply; the base composes the same way.
    """
    if e12.base.shape[1] != e01.base.shape[0]:
        raise ValueError("rank mismatch: segments do not share the middle space")
    return LineElement(e12.base @ e01.base, e12.rep @ e01.rep, e12.scale * e01.scale)


def sew_gauge_factor(phi01, phi12, alpha, beta, gamma, cond_bound: float = 1e10) -> complex:
    """Chart correction relating sewn coordinates to the product of factors.

    With z evaluated in charts alpha, beta for the two segments and gamma for
    the composite, z_gamma(sew) = z_alpha * z_beta * factor.  The factor is
    det((Phi12 Phi01 + gamma)^-1 (Phi12 + beta)(Phi01 + alpha)) and collapses
    to 1 when gamma is the composition of the shifted segment charts.
    """
    phi01 = as_matrix(phi01)
    phi12 = as_matrix(phi12)
    composed = phi12 @ phi01
    mg = composed + as_matrix(gamma)
    if not _cond_ok(mg, cond_bound):
        raise OutOfChart("composite chart is not invertible at this point")
    q = np.linalg.solve(mg, (phi12 + as_matrix(beta)) @ (phi01 + as_matrix(alpha)))
    return complex(fredholm_det(q - np.eye(q.shape[0])))


def pair_metric_sq(p0_matrix, p1_matrix) -> float:
    """Squared canonical norm of the determinant of the pair compression.

    det of the restricted Laplacian (P0 P1 P0)|ran(P0), computed as
    |det(F1* P1 P0 F0)|^2 in orthonormal frames; frame independent.
    """
    from .grassmann import Projection

    p0 = Projection(p0_matrix)
    p1 = Projection(p1_matrix)
    if p0.rank != p1.rank:
        raise ValueError("pair metric needs equal ranks")
    if p0.rank == 0:
        return 1.0
    f0, f1 = p0.frame(), p1.frame()
    m = f1.conj().T @ (p1.matrix @ p0.matrix) @ f0
    d = np.linalg.det(m)
    return float((d * np.conj(d)).real)


def metric_norm_sq(model, idx, which: str = "full", section=None) -> float:
    """Canonical metric of the splitting determinant at one grid point.

    ``which`` selects the compression pair: "full" couples the two boundary
    value spaces, "left"/"right" couple one of them with the interface
    section P (required then).  The model supplies the projections through
    boundary_pair(which, section).
    """
    sec0, sec1 = model.boundary_pair(which, section)
    idx = idx if isinstance(idx, tuple) else (idx,)
    return pair_metric_sq(sec0.at(idx), sec1.at(idx))
