"""Projections, sections of the restricted Grassmannian over a discretized base,
and the small exterior calculus used to differentiate them.

Conventions.  A base grid is a 1- or 2-axis lattice, periodic axes wrap.
Discrete k-forms store cell-integrated samples: degree 0 on points, degree 1 on
the directed edge (b -> b + e_mu) at index [b, mu], degree 2 on the plaquette
with lower-left corner b.  The coboundary is then the plain oriented sum and
plaquette totals approximate integrals.  Residuals quoted per cell are
normalized by cell volume, so second-order schemes show O(h^2) densities.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSpectrum, GridDomainError, NearSingular
from .opcalc import as_matrix

__all__ = [
    "BaseGrid",
    "DiscreteForm",
    "Projection",
    "ProjectionSection",
    "spectral_projection",
    "graph_projection",
    "toeplitz",
    "toeplitz_inverse",
    "hom_derivative",
    "curvature_trace_form",
    "second_fundamental_form",
    "trace_one_form",
    "form_wedge_trace",
    "section_links",
    "frames_of",
    "restrict",
    "nearest_projection",
]

PROJECTION_TOL = 1e-10


@dataclass(frozen=True)
class BaseGrid:
    """Uniform lattice over a 1- or 2-dimensional parameter domain."""

    shape: tuple[int, ...]
    spacing: tuple[float, ...]
    periodic: tuple[bool, ...]
    origin: tuple[float, ...] = ()

    def __post_init__(self):
        d = len(self.shape)
        if d not in (1, 2):
            raise ValueError("grid must have 1 or 2 axes")
        if not self.origin:
            object.__setattr__(self, "origin", (0.0,) * d)
        if len(self.spacing) != d or len(self.periodic) != d or len(self.origin) != d:
            raise ValueError("shape, spacing, periodic and origin must have equal length")
        if any(int(n) < 4 for n in self.shape):
            raise ValueError("every axis needs at least 4 points")
        if any(not (h > 0) for h in self.spacing):
            raise ValueError("grid spacing must be positive")

    @classmethod
    def torus(cls, n1: int, n2: int | None = None, length: float = 2.0 * np.pi):
        """Flat periodic grid with axis length ``length`` (default 2*pi)."""
        if n2 is None:
            return cls((n1,), (length / n1,), (True,))
        return cls((n1, n2), (length / n1, length / n2), (True, True))

    @classmethod
    def line(cls, n: int, start: float, stop: float):
        """Open 1-d scan grid; samples include both endpoints."""
        if n < 4:
            raise ValueError("need at least 4 samples")
        return cls((n,), ((stop - start) / (n - 1),), (False,), (float(start),))

    @property
    def ndim(self) -> int:
        return len(self.shape)

    @property
    def npoints(self) -> int:
        return int(np.prod(self.shape))

    def axis_coords(self, axis: int, offset: float = 0.0) -> np.ndarray:
        return self.origin[axis] + offset + self.spacing[axis] * np.arange(self.shape[axis])

    def coords(self, offset: float = 0.0):
        """Meshgrid of coordinates, indexed like the sample arrays."""
        axes = [self.axis_coords(k, offset) for k in range(self.ndim)]
        return np.meshgrid(*axes, indexing="ij")

    def shift(self, idx: tuple[int, ...], axis: int, step: int) -> tuple[int, ...]:
        idx = tuple(int(i) for i in (idx if isinstance(idx, tuple) else (idx,)))
        if len(idx) != self.ndim:
            raise ValueError("index rank does not match grid")
        j = idx[axis] + step
        n = self.shape[axis]
        if self.periodic[axis]:
            j %= n
        elif not (0 <= j < n):
            raise GridDomainError(f"step over boundary of non-periodic axis {axis}")
        out = list(idx)
        out[axis] = j
        return tuple(out)

    def plaquette_area(self) -> float:
        if self.ndim != 2:
            raise ValueError("plaquettes need a 2-axis grid")
        return self.spacing[0] * self.spacing[1]

    def require_periodic(self):
        if not all(self.periodic):
            raise GridDomainError("operation requires all axes periodic")


def _roll(values: np.ndarray, grid: BaseGrid, axis: int, step: int) -> np.ndarray:
    """Whole-field neighbor lookup; only legal on periodic axes."""
    if not grid.periodic[axis]:
        raise GridDomainError(f"axis {axis} is not periodic")
    return np.roll(values, -step, axis=axis)


@dataclass
class DiscreteForm:
    """Cell-integrated scalar or matrix valued k-form on a BaseGrid.

    samples shape: degree 0 -> grid.shape (+ matrix dims), degree 1 ->
    grid.shape + (ndim,) (+ matrix dims), degree 2 -> grid.shape.  mask, when
    given, marks excluded cells (True = excluded) and has the samples' cell
    shape.
    """

    grid: BaseGrid
    degree: int
    samples: np.ndarray
    mask: np.ndarray | None = None

    def __post_init__(self):
        if self.degree not in (0, 1, 2):
            raise ValueError("degree must be 0, 1 or 2")
        if self.degree == 2 and self.grid.ndim != 2:
            raise ValueError("degree-2 forms need a 2-axis grid")
        self.samples = np.asarray(self.samples)
        base = self.grid.shape if self.degree != 1 else self.grid.shape + (self.grid.ndim,)
        if self.samples.shape[: len(base)] != base:
            raise ValueError(f"sample shape {self.samples.shape} does not match degree-{self.degree} cells {base}")
        extra = self.samples.shape[len(base):]
        if extra not in ((), ) and (len(extra) != 2 or extra[0] != extra[1]):
            raise ValueError("extra sample dims must form square matrices")
        if self.mask is not None:
            self.mask = np.asarray(self.mask, dtype=bool)
            if self.mask.shape != base:
                raise ValueError("mask shape must match cell layout")

    @property
    def is_scalar(self) -> bool:
        base = self.grid.shape if self.degree != 1 else self.grid.shape + (self.grid.ndim,)
        return self.samples.shape == base

    def edge(self, idx: tuple[int, ...], axis: int, reverse: bool = False):
        """Degree-1 sample on the directed edge at ``idx`` along ``axis``."""
        if self.degree != 1:
            raise ValueError("edge access needs a degree-1 form")
        v = self.samples[idx + (axis,)]
        return -v if reverse else v

    def coboundary(self) -> "DiscreteForm":
        """Discrete exterior derivative (oriented sum of face samples)."""
        g = self.grid
        g.require_periodic()
        if self.degree == 0:
            out = np.stack(
                [_roll(self.samples, g, ax, +1) - self.samples for ax in range(g.ndim)],
                axis=g.ndim,
            )
            return DiscreteForm(g, 1, out)
        if self.degree == 1:
            if g.ndim != 2:
                raise ValueError("coboundary of a 1-form needs a 2-axis grid")
            e0 = self.samples.take(0, axis=2)
            e1 = self.samples.take(1, axis=2)
            out = e0 + _roll(e1, g, 0, +1) - _roll(e0, g, 1, +1) - e1
            m = None
            if self.mask is not None:
                m0 = self.mask.take(0, axis=2)
                m1 = self.mask.take(1, axis=2)
                m = m0 | m1 | _roll(m1, g, 0, +1) | _roll(m0, g, 1, +1)
            return DiscreteForm(g, 2, out, mask=m)
        raise ValueError("no degree-3 cells on a 2-axis grid")

    def total(self):
        """Sum of samples over unmasked cells."""
        if self.mask is None:
            return self.samples.sum(axis=tuple(range(self.samples.ndim))) if self.is_scalar else self.samples.sum(axis=(0, 1))
        keep = ~self.mask
        return self.samples[keep].sum(axis=0)

    def density(self) -> np.ndarray:
        """Samples divided by cell volume (spacing for edges, area for plaquettes)."""
        if self.degree == 0:
            return self.samples
        if self.degree == 1:
            h = np.asarray(self.grid.spacing)
            sh = (1,) * self.grid.ndim + (self.grid.ndim,) + (1,) * (self.samples.ndim - self.grid.ndim - 1)
            return self.samples / h.reshape(sh)
        return self.samples / self.grid.plaquette_area()

    def max_density_residual(self) -> float:
        """max |density| over unmasked cells; the refinement-test statistic."""
        d = np.abs(self.density())
        if not self.is_scalar:
            d = d.max(axis=(-2, -1))
        if self.mask is not None:
            d = np.where(self.mask, 0.0, d)
        return float(d.max())

    def to_csv(self, path):
        """Write scalar samples as rows of axis indices plus (re, im)."""
        if not self.is_scalar:
            raise ValueError("CSV export is for scalar forms")
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            if self.degree == 0:
                w.writerow(["i", "re", "im"] if self.grid.ndim == 1 else ["i", "j", "re", "im"])
                for idx in np.ndindex(*self.grid.shape):
                    v = complex(self.samples[idx])
                    w.writerow([*idx, repr(v.real), repr(v.imag)])
            elif self.degree == 1:
                w.writerow((["i", "mu", "re", "im"] if self.grid.ndim == 1 else ["i", "j", "mu", "re", "im"]))
                for idx in np.ndindex(*self.grid.shape):
                    for mu in range(self.grid.ndim):
                        v = complex(self.samples[idx + (mu,)])
                        w.writerow([*idx, mu, repr(v.real), repr(v.imag)])
            else:
                w.writerow(["i", "j", "re", "im"])
                for idx in np.ndindex(*self.grid.shape):
                    v = complex(self.samples[idx])
                    w.writerow([*idx, repr(v.real), repr(v.imag)])


class Projection:
    """Validated orthogonal projection matrix."""

    def __init__(self, matrix, tol: float = PROJECTION_TOL):
        m = as_matrix(matrix)
        if m.shape[0] != m.shape[1]:
            raise ValueError("projection must be square")
        if np.linalg.norm(m - m.conj().T) > tol * max(1.0, np.linalg.norm(m)):
            raise ValueError("projection must be self-adjoint")
        if np.linalg.norm(m @ m - m) > tol * max(1.0, np.linalg.norm(m)):
            raise ValueError("projection must be idempotent")
        r = float(np.trace(m).real)
        if abs(r - round(r)) > 1e-8:
            raise ValueError("projection rank must be integral")
        self.matrix = m
        self.dim = m.shape[0]
        self.rank = int(round(r))

    def complement(self) -> "Projection":
        return Projection(np.eye(self.dim) - self.matrix)

    def frame(self) -> np.ndarray:
        """Orthonormal basis of the range, shape (dim, rank)."""
        w, v = np.linalg.eigh(self.matrix)
        return v[:, w > 0.5]


def frames_of(values: np.ndarray, rank: int) -> np.ndarray:
    """Batched orthonormal range frames of a stack of projections."""
    w, v = np.linalg.eigh(values)
    # eigh sorts ascending; the range spans the top `rank` eigenvectors
    return v[..., -rank:] if rank > 0 else v[..., :0]


def restrict(phi: np.ndarray, f0: np.ndarray, f1: np.ndarray) -> np.ndarray:
    """Matrix of phi: range(P0) -> range(P1) in the frames f0, f1 (batched)."""
    return np.swapaxes(f1.conj(), -1, -2) @ phi @ f0


def nearest_projection(h: np.ndarray) -> np.ndarray:
    """Closest orthogonal projection to a Hermitian matrix with a spectral gap at 1/2."""
    w, v = np.linalg.eigh(0.5 * (h + np.swapaxes(h.conj(), -1, -2)))
    sel = (w > 0.5).astype(complex)
    return (v * sel[..., None, :]) @ np.swapaxes(v.conj(), -1, -2)


@dataclass
class ProjectionSection:
    """Field of projections over a BaseGrid with constant rank.

    smoothness is the recorded constant C with ||P(b+e) - P(b)|| <= C*h over
    all grid edges, used by continuity checks downstream.
    """

    grid: BaseGrid
    values: np.ndarray
    base_rank: int
    smoothness: float = field(default=np.nan)

    @classmethod
    def build(cls, grid: BaseGrid, values, tol: float = PROJECTION_TOL) -> "ProjectionSection":
        v = np.asarray(values, dtype=complex)
        if v.shape[: grid.ndim] != grid.shape or v.ndim != grid.ndim + 2 or v.shape[-1] != v.shape[-2]:
            raise ValueError("values must be a grid of square matrices")
        herm = np.max(np.abs(v - np.swapaxes(v.conj(), -1, -2)))
        idem = np.max(np.abs(v @ v - v))
        if max(herm, idem) > tol * max(1.0, float(np.max(np.abs(v)))):
            raise ValueError("section values must be orthogonal projections")
        ranks = np.trace(v, axis1=-2, axis2=-1).real
        r0 = float(ranks.reshape(-1)[0])
        if np.max(np.abs(ranks - r0)) > 1e-8 or abs(r0 - round(r0)) > 1e-8:
            raise ValueError("section must have constant integral rank")
        c = 0.0
        for ax in range(grid.ndim):
            if grid.periodic[ax]:
                d = _roll(v, grid, ax, +1) - v
            else:
                d = np.diff(v, axis=ax)
            if d.size:
                c = max(c, float(np.max(np.linalg.norm(d, ord=2, axis=(-2, -1)))) / grid.spacing[ax])
        return cls(grid=grid, values=v, base_rank=int(round(r0)), smoothness=c)

    @property
    def dim(self) -> int:
        return self.values.shape[-1]

    def at(self, idx) -> np.ndarray:
        idx = idx if isinstance(idx, tuple) else (idx,)
        return self.values[idx]

    def frames(self) -> np.ndarray:
        return frames_of(self.values, self.base_rank)

    def complement(self) -> "ProjectionSection":
        eye = np.eye(self.dim)
        return ProjectionSection(self.grid, eye - self.values, self.dim - self.base_rank,
                                 smoothness=self.smoothness)

    def conjugate(self, u: np.ndarray) -> "ProjectionSection":
        """Apply a constant unitary change of ambient frame."""
        u = as_matrix(u)
        return ProjectionSection.build(self.grid, u @ self.values @ u.conj().T)


def spectral_projection(a, gap_tol: float = 1e-8) -> Projection:
    """Projection onto the span of eigenvectors with non-negative eigenvalues.

    Zero eigenvalues belong to the non-negative side; roundoff-scale negatives
    are snapped to zero so exact kernels survive eigh jitter.  Eigenvalues
    inside (-gap_tol, -snap] make the split ill-posed and raise
    DegenerateSpectrum.
    """
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError("square matrix required")
    if np.linalg.norm(m - m.conj().T) > 1e-10 * max(1.0, np.linalg.norm(m)):
        raise ValueError("spectral projection needs a self-adjoint matrix")
    if gap_tol <= 0:
        raise ValueError("gap_tol must be positive")
    w, v = np.linalg.eigh(m)
    snap = 64 * np.finfo(float).eps * max(1.0, float(np.abs(w).max(initial=0.0)))
    snap = min(snap, 0.5 * gap_tol)
    if np.any((w > -gap_tol) & (w < -snap)):
        raise DegenerateSpectrum("eigenvalue inside the forbidden band below zero")
    keep = w >= -snap
    vk = v[:, keep]
    return Projection(vk @ vk.conj().T)


def graph_projection(t) -> Projection:
    """Projection onto the graph {(v, T v)} inside C^n (+) C^n."""
    tm = as_matrix(t)
    if tm.shape[0] != tm.shape[1]:
        raise ValueError("graph projection expects a square block")
    n = tm.shape[0]
    g = np.linalg.inv(np.eye(n) + tm.conj().T @ tm)
    top = np.concatenate([g, g @ tm.conj().T], axis=1)
    bot = np.concatenate([tm @ g, tm @ g @ tm.conj().T], axis=1)
    return Projection(np.concatenate([top, bot], axis=0))


def toeplitz(p0: Projection, p1: Projection) -> np.ndarray:
    """Ambient matrix of the compression P1 . P0, the map range(P0) -> range(P1)."""
    if p0.dim != p1.dim:
        raise ValueError("projections act on different spaces")
    return p1.matrix @ p0.matrix


def toeplitz_inverse(p0: Projection, p1: Projection, phi, cond_tol: float = 1e12) -> np.ndarray:
    """Ambient inverse X of a map phi: range(P0) -> range(P1).

    X satisfies X phi = P0 and phi X = P1.  Raises NearSingular when the
    smallest restricted singular value drops below 1/cond_tol.
    """
    if p0.rank != p1.rank:
        raise ValueError("ranks differ; the restriction cannot be invertible")
    f0, f1 = p0.frame(), p1.frame()
    m = restrict(as_matrix(phi), f0, f1)
    if p0.rank == 0:
        return np.zeros((p0.dim, p0.dim), dtype=complex)
    smin = np.linalg.svd(m, compute_uv=False)[-1]
    if smin < 1.0 / cond_tol:
        raise NearSingular(f"restricted singular value {smin:.3e} below 1/cond_tol")
    return f0 @ np.linalg.inv(m) @ f1.conj().T


def hom_derivative(section0: ProjectionSection, section1: ProjectionSection,
                   phi: np.ndarray, idx, axis: int) -> np.ndarray:
    """Covariant derivative sample P1(b) [phi(b+e) - phi(b-e)]/(2h) P0(b).

    phi is a grid field of ambient matrices with P1 phi P0 = phi at every
    point; the central difference lives at the grid point ``idx``.
    """
    g = section0.grid
    idx = idx if isinstance(idx, tuple) else (idx,)
    fwd = g.shift(idx, axis, +1)
    bwd = g.shift(idx, axis, -1)
    diff = (phi[fwd] - phi[bwd]) / (2.0 * g.spacing[axis])
    return section1.at(idx) @ diff @ section0.at(idx)


def second_fundamental_form(section: ProjectionSection, idx, axis: int) -> np.ndarray:
    """Off-diagonal derivative block (I - P(b)) dP P(b) by central difference."""
    g = section.grid
    idx = idx if isinstance(idx, tuple) else (idx,)
    fwd = g.shift(idx, axis, +1)
    bwd = g.shift(idx, axis, -1)
    diff = (section.values[fwd] - section.values[bwd]) / (2.0 * g.spacing[axis])
    p = section.at(idx)
    return (np.eye(section.dim) - p) @ diff @ p


def _plaquette_corners(values: np.ndarray, grid: BaseGrid):
    c00 = values
    c10 = _roll(values, grid, 0, +1)
    c01 = _roll(values, grid, 1, +1)
    c11 = _roll(c10, grid, 1, +1)
    return c00, c10, c01, c11


def curvature_trace_form(section: ProjectionSection) -> DiscreteForm:
    """Scalar curvature 2-form Tr(P [dP, dP]) of the subbundle ran(P).

    Sampled at plaquette centers: corner-averaged P, face-averaged central
    differences, times the plaquette area (samples are integrals).
    """
    g = section.grid
    if g.ndim != 2:
        raise ValueError("curvature needs a 2-axis grid")
    g.require_periodic()
    c00, c10, c01, c11 = _plaquette_corners(section.values, g)
    pc = 0.25 * (c00 + c10 + c01 + c11)
    d0 = (c10 + c11 - c00 - c01) / (2.0 * g.spacing[0])
    d1 = (c01 + c11 - c00 - c10) / (2.0 * g.spacing[1])
    comm = d0 @ d1 - d1 @ d0
    vals = np.trace(pc @ comm, axis1=-2, axis2=-1) * g.plaquette_area()
    return DiscreteForm(g, 2, vals)


def trace_one_form(section: ProjectionSection) -> DiscreteForm:
    """Edge 1-form Tr(P(b) (P(b+e) - P(b))), the discrete shadow of Tr(P dP)."""
    g = section.grid
    g.require_periodic()
    comps = []
    for ax in range(g.ndim):
        nxt = _roll(section.values, g, ax, +1)
        comps.append(np.trace(section.values @ (nxt - section.values), axis1=-2, axis2=-1))
    return DiscreteForm(g, 1, np.stack(comps, axis=g.ndim))


def form_wedge_trace(alpha: DiscreteForm, beta: DiscreteForm) -> DiscreteForm:
    """Scalar 2-form Tr(alpha ^ beta) of two matrix-valued edge 1-forms.

    Components are recentered on plaquettes by averaging the two parallel
    edges; the product of integrated edge samples already carries the area.
    """
    if alpha.degree != 1 or beta.degree != 1 or alpha.grid is not beta.grid and alpha.grid != beta.grid:
        raise ValueError("need two 1-forms on a common grid")
    g = alpha.grid
    if g.ndim != 2:
        raise ValueError("wedge needs a 2-axis grid")
    g.require_periodic()

    def centered(f):
        e0 = f.samples.take(0, axis=2)
        e1 = f.samples.take(1, axis=2)
        a0 = 0.5 * (e0 + _roll(e0, g, 1, +1))
        a1 = 0.5 * (e1 + _roll(e1, g, 0, +1))
        return a0, a1

    a0, a1 = centered(alpha)
    b0, b1 = centered(beta)
    vals = np.trace(a0 @ b1 - a1 @ b0, axis1=-2, axis2=-1)
    return DiscreteForm(g, 2, vals)


def section_links(section: ProjectionSection) -> np.ndarray:
    """Frame overlap determinants det(F(b)* F(b+e)) along each axis.

    The per-point frame gauge is arbitrary; closed-loop products of these
    links are gauge independent.  Shape: grid.shape + (ndim,).
    """
    g = section.grid
    g.require_periodic()
    f = section.frames()
    fh = np.swapaxes(f.conj(), -1, -2)
    out = []
    for ax in range(g.ndim):
        out.append(np.linalg.det(fh @ _roll(f, g, ax, +1)))
    return np.stack(out, axis=g.ndim)
