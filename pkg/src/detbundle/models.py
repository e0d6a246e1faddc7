"""Concrete operator families feeding the determinant-line machinery.

Two laboratories.  Dirac1DFamily solves rank-n first-order systems
psi' = i a(b, x) psi on a circle cut at {0, pi}; its transfer matrices produce
the Cauchy-data (Calderon) projections of the two halves, and the monodromy
determinant det(I - T(0 -> 2pi)) is the independent oracle for the kernel
locus.  CylinderFamily truncates a Fourier boundary operator diag(k) plus a
smoothing perturbation and provides spectral sections, for truncation-
stability studies.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .grassmann import BaseGrid, ProjectionSection, spectral_projection

__all__ = [
    "CauchyData",
    "Dirac1DFamily",
    "CylinderFamily",
    "demo_family",
    "constant_scalar_family",
    "potential_from_coefficients",
    "coefficient_family",
    "DEMO_COEFFICIENTS",
    "bloch_vector",
    "bloch_curvature_density",
    "bloch_section",
    "vortex_interface",
    "rotated_interface",
    "smoothing_perturbation",
]

PAULI = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


@dataclass(frozen=True)
class CauchyData:
    """Boundary value pair (psi(0), psi(pi)) of a half-circle solution."""

    at_zero: np.ndarray
    at_cut: np.ndarray

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([np.asarray(self.at_zero), np.asarray(self.at_cut)])


def _batched_graph_projection(t: np.ndarray) -> np.ndarray:
    """Graph projections {(v, T v)} for a stack of square blocks."""
    th = np.swapaxes(t.conj(), -1, -2)
    n = t.shape[-1]
    g = np.linalg.inv(np.eye(n) + th @ t)
    top = np.concatenate([g, g @ th], axis=-1)
    bot = np.concatenate([t @ g, t @ g @ th], axis=-1)
    return np.concatenate([top, bot], axis=-2)


class Dirac1DFamily:
    """Family of rank-n systems psi' = i a(b, x) psi over a parameter grid.

    Parameters
    ----------
    grid : BaseGrid
        Parameter lattice; 1 axis for scans, 2 axes (periodic) for curvature.
    potential : callable
        potential(b1, b2, x) -> array of Hermitian (n, n) blocks, broadcasting
        over the coordinate arrays b1, b2 (b2 is zero-filled on 1-axis grids).
        Must be 2*pi periodic in x.
    rank : int
        Block size n.
    steps_per_half : int
        Fixed RK4 steps per half circle; cut points stay on the step lattice.
    """

    def __init__(self, grid: BaseGrid, potential, rank: int, steps_per_half: int = 256,
                 label: str = "dirac1d"):
        if rank < 1:
            raise ValueError("rank must be at least 1")
        if steps_per_half < 8:
            raise ValueError("need at least 8 integrator steps per half circle")
        self.grid = grid
        self.potential = potential
        self.rank = int(rank)
        self.steps_per_half = int(steps_per_half)
        self.label = label
        b = grid.coords()
        self._b1 = b[0]
        self._b2 = b[1] if grid.ndim == 2 else np.zeros_like(b[0])
        self._flows: dict[tuple[int, int], np.ndarray] = {}
        self._sections: dict[str, ProjectionSection] = {}

    # -- integration ---------------------------------------------------------

    @property
    def _step(self) -> float:
        return np.pi / self.steps_per_half

    def _tick(self, x: float) -> int:
        t = x / self._step
        k = round(t)
        if abs(t - k) > 1e-9:
            raise ValueError("x must sit on the integrator step lattice")
        return int(k)

    def _a(self, x: float) -> np.ndarray:
        a = np.asarray(self.potential(self._b1, self._b2, x), dtype=complex)
        want = self.grid.shape + (self.rank, self.rank)
        if a.shape != want:
            a = np.broadcast_to(a, want)
        return a

    def transfer_field(self, x0: float, x1: float) -> np.ndarray:
        """Transfer matrices T_b(x0 -> x1) over the whole grid (cached)."""
        k0, k1 = self._tick(x0), self._tick(x1)
        key = (k0, k1)
        if key in self._flows:
            return self._flows[key]
        if k1 < k0:
            out = np.linalg.inv(self.transfer_field(x1, x0))
            self._flows[key] = out
            return out
        h = self._step
        t = np.broadcast_to(np.eye(self.rank, dtype=complex), self.grid.shape + (self.rank, self.rank)).copy()
        a_right = self._a(k0 * h)
        for k in range(k0, k1):
            x = k * h
            a0 = a_right
            am = self._a(x + 0.5 * h)
            a_right = self._a(x + h)
            k1m = 1j * (a0 @ t)
            k2m = 1j * (am @ (t + 0.5 * h * k1m))
            k3m = 1j * (am @ (t + 0.5 * h * k2m))
            k4m = 1j * (a_right @ (t + h * k3m))
            t = t + (h / 6.0) * (k1m + 2.0 * k2m + 2.0 * k3m + k4m)
        self._flows[key] = t
        return t

    def transfer_matrix(self, idx, x0: float, x1: float) -> np.ndarray:
        """Pointwise transfer matrix T_b(x0 -> x1)."""
        idx = idx if isinstance(idx, tuple) else (idx,)
        return self.transfer_field(x0, x1)[idx]

    # -- boundary data -------------------------------------------------------

    @property
    def boundary_dim(self) -> int:
        return 2 * self.rank

    def calderon_section(self, side: str) -> ProjectionSection:
        """Cauchy-data projections of the chosen half circle.

        side="left" projects onto {(v, T(0->pi) v)}; side="right" onto
        {(T(pi->2pi) w, w)}, the boundary data of solutions on the second
        half read in the (psi(0), psi(pi)) ordering.
        """
        if side in self._sections:
            return self._sections[side]
        if side == "left":
            vals = _batched_graph_projection(self.transfer_field(0.0, np.pi))
        elif side == "right":
            pg = _batched_graph_projection(self.transfer_field(np.pi, 2.0 * np.pi))
            n = self.rank
            swap = np.zeros((2 * n, 2 * n), dtype=complex)
            swap[:n, n:] = np.eye(n)
            swap[n:, :n] = np.eye(n)
            vals = swap @ pg @ swap
        else:
            raise ValueError("side must be 'left' or 'right'")
        sec = ProjectionSection.build(self.grid, vals)
        self._sections[side] = sec
        return sec

    def monodromy_field(self) -> np.ndarray:
        """det(I - T(0 -> 2pi)) over the grid; zero exactly at periodic solutions."""
        t = self.transfer_field(0.0, 2.0 * np.pi)
        return np.linalg.det(np.eye(self.rank) - t)

    def full_monodromy_det(self, idx) -> complex:
        idx = idx if isinstance(idx, tuple) else (idx,)
        return complex(self.monodromy_field()[idx])

    def boundary_pair(self, which: str = "full", section: ProjectionSection | None = None):
        """Compression pair (P0, P1) for the full, left or right determinant."""
        left = self.calderon_section("left")
        right_c = self.calderon_section("right").complement()
        if which == "full":
            return left, right_c
        if section is None:
            raise ValueError("left/right pairs need the interface section")
        if which == "left":
            return left, section
        if which == "right":
            return section, right_c
        raise ValueError("which must be 'full', 'left' or 'right'")


# -- shipped families ---------------------------------------------------------


def demo_family(grid: BaseGrid | None = None, mu: float = 0.5, r: float = 0.22,
                eps: float = 0.18, steps_per_half: int = 256) -> Dirac1DFamily:
    """Rank-2 family over the torus, periodic in both parameters.

    The constant part mu*I keeps the local spectrum inside (0, 1), so the
    period map never develops a unit eigenvalue and the full compression
    stays invertible across the grid, while the sphere-valued direction
    field makes the half-circle Cauchy bundles genuinely curved.
    """
    if grid is None:
        grid = BaseGrid.torus(16, 16)

    def pot(b1, b2, x):
        n1 = np.cos(b1)
        n2 = np.sin(b1) * np.cos(b2)
        n3 = np.sin(b1) * np.sin(b2)
        base = (mu * np.eye(2))[(None,) * n1.ndim]
        bulk = r * (n1[..., None, None] * PAULI[0]
                    + n2[..., None, None] * PAULI[1]
                    + n3[..., None, None] * PAULI[2])
        drive = eps * (np.cos(x) * PAULI[0] + np.sin(x) * PAULI[1])
        return base + bulk + drive[(None,) * n1.ndim]

    return Dirac1DFamily(grid, pot, rank=2, steps_per_half=steps_per_half, label="demo")


def constant_scalar_family(grid: BaseGrid, value: float | None = None, rank: int = 1,
                           steps_per_half: int = 256) -> Dirac1DFamily:
    """Scalar family a(b, x) = c * I with c the first grid coordinate (or fixed).

    Closed forms: T(x0 -> x1) = exp(i c (x1 - x0)) I, so the monodromy
    determinant is (1 - exp(2 pi i c))^rank and the kernel locus is c integer.
    """

    def pot(b1, b2, x):
        c = np.full_like(b1, value) if value is not None else b1
        return c[..., None, None] * np.eye(rank)

    return Dirac1DFamily(grid, pot, rank=rank, steps_per_half=steps_per_half,
                         label="constant_scalar")


_TRIG_BASIS = {"one": lambda t: np.ones_like(t), "cos": np.cos, "sin": np.sin}
_CHANNELS = {"s0": np.eye(2, dtype=complex), "s1": PAULI[0],
             "s2": PAULI[1], "s3": PAULI[2]}

DEMO_COEFFICIENTS = {
    "s0.one.one.one": 0.5,
    "s1.cos.one.one": 0.22,
    "s2.sin.cos.one": 0.22,
    "s3.sin.sin.one": 0.22,
    "s1.one.one.cos": 0.18,
    "s2.one.one.sin": 0.18,
}


def potential_from_coefficients(coefficients: dict[str, float]):
    """Rank-2 potential from a coefficient table over a fixed basis.

    Keys are "<channel>.<f(b1)>.<g(b2)>.<h(x)>" with channel in s0..s3
    (identity and the three Pauli directions) and each factor in
    {one, cos, sin}.  Real coefficients keep the sample Hermitian, and every
    basis function is 2 pi periodic, so any table yields an admissible
    torus family.  DEMO_COEFFICIENTS reproduces demo_family exactly.
    """
    parsed = []
    for key, value in coefficients.items():
        parts = key.strip().lower().split(".")
        if len(parts) != 4 or parts[0] not in _CHANNELS \
                or any(p not in _TRIG_BASIS for p in parts[1:]):
            raise ValueError(f"bad potential coefficient key: {key!r}")
        parsed.append((_CHANNELS[parts[0]], parts[1], parts[2], parts[3], float(value)))
    if not parsed:
        raise ValueError("potential coefficient table is empty")

    def pot(b1, b2, x):
        xarr = np.asarray(x, dtype=float)
        out = np.zeros(np.shape(b1) + (2, 2), dtype=complex)
        for mat, f, g, h, c in parsed:
            profile = c * _TRIG_BASIS[f](b1) * _TRIG_BASIS[g](b2) * _TRIG_BASIS[h](xarr)
            out = out + profile[..., None, None] * mat
        return out

    return pot


def coefficient_family(grid: BaseGrid, coefficients: dict[str, float],
                       steps_per_half: int = 256, label: str = "table") -> Dirac1DFamily:
    """Dirac1DFamily built from a potential coefficient table."""
    return Dirac1DFamily(grid, potential_from_coefficients(coefficients),
                         rank=2, steps_per_half=steps_per_half, label=label)


# -- rank-1 control family over the torus -------------------------------------


def bloch_vector(b1, b2, mass: float = 1.0) -> np.ndarray:
    """Direction field (sin b1, sin b2, mass - cos b1 - cos b2), normalized."""
    n = np.stack([np.sin(b1), np.sin(b2), mass - np.cos(b1) - np.cos(b2)], axis=-1)
    norm = np.linalg.norm(n, axis=-1, keepdims=True)
    if np.any(norm < 1e-12):
        raise ValueError("direction field vanishes; pick a mass away from 0, +-2")
    return n / norm


def bloch_curvature_density(b1, b2, mass: float = 1.0) -> np.ndarray:
    """Exact curvature density (i/2) nhat . (d1 nhat x d2 nhat) of the upper band.

    Closed form for the normalized direction field: n . (d1 n x d2 n)/|n|^3
    with the unnormalized n above.
    """
    n = np.stack([np.sin(b1), np.sin(b2), mass - np.cos(b1) - np.cos(b2)], axis=-1)
    d1 = np.stack([np.cos(b1), np.zeros_like(b1), np.sin(b1)], axis=-1)
    d2 = np.stack([np.zeros_like(b2), np.cos(b2), np.sin(b2)], axis=-1)
    triple = np.sum(n * np.cross(d1, d2), axis=-1)
    norm = np.linalg.norm(n, axis=-1)
    return 0.5j * triple / norm**3


def bloch_section(grid: BaseGrid, mass: float = 1.0, dim: int = 2,
                  block: tuple[int, int] = (0, 1), extra_modes: tuple[int, ...] = ()
                  ) -> ProjectionSection:
    """Projection field (1/2)(I + nhat . sigma) embedded on two ambient modes.

    extra_modes adds fixed rank-one summands |e_k><e_k| outside the block, so
    the section can match the rank of a Cauchy-data bundle.
    """
    b1, b2 = grid.coords()
    nhat = bloch_vector(b1, b2, mass)
    p2 = 0.5 * (np.eye(2) + nhat[..., 0, None, None] * PAULI[0]
                + nhat[..., 1, None, None] * PAULI[1]
                + nhat[..., 2, None, None] * PAULI[2])
    if dim == 2 and not extra_modes and block == (0, 1):
        return ProjectionSection.build(grid, p2)
    i, j = block
    vals = np.zeros(grid.shape + (dim, dim), dtype=complex)
    for r in range(2):
        for c in range(2):
            vals[..., (i, j)[r], (i, j)[c]] = p2[..., r, c]
    for k in extra_modes:
        if k in (i, j):
            raise ValueError("extra modes must avoid the active block")
        vals[..., k, k] = 1.0
    return ProjectionSection.build(grid, vals)


def _inv_sqrt_hermitian(h: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    return (v / np.sqrt(w)[..., None, :]) @ np.swapaxes(v.conj(), -1, -2)


def vortex_interface(fam: Dirac1DFamily, center: tuple[float, float] | None = None,
                     radius: float = 1.1, orientation: int = 1) -> ProjectionSection:
    """Interface section: the left Cauchy bundle with one line twisted in a disc.

    Outside the disc the section equals the left Cauchy-data projections
    exactly, so compressions against them are perfectly conditioned there.
    Inside, the first frame line is rotated through the orthogonal complement
    by a degree-one sphere map, which shifts the Chern number by
    -orientation and confines every near-degeneracy to the disc.
    """
    g = fam.grid
    if g.ndim != 2:
        raise ValueError("the twisted interface needs a 2-axis grid")
    g.require_periodic()
    if not (0 < radius < np.pi):
        raise ValueError("radius must fit inside the fundamental domain")
    t = fam.transfer_field(0.0, np.pi)
    th = np.swapaxes(t.conj(), -1, -2)
    n = fam.rank
    eye = np.broadcast_to(np.eye(n, dtype=complex), t.shape)
    frame_a = np.concatenate([eye, t], axis=-2) @ _inv_sqrt_hermitian(eye + th @ t)
    frame_c = np.concatenate([-th, eye], axis=-2) @ _inv_sqrt_hermitian(eye + t @ th)
    f = frame_a[..., :, 0]
    gvec = frame_c[..., :, 0]

    b1, b2 = g.coords()
    c1, c2 = center if center is not None else (np.pi, np.pi)
    span1 = g.spacing[0] * g.shape[0]
    span2 = g.spacing[1] * g.shape[1]
    dx = (b1 - c1 + 0.5 * span1) % span1 - 0.5 * span1
    dy = (b2 - c2 + 0.5 * span2) % span2 - 0.5 * span2
    rho = np.hypot(dx, dy)
    phi = np.arctan2(orientation * dy, dx)
    theta = np.pi * np.where(rho < radius, np.cos(0.5 * np.pi * rho / radius) ** 2, 0.0)
    u = (np.cos(0.5 * theta)[..., None] * f
         + (np.sin(0.5 * theta) * np.exp(1j * phi))[..., None] * gvec)

    vals = frame_a @ np.swapaxes(frame_a.conj(), -1, -2)
    vals = vals - f[..., :, None] * f.conj()[..., None, :]
    vals = vals + u[..., :, None] * u.conj()[..., None, :]
    return ProjectionSection.build(g, vals)


def rotated_interface(fam: Dirac1DFamily, strength: float = 0.4) -> ProjectionSection:
    """Smooth near-identity deformation of the incoming Calderon section.

    Conjugates the left graph projection by exp(i strength K(b)) where K(b)
    mixes range and complement through two constant generators with
    non-commuting periodic profiles.  The overlap with the undeformed section
    stays uniformly far from singular, so every chart and statistic is
    resolved on coarse grids; the trade-off is trivial topology.  Use
    vortex_interface when a nonzero transverse winding number is the point.
    """
    base = fam.calderon_section("left")
    n = fam.rank
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    sy = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
    gen1 = np.kron(sx, np.eye(n, dtype=complex))
    gen2 = np.kron(sy, np.eye(n, dtype=complex))
    b = fam.grid.coords()
    b1 = b[0]
    b2 = b[1] if fam.grid.ndim == 2 else np.zeros_like(b[0])
    k = (np.sin(b1)[..., None, None] * gen1
         + (np.sin(b2) * np.cos(b1))[..., None, None] * gen2)
    u = _expi(float(strength) * k)
    uh = np.swapaxes(u.conj(), -1, -2)
    return ProjectionSection.build(fam.grid, u @ base.values @ uh)


# -- truncated Fourier boundary family ----------------------------------------


@lru_cache(maxsize=32)
def _smoothing_cached(seed: int, gamma: float, truncation: int) -> np.ndarray:
    n = truncation
    dim = 2 * n + 1
    out = np.zeros((dim, dim), dtype=complex)
    modes = range(-n, n + 1)
    off = 8192
    for j in modes:
        for k in modes:
            if k < j:
                continue
            rng = np.random.default_rng([seed, j + off, k + off])
            amp = np.exp(-gamma * (abs(j) + abs(k)))
            if j == k:
                out[j + n, k + n] = amp * (2.0 * rng.random() - 1.0)
            else:
                c = amp * rng.random() * np.exp(2j * np.pi * rng.random())
                out[j + n, k + n] = c
                out[k + n, j + n] = np.conj(c)
    return out


def smoothing_perturbation(seed: int, gamma: float, truncation: int) -> np.ndarray:
    """Seeded Hermitian matrix with |S_jk| <= exp(-gamma (|j| + |k|)).

    Entries depend only on (seed, j, k) in absolute mode labels, so the
    matrices for two truncation sizes agree on their common block; that is
    what makes truncation-stability checks meaningful.
    """
    if gamma <= 0:
        raise ValueError("decay rate gamma must be positive")
    if truncation < 1:
        raise ValueError("truncation must be at least 1")
    return _smoothing_cached(int(seed), float(gamma), int(truncation)).copy()


def _expi(h: np.ndarray) -> np.ndarray:
    """exp(i H) for Hermitian H (batched)."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)[..., None, :]) @ np.swapaxes(v.conj(), -1, -2)


class CylinderFamily:
    """Truncated boundary family diag(k) + smoothing perturbation over a grid.

    style="conjugated" rotates diag(k) by exp(i S(b)) with S(b) built from two
    seeded smoothing matrices and periodic profile functions; the spectrum is
    then exactly the integers, the kernel has constant rank one, and the
    non-negative spectral section has the closed form exp(iS) P0 exp(-iS).
    style="additive" adds the perturbation directly, zeroed on the k=0 row
    and column so the kernel survives.
    """

    def __init__(self, grid: BaseGrid, truncation: int, gamma: float = 0.6,
                 seed: int = 0, amplitude: float = 1.0, style: str = "conjugated",
                 gap_tol: float = 1e-8):
        if truncation < 1:
            raise ValueError("truncation must be at least 1")
        if style not in ("conjugated", "additive"):
            raise ValueError("style must be 'conjugated' or 'additive'")
        self.grid = grid
        self.truncation = int(truncation)
        self.gamma = float(gamma)
        self.seed = int(seed)
        self.amplitude = float(amplitude)
        self.style = style
        self.gap_tol = float(gap_tol)
        self.modes = np.arange(-truncation, truncation + 1)
        b = grid.coords()
        self._b1 = b[0]
        self._b2 = b[1] if grid.ndim == 2 else np.zeros_like(b[0])
        self._ops: np.ndarray | None = None
        self._sections: dict[str, ProjectionSection] = {}

    @property
    def dim(self) -> int:
        return 2 * self.truncation + 1

    def _phase_matrix(self) -> np.ndarray:
        s1 = smoothing_perturbation(self.seed, self.gamma, self.truncation)
        s2 = smoothing_perturbation(self.seed + 1, self.gamma, self.truncation)
        f1 = self.amplitude * np.cos(self._b1)
        f2 = self.amplitude * np.sin(self._b2)
        return f1[..., None, None] * s1 + f2[..., None, None] * s2

    def boundary_operator_field(self) -> np.ndarray:
        """A_b = diag(k) + V_b over the grid; gap condition enforced."""
        if self._ops is not None:
            return self._ops
        d = np.diag(self.modes.astype(complex))
        if self.style == "conjugated":
            u = _expi(self._phase_matrix())
            ops = u @ d[(None,) * self.grid.ndim] @ np.swapaxes(u.conj(), -1, -2)
        else:
            v = smoothing_perturbation(self.seed, self.gamma, self.truncation).copy()
            zero = self.truncation
            v[zero, :] = 0.0
            v[:, zero] = 0.0
            f = 0.35 * np.cos(self._b1) * np.cos(self._b2) if self.grid.ndim == 2 \
                else 0.35 * np.cos(self._b1)
            ops = d[(None,) * self.grid.ndim] + f[..., None, None] * v
        w = np.linalg.eigvalsh(ops)
        snap = 64 * np.finfo(float).eps * max(1.0, float(np.abs(w).max(initial=0.0)))
        snap = min(snap, 0.5 * self.gap_tol)
        bad = (w > -self.gap_tol) & (w < -snap)
        if np.any(bad):
            raise ValueError("family violates the spectral gap condition below zero")
        self._ops = ops
        return ops

    def boundary_operator(self, idx) -> np.ndarray:
        idx = idx if isinstance(idx, tuple) else (idx,)
        return self.boundary_operator_field()[idx]

    def aps_section(self) -> ProjectionSection:
        """Non-negative spectral projections of the boundary family."""
        if "aps" in self._sections:
            return self._sections["aps"]
        ops = self.boundary_operator_field()
        vals = np.empty_like(ops)
        for idx in np.ndindex(*self.grid.shape):
            vals[idx] = spectral_projection(ops[idx], self.gap_tol).matrix
        sec = ProjectionSection.build(self.grid, vals)
        self._sections["aps"] = sec
        return sec

    def conjugated_section(self, scale: float = 1.0, seed_offset: int = 0) -> ProjectionSection:
        """Closed-form section exp(i S(b)) P0 exp(-i S(b)) with P0 = diag(k >= 0)."""
        s1 = smoothing_perturbation(self.seed + seed_offset, self.gamma, self.truncation)
        s2 = smoothing_perturbation(self.seed + seed_offset + 1, self.gamma, self.truncation)
        f1 = scale * np.cos(self._b1)
        f2 = scale * np.sin(self._b2)
        u = _expi(f1[..., None, None] * s1 + f2[..., None, None] * s2)
        p0 = np.diag((self.modes >= 0).astype(complex))
        vals = u @ p0[(None,) * self.grid.ndim] @ np.swapaxes(u.conj(), -1, -2)
        return ProjectionSection.build(self.grid, vals)

    def boundary_pair(self, which: str = "full", section: ProjectionSection | None = None):
        """Compression pair mirroring the split-circle layout.

        The roles of the two Cauchy-data bundles are played by the spectral
        section and an independently rotated copy of it.
        """
        base = self.aps_section() if self.style == "additive" else self.conjugated_section(self.amplitude, 0)
        partner = self.conjugated_section(0.7 * self.amplitude, 2)
        if which == "full":
            return base, partner
        if section is None:
            raise ValueError("left/right pairs need the interface section")
        if which == "left":
            return base, section
        if which == "right":
            return section, partner
        raise ValueError("which must be 'full', 'left' or 'right'")
