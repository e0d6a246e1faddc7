"""Connection, curvature, additivity and Chern data of determinant lines of
projection pairs over a parameter torus.

Everything is computed in the restricted picture.  A pair of equal-rank
sections (P0, P1) is represented through frames by the overlap block
M(b) = F1(b)* F0(b); a chart shifts the compressed map by a constant ambient
block, and every reported number (metric, transition ratio, trace density,
link holonomy) is invariant under the per-point basis freedom of the frames.

Discretization.  Connection 1-forms are stored as edge integrals whose real
part is exactly half the increment of log of the squared metric along the
edge, while the imaginary part applies the trapezoid rule to the phase
density tr(X dPhi).  Metric compatibility is then an identity of the scheme,
curvature plaquettes come out purely imaginary, and the surviving error sits
in the imaginary part at second order in the mesh.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .detline import Trivialization
from .errors import CoverageError, NearSingular, VortexOnLink
from .grassmann import (
    BaseGrid,
    DiscreteForm,
    Projection,
    ProjectionSection,
    _roll,
    frames_of,
    nearest_projection,
    section_links,
    toeplitz_inverse,
)
from .opcalc import as_matrix

__all__ = [
    "PairChart",
    "default_cover",
    "ChartedConnection",
    "CurvatureReport",
    "pair_overlap_field",
    "pair_metric_field",
    "restricted_shift_field",
    "connection_one_form",
    "curvature_of",
    "patching_residuals",
    "curvature_families_formula",
    "f_function",
    "f_function_field",
    "additivity_residual",
    "pair_links",
    "plaquette_winding",
    "chern_number",
    "chern_of_section",
    "chern_of_pair",
    "swap_trace_identity",
    "composition_trace_identity",
]


@dataclass(frozen=True, eq=False)
class PairChart:
    """Chart datum for a projection pair: compress I + scale*block.

    block=None is the plain overlap chart.  The ambient block is constant
    over the base, so the chart datum is smooth wherever it is invertible.
    """

    block: np.ndarray | None = None
    scale: float = 1.0
    label: str = "0"

    def ambient(self, dim: int) -> np.ndarray:
        out = np.eye(dim, dtype=complex)
        if self.block is None:
            return out
        c = as_matrix(self.block)
        if c.shape != (dim, dim):
            raise ValueError("chart block does not match the ambient dimension")
        return out + self.scale * c


def default_cover(dim: int, scale: float = 1.0) -> list[PairChart]:
    """Plain chart plus three constant-block shifts that bridge degeneracies."""
    n = dim // 2
    upper = np.zeros((dim, dim), dtype=complex)
    upper[:n, :n] = np.eye(n)
    lower = np.zeros((dim, dim), dtype=complex)
    lower[n:, n:] = np.eye(dim - n)
    swap = np.zeros((dim, dim), dtype=complex)
    swap[:n, n:] = np.eye(n, dim - n)
    swap[n:, :n] = np.eye(dim - n, n)
    return [
        PairChart(None, 0.0, "0"),
        PairChart(upper, scale, "upper"),
        PairChart(lower, scale, "lower"),
        PairChart(swap, scale, "swap"),
    ]


def _wrap_branch(values: np.ndarray) -> np.ndarray:
    """Reduce log-type residuals to the principal band (-pi, pi] imaginary part.

    Identities between connection forms and d Log of determinant ratios hold
    modulo the 2 pi i branch lattice on each cell; genuine discretization
    error is far inside the band, branch jumps sit exactly on it.
    """
    return values - 2j * np.pi * np.round(values.imag / (2.0 * np.pi))


def _frames_pair(sec0: ProjectionSection, sec1: ProjectionSection):
    if sec0.grid != sec1.grid:
        raise ValueError("sections live over different grids")
    if sec0.dim != sec1.dim:
        raise ValueError("sections live in different ambient spaces")
    if sec0.base_rank != sec1.base_rank:
        raise ValueError("pair needs equal ranks")
    return sec0.frames(), sec1.frames()


def pair_overlap_field(sec0: ProjectionSection, sec1: ProjectionSection,
                       chart: PairChart | None = None) -> np.ndarray:
    """Compressed chart datum M_alpha(b) = F1(b)* (I + shift) F0(b)."""
    f0, f1 = _frames_pair(sec0, sec1)
    amb = (chart or PairChart()).ambient(sec0.dim)
    return np.swapaxes(f1.conj(), -1, -2) @ (amb @ f0)


def pair_metric_field(sec0: ProjectionSection, sec1: ProjectionSection,
                      chart: PairChart | None = None) -> np.ndarray:
    """Squared canonical metric |det M_alpha(b)|^2 of the chart datum."""
    return np.abs(np.linalg.det(pair_overlap_field(sec0, sec1, chart))) ** 2


def restricted_shift_field(sec0: ProjectionSection, sec1: ProjectionSection,
                           chart: PairChart) -> np.ndarray:
    """Compressed chart shift t F1* C F0, the block added to the plain overlap."""
    f0, f1 = _frames_pair(sec0, sec1)
    k = sec0.base_rank
    if chart.block is None:
        return np.zeros(sec0.grid.shape + (k, k), dtype=complex)
    c = chart.scale * as_matrix(chart.block)
    return np.swapaxes(f1.conj(), -1, -2) @ (c @ f0)


def _chart_edge_data(sec0: ProjectionSection, sec1: ProjectionSection,
                     chart: PairChart, sing_floor: float, f0: np.ndarray,
                     f1: np.ndarray) -> dict:
    """Edge samples of the chart connection form plus health bookkeeping."""
    g = sec0.grid
    g.require_periodic()
    k = sec0.base_rank
    amb = chart.ambient(sec0.dim)
    f1h = np.swapaxes(f1.conj(), -1, -2)
    m = f1h @ (amb @ f0)
    smin = np.linalg.svd(m, compute_uv=False)[..., -1] if k else np.zeros(g.shape)
    healthy = smin >= sing_floor
    msafe = np.where(healthy[..., None, None], m, np.eye(k, dtype=complex))
    _, logabs = np.linalg.slogdet(msafe)
    logm = 2.0 * logabs
    det = np.where(healthy, np.linalg.det(m), 1.0)

    phi = (sec1.values @ amb) @ sec0.values
    comps, masks = [], []
    for ax in range(g.ndim):
        dphi = (_roll(phi, g, ax, +1) - _roll(phi, g, ax, -1)) / (2.0 * g.spacing[ax])
        t = f1h @ dphi @ f0
        dens = np.trace(np.linalg.solve(msafe, t), axis1=-2, axis2=-1)
        di = dens.imag
        re = 0.5 * (_roll(logm, g, ax, +1) - logm)
        im = 0.5 * g.spacing[ax] * (di + _roll(di, g, ax, +1))
        comps.append(re + 1j * im)
        masks.append(~(healthy & _roll(healthy, g, ax, +1)))
    omega = np.stack(comps, axis=g.ndim)
    emask = np.stack(masks, axis=g.ndim)
    return {"omega": omega, "edge_mask": emask, "healthy": healthy,
            "overlap": m, "logm": logm, "det": det, "smin": smin}


@dataclass
class ChartedConnection:
    """Connection data of a projection pair, one edge 1-form per chart.

    omega[i] carries the edge samples of chart i with its exclusion mask;
    healthy[i] is the point-wise chart domain.  On overlaps the forms differ
    by the discrete d log of the transition ratio, up to O(h^2) density.
    """

    grid: BaseGrid
    charts: list[PairChart]
    omega: list[DiscreteForm]
    healthy: list[np.ndarray]
    trivializations: list[Trivialization] = field(default_factory=list)
    sing_floor: float = 0.1

    def coverage(self) -> np.ndarray:
        """Points lying in at least one chart domain."""
        out = np.zeros(self.grid.shape, dtype=bool)
        for h in self.healthy:
            out |= h
        return out

    @property
    def excluded_fraction(self) -> float:
        return float(1.0 - self.coverage().mean())


def connection_one_form(sec0: ProjectionSection, sec1: ProjectionSection,
                        cover: list[PairChart] | None = None,
                        sing_floor: float = 0.1) -> ChartedConnection:
    """Edge-integrated connection forms of the pair, one per chart.

    Each edge sample has real part half the increment of the chart's squared
    metric logarithm (metric compatibility is exact) and imaginary part the
    trapezoid rule for tr(X dPhi) with X the compressed inverse of the chart
    datum.  Edges touching a point outside the chart domain are masked; a
    point inside no chart domain at all makes the atlas invalid.
    """
    if cover is None:
        cover = default_cover(sec0.dim)
    if not cover:
        raise ValueError("cover must contain at least one chart")
    f0, f1 = _frames_pair(sec0, sec1)
    omegas, healthy, trivs = [], [], []
    for chart in cover:
        data = _chart_edge_data(sec0, sec1, chart, sing_floor, f0, f1)
        mask = data["edge_mask"] if data["edge_mask"].any() else None
        omegas.append(DiscreteForm(sec0.grid, 1, data["omega"], mask=mask))
        healthy.append(data["healthy"])
        trivs.append(Trivialization(sec0.grid, restricted_shift_field(sec0, sec1, chart),
                                    cond_bound=1.0 / max(sing_floor, 1e-15), label=chart.label))
    covered = np.zeros(sec0.grid.shape, dtype=bool)
    for h in healthy:
        covered |= h
    if not covered.all():
        raise CoverageError(
            f"{int((~covered).sum())} grid points lie outside every chart domain")
    return ChartedConnection(sec0.grid, list(cover), omegas, healthy, trivs, sing_floor)


_PLAQ_STENCIL = (
    (0, 0), (1, 0), (0, 1), (1, 1),
    (-1, 0), (2, 0), (0, -1), (0, 2),
    (1, -1), (1, 2), (-1, 1), (2, 1),
)


def _plaquette_ok(healthy: np.ndarray, grid: BaseGrid) -> np.ndarray:
    """Plaquettes whose corner edges and difference stencils stay in-domain."""
    ok = np.ones(grid.shape, dtype=bool)
    for da, db in _PLAQ_STENCIL:
        ok &= _roll(_roll(healthy, grid, 0, da), grid, 1, db)
    return ok


def curvature_of(conn: ChartedConnection, require_cover: bool = False) -> DiscreteForm:
    """Curvature plaquettes: oriented edge sums of the connection form.

    Each plaquette is evaluated in the first chart of the cover that is
    healthy on the full difference stencil; the chart choice moves the value
    only at O(h^2) since transition contributions are discretely closed.
    Uncovered plaquettes are masked, or raise CoverageError when required.
    """
    g = conn.grid
    if g.ndim != 2:
        raise ValueError("curvature needs a 2-axis grid")
    vals = np.zeros(g.shape, dtype=complex)
    chosen = np.full(g.shape, -1, dtype=int)
    for i, (form, healthy) in enumerate(zip(conn.omega, conn.healthy)):
        o0 = form.samples.take(0, axis=2)
        o1 = form.samples.take(1, axis=2)
        pl = o0 + _roll(o1, g, 0, +1) - _roll(o0, g, 1, +1) - o1
        take = _plaquette_ok(healthy, g) & (chosen < 0)
        vals[take] = pl[take]
        chosen[take] = i
    mask = chosen < 0
    if require_cover and mask.any():
        raise CoverageError(f"{int(mask.sum())} plaquettes not covered by any chart")
    return DiscreteForm(g, 2, vals, mask=mask if mask.any() else None)


def patching_residuals(sec0: ProjectionSection, sec1: ProjectionSection,
                       chart_a: PairChart, chart_b: PairChart,
                       sing_floor: float = 0.1) -> dict[str, DiscreteForm]:
    """Edge residuals of the two transition identities between two charts.

    inverse_ratio: omega_a - omega_b - d Log det(M_b^{-1} M_a).
    adjoint_ratio: omega_a + conj(omega_b) - d Log det(M_b* M_a).
    Both vanish to O(h^2) density on the common domain; their real parts
    cancel exactly because |ratio| is the corresponding metric ratio.
    """
    g = sec0.grid
    f0, f1 = _frames_pair(sec0, sec1)
    da = _chart_edge_data(sec0, sec1, chart_a, sing_floor, f0, f1)
    db = _chart_edge_data(sec0, sec1, chart_b, sing_floor, f0, f1)
    both = da["healthy"] & db["healthy"]
    t_ratio = np.where(both, da["det"] / db["det"], 1.0)
    r_ratio = np.where(both, np.conj(db["det"]) * da["det"], 1.0)
    inv_comps, adj_comps, masks = [], [], []
    for ax in range(g.ndim):
        dlog_t = np.log(_roll(t_ratio, g, ax, +1) / t_ratio)
        dlog_r = np.log(_roll(r_ratio, g, ax, +1) / r_ratio)
        oa = da["omega"][..., ax]
        ob = db["omega"][..., ax]
        inv_comps.append(_wrap_branch(oa - ob - dlog_t))
        adj_comps.append(_wrap_branch(oa + np.conj(ob) - dlog_r))
        masks.append(~(both & _roll(both, g, ax, +1)))
    emask = np.stack(masks, axis=g.ndim)
    emask = emask if emask.any() else None
    return {
        "inverse_ratio": DiscreteForm(g, 1, np.stack(inv_comps, axis=g.ndim), mask=emask),
        "adjoint_ratio": DiscreteForm(g, 1, np.stack(adj_comps, axis=g.ndim), mask=emask),
    }


def _plaquette_curvature_blocks(sec: ProjectionSection):
    """Center projection and sandwiched curvature block per plaquette."""
    g = sec.grid
    v = sec.values
    c00 = v
    c10 = _roll(v, g, 0, +1)
    c01 = _roll(v, g, 1, +1)
    c11 = _roll(c10, g, 1, +1)
    pc = nearest_projection(0.25 * (c00 + c10 + c01 + c11))
    d0 = (c10 + c11 - c00 - c01) / (2.0 * g.spacing[0])
    d1 = (c01 + c11 - c00 - c10) / (2.0 * g.spacing[1])
    r = pc @ (d0 @ d1 - d1 @ d0) @ pc * g.plaquette_area()
    return pc, r


def curvature_families_formula(sec0: ProjectionSection, sec1: ProjectionSection,
                               variant: str = "full",
                               sing_floor: float = 0.1) -> DiscreteForm:
    """Curvature plaquettes from the two subbundle curvature blocks.

    variant="full" evaluates tr(X R1 Phi) - tr(R0) with Phi the compression
    between the plaquette-center projections and X its compressed inverse;
    variant="simplified" evaluates tr(R1) - tr(R0), the split-fibration
    shortcut.  The two agree to machine precision wherever X exists, and the
    full variant masks plaquettes with a near-singular compression.
    """
    if variant not in ("full", "simplified"):
        raise ValueError("variant must be 'full' or 'simplified'")
    g = sec0.grid
    if g.ndim != 2:
        raise ValueError("curvature needs a 2-axis grid")
    g.require_periodic()
    _frames_pair(sec0, sec1)
    pc0, r0 = _plaquette_curvature_blocks(sec0)
    pc1, r1 = _plaquette_curvature_blocks(sec1)
    tr0 = np.trace(r0, axis1=-2, axis2=-1)
    tr1 = np.trace(r1, axis1=-2, axis2=-1)
    if variant == "simplified":
        return DiscreteForm(g, 2, tr1 - tr0)
    k = sec0.base_rank
    f0c = frames_of(pc0, k)
    f1c = frames_of(pc1, k)
    f1ch = np.swapaxes(f1c.conj(), -1, -2)
    mc = f1ch @ f0c
    smin = np.linalg.svd(mc, compute_uv=False)[..., -1] if k else np.zeros(g.shape)
    healthy = smin >= sing_floor
    mcsafe = np.where(healthy[..., None, None], mc, np.eye(k, dtype=complex))
    n = f1ch @ r1 @ f0c
    vals = np.trace(np.linalg.solve(mcsafe, n), axis1=-2, axis2=-1) - tr0
    mask = ~healthy
    return DiscreteForm(g, 2, vals, mask=mask if mask.any() else None)


# -- splitting comparison function ---------------------------------------------


def _overlap_blocks(sec_a: ProjectionSection, sec_mid: ProjectionSection,
                    sec_b: ProjectionSection):
    fa, fb = _frames_pair(sec_a, sec_b)
    fm, _ = _frames_pair(sec_mid, sec_b)
    fbh = np.swapaxes(fb.conj(), -1, -2)
    fmh = np.swapaxes(fm.conj(), -1, -2)
    full = fbh @ fa
    left = fmh @ fa
    right = fbh @ fm
    return full, left, right


def f_function_field(sec_a: ProjectionSection, sec_mid: ProjectionSection,
                     sec_b: ProjectionSection, sing_floor: float = 0.1):
    """Determinant ratio comparing the outer pair with its two-stage split.

    Returns (field, healthy) with field(b) = det M_full / (det M_right *
    det M_left); the value is frame independent and equals 1 when the middle
    section coincides with the first leg.  Unhealthy points are set to 1.
    """
    full, left, right = _overlap_blocks(sec_a, sec_mid, sec_b)
    smins = [np.linalg.svd(m, compute_uv=False)[..., -1] for m in (full, left, right)]
    healthy = np.ones(sec_a.grid.shape, dtype=bool)
    for s in smins:
        healthy &= s >= sing_floor
    vals = np.where(healthy,
                    np.linalg.det(full)
                    / np.where(healthy, np.linalg.det(right) * np.linalg.det(left), 1.0),
                    1.0)
    return vals, healthy


def f_function(model, section: ProjectionSection, idx, sing_floor: float = 1e-8) -> complex:
    """Point value of the splitting comparison function at grid index idx.

    Compares the full boundary pair of the model with the composition of the
    two half pairs through the interface section; 1 when the section equals
    the first Cauchy-data bundle.  Raises NearSingular at excluded points.
    """
    sec_a, sec_b = model.boundary_pair("full")
    idx = idx if isinstance(idx, tuple) else (idx,)
    pa = Projection(sec_a.at(idx))
    pm = Projection(section.at(idx))
    pb = Projection(sec_b.at(idx))
    if not (pa.rank == pm.rank == pb.rank):
        raise ValueError("sections of unequal rank cannot be compared")
    fa, fm, fb = pa.frame(), pm.frame(), pb.frame()
    full = fb.conj().T @ fa
    left = fm.conj().T @ fa
    right = fb.conj().T @ fm
    for name, m in (("full", full), ("left", left), ("right", right)):
        if pa.rank and np.linalg.svd(m, compute_uv=False)[-1] < sing_floor:
            raise NearSingular(f"{name} compression near-singular at {idx}")
    return complex(np.linalg.det(full) / (np.linalg.det(right) * np.linalg.det(left)))


# -- link variables and Chern numbers ------------------------------------------


def pair_links(sec0: ProjectionSection, sec1: ProjectionSection) -> np.ndarray:
    """Link overlaps of the determinant line of the pair: conj(l0) * l1."""
    _frames_pair(sec0, sec1)
    return np.conj(section_links(sec0)) * section_links(sec1)


def plaquette_winding(grid: BaseGrid, links: np.ndarray,
                      vortex_tol: float = 1e-8) -> DiscreteForm:
    """Principal-log plaquette holonomy of normalized link overlaps."""
    if grid.ndim != 2:
        raise ValueError("plaquette holonomy needs a 2-axis grid")
    grid.require_periodic()
    links = np.asarray(links)
    if links.shape != grid.shape + (2,):
        raise ValueError("links must carry one complex overlap per edge")
    mags = np.abs(links)
    if np.any(mags < vortex_tol):
        raise VortexOnLink("link overlap below the vortex threshold; refine the grid")
    u = links / mags
    u0 = u[..., 0]
    u1 = u[..., 1]
    w = u0 * _roll(u1, grid, 0, +1) * np.conj(_roll(u0, grid, 1, +1)) * np.conj(u1)
    return DiscreteForm(grid, 2, np.log(w))


def chern_number(grid: BaseGrid, links: np.ndarray, vortex_tol: float = 1e-8,
                 integrality_tol: float = 1e-3) -> int:
    """Integer holonomy sum of the line bundle described by the link field."""
    total = plaquette_winding(grid, links, vortex_tol).total()
    c = complex(total) / (2j * np.pi)
    n = int(round(c.real))
    if abs(c - n) > integrality_tol:
        raise ValueError(f"holonomy sum {c} is not integral within {integrality_tol}")
    return n


def chern_of_section(section: ProjectionSection, vortex_tol: float = 1e-8) -> int:
    """Chern number of det(ran P) from frame-overlap link variables."""
    return chern_number(section.grid, section_links(section), vortex_tol)


def chern_of_pair(sec0: ProjectionSection, sec1: ProjectionSection,
                  vortex_tol: float = 1e-8) -> int:
    """Chern number of the pair's determinant line (dual leg 0, direct leg 1)."""
    return chern_number(sec0.grid, pair_links(sec0, sec1), vortex_tol)


# -- additivity report ----------------------------------------------------------


@dataclass
class CurvatureReport:
    """Outcome of the split-curvature comparison over a parameter torus.

    curvature is the full-pair curvature form (chart cover applied); defect
    holds the plaquette residual curvature_full - curvature_left -
    curvature_right - winding, which is the coboundary of one_form_residual.
    residuals maps statistic names to nonnegative reals; cherns are computed
    independently per bundle by the link method.
    """

    grid: BaseGrid
    curvature: DiscreteForm
    curvature_left: DiscreteForm
    curvature_right: DiscreteForm
    defect: DiscreteForm
    one_form_residual: DiscreteForm
    f_winding: DiscreteForm
    chern: int
    chern_left: int
    chern_right: int
    residuals: dict[str, float]
    label: str = ""

    @property
    def chern_additive(self) -> bool:
        return self.chern == self.chern_left + self.chern_right

    def summary(self) -> dict:
        """JSON-ready digest of the report."""
        return {
            "label": self.label,
            "grid": list(self.grid.shape),
            "chern": {"full": self.chern, "left": self.chern_left,
                      "right": self.chern_right,
                      "additive": bool(self.chern_additive)},
            "residuals": {k: float(v) for k, v in sorted(self.residuals.items())},
        }


def additivity_residual(model, section: ProjectionSection, sing_floor: float = 0.1,
                        max_excluded: float = 0.05,
                        cover: list[PairChart] | None = None,
                        vortex_tol: float = 1e-8, label: str = "") -> CurvatureReport:
    """Split the boundary pair through a section and compare connection data.

    Checks the identity omega_full = omega_left + omega_right + d log F on
    every co-healthy edge (plain charts), reports the plaquette defect with
    the winding of F removed, and computes the three Chern numbers by
    independent link sums.  Raises CoverageError when the exclusions exceed
    max_excluded of the edges.
    """
    sec_a, sec_b = model.boundary_pair("full")
    g = sec_a.grid
    g.require_periodic()
    if g.ndim != 2:
        raise ValueError("the additivity comparison needs a 2-axis grid")

    fa, fb = _frames_pair(sec_a, sec_b)
    fm = section.frames()
    plain = PairChart()
    d_full = _chart_edge_data(sec_a, sec_b, plain, sing_floor, fa, fb)
    d_left = _chart_edge_data(sec_a, section, plain, sing_floor, fa, fm)
    d_right = _chart_edge_data(section, sec_b, plain, sing_floor, fm, fb)
    f_vals, f_healthy = f_function_field(sec_a, section, sec_b, sing_floor)

    comps, fcomps, masks, fmasks = [], [], [], []
    for ax in range(g.ndim):
        dlog_f = np.log(_roll(f_vals, g, ax, +1) / f_vals)
        resid = (d_full["omega"][..., ax] - d_left["omega"][..., ax]
                 - d_right["omega"][..., ax] - dlog_f)
        comps.append(_wrap_branch(resid))
        fcomps.append(dlog_f)
        fmasks.append(~(f_healthy & _roll(f_healthy, g, ax, +1)))
        masks.append(d_full["edge_mask"][..., ax] | d_left["edge_mask"][..., ax]
                     | d_right["edge_mask"][..., ax] | fmasks[-1])
    emask = np.stack(masks, axis=g.ndim)
    fmask = np.stack(fmasks, axis=g.ndim)

    excluded = float(emask.mean())
    if excluded > max_excluded:
        err = CoverageError(
            f"{100 * excluded:.1f}% of edges excluded, above {100 * max_excluded:.1f}%")
        err.fraction = excluded
        raise err

    one_form = DiscreteForm(g, 1, np.stack(comps, axis=g.ndim),
                            mask=emask if emask.any() else None)
    defect = one_form.coboundary()
    defect.samples = _wrap_branch(defect.samples)
    f_wind_form = DiscreteForm(g, 1, np.stack(fcomps, axis=g.ndim),
                               mask=fmask if fmask.any() else None).coboundary()

    if cover is None:
        cover = default_cover(sec_a.dim)
    curv_full = curvature_of(connection_one_form(sec_a, sec_b, cover, sing_floor))
    curv_left = curvature_of(connection_one_form(sec_a, section, cover, sing_floor))
    curv_right = curvature_of(connection_one_form(section, sec_b, cover, sing_floor))

    c_full = chern_of_pair(sec_a, sec_b, vortex_tol)
    c_left = chern_of_pair(sec_a, section, vortex_tol)
    c_right = chern_of_pair(section, sec_b, vortex_tol)

    wind = f_wind_form.samples / (2j * np.pi)
    keep_w = ~f_wind_form.mask if f_wind_form.mask is not None else np.ones(g.shape, bool)
    integ = float(np.max(np.abs(wind - np.round(wind.real))[keep_w])) if keep_w.any() else 0.0

    def real_max(form: DiscreteForm) -> float:
        v = np.abs(form.samples.real)
        if form.mask is not None:
            v = np.where(form.mask, 0.0, v)
        return float(v.max())

    residuals = {
        "one_form_max_density": one_form.max_density_residual(),
        "defect_max_density": defect.max_density_residual(),
        "curvature_real_max": max(real_max(curv_full), real_max(curv_left),
                                  real_max(curv_right)),
        "excluded_edge_fraction": excluded,
        "excluded_plaquette_fraction": float(defect.mask.mean()) if defect.mask is not None else 0.0,
        "f_winding_integrality": integ,
        "chern_additivity_gap": float(abs(c_full - (c_left + c_right))),
    }
    return CurvatureReport(g, curv_full, curv_left, curv_right, defect, one_form,
                           f_wind_form, c_full, c_left, c_right, residuals, label)


# -- trace identities ------------------------------------------------------------


def _as_projection(p) -> Projection:
    return p if isinstance(p, Projection) else Projection(p)


def swap_trace_identity(p0, p1, phi, end0, end1, cond_tol: float = 1e12):
    """Move a pair of sandwiched endomorphisms through an invertible compression.

    Returns the two evaluations (trace on range(P0), trace on range(P1)) of
    the same quantity: tr(R0 - X R1 Phi) and tr(Phi R0 X - R1).  Equality is
    pure trace cyclicity; numerical agreement certifies the compressed
    inverse.
    """
    p0, p1 = _as_projection(p0), _as_projection(p1)
    phi_s = p1.matrix @ as_matrix(phi) @ p0.matrix
    r0 = p0.matrix @ as_matrix(end0) @ p0.matrix
    r1 = p1.matrix @ as_matrix(end1) @ p1.matrix
    x = toeplitz_inverse(p0, p1, phi_s, cond_tol)
    lhs = np.trace(r0 - x @ r1 @ phi_s)
    rhs = np.trace(phi_s @ r0 @ x - r1)
    return complex(lhs), complex(rhs)


def composition_trace_identity(p0, p1, p2, phi01, phi12, end2, cond_tol: float = 1e12):
    """Telescope a sandwiched endomorphism through a composed compression.

    Returns tr(X02 R2 Phi02) for the one-step pair and tr(X01 X12 R2 Phi12
    Phi01) for the two-step factorization; both equal tr(R2).
    """
    p0, p1, p2 = _as_projection(p0), _as_projection(p1), _as_projection(p2)
    phi01_s = p1.matrix @ as_matrix(phi01) @ p0.matrix
    phi12_s = p2.matrix @ as_matrix(phi12) @ p1.matrix
    phi02 = phi12_s @ phi01_s
    r2 = p2.matrix @ as_matrix(end2) @ p2.matrix
    x01 = toeplitz_inverse(p0, p1, phi01_s, cond_tol)
    x12 = toeplitz_inverse(p1, p2, phi12_s, cond_tol)
    x02 = toeplitz_inverse(p0, p2, phi02, cond_tol)
    lhs = np.trace(x02 @ r2 @ phi02)
    rhs = np.trace(x01 @ x12 @ r2 @ phi12_s @ phi01_s)
    return complex(lhs), complex(rhs)
