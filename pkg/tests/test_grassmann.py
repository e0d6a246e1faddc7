"""Projection fields, compressions and discrete forms against dense oracles."""

import numpy as np
import pytest

from detbundle.errors import DegenerateSpectrum, GridDomainError, NearSingular
from detbundle.grassmann import (
    BaseGrid,
    DiscreteForm,
    Projection,
    ProjectionSection,
    curvature_trace_form,
    frames_of,
    graph_projection,
    hom_derivative,
    second_fundamental_form,
    section_links,
    spectral_projection,
    toeplitz,
    toeplitz_inverse,
)
from detbundle.models import bloch_curvature_density, bloch_section, bloch_vector, demo_family, rotated_interface
from detbundle.opcalc import operator_norm

from conftest import random_complex, random_projection


# -- grids ---------------------------------------------------------------------


def test_torus_grid_layout():
    g = BaseGrid.torus(8, 16)
    assert g.shape == (8, 16)
    assert g.spacing == (2.0 * np.pi / 8, 2.0 * np.pi / 16)
    assert all(g.periodic)
    assert g.plaquette_area() == pytest.approx(g.spacing[0] * g.spacing[1])


def test_line_grid_includes_endpoints():
    g = BaseGrid.line(7, -0.5, 2.5)
    c = g.axis_coords(0)
    assert c[0] == pytest.approx(-0.5)
    assert c[-1] == pytest.approx(2.5)
    assert not g.periodic[0]


def test_shift_wraps_only_on_periodic_axes():
    g = BaseGrid.torus(4, 4)
    assert g.shift((3, 0), 0, 1) == (0, 0)
    line = BaseGrid.line(4, 0.0, 1.0)
    with pytest.raises(GridDomainError):
        line.shift((3,), 0, 1)


def test_grid_rejects_tiny_axes():
    with pytest.raises(ValueError):
        BaseGrid.torus(3, 8)


# -- projections ---------------------------------------------------------------


def test_spectral_projection_sign_split():
    p = spectral_projection(np.diag([1.0, -1.0]))
    np.testing.assert_allclose(p.matrix, np.diag([1.0, 0.0]), atol=1e-14)


def test_spectral_projection_matches_eigensolver_oracle():
    rng = np.random.default_rng(21)
    # gapped Hermitian: push eigenvalues away from zero, keep eigenvectors
    a = random_complex(rng, 12, 12)
    a = a + a.conj().T
    w, v = np.linalg.eigh(a)
    w = np.where(w >= 0, w + 1.0, w - 1.0)
    m = (v * w) @ v.conj().T
    expected = (v[:, w >= 0]) @ (v[:, w >= 0]).conj().T
    p = spectral_projection(m)
    assert np.linalg.norm(p.matrix - expected) <= 1e-9


def test_spectral_projection_keeps_exact_kernel():
    p = spectral_projection(np.diag([1.0, 0.0, -1.0]))
    assert p.rank == 2


def test_spectral_projection_rejects_forbidden_band():
    with pytest.raises(DegenerateSpectrum):
        spectral_projection(np.diag([1.0, -1e-9, -1.0]), gap_tol=1e-8)


def test_graph_projection_of_zero_block():
    p = graph_projection(np.zeros((3, 3)))
    expected = np.zeros((6, 6))
    expected[:3, :3] = np.eye(3)
    np.testing.assert_allclose(p.matrix, expected, atol=1e-14)


def test_graph_projection_matches_qr_oracle():
    rng = np.random.default_rng(22)
    t = random_complex(rng, 4, 4)
    q, _ = np.linalg.qr(np.concatenate([np.eye(4), t], axis=0))
    expected = q @ q.conj().T
    p = graph_projection(t)
    assert np.linalg.norm(p.matrix - expected) <= 1e-9


def test_projection_validation():
    with pytest.raises(ValueError):
        Projection(np.array([[0.5, 0.5], [0.0, 0.5]]))  # not self-adjoint
    with pytest.raises(ValueError):
        Projection(0.5 * np.eye(2))  # not idempotent
    p = Projection(np.eye(3))
    assert p.complement().rank == 0


# -- compressions --------------------------------------------------------------


def test_toeplitz_of_equal_projections_is_identity_on_range():
    rng = np.random.default_rng(23)
    p = Projection(random_projection(rng, 6, 3))
    phi = toeplitz(p, p)
    np.testing.assert_allclose(phi @ p.matrix, p.matrix, atol=1e-12)


def test_toeplitz_inverse_of_projection_is_projection():
    rng = np.random.default_rng(24)
    p = Projection(random_projection(rng, 5, 2))
    x = toeplitz_inverse(p, p, p.matrix)
    np.testing.assert_allclose(x, p.matrix, atol=1e-10)


def test_toeplitz_inverse_two_sided_laws():
    # graph projections of two nearby blocks have invertible overlap; the
    # oracle inverts the frame-compressed matrix densely
    rng = np.random.default_rng(25)
    t0 = random_complex(rng, 2, 2, scale=0.3)
    p0 = graph_projection(t0)
    p1 = graph_projection(t0 + 0.1 * random_complex(rng, 2, 2))
    phi = toeplitz(p0, p1)
    x = toeplitz_inverse(p0, p1, phi)
    assert np.linalg.norm(x @ phi - p0.matrix) <= 1e-10
    assert np.linalg.norm(phi @ x - p1.matrix) <= 1e-10
    f0, f1 = p0.frame(), p1.frame()
    oracle = f0 @ np.linalg.inv(f1.conj().T @ phi @ f0) @ f1.conj().T
    assert np.linalg.norm(x - oracle) <= 1e-10


def test_toeplitz_inverse_raises_on_orthogonal_ranges():
    p0 = Projection(np.diag([1.0, 0.0]))
    p1 = Projection(np.diag([0.0, 1.0]))
    with pytest.raises(NearSingular):
        toeplitz_inverse(p0, p1, toeplitz(p0, p1))


def test_frames_of_spans_range():
    rng = np.random.default_rng(26)
    vals = np.stack([random_projection(rng, 6, 2) for _ in range(4)])
    f = frames_of(vals, 2)
    assert f.shape == (4, 6, 2)
    recon = f @ np.swapaxes(f.conj(), -1, -2)
    np.testing.assert_allclose(recon, vals, atol=1e-10)


# -- sections and derivatives ----------------------------------------------------


def _constant_section(grid: BaseGrid, p: np.ndarray) -> ProjectionSection:
    vals = np.broadcast_to(p, grid.shape + p.shape).copy()
    return ProjectionSection.build(grid, vals)


def test_hom_derivative_of_constant_data_is_zero():
    rng = np.random.default_rng(27)
    g = BaseGrid.torus(6, 6)
    sec = _constant_section(g, random_projection(rng, 4, 2))
    phi = np.broadcast_to(sec.values[0, 0], g.shape + (4, 4))
    d = hom_derivative(sec, sec, phi, (2, 3), 0)
    assert np.linalg.norm(d) <= 1e-13


def test_hom_derivative_matches_analytic_slope():
    # identity sections turn the covariant derivative into a plain central
    # difference; a sine field has a closed-form slope and the one-sided
    # Richardson pair brackets the same O(h^2) value
    errs = []
    for n in (24, 48):
        g = BaseGrid.torus(n, n)
        sec = _constant_section(g, np.eye(2))
        b1, _ = g.coords()
        phi = np.zeros(g.shape + (2, 2), dtype=complex)
        phi[..., 0, 0] = np.exp(1j * b1)
        phi[..., 1, 1] = 1.0
        idx = (n // 3, 0)
        d = hom_derivative(sec, sec, phi, idx, 0)
        exact = 1j * np.exp(1j * b1[idx])
        errs.append(abs(d[0, 0] - exact))
    assert errs[0] <= 0.02
    # halving h cuts the central-difference error by about 4
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.2)


def test_second_fundamental_form_of_constant_section_is_zero():
    rng = np.random.default_rng(28)
    g = BaseGrid.torus(6, 6)
    sec = _constant_section(g, random_projection(rng, 4, 2))
    s = second_fundamental_form(sec, (1, 1), 1)
    assert np.linalg.norm(s) <= 1e-13


def test_second_fundamental_form_matches_angular_speed():
    # rank-1 oracle: ||(I-P) dP P|| is half the angular speed of the
    # direction field; frozen bound 2.6e-3 measured at this resolution
    g = BaseGrid.torus(48, 48)
    sec = bloch_section(g, mass=1.0)
    b1, b2 = g.coords()
    h = 1e-6
    for idx in [(3, 7), (11, 30), (25, 14), (40, 41)]:
        for ax in (0, 1):
            s = second_fundamental_form(sec, idx, ax)
            db = [0.0, 0.0]
            db[ax] = h
            speed = np.linalg.norm(
                (bloch_vector(b1[idx] + db[0], b2[idx] + db[1])
                 - bloch_vector(b1[idx] - db[0], b2[idx] - db[1])) / (2.0 * h))
            assert abs(operator_norm(s) - 0.5 * speed) <= 0.01


# -- curvature forms -------------------------------------------------------------


def test_curvature_form_of_constant_section_is_zero():
    rng = np.random.default_rng(29)
    g = BaseGrid.torus(8, 8)
    sec = _constant_section(g, random_projection(rng, 4, 2))
    f = curvature_trace_form(sec)
    assert np.abs(f.samples).max() <= 1e-13


def test_bloch_curvature_matches_analytic_density():
    g = BaseGrid.torus(48, 48)
    sec = bloch_section(g, mass=1.0)
    form = curvature_trace_form(sec)
    b1c, b2c = g.coords(offset=0.5 * g.spacing[0])
    exact = bloch_curvature_density(b1c, b2c, mass=1.0)
    assert np.abs(form.density() - exact).max() <= 0.01


def test_bloch_curvature_integral_is_quantized():
    # solid-angle oracle: the integral is -2 pi i times the degree of the
    # direction field, +1 at mass 1 and -1 at mass -1
    for mass, deg in ((1.0, 1), (-1.0, -1)):
        g = BaseGrid.torus(48, 48)
        total = curvature_trace_form(bloch_section(g, mass=mass)).total()
        assert abs(total - (-2j * np.pi * deg)) <= 0.06


def test_calderon_curvature_flat_and_rotated_converges(demo16, demo32, demo64):
    # the plain Cauchy-data section of a self-adjoint potential has a global
    # frame, so its trace curvature vanishes; the rotated interface does not,
    # and its samples must decay at least O(h^2) under refinement
    flat = curvature_trace_form(demo32.calderon_section("left"))
    assert np.abs(flat.samples).max() <= 1e-9

    def coarsen(samples):
        m = samples.shape[0] // 2
        return samples.reshape(m, 2, m, 2).sum(axis=(1, 3))

    f16 = curvature_trace_form(rotated_interface(demo16)).samples
    f32 = curvature_trace_form(rotated_interface(demo32)).samples
    f64 = curvature_trace_form(rotated_interface(demo64)).samples
    e1 = np.abs(f16 - coarsen(f32)).max()
    e2 = np.abs(f32 - coarsen(f64)).max()
    assert e2 <= e1 / 3.5


# -- discrete forms ---------------------------------------------------------------


def test_coboundary_squared_is_zero():
    rng = np.random.default_rng(30)
    g = BaseGrid.torus(6, 10)
    f = DiscreteForm(g, 0, random_complex(rng, 6, 10))
    dd = f.coboundary().coboundary()
    assert np.abs(dd.samples).max() <= 1e-13


def test_form_total_skips_masked_cells():
    g = BaseGrid.torus(4, 4)
    samples = np.ones((4, 4))
    mask = np.zeros((4, 4), dtype=bool)
    mask[0, 0] = True
    f = DiscreteForm(g, 2, samples, mask=mask)
    assert f.total() == pytest.approx(15.0)


def test_form_csv_schema(tmp_path):
    g = BaseGrid.torus(4, 4)
    f = DiscreteForm(g, 2, np.full((4, 4), 1.5 + 0.5j))
    path = tmp_path / "form.csv"
    f.to_csv(path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "i,j,re,im"
    assert len(lines) == 17
    assert lines[1] == "0,0,1.5,0.5"


def test_section_links_records_closed_loop_gauge_invariants():
    g = BaseGrid.torus(8, 8)
    sec = bloch_section(g, mass=1.0)
    links = section_links(sec)
    assert links.shape == (8, 8, 2)
    # per-plaquette products are frame-gauge independent and unimodular up to
    # the curvature; magnitudes stay strictly positive on a resolved section
    assert np.abs(links).min() > 0.5
