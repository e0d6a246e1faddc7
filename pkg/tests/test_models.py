"""Transfer-matrix families, Cauchy-data bundles and the truncated cylinder."""

import numpy as np
import pytest

from detbundle.detline import canonical_det, chart_coordinate, metric_norm_sq
from detbundle.errors import OutOfChart
from detbundle.grassmann import BaseGrid, graph_projection
from detbundle.models import (
    DEMO_COEFFICIENTS,
    CylinderFamily,
    coefficient_family,
    constant_scalar_family,
    demo_family,
    potential_from_coefficients,
    rotated_interface,
    smoothing_perturbation,
    vortex_interface,
)
from detbundle.opcalc import trace_norm


# -- transfer matrices ------------------------------------------------------------


def test_zero_potential_transfer_is_identity():
    fam = constant_scalar_family(BaseGrid.line(4, 0.0, 1.0), value=0.0, rank=2,
                                 steps_per_half=16)
    t = fam.transfer_matrix((0,), 0.0, 2.0 * np.pi)
    np.testing.assert_allclose(t, np.eye(2), atol=1e-12)


def test_constant_scalar_transfer_closed_form():
    # oracle: i psi' = c psi integrates to exp(i c dx)
    g = BaseGrid.line(5, 0.3, 0.7)
    fam = constant_scalar_family(g, steps_per_half=512)
    c = g.axis_coords(0)
    t = fam.transfer_field(0.0, 0.5 * np.pi)
    expected = np.exp(1j * c * 0.5 * np.pi)
    assert np.abs(t[:, 0, 0] - expected).max() <= 1e-9


def test_transfer_composition():
    fam = demo_family(BaseGrid.torus(6, 6), steps_per_half=32)
    whole = fam.transfer_field(0.0, 2.0 * np.pi)
    halves = fam.transfer_field(np.pi, 2.0 * np.pi) @ fam.transfer_field(0.0, np.pi)
    assert np.abs(whole - halves).max() <= 1e-10


def test_transfer_inverse_direction():
    fam = demo_family(BaseGrid.torus(6, 6), steps_per_half=32)
    fwd = fam.transfer_field(0.0, np.pi)
    bwd = fam.transfer_field(np.pi, 0.0)
    prod = bwd @ fwd
    assert np.abs(prod - np.eye(2)).max() <= 1e-10


def test_transfer_unitarity_for_hermitian_potential():
    fam = demo_family(BaseGrid.torus(6, 6), steps_per_half=128)
    t = fam.transfer_field(0.0, 2.0 * np.pi)
    th = np.swapaxes(t.conj(), -1, -2)
    assert np.abs(th @ t - np.eye(2)).max() <= 1e-8


def test_transfer_requires_lattice_aligned_endpoints():
    fam = demo_family(BaseGrid.torus(6, 6), steps_per_half=32)
    with pytest.raises(ValueError):
        fam.transfer_field(0.0, 1.0)


# -- Cauchy-data bundles ----------------------------------------------------------


def test_zero_potential_left_bundle_is_diagonal_graph():
    fam = constant_scalar_family(BaseGrid.line(4, 0.0, 1.0), value=0.0, rank=1,
                                 steps_per_half=16)
    sec = fam.calderon_section("left")
    expected = graph_projection(np.eye(1)).matrix  # span{(v, v)}
    assert np.abs(sec.values - expected).max() <= 1e-12


def test_constant_scalar_left_bundle_closed_form():
    g = BaseGrid.line(4, 0.2, 0.8)
    fam = constant_scalar_family(g, steps_per_half=512)
    c = g.axis_coords(0)
    sec = fam.calderon_section("left")
    for k in range(4):
        expected = graph_projection(np.array([[np.exp(1j * c[k] * np.pi)]])).matrix
        assert np.abs(sec.values[k] - expected).max() <= 1e-9


def test_bundle_intersection_iff_monodromy_eigenvalue_one():
    # oracle: a periodic solution exists exactly when the two Cauchy-data
    # ranges meet, i.e. when the largest principal angle closes to zero
    for value, expect_meet in ((1.0, True), (0.5, False)):
        fam = constant_scalar_family(BaseGrid.line(4, 0.0, 1.0), value=value,
                                     steps_per_half=512)
        f_left = fam.calderon_section("left").frames()[0]
        f_right = fam.calderon_section("right").frames()[0]
        smax = np.linalg.svd(f_left.conj().T @ f_right, compute_uv=False)[0]
        if expect_meet:
            assert smax >= 1.0 - 1e-9
        else:
            assert smax <= 1.0 - 1e-3


def test_monodromy_zero_potential():
    fam = constant_scalar_family(BaseGrid.line(4, 0.0, 1.0), value=0.0,
                                 steps_per_half=16)
    assert abs(fam.full_monodromy_det((0,))) <= 1e-12


def test_monodromy_half_integer_closed_form():
    # det(1 - e^{2 pi i c}) = 2 exactly at c = 1/2
    fam = constant_scalar_family(BaseGrid.line(4, 0.0, 1.0), value=0.5,
                                 steps_per_half=512)
    assert abs(fam.full_monodromy_det((0,)) - 2.0) <= 1e-9


def test_kernel_locus_matches_pair_determinant():
    # zeros of the monodromy oracle and of the canonical pair metric coincide
    g = BaseGrid.line(121, -0.5, 1.5)
    fam = constant_scalar_family(g, steps_per_half=64)
    mono = np.abs(fam.monodromy_field())
    metric = np.array([metric_norm_sq(fam, (k,)) for k in range(121)])
    zeros_mono = {k for k in range(121) if mono[k] <= 1e-6}
    zeros_metric = {k for k in range(121) if metric[k] <= 1e-6}
    assert zeros_mono == zeros_metric
    c = g.axis_coords(0)
    assert {round(c[k]) for k in zeros_mono} == {0, 1}


# -- potential coefficient tables ---------------------------------------------------


def test_coefficient_table_reproduces_demo_potential():
    grid = BaseGrid.torus(8, 8)
    table = coefficient_family(grid, DEMO_COEFFICIENTS, steps_per_half=16)
    demo = demo_family(grid, steps_per_half=16)
    t0 = table.transfer_field(0.0, np.pi)
    t1 = demo.transfer_field(0.0, np.pi)
    assert np.abs(t0 - t1).max() <= 1e-13


def test_coefficient_table_periodicity():
    pot = potential_from_coefficients({"s1.cos.sin.cos": 0.7})
    x = 0.3
    a0 = pot(np.array(0.2), np.array(1.1), x)
    a1 = pot(np.array(0.2 + 2 * np.pi), np.array(1.1 - 2 * np.pi), x)
    assert np.abs(a0 - a1).max() <= 1e-12


def test_coefficient_table_rejects_bad_keys():
    with pytest.raises(ValueError):
        potential_from_coefficients({"s4.one.one.one": 1.0})
    with pytest.raises(ValueError):
        potential_from_coefficients({"s1.tan.one.one": 1.0})
    with pytest.raises(ValueError):
        potential_from_coefficients({})


def test_real_coefficients_give_hermitian_potential():
    pot = potential_from_coefficients({"s2.sin.cos.sin": 0.4, "s0.one.one.one": 0.3})
    a = pot(np.array(0.7), np.array(-0.2), 1.9)
    assert np.abs(a - a.conj().T).max() <= 1e-14


# -- interface sections -------------------------------------------------------------


def test_rotated_interface_matches_base_at_zero_strength(demo16):
    base = demo16.calderon_section("left")
    rot = rotated_interface(demo16, strength=0.0)
    assert np.abs(rot.values - base.values).max() <= 1e-12


def test_rotated_interface_keeps_rank(demo16, rot16):
    assert rot16.base_rank == demo16.calderon_section("left").base_rank
    assert rot16.grid == demo16.grid


def test_vortex_interface_twists_only_inside_disc(demo16):
    sec = vortex_interface(demo16, radius=1.1)
    base = demo16.calderon_section("left")
    b1, b2 = demo16.grid.coords()
    outside = (b1 - np.pi) ** 2 + (b2 - np.pi) ** 2 >= 1.1 ** 2
    diff = np.abs(sec.values - base.values).max(axis=(-2, -1))
    assert diff[outside].max() <= 1e-12
    assert diff[~outside].max() > 0.1
    assert sec.base_rank == base.base_rank


def test_boundary_pair_requires_interface_for_half_pairs(demo16):
    with pytest.raises(ValueError):
        demo16.boundary_pair("left")
    with pytest.raises(ValueError):
        demo16.boundary_pair("sideways", demo16.calderon_section("left"))


# -- truncated cylinder --------------------------------------------------------------


def test_cylinder_flat_spectral_projection():
    fam = CylinderFamily(BaseGrid.torus(4, 4), truncation=2, amplitude=0.0)
    sec = fam.aps_section()
    # modes are ordered -N..N; the non-negative half {0, 1, 2} survives
    expected = np.diag([0.0, 0.0, 1.0, 1.0, 1.0])
    assert sec.base_rank == 3
    assert np.abs(sec.values - expected).max() <= 1e-12


def test_cylinder_conjugated_closed_form():
    fam = CylinderFamily(BaseGrid.torus(6, 6), truncation=16, gamma=0.6, seed=3,
                         style="conjugated")
    aps = fam.aps_section()
    closed = fam.conjugated_section(fam.amplitude, 0)
    assert np.abs(aps.values - closed.values).max() <= 1e-10


def test_cylinder_additive_style_survives_exact_zero_mode():
    # the additive boundary operator keeps the k=0 mode on the non-negative
    # side; eigh jitter below zero must not trip the gap guard
    fam = CylinderFamily(BaseGrid.torus(4, 4), truncation=8, gamma=0.8, seed=1,
                         amplitude=0.0, style="additive")
    sec = fam.aps_section()
    assert sec.base_rank == 9


def test_cylinder_rejects_bad_style():
    with pytest.raises(ValueError):
        CylinderFamily(BaseGrid.torus(4, 4), truncation=4, style="imaginary")


def test_section_continuity_bound():
    fam = CylinderFamily(BaseGrid.torus(8, 8), truncation=16, gamma=0.6, seed=0)
    sec = fam.aps_section()
    # recorded smoothness constant keeps edge increments well below the gap
    assert sec.smoothness * fam.grid.spacing[0] <= 0.75


# -- smoothing perturbations ----------------------------------------------------------


def test_smoothing_decay_bound():
    s = smoothing_perturbation(5, 0.7, 12)
    modes = np.arange(-12, 13)
    bound = np.exp(-0.7 * (np.abs(modes)[:, None] + np.abs(modes)[None, :]))
    assert np.all(np.abs(s) <= bound + 1e-12)
    assert np.abs(s - s.conj().T).max() <= 1e-12


def test_smoothing_truncations_nest():
    small = smoothing_perturbation(5, 0.6, 8)
    large = smoothing_perturbation(5, 0.6, 16)
    inner = large[8:25, 8:25]
    np.testing.assert_array_equal(small, inner)


def test_smoothing_trace_norm_truncation_stable():
    n32 = trace_norm(smoothing_perturbation(2, 0.6, 32))
    n64 = trace_norm(smoothing_perturbation(2, 0.6, 64))
    assert abs(n64 - n32) <= 0.01 * n32


def test_smoothing_rejects_nonpositive_decay():
    with pytest.raises(ValueError):
        smoothing_perturbation(0, 0.0, 8)
