import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fourpi.errors import DomainError, ThresholdError
from fourpi.magnetic_region import (
    FieldProfile,
    NeutronKinematics,
    semiclassical_phase,
    square_field_coefficients,
)
from fourpi.schrodinger_oracle import (
    SegmentedProfile,
    discretize_profile,
    oracle_rotation_angle,
    transfer_matrix_transmission,
)


def test_segmented_profile_validation():
    with pytest.raises(DomainError):
        SegmentedProfile([0.0], [])
    with pytest.raises(DomainError):
        SegmentedProfile([0.0, 1.0, 1.0], [0.0, 0.0])
    with pytest.raises(DomainError):
        SegmentedProfile([0.0, 1.0, 2.0], [0.0])
    seg = SegmentedProfile([0.0, 1.0, 3.0], [0.5, -0.5])
    assert seg.n_segments == 2
    np.testing.assert_array_equal(seg.widths, [1.0, 2.0])


def test_reversed_mirrors_geometry():
    seg = SegmentedProfile([0.0, 1.0, 3.0], [0.5, -0.5]).reversed()
    np.testing.assert_array_equal(seg.breakpoints, [-3.0, -1.0, 0.0])
    np.testing.assert_array_equal(seg.potential_values, [-0.5, 0.5])


def test_square_profile_single_segment():
    p = FieldProfile(omega=0.8, half_width=1.5)
    up = discretize_profile(p, +1, 1)
    np.testing.assert_array_equal(up.breakpoints, [-1.5, 1.5])
    np.testing.assert_array_equal(up.potential_values, [0.4])
    down = discretize_profile(p, -1, 7)
    assert down.n_segments == 7
    assert np.all(down.potential_values == -0.4)


def test_square_profile_result_independent_of_refinement():
    p = FieldProfile(omega=0.8, half_width=1.5)
    t1, r1 = transfer_matrix_transmission(discretize_profile(p, +1, 1), 3.0)
    t7, r7 = transfer_matrix_transmission(discretize_profile(p, +1, 7), 3.0)
    assert abs(t1 - t7) < 1e-13
    assert abs(r1 - r7) < 1e-13


def test_discretize_argument_checks():
    p = FieldProfile(omega=1.0, half_width=1.0)
    with pytest.raises(DomainError):
        discretize_profile(p, +1, 0)
    with pytest.raises(DomainError):
        discretize_profile(p, 0, 4)


@pytest.mark.parametrize("shape", ["smoothstep", "cosine"])
@pytest.mark.parametrize("n", [10, 57, 400])
def test_discretization_sup_norm_bound(shape, n):
    p = FieldProfile(omega=2.0, half_width=1.0, ramp_length=3.0, ramp_shape=shape)
    seg = discretize_profile(p, +1, n)
    x = np.linspace(*p.support, 200_001)
    idx = np.clip(np.searchsorted(seg.breakpoints, x, side="right") - 1, 0, n - 1)
    piecewise = seg.potential_values[idx] / (0.5 * p.omega)
    h = seg.widths[0]
    assert np.max(np.abs(piecewise - p.w(x))) <= p.max_slope * h / 2 + 1e-12


def test_zero_potential_is_transparent():
    seg = SegmentedProfile(np.linspace(-2, 3, 9), np.zeros(8))
    t, r = transfer_matrix_transmission(seg, 1.7)
    assert abs(t - 1) < 1e-14
    assert abs(r) < 1e-14


def test_pinned_square_barrier_point():
    # k = 10, m omega / hbar = 1, a = 1 in natural units
    kin = NeutronKinematics.from_wavenumber(10.0)
    p = FieldProfile(omega=1.0, half_width=1.0)
    for sign in (1, -1):
        t, r = transfer_matrix_transmission(discretize_profile(p, sign, 1), kin.energy)
        t_ref, r_ref = square_field_coefficients(kin, p, sign)
        assert abs(t.real - t_ref.real) < 1e-10 and abs(t.imag - t_ref.imag) < 1e-10
        assert abs(r.real - r_ref.real) < 1e-10 and abs(r.imag - r_ref.imag) < 1e-10


@pytest.mark.parametrize("ratio", [1e-4, 0.3, 0.8, 2.5, 6.0])
def test_square_barrier_matches_closed_form(ratio):
    kin = NeutronKinematics(energy=3.0)
    p = FieldProfile(omega=ratio * kin.energy, half_width=0.9)
    for sign in (1, -1):
        t, r = transfer_matrix_transmission(discretize_profile(p, sign, 1), kin.energy)
        t_ref, r_ref = square_field_coefficients(kin, p, sign)
        assert abs(t - t_ref) < 1e-10
        assert abs(r - r_ref) < 1e-10


def test_energy_array_matches_scalar_calls():
    seg = SegmentedProfile([-1.0, 0.2, 1.0], [0.3, -0.1])
    energies = np.array([0.5, 1.0, 7.0])
    t, r = transfer_matrix_transmission(seg, energies)
    for e, ti, ri in zip(energies, t, r):
        ts, rs = transfer_matrix_transmission(seg, float(e))
        assert ti == pytest.approx(ts, abs=1e-15)
        assert ri == pytest.approx(rs, abs=1e-15)


segments = st.lists(st.tuples(st.floats(0.05, 2.0), st.floats(-3.0, 3.0)), min_size=1, max_size=12)


def _build(pieces):
    widths, values = zip(*pieces)
    return SegmentedProfile(np.concatenate([[0.0], np.cumsum(widths)]), np.array(values))


@settings(max_examples=200, deadline=None)
@given(pieces=segments, margin=st.floats(0.01, 20.0))
def test_flux_conservation_above_barrier(pieces, margin):
    seg = _build(pieces)
    t, r = transfer_matrix_transmission(seg, max(float(np.max(seg.potential_values)), 0.0) + margin)
    assert abs(abs(t) ** 2 + abs(r) ** 2 - 1) < 1e-10


@settings(max_examples=200, deadline=None)
@given(pieces=segments, energy=st.floats(0.05, 10.0))
def test_reciprocity(pieces, energy):
    seg = _build(pieces)
    if np.any(np.abs(energy - seg.potential_values) < 1e-6):
        return
    t_left, _ = transfer_matrix_transmission(seg, energy)
    t_right, _ = transfer_matrix_transmission(seg.reversed(), energy)
    assert abs(t_left - t_right) <= 1e-10 * max(1.0, abs(t_left))


def test_deep_tunnelling_stays_finite():
    # e^{-kappa L} ~ 1e-86: far past naive cosh overflow, still representable
    seg = SegmentedProfile([0.0, 20.0], [50.0])
    t, r = transfer_matrix_transmission(seg, 1.0)
    assert np.isfinite(t) and np.isfinite(r)
    kappa = math.sqrt(2 * 49.0)
    assert math.log(abs(t)) == pytest.approx(-kappa * 20.0, rel=1e-2)
    assert abs(r) == pytest.approx(1.0, abs=1e-12)


def test_error_paths():
    seg = SegmentedProfile([0.0, 1.0], [0.5])
    with pytest.raises(DomainError):
        transfer_matrix_transmission(seg, 0.0)
    with pytest.raises(DomainError):
        transfer_matrix_transmission(seg, -1.0)
    with pytest.raises(ThresholdError):
        transfer_matrix_transmission(seg, 0.5)


def test_phase_converges_with_refinement():
    kin = NeutronKinematics.from_wavenumber(5.0)
    p = FieldProfile(omega=4.0, half_width=1.0, ramp_length=2.0)
    ns = [25, 50, 100, 200]
    ref, _ = transfer_matrix_transmission(discretize_profile(p, +1, 6400), kin.energy)
    errs = []
    for n in ns:
        t, _ = transfer_matrix_transmission(discretize_profile(p, +1, n), kin.energy)
        errs.append(abs(cmath.phase(t / ref)))
    order = -np.polyfit(np.log(ns), np.log(errs), 1)[0]
    assert order >= 1.0


def test_oracle_rotation_angle_matches_semiclassical():
    kin = NeutronKinematics.from_wavenumber(10.0)
    p = FieldProfile(omega=0.5 * kin.energy, half_width=1.0, ramp_length=2.0)
    oracle = oracle_rotation_angle(p, kin.energy, n_segments=2000, n_steps=64)
    assert oracle == pytest.approx(semiclassical_phase(kin, p), rel=1e-3)
