import math
import random

import pytest

from hhsim import pairs
from hhsim.pairs import (
    LFParams,
    UVModel,
    binding_condition_full,
    det_diagonal,
    det_full,
    lf_map_main,
    lf_map_physical,
    pair_dispersion_strong_coupling,
    pair_energies,
    pair_energies_diagonal,
    pair_energies_full,
    pair_mass,
    pair_mass_onsite,
    threshold_diagonal,
    threshold_full,
    threshold_physical,
    threshold_physical_poles,
)

from _oracles import fd_second_derivative


def test_uvmodel_validation():
    with pytest.raises(ValueError):
        UVModel(t_prime=-1.0, U=0.0)
    with pytest.raises(ValueError):
        UVModel(t_prime=1.0, U=0.0, variant="nope")
    m = UVModel.diagonal(-4.0, -2.0, 1.0)
    assert m.V == -2.0
    with pytest.raises(AttributeError):
        UVModel.full(-4.0, 0.0, -2.0, 1.0).V


def test_determinants_are_roots_of_pair_energies():
    states = pair_energies_diagonal(-6.0, -3.0, 1.0)
    assert states
    for s in states:
        assert abs(det_diagonal(s.E, -6.0, -3.0, 1.0)) < 1e-8
    states = pair_energies_full(-6.0, -2.0, -1.0, 1.0)
    assert states
    for s in states:
        assert abs(det_full(s.E, -6.0, -2.0, -1.0, 1.0)) < 1e-8


def test_full_reduces_to_pure_onsite():
    # with V1 = V2 = 0 both determinant formulations agree
    a = pair_energies_full(-6.0, 0.0, 0.0, 1.0)
    b = pair_energies_diagonal(-6.0, 0.0, 1.0)
    assert len(a) == len(b) == 1
    assert a[0].E == pytest.approx(b[0].E, abs=1e-9)


def test_onsite_binding_for_any_attraction():
    # a 2D lattice binds a pair for arbitrarily weak on-site attraction
    states = pair_energies_diagonal(-1.0, 0.0, 1.0)
    assert len(states) == 1
    assert states[0].E < -8.0


def test_energies_sorted_and_below_band():
    states = pair_energies_diagonal(-8.0, -8.0, 1.0)
    assert len(states) == 2
    assert states[0].E < states[1].E < -8.0
    assert [s.branch for s in states] == [0, 1]


def test_threshold_diagonal_asymptote_and_pole():
    th = threshold_diagonal(1e6, 1.0)
    assert th.U_cr == pytest.approx(-1.5 * math.pi, abs=1e-3)
    pole = threshold_diagonal(-3.0 * math.pi / 4.0, 1.0)
    assert pole.pole and math.isinf(pole.U_cr)
    assert threshold_diagonal(0.0, 1.0).U_cr == 0.0


def test_threshold_full_matches_long_form_binding_condition():
    # U_cr of the reduced rational form is a zero of the long-form
    # band-edge expression
    rng = random.Random(3)
    for _ in range(8):
        V1 = rng.uniform(0.2, 5.0)
        V2 = rng.uniform(0.2, 5.0)
        th = threshold_full(V1, V2, 1.0)
        assert binding_condition_full(th.U_cr, V1, V2, 1.0) == pytest.approx(0.0, abs=1e-9)


def test_binding_condition_equals_reduced_polynomial():
    from hhsim.greens import GAMMA1, GAMMA2, GAMMA3

    rng = random.Random(11)
    for _ in range(8):
        U = rng.uniform(-10.0, 5.0)
        V1 = rng.uniform(-5.0, 5.0)
        V2 = rng.uniform(-5.0, 5.0)
        tp = rng.uniform(0.5, 2.0)
        reduced = (
            GAMMA1 * U * V1 * V2 / tp**2
            + 0.5 * U * V1 / tp
            + GAMMA2 * U * V2 / tp
            + GAMMA3 * V1 * V2 / tp
            + U + 4.0 * V1 + 4.0 * V2
        )
        assert binding_condition_full(U, V1, V2, tp) == pytest.approx(reduced, rel=1e-12, abs=1e-12)


def test_threshold_consistent_with_root_count():
    V1, V2 = 2.0, 1.0
    th = threshold_full(V1, V2, 1.0)
    above = pair_energies_full(th.U_cr * 1.1, V1, V2, 1.0)
    below = pair_energies_full(th.U_cr * 0.9, V1, V2, 1.0)
    assert len(above) == len(below) + 1


def test_lf_map_main():
    p = LFParams(t_bare=1.0, lam=0.5, hbar_omega_ph=10.0,
                 phi_nn_ratio=0.1, phi_nnn_ratio=-0.2, U_fesh=3.0)
    m = lf_map_main(p)
    assert m.t_prime == pytest.approx(math.exp(-4.0 * 0.5 * 0.9 / 10.0))
    assert m.V1 == pytest.approx(-2.0 * 0.1 * 4.0 * 0.5)
    assert m.V2 == pytest.approx(-2.0 * (-0.2) * 4.0 * 0.5)
    assert m.U == pytest.approx(3.0 - 2.0 * 4.0 * 0.5)


def test_lf_map_physical():
    m = lf_map_physical(LFParams(t_bare=2.0, lam=1.0, U_fesh=0.0))
    assert m.t_prime == pytest.approx(2.0 * math.exp(-4.0 * 0.84))
    assert m.V1 == pytest.approx(-0.32)
    assert m.V2 == pytest.approx(1.792)
    assert m.U == pytest.approx(-16.0)


def test_threshold_physical_pole_location():
    poles = threshold_physical_poles(1.0, renormalized=True)
    assert len(poles) == 1
    assert abs(poles[0] - 1.08) < 0.02


def test_threshold_physical_bare_is_smooth():
    assert threshold_physical_poles(1.0, renormalized=False) == []
    prev = None
    for i in range(201):
        lam = 2.0 * i / 200
        res = threshold_physical(lam, 1.0, renormalized=False)
        assert not res["pole"]
        if prev is not None:
            assert abs(res["U_cr"] - prev) < 0.2
        prev = res["U_cr"]
    with pytest.raises(ValueError):
        threshold_physical(-0.1, 1.0, renormalized=False)


def test_dispersion_branches():
    states = pair_dispersion_strong_coupling(-6.0, -1.0, 0.5, (0.0, 0.0))
    assert len(states) == 3
    assert states[0].E <= states[1].E <= states[2].E
    flat = [s for s in states if s.immobile]
    assert len(flat) == 1 and flat[0].E == -1.0
    # the immobile branch is k-independent
    other = pair_dispersion_strong_coupling(-6.0, -1.0, 0.5, (1.3, -0.4))
    assert [s.E for s in other if s.immobile] == [-1.0]


def test_pair_mass_reduction_to_onsite_form():
    W, lam, tp = 4.0, 0.7, 0.3
    assert pair_mass(-2.0 * W * lam, 0.0, tp) == pytest.approx(
        pair_mass_onsite(W, lam, tp), rel=1e-12
    )


def test_pair_mass_deep_binding_limit():
    # for |U| >> t' the pair becomes heavy: m** ~ |U| / (2 t'^2 a^2)
    m = pair_mass(-1e6, 0.0, 1.0)
    assert m == pytest.approx(5e5, rel=1e-6)


def test_mass_scale_matches_dispersion_curvature_scale():
    # the closed-form 1/m** tracks the k = 0 curvature of the lower
    # branch up to a constant factor (the printed normalization), so the
    # ratio must be U, V, t' independent
    def ratio(U, V, tp):
        curv = fd_second_derivative(
            lambda kx: pair_dispersion_strong_coupling(U, V, tp, (kx, 0.0))[0].E,
            0.0, 1e-2)
        return curv * pair_mass(U, V, tp)

    r0 = ratio(-6.0, -1.0, 0.5)
    for args in [(-9.0, -2.0, 1.0), (-4.0, 0.0, 0.2), (-12.0, -5.0, 0.8)]:
        assert ratio(*args) == pytest.approx(r0, rel=1e-6)
