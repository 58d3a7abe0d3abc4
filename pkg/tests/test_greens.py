import math

import pytest

from hhsim.greens import (
    GAMMA1,
    GAMMA2,
    GAMMA3,
    GreensDomainError,
    GreensIntegrals,
    SUPPORTED_NL,
    greens_C,
    greens_C_threshold,
    greens_M,
    greens_M_all,
)

from _oracles import quad_M


@pytest.mark.parametrize("E", [-8.01, -8.5, -10.0, -20.0, -100.0])
def test_closed_forms_match_quadrature(E):
    ref = quad_M(E, 1.0)
    vals = greens_M_all(E, 1.0)
    for nl in SUPPORTED_NL:
        assert vals[nl] == pytest.approx(ref[nl], rel=1e-9)


def test_t_prime_scaling():
    # M_nl(E; t') = M_nl(E/s; t'/s) / s for any scale s
    base = greens_M_all(-9.0, 1.0)
    scaled = greens_M_all(-4.5, 0.5)
    for nl in SUPPORTED_NL:
        assert scaled[nl] == pytest.approx(2.0 * base[nl], rel=1e-12)


def test_domain_errors():
    with pytest.raises(GreensDomainError):
        greens_M_all(-8.0, 1.0)
    with pytest.raises(GreensDomainError):
        greens_M_all(-7.9, 1.0)
    with pytest.raises(ValueError):
        greens_M_all(-9.0, -1.0)


def test_unsupported_index_pair():
    with pytest.raises(ValueError):
        greens_M(3, 0, -9.0, 1.0)
    with pytest.raises(ValueError):
        greens_C(0, 3, -9.0, 1.0)


def test_C_differences_consistent_with_M():
    E = -9.3
    M = greens_M_all(E, 1.0)
    for nl in SUPPORTED_NL:
        assert greens_C(*nl, E, 1.0) == pytest.approx(M[(0, 0)] - M[nl], abs=1e-14)


def test_C_converges_to_threshold_values():
    # C_nl(E) tends to its tabulated band-edge limit as E -> -8t'; the
    # approach is logarithmically slow, so only a loose check is possible
    tp = 1.0
    for nl in [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]:
        limit = greens_C_threshold(*nl, tp)
        near = greens_C(*nl, -8.0 * tp - 1e-9, tp)
        far = greens_C(*nl, -8.0 * tp - 1e-3, tp)
        assert abs(near - limit) < abs(far - limit)
        assert near == pytest.approx(limit, rel=2e-3)


def test_threshold_table_rational_pi_values():
    tp = 2.0
    assert greens_C_threshold(0, 0, tp) == 0.0
    assert greens_C_threshold(1, 0, tp) == pytest.approx(1.0 / (8.0 * tp), abs=1e-15)
    assert greens_C_threshold(1, 1, tp) == pytest.approx(1.0 / (2.0 * math.pi * tp), abs=1e-15)
    assert greens_C_threshold(2, 0, tp) == pytest.approx((math.pi - 2.0) / (2.0 * math.pi * tp), abs=1e-15)
    assert greens_C_threshold(2, 1, tp) == pytest.approx((8.0 - math.pi) / (8.0 * math.pi * tp), abs=1e-15)
    assert greens_C_threshold(2, 2, tp) == pytest.approx(2.0 / (3.0 * math.pi * tp), abs=1e-15)


def test_threshold_linear_constraints():
    # lattice-symmetry identities among the band-edge constants
    c10 = greens_C_threshold(1, 0, 1.0)
    c11 = greens_C_threshold(1, 1, 1.0)
    c20 = greens_C_threshold(2, 0, 1.0)
    c21 = greens_C_threshold(2, 1, 1.0)
    assert 4.0 * c10 == pytest.approx(c20 + 2.0 * c11, abs=1e-14)
    assert 2.0 * c11 == pytest.approx(c10 + c21, abs=1e-14)


def test_gamma_constants():
    assert GAMMA1 == pytest.approx((32.0 - 9.0 * math.pi) / (12.0 * math.pi), abs=1e-15)
    assert GAMMA2 == pytest.approx((16.0 - 3.0 * math.pi) / (3.0 * math.pi), abs=1e-15)
    assert GAMMA3 == pytest.approx((64.0 - 18.0 * math.pi) / (3.0 * math.pi), abs=1e-15)


def test_bundle_class():
    g = GreensIntegrals(-10.0, 1.0)
    assert g.W_prime == 4.0
    assert g.kappa == pytest.approx(0.8)
    assert g.C[(0, 0)] == 0.0
    assert g.C[(1, 1)] == pytest.approx(g.M[(0, 0)] - g.M[(1, 1)], abs=1e-14)


def test_large_energy_limit():
    # all M_nl with (n, l) != (0, 0) die off faster than M_00 ~ 1/|E|
    M = greens_M_all(-1e5, 1.0)
    assert M[(0, 0)] == pytest.approx(1e-5, rel=1e-3)
    for nl in SUPPORTED_NL[1:]:
        assert abs(M[nl]) < 0.1 * M[(0, 0)]
