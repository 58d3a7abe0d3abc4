import math

import mpmath
import pytest

from hhsim.elliptic import EllipticDomainError, elliptic_E, elliptic_K, elliptic_KE

from _oracles import series_elliptic_E, series_elliptic_K


def test_known_values_at_zero_modulus():
    K, E = elliptic_KE(0.0)
    assert K == pytest.approx(math.pi / 2, rel=1e-15)
    assert E == pytest.approx(math.pi / 2, rel=1e-15)


def test_E_at_unit_modulus_is_one():
    assert elliptic_E(1.0) == pytest.approx(1.0, rel=1e-15)


def test_K_diverges_at_unit_modulus():
    with pytest.raises(EllipticDomainError):
        elliptic_K(1.0)


@pytest.mark.parametrize("kappa", [0.1, 0.3, 0.5, 0.7, 0.9, 0.99])
def test_agm_matches_power_series(kappa):
    assert elliptic_K(kappa) == pytest.approx(series_elliptic_K(kappa), rel=1e-12)
    assert elliptic_E(kappa) == pytest.approx(series_elliptic_E(kappa), rel=1e-12)


def test_near_singular_modulus_against_mpmath():
    # the series oracle converges too slowly here; mpmath (parameter
    # convention m = kappa^2) is the cross-check
    kappa = 1.0 - 1e-10
    m = kappa * kappa
    assert elliptic_K(kappa) == pytest.approx(float(mpmath.ellipk(m)), rel=1e-12)
    assert elliptic_E(kappa) == pytest.approx(float(mpmath.ellipe(m)), rel=1e-12)


def test_domain_errors():
    for bad in (-0.1, 1.1):
        with pytest.raises(EllipticDomainError):
            elliptic_KE(bad)


def test_extended_precision_path():
    with mpmath.workdps(40):
        K, E = elliptic_KE(mpmath.mpf("0.875"))
        ref_K = mpmath.ellipk(mpmath.mpf("0.875") ** 2)
        ref_E = mpmath.ellipe(mpmath.mpf("0.875") ** 2)
        assert abs(K - ref_K) < mpmath.mpf(10) ** -38 * ref_K
        assert abs(E - ref_E) < mpmath.mpf(10) ** -38 * ref_E


def test_K_monotone_increasing_E_monotone_decreasing():
    kappas = [i / 50 for i in range(50)]
    Ks = [elliptic_K(k) for k in kappas]
    Es = [elliptic_E(k) for k in kappas]
    assert all(b > a for a, b in zip(Ks, Ks[1:]))
    assert all(b < a for a, b in zip(Es, Es[1:]))
