"""Lattice Green's-function integrals for the 2D square lattice.

The two-body bound-state problem at zero total pair momentum reduces to
determinant equations in the integrals

    M_nl(E) = int dq/(2pi)^2  cos(n qx) cos(l qy) / (|E| - 4t'(cos qx + cos qy))

taken over the Brillouin zone, with E < -8t' strictly below the
two-particle band bottom.  The six combinations needed here,
(n,l) in {00, 10, 11, 20, 21, 22}, have closed forms in the complete
elliptic integrals K(kappa), E(kappa) with modulus kappa = 2W'/|E|,
W' = 4t'.

The closed forms for M21 and M22 suffer catastrophic cancellation at
large |E| (the K and E terms cancel to O(kappa^2)), so they are
evaluated in extended precision via mpmath and rounded to float on
return.
"""

import math

import mpmath

from .elliptic import elliptic_KE

SUPPORTED_NL = ((0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2))

# Constants appearing in the binding condition of the both-diagonals
# UV model.
GAMMA1 = (32.0 - 9.0 * math.pi) / (12.0 * math.pi)
GAMMA2 = (16.0 - 3.0 * math.pi) / (3.0 * math.pi)
GAMMA3 = (64.0 - 18.0 * math.pi) / (3.0 * math.pi)

_MP_DPS = 40


class GreensDomainError(ValueError):
    """Raised for energies at or above the two-particle band bottom."""


def _check_domain(E, t_prime):
    if t_prime <= 0:
        raise ValueError(f"t_prime must be positive, got {t_prime}")
    if E >= -8.0 * t_prime:
        raise GreensDomainError(
            f"E = {E} must lie strictly below the band bottom -8t' = {-8.0 * t_prime}"
        )


def _mp_KE(kappa):
    return elliptic_KE(kappa)


def _M_table(absE, Wp):
    """All six M_nl at extended precision; absE, Wp are mpf."""
    kappa = 2 * Wp / absE
    K, Eint = _mp_KE(kappa)
    pi = mpmath.pi
    M = {}
    M[(0, 0)] = 2 / (pi * absE) * K
    M[(1, 0)] = K / (pi * Wp) - 1 / (2 * Wp)
    M[(1, 1)] = absE / (2 * pi * Wp**2) * ((2 - kappa**2) * K - 2 * Eint)
    M[(2, 0)] = 2 / (pi * absE) * K + absE / Wp**2 * (2 * Eint / pi - 1)
    M[(2, 1)] = (
        (absE**2 / (pi * Wp**3) - 3 / (pi * Wp)) * K
        - absE**2 / (pi * Wp**3) * Eint
        + 1 / (2 * Wp)
    )
    M[(2, 2)] = (
        (2 / (pi * absE) - 8 * absE / (3 * pi * Wp**2) + 2 * absE**3 / (3 * pi * Wp**4)) * K
        + (4 * absE / (3 * pi * Wp**2) - 2 * absE**3 / (3 * pi * Wp**4)) * Eint
    )
    return M


def greens_M_all(E, t_prime):
    """Dict of all six M_nl values (floats) at energy E < -8t'."""
    _check_domain(E, t_prime)
    with mpmath.workdps(_MP_DPS):
        M = _M_table(mpmath.mpf(abs(E)), 4 * mpmath.mpf(t_prime))
        return {nl: float(v) for nl, v in M.items()}


def greens_M(n, l, E, t_prime):
    """Closed-form M_nl(E) for (n, l) in the supported table."""
    if (n, l) not in SUPPORTED_NL:
        raise ValueError(f"unsupported index pair ({n}, {l}); supported: {SUPPORTED_NL}")
    return greens_M_all(E, t_prime)[(n, l)]


def greens_C(n, l, E, t_prime):
    """Difference C_nl = M_00 - M_nl at energy E < -8t'."""
    if (n, l) not in SUPPORTED_NL:
        raise ValueError(f"unsupported index pair ({n}, {l}); supported: {SUPPORTED_NL}")
    _check_domain(E, t_prime)
    with mpmath.workdps(_MP_DPS):
        M = _M_table(mpmath.mpf(abs(E)), 4 * mpmath.mpf(t_prime))
        return float(M[(0, 0)] - M[(n, l)])


def greens_C_threshold(n, l, t_prime):
    """Analytic limit of C_nl as E approaches the band bottom -8t'.

    M_00 diverges logarithmically there but the differences converge to
    simple rational-pi multiples of 1/t'.
    """
    table = {
        (1, 0): 1.0 / 8.0,
        (1, 1): 1.0 / (2.0 * math.pi),
        (2, 0): (math.pi - 2.0) / (2.0 * math.pi),
        (2, 1): (8.0 - math.pi) / (8.0 * math.pi),
        (2, 2): 2.0 / (3.0 * math.pi),
    }
    if (n, l) == (0, 0):
        return 0.0
    if (n, l) not in table:
        raise ValueError(f"no threshold value tabulated for ({n}, {l})")
    return table[(n, l)] / t_prime


class GreensIntegrals:
    """Bundle of M_nl and C_nl tables at a single energy.

    Attributes
    ----------
    E : float
        Pair energy, E < -8t'.
    t_prime, W_prime : float
        Hopping and half-bandwidth W' = 4t'.
    kappa : float
        Elliptic modulus 2W'/|E|.
    M, C : dict
        Tables keyed by (n, l).
    """

    def __init__(self, E, t_prime):
        _check_domain(E, t_prime)
        self.E = float(E)
        self.t_prime = float(t_prime)
        self.W_prime = 4.0 * self.t_prime
        self.kappa = 2.0 * self.W_prime / abs(self.E)
        self.M = greens_M_all(E, t_prime)
        self.C = {nl: self.M[(0, 0)] - self.M[nl] for nl in SUPPORTED_NL}
