"""Complete elliptic integrals K and E via the arithmetic-geometric mean.

Convention: the argument is the *modulus* kappa, not the parameter
m = kappa**2.  This matters because common libraries disagree
(scipy.special.ellipk takes m, mpmath.ellipk takes m as well).

The AGM iteration converges quadratically; with double input the result
is accurate to better than 1e-12 relative.  The same routine runs on
``mpmath.mpf`` inputs for extended-precision work.
"""

import math

import mpmath


class EllipticDomainError(ValueError):
    """Raised when K(kappa) is requested at or beyond the kappa = 1 pole."""


def _pi_like(x):
    return mpmath.pi if isinstance(x, mpmath.mpf) else math.pi


def _eps_like(x):
    # a few ulps: c stagnates at the rounding level once a and b have
    # converged, so a sub-ulp threshold would never be reached
    return 4 * mpmath.mp.eps if isinstance(x, mpmath.mpf) else 1e-15


def elliptic_KE(kappa):
    """Return (K(kappa), E(kappa)) for modulus 0 <= kappa <= 1.

    K diverges at kappa = 1; requesting it raises
    :class:`EllipticDomainError`.  E(1) = 1 is returned exactly.
    """
    if kappa < 0 or kappa > 1:
        raise EllipticDomainError(f"modulus must lie in [0, 1], got {kappa}")
    pi = _pi_like(kappa)
    if kappa == 1:
        raise EllipticDomainError("K(kappa) diverges at kappa = 1")
    one = kappa * 0 + 1
    a, b, c = one, (one - kappa * kappa) ** 0.5, kappa
    # E via the classical c_n sum: E = K * (1 - sum 2^(n-1) c_n^2).
    csum = c * c / 2
    power = one
    eps = _eps_like(kappa)
    for _ in range(200):
        a, b, c = (a + b) / 2, (a * b) ** 0.5, (a - b) / 2
        power = power * 2
        csum = csum + power * c * c / 2
        if abs(c) <= eps * abs(a):
            break
    K = pi / (2 * a)
    return K, K * (1 - csum)


def elliptic_K(kappa):
    """Complete elliptic integral of the first kind, modulus convention."""
    return elliptic_KE(kappa)[0]


def elliptic_E(kappa):
    """Complete elliptic integral of the second kind, modulus convention."""
    if kappa == 1:
        return kappa * 0 + 1
    return elliptic_KE(kappa)[1]
