"""Dressed-Rydberg interactions and the phonon-mediated coupling map.

The dressed pair potential is a soft-core power law
V_R(r) = V_tilde / (r_c^eta + r^eta).  Its gradient at the phonon
equilibrium positions defines the fermion-phonon coupling constants
f_ij,nu, whose lattice sums give the effective fermion-fermion
interaction map Phi and the dimensionless coupling lambda.

Units: C6 and V_tilde in MHz um^eta, distances in um, couplings f in
MHz/um, Phi in MHz^2/um^2.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import H_PLANCK

# Endpoints of the usable principal-quantum-number window for the
# S+S -> S+P channel shared by the two species.
_C6_N_LO, _C6_LO = 27, 26.1     # MHz um^6
_C6_N_HI, _C6_HI = 32, 153.0    # MHz um^6


def c6_interpolated(n_ryd):
    """Geometric interpolation of C6 (MHz um^6) between the tabulated endpoints.

    Only the endpoints are established; intermediate n values are an
    interpolating approximation, and values outside [27, 32] raise.
    """
    if not (_C6_N_LO <= n_ryd <= _C6_N_HI):
        raise ValueError(f"n_ryd must lie in [{_C6_N_LO}, {_C6_N_HI}]")
    frac = (n_ryd - _C6_N_LO) / (_C6_N_HI - _C6_N_LO)
    return _C6_LO * (_C6_HI / _C6_LO) ** frac


@dataclass
class RydbergSpec:
    """Dressing parameters of the Rydberg-mediated interaction."""

    C6: float                 # MHz um^eta
    Delta_2p: float           # MHz
    Omega_2p: float           # MHz
    eta: int = 6
    alpha_bar: float = field(init=False)
    r_c: float = field(init=False)
    V_tilde: float = field(init=False)

    def __post_init__(self):
        if self.eta not in (3, 6):
            raise ValueError("eta must be 3 or 6")
        if self.Delta_2p <= 0 or self.Omega_2p < 0 or self.C6 <= 0:
            raise ValueError("C6 and Delta_2p must be positive, Omega_2p nonnegative")
        self.alpha_bar = self.Omega_2p / (2.0 * self.Delta_2p)
        self.r_c = (self.C6 / (2.0 * self.Delta_2p)) ** (1.0 / self.eta)
        self.V_tilde = self.alpha_bar**4 * self.C6
        if self.alpha_bar > 0.2:
            raise ValueError(
                f"alpha_bar = {self.alpha_bar:.3f} exceeds 0.2; the perturbative "
                "dressed potential is unreliable there"
            )

    @classmethod
    def from_rc(cls, C6, r_c, alpha_bar, eta=6):
        """Build from a target soft-core radius instead of the detuning."""
        Delta = C6 / (2.0 * r_c**eta)
        return cls(C6=C6, Delta_2p=Delta, Omega_2p=2.0 * Delta * alpha_bar, eta=eta)


def rydberg_potential(r, spec):
    """Dressed pair potential (MHz) at separation r (um)."""
    if np.any(np.asarray(r) < 0):
        raise ValueError("separation must be nonnegative")
    return spec.V_tilde / (spec.r_c**spec.eta + np.asarray(r) ** spec.eta)


def coupling_f(fermion_site, phonon_site, polarization, spec):
    """Fermion-phonon coupling constant f (MHz/um).

    f = V_tilde * eta * (zeta . rhat) |r|^(eta-1) / (|r|^eta + r_c^eta)^2
    with r = fermion - phonon; odd under r -> -r and zero for
    polarization perpendicular to the separation.
    """
    r_vec = np.asarray(fermion_site, dtype=float) - np.asarray(phonon_site, dtype=float)
    r = np.linalg.norm(r_vec)
    if r == 0.0:
        raise ValueError("fermion and phonon sites coincide; unit vector undefined")
    zeta = np.asarray(polarization, dtype=float)
    eta = spec.eta
    return spec.V_tilde * eta * float(zeta @ r_vec) / r * r ** (eta - 1) / (r**eta + spec.r_c**eta) ** 2


@dataclass
class EffectiveInteractionMap:
    """Normalized phonon-mediated interaction map Phi_xy / Phi_00.

    ``values`` maps integer lattice displacements (n, l) to the signed
    ratio; ``phi00`` keeps the absolute on-site value (MHz^2/um^2).
    Positive entries mediate attraction between fermions in the polaron
    action, negative ones repulsion.
    """

    displacements: list
    values: dict
    phi00: float

    def ratio(self, n, l):
        return self.values[(n, l)]


def effective_interaction(pattern, spec, a, displacements=None):
    """Lattice sums Phi_ii' = sum_{j,nu} f_ij,nu f_i'j,nu, normalized.

    Fermion sites sit at integer multiples of a; phonon sites and their
    polarization vectors come from the pattern.  With eta = 6 and the
    default pattern extent of 5a, the truncation error of the site sum
    is below 1e-6 of Phi_00 (the tail falls off as the 14th power of
    distance).
    """
    if displacements is None:
        displacements = [(0, 0), (1, 0), (0, 1), (1, 1), (1, -1), (2, 0), (0, 2),
                         (2, 1), (2, 2)]
    origin = np.zeros(2)
    phi = {}
    for (n, l) in displacements:
        other = np.array([n * a, l * a])
        total = 0.0
        for site in pattern.sites:
            for zeta in site.polarizations:
                total += (coupling_f(origin, site.center, zeta, spec)
                          * coupling_f(other, site.center, zeta, spec))
        phi[(n, l)] = total
    phi00 = phi[(0, 0)]
    values = {d: phi[d] / phi00 for d in phi}
    return EffectiveInteractionMap(displacements=list(displacements), values=values, phi00=phi00)


def nnn_ratio_estimate(b, a, eta=6, r_c=None):
    """Analytic estimate of the NNN-to-onsite interaction ratio.

    |Phi_NNN|/|Phi_00| = b^(eta+1) / (a*sqrt(2) - b)^(eta+1) for a
    phonon site offset b along the diagonal.  Valid for r_c << b <
    a/sqrt(2); outside that window the result carries valid=False.
    """
    ratio = b ** (eta + 1) / (a * math.sqrt(2.0) - b) ** (eta + 1)
    valid = b < a / math.sqrt(2.0)
    if r_c is not None and not (r_c < 0.5 * b):
        valid = False
    return {"ratio": ratio, "valid": valid}


def lambda_dimensionless(phi00, W, M, omega_ph):
    """Dimensionless fermion-phonon coupling lambda = Phi_00/(2 W M w^2).

    phi00 in MHz^2/um^2, W (bandwidth 4t) in Hz, M in kg, omega_ph in
    rad/s.  The conversion treats MHz values as h-frequencies.
    """
    if W <= 0 or M <= 0 or omega_ph <= 0:
        raise ValueError("W, M and omega_ph must be positive")
    phi00_si = phi00 * (1e6 * H_PLANCK) ** 2 / (1e-6) ** 2   # J^2/m^2
    W_si = W * H_PLANCK
    return phi00_si / (2.0 * W_si * M * omega_ph**2)
