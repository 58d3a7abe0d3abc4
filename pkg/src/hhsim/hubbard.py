"""Fermion lattice parameters: recoil energy, hopping, Feshbach U.

Deep-lattice closed forms for a square lattice of Gaussian spots with
spacing a.  Energies are reported in Hz (E = h f); 1 nK of thermal
energy corresponds to about 20.84 Hz.
"""

import math
import warnings
from dataclasses import dataclass

from .constants import H_PLANCK, HBAR, M_K40, nk_to_hz


def recoil_energy(a, M, k_lat=None):
    """Recoil energy in Hz for lattice constant a (um) and mass M (kg).

    E_rec = hbar^2 k^2 / 2M with k defaulting to pi/a (the lattice
    wavevector matching the a-based definition); pass k_lat (1/um) to
    override, e.g. 2*pi/a.
    """
    if a <= 0 or M <= 0:
        raise ValueError("a and M must be positive")
    k = (math.pi / a if k_lat is None else k_lat) * 1e6   # 1/m
    return HBAR**2 * k**2 / (2.0 * M) / H_PLANCK


def hopping_t(V0, E_rec):
    """Hopping (same unit as inputs): (4/sqrt(pi)) E^(1/4) V^(3/4) e^(-2 sqrt(V/E)).

    A deep-lattice approximation; a warning is emitted for V0 < E_rec
    where it is unreliable.
    """
    if V0 <= 0 or E_rec <= 0:
        raise ValueError("V0 and E_rec must be positive")
    if V0 < E_rec:
        warnings.warn("hopping_t: V0 < E_rec is outside the deep-lattice regime",
                      stacklevel=2)
    return (4.0 / math.sqrt(math.pi)) * E_rec**0.25 * V0**0.75 * math.exp(
        -2.0 * math.sqrt(V0 / E_rec)
    )


@dataclass
class FeshbachSpec:
    """Feshbach-resonance parametrization of the scattering length.

    a_s0 in Bohr radii; field parameters in the same (arbitrary but
    mutually consistent) field unit.  The printed resonance form mixes
    a linear and a quadratic field dependence; it is implemented
    verbatim, so Delta_B carries units of 1/field.
    """

    a_s0: float
    Delta_B: float
    B_res: float
    gamma_res: float
    B: float

    def __post_init__(self):
        if self.gamma_res <= 0:
            raise ValueError("resonance width must be positive")


def scattering_length(spec):
    """Scattering length (Bohr radii): a_s0 (1 - dB (B-B0)) / ((B-B0)^2 + g^2/4)."""
    x = spec.B - spec.B_res
    return spec.a_s0 * (1.0 - spec.Delta_B * x) / (x * x + spec.gamma_res**2 / 4.0)


def hubbard_U(k_lat, a_s, E_rec, V0):
    """On-site interaction: sqrt(8) k a_s E_rec^(1/4) V0^(3/4).

    k_lat in 1/um, a_s in um (dimensionless product k*a_s); the result
    carries the unit of E_rec^(1/4) V0^(3/4).  Negative a_s gives an
    attractive U.
    """
    if E_rec <= 0 or V0 <= 0:
        raise ValueError("E_rec and V0 must be positive")
    return math.sqrt(8.0) * k_lat * a_s * E_rec**0.25 * V0**0.75


def parameter_sweep(V0_range_nk, a, M=M_K40, k_lat=None, a_s_um=None,
                    w_lambda_of_v0=None):
    """Rows of {V0 (nK), t, U_fesh, W_lambda} (Hz) over a V0 sweep.

    The recoil scale inside the band-structure estimates uses the full
    lattice wavevector 2 pi/a; the interaction integral uses k_lat,
    defaulting to pi/a (1/um).  a_s_um is the scattering length in um;
    w_lambda_of_v0, if given, maps V0 (nK) to the phonon-mediated scale
    W*lambda in Hz.
    """
    if k_lat is None:
        k_lat = math.pi / a
    E_rec = recoil_energy(a, M, k_lat=2.0 * math.pi / a)
    rows = []
    for V0_nk in V0_range_nk:
        V0_hz = nk_to_hz(V0_nk)
        t = hopping_t(V0_hz, E_rec)
        U = hubbard_U(k_lat, a_s_um, E_rec, V0_hz) if a_s_um is not None else None
        wl = w_lambda_of_v0(V0_nk) if w_lambda_of_v0 is not None else None
        rows.append({"V0_nK": V0_nk, "t_Hz": t, "U_Hz": U, "W_lambda_Hz": wl})
    return rows
