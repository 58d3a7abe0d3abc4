"""Species-dependent AC Stark shifts and zero-crossing wavelengths.

Between the D1 and D2 lines of an alkali atom the scalar light shift
changes sign: the laser is red detuned from one line and blue detuned
from the other, and the induced dipole contributions cancel at a
specific wavelength.  Tuning one laser to the zero of species A while
it still shifts species B (and vice versa) yields two mutually
exclusive lattices in the same plane.

Detunings are always computed in rad/s from vacuum wavelengths; the
returned trap energy is in nK, linear in the intensity prefactor.
"""

import math
from dataclasses import dataclass

from .constants import wavelength_nm_to_angular_frequency


@dataclass(frozen=True)
class AtomLineData:
    """D1/D2 line constants of one alkali species."""

    species_name: str
    I_sat: float        # W/m^2
    lambda_D1: float    # nm
    lambda_D2: float    # nm
    Gamma_1: float      # rad/s, D1 linewidth
    Gamma_2: float      # rad/s, D2 linewidth

    def __post_init__(self):
        if not self.lambda_D2 < self.lambda_D1:
            raise ValueError("D2 line must lie at shorter wavelength than D1")
        if min(self.I_sat, self.Gamma_1, self.Gamma_2) <= 0:
            raise ValueError("linewidths and saturation intensity must be positive")


# Built-in datasets.  The K-40 D2 linewidth is 2pi x 6.03 MHz; source
# tabulations sometimes mislabel it with the D1 symbol.
K40 = AtomLineData(
    species_name="K-40",
    I_sat=17.5,
    lambda_D1=770.1,
    lambda_D2=766.7,
    Gamma_1=2.0 * math.pi * 5.95e6,
    Gamma_2=2.0 * math.pi * 6.03e6,
)

RB87 = AtomLineData(
    species_name="Rb-87",
    I_sat=16.7,
    lambda_D1=795.0,
    lambda_D2=780.2,
    Gamma_1=2.0 * math.pi * 5.74e6,
    Gamma_2=2.0 * math.pi * 6.06e6,
)

SPECIES = {"K-40": K40, "Rb-87": RB87}


@dataclass(frozen=True)
class StarkConfig:
    """Laser/state parameters entering the shift formula."""

    g_F: float = 0.0
    m_F: float = 0.0
    ellipticity: float = 0.0
    intensity_prefactor: float = 1.0   # nK, the scale hbar*I_Las/(24 I_Sat)

    def __post_init__(self):
        if abs(self.ellipticity) > 1.0:
            raise ValueError("|ellipticity| must not exceed 1")
        if self.intensity_prefactor < 0.0:
            raise ValueError("intensity prefactor must be nonnegative")


class ResonanceError(ValueError):
    """Laser exactly on a transition line."""


def ac_stark_shift(atom, laser_wavelength, cfg):
    """Trap potential (nK) of `atom` in light at `laser_wavelength` (nm).

    V = p * [ (G1^2/d1 + 2 G2^2/d2)
              - g_F m_F sqrt(1 - eps^2) (G1^2/d1 - G2^2/d2) ]
    with detunings d_i = omega_las - omega_i in rad/s, oriented so that
    red detuning from both lines gives a negative (trapping) energy.
    The bracket has units of rad/s; the prefactor p (nK) absorbs the
    remaining scale, so the result is the bracket expressed in units of
    its value per (rad/s), times p.
    """
    if laser_wavelength <= 0:
        raise ValueError("wavelength must be positive")
    w_las = wavelength_nm_to_angular_frequency(laser_wavelength)
    d1 = w_las - wavelength_nm_to_angular_frequency(atom.lambda_D1)
    d2 = w_las - wavelength_nm_to_angular_frequency(atom.lambda_D2)
    if d1 == 0.0:
        raise ResonanceError(f"laser resonant with {atom.species_name} D1 line")
    if d2 == 0.0:
        raise ResonanceError(f"laser resonant with {atom.species_name} D2 line")
    scalar = atom.Gamma_1**2 / d1 + 2.0 * atom.Gamma_2**2 / d2
    vector = atom.Gamma_1**2 / d1 - atom.Gamma_2**2 / d2
    bracket = scalar - cfg.g_F * cfg.m_F * math.sqrt(1.0 - cfg.ellipticity**2) * vector
    return cfg.intensity_prefactor * bracket


class NoZeroCrossingError(ValueError):
    """The shift does not change sign between the D2 and D1 lines."""


def find_stark_zero(atom, cfg, tol_nm=1e-4):
    """Zero-crossing wavelength (nm) between the D2 and D1 lines.

    Deterministic bisection to 1e-4 nm; the bracket excludes a small
    margin around each resonance pole.
    """
    margin = 1e-3 * (atom.lambda_D1 - atom.lambda_D2)
    lo = atom.lambda_D2 + margin
    hi = atom.lambda_D1 - margin
    f_lo = ac_stark_shift(atom, lo, cfg)
    f_hi = ac_stark_shift(atom, hi, cfg)
    if f_lo * f_hi >= 0.0:
        raise NoZeroCrossingError(
            f"no zero crossing of the Stark shift between the "
            f"{atom.species_name} D2 and D1 lines for this configuration"
        )
    while hi - lo > tol_nm:
        mid = 0.5 * (lo + hi)
        f_mid = ac_stark_shift(atom, mid, cfg)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def mutual_trap_check(atom_a, atom_b, cfg):
    """Each species' shift at the other's zero crossing.

    For a valid two-color scheme, the shift of the non-zeroed species
    must be nonzero at each wavelength (opposite trapping roles).
    """
    lam_a = find_stark_zero(atom_a, cfg)
    lam_b = find_stark_zero(atom_b, cfg)
    return {
        "lambda_zero_A": lam_a,
        "V_B_at_zero_A": ac_stark_shift(atom_b, lam_a, cfg),
        "lambda_zero_B": lam_b,
        "V_A_at_zero_B": ac_stark_shift(atom_a, lam_b, cfg),
    }
