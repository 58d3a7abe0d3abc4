"""Physical constants and unit conversions used throughout the toolkit.

Internal unit conventions:

* trap/lattice energies: nK (temperature equivalent, E = k_B T)
* Hubbard-model energies: Hz (E = h f)
* lengths: micrometres for lattice geometry, SI metres inside conversions
* angular frequencies: rad/s
"""

import math

C_LIGHT = 299_792_458.0            # m/s
H_PLANCK = 6.626_070_15e-34        # J s
HBAR = H_PLANCK / (2.0 * math.pi)  # J s
K_B = 1.380_649e-23                # J/K
AMU = 1.660_539_066_60e-27         # kg
A_BOHR = 5.291_772_109_03e-11      # m

# Atomic masses.
M_K40 = 39.963_998_48 * AMU        # kg
M_RB87 = 86.909_180_527 * AMU      # kg

# 1 nK of thermal energy expressed in Hz: k_B * 1e-9 / h ~ 20.84 Hz/nK,
# i.e. 1 Hz ~ 0.048 nK.
NK_TO_HZ = K_B * 1e-9 / H_PLANCK
HZ_TO_NK = 1.0 / NK_TO_HZ


def nk_to_joule(energy_nk):
    return energy_nk * 1e-9 * K_B


def joule_to_nk(energy_j):
    return energy_j / (1e-9 * K_B)


def nk_to_hz(energy_nk):
    return energy_nk * NK_TO_HZ


def hz_to_nk(energy_hz):
    return energy_hz * HZ_TO_NK


def hz_to_joule(energy_hz):
    return energy_hz * H_PLANCK


def joule_to_hz(energy_j):
    return energy_j / H_PLANCK


def wavelength_nm_to_angular_frequency(wavelength_nm):
    """Vacuum wavelength in nm to angular frequency in rad/s."""
    return 2.0 * math.pi * C_LIGHT / (wavelength_nm * 1e-9)
