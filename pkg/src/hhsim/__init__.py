"""Design and analysis toolkit for a painted-lattice Hubbard-Holstein
quantum simulator: trap potentials, phonon modes, Rydberg-mediated
couplings, Hubbard parameters, two-body pairing thresholds, pair masses
and the pairing/BKT phase map, validated against an exact finite-lattice
two-body solver."""

__version__ = "0.1.0"

from . import (  # noqa: F401
    constants,
    elliptic,
    greens,
    hubbard,
    lattice,
    oracle,
    pairs,
    phases,
    rydberg,
    stark,
)
