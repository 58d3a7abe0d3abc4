"""Painted optical-lattice potentials and phonon-site normal modes.

Potentials are sums of Gaussian spots painted inside a single optical
pancake.  A phonon site is a group of N_S closely spaced spots whose
summed potential is broad and deep; the trapped atom's in-plane normal
modes follow from the Hessian (dynamical matrix) of the site potential
at its minimum.

Units: energies in nK, lengths in micrometres, masses in kg, angular
frequencies in rad/s.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import K_B, M_K40, M_RB87  # noqa: F401  (masses re-exported)

# nK/um^2 -> J/m^2
_CURV_SI = K_B * 1e-9 / 1e-12


@dataclass
class LatticeSpec:
    """Global geometry of the painted lattice."""

    a: float                 # lattice constant, um
    V0: float                # fermion spot depth, nK
    w_f: float               # fermion spot waist, um
    V0_pan: float = 0.0      # pancake depth, nK
    w_pan: float = 1.0       # pancake 1/e^2 half-width, um

    def __post_init__(self):
        if min(self.a, self.V0, self.w_f, self.w_pan) <= 0:
            raise ValueError("lengths and depths must be positive")
        if self.V0_pan < 0:
            raise ValueError("pancake depth must be nonnegative")


@dataclass
class PhononSite:
    """One phonon site: center, spot basis and soft-mode axes."""

    center: np.ndarray            # um, in-plane
    displacements: np.ndarray     # (N_S, 2) spot offsets from center, um
    polarizations: np.ndarray     # (n_modes, 2) unit vectors used in couplings


@dataclass
class SpotPattern:
    """Phonon spot arrangement tiled over the fermion lattice.

    ``site_for(m, n, a)`` yields the phonon sites associated with
    fermion plaquette / site indices; concrete geometries come from the
    named constructors below.
    """

    pattern_id: str
    V0_ph: float                  # phonon spot depth, nK
    w_ph: float                   # phonon spot waist, um
    D: float                      # spot half-separation along soft axis, um
    b: float = 0.0                # offset parameter, um
    sites: list = field(default_factory=list)

    def __post_init__(self):
        if self.V0_ph <= 0 or self.w_ph <= 0:
            raise ValueError("phonon depth and waist must be positive")
        if not (0.0 <= self.D <= self.w_ph / 2.0):
            raise ValueError("spot half-separation must satisfy 0 <= D <= w_ph/2 "
                             "(larger D forms a double well)")


def two_spot_site(center, axis, D, polarizations=None):
    """Standalone two-spot phonon site with its soft axis as polarization."""
    if polarizations is None:
        polarizations = np.asarray(axis, dtype=float) / np.linalg.norm(axis)
    return _two_spot_site(center, axis, D, polarizations)


def _two_spot_site(center, axis, D, polarizations):
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    disp = np.array([axis * D, -axis * D])
    return PhononSite(center=np.asarray(center, dtype=float),
                      displacements=disp,
                      polarizations=np.atleast_2d(polarizations).astype(float))


_DIAG1 = np.array([1.0, 1.0]) / math.sqrt(2.0)
_DIAG2 = np.array([1.0, -1.0]) / math.sqrt(2.0)
_XHAT = np.array([1.0, 0.0])
_YHAT = np.array([0.0, 1.0])


def holstein_reference(a, V0_ph, w_ph, D, b=None, extent=5):
    """Phonon site adjacent to each fermion site (near-local coupling).

    Each fermion site (i, j)a carries a two-spot phonon site displaced
    by b along x (default b = 0.1a), soft axis x.
    """
    if b is None:
        b = 0.1 * a
    sites = []
    n = extent
    for i in range(-n, n + 1):
        for j in range(-n, n + 1):
            center = np.array([i * a + b, j * a])
            sites.append(_two_spot_site(center, _XHAT, D, _XHAT))
    return SpotPattern("HolsteinReference", V0_ph, w_ph, D, b=b, sites=sites)


def offset_parallel(a, V0_ph, w_ph, D, b, extent=5):
    """One phonon site per fermion site, offset b along the (1,1) diagonal.

    Soft axis along the diagonal; b = 0.5 a' (a' = a*sqrt(2)) puts the
    sites at the plaquette centers (the centered parallel arrangement).
    """
    a_prime = a * math.sqrt(2.0)
    if not (0.0 < b < a_prime):
        raise ValueError("offset must satisfy 0 < b < a*sqrt(2)")
    sites = []
    n = extent
    for i in range(-n, n + 1):
        for j in range(-n, n + 1):
            center = np.array([i * a, j * a]) + b * _DIAG1
            sites.append(_two_spot_site(center, _DIAG1, D, _DIAG1))
    return SpotPattern("OffsetParallel", V0_ph, w_ph, D, b=b, sites=sites)


def offset_parallel_rotated(a, V0_ph, w_ph, D, b, extent=5):
    """offset_parallel rotated by 90 degrees (soft axis along (1,-1))."""
    a_prime = a * math.sqrt(2.0)
    if not (0.0 < b < a_prime):
        raise ValueError("offset must satisfy 0 < b < a*sqrt(2)")
    sites = []
    n = extent
    for i in range(-n, n + 1):
        for j in range(-n, n + 1):
            center = np.array([i * a, j * a]) + b * _DIAG2
            sites.append(_two_spot_site(center, _DIAG2, D, _DIAG2))
    return SpotPattern("OffsetParallelRotated", V0_ph, w_ph, D, b=b, sites=sites)


def crossed(a, V0_ph, w_ph, D, extent=5):
    """Four-spot crossed sites at the plaquette centers, two equal modes."""
    b = 0.5 * a * math.sqrt(2.0)
    sites = []
    n = extent
    for i in range(-n, n + 1):
        for j in range(-n, n + 1):
            center = np.array([(i + 0.5) * a, (j + 0.5) * a])
            disp = np.array([_DIAG1 * D, -_DIAG1 * D, _DIAG2 * D, -_DIAG2 * D])
            sites.append(PhononSite(center=center, displacements=disp,
                                    polarizations=np.array([_DIAG1, _DIAG2])))
    return SpotPattern("Crossed", V0_ph, w_ph, D, b=b, sites=sites)


def bipartite_parallel(a, V0_ph, w_ph, D, extent=5):
    """Two-spot sites at plaquette centers, soft axis x / y on a checkerboard."""
    b = 0.5 * a * math.sqrt(2.0)
    sites = []
    n = extent
    for i in range(-n, n + 1):
        for j in range(-n, n + 1):
            center = np.array([(i + 0.5) * a, (j + 0.5) * a])
            axis = _XHAT if (i + j) % 2 == 0 else _YHAT
            sites.append(_two_spot_site(center, axis, D, axis))
    return SpotPattern("BipartiteParallel", V0_ph, w_ph, D, b=b, sites=sites)


PATTERN_CONSTRUCTORS = {
    "holstein": holstein_reference,
    "offset-parallel": offset_parallel,
    "offset-parallel-rotated": offset_parallel_rotated,
    "crossed": crossed,
    "bipartite-parallel": bipartite_parallel,
}


def spot_potential(r, V0, w):
    """Single Gaussian spot, depth V0 (nK), waist w (um), at distance r."""
    return -V0 * np.exp(-2.0 * np.asarray(r) ** 2 / w**2)


def site_potential(pattern, site, xy):
    """In-plane potential of one phonon site at point xy (um), nK.

    Per-spot normalized sum: the peak depth of an N_S-spot site matches a
    single spot, so painting a broad site costs no extra laser power.
    """
    xy = np.asarray(xy, dtype=float)
    n_s = len(site.displacements)
    total = 0.0
    for d in site.displacements:
        r = np.linalg.norm(xy - site.center - d)
        total += spot_potential(r, pattern.V0_ph, pattern.w_ph)
    return total / n_s


def painted_potential(spec, pattern, position):
    """Full painted potential (nK) at 3D position (x, y, z) in um.

    Sum of all phonon-site spot wells plus the pancake term.  Fermion
    spots are handled by the same machinery with a one-spot basis.
    """
    x, y, z = position
    xy = np.array([x, y])
    total = -spec.V0_pan * math.exp(-2.0 * z**2 / spec.w_pan**2)
    for site in pattern.sites:
        total += site_potential(pattern, site, xy)
    return total


def dynamical_matrix(pattern, site, h_rel=1e-3, grad_tol=1e-6):
    """Hessian (nK/um^2) of the site potential at the site center.

    Central finite differences with step h = h_rel * w_ph and one
    Richardson extrapolation step; the center must be a stationary
    point (gradient below grad_tol * V0_ph / w_ph).
    """
    h = h_rel * pattern.w_ph
    c = site.center

    def V(dx, dy):
        return site_potential(pattern, site, c + np.array([dx, dy]))

    gx = (V(h, 0) - V(-h, 0)) / (2 * h)
    gy = (V(0, h) - V(0, -h)) / (2 * h)
    if math.hypot(gx, gy) > grad_tol * pattern.V0_ph / pattern.w_ph:
        raise ValueError("site center is not a stationary point of the potential")

    def hessian(step):
        v0 = V(0, 0)
        dxx = (V(step, 0) - 2 * v0 + V(-step, 0)) / step**2
        dyy = (V(0, step) - 2 * v0 + V(0, -step)) / step**2
        dxy = (V(step, step) - V(step, -step) - V(-step, step) + V(-step, -step)) / (4 * step**2)
        return np.array([[dxx, dxy], [dxy, dyy]])

    H1 = hessian(h)
    H2 = hessian(h / 2.0)
    H = (4.0 * H2 - H1) / 3.0
    return 0.5 * (H + H.T)


@dataclass
class PhononMode:
    frequency: float      # rad/s
    polarization: np.ndarray

    def __post_init__(self):
        n = np.linalg.norm(self.polarization)
        if abs(n - 1.0) > 1e-9:
            raise ValueError("polarization must be a unit vector")


def phonon_modes(matrix, M, tol=1e-9):
    """Normal modes from a symmetric 2x2 dynamical matrix (nK/um^2).

    omega = sqrt(eigenvalue/M) after converting curvature to SI; tiny
    negative eigenvalues within -tol * max|eig| are clamped to zero,
    anything more negative means an unstable site.  Modes are returned
    in descending frequency.
    """
    matrix = np.asarray(matrix, dtype=float)
    if not np.allclose(matrix, matrix.T):
        raise ValueError("dynamical matrix must be symmetric")
    evals, evecs = np.linalg.eigh(matrix)
    scale = max(abs(evals).max(), 1.0)
    modes = []
    for i in range(len(evals)):
        ev = evals[i]
        if ev < -tol * scale:
            raise ValueError(f"unstable site: negative curvature {ev}")
        ev = max(ev, 0.0)
        omega = math.sqrt(ev * _CURV_SI / M)
        vec = evecs[:, i]
        # deterministic sign: first nonzero component positive
        k = np.argmax(np.abs(vec) > 1e-12)
        if vec[k] < 0:
            vec = -vec
        modes.append(PhononMode(frequency=omega, polarization=vec))
    modes.sort(key=lambda m: -m.frequency)
    return modes


def two_spot_frequency(V0_ph, w_ph, D, M):
    """Soft-mode frequency (rad/s) of a two-spot site.

    omega = 2 exp(-D^2/w^2) sqrt(V0 (w^2 - 4D^2) / (M w^4)) with
    V0_ph in nK and lengths in um; vanishes at D = w/2 where the
    curvature at the midpoint flattens out.
    """
    if not (0.0 <= D <= w_ph / 2.0):
        raise ValueError("D must satisfy 0 <= D <= w_ph/2")
    V0_J = V0_ph * 1e-9 * K_B
    w_m = w_ph * 1e-6
    D_m = D * 1e-6
    return 2.0 * math.exp(-D_m**2 / w_m**2) * math.sqrt(
        V0_J * (w_m**2 - 4.0 * D_m**2) / (M * w_m**4)
    )
