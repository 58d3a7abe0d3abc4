"""Pairing / BKT phase map over lattice depth and coupling strength.

Strong-coupling estimates: local pairs form below
T_pair = (2 W lambda - 8 t')/k_B, and dilute pairs of effective mass
m** quasi-condense below the BKT estimate
T_BKT = 4 pi hbar^2 n_B / (a^2 k_B 2 m** lnln(4/n_B)).
Each grid point gets one of four labels from the ordering of the probe
temperature T against the two scales.
"""

import math
from dataclasses import dataclass

from .constants import HBAR, HZ_TO_NK, H_PLANCK, K_B, M_K40, M_RB87, nk_to_hz
from .hubbard import hopping_t, recoil_energy
from .lattice import two_spot_frequency

LABELS = ("Normal", "PreformedPairs", "BKTCondensedPairs", "BKTRegime")


def t_pair(W, lam, t_prime):
    """Pairing temperature (nK) from W, t' in Hz: max(0, (2Wlam - 8t')/k_B)."""
    return max(0.0, (2.0 * W * lam - 8.0 * t_prime) * HZ_TO_NK)


def t_bkt(n_B, m_star_star, a):
    """BKT estimate (nK) for pair density n_B, mass m** (kg), spacing a (um).

    T = 4 pi hbar^2 n_B / (a^2 k_B 2 m** lnln(4/n_B)), valid in the
    dilute limit where lnln(4/n_B) > 0.
    """
    if not (0.0 < n_B < 1.0) or m_star_star <= 0.0:
        raise ValueError("need 0 < n_B < 1 and positive mass")
    inner = math.log(4.0 / n_B)
    if inner <= 1.0:
        raise ValueError("lnln argument <= 1; dilute-limit estimate invalid")
    a_m = a * 1e-6
    T = 4.0 * math.pi * HBAR**2 * n_B / (a_m**2 * K_B * 2.0 * m_star_star * math.log(inner))
    return T * 1e9


def pair_mass_kg(W, lam, t_prime, a):
    """On-site-pair effective mass in kg; W, t' in Hz, a in um."""
    W_J = W * H_PLANCK
    tp_J = t_prime * H_PLANCK
    a_m = a * 1e-6
    return HBAR**2 * math.sqrt((W_J * lam) ** 2 + 2.0 * tp_J**2) / (tp_J**2 * a_m**2)


def classify(T, T_pair_, T_bkt_):
    """Strict-inequality phase label; ties fall through to Normal.

    Normal: T above both scales.  PreformedPairs: pairs exist but no
    condensation (T_bkt < T < T_pair).  BKTCondensedPairs: condensed
    preformed pairs (T < T_bkt <= T_pair).  BKTRegime: condensation at
    T_bkt with pairing only setting in there (T < T_bkt, T_pair < T_bkt).
    """
    if T < T_bkt_:
        return "BKTRegime" if T_pair_ < T_bkt_ else "BKTCondensedPairs"
    if T_bkt_ < T < T_pair_:
        return "PreformedPairs"
    return "Normal"


@dataclass
class PhasePoint:
    V0: float          # nK
    lam: float
    T: float           # nK
    t_Hz: float
    t_prime_Hz: float
    T_pair: float      # nK
    T_bkt: float       # nK
    label: str


@dataclass
class PhaseGrid:
    V0_axis: list
    lam_axis: list
    points: list       # row-major [iV0][ilam]
    contour: list      # list of ((x1, y1), (x2, y2)) segments in (V0, lam)


@dataclass
class PhaseFamily:
    """Physics inputs shared by all points of a phase map.

    The phonon frequency is pinned to hbar*omega = omega_ratio * t by
    default because the painted waist it derives from is a free design
    choice; ``phonon_frequency_ratio`` recomputes the ratio from an
    explicit waist for comparison.
    """

    a: float = 1.73                 # um
    M: float = M_K40
    n_B: float = 0.01
    phi_nn_ratio: float = 0.0
    omega_ratio: float = 18.52      # hbar*omega_ph / t
    D: float = 0.2823               # um, phonon spot half-separation
    V0_ph_scale: float = 2.5        # V0_ph = scale * V0


def phonon_frequency_ratio(family, V0, w_ph):
    """hbar*omega_ph / t recomputed from an explicit phonon waist (um)."""
    E_rec = recoil_energy(family.a, family.M)
    t = hopping_t(nk_to_hz(V0), E_rec)
    omega = two_spot_frequency(family.V0_ph_scale * V0, w_ph, family.D, M_RB87)
    return omega / (2.0 * math.pi) / t


def phase_point(V0, lam, T, family):
    """Single labeled point of the phase map."""
    E_rec = recoil_energy(family.a, family.M)
    t = hopping_t(nk_to_hz(V0), E_rec)
    W = 4.0 * t
    hbar_omega = family.omega_ratio * t
    t_prime = t * math.exp(-W * lam * (1.0 - family.phi_nn_ratio) / hbar_omega)
    Tp = t_pair(W, lam, t_prime)
    m2 = pair_mass_kg(W, lam, t_prime, family.a)
    Tb = t_bkt(family.n_B, m2, family.a)
    return PhasePoint(V0=V0, lam=lam, T=T, t_Hz=t, t_prime_Hz=t_prime,
                      T_pair=Tp, T_bkt=Tb, label=classify(T, Tp, Tb))


def _interp(x1, x2, f1, f2):
    return x1 + (x2 - x1) * f1 / (f1 - f2)


def delta_t_contour(V0_axis, lam_axis, points):
    """Marching-squares segments of Delta T = T_bkt - T_pair = 0.

    Each emitted segment separates grid corners of opposite Delta T
    sign; coordinates are linearly interpolated crossings.
    """
    nx, ny = len(V0_axis), len(lam_axis)
    f = [[points[i][j].T_bkt - points[i][j].T_pair for j in range(ny)] for i in range(nx)]
    segments = []
    for i in range(nx - 1):
        for j in range(ny - 1):
            corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
            vals = [f[x][y] for x, y in corners]
            crossings = []
            for k in range(4):
                (x1, y1), (x2, y2) = corners[k], corners[(k + 1) % 4]
                v1, v2 = vals[k], vals[(k + 1) % 4]
                if v1 == 0.0 and v2 == 0.0:
                    continue
                if (v1 < 0.0 <= v2) or (v2 < 0.0 <= v1):
                    px = _interp(V0_axis[x1], V0_axis[x2], v1, v2)
                    py = _interp(lam_axis[y1], lam_axis[y2], v1, v2)
                    crossings.append((px, py))
            if len(crossings) >= 2:
                segments.append((crossings[0], crossings[1]))
    return segments


def phase_grid(V0_axis, lam_axis, T, family=None):
    """Fully populated PhaseGrid with the Delta T = 0 contour."""
    if family is None:
        family = PhaseFamily()
    points = [[phase_point(V0, lam, T, family) for lam in lam_axis] for V0 in V0_axis]
    contour = delta_t_contour(list(V0_axis), list(lam_axis), points)
    return PhaseGrid(V0_axis=list(V0_axis), lam_axis=list(lam_axis),
                     points=points, contour=contour)
