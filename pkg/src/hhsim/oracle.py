"""Exact two-body solver on a finite periodic square lattice.

Independent validation of the determinant-equation pair energies: at
zero total momentum the two-particle problem reduces to a single
particle in the relative coordinate with doubled hopping and a diagonal
potential on the interaction shells.  Only the inversion-symmetric
(spatially even, spin-singlet) sector is kept, matching the symmetric
two-body wavefunction of the determinant formulation.

A brute-force builder of the full two-particle Hamiltonian on tiny
lattices validates the reduction itself.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh

from .pairs import UVModel


@dataclass
class FiniteLattice:
    L: int

    def __post_init__(self):
        if self.L < 4 or self.L % 2 != 0:
            raise ValueError("L must be an even integer >= 4")


def _site_potential_map(model, L):
    """Dict relative displacement -> diagonal potential."""
    pot = {(0, 0): model.U}
    if model.variant == "diagonal":
        V = model.V
        for d in ((1, 1), (-1, -1)):
            pot[tuple(x % L for x in d)] = V
    else:
        for d in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            pot[tuple(x % L for x in d)] = model.V1
        for d in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            pot[tuple(x % L for x in d)] = model.V2
    return pot


def relative_hamiltonian(model, L):
    """Sparse H on the L x L relative coordinate at zero total momentum.

    Kinetic term: hops of amplitude -2t' to the four neighbors (each
    particle's hopping adds at K = 0); potential: U at r = 0 plus the
    V shells of the model variant.
    """
    lat = FiniteLattice(L)
    L = lat.L
    n = L * L
    tp = model.t_prime

    def idx(x, y):
        return (x % L) * L + (y % L)

    rows, cols, vals = [], [], []
    pot = _site_potential_map(model, L)
    for x in range(L):
        for y in range(L):
            i = idx(x, y)
            d = pot.get((x, y), 0.0)
            if d:
                rows.append(i); cols.append(i); vals.append(d)
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                rows.append(i); cols.append(idx(x + dx, y + dy)); vals.append(-2.0 * tp)
    H = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
    return H


def inversion_projector(L):
    """Sparse basis matrix of the r -> -r symmetric sector (columns orthonormal)."""
    seen = {}
    cols = []
    for x in range(L):
        for y in range(L):
            i = x * L + y
            xm, ym = (-x) % L, (-y) % L
            j = xm * L + ym
            key = min(i, j)
            if key in seen:
                continue
            seen[key] = True
            if i == j:
                cols.append(([i], [1.0]))
            else:
                s = 1.0 / math.sqrt(2.0)
                cols.append(([i, j], [s, s]))
    n = L * L
    rows, cidx, vals = [], [], []
    for k, (ii, vv) in enumerate(cols):
        for i, v in zip(ii, vv):
            rows.append(i); cidx.append(k); vals.append(v)
    return sp.coo_matrix((vals, (rows, cidx)), shape=(n, len(cols))).tocsr()


@dataclass
class TwoBodySpectrum:
    L: int
    model: UVModel
    energies: list
    bound_count: int = 0


def ground_energies(model, L, n_states=4, bound_margin=5.0):
    """Lowest eigenvalues in the symmetric sector, sorted ascending.

    A state counts as bound if E < -8t' - bound_margin/L^2 * t' (the
    margin absorbs the finite-size shift of the band edge).
    """
    H = relative_hamiltonian(model, L)
    P = inversion_projector(L)
    Hs = (P.T @ H @ P).tocsr()
    k = min(n_states, Hs.shape[0] - 2)
    v0 = np.ones(Hs.shape[0]) / math.sqrt(Hs.shape[0])
    vals = eigsh(Hs, k=k, which="SA", v0=v0, tol=1e-12,
                 return_eigenvectors=False)
    energies = sorted(float(v) for v in vals)
    edge = -8.0 * model.t_prime - bound_margin / L**2 * model.t_prime
    bound = sum(1 for e in energies if e < edge)
    return TwoBodySpectrum(L=L, model=model, energies=energies, bound_count=bound)


def brute_force_two_body(model, L, n_states=4):
    """Full two-particle spectrum on L x L (spatially symmetric sector).

    Dimension grows as L^4; intended for L <= 6 to validate the
    relative-coordinate reduction.  Returns the lowest eigenvalues over
    all total momenta (the ground state sits at K = 0 for attractive
    couplings).
    """
    if L > 8:
        raise ValueError("brute force is for tiny lattices only")
    n = L * L
    tp = model.t_prime
    pot = _site_potential_map(model, L)

    def sidx(x, y):
        return (x % L) * L + (y % L)

    dim = n * n
    rows, cols, vals = [], [], []
    for x1 in range(L):
        for y1 in range(L):
            for x2 in range(L):
                for y2 in range(L):
                    i = sidx(x1, y1) * n + sidx(x2, y2)
                    d = pot.get(((x1 - x2) % L, (y1 - y2) % L), 0.0)
                    if d:
                        rows.append(i); cols.append(i); vals.append(d)
                    for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                        j = sidx(x1 + dx, y1 + dy) * n + sidx(x2, y2)
                        rows.append(i); cols.append(j); vals.append(-tp)
                        j = sidx(x1, y1) * n + sidx(x2 + dx, y2 + dy)
                        rows.append(i); cols.append(j); vals.append(-tp)
    H = sp.coo_matrix((vals, (rows, cols)), shape=(dim, dim)).tocsr()
    # spatially symmetric sector under particle exchange
    seen = set()
    cols_ = []
    for p in range(n):
        for q in range(n):
            i = p * n + q
            j = q * n + p
            key = min(i, j)
            if key in seen:
                continue
            seen.add(key)
            if i == j:
                cols_.append(([i], [1.0]))
            else:
                s = 1.0 / math.sqrt(2.0)
                cols_.append(([i, j], [s, s]))
    rws, cdx, vls = [], [], []
    for k, (ii, vv) in enumerate(cols_):
        for i, v in zip(ii, vv):
            rws.append(i); cdx.append(k); vls.append(v)
    P = sp.coo_matrix((vls, (rws, cdx)), shape=(dim, len(cols_))).tocsr()
    Hs = (P.T @ H @ P).tocsr()
    v0 = np.ones(Hs.shape[0]) / math.sqrt(Hs.shape[0])
    vals_ = eigsh(Hs, k=n_states, which="SA", v0=v0, tol=1e-12,
                  return_eigenvectors=False)
    return sorted(float(v) for v in vals_)


@dataclass
class Extrapolation:
    E_inf: float
    error: float
    reliable: bool = True
    note: str = ""


def extrapolate_energy(Ls, energies):
    """Fit E(L) = E_inf + c/L^2 by least squares.

    Suitable for gapped bound states; band-edge states converge only
    logarithmically and are flagged unreliable when the sequence is not
    monotone.
    """
    if len(Ls) < 3:
        raise ValueError("need at least three sizes")
    x = np.array([1.0 / L**2 for L in Ls])
    y = np.array(energies, dtype=float)
    if np.allclose(y, y[0]):
        return Extrapolation(E_inf=float(y[0]), error=0.0)
    A = np.vstack([np.ones_like(x), x]).T
    coef, res, _, _ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    err = float(np.sqrt(np.mean(resid**2)))
    diffs = np.diff(y)
    monotone = np.all(diffs >= -1e-13) or np.all(diffs <= 1e-13)
    return Extrapolation(E_inf=float(coef[0]), error=err, reliable=bool(monotone),
                         note="" if monotone else "non-monotone sequence; fit unreliable")
