import math

import pytest

from hhsim.constants import HBAR, HZ_TO_NK, K_B
from hhsim.phases import (
    LABELS,
    PhaseFamily,
    classify,
    delta_t_contour,
    pair_mass_kg,
    phase_grid,
    phase_point,
    phonon_frequency_ratio,
    t_bkt,
    t_pair,
)


def test_t_pair_clamped_at_zero():
    assert t_pair(100.0, 0.1, 50.0) == 0.0
    val = t_pair(100.0, 3.0, 50.0)
    assert val == pytest.approx((600.0 - 400.0) * HZ_TO_NK)


def test_t_bkt_formula_and_domain():
    n_B, m, a = 0.01, 1e-25, 1.73
    expect = 4 * math.pi * HBAR**2 * n_B / (
        (a * 1e-6) ** 2 * K_B * 2 * m * math.log(math.log(4 / n_B))
    ) * 1e9
    assert t_bkt(n_B, m, a) == pytest.approx(expect, rel=1e-12)
    with pytest.raises(ValueError):
        t_bkt(0.0, m, a)
    with pytest.raises(ValueError):
        t_bkt(3.9, m, a)  # lnln argument <= 1


def test_classify_all_labels_reachable():
    assert classify(10.0, 5.0, 1.0) == "Normal"
    assert classify(3.0, 5.0, 1.0) == "PreformedPairs"
    assert classify(0.5, 5.0, 1.0) == "BKTCondensedPairs"
    assert classify(0.5, 0.7, 1.0) == "BKTRegime"
    # ties fall through to Normal
    assert classify(5.0, 5.0, 5.0) == "Normal"
    assert set(LABELS) == {"Normal", "PreformedPairs", "BKTCondensedPairs", "BKTRegime"}


def test_pair_mass_increases_with_coupling():
    m1 = pair_mass_kg(500.0, 1.0, 100.0, 1.73)
    m2 = pair_mass_kg(500.0, 3.0, 100.0, 1.73)
    assert m2 > m1 > 0.0


def test_phase_point_fields():
    p = phase_point(400.0, 2.0, 20.0, PhaseFamily())
    assert p.t_Hz > p.t_prime_Hz > 0.0
    assert p.label in LABELS
    assert p.T_pair >= 0.0 and p.T_bkt > 0.0


def test_contour_on_synthetic_grid():
    class P:
        def __init__(self, Tb, Tp):
            self.T_bkt, self.T_pair = Tb, Tp

    xs, ys = [0.0, 1.0], [0.0, 1.0]
    # Delta T changes sign along x
    pts = [[P(1.0, 0.0), P(1.0, 0.0)], [P(0.0, 1.0), P(0.0, 1.0)]]
    segs = delta_t_contour(xs, ys, pts)
    assert len(segs) == 1
    (x1, _), (x2, _) = segs[0]
    assert x1 == pytest.approx(0.5) and x2 == pytest.approx(0.5)
    # uniform sign: no contour
    flat = [[P(1.0, 0.0)] * 2] * 2
    assert delta_t_contour(xs, ys, flat) == []


def test_phase_grid_structure():
    grid = phase_grid([300.0, 400.0, 500.0], [0.5, 1.5, 2.5, 3.5], 20.0)
    assert len(grid.points) == 3 and len(grid.points[0]) == 4
    labels = {p.label for row in grid.points for p in row}
    assert labels <= set(LABELS)


def test_phonon_frequency_ratio_positive():
    fam = PhaseFamily()
    r = phonon_frequency_ratio(fam, 400.0, 0.6)
    assert r > 0.0
