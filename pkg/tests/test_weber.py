"""Weber's formula, fingerprints and the SAME/DIFFERENT decision."""
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weberquartic.bitangents import extract_bitangents
from weberquartic.characteristics import aronhold_for_pair, enumerate_characteristics, iter_aronhold_for_pair
from weberquartic.errors import DegenerateDenominator, InvalidCharacteristic, NotFound
from weberquartic.fingerprint import Fingerprint, fingerprint_deviation, reference_characteristic
from weberquartic.siegel import act_tau, automorphy_factor, level2_generators, random_tau
from weberquartic.theta import theta_table, theta4_map
from weberquartic.transform import conditioned_word
from weberquartic.weber import (Verdict, WeberInstance, aronhold_choice_consistency, compare_curves, det3,
                                fingerprint_from_bitangents, weber_instance, weber_lhs, weber_rhs,
                                weber_value)

EVEN3 = enumerate_characteristics(3, "even")
ODD3 = enumerate_characteristics(3, "odd")
seeds = st.integers(0, 2**32 - 1)


@pytest.fixture(scope="module")
def curve():
    tau = random_tau(101)
    table = theta_table(tau, order=1)
    return tau, table, extract_bitangents(tau, table=table)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_det3_examples():
    e = np.eye(3)
    assert det3(e[0], e[1], e[2]) == 1
    u, v, w = random_complex(np.random.default_rng(0), 3, 3)
    assert abs(det3(u, u, w)) < 1e-14
    assert det3(v, u, w) == pytest.approx(-det3(u, v, w), rel=1e-14)


def test_weber_identity_all_pairs_one_curve(curve):
    tau, table, b = curve
    for m1, m2 in itertools.permutations(EVEN3[::4], 2):
        lhs = weber_lhs(m1, m2, table=table)
        assert abs(weber_value(b, m1, m2) - lhs) < 1e-8 * abs(lhs)


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_weber_identity_random(seed):
    rng = np.random.default_rng(seed)
    tau = random_tau(seed)
    i, j = rng.choice(36, size=2, replace=False)
    m1, m2 = EVEN3[i], EVEN3[j]
    lhs = weber_lhs(m1, m2, tau)
    assert abs(weber_value(extract_bitangents(tau), m1, m2) - lhs) < 1e-8 * abs(lhs)


def test_lhs_trivial_and_converged(curve):
    tau, _, b = curve
    m1, m2 = EVEN3[5], EVEN3[9]
    assert weber_lhs(m1, m1, tau) == 1
    assert weber_value(b, m1, m1) == 1
    coarse, fine = weber_lhs(m1, m2, tau, tol=1e-12), weber_lhs(m1, m2, tau, tol=1e-14)
    assert abs(coarse - fine) < 1e-8 * abs(fine)


def test_instance_labels(curve):
    _, _, b = curve
    m1, m2 = EVEN3[2], EVEN3[30]
    inst = weber_instance(b, m1, m2)
    labels = inst.labels()
    assert len(set(labels.values())) == 6
    assert all(n.is_odd for n in labels.values())
    n = inst.aronhold.members
    assert labels[12] == m1 + n[0] + n[1]
    with pytest.raises(InvalidCharacteristic):
        weber_instance(b, m2, m1, aronhold=inst.aronhold)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_rhs_scale_invariance(seed):
    rng = np.random.default_rng(seed)
    beta = {k: random_complex(rng, 3) for k in (1, 2, 3, 12, 13, 23)}
    m1, m2 = EVEN3[1], EVEN3[7]
    s = aronhold_for_pair(m1, m2)
    base = weber_rhs(_inst(m1, m2, s, beta))
    mags = 10.0 ** rng.uniform(-3, 3, size=6)
    scaled = {k: v * mag * np.exp(2j * np.pi * rng.uniform()) for (k, v), mag in zip(beta.items(), mags)}
    assert abs(weber_rhs(_inst(m1, m2, s, scaled)) - base) < 1e-10 * abs(base)
    a = random_complex(rng, 3, 3)
    moved = {k: a @ v for k, v in beta.items()}
    assert abs(weber_rhs(_inst(m1, m2, s, moved)) - base) < 1e-10 * abs(base)


def _inst(m1, m2, s, beta):
    return WeberInstance(m1, m2, s, beta)


def test_rhs_rejects_degenerate_denominator():
    m1, m2 = EVEN3[1], EVEN3[7]
    s = aronhold_for_pair(m1, m2)
    rng = np.random.default_rng(4)
    beta = {k: random_complex(rng, 3) for k in (1, 2, 3, 12, 13, 23)}
    beta[12] = beta[13] + 1e-14 * beta[23]
    with pytest.raises(DegenerateDenominator):
        weber_rhs(_inst(m1, m2, s, beta))


def test_fingerprint_matches_theta4(curve):
    tau, table, b = curve
    f = fingerprint_from_bitangents(b)
    assert f.reference == reference_characteristic(3)
    assert f.quotients[f.reference] == 1
    assert fingerprint_deviation(f, theta4_map(tau, table=table)) < 1e-7


def test_fingerprint_invariances(curve, rng):
    _, _, b = curve
    base = fingerprint_from_bitangents(b)
    scaled = b.map_coords(lambda n, v: v * 10.0 ** rng.uniform(-3, 3) * np.exp(2j * np.pi * rng.uniform()))
    assert fingerprint_deviation(base, fingerprint_from_bitangents(scaled)) < 1e-8
    moved = b.transform(random_complex(rng, 3, 3))
    assert fingerprint_deviation(base, fingerprint_from_bitangents(moved)) < 1e-8


def test_cocycle(curve, rng):
    _, _, b = curve
    for _ in range(20):
        m1, m2, m3 = (EVEN3[i] for i in rng.choice(36, size=3, replace=False))
        q = weber_value(b, m1, m2) * weber_value(b, m2, m3) / weber_value(b, m1, m3)
        assert abs(q - 1) < 1e-7


def test_aronhold_choice_consistency(curve):
    _, _, b = curve
    m1, m2 = EVEN3[0], EVEN3[20]
    assert aronhold_choice_consistency(b, m1, m2, 1) == 0
    spread = aronhold_choice_consistency(b, m1, m2, 6)
    assert spread < 1e-7
    rescaled = b.map_coords(lambda n, v: (1 + len(str(n))) * 1j * v)
    assert aronhold_choice_consistency(rescaled, m1, m2, 6) == pytest.approx(spread, abs=1e-12)
    available = sum(1 for _ in iter_aronhold_for_pair(m1, m2))
    with pytest.raises(NotFound):
        aronhold_choice_consistency(b, m1, m2, available + 1)


def test_compare_same_under_level_two(curve):
    tau, _, b = curve
    rng = np.random.default_rng(9)
    gamma = conditioned_word(rng, level2_generators(3), tau, max_len=4)
    image = extract_bitangents(act_tau(gamma, tau))
    cfac = automorphy_factor(gamma, tau)
    mapped = b.map_coords(lambda n, v: (cfac @ v) * (0.5 + rng.uniform()))
    report = compare_curves(mapped, image)
    assert report.verdict is Verdict.SAME
    assert report.margin > 1


def test_compare_different_curves(curve):
    _, _, b = curve
    report = compare_curves(b, extract_bitangents(random_tau(202)))
    assert report.verdict is Verdict.DIFFERENT
    assert report.max_deviation > 1e-3


def test_fingerprint_validation():
    ref = reference_characteristic(3)
    with pytest.raises((ValueError, KeyError)):
        Fingerprint(ref, {ref: 1.0})
