"""Bitangent extraction, projective comparison and the Gauss-map identity."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weberquartic.bitangents import (BitangentSet, bitangent_count, extract_bitangents, gauss_consistency,
                                     projective_distance, two_torsion_point)
from weberquartic.characteristics import Characteristic, enumerate_characteristics
from weberquartic.errors import HyperellipticOrDegenerate, InvalidCharacteristic, ZeroGradient
from weberquartic.siegel import act_tau, automorphy_factor, level2_generators, random_tau
from weberquartic.theta import grad_theta0, theta
from weberquartic.transform import conditioned_word

from conftest import C

ODD3 = enumerate_characteristics(3, "odd")

cvec = st.tuples(*[st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False)] * 3)
nonzero = st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False)


def test_bitangent_count():
    assert bitangent_count(4) == 28
    assert bitangent_count(3) == 0


def test_projective_distance_examples():
    v = np.array([1 + 2j, -0.5, 3j])
    assert projective_distance(v, 7j * v) < 1e-15
    assert projective_distance([1, 0, 0], [0, 1, 0]) == 1.0
    with pytest.raises(ZeroGradient):
        projective_distance([0, 0, 0], v)


@settings(max_examples=100)
@given(cvec, cvec, nonzero)
def test_projective_distance_properties(p, q, s):
    p, q = np.array(p), np.array(q)
    if np.linalg.norm(p) < 1e-6 or np.linalg.norm(q) < 1e-6:
        return
    d = projective_distance(p, q)
    assert 0.0 <= d <= 1.0
    assert d == pytest.approx(projective_distance(q, p), abs=1e-12)
    assert projective_distance(s * p, q) == pytest.approx(d, abs=1e-9)


def test_two_torsion_examples():
    tau = 1j * np.eye(3)
    assert np.allclose(two_torsion_point(C("100|100"), tau), [0.5 + 0.5j, 0, 0])
    t = random_tau(2)
    for n in ODD3:
        if not any(n.bottom):
            continue
        point = two_torsion_point(n, t)
        assert np.allclose(point, np.array(n.top) / 2 + t.tau @ np.array(n.bottom) / 2)
    with pytest.raises(InvalidCharacteristic):
        two_torsion_point(C("000|000"), t)


def test_two_torsion_linear_in_tau():
    t1, t2 = random_tau(5).tau, random_tau(6).tau
    n = C("101|110")
    mid = two_torsion_point(n, (t1 + t2) / 2)
    assert np.allclose(mid, (two_torsion_point(n, t1) + two_torsion_point(n, t2)) / 2, atol=1e-15)


def test_extract_labels_and_distinctness(taus):
    for t in taus:
        b = extract_bitangents(t)
        assert len(b) == 28
        assert [line.char for line in b] == ODD3
        for i, p in enumerate(ODD3):
            for q in ODD3[i + 1:]:
                assert projective_distance(b[p], b[q]) > 1e-3


def test_extract_converges_in_tol(tau):
    coarse, fine = extract_bitangents(tau, 1e-12), extract_bitangents(tau, 1e-13)
    for n in ODD3:
        assert projective_distance(coarse[n], fine[n]) < 1e-8


def test_extract_rejects_hyperelliptic():
    with pytest.raises(HyperellipticOrDegenerate):
        extract_bitangents(1j * np.eye(3))


def test_bitangent_set_validation():
    coords = {n: np.array([1.0, 2.0, 3.0 + k]) for k, n in enumerate(ODD3)}
    BitangentSet.from_coords(coords)
    with pytest.raises(InvalidCharacteristic):
        BitangentSet.from_coords(dict(list(coords.items())[:27]))
    with pytest.raises(ZeroGradient):
        BitangentSet.from_coords({**coords, ODD3[0]: np.zeros(3)})


def test_gauss_consistency_all_odd(taus):
    for t in taus:
        for n in ODD3:
            assert gauss_consistency(n, t) < 1e-6


def test_gauss_shift_against_finite_differences(tau):
    # oracle: central differences of the zero-characteristic theta at the shifted point
    zero, h = Characteristic.zero(3), 1e-5
    for n in ODD3[::4]:
        z0 = two_torsion_point(Characteristic(3, n.bottom, n.top), tau)
        fd = np.array([(theta(zero, tau, z0 + h * e).value - theta(zero, tau, z0 - h * e).value) / (2 * h)
                       for e in np.eye(3)])
        assert projective_distance(fd, grad_theta0(n, tau).vector) < 1e-6


def test_level_two_covariance(tau):
    rng = np.random.default_rng(3)
    for _ in range(3):
        gamma = conditioned_word(rng, level2_generators(3), tau, max_len=3)
        image = act_tau(gamma, tau)
        before, after = extract_bitangents(tau), extract_bitangents(image)
        cfac = automorphy_factor(gamma, tau)
        for n in ODD3:
            assert projective_distance(after[n], cfac @ before[n]) < 1e-8
