"""Siegel upper half space, integer symplectic matrices and the eighth-root factors."""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weberquartic.characteristics import enumerate_characteristics, gamma_act_char
from weberquartic.errors import NotPositiveDefinite, NotSymmetric, NotSymplectic
from weberquartic.siegel import (SymplecticMatrix, act_tau, chi, generators, is_in_level, is_symplectic,
                                 level2_generators, phi, random_tau, random_word, validate_siegel)
from weberquartic.theta import theta_table

ALL3 = enumerate_characteristics(3, "all")
seeds = st.integers(0, 2**32 - 1)


def test_validate_examples():
    assert validate_siegel(1j * np.eye(3)).lambda_min == pytest.approx(1.0)
    with pytest.raises(NotPositiveDefinite):
        validate_siegel(1j * np.diag([1.0, -0.5, 2.0]))
    bad = 1j * np.eye(3)
    bad[0, 1] = 0.3
    with pytest.raises(NotSymmetric):
        validate_siegel(bad)
    with pytest.raises(NotSymmetric):
        validate_siegel(np.ones((2, 3)))


def test_random_tau_contract():
    for seed in range(20):
        p = random_tau(seed, conditioning=0.3)
        assert p.lambda_min >= 0.7
        assert np.array_equal(p.tau, random_tau(seed, conditioning=0.3).tau)
        assert np.all(np.abs(p.tau.real) <= 0.5)


def test_identity_and_j_levels():
    e, j = SymplecticMatrix.identity(3), SymplecticMatrix.j(3)
    assert is_symplectic(e.matrix) and is_symplectic(j.matrix)
    assert all(is_in_level(e, n) for n in (1, 2, 3, 8))
    assert is_in_level(j, 1)
    assert not any(is_in_level(j, n) for n in (2, 3, 4))


def test_non_symplectic_rejected():
    m = np.eye(6, dtype=int)
    m[0, 1] = 1
    assert not is_symplectic(m)
    with pytest.raises(NotSymplectic):
        SymplecticMatrix(m)


def test_generators_shape():
    gens = generators(3)
    assert gens[0] == SymplecticMatrix.j(3)
    assert len(gens) == 1 + 6
    assert all(is_symplectic(g.matrix) for g in gens)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_words_stay_symplectic(seed):
    w = random_word(np.random.default_rng(seed), generators(3), 20)
    assert is_symplectic(w.matrix)
    assert w @ w.inverse() == SymplecticMatrix.identity(3)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_level_two_closure(seed):
    rng = np.random.default_rng(seed)
    g1 = random_word(rng, level2_generators(3), 4)
    g2 = random_word(rng, level2_generators(3), 4)
    assert is_in_level(g1 @ g2, 2)


def test_act_tau_identity_and_translation():
    tau = random_tau(3)
    assert np.allclose(act_tau(SymplecticMatrix.identity(3), tau).tau, tau.tau, rtol=0, atol=1e-15)
    b = np.array([[1, 0, 2], [0, -1, 1], [2, 1, 0]])
    assert np.allclose(act_tau(SymplecticMatrix.translation(b), tau).tau, tau.tau + b, rtol=0, atol=1e-14)


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(1, 20))
def test_act_tau_composition(seed, length):
    rng = np.random.default_rng(seed)
    tau = random_tau(int(rng.integers(2**32)))
    g1 = random_word(rng, generators(3), length)
    g2 = random_word(rng, generators(3), length)
    direct = act_tau(g1 @ g2, tau).tau
    nested = act_tau(g1, act_tau(g2, tau)).tau
    assert np.abs(direct - nested).max() <= 1e-10 * max(1.0, np.abs(direct).max())


def test_phi_trivial_cases():
    e = SymplecticMatrix.identity(3)
    assert all(phi(m, e) == 0 for m in ALL3)
    zero = ALL3[0]
    rng = np.random.default_rng(1)
    for _ in range(20):
        assert phi(zero, random_word(rng, generators(3), 8)) == 0


@pytest.mark.parametrize("b", [
    [[1, 0, 0], [0, 0, 0], [0, 0, 0]],
    [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
    [[2, -1, 3], [-1, 1, 0], [3, 0, -5]],
])
def test_phi_translation_formula(b):
    b = np.array(b)
    gamma = SymplecticMatrix.translation(b)
    for m in ALL3:
        t = np.array(m.top)
        expected = (Fraction(-int(t @ b @ t), 8) + Fraction(int(np.diag(b) @ t), 4)) % 1
        assert phi(m, gamma) == expected


def test_translation_law_has_no_leftover_scalar():
    # for c = 0, d = 1 the m-independent factor is 1, so the ratio must be exactly one
    tau = random_tau(4)
    gamma = SymplecticMatrix.translation(np.array([[1, 0, 1], [0, 2, -1], [1, -1, 0]]))
    before, after = theta_table(tau, order=0), theta_table(act_tau(gamma, tau), order=0)
    for m in enumerate_characteristics(3, "even"):
        image = gamma_act_char(gamma, m)
        ratio = after.values[image.char] / (image.sign * chi(m, gamma) * before.values[m])
        assert abs(ratio - 1) < 1e-12


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_chi_is_eighth_root(seed):
    gamma = random_word(np.random.default_rng(seed), generators(3), 10)
    for m in ALL3:
        f = phi(m, gamma)
        assert 8 % f.denominator == 0
        c = chi(m, gamma)
        assert abs(abs(c) - 1) < 1e-15
        assert abs(c ** 8 - 1) < 1e-12
    assert all(chi(m, SymplecticMatrix.identity(3)) == 1 for m in ALL3)
