"""Modular transformation checks for theta constants, gradients and Jacobians.

The eighth root ``kappa(gamma)`` and the branch of ``det(c tau + d)^(1/2)`` are
never computed.  Each check divides out everything that depends on the
characteristic and reports how far the remaining quotients are from a single
common scalar.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .characteristics import enumerate_characteristics, gamma_act_char, is_azygetic_triple
from .errors import RadiusOverflow, SingularAction
from .siegel import (SymplecticMatrix, act_tau, automorphy_factor, chi, generators,
                     random_tau, random_word)
from .theta import DEFAULT_TOL, ThetaTable, jacobian_from_gradients, theta_table

__all__ = [
    "collapse_spread",
    "theta_collapse",
    "gradient_collapse",
    "jacobian_collapse",
    "conditioned_word",
    "TransformCheck",
    "transform_check",
]

MIN_LAMBDA = 0.1


def collapse_spread(values) -> float:
    """``max_k |c_k / c_0 - 1|``: zero iff all values are equal."""
    values = np.asarray(values, dtype=complex)
    return float(np.max(np.abs(values / values[0] - 1)))


def _tables(gamma: SymplecticMatrix, tau, tol: float) -> tuple[ThetaTable, ThetaTable]:
    return theta_table(tau, tol, order=1), theta_table(act_tau(gamma, tau), tol, order=1)


def theta_collapse(gamma: SymplecticMatrix, tau, tol: float = DEFAULT_TOL, tables=None) -> float:
    """Spread of ``theta_{gamma.m}(gamma.tau) / (sign chi_m(gamma) theta_m(tau))`` over even ``m``."""
    before, after = tables or _tables(gamma, tau, tol)
    quotients = []
    for m in enumerate_characteristics(gamma.genus, "even"):
        image = gamma_act_char(gamma, m)
        quotients.append(after.values[image.char] / (image.sign * chi(m, gamma) * before.values[m]))
    return collapse_spread(quotients)


def gradient_collapse(gamma: SymplecticMatrix, tau, tol: float = DEFAULT_TOL, tables=None) -> float:
    """Check ``grad theta_{gamma.n}(gamma.tau) = lambda sign chi_n (c tau + d) grad theta_n(tau)``.

    Returns the larger of the spread of the fitted ``lambda`` over odd ``n`` and
    the worst relative misfit of any single vector.
    """
    before, after = tables or _tables(gamma, tau, tol)
    cfac = automorphy_factor(gamma, before.point)
    scalars, misfit = [], 0.0
    for n in enumerate_characteristics(gamma.genus, "odd"):
        image = gamma_act_char(gamma, n)
        lhs = after.gradients[image.char]
        rhs = image.sign * chi(n, gamma) * (cfac @ before.gradients[n])
        lam = np.vdot(rhs, lhs) / np.vdot(rhs, rhs)
        misfit = max(misfit, float(np.linalg.norm(lhs - lam * rhs) / np.linalg.norm(lhs)))
        scalars.append(lam)
    return max(collapse_spread(scalars), misfit)


def azygetic_triples(genus: int = 3) -> list[tuple]:
    odd = enumerate_characteristics(genus, "odd")
    return [t for t in itertools.combinations(odd, 3) if is_azygetic_triple(*t)]


def jacobian_collapse(gamma: SymplecticMatrix, tau, tol: float = DEFAULT_TOL, pairs: int = 10,
                      seed: int = 0, tables=None) -> float:
    """Spread of ``D(gamma.n)(gamma.tau) / (prod sign chi_n_i D(n)(tau))`` over ``pairs + 1``
    azygetic triples, i.e. ``pairs`` Jacobian ratios measured against the first one."""
    before, after = tables or _tables(gamma, tau, tol)
    triples = azygetic_triples(gamma.genus)
    rng = np.random.default_rng(seed)
    chosen = [triples[i] for i in rng.choice(len(triples), size=pairs + 1, replace=False)]
    quotients = []
    for triple in chosen:
        images = [gamma_act_char(gamma, n) for n in triple]
        lhs = jacobian_from_gradients(*(after.gradients[im.char] for im in images))
        factor = np.prod([im.sign * chi(n, gamma) for im, n in zip(images, triple)])
        rhs = jacobian_from_gradients(*(before.gradients[n] for n in triple))
        quotients.append(lhs / (factor * rhs))
    return collapse_spread(quotients)


def conditioned_word(rng: np.random.Generator, gens: list[SymplecticMatrix], tau, max_len: int = 6,
                     min_lambda: float = MIN_LAMBDA, attempts: int = 1000) -> SymplecticMatrix:
    """Random word whose image of ``tau`` keeps ``Im`` eigenvalues above ``min_lambda``.

    Badly conditioned images would only slow the theta sums down; they are
    redrawn rather than evaluated.
    """
    for _ in range(attempts):
        word = random_word(rng, gens, int(rng.integers(1, max_len + 1)))
        try:
            image = act_tau(word, tau)
        except (SingularAction, ValueError):
            continue
        if image.lambda_min >= min_lambda:
            return word
    raise RadiusOverflow(f"no word with min eigenvalue >= {min_lambda} in {attempts} attempts")


@dataclass(frozen=True)
class TransformCheck:
    tau_index: int
    word: SymplecticMatrix
    theta_spread: float
    gradient_spread: float
    jacobian_spread: float

    @property
    def worst(self) -> float:
        return max(self.theta_spread, self.gradient_spread, self.jacobian_spread)


def transform_check(seed: int, words: int = 10, taus: int = 3, tol: float = DEFAULT_TOL,
                    conditioning: float = 0.3, max_len: int = 6) -> list[TransformCheck]:
    """Run the three scalar-collapse checks for ``words`` random words at each of ``taus`` points."""
    rng = np.random.default_rng(seed)
    gens = generators(3)
    out = []
    for t in range(taus):
        tau = random_tau(int(rng.integers(2**63)), 3, conditioning)
        before = theta_table(tau, tol, order=1)
        for _ in range(words):
            word = conditioned_word(rng, gens, tau, max_len)
            tables = (before, theta_table(act_tau(word, tau), tol, order=1))
            out.append(TransformCheck(
                t, word,
                theta_collapse(word, tau, tol, tables),
                gradient_collapse(word, tau, tol, tables),
                jacobian_collapse(word, tau, tol, seed=int(rng.integers(2**31)), tables=tables),
            ))
    return out

