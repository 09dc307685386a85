"""Weber's formula: fourth powers of even theta quotients from bitangent lines.

For an Aronhold set ``n1..n7`` with sum ``m1`` and ``n1 + n2 + n3 = m2``::

    (theta_m1 / theta_m2)^4 = e(m1 + m2) *
        [1,2,3][1,12,13][12,2,23][13,23,3] / ([23,13,12][23,3,2][3,13,1][2,1,12])

where ``[i,j,k]`` is the determinant with columns ``beta_i, beta_j, beta_k`` and
``beta_ij`` is the line labeled ``m1 + n_i + n_j``.  Every label occurs twice
above and twice below the bar, so the value ignores per-line scaling and any
common linear change of coordinates.
"""
from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .bitangents import BitangentSet
from .characteristics import (AronholdSet, Characteristic, add, aronhold_for_pair,
                              complete_aronhold_labels, enumerate_characteristics,
                              iter_aronhold_for_pair, parity)
from .errors import DegenerateDenominator, HyperellipticOrDegenerate, InvalidCharacteristic, NotFound
from .fingerprint import Fingerprint, coordinate_deviations, reference_characteristic
from .theta import DEFAULT_TOL, HYPERELLIPTIC_GUARD, ThetaTable, theta_table

__all__ = [
    "WeberInstance",
    "Verdict",
    "ComparisonReport",
    "DEGENERATE_RTOL",
    "COMPARE_TOL",
    "det3",
    "weber_instance",
    "weber_rhs",
    "weber_lhs",
    "weber_value",
    "fingerprint_from_bitangents",
    "aronhold_choice_consistency",
    "compare_curves",
]

log = logging.getLogger(__name__)

DEGENERATE_RTOL = 1e-10
COMPARE_TOL = 1e-6

LABELS = (1, 2, 3, 12, 13, 23)
NUMERATOR = ((1, 2, 3), (1, 12, 13), (12, 2, 23), (13, 23, 3))
DENOMINATOR = ((23, 13, 12), (23, 3, 2), (3, 13, 1), (2, 1, 12))


@dataclass(frozen=True, eq=False)
class WeberInstance:
    m1: Characteristic
    m2: Characteristic
    aronhold: AronholdSet
    beta: Mapping[int, np.ndarray] = field(repr=False)

    def __post_init__(self):
        if self.m1 == self.m2:
            raise InvalidCharacteristic("Weber's formula needs distinct characteristics")
        if self.aronhold.sum != self.m1:
            raise InvalidCharacteristic(f"Aronhold set sums to {self.aronhold.sum}, expected {self.m1}")
        n = self.aronhold.members
        if add(add(n[0], n[1]), n[2]) != self.m2:
            raise InvalidCharacteristic(f"leading triple does not sum to {self.m2}")
        if set(self.beta) != set(LABELS):
            raise InvalidCharacteristic(f"beta must be labeled by {LABELS}")
        for k, v in self.beta.items():
            if np.asarray(v).shape != (3,) or not np.any(v):
                raise InvalidCharacteristic(f"beta_{k} must be a nonzero 3-vector")

    def labels(self) -> dict[int, Characteristic]:
        """Odd characteristic behind each of the six labels."""
        return _six_labels(self.aronhold)


def _six_labels(aronhold: AronholdSet) -> dict[int, Characteristic]:
    n = aronhold.members
    pairs = complete_aronhold_labels(aronhold)
    return {1: n[0], 2: n[1], 3: n[2], 12: pairs[1, 2], 13: pairs[1, 3], 23: pairs[2, 3]}


def det3(u, v, w) -> complex:
    """Determinant of the 3x3 matrix with columns ``u, v, w``."""
    return complex(np.linalg.det(np.column_stack([u, v, w])))


def weber_instance(bitangents: BitangentSet, m1: Characteristic, m2: Characteristic,
                   aronhold: AronholdSet | None = None) -> WeberInstance:
    """Resolve the six bitangent vectors that Weber's formula needs for ``(m1, m2)``."""
    if aronhold is None:
        aronhold = aronhold_for_pair(m1, m2)
    chars = _six_labels(aronhold)
    return WeberInstance(m1, m2, aronhold, {k: bitangents[c] for k, c in chars.items()})


def weber_rhs(inst: WeberInstance, degenerate_rtol: float = DEGENERATE_RTOL) -> complex:
    """Signed determinant ratio of Weber's formula."""
    b = inst.beta
    num = 1 + 0j
    for cols in NUMERATOR:
        num *= det3(*(b[k] for k in cols))
    den = 1 + 0j
    for cols in DENOMINATOR:
        d = det3(*(b[k] for k in cols))
        scale = np.prod([np.linalg.norm(b[k]) for k in cols])
        if abs(d) < degenerate_rtol * scale:
            raise DegenerateDenominator(
                f"determinant {cols} vanishes for pair ({inst.m1}, {inst.m2}): "
                f"|D| = {abs(d):.3g}, column scale {scale:.3g}")
        den *= d
    return parity(add(inst.m1, inst.m2)) * num / den


def weber_lhs(m1: Characteristic, m2: Characteristic, tau=None, tol: float = DEFAULT_TOL,
              table: ThetaTable | None = None) -> complex:
    """``(theta_m1(tau) / theta_m2(tau))^4`` from direct theta evaluation."""
    if not (m1.is_even and m2.is_even):
        raise InvalidCharacteristic(f"both characteristics must be even: {m1}, {m2}")
    if table is None:
        table = theta_table(tau, tol, order=0)
    evens = enumerate_characteristics(m1.genus, "even")
    biggest = max(abs(table.values[m]) for m in evens)
    if abs(table.values[m2]) < HYPERELLIPTIC_GUARD * biggest:
        raise HyperellipticOrDegenerate(f"theta constant {m2} vanishes numerically")
    return (table.values[m1] / table.values[m2]) ** 4


def weber_value(bitangents: BitangentSet, m1: Characteristic, m2: Characteristic,
                aronhold: AronholdSet | None = None) -> complex:
    """Weber's right-hand side for ``(m1, m2)`` read from a labeled bitangent set."""
    if m1 == m2:
        return 1 + 0j
    return weber_rhs(weber_instance(bitangents, m1, m2, aronhold))


def fingerprint_from_bitangents(b: BitangentSet) -> Fingerprint:
    """The fourth-power theta fingerprint, using only the 28 labeled lines."""
    ref = reference_characteristic(3)
    quotients = {}
    for m in enumerate_characteristics(3, "even"):
        if m == ref:
            quotients[m] = 1 + 0j
            continue
        try:
            quotients[m] = weber_value(b, m, ref)
        except DegenerateDenominator as exc:
            raise DegenerateDenominator(f"pair ({m}, {ref}): {exc}") from exc
    return Fingerprint(ref, quotients)


def aronhold_choice_consistency(b: BitangentSet, m1: Characteristic, m2: Characteristic,
                                k: int) -> float:
    """Largest relative disagreement of Weber's value over ``k`` admissible Aronhold sets."""
    if k < 1:
        raise ValueError("k must be at least 1")
    sets = list(itertools.islice(iter_aronhold_for_pair(m1, m2), k))
    if len(sets) < k:
        raise NotFound(f"only {len(sets)} admissible Aronhold sets for ({m1}, {m2}), asked for {k}")
    values = [weber_value(b, m1, m2, s) for s in sets]
    first = values[0]
    return max(abs(v - first) / abs(first) for v in values)


class Verdict(enum.Enum):
    SAME = "SAME"
    DIFFERENT = "DIFFERENT"


@dataclass(frozen=True)
class ComparisonReport:
    verdict: Verdict
    max_deviation: float
    tol: float
    deviations: Mapping[Characteristic, float] = field(repr=False)
    fingerprints: tuple[Fingerprint, Fingerprint] = field(repr=False)

    @property
    def margin(self) -> float:
        """``tol / max_deviation``; above 1 means SAME."""
        return self.tol / self.max_deviation if self.max_deviation else float("inf")


def compare_curves(a: BitangentSet, b: BitangentSet, tol: float = COMPARE_TOL) -> ComparisonReport:
    """Decide whether two labeled bitangent configurations come from the same curve."""
    fa = fingerprint_from_bitangents(a)
    fb = fingerprint_from_bitangents(b)
    devs = coordinate_deviations(fa, fb)
    worst = max(devs.values())
    verdict = Verdict.SAME if worst <= tol else Verdict.DIFFERENT
    log.info("compare_curves: %s, max deviation %.3e, tol %.1e", verdict.value, worst, tol)
    return ComparisonReport(verdict, worst, tol, devs, (fa, fb))
