"""Projective 36-vectors of fourth powers of even theta constants."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .characteristics import Characteristic, enumerate_characteristics


def reference_characteristic(genus: int = 3) -> Characteristic:
    """Lexicographically first even characteristic, the zero characteristic."""
    return enumerate_characteristics(genus, "even")[0]


@dataclass(frozen=True)
class Fingerprint:
    """Quotients ``q_m = (theta_m / theta_ref)^4`` for every even ``m``; ``q_ref = 1``."""

    reference: Characteristic
    quotients: Mapping[Characteristic, complex] = field(repr=False)

    def __post_init__(self):
        evens = enumerate_characteristics(self.reference.genus, "even")
        if set(self.quotients) != set(evens):
            raise ValueError("fingerprint must have one quotient per even characteristic")
        if self.quotients[self.reference] != 1:
            raise ValueError("reference quotient must be exactly 1")
        vals = np.array([self.quotients[m] for m in evens])
        if not np.all(np.isfinite(vals)) or np.any(vals == 0):
            raise ValueError("fingerprint quotients must be finite and nonzero")

    @classmethod
    def from_projective(cls, values: Mapping[Characteristic, complex]) -> "Fingerprint":
        """Normalize an arbitrary projective representative by its reference coordinate."""
        ref = reference_characteristic(next(iter(values)).genus)
        scale = values[ref]
        quotients = {m: complex(v / scale) for m, v in values.items()}
        quotients[ref] = 1 + 0j
        return cls(ref, quotients)

    @property
    def characteristics(self) -> list[Characteristic]:
        return enumerate_characteristics(self.reference.genus, "even")

    def as_array(self) -> np.ndarray:
        return np.array([self.quotients[m] for m in self.characteristics])


def coordinate_deviations(a: Fingerprint, b: Fingerprint) -> dict[Characteristic, float]:
    """Relative deviation ``|q_a - q_b| / max(|q_a|, |q_b|)`` per coordinate."""
    if a.reference != b.reference:
        raise ValueError("fingerprints use different reference characteristics")
    out = {}
    for m in a.characteristics:
        x, y = a.quotients[m], b.quotients[m]
        out[m] = abs(x - y) / max(abs(x), abs(y))
    return out


def fingerprint_deviation(a: Fingerprint, b: Fingerprint) -> float:
    return max(coordinate_deviations(a, b).values())
