"""The 28 bitangent lines of a plane quartic, read off from odd theta gradients."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

from .characteristics import Characteristic, enumerate_characteristics
from .errors import InvalidCharacteristic, ZeroGradient
from .siegel import SiegelPoint, validate_siegel
from .theta import (DEFAULT_TOL, ThetaTable, grad_theta0, hyperelliptic_guard, theta_gradient,
                    theta_table)

__all__ = [
    "BitangentLine",
    "BitangentSet",
    "projective_distance",
    "two_torsion_point",
    "extract_bitangents",
    "gauss_consistency",
    "bitangent_count",
]

ZERO_GRADIENT_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class BitangentLine:
    """Coefficients of ``sum_i coords[i] z_i = 0``, labeled by an odd characteristic."""

    char: Characteristic
    coords: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=complex)
        if coords.shape != (3,):
            raise ValueError(f"bitangent coordinates must have length 3, got {coords.shape}")
        if not np.any(coords):
            raise ZeroGradient(f"bitangent {self.char} has zero coordinates")
        if not self.char.is_odd:
            raise InvalidCharacteristic(f"bitangent label {self.char} is not odd")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)


@dataclass(frozen=True, eq=False)
class BitangentSet:
    """Exactly one line per odd genus-3 characteristic, kept in lexicographic order."""

    lines: Mapping[Characteristic, BitangentLine]
    source: SiegelPoint | None = field(default=None, repr=False)

    def __post_init__(self):
        odd = enumerate_characteristics(3, "odd")
        if set(self.lines) != set(odd):
            missing = sorted(set(odd) - set(self.lines))
            extra = sorted(set(self.lines) - set(odd))
            raise InvalidCharacteristic(
                f"bitangent labels must be exactly the 28 odd characteristics "
                f"(missing {[str(m) for m in missing]}, unexpected {[str(m) for m in extra]})")
        object.__setattr__(self, "lines", {n: self.lines[n] for n in odd})

    @classmethod
    def from_coords(cls, coords: Mapping[Characteristic, np.ndarray], source=None) -> "BitangentSet":
        return cls({n: BitangentLine(n, v) for n, v in coords.items()}, source)

    def __getitem__(self, n: Characteristic) -> np.ndarray:
        return self.lines[n].coords

    def __iter__(self) -> Iterator[BitangentLine]:
        return iter(self.lines.values())

    def __len__(self) -> int:
        return len(self.lines)

    def map_coords(self, fn) -> "BitangentSet":
        """New set with ``fn(char, coords)`` applied to every line."""
        return BitangentSet.from_coords({n: fn(n, l.coords) for n, l in self.lines.items()})

    def transform(self, matrix) -> "BitangentSet":
        """Apply one linear map to every coordinate vector."""
        matrix = np.asarray(matrix, dtype=complex)
        return self.map_coords(lambda n, v: matrix @ v)


def bitangent_count(degree: int) -> int:
    """Number of bitangents of a smooth plane curve of the given degree."""
    return degree * (degree - 2) * (degree ** 2 - 9) // 2


def projective_distance(p, q) -> float:
    """Sine of the angle between the complex lines through ``p`` and ``q``."""
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    np_, nq = np.linalg.norm(p), np.linalg.norm(q)
    if np_ == 0 or nq == 0:
        raise ZeroGradient("projective distance of a zero vector")
    if p.shape != (3,) or q.shape != (3,):
        raise ValueError("projective distance is defined for 3-vectors")
    # |p x q|^2 = |p|^2 |q|^2 - |<p, q>|^2 also holds for complex vectors
    s = np.linalg.norm(np.cross(p, q)) / (np_ * nq)
    return float(min(1.0, s))


def two_torsion_point(n: Characteristic, tau) -> np.ndarray:
    """``n'/2 + tau n''/2``."""
    point = validate_siegel(tau)
    if not n.is_odd:
        raise InvalidCharacteristic(f"two-torsion points on the theta divisor need odd n, got {n}")
    return np.asarray(n.top, dtype=float) / 2 + point.tau @ np.asarray(n.bottom, dtype=float) / 2


def extract_bitangents(tau, tol: float = DEFAULT_TOL, table: ThetaTable | None = None) -> BitangentSet:
    """Bitangent coefficient vectors: the raw gradients of the 28 odd theta functions."""
    if table is None:
        table = theta_table(tau, tol, order=1)
    if table.point.genus != 3:
        raise InvalidCharacteristic("bitangents are defined for genus 3 period matrices")
    hyperelliptic_guard(table.values, 3)
    odd = enumerate_characteristics(3, "odd")
    grads = {n: table.gradients[n] for n in odd}
    scale = max(np.linalg.norm(v) for v in grads.values())
    for n, v in grads.items():
        if np.linalg.norm(v) < ZERO_GRADIENT_RTOL * scale:
            raise ZeroGradient(f"gradient of odd theta {n} vanishes numerically")
    return BitangentSet.from_coords(grads, source=table.point)


def gauss_consistency(n: Characteristic, tau, tol: float = DEFAULT_TOL) -> float:
    """Projective distance between the Gauss-map image of the two-torsion point
    attached to ``n`` and the gradient of ``theta_n`` at the origin.

    With the series convention used here ``theta_0(tau, z + n''/2 + tau n'/2)``
    is a nonvanishing multiple of ``theta_n(tau, z)``, so the point attached to
    ``n`` is :func:`two_torsion_point` of the row-swapped ``[n''|n']`` (again odd).
    The Gauss-map side is the differentiated series of the zero-characteristic
    theta at that point.
    """
    point = validate_siegel(tau)
    z = two_torsion_point(Characteristic(n.genus, n.bottom, n.top), point)
    zero = Characteristic.zero(point.genus)
    shifted = theta_gradient(zero, point, z, tol).vector
    return projective_distance(shifted, grad_theta0(n, point, tol).vector)
