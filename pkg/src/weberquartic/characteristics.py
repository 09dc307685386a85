"""Theta characteristics over Z/2: parity, addition, azygetic tests and
Aronhold sets, plus the action of the Siegel modular group.

A characteristic ``[m'|m'']`` is stored canonically with entries in {0, 1}.
Reducing an integer representative ``m + 2n`` to canonical form multiplies
the theta function by ``(-1)^(m'.n'')``; :func:`reduce_vector` returns that
sign so it is never lost.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Literal, Sequence

import numpy as np

from .errors import GenusMismatch, InvalidCharacteristic, NotFound, NotSymplectic

__all__ = [
    "Characteristic",
    "SignedCharacteristic",
    "AronholdSet",
    "parity",
    "add",
    "enumerate_characteristics",
    "is_azygetic_triple",
    "is_azygetic_tuple",
    "enumerate_aronhold_sets",
    "iter_aronhold_for_pair",
    "aronhold_for_pair",
    "complete_aronhold_labels",
    "reduce_vector",
    "gamma_act_char",
]


@dataclass(frozen=True, order=True)
class Characteristic:
    """A g-characteristic with canonical bits ``top = m'`` and ``bottom = m''``."""

    genus: int
    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __post_init__(self):
        if self.genus < 1:
            raise InvalidCharacteristic(f"genus must be positive, got {self.genus}")
        if len(self.top) != self.genus or len(self.bottom) != self.genus:
            raise InvalidCharacteristic(
                f"expected {self.genus} bits per row, got {self.top}|{self.bottom}")
        if any(x not in (0, 1) for x in self.top + self.bottom):
            raise InvalidCharacteristic(
                f"entries must be 0 or 1, got {self.top}|{self.bottom}")

    @classmethod
    def from_bits(cls, top: Iterable[int], bottom: Iterable[int]) -> "Characteristic":
        top, bottom = tuple(int(x) for x in top), tuple(int(x) for x in bottom)
        return cls(len(top), top, bottom)

    @classmethod
    def parse(cls, text: str) -> "Characteristic":
        """Parse the ``"101|010"`` text form."""
        try:
            t, b = text.strip().split("|")
        except ValueError:
            raise InvalidCharacteristic(f"malformed characteristic {text!r}") from None
        if not t or set(t + b) - {"0", "1"}:
            raise InvalidCharacteristic(f"malformed characteristic {text!r}")
        return cls.from_bits((int(c) for c in t), (int(c) for c in b))

    @classmethod
    def zero(cls, genus: int) -> "Characteristic":
        return cls(genus, (0,) * genus, (0,) * genus)

    def __str__(self) -> str:
        return "".join(map(str, self.top)) + "|" + "".join(map(str, self.bottom))

    @property
    def parity(self) -> int:
        return parity(self)

    @property
    def is_even(self) -> bool:
        return parity(self) == 1

    @property
    def is_odd(self) -> bool:
        return parity(self) == -1

    def __add__(self, other: "Characteristic") -> "Characteristic":
        return add(self, other)


@dataclass(frozen=True)
class SignedCharacteristic:
    char: Characteristic
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True)
class AronholdSet:
    """Seven odd characteristics whose extension by their sum is azygetic."""

    members: tuple[Characteristic, ...]

    def __post_init__(self):
        if len(self.members) != 7:
            raise InvalidCharacteristic("an Aronhold set has exactly 7 members")
        if any(n.genus != 3 for n in self.members):
            raise GenusMismatch("Aronhold sets are defined in genus 3 only")
        if any(not n.is_odd for n in self.members):
            raise InvalidCharacteristic("Aronhold set members must be odd")
        if len(set(self.members)) != 7:
            raise InvalidCharacteristic("Aronhold set members must be distinct")
        if not is_azygetic_tuple(list(self.members) + [self.sum]):
            raise InvalidCharacteristic("members plus their sum are not azygetic")

    @property
    def sum(self) -> Characteristic:
        return sum_characteristics(self.members)

    def __str__(self) -> str:
        return " ".join(str(n) for n in self.members)


def parity(m: Characteristic) -> int:
    """Return ``e(m) = (-1)^(m'.m'')``."""
    return -1 if sum(a * b for a, b in zip(m.top, m.bottom)) % 2 else 1


def _check_genus(*chars: Characteristic) -> int:
    genera = {c.genus for c in chars}
    if len(genera) != 1:
        raise GenusMismatch(f"characteristics of different genera: {sorted(genera)}")
    return genera.pop()


def add(a: Characteristic, b: Characteristic) -> Characteristic:
    _check_genus(a, b)
    return Characteristic(
        a.genus,
        tuple(x ^ y for x, y in zip(a.top, b.top)),
        tuple(x ^ y for x, y in zip(a.bottom, b.bottom)),
    )


def sum_characteristics(chars: Iterable[Characteristic]) -> Characteristic:
    chars = list(chars)
    total = Characteristic.zero(_check_genus(*chars))
    for c in chars:
        total = add(total, c)
    return total


@lru_cache(maxsize=None)
def _all_characteristics(genus: int) -> tuple[Characteristic, ...]:
    rows = list(itertools.product((0, 1), repeat=genus))
    return tuple(Characteristic(genus, t, b) for t in rows for b in rows)


def enumerate_characteristics(
    genus: int = 3, parity_filter: Literal["even", "odd", "all"] = "all"
) -> list[Characteristic]:
    """All characteristics of the given genus in lexicographic order."""
    if genus < 1:
        raise InvalidCharacteristic(f"genus must be positive, got {genus}")
    chars = _all_characteristics(genus)
    if parity_filter == "all":
        return list(chars)
    if parity_filter == "even":
        return [c for c in chars if c.is_even]
    if parity_filter == "odd":
        return [c for c in chars if c.is_odd]
    raise ValueError(f"unknown parity filter {parity_filter!r}")


def _azygetic(a: Characteristic, b: Characteristic, c: Characteristic) -> bool:
    return parity(a) * parity(b) * parity(c) * parity(add(add(a, b), c)) == -1


def is_azygetic_triple(a: Characteristic, b: Characteristic, c: Characteristic) -> bool:
    """True iff ``e(a) e(b) e(c) e(a+b+c) = -1``."""
    _check_genus(a, b, c)
    if len({a, b, c}) != 3:
        raise InvalidCharacteristic("azygetic test needs three distinct characteristics")
    return _azygetic(a, b, c)


def is_azygetic_tuple(chars: Sequence[Characteristic]) -> bool:
    if len(chars) < 3:
        raise InvalidCharacteristic("azygetic tuples have at least three members")
    _check_genus(*chars)
    if len(set(chars)) != len(chars):
        raise InvalidCharacteristic("azygetic tuple has repeated characteristics")
    return all(_azygetic(*t) for t in itertools.combinations(chars, 3))


# Search internals work on integer codes: top bits then bottom bits, most
# significant first, so code order agrees with lexicographic order.

def _encode(c: Characteristic) -> int:
    code = 0
    for bit in c.top + c.bottom:
        code = (code << 1) | bit
    return code


@lru_cache(maxsize=None)
def _decode_table(genus: int) -> tuple[Characteristic, ...]:
    return _all_characteristics(genus)


@lru_cache(maxsize=None)
def _azygetic_table(genus: int) -> np.ndarray:
    """Boolean array ``T[a, b, c]`` of the azygetic predicate on codes."""
    size = 4 ** genus
    par = np.array([parity(c) for c in _all_characteristics(genus)])
    codes = np.arange(size)
    xor = codes[:, None, None] ^ codes[None, :, None] ^ codes[None, None, :]
    prod = par[:, None, None] * par[None, :, None] * par[None, None, :] * par[xor]
    return prod == -1


def _extend_azygetic(partial: list[int], pool: Sequence[int], start: int, size: int,
                     table: np.ndarray) -> Iterator[list[int]]:
    # Depth-first, only keeping candidates azygetic with every pair already chosen.
    if len(partial) == size:
        yield list(partial)
        return
    for i in range(start, len(pool)):
        cand = pool[i]
        if all(table[x, y, cand] for x, y in itertools.combinations(partial, 2)):
            partial.append(cand)
            yield from _extend_azygetic(partial, pool, i + 1, size, table)
            partial.pop()


def _xor_all(codes: Iterable[int]) -> int:
    out = 0
    for c in codes:
        out ^= c
    return out


def _require_genus3(genus: int):
    if genus != 3:
        raise GenusMismatch(f"Aronhold sets are only supported in genus 3, got {genus}")


def _odd_codes() -> list[int]:
    return [_encode(c) for c in enumerate_characteristics(3, "odd")]


@lru_cache(maxsize=None)
def _aronhold_family() -> tuple[AronholdSet, ...]:
    table = _azygetic_table(3)
    chars = _decode_table(3)
    found = []
    for seven in _extend_azygetic([], _odd_codes(), 0, 7, table):
        m = _xor_all(seven)
        if all(table[x, y, m] for x, y in itertools.combinations(seven, 2)):
            found.append(AronholdSet(tuple(chars[c] for c in seven)))
    return tuple(found)


def enumerate_aronhold_sets(genus: int = 3) -> list[AronholdSet]:
    """All 288 Aronhold sets, members in lexicographic order."""
    _require_genus3(genus)
    return list(_aronhold_family())


def _check_pair(m1: Characteristic, m2: Characteristic):
    _check_genus(m1, m2)
    _require_genus3(m1.genus)
    if not (m1.is_even and m2.is_even):
        raise InvalidCharacteristic(f"both characteristics must be even: {m1}, {m2}")
    if m1 == m2:
        raise InvalidCharacteristic(f"characteristics must be distinct: {m1}")


def iter_aronhold_for_pair(m1: Characteristic, m2: Characteristic) -> Iterator[AronholdSet]:
    """Yield Aronhold sets with ``sum = m1`` and ``n1 + n2 + n3 = m2``.

    One set per admissible triple ``n1 < n2 < n3``, in lexicographic order of
    the triple; the remaining four members are the first completion found.
    """
    _check_pair(m1, m2)
    table = _azygetic_table(3)
    chars = _decode_table(3)
    c1, c2 = _encode(m1), _encode(m2)
    odd = _odd_codes()
    for triple in itertools.combinations(odd, 3):
        if _xor_all(triple) != c2 or not table[triple]:
            continue
        if not all(table[x, y, c1] for x, y in itertools.combinations(triple, 2)):
            continue
        # m1 joins the partial tuple so every pruning step also checks it
        pool = [n for n in odd if n not in triple]
        for tail in _extend_azygetic([*triple, c1], pool, 0, 8, table):
            members = tail[:3] + tail[4:]
            if _xor_all(members) == c1:
                yield AronholdSet(tuple(chars[c] for c in members))
                break


@lru_cache(maxsize=None)
def aronhold_for_pair(m1: Characteristic, m2: Characteristic) -> AronholdSet:
    """First Aronhold set (deterministic search) with ``sum = m1``, ``n1+n2+n3 = m2``."""
    for s in iter_aronhold_for_pair(m1, m2):
        return s
    raise NotFound(f"no Aronhold set with sum {m1} and leading triple summing to {m2}")


def complete_aronhold_labels(s: AronholdSet) -> dict[tuple[int, int], Characteristic]:
    """Return ``{(i, j): m + n_i + n_j}`` for ``1 <= i < j <= 7`` (1-based)."""
    m = s.sum
    return {
        (i + 1, j + 1): add(add(m, s.members[i]), s.members[j])
        for i, j in itertools.combinations(range(7), 2)
    }


def reduce_vector(top: Sequence[int], bottom: Sequence[int]) -> SignedCharacteristic:
    """Reduce an integer characteristic ``m + 2n`` to ``m``, with sign ``(-1)^(m'.n'')``."""
    top = [int(x) for x in top]
    bottom = [int(x) for x in bottom]
    if len(top) != len(bottom):
        raise GenusMismatch("top and bottom rows differ in length")
    m_top = tuple(x % 2 for x in top)
    m_bot = tuple(x % 2 for x in bottom)
    n_bot = [(x - r) // 2 for x, r in zip(bottom, m_bot)]
    sign = -1 if sum(a * b for a, b in zip(m_top, n_bot)) % 2 else 1
    return SignedCharacteristic(Characteristic(len(top), m_top, m_bot), sign)


def act_vector(gamma, m: Characteristic) -> tuple[list[int], list[int]]:
    """Unreduced integer vector of ``gamma . m``."""
    a, b, c, d = gamma.a, gamma.b, gamma.c, gamma.d
    g = m.genus
    mt, mb = m.top, m.bottom

    def row(mat, i, v):
        return sum(int(mat[i][k]) * v[k] for k in range(g))

    def diag_prod(x, y, i):
        # i-th diagonal entry of x @ y^T
        return sum(int(x[i][k]) * int(y[i][k]) for k in range(g))

    top = [row(d, i, mt) - row(c, i, mb) + diag_prod(c, d, i) for i in range(g)]
    bottom = [-row(b, i, mt) + row(a, i, mb) + diag_prod(a, b, i) for i in range(g)]
    return top, bottom


def gamma_act_char(gamma, m: Characteristic) -> SignedCharacteristic:
    """Act on ``m`` by a symplectic integer matrix, reducing mod 2 with sign."""
    from .siegel import SymplecticMatrix, is_symplectic

    if not isinstance(gamma, SymplecticMatrix):
        if not is_symplectic(gamma):
            raise NotSymplectic("matrix is not an integer symplectic matrix")
        gamma = SymplecticMatrix(gamma)
    if gamma.genus != m.genus:
        raise GenusMismatch(f"gamma has genus {gamma.genus}, characteristic {m.genus}")
    return reduce_vector(*act_vector(gamma, m))
