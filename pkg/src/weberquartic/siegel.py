"""Siegel upper half-space, integer symplectic matrices and the scalar
factors of the theta transformation formula."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import GenusMismatch, NotPositiveDefinite, NotSymmetric, NotSymplectic, SingularAction

__all__ = [
    "SiegelPoint",
    "SymplecticMatrix",
    "validate_siegel",
    "act_tau",
    "is_symplectic",
    "is_in_level",
    "generators",
    "level2_generators",
    "random_word",
    "phi",
    "chi",
    "random_tau",
]

SYMMETRY_RTOL = 1e-12
PD_RTOL = 1e-12
SINGULAR_COND = 1e12


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    """A validated period matrix: symmetric with positive definite imaginary part."""

    genus: int
    tau: np.ndarray

    @property
    def imag_eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.tau.imag)

    @property
    def lambda_min(self) -> float:
        return float(self.imag_eigenvalues[0])


def validate_siegel(tau) -> SiegelPoint:
    if isinstance(tau, SiegelPoint):
        return tau
    tau = np.asarray(tau, dtype=complex)
    if tau.ndim != 2 or tau.shape[0] != tau.shape[1] or tau.shape[0] == 0:
        raise NotSymmetric(f"tau must be a square matrix, got shape {tau.shape}")
    scale = np.abs(tau).max()
    if np.abs(tau - tau.T).max() > SYMMETRY_RTOL * (1 + scale):
        raise NotSymmetric("tau is not symmetric")
    tau = (tau + tau.T) / 2
    y = tau.imag
    shift = PD_RTOL * max(np.abs(y).max(), 1e-300)
    try:
        np.linalg.cholesky(y - shift * np.eye(len(y)))
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite("imaginary part of tau is not positive definite") from None
    tau.setflags(write=False)
    return SiegelPoint(len(tau), tau)


def _as_int_matrix(mat) -> np.ndarray:
    arr = np.asarray(mat, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] % 2:
        raise NotSymplectic(f"expected a 2g x 2g matrix, got shape {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        if int(x) != x:
            raise NotSymplectic("symplectic matrices must have integer entries")
        out[idx] = int(x)
    return out


def _standard_j(genus: int) -> np.ndarray:
    j = np.zeros((2 * genus, 2 * genus), dtype=object)
    j[:] = 0
    for i in range(genus):
        j[i, genus + i] = 1
        j[genus + i, i] = -1
    return j


def is_symplectic(mat) -> bool:
    """Exact check of ``M^T J M = J`` over the integers."""
    try:
        m = _as_int_matrix(mat)
    except (NotSymplectic, TypeError, ValueError):
        return False
    j = _standard_j(m.shape[0] // 2)
    return bool((m.T @ j @ m == j).all())


class SymplecticMatrix:
    """Element of Sp(2g, Z), stored with exact Python integers."""

    __slots__ = ("matrix",)

    def __init__(self, mat):
        m = _as_int_matrix(mat.matrix if isinstance(mat, SymplecticMatrix) else mat)
        if not is_symplectic(m):
            raise NotSymplectic("matrix is not symplectic")
        m.setflags(write=False)
        self.matrix = m

    @property
    def genus(self) -> int:
        return self.matrix.shape[0] // 2

    @property
    def a(self) -> np.ndarray:
        g = self.genus
        return self.matrix[:g, :g]

    @property
    def b(self) -> np.ndarray:
        g = self.genus
        return self.matrix[:g, g:]

    @property
    def c(self) -> np.ndarray:
        g = self.genus
        return self.matrix[g:, :g]

    @property
    def d(self) -> np.ndarray:
        g = self.genus
        return self.matrix[g:, g:]

    @classmethod
    def identity(cls, genus: int) -> "SymplecticMatrix":
        m = np.zeros((2 * genus, 2 * genus), dtype=object)
        m[:] = 0
        for i in range(2 * genus):
            m[i, i] = 1
        return cls(m)

    @classmethod
    def j(cls, genus: int) -> "SymplecticMatrix":
        return cls(_standard_j(genus))

    @classmethod
    def from_blocks(cls, a, b, c, d) -> "SymplecticMatrix":
        return cls(np.block([[np.asarray(a, dtype=object), np.asarray(b, dtype=object)],
                             [np.asarray(c, dtype=object), np.asarray(d, dtype=object)]]))

    @classmethod
    def translation(cls, sym) -> "SymplecticMatrix":
        """``[[1, B], [0, 1]]`` for a symmetric integer matrix ``B``."""
        sym = np.asarray(sym, dtype=object)
        g = len(sym)
        eye, zero = np.eye(g, dtype=int), np.zeros((g, g), dtype=int)
        return cls.from_blocks(eye, sym, zero, eye)

    @classmethod
    def lower_translation(cls, sym) -> "SymplecticMatrix":
        sym = np.asarray(sym, dtype=object)
        g = len(sym)
        eye, zero = np.eye(g, dtype=int), np.zeros((g, g), dtype=int)
        return cls.from_blocks(eye, zero, sym, eye)

    def inverse(self) -> "SymplecticMatrix":
        a, b, c, d = self.a, self.b, self.c, self.d
        return SymplecticMatrix.from_blocks(d.T, -b.T, -c.T, a.T)

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if self.genus != other.genus:
            raise GenusMismatch("cannot multiply symplectic matrices of different genus")
        return SymplecticMatrix(self.matrix @ other.matrix)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymplecticMatrix) and bool((self.matrix == other.matrix).all())

    def __hash__(self) -> int:
        return hash(tuple(self.matrix.ravel()))

    def __repr__(self) -> str:
        return f"SymplecticMatrix({self.matrix.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self.matrix.tolist()


def is_in_level(gamma, n: int) -> bool:
    """True iff ``gamma`` is symplectic and congruent to the identity mod ``n``."""
    if not is_symplectic(gamma.matrix if isinstance(gamma, SymplecticMatrix) else gamma):
        return False
    m = SymplecticMatrix(gamma).matrix
    if n == 1:
        return True
    eye = SymplecticMatrix.identity(m.shape[0] // 2).matrix
    return all(int(x) % n == 0 for x in (m - eye).ravel())


def _cauto(gamma, tau: np.ndarray) -> np.ndarray:
    """The automorphy factor ``c tau + d`` as a complex matrix."""
    return gamma.c.astype(float) @ tau + gamma.d.astype(float)


def act_tau(gamma: SymplecticMatrix, tau) -> SiegelPoint:
    """``(a tau + b)(c tau + d)^-1``."""
    point = validate_siegel(tau)
    if gamma.genus != point.genus:
        raise GenusMismatch(f"gamma has genus {gamma.genus}, tau has genus {point.genus}")
    denom = _cauto(gamma, point.tau)
    if np.linalg.cond(denom) > SINGULAR_COND:
        raise SingularAction("c tau + d is numerically singular")
    numer = gamma.a.astype(float) @ point.tau + gamma.b.astype(float)
    # X D^-1 computed as solve(D^T, X^T)^T
    out = np.linalg.solve(denom.T, numer.T).T
    return validate_siegel((out + out.T) / 2)


def automorphy_factor(gamma: SymplecticMatrix, tau) -> np.ndarray:
    return _cauto(gamma, validate_siegel(tau).tau)


def _elementary_symmetric(genus: int, i: int, j: int, value: int = 1) -> np.ndarray:
    e = np.zeros((genus, genus), dtype=int)
    e[i, j] = value
    e[j, i] = value
    return e


def generators(genus: int) -> list[SymplecticMatrix]:
    """``J`` followed by the translations by elementary symmetric matrices.

    Together these generate Sp(2g, Z).
    """
    if genus < 1:
        raise ValueError(f"genus must be positive, got {genus}")
    out = [SymplecticMatrix.j(genus)]
    for i in range(genus):
        for j in range(i, genus):
            out.append(SymplecticMatrix.translation(_elementary_symmetric(genus, i, j)))
    return out


def level2_generators(genus: int) -> list[SymplecticMatrix]:
    """Upper and lower translations by twice the elementary symmetric matrices.

    They all lie in the level-2 subgroup.
    """
    out = []
    for i in range(genus):
        for j in range(i, genus):
            e = _elementary_symmetric(genus, i, j, 2)
            out.append(SymplecticMatrix.translation(e))
            out.append(SymplecticMatrix.lower_translation(e))
    return out


def random_word(rng: np.random.Generator, gens: list[SymplecticMatrix], length: int) -> SymplecticMatrix:
    """Product of ``length`` letters drawn from ``gens`` and their inverses."""
    letters = list(gens) + [g.inverse() for g in gens]
    word = SymplecticMatrix.identity(gens[0].genus)
    for k in rng.integers(len(letters), size=length):
        word = word @ letters[int(k)]
    return word


def phi(m, gamma: SymplecticMatrix) -> Fraction:
    """The exponent ``phi_m(gamma)`` reduced mod 1, exactly (denominator divides 8)."""
    if m.genus != gamma.genus:
        raise GenusMismatch(f"characteristic has genus {m.genus}, gamma {gamma.genus}")
    a, b, c, d = gamma.a, gamma.b, gamma.c, gamma.d
    mt = np.array(m.top, dtype=object)
    mb = np.array(m.bottom, dtype=object)
    quad = mt @ b.T @ d @ mt + mb @ a.T @ c @ mb - 2 * (mt @ b.T @ c @ mb)
    diag_ab = np.array([sum(a[i, k] * b[i, k] for k in range(gamma.genus)) for i in range(gamma.genus)],
                       dtype=object)
    lin = diag_ab @ (d @ mt - c @ mb)
    eighths = -int(quad) + 2 * int(lin)
    return Fraction(eighths % 8, 8)


def chi(m, gamma: SymplecticMatrix) -> complex:
    """``exp(2 pi i phi_m(gamma))``; the m-independent eighth root kappa is not included."""
    f = phi(m, gamma)
    # exact values on the eighth roots avoid spurious rounding in products
    k = f.numerator * (8 // f.denominator)
    return _EIGHTH_ROOTS[k]


_H = 0.5 ** 0.5
_EIGHTH_ROOTS = [1 + 0j, complex(_H, _H), 1j, complex(-_H, _H),
                 -1 + 0j, complex(-_H, -_H), -1j, complex(_H, -_H)]


def random_tau(seed: int, genus: int = 3, conditioning: float = 0.3) -> SiegelPoint:
    """Random period matrix ``S + iG`` with smallest eigenvalue of ``G`` at least ``1 - conditioning``.

    ``S`` has symmetric entries uniform in [-1/2, 1/2]; ``G = I + conditioning * P`` with
    ``P`` symmetric of spectral norm below one.
    """
    if not 0 < conditioning <= 1:
        raise ValueError(f"conditioning must lie in (0, 1], got {conditioning}")
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.uniform(-0.5, 0.5, (genus, genus)))
    real = upper + np.triu(upper, 1).T
    pert = rng.uniform(-1.0, 1.0, (genus, genus))
    pert = (pert + pert.T) / 2
    norm = np.linalg.norm(pert, 2)
    if norm > 0:
        pert *= rng.uniform(0.5, 1.0) / norm
    imag = np.eye(genus) + conditioning * pert
    return validate_siegel(real + 1j * imag)
