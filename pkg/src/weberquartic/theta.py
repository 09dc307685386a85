"""Riemann theta functions with characteristics, by truncated lattice sums.

Convention::

    theta_m(tau, z) = sum_p exp(pi i [v.tau.v + 2 v.(z + m''/2)]),   v = p + m'/2

The sum runs over the box ``|v_i| <= R``.  ``R`` is the smallest radius whose
tail bound (see :func:`tail_bound`) is below the requested tolerance.  All 64
characteristics of a genus-3 point share one lattice enumeration in
:func:`theta_table`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .characteristics import Characteristic, enumerate_characteristics
from .errors import HyperellipticOrDegenerate, InvalidCharacteristic, RadiusOverflow
from .fingerprint import Fingerprint
from .siegel import SiegelPoint, validate_siegel

__all__ = [
    "DEFAULT_TOL",
    "RADIUS_CAP",
    "HYPERELLIPTIC_GUARD",
    "HEAT_DIAGONAL",
    "HEAT_OFFDIAGONAL",
    "ThetaValue",
    "ThetaGradient",
    "ThetaTable",
    "tail_bound",
    "truncation_radius",
    "theta_series",
    "theta",
    "theta_constant",
    "theta_gradient",
    "grad_theta0",
    "theta_hessian",
    "theta_table",
    "jacobian_D",
    "jacobian_from_gradients",
    "hyperelliptic_guard",
    "theta4_map",
    "heat_check",
]

DEFAULT_TOL = 1e-12
RADIUS_CAP = 64
HYPERELLIPTIC_GUARD = 1e-8

# d^2/dz_j^2 = 4 pi i d/dtau_jj,  d^2/dz_i dz_j = 2 pi i d/dtau_ij (i != j)
HEAT_DIAGONAL = 4j * math.pi
HEAT_OFFDIAGONAL = 2j * math.pi

_CHUNK = 1 << 16


@dataclass(frozen=True)
class ThetaValue:
    value: complex
    tail_bound: float
    radius_used: int


@dataclass(frozen=True)
class ThetaGradient:
    char: Characteristic
    vector: np.ndarray
    tail_bound: float


@dataclass(frozen=True, eq=False)
class ThetaTable:
    """Values (and optionally z-derivatives) for all characteristics at one point.

    ``values[m]`` is complex; ``gradients[m]`` a length-g vector; ``hessians[m]``
    a g x g matrix.  Derivative tables are ``None`` unless requested.
    """

    point: SiegelPoint
    z: np.ndarray
    values: dict
    gradients: dict | None
    hessians: dict | None
    tail_bound: float
    radius_used: int


def _term_constants(lam: float, z_imag_norm: float, order: int) -> tuple[float, float]:
    """Return ``(a, C)`` with ``|term(v)| <= C exp(-pi a |v|^2)``.

    Uses ``|term| <= exp(-pi lam |v|^2 + 2 pi |v| |Im z|) (2 pi |v|)^order``.
    """
    if order == 0 and z_imag_norm == 0:
        return lam, 1.0
    # keep exp(-pi lam x^2 / 2); the two remaining quarter factors absorb
    # exp(-pi lam x^2 / 4 + 2 pi x y) <= exp(4 pi y^2 / lam)
    # (2 pi x)^k exp(-pi lam x^2 / 4) <= (2 pi)^k (2k / (pi lam e))^(k/2)
    const = math.exp(4 * math.pi * z_imag_norm ** 2 / lam)
    if order:
        const *= (2 * math.pi) ** order * (2 * order / (math.pi * lam * math.e)) ** (order / 2)
    return lam / 2, const


def tail_bound(lam: float, genus: int, radius: int, z_imag_norm: float = 0.0, order: int = 0) -> float:
    """Upper bound on the sum of ``|term|`` over lattice points outside the box of ``radius``.

    ``lam`` is the smallest eigenvalue of ``Im tau``.  Outside the box some
    coordinate has ``|v_i| >= R + 1/2``; per coordinate the full sum is at most
    ``1 + a^(-1/2)`` and the tail at most a geometric series.
    """
    a, const = _term_constants(lam, z_imag_norm, order)
    r = radius + 0.5
    ratio = math.exp(-2 * math.pi * a * r)
    tail_1d = 2 * math.exp(-math.pi * a * r * r) / (1 - ratio)
    full_1d = 1 + 1 / math.sqrt(a)
    return const * genus * tail_1d * full_1d ** (genus - 1)


def truncation_radius(lam: float, genus: int, tol: float, z_imag_norm: float = 0.0,
                      order: int = 0, cap: int = RADIUS_CAP) -> tuple[int, float]:
    """Smallest radius whose tail bound is at most ``tol``; raises past ``cap``."""
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if lam <= 0:
        raise RadiusOverflow("imaginary part of tau is not positive definite")
    for radius in range(1, cap + 1):
        bound = tail_bound(lam, genus, radius, z_imag_norm, order)
        if bound <= tol:
            return radius, bound
    raise RadiusOverflow(
        f"truncation radius exceeds cap {cap} (smallest eigenvalue of Im tau = {lam:.3g})")


@lru_cache(maxsize=64)
def _box(genus: int, radius: int, twice_shift: tuple[int, ...]) -> np.ndarray:
    """Points ``v = p + shift/2`` with every ``|v_i| <= radius``, lexicographic in ``p``."""
    axes = []
    for t in twice_shift:
        lo = math.ceil(-radius - t / 2)
        hi = math.floor(radius - t / 2)
        axes.append(np.arange(lo, hi + 1) + t / 2)
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, genus)
    grid.setflags(write=False)
    return grid


def _sum_series(tau: np.ndarray, z: np.ndarray, top: np.ndarray, bottoms: np.ndarray,
                radius: int, order: int):
    """Sum the series for one top row and several bottom rows (integer vectors)."""
    g = len(tau)
    pts = _box(g, radius, tuple(int(t) for t in top))
    vals = np.zeros(len(bottoms), dtype=complex)
    grads = np.zeros((len(bottoms), g), dtype=complex) if order >= 1 else None
    hess = np.zeros((len(bottoms), g, g), dtype=complex) if order >= 2 else None
    for start in range(0, len(pts), _CHUNK):
        v = pts[start:start + _CHUNK]
        expo = np.einsum("ki,ij,kj->k", v, tau, v) + 2 * (v @ z)
        base = np.exp(1j * np.pi * expo)
        # phase[k, b] = exp(pi i v_k . m''_b)
        phase = np.exp(1j * np.pi * (v @ bottoms.T))
        weighted = phase * base[:, None]
        vals += weighted.sum(axis=0)
        if grads is not None:
            grads += weighted.T @ v
        if hess is not None:
            hess += np.einsum("kb,ki,kj->bij", weighted, v, v)
    if grads is not None:
        grads *= 2j * np.pi
    if hess is not None:
        hess *= (2j * np.pi) ** 2
    return vals, grads, hess


def _prepare(tau, z, tol, order, radius, cap):
    point = validate_siegel(tau)
    g = point.genus
    z = np.zeros(g, dtype=complex) if z is None else np.asarray(z, dtype=complex)
    if z.shape != (g,):
        raise ValueError(f"z must have length {g}")
    lam = point.lambda_min
    znorm = float(np.linalg.norm(z.imag))
    if radius is None:
        radius, bound = truncation_radius(lam, g, tol, znorm, order, cap)
    else:
        bound = tail_bound(lam, g, radius, znorm, order)
    return point, z, radius, bound


def theta_series(top, bottom, tau, z=None, tol: float = DEFAULT_TOL, order: int = 0,
                 radius: int | None = None, cap: int = RADIUS_CAP):
    """Evaluate the series for an arbitrary integer characteristic vector.

    Returns ``(value, gradient, hessian, tail_bound, radius)``; derivative
    entries are ``None`` below the requested ``order``.
    """
    point, z, radius, bound = _prepare(tau, z, tol, order, radius, cap)
    top = np.asarray(top, dtype=int)
    bottom = np.asarray(bottom, dtype=int)
    if top.shape != (point.genus,) or bottom.shape != (point.genus,):
        raise InvalidCharacteristic("characteristic rows must have length g")
    vals, grads, hess = _sum_series(point.tau, z, top, bottom[None, :], radius, order)
    return (vals[0], None if grads is None else grads[0], None if hess is None else hess[0],
            bound, radius)


def theta(m: Characteristic, tau, z=None, tol: float = DEFAULT_TOL,
          radius: int | None = None, cap: int = RADIUS_CAP) -> ThetaValue:
    """``theta_m(tau, z)`` with its truncation bound."""
    value, _, _, bound, r = theta_series(m.top, m.bottom, tau, z, tol, 0, radius, cap)
    return ThetaValue(complex(value), bound, r)


def theta_constant(m: Characteristic, tau, tol: float = DEFAULT_TOL, **kw) -> ThetaValue:
    return theta(m, tau, None, tol, **kw)


def theta_gradient(m: Characteristic, tau, z=None, tol: float = DEFAULT_TOL,
                   radius: int | None = None, cap: int = RADIUS_CAP) -> ThetaGradient:
    """z-gradient of ``theta_m`` at ``z`` (any parity)."""
    _, grad, _, bound, _ = theta_series(m.top, m.bottom, tau, z, tol, 1, radius, cap)
    return ThetaGradient(m, grad, bound)


def grad_theta0(n: Characteristic, tau, tol: float = DEFAULT_TOL, **kw) -> ThetaGradient:
    """Gradient at ``z = 0`` of an odd theta function."""
    if not n.is_odd:
        raise InvalidCharacteristic(f"gradient at the origin needs an odd characteristic, got {n}")
    return theta_gradient(n, tau, None, tol, **kw)


def theta_hessian(m: Characteristic, tau, z=None, tol: float = DEFAULT_TOL,
                  radius: int | None = None, cap: int = RADIUS_CAP) -> np.ndarray:
    _, _, hess, _, _ = theta_series(m.top, m.bottom, tau, z, tol, 2, radius, cap)
    return hess


def theta_table(tau, tol: float = DEFAULT_TOL, z=None, order: int = 1,
                radius: int | None = None, cap: int = RADIUS_CAP) -> ThetaTable:
    """All characteristics of the genus at once, sharing the lattice enumeration."""
    point, z, radius, bound = _prepare(tau, z, tol, order, radius, cap)
    g = point.genus
    rows = np.array(list(itertools.product((0, 1), repeat=g)), dtype=int)
    chars = enumerate_characteristics(g)
    values, grads, hessians = {}, {} if order >= 1 else None, {} if order >= 2 else None
    it = iter(chars)
    for top in rows:
        vals, gr, hs = _sum_series(point.tau, z, top, rows, radius, order)
        for b in range(len(rows)):
            m = next(it)
            values[m] = complex(vals[b])
            if grads is not None:
                grads[m] = gr[b]
            if hessians is not None:
                hessians[m] = hs[b]
    return ThetaTable(point, z, values, grads, hessians, bound, radius)


def jacobian_from_gradients(g1, g2, g3) -> complex:
    """``pi^-3 det`` of the matrix with the three gradients as rows."""
    return complex(np.linalg.det(np.array([g1, g2, g3])) / math.pi ** 3)


def jacobian_D(n1: Characteristic, n2: Characteristic, n3: Characteristic, tau,
               tol: float = DEFAULT_TOL, table: ThetaTable | None = None) -> complex:
    """Jacobian determinant of three odd theta functions at ``z = 0``, scaled by ``pi^-3``."""
    for n in (n1, n2, n3):
        if not n.is_odd:
            raise InvalidCharacteristic(f"Jacobian determinants need odd characteristics, got {n}")
    if len({n1, n2, n3}) != 3:
        raise InvalidCharacteristic("Jacobian determinant needs distinct characteristics")
    if table is None:
        return jacobian_from_gradients(*(grad_theta0(n, tau, tol).vector for n in (n1, n2, n3)))
    return jacobian_from_gradients(*(table.gradients[n] for n in (n1, n2, n3)))


def hyperelliptic_guard(values: dict, genus: int, guard: float = HYPERELLIPTIC_GUARD):
    """Raise unless every even theta constant is above ``guard`` times the largest."""
    mags = {m: abs(values[m]) for m in enumerate_characteristics(genus, "even")}
    worst = min(mags, key=mags.get)
    top = max(mags.values())
    if mags[worst] < guard * top:
        raise HyperellipticOrDegenerate(
            f"even theta constant {worst} vanishes to relative {mags[worst] / top:.3g}")


def theta4_map(tau, tol: float = DEFAULT_TOL, table: ThetaTable | None = None) -> Fingerprint:
    """Fourth powers of the 36 even theta constants, as a normalized projective point."""
    if table is None:
        table = theta_table(tau, tol, order=0)
    g = table.point.genus
    hyperelliptic_guard(table.values, g)
    return Fingerprint.from_projective(
        {m: table.values[m] ** 4 for m in enumerate_characteristics(g, "even")})


_HEAT_Z = np.array([0.13 + 0.05j, -0.07 + 0.02j, 0.11 - 0.03j])


def heat_check(m: Characteristic, tau, tol: float = DEFAULT_TOL, z=None,
               step: float = 1e-5) -> float:
    """Largest relative residual of ``d2 theta / dz_i dz_j = c_ij d theta / d tau_ij``.

    Second z-derivatives come from the differentiated series; tau-derivatives
    from central differences that move ``tau_ij`` and ``tau_ji`` together.
    """
    point = validate_siegel(tau)
    g = point.genus
    if z is None:
        z = _HEAT_Z[:g] if g <= 3 else np.full(g, 0.05 + 0.01j)
    hess = theta_hessian(m, point, z, tol)
    worst = 0.0
    scale = max(np.abs(hess).max(), 1e-300)
    for i in range(g):
        for j in range(i, g):
            e = np.zeros((g, g))
            e[i, j] = e[j, i] = 1
            plus = theta(m, point.tau + step * e, z, tol).value
            minus = theta(m, point.tau - step * e, z, tol).value
            dtau = (plus - minus) / (2 * step)
            c = HEAT_DIAGONAL if i == j else HEAT_OFFDIAGONAL
            worst = max(worst, abs(hess[i, j] - c * dtau) / scale)
    return worst
