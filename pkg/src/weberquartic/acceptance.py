"""Acceptance criteria, runnable from pytest and from ``weberquartic selftest``.

Every criterion returns a :class:`CriterionResult`; thresholds are fixed here
and never relaxed at call sites.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bitangents import bitangent_count, extract_bitangents
from .characteristics import (aronhold_for_pair, enumerate_aronhold_sets, enumerate_characteristics,
                              is_azygetic_triple)
from .errors import WeberQuarticError
from .fingerprint import fingerprint_deviation
from .siegel import act_tau, automorphy_factor, level2_generators, random_tau
from .theta import heat_check, jacobian_from_gradients, theta, theta_table, theta4_map
from .transform import conditioned_word, transform_check
from .weber import Verdict, compare_curves, fingerprint_from_bitangents, weber_lhs, weber_value

WEBER_RTOL = 1e-8
INVARIANCE_TOL = 1e-8
COLLAPSE_TOL = 1e-8
THETA4_INVARIANCE_TOL = 1e-8
SEPARATION_MIN = 1e-3
FINGERPRINT_AGREEMENT_TOL = 1e-7
GRADIENT_FD_RTOL = 1e-6
HEAT_RTOL = 1e-6
ODD_THETA_TOL = 1e-10
SYZYGETIC_MAX = 1e-8
AZYGETIC_MIN = 1e-6
FD_STEP = 1e-5
CONDITIONING = 0.3
TOL = 1e-12


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float = 0.0
    metrics: dict = field(default_factory=dict)

    def __post_init__(self):
        self.passed = bool(self.passed)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.title}: {self.detail} ({self.elapsed:.1f}s)"


def _seeds(seed: int, n: int) -> list[int]:
    return [int(s) for s in np.random.default_rng(seed).integers(2**63, size=n)]


def counts(seed: int = 0) -> CriterionResult:
    start = time.perf_counter()
    n_even = len(enumerate_characteristics(3, "even"))
    n_odd = len(enumerate_characteristics(3, "odd"))
    n_bit = bitangent_count(4)
    n_aron = len(enumerate_aronhold_sets(3))
    n_lines = len(extract_bitangents(random_tau(seed)))
    elapsed = time.perf_counter() - start
    ok = (n_even, n_odd, n_bit, n_aron, n_lines) == (36, 28, 28, 288, 28) and elapsed < 5
    return CriterionResult(1, "combinatorial counts", ok,
                           f"even={n_even} odd={n_odd} bitangents(d=4)={n_bit} "
                           f"extracted={n_lines} aronhold={n_aron}", elapsed)


def weber_identity(seed: int = 1, trials: int = 50) -> CriterionResult:
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    evens = enumerate_characteristics(3, "even")
    worst = 0.0
    for s in _seeds(seed, trials):
        tau = random_tau(s, 3, CONDITIONING)
        table = theta_table(tau, TOL, order=1)
        i, j = rng.choice(len(evens), size=2, replace=False)
        m1, m2 = evens[i], evens[j]
        lhs = weber_lhs(m1, m2, table=table)
        rhs = weber_value(extract_bitangents(tau, table=table), m1, m2)
        worst = max(worst, abs(lhs - rhs) / abs(lhs))
    elapsed = time.perf_counter() - start
    ok = worst < WEBER_RTOL and elapsed < 120
    return CriterionResult(2, "Weber identity", ok,
                           f"{trials} trials, max relative residual {worst:.2e} < {WEBER_RTOL:g}",
                           elapsed, {"max_residual": worst})


def _random_complex(rng, size):
    mags = 10.0 ** rng.uniform(-3, 3, size)
    return mags * np.exp(2j * np.pi * rng.uniform(0, 1, size))


def scale_coordinate_independence(seed: int = 2, trials: int = 20) -> CriterionResult:
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst_scale = worst_linear = 0.0
    for s in _seeds(seed, trials):
        b = extract_bitangents(random_tau(s, 3, CONDITIONING), TOL)
        base = fingerprint_from_bitangents(b)
        factors = dict(zip(b.lines, _random_complex(rng, 28)))
        rescaled = b.map_coords(lambda n, v: factors[n] * v)
        worst_scale = max(worst_scale, fingerprint_deviation(base, fingerprint_from_bitangents(rescaled)))
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        worst_linear = max(worst_linear, fingerprint_deviation(base, fingerprint_from_bitangents(b.transform(a))))
    elapsed = time.perf_counter() - start
    ok = worst_scale < INVARIANCE_TOL and worst_linear < INVARIANCE_TOL
    return CriterionResult(3, "scale/coordinate independence", ok,
                           f"rescaling {worst_scale:.2e}, linear substitution {worst_linear:.2e} "
                           f"< {INVARIANCE_TOL:g}", elapsed)


def transformation_collapse(seed: int = 7) -> CriterionResult:
    start = time.perf_counter()
    checks = transform_check(seed, words=10, taus=3, tol=TOL, conditioning=CONDITIONING)
    th = max(c.theta_spread for c in checks)
    gr = max(c.gradient_spread for c in checks)
    ja = max(c.jacobian_spread for c in checks)
    elapsed = time.perf_counter() - start
    ok = max(th, gr, ja) < COLLAPSE_TOL
    return CriterionResult(4, "transformation-law scalar collapse", ok,
                           f"{len(checks)} (word, tau) cases; spreads theta {th:.2e}, "
                           f"gradient {gr:.2e}, jacobian {ja:.2e} < {COLLAPSE_TOL:g}", elapsed)


def theta4_invariance_separation(seed: int = 5) -> CriterionResult:
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    tau = random_tau(_seeds(seed, 1)[0], 3, CONDITIONING)
    base = theta4_map(tau, TOL)
    gens = level2_generators(3)
    worst_inv = 0.0
    for _ in range(5):
        gamma = conditioned_word(rng, gens, tau, max_len=4)
        worst_inv = max(worst_inv, fingerprint_deviation(base, theta4_map(act_tau(gamma, tau), TOL)))
    seeds = _seeds(seed + 1, 40)
    min_sep = min(
        fingerprint_deviation(theta4_map(random_tau(a, 3, CONDITIONING), TOL),
                              theta4_map(random_tau(b, 3, CONDITIONING), TOL))
        for a, b in zip(seeds[::2], seeds[1::2]))
    worst_agree = 0.0
    for s in _seeds(seed + 2, 10):
        t = random_tau(s, 3, CONDITIONING)
        table = theta_table(t, TOL, order=1)
        worst_agree = max(worst_agree, fingerprint_deviation(
            fingerprint_from_bitangents(extract_bitangents(t, table=table)), theta4_map(t, table=table)))
    elapsed = time.perf_counter() - start
    ok = worst_inv < THETA4_INVARIANCE_TOL and min_sep > SEPARATION_MIN and worst_agree < FINGERPRINT_AGREEMENT_TOL
    return CriterionResult(5, "theta^4 invariance and separation", ok,
                           f"level-2 invariance {worst_inv:.2e} < {THETA4_INVARIANCE_TOL:g}; "
                           f"min separation {min_sep:.2e} > {SEPARATION_MIN:g}; "
                           f"bitangent vs theta agreement {worst_agree:.2e} < {FINGERPRINT_AGREEMENT_TOL:g}",
                           elapsed)


def _fd_gradient(m, tau, h=FD_STEP):
    out = np.zeros(3, dtype=complex)
    for j in range(3):
        e = np.zeros(3)
        e[j] = h
        out[j] = (theta(m, tau, e, TOL).value - theta(m, tau, -e, TOL).value) / (2 * h)
    return out


def numerical_suite(seed: int = 6) -> CriterionResult:
    start = time.perf_counter()
    odd = enumerate_characteristics(3, "odd")
    allc = enumerate_characteristics(3)
    fd_worst = heat_worst = odd_worst = syz_worst = 0.0
    azy_min = math.inf
    for s in _seeds(seed, 3):
        tau = random_tau(s, 3, CONDITIONING)
        table = theta_table(tau, TOL, order=1)
        grads = table.gradients
        for n in odd:
            fd = _fd_gradient(n, tau)
            fd_worst = max(fd_worst, np.linalg.norm(fd - grads[n]) / np.linalg.norm(grads[n]))
        scale = max(abs(table.values[m]) for m in allc)
        odd_worst = max(odd_worst, max(abs(table.values[n]) for n in odd) / scale)
        for m in allc[::4]:
            heat_worst = max(heat_worst, heat_check(m, tau, TOL))
        for triple in itertools.combinations(odd, 3):
            d = jacobian_from_gradients(*(grads[n] for n in triple))
            rel = abs(d) * math.pi ** 3 / np.prod([np.linalg.norm(grads[n]) for n in triple])
            if is_azygetic_triple(*triple):
                azy_min = min(azy_min, rel)
            else:
                syz_worst = max(syz_worst, rel)
    elapsed = time.perf_counter() - start
    checks = [
        ("gradient/FD", fd_worst, "<", GRADIENT_FD_RTOL),
        ("heat", heat_worst, "<", HEAT_RTOL),
        ("odd theta", odd_worst, "<", ODD_THETA_TOL),
        ("syzygetic D max", syz_worst, "<", SYZYGETIC_MAX),
        ("azygetic D min", azy_min, ">", AZYGETIC_MIN),
    ]
    parts, ok = [], True
    for name, value, op, bound in checks:
        good = value < bound if op == "<" else value > bound
        ok &= good
        parts.append(f"{name} {value:.2e} {op} {bound:g}" + ("" if good else " FAILED"))
    return CriterionResult(6, "numerical analysis suite", ok, "; ".join(parts), elapsed)


def decision_procedure(seed: int = 8, trials: int = 20) -> CriterionResult:
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    gens = level2_generators(3)
    same = different = 0
    seeds = _seeds(seed, 3 * trials)
    for k in range(trials):
        tau = random_tau(seeds[3 * k], 3, CONDITIONING)
        gamma = conditioned_word(rng, gens, tau, max_len=4)
        moved = extract_bitangents(act_tau(gamma, tau), TOL)
        # undo the automorphy factor, then rescale every line independently
        back = np.linalg.inv(automorphy_factor(gamma, tau))
        factors = dict(zip(moved.lines, _random_complex(rng, 28)))
        mapped = moved.map_coords(lambda n, v: factors[n] * (back @ v))
        if compare_curves(extract_bitangents(tau, TOL), mapped).verdict is Verdict.SAME:
            same += 1
        other_a = extract_bitangents(random_tau(seeds[3 * k + 1], 3, CONDITIONING), TOL)
        other_b = extract_bitangents(random_tau(seeds[3 * k + 2], 3, CONDITIONING), TOL)
        if compare_curves(other_a, other_b).verdict is Verdict.DIFFERENT:
            different += 1
    elapsed = time.perf_counter() - start
    ok = same == trials and different == trials
    return CriterionResult(7, "end-to-end decision procedure", ok,
                           f"SAME {same}/{trials}, DIFFERENT {different}/{trials}", elapsed)


def pair_coverage(seed: int = 0) -> CriterionResult:
    start = time.perf_counter()
    evens = enumerate_characteristics(3, "even")
    failures = []
    for m1, m2 in itertools.permutations(evens, 2):
        try:
            s = aronhold_for_pair(m1, m2)
        except WeberQuarticError:
            failures.append((m1, m2))
            continue
        n = s.members
        if s.sum != m1 or n[0] + n[1] + n[2] != m2:
            failures.append((m1, m2))
    elapsed = time.perf_counter() - start
    total = len(evens) * (len(evens) - 1)
    return CriterionResult(8, "Aronhold pair coverage", not failures,
                           f"{total - len(failures)}/{total} ordered even pairs", elapsed)


CRITERIA: list[Callable[[], CriterionResult]] = [
    counts,
    weber_identity,
    scale_coordinate_independence,
    transformation_collapse,
    theta4_invariance_separation,
    numerical_suite,
    decision_procedure,
    pair_coverage,
]


def run_all(echo: Callable[[str], None] | None = print) -> list[CriterionResult]:
    results = []
    for crit in CRITERIA:
        res = crit()
        if echo:
            echo(res.line())
        results.append(res)
    return results
