"""Command-line front end: ``weberquartic <subcommand> ...``.

Exit codes: 0 success (``compare``: SAME), 1 a checked property failed
(``compare``: DIFFERENT), 2 invalid input, 3 hyperelliptic or degenerate
period matrix, 4 degenerate bitangent configuration, 5 truncation radius
overflow.  With ``--json`` every error is printed as
``{"error": <code>, "message": ...}``.

Tolerances may also be set through ``WEBERQ_TOL``, ``WEBERQ_COMPARE_TOL``,
``WEBERQ_SEED`` and ``WEBERQ_RADIUS_CAP``; command-line flags win.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import acceptance, formats
from .bitangents import extract_bitangents
from .characteristics import Characteristic, aronhold_for_pair, enumerate_aronhold_sets, enumerate_characteristics
from .errors import (DegenerateDenominator, FormatError, HyperellipticOrDegenerate, InvalidCharacteristic,
                     NotPositiveDefinite, NotSymmetric, RadiusOverflow, WeberQuarticError, ZeroGradient)
from .siegel import random_tau
from .theta import DEFAULT_TOL, RADIUS_CAP, theta, theta_table
from .transform import transform_check
from .weber import COMPARE_TOL, Verdict, compare_curves, fingerprint_from_bitangents, weber_lhs, weber_value

log = logging.getLogger("weberquartic")

ENV_PREFIX = "WEBERQ_"

EXIT_CODES = [
    (FormatError, 2),
    (InvalidCharacteristic, 2),
    (NotSymmetric, 2),
    (NotPositiveDefinite, 2),
    (HyperellipticOrDegenerate, 3),
    (ZeroGradient, 3),
    (DegenerateDenominator, 4),
    (RadiusOverflow, 5),
]


class PropertyFailed(WeberQuarticError):
    code = "property_failed"


@dataclass(frozen=True)
class RunConfig:
    tol: float = DEFAULT_TOL
    compare_tol: float = COMPARE_TOL
    seed: int = 0
    radius_cap: int = RADIUS_CAP
    output_path: str | None = None
    json_mode: bool = False

    def __post_init__(self):
        if self.tol <= 0:
            raise FormatError(f"tol must be positive, got {self.tol}")
        if self.compare_tol <= self.tol:
            raise FormatError(f"compare tol {self.compare_tol} must exceed tol {self.tol}")
        if self.radius_cap < 1:
            raise FormatError(f"radius cap must be positive, got {self.radius_cap}")


def _env(name, cast, default):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise FormatError(f"environment variable {ENV_PREFIX + name}={raw!r} is not a valid {cast.__name__}") from None


def config_from_args(args) -> RunConfig:
    def pick(flag, name, cast, default):
        value = getattr(args, flag, None)
        return value if value is not None else _env(name, cast, default)

    return RunConfig(
        tol=pick("tol", "TOL", float, DEFAULT_TOL),
        compare_tol=pick("compare_tol", "COMPARE_TOL", float, COMPARE_TOL),
        seed=pick("seed", "SEED", int, 0),
        radius_cap=pick("radius_cap", "RADIUS_CAP", int, RADIUS_CAP),
        output_path=getattr(args, "output", None),
        json_mode=bool(getattr(args, "json", False)),
    )


def _emit(cfg: RunConfig, text: str):
    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(cfg: RunConfig, obj):
    _emit(cfg, formats.to_text(obj))


def _load_tau(path):
    return formats.load_tau(formats.read_json(path))


def _load_bitangents(path):
    return formats.load_bitangents(formats.read_json(path))


def _table(cfg, tau, order=1):
    return theta_table(tau, cfg.tol, order=order, cap=cfg.radius_cap)


def cmd_random_tau(args, cfg):
    _emit_json(cfg, formats.dump_tau(random_tau(cfg.seed, 3, args.conditioning)))
    return 0


def cmd_bitangents(args, cfg):
    tau = _load_tau(args.tau_file)
    b = extract_bitangents(tau, table=_table(cfg, tau))
    _emit_json(cfg, formats.dump_bitangents(b))
    return 0


def _weber_trials(args, cfg):
    rng = np.random.default_rng(cfg.seed)
    evens = enumerate_characteristics(3, "even")
    if args.tau_file:
        fixed = _load_tau(args.tau_file)
        count = args.random or 10
    else:
        fixed = None
        count = args.random or 50
    for k in range(count):
        tau = fixed if fixed is not None else random_tau(int(rng.integers(2**63)), 3, args.conditioning)
        i, j = rng.choice(len(evens), size=2, replace=False)
        yield k, tau, evens[i], evens[j]


def cmd_weber_verify(args, cfg):
    rows, failed = [], None
    for k, tau, m1, m2 in _weber_trials(args, cfg):
        table = _table(cfg, tau)
        b = extract_bitangents(tau, table=table)
        if args.inject_corruption:
            victim = aronhold_for_pair(m1, m2).members[0]
            b = b.map_coords(lambda n, v: v + np.array([0.0, 0.5 * np.linalg.norm(v), 0.0]) if n == victim else v)
        lhs = weber_lhs(m1, m2, table=table)
        residual = abs(lhs - weber_value(b, m1, m2)) / abs(lhs)
        rows.append({"trial": k, "m1": str(m1), "m2": str(m2), "residual": residual})
        if failed is None and not residual < cfg.compare_tol:
            failed = rows[-1]
    if cfg.json_mode:
        out = {"trials": rows, "compare_tol": cfg.compare_tol, "ok": failed is None}
        if failed is not None:
            out["first_failure"] = failed
        _emit_json(cfg, out)
    else:
        lines = [f"{r['trial']:3d}  {r['m1']}  {r['m2']}  {r['residual']:.3e}" for r in rows]
        if failed is not None:
            lines.append(f"FAILED at trial {failed['trial']}: residual {failed['residual']:.3e} "
                         f">= {cfg.compare_tol:g}")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0 if failed is None else 1


def cmd_fingerprint(args, cfg):
    _emit_json(cfg, formats.dump_fingerprint(fingerprint_from_bitangents(_load_bitangents(args.bitangents_file))))
    return 0


def cmd_compare(args, cfg):
    report = compare_curves(_load_bitangents(args.file_a), _load_bitangents(args.file_b), cfg.compare_tol)
    if cfg.json_mode:
        _emit_json(cfg, formats.dump_report(report))
    else:
        _emit(cfg, f"{report.verdict.value} max_deviation={report.max_deviation:.3e} tol={report.tol:g}\n")
    return 0 if report.verdict is Verdict.SAME else 1


def _parse_char(text):
    try:
        return Characteristic.parse(text)
    except InvalidCharacteristic as exc:
        raise FormatError(str(exc)) from None


def cmd_aronhold(args, cfg):
    if args.action == "enumerate":
        sets = enumerate_aronhold_sets()
    else:
        if not (args.m1 and args.m2):
            raise FormatError("aronhold find needs --m1 and --m2")
        sets = [aronhold_for_pair(_parse_char(args.m1), _parse_char(args.m2))]
    if cfg.json_mode:
        _emit_json(cfg, [{"members": [str(n) for n in s.members], "sum": str(s.sum)} for s in sets])
    else:
        _emit(cfg, "".join(f"{s}\n" for s in sets))
    return 0


def cmd_transform_check(args, cfg):
    checks = transform_check(cfg.seed, words=args.words, taus=args.taus, tol=cfg.tol)
    worst = max(c.worst for c in checks)
    ok = worst < acceptance.COLLAPSE_TOL
    if cfg.json_mode:
        _emit_json(cfg, {"ok": ok, "threshold": acceptance.COLLAPSE_TOL, "cases": [
            {"tau": c.tau_index, "word": [[int(x) for x in row] for row in c.word.matrix], "theta": c.theta_spread,
             "gradient": c.gradient_spread, "jacobian": c.jacobian_spread} for c in checks]})
    else:
        lines = [f"tau {c.tau_index}  theta {c.theta_spread:.2e}  gradient {c.gradient_spread:.2e}  "
                 f"jacobian {c.jacobian_spread:.2e}" for c in checks]
        lines.append(f"{'OK' if ok else 'FAILED'}: worst spread {worst:.2e} "
                     f"(threshold {acceptance.COLLAPSE_TOL:g})")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_theta(args, cfg):
    tau = _load_tau(args.tau)
    m = _parse_char(args.char)
    z = None
    if args.z:
        try:
            z = np.array([formats.complex_from_json(x) for x in json.loads(args.z)])
        except (json.JSONDecodeError, TypeError) as exc:
            raise FormatError(f"--z must be a JSON list of [re, im] pairs: {exc}") from None
    val = theta(m, tau, z, cfg.tol, cap=cfg.radius_cap)
    if cfg.json_mode:
        _emit_json(cfg, {"char": str(m), "value": formats.complex_to_json(val.value),
                         "tail_bound": val.tail_bound, "radius": val.radius_used})
    else:
        _emit(cfg, f"{val.value!r} tail_bound={val.tail_bound:.2e} radius={val.radius_used}\n")
    return 0


def cmd_selftest(args, cfg):
    results = acceptance.run_all(echo=None if cfg.json_mode else print)
    passed = sum(r.passed for r in results)
    if cfg.json_mode:
        _emit_json(cfg, {"passed": passed, "total": len(results), "criteria": [
            {"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail} for r in results]})
    else:
        print(f"{passed}/{len(results)} criteria passed")
    return 0 if passed == len(results) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="theta truncation tolerance (default 1e-12)")
    common.add_argument("--compare-tol", type=float, help="decision tolerance (default 1e-6)")
    common.add_argument("--seed", type=int, help="random seed (default 0)")
    common.add_argument("--radius-cap", type=int, help="hard cap on the truncation radius (default 64)")
    common.add_argument("--json", action="store_true", help="machine-readable output and errors")
    common.add_argument("-o", "--output", help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="weberquartic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("random-tau", parents=[common], help="write a random period matrix")
    p.add_argument("--conditioning", type=float, default=0.3)
    p.set_defaults(func=cmd_random_tau)

    p = sub.add_parser("bitangents", parents=[common], help="28 bitangents of a period matrix")
    p.add_argument("tau_file")
    p.set_defaults(func=cmd_bitangents)

    p = sub.add_parser("weber-verify", parents=[common], help="check Weber's formula numerically")
    p.add_argument("tau_file", nargs="?")
    p.add_argument("--random", type=int, metavar="N", help="number of trials")
    p.add_argument("--conditioning", type=float, default=0.3)
    p.add_argument("--inject-corruption", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_weber_verify)

    p = sub.add_parser("fingerprint", parents=[common], help="theta^4 fingerprint from bitangents")
    p.add_argument("bitangents_file")
    p.set_defaults(func=cmd_fingerprint)

    p = sub.add_parser("compare", parents=[common], help="SAME/DIFFERENT for two bitangent files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("aronhold", parents=[common], help="Aronhold sets")
    p.add_argument("action", choices=["enumerate", "find"])
    p.add_argument("--m1")
    p.add_argument("--m2")
    p.set_defaults(func=cmd_aronhold)

    p = sub.add_parser("transform-check", parents=[common], help="modular transformation checks")
    p.add_argument("--words", type=int, default=10)
    p.add_argument("--taus", type=int, default=3)
    p.set_defaults(func=cmd_transform_check)

    p = sub.add_parser("theta", parents=[common], help="evaluate a theta function")
    p.add_argument("action", choices=["eval"])
    p.add_argument("--char", required=True, help='characteristic such as "101|010"')
    p.add_argument("--tau", required=True, help="period matrix JSON file")
    p.add_argument("--z", help="JSON list of [re, im] pairs (default: origin)")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    p.set_defaults(func=cmd_selftest)
    return parser


def _exit_code(exc: WeberQuarticError) -> int:
    for cls, code in EXIT_CODES:
        if isinstance(exc, cls):
            return code
    return 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    json_mode = bool(getattr(args, "json", False))
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        return args.func(args, cfg)
    except WeberQuarticError as exc:
        code = _exit_code(exc)
        if json_mode:
            sys.stdout.write(json.dumps({"error": exc.code, "exit_code": code, "message": str(exc)}) + "\n")
        else:
            sys.stderr.write(f"error ({exc.code}): {exc}\n")
        return code


if __name__ == "__main__":
    sys.exit(main())
