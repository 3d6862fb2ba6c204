"""Command-line interface: ``tthue <subcommand> ...``, one JSON object per output line.

Exit codes: 0 success, 1 a check failed or no certificate was produced,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import enum
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from . import analysis, bounds, cubic_field, search
from .numerics import Dyadic, NumericsError, PrecisionPolicy, RealEnclosure, Status, parse_rational
from .twisted_form import evaluate_form, form_coeffs

log = logging.getLogger("twisted_thue")

SAFE_INT = 2 ** 53


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    bits: int = 128
    max_bits: int = 16384
    epsilon: Optional[Fraction] = None
    constants: bounds.BoundConstants = field(default_factory=bounds.BoundConstants)
    output: Optional[str] = None

    def policy(self) -> PrecisionPolicy:
        return PrecisionPolicy(self.bits, max(self.max_bits, self.bits))


def _positive_int(key, text) -> int:
    try:
        value = int(str(text).strip())
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {text!r}") from None
    if value < 1:
        raise ConfigError(f"{key}: must be positive")
    return value


def _rational(key, text) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise ConfigError(f"{key}: {exc}") from None


def read_config_file(path: str) -> Dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for number, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{number}: expected key=value")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


CONST_KEYS = ("c2", "c3", "c4", "c5", "C_cu")


def build_config(file_values: Dict[str, str], flags: Dict[str, Optional[str]], env=None) -> RunConfig:
    """Defaults, then TTHUE_BITS for the precision default, then the config file, then flags."""
    env = os.environ if env is None else env
    cfg = RunConfig()
    if env.get("TTHUE_BITS"):
        cfg.bits = _positive_int("TTHUE_BITS", env["TTHUE_BITS"])
    merged = dict(file_values)
    merged.update({k: v for k, v in flags.items() if v is not None})
    consts = {}
    for key, value in merged.items():
        if key == "bits":
            cfg.bits = _positive_int(key, value)
        elif key == "max_bits":
            cfg.max_bits = _positive_int(key, value)
        elif key == "epsilon":
            cfg.epsilon = _rational(key, value)
            if cfg.epsilon <= 0:
                raise ConfigError("epsilon must be positive")
        elif key in CONST_KEYS:
            consts[key] = _rational(key, value)
        elif key == "output":
            cfg.output = value
        else:
            raise ConfigError(f"unknown config key {key!r}")
    try:
        cfg.constants = bounds.BoundConstants(**consts)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


# ---------------------------------------------------------------------------
# serialisation


def to_json(obj):
    """Convert results to JSON-safe values; big integers become decimal strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, int):
        return str(obj) if abs(obj) > SAFE_INT else obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 else to_json(obj.numerator)
    if isinstance(obj, Dyadic):
        return str(obj)
    if isinstance(obj, RealEnclosure):
        return {"lo": str(obj.lo), "hi": str(obj.hi)}
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set)):
        return [to_json(v) for v in obj]
    return str(obj)


def parse_enclosure(data) -> RealEnclosure:
    return RealEnclosure(Dyadic.parse(data["lo"]), Dyadic.parse(data["hi"]))


class Emitter:
    def __init__(self, stream):
        self.stream = stream

    def __call__(self, obj) -> None:
        self.stream.write(json.dumps(to_json(obj), sort_keys=True, separators=(",", ":")) + "\n")


def record_dict(r: analysis.SolutionRecord) -> Dict:
    return {
        "n": r.n, "s": r.s, "t": r.t, "x": r.x, "y": r.y,
        "j": r.j, "k": r.k, "l": r.l, "u": r.u, "v": r.v,
        "alpha_order": r.alpha_order,
        "certified": r.certified,
        "note": r.note,
        "beta": r.beta_enclosures,
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_roots(args, cfg, emit) -> int:
    policy = cfg.policy()
    roots = cubic_field.compute_roots(args.n, policy)
    logs = cubic_field.logs_at(args.n, roots.bits)
    emit({
        "n": args.n, "bits": roots.bits, "converged": roots.converged,
        "lam0": roots.lam0, "lam1": roots.lam1, "lam2": roots.lam2,
        "log_lam0": logs[0], "log_abs_lam1": logs[1], "log_abs_lam2": logs[2],
    })
    return 0


def cmd_form(args, cfg, emit) -> int:
    c = form_coeffs(args.n, args.s, args.t)
    emit({"n": args.n, "s": args.s, "t": args.t, "e1": c.e1, "e2": c.e2, "e3": c.e3})
    return 0


def cmd_eval(args, cfg, emit) -> int:
    value = evaluate_form(args.n, args.s, args.t, args.x, args.y)
    emit({"n": args.n, "s": args.s, "t": args.t, "x": args.x, "y": args.y, "value": value, "solution": abs(value) == 1})
    return 0


def cmd_search(args, cfg, emit) -> int:
    eps = args.epsilon_value
    grid = search.SearchGrid(
        (args.n_min, args.n_max), (args.s_min, args.s_max), (args.t_min, args.t_max),
        args.y_max, args.window,
        analysis.Epsilon(eps) if eps is not None else None,
        args.require_condition, args.skip_zero,
    )
    result = search.enumerate_solutions(grid, cfg.policy(), args.workers)
    for r in result.records:
        emit(record_dict(r))
    emit({"stats": result.stats, "strategy": result.strategy})
    return 0


def cmd_classify(args, cfg, emit) -> int:
    r = analysis.classify_solution(args.x, args.y, args.n, args.s, args.t, cfg.policy())
    emit(record_dict(r))
    return 0 if r.certified else 1


def cmd_decompose(args, cfg, emit) -> int:
    d = analysis.decompose_beta(args.x, args.y, args.n, args.s, args.t, cfg.policy())
    emit({
        "n": args.n, "s": args.s, "t": args.t, "x": args.x, "y": args.y,
        "sign": d.word.sign, "a": d.a, "b": d.b, "exact_verified": d.exact_verified, "bits": d.bits,
    })
    return 0 if d.exact_verified else 1


def cmd_lform(args, cfg, emit) -> int:
    policy = cfg.policy()
    r = analysis.classify_solution(args.x, args.y, args.n, args.s, args.t, policy)
    rep = analysis.linear_form(r, args.kind, policy, eps=args.epsilon_value)
    emit({
        "kind": rep.kind, "A": rep.coeff_lam0, "B": rep.coeff_lam2, "C": rep.coeff_log2,
        "enclosure": rep.enclosure, "upper_bound": rep.upper_bound,
        "nonzero_certified": rep.nonzero_certified, "branch": rep.branch, "status": rep.status,
    })
    return 0 if rep.status is Status.PASS else 1


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ConfigError(f"--lemma {args.lemma} needs " + ", ".join("--" + m.replace("_", "-") for m in missing))


def cmd_verify(args, cfg, emit) -> int:
    policy = cfg.policy()
    name = args.lemma
    eps = args.epsilon_value
    if name == "root_brackets":
        _need(args, "n")
        report = cubic_field.verify_root_brackets(args.n, policy)
    elif name == "root_log_brackets":
        _need(args, "n")
        report = cubic_field.verify_root_log_brackets(args.n, policy)
    else:
        params = {}
        if name in ("alphadiff", "alphamax"):
            _need(args, "n", "s", "t")
            if eps is None:
                raise ConfigError(f"--lemma {name} needs --epsilon")
            params = dict(n=args.n, s=args.s, t=args.t, eps=eps)
        elif name == "prodbymax":
            _need(args, "a", "b", "c")
            params = dict(a=_rational("a", args.a), b=_rational("b", args.b), c=_rational("c", args.c))
        elif name in ("alphasalad", "coeff_ub_theta"):
            _need(args, "n", "s", "t", "x", "y")
            params = dict(n=args.n, s=args.s, t=args.t, x=args.x, y=args.y, c_cu=cfg.constants.C_cu)
        else:
            raise ConfigError(f"unknown lemma {name!r}")
        try:
            report = analysis.verify_lemma(name, policy, **params)
        except analysis.HypothesisViolated as exc:
            emit({"check": name, "status": "hypothesis_violated", "reason": str(exc)})
            return 1
    emit(report.to_dict())
    return 0 if report.passed else 1


def cmd_bounds(args, cfg, emit) -> int:
    logy = None
    if args.logy is not None:
        logy = RealEnclosure.coerce(_rational("logy", args.logy), cfg.bits)
    rep = bounds.derived_bounds(args.n, args.tau, cfg.constants, logy, bits=cfg.bits)
    emit({
        "n": args.n, "tau": args.tau, "t_count": args.t_count,
        "baker_constant": bounds.baker_constant(args.t_count, 3, cfg.bits),
        "logy_ub": rep.logy_ub, "tau_ub": rep.tau_ub, "logy_by_n": rep.logy_by_n, "coeff_by_n": rep.coeff_by_n,
        "holds": rep.holds,
    })
    return 0 if all(v is True for v in rep.holds.values()) else 1


def cmd_condition(args, cfg, emit) -> int:
    eps = args.epsilon_value
    if eps is None:
        raise ConfigError("condition needs --epsilon")
    tau = max(abs(args.s), abs(args.t))
    emit({
        "s": args.s, "t": args.t, "epsilon": eps, "tau": tau,
        "min": analysis.separation(args.s, args.t), "eps_tau": eps * tau,
        "holds": analysis.check_condition(args.s, args.t, eps),
    })
    return 0


# ---------------------------------------------------------------------------
# parser


def _ints(p, *names, required=True):
    for name in names:
        p.add_argument("--" + name.replace("_", "-"), dest=name, type=int, required=required)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--bits", help="starting precision in bits")
    common.add_argument("--max-bits", dest="max_bits", help="largest precision tried")
    common.add_argument("--epsilon", help="epsilon as p/q")
    common.add_argument("--output", help="write JSONL here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="tthue", description="Twisted Thue equation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", parents=[common], help="root and log enclosures")
    _ints(p, "n")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("form", parents=[common], help="coefficients of F")
    _ints(p, "n", "s", "t")
    p.set_defaults(func=cmd_form)

    p = sub.add_parser("eval", parents=[common], help="evaluate F(x, y)")
    _ints(p, "n", "s", "t", "x", "y")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("search", parents=[common], help="windowed solution search")
    _ints(p, "n_min", "n_max", "s_min", "s_max", "t_min", "t_max", "y_max")
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--require-condition", dest="require_condition", action="store_true")
    p.add_argument("--skip-zero", dest="skip_zero", action="store_true", help="drop twists with st = 0")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("classify", parents=[common], help="classify a solution")
    _ints(p, "n", "s", "t", "x", "y")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", parents=[common], help="write beta_0 as a unit word")
    _ints(p, "n", "s", "t", "x", "y")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("lform", parents=[common], help="evaluate a linear form in logarithms")
    _ints(p, "n", "s", "t", "x", "y")
    p.add_argument("--kind", choices=[k.value for k in analysis.LinearFormKind], default="LAMBDA")
    p.set_defaults(func=cmd_lform)

    p = sub.add_parser("verify", parents=[common], help="certify a lemma instance")
    p.add_argument("--lemma", required=True, choices=list(analysis.LEMMAS) + ["root_brackets", "root_log_brackets"])
    _ints(p, "n", "s", "t", "x", "y", required=False)
    for name in ("a", "b", "c"):
        p.add_argument("--" + name, dest=name, help="rational p/q")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", parents=[common], help="Baker constant and derived bounds")
    _ints(p, "n", "t_count", "tau")
    p.add_argument("--logy", help="log|y| as p/q")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("condition", parents=[common], help="admissibility of (s, t)")
    _ints(p, "s", "t")
    p.set_defaults(func=cmd_condition)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        file_values = read_config_file(args.config) if args.config else {}
        cfg = build_config(
            file_values,
            {"bits": args.bits, "max_bits": args.max_bits, "epsilon": args.epsilon, "output": args.output},
        )
    except ConfigError as exc:
        print(f"tthue: {exc}", file=sys.stderr)
        return 2
    args.epsilon_value = cfg.epsilon
    stream = open(cfg.output, "w") if cfg.output else sys.stdout
    try:
        return args.func(args, cfg, Emitter(stream))
    except (ConfigError, cubic_field.ParameterError) as exc:
        print(f"tthue: {exc}", file=sys.stderr)
        return 2
    except (analysis.AnalysisError, analysis.DecompositionError, NumericsError, search.GuardError) as exc:
        print(f"tthue: {exc}", file=sys.stderr)
        return 1
    finally:
        if stream is not sys.stdout:
            stream.close()


def main() -> None:
    sys.exit(run())
