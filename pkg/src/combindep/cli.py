"""Command line front end.

Every command prints one JSON document (or CSV with ``--format csv``) to
stdout or ``--out``.  Exit codes: 0 success, 1 bad input, 2 budget or
horizon exceeded, 3 internal invariant violated.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from fractions import Fraction

from . import constructions as con
from . import serialize as io
from .covers import comb_entropy_profile, f_s
from .errors import BudgetError, FormatError, HorizonError, InvariantError
from .independence import IndependenceProblem, density_profile, is_independence_set, max_independence_subset
from .search import DEFAULT_SEARCH_BOUND
from .shattering import count_shattered, key_lemma_witness, km_witness, largest_shattered
from .sweeps import SWEEPS, run_sweep
from .symbolic import format_word

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3


@dataclasses.dataclass
class RunConfig:
    command: str = ""
    inputs: list = dataclasses.field(default_factory=list)
    search_bound: int = DEFAULT_SEARCH_BOUND
    budget: int | None = None
    horizon: int | None = None
    format: str = "json"
    seed: int | None = None
    out: str | None = None

    def __post_init__(self):
        for name in ("search_bound", "budget", "horizon"):
            v = getattr(self, name)
            if v is not None and (isinstance(v, bool) or not isinstance(v, int) or v <= 0):
                raise FormatError(f"{name} must be a positive integer")
        if self.format not in ("json", "csv"):
            raise FormatError("format must be json or csv")

    @classmethod
    def from_mapping(cls, doc: dict) -> "RunConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(doc) - known)
        if unknown:
            raise FormatError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**doc)


def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text}") from None


def _parser():
    # SUPPRESS keeps nested subparsers from resetting flags given earlier
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--budget", type=_positive, help="node budget for exact searches")
    common.add_argument("--search-bound", type=_positive, help="largest window a subset search may scan")
    common.add_argument("--horizon", type=_positive, help="refuse windows longer than this")
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="write here instead of stdout")
    common.add_argument("--config", help="JSON file with RunConfig fields")

    ap = argparse.ArgumentParser(prog="combindep", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lang", parents=[common], help="words of length n")
    p.add_argument("spec")
    p.add_argument("n", type=int)

    p = sub.add_parser("indep", parents=[common], help="independence sets of a clopen tuple")
    p.add_argument("spec")
    p.add_argument("tuple")
    modes = p.add_subparsers(dest="mode", required=True)
    m = modes.add_parser("check", parents=[common])
    m.add_argument("positions", type=int, nargs="*")
    m = modes.add_parser("max", parents=[common])
    m.add_argument("a", type=int)
    m.add_argument("b", type=int)
    m = modes.add_parser("profile", parents=[common])
    m.add_argument("n_max", type=int)

    p = sub.add_parser("entropy", parents=[common], help="minimal subcover counts of iterated joins")
    p.add_argument("spec")
    p.add_argument("tuple")
    p.add_argument("n_max", type=int)

    p = sub.add_parser("shatter", parents=[common], help="trace set combinatorics")
    p.add_argument("trace")
    modes = p.add_subparsers(dest="mode", required=True)
    modes.add_parser("fs", parents=[common])
    modes.add_parser("hs", parents=[common])
    modes.add_parser("largest", parents=[common])
    m = modes.add_parser("km", parents=[common])
    m.add_argument("lam", type=_fraction)
    m = modes.add_parser("keylemma", parents=[common])
    m.add_argument("b", type=_fraction)

    p = sub.add_parser("toeplitz", parents=[common], help="the Toeplitz construction")
    modes = p.add_subparsers(dest="mode", required=True)
    m = modes.add_parser("build", parents=[common])
    m.add_argument("--levels", type=int, required=True)
    m = modes.add_parser("verify", parents=[common])
    m.add_argument("spec", help="spec file or corpus name such as toeplitz_level3")
    for name in ("window", "lemmas"):
        m = modes.add_parser(name, parents=[common])
        m.add_argument("spec")
        m.add_argument("a", type=int)
        m.add_argument("b", type=int)

    p = sub.add_parser("sweep", parents=[common], help="seeded randomized property sweeps")
    p.add_argument("name", choices=SWEEPS)
    p.add_argument("--count", type=_positive, default=100)
    return ap


def _config(args) -> RunConfig:
    base = {}
    if getattr(args, "config", None):
        doc = io.read_json(args.config)
        if not isinstance(doc, dict):
            raise FormatError("config must be a JSON object")
        base = dict(doc)
    cfg = RunConfig.from_mapping(base)
    for name in ("budget", "search_bound", "horizon", "format", "seed", "out"):
        v = getattr(args, name, None)
        if v is not None:
            setattr(cfg, name, v)
    cfg.command = args.command
    cfg.__post_init__()
    return cfg


def _limit(cfg, span, what="window"):
    if cfg.horizon is not None and span > cfg.horizon:
        raise HorizonError(span, cfg.horizon, what)


def _load_tuple(spec, path):
    k, sets = io.tuple_from_json(io.read_json(path))
    if k != spec.alphabet:
        raise FormatError(f"tuple alphabet {k} does not match subshift alphabet {spec.alphabet}")
    try:
        return IndependenceProblem(spec, sets)
    except ValueError as e:
        raise FormatError(str(e)) from None


def _load_toeplitz(name):
    if name in io.CORPUS:
        return io.load_corpus(name)
    return io.toeplitz_from_json(io.read_json(name))


def _cover_budget(cfg):
    """``--budget`` caps both branch-and-bound nodes and instance size."""
    if cfg.budget is None:
        return {}
    return {"max_nodes": cfg.budget, "max_incidences": cfg.budget}


def _csv(header, rows):
    lines = [",".join(header)] + [",".join(str(v) for v in r) for r in rows]
    return "\n".join(lines) + "\n"


def cmd_lang(cfg, args):
    spec = io.subshift_from_json(io.read_json(args.spec))
    if args.n < 1:
        raise FormatError(f"n must be positive, got {args.n}")
    _limit(cfg, args.n)
    words = sorted(format_word(w) for w in spec.language(args.n))
    if cfg.format == "csv":
        return "\n".join(words) + "\n"
    return {"n": args.n, "count": len(words), "words": words}


def cmd_indep(cfg, args):
    spec = io.subshift_from_json(io.read_json(args.spec))
    p = _load_tuple(spec, args.tuple)
    if args.mode == "check":
        pos = sorted(set(args.positions))
        if pos:
            _limit(cfg, pos[-1] - pos[0] + 1)
        return {"independent": is_independence_set(p, pos), "set": pos}
    if args.mode == "max":
        if args.b <= args.a:
            raise FormatError("empty interval")
        _limit(cfg, args.b - args.a)
        best = max_independence_subset(p, (args.a, args.b), search_bound=cfg.search_bound)
        return {"interval": [args.a, args.b], "best": list(best), "size": len(best)}
    if args.n_max < 1:
        raise FormatError("n_max must be positive")
    _limit(cfg, args.n_max)
    prof = density_profile(p, args.n_max, search_bound=cfg.search_bound)
    if cfg.format == "csv":
        return prof.to_csv()
    return {
        "hint": prof.hint,
        "rows": [{"n": n, "best": b, "ratio": float(r)} for n, b, r in prof.rows],
        "csv": prof.to_csv(),
    }


def cmd_entropy(cfg, args):
    spec = io.subshift_from_json(io.read_json(args.spec))
    k, sets = io.tuple_from_json(io.read_json(args.tuple))
    if k != spec.alphabet:
        raise FormatError(f"tuple alphabet {k} does not match subshift alphabet {spec.alphabet}")
    if args.n_max < 1:
        raise FormatError("n_max must be positive")
    _limit(cfg, args.n_max + 1)
    try:
        prof = comb_entropy_profile(spec, sets, args.n_max, **_cover_budget(cfg))
    except ValueError as e:
        raise FormatError(str(e)) from None
    rows = [(n, count, float(rate)) for n, count, rate in prof.rows]
    if cfg.format == "csv":
        return _csv(("n", "count", "rate"), rows)
    return {"log_base": "e", "rows": [{"n": n, "count": c, "rate": r} for n, c, r in rows]}


def cmd_shatter(cfg, args):
    s = io.trace_from_json(io.read_json(args.trace))
    bound = cfg.search_bound
    if args.mode == "fs":
        if s.k < 2:
            raise FormatError("F_S needs k >= 2")
        return {"F_S": f_s(s, **_cover_budget(cfg))}
    if args.mode == "hs":
        return {"H_S": count_shattered(s, search_bound=bound)}
    if args.mode == "largest":
        w = largest_shattered(s, search_bound=bound)
        return {"largest": list(w), "size": len(w)}
    if args.mode == "km":
        try:
            w = km_witness(s, args.lam)
        except ValueError as e:
            raise FormatError(str(e)) from None
        return {"lambda": str(args.lam), "holds": w is not None, "witness": None if w is None else list(w)}
    if s.k < 2:
        raise FormatError("the key lemma needs k >= 2")
    r = key_lemma_witness(s, args.b, **_cover_budget(cfg))
    c = r.constants
    return {
        "b": str(args.b),
        "hypothesis": r.holds_hypothesis,
        "F_S": r.f_s,
        "bound": r.bound,
        "witness": None if r.w is None else list(r.w),
        "ratio": None if r.ratio is None else str(r.ratio),
        "constants": None
        if c is None
        else {"lambda": str(c.lam), "b1": c.b1, "b2": c.b2, "t": c.t, "c": str(c.c), "enforced": list(c.enforced)},
        "meets_c": r.meets_c,
    }


def cmd_toeplitz(cfg, args):
    if args.mode == "build":
        if args.levels < 1:
            raise FormatError("levels must be at least 1")
        budget = getattr(args, "budget", con.DEFAULT_BUILD_BUDGET)
        spec = con.build_toeplitz(args.levels, budget=budget)
        if not con.verify_toeplitz(spec).ok:
            raise InvariantError("builder produced data failing verification")
        return io.toeplitz_to_json(spec)
    spec = _load_toeplitz(args.spec)
    if args.mode == "verify":
        rep = con.verify_toeplitz(spec)
        return {
            "ok": rep.ok,
            "checks": list(rep.checks),
            "violations": [dataclasses.asdict(v) for v in rep.violations],
        }
    if args.b <= args.a:
        raise FormatError("empty window")
    _limit(cfg, args.b - args.a)
    if args.mode == "window":
        w = con.toeplitz_window(spec, args.a, args.b)
        if cfg.format == "csv":
            return _csv(("position", "value", "certain"), [(args.a + i, v, int(c)) for i, (v, c) in enumerate(zip(w.values, w.certain))])
        return {"window": [args.a, args.b], "digits": w.digits, "mask": w.mask}
    rep = con.check_toeplitz_lemmas(spec, (args.a, args.b))
    return {
        "window": [args.a, args.b],
        "ok": rep.ok,
        "lemmas": [{"name": r.name, "instances": r.instances, "counterexamples": r.counterexamples} for r in rep.results],
    }


def cmd_sweep(cfg, args):
    out = run_sweep(args.name, args.count, cfg.seed)
    out["ok"] = not out["violations"]
    return out


COMMANDS = {
    "lang": cmd_lang,
    "indep": cmd_indep,
    "entropy": cmd_entropy,
    "shatter": cmd_shatter,
    "toeplitz": cmd_toeplitz,
    "sweep": cmd_sweep,
}


def _emit(cfg, result):
    text = result if isinstance(result, str) else io.dumps(result)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        cfg = _config(args)
        result = COMMANDS[args.command](cfg, args)
        _emit(cfg, result)
    except BudgetError as e:
        print(f"combindep: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except HorizonError as e:
        print(f"combindep: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantError as e:
        print(f"combindep: internal invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (FormatError, ValueError, TypeError, OSError) as e:
        print(f"combindep: {e}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
