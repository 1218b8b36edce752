"""Command-line frontend.

Exit codes: 0 pass, 1 counterexample or failed verification, 2 usage or
internal error. ``MATCHBOX_THREADS`` caps the worker threads used by checks.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import catalog
from .axioms import check, dumps_report, report
from .errors import CapExceeded, MatchboxError
from .exactalg import LinComb, as_rational
from .freedend import FreeDendriform, dend_bullet, dend_prec, dend_succ
from .operators import MatTensor, aybe_search, paybe_residual, parse_support, swap_condition
from .prelie import RootedPreLie, prelie_star
from .structures import RBFamily
from .transforms import STEPS
from .trees import (count_pbt, enumerate_pbt, enumerate_rooted, parse_pbt, parse_rooted, pbt_from_json,
                    rooted_from_json, rooted_single, single)

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
DEFAULT_CAP = 7


class UsageError(MatchboxError):
    pass


def _list(text: str | None) -> list[str]:
    return [t.strip() for t in (text or "").split(",") if t.strip()]


def _emit(data: Any) -> None:
    sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")


def _write_report(path: str | None, data: Any) -> None:
    if path:
        Path(path).write_text(dumps_report(data))


# ---------------------------------------------------------------------------
# enumerate


def cmd_enumerate(args) -> int:
    if args.n < 0:
        raise UsageError("n must be nonnegative")
    if args.n > args.cap:
        raise CapExceeded(f"n={args.n} exceeds the cap {args.cap}; raise it with --cap")
    D, O = _list(args.D), _list(args.O)
    if args.kind == "pbt":
        trees = enumerate_pbt(args.n, D, O)
    else:
        trees = enumerate_rooted(args.n, D, O) if args.n else []
    for t in trees:
        print(t)
    print(f"count: {len(trees)}")
    if args.kind == "pbt":
        print(f"formula: {count_pbt(args.n, len(D), len(O))}")
    return EXIT_PASS


# ---------------------------------------------------------------------------
# mul


def _element(text: str, kind: str) -> LinComb:
    text = text.strip()
    if text.startswith("{"):
        key_from_json = pbt_from_json if kind == "dend" else rooted_from_json
        return LinComb.from_json(json.loads(text), key_from_json)
    if kind == "dend":
        tree = parse_pbt(text) if text.startswith(("B(", "|")) else single(text)
    else:
        tree = parse_rooted(text) if text.startswith("R(") else rooted_single(text)
    return LinComb.basis(tree)


def cmd_mul(args) -> int:
    x, y = _element(args.lhs, args.algebra), _element(args.rhs, args.algebra)
    D, O = _list(args.D), _list(args.O)
    if args.algebra == "dend":
        if D and O:
            alg = FreeDendriform(D, O)
            op = {"prec": alg.prec, "succ": alg.succ, "bullet": alg.bullet}[args.op]
        else:
            op = {"prec": dend_prec, "succ": dend_succ, "bullet": dend_bullet}[args.op]
        result = op(x, y, args.omega)
    else:
        result = RootedPreLie(D, O).star(x, y, args.type) if D and O else prelie_star(x, y, args.type)
    _emit(result.to_json())
    return EXIT_PASS


# ---------------------------------------------------------------------------
# check and pipeline


def _declared_axioms(s) -> str:
    if s.axioms is None:
        raise UsageError(f"{s.name} declares no axiom set; pass --axioms")
    return s.axioms


def _run_check(s, axioms: str, args):
    mode = "exhaustive" if args.exhaustive else "random"
    return check(s, axioms, mode=mode, seed=args.seed, trials=args.trials)


def _summary(verdict) -> str:
    line = (f"{verdict.structure} vs {verdict.axiom_set}: {'PASS' if verdict.passed else 'FAIL'} "
            f"({verdict.mode}, {verdict.instances} instances)")
    if verdict.witness is not None:
        w = verdict.witness
        line += f" witness {w.identity} at ({w.alpha}, {w.beta})"
    return line


def _apply_steps(s, steps: Sequence[str]):
    for step in steps:
        if step not in STEPS:
            raise UsageError(f"unknown step {step!r}; known: {sorted(STEPS)}")
        fn = STEPS[step]
        if isinstance(s, RBFamily) != (step in ("dend", "tridend", "rblie", "rbprelie", "rbpostlie")):
            raise UsageError(f"step {step!r} does not apply to {s.name}")
        s = fn(s) if isinstance(s, RBFamily) else fn(s, check_input=False)
        yield step, s


def cmd_check(args) -> int:
    s = catalog.build(args.structure)
    for _, s in _apply_steps(s, _list(args.steps)):
        pass
    verdict = _run_check(s, args.axioms or _declared_axioms(s), args)
    print(_summary(verdict))
    _write_report(args.report, report(verdict, s))
    return EXIT_PASS if verdict.passed else EXIT_FAIL


def cmd_pipeline(args) -> int:
    s = catalog.build(getattr(args, "from"))
    verdict = _run_check(s, _declared_axioms(s), args)
    print(f"[source] {_summary(verdict)}")
    stages = [dict(report(verdict, s), step="source")]
    if verdict.passed:
        for step, s in _apply_steps(s, _list(args.steps)):
            verdict = _run_check(s, _declared_axioms(s), args)
            print(f"[{step}] {_summary(verdict)}")
            stages.append(dict(report(verdict, s), step=step))
            if not verdict.passed:
                break
    passed = all(st["verdict"] == "pass" for st in stages)
    _write_report(args.report, {"source": getattr(args, "from"), "steps": _list(args.steps),
                                "stages": stages, "verdict": "pass" if passed else "fail"})
    return EXIT_PASS if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# aybe


def _tensor(text: str, dim: int | None) -> MatTensor:
    path = Path(text)
    data = json.loads(path.read_text() if not text.lstrip().startswith("[") and path.exists() else text)
    if not data:
        if dim is None:
            raise UsageError("an empty tensor needs --dim")
        return MatTensor(dim)
    return MatTensor.from_json(data)


def cmd_aybe_search(args) -> int:
    grid = [as_rational(g) for g in _list(args.grid)]
    found = aybe_search(args.dim, parse_support(args.support), grid, weight=args.weight, family=args.family,
                        cap=args.cap)
    if args.family:
        payload = {"pairs": [[r.to_json(), s.to_json()] for r, s in found]}
    else:
        payload = {"solutions": [r.to_json() for r in found]}
    payload.update(dim=args.dim, weight=str(as_rational(args.weight)), count=len(found))
    _emit(payload)
    return EXIT_PASS


def cmd_aybe_verify(args) -> int:
    r = _tensor(args.r, args.dim)
    s = _tensor(args.s, args.dim) if args.s else r
    solves = paybe_residual(r, s, args.weight).is_zero()
    swap = swap_condition(r, s)
    _emit({"residual_zero": solves, "swap_condition": swap})
    return EXIT_PASS if solves and swap else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def _add_check_options(p: argparse.ArgumentParser) -> None:
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="sweep the full basis pool")
    mode.add_argument("--seed", type=int, default=0, help="seed for random sampling (default 0)")
    p.add_argument("--trials", type=int, default=200, help="random triples per check (default 200)")
    p.add_argument("--report", help="write a JSON report to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matchbox", description="Matching algebraic structures over Q.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list typed decorated trees with n vertices")
    p.add_argument("--kind", choices=("pbt", "rooted"), default="pbt")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-D", default="a", help="decoration alphabet, comma separated")
    p.add_argument("-O", default="alpha,beta", help="type alphabet, comma separated")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("mul", help="products in the free algebras")
    msub = p.add_subparsers(dest="algebra", required=True)
    d = msub.add_parser("dend")
    d.add_argument("--op", choices=("prec", "succ", "bullet"), required=True)
    d.add_argument("--omega", required=True)
    q = msub.add_parser("prelie")
    q.add_argument("--type", required=True)
    for m in (d, q):
        m.add_argument("--lhs", required=True, help="tree text, a bare decoration, or LinComb JSON")
        m.add_argument("--rhs", required=True)
        m.add_argument("-D", help="validate against this decoration alphabet")
        m.add_argument("-O", help="validate against this type alphabet")
        m.set_defaults(func=cmd_mul)

    p = sub.add_parser("check", help="check a structure against an axiom set")
    p.add_argument("--structure", required=True, help="name[:key=value;...]")
    p.add_argument("--axioms", help="axiom set (default: the one the structure declares)")
    p.add_argument("--steps", help="transforms to apply first, comma separated")
    _add_check_options(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("pipeline", help="apply transforms and check every stage")
    p.add_argument("--from", required=True, help="source structure name[:key=value;...]")
    p.add_argument("--steps", default="", help=f"comma separated, from {','.join(STEPS)}")
    _add_check_options(p)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("aybe", help="polarized associative Yang-Baxter equation")
    asub = p.add_subparsers(dest="action", required=True)
    a = asub.add_parser("search")
    a.add_argument("--dim", type=int, default=2)
    a.add_argument("--weight", default="0")
    a.add_argument("--grid", default="-1,0,1")
    a.add_argument("--support", required=True, help="matrix unit pairs like 12:12,11:22 (1-based)")
    a.add_argument("--family", action="store_true", help="search solution pairs instead")
    a.add_argument("--cap", type=int, default=10_000)
    a.set_defaults(func=cmd_aybe_search)
    v = asub.add_parser("verify")
    v.add_argument("--r", required=True, help="tensor JSON or a path to it")
    v.add_argument("--s", help="second tensor (default: r)")
    v.add_argument("--weight", default="0")
    v.add_argument("--dim", type=int)
    v.set_defaults(func=cmd_aybe_verify)
    return parser


_ALIASES = {("dend", "mul"): ["mul", "dend"], ("prelie", "mul"): ["mul", "prelie"]}
_SIGNED_VALUES = ("--grid", "--weight")


def _join_signed_values(argv: list[str]) -> list[str]:
    # argparse reads "--grid -1,0,1" as two options; glue such values on with "="
    out: list[str] = []
    it = iter(argv)
    for arg in it:
        if arg in _SIGNED_VALUES:
            value = next(it, None)
            out.append(arg if value is None else f"{arg}={value}")
        else:
            out.append(arg)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if tuple(argv[:2]) in _ALIASES:
        argv = _ALIASES[tuple(argv[:2])] + argv[2:]
    argv = _join_signed_values(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except (MatchboxError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
