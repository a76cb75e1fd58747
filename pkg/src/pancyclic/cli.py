"""Command-line entry point: ``pancyclic <command> ...``.

Exit codes: 0 success, 1 property violated or counterexample, 2 bad input,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .errors import BudgetExceeded, PreconditionError
from .formats import load_graph
from .pipelines import PipelineParams, certify_pancyclic, cycle_of_length
from .profile import profile

OK, VIOLATED, BAD_INPUT, BUDGET = 0, 1, 2, 3


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _params(args) -> PipelineParams:
    return PipelineParams(seed=getattr(args, "seed", 0) or 0)


def cmd_check(args) -> int:
    g = load_graph(args.file, args.format)
    prof = profile(g)
    cert = certify_pancyclic(g, _params(args), profile=prof)
    out = cert.to_json()
    out["min_degree"] = prof.min_degree
    out["hypothesis"] = cert.hypothesis
    out["complete"] = cert.complete
    out["notes"] = {str(k): v for k, v in sorted(cert.notes.items())}
    _emit(out)
    if any(v.startswith("budget") for v in cert.notes.values()) and not cert.complete:
        return BUDGET
    if cert.hypothesis and not cert.complete:
        return VIOLATED
    return OK


def cmd_find_cycle(args) -> int:
    g = load_graph(args.file, args.format)
    found = cycle_of_length(g, args.length, _params(args))
    if found is None:
        _emit({"length": args.length, "status": "none"})
        return VIOLATED
    c, route = found
    _emit({"length": args.length, "status": "found", "cycle": list(c.vertices), "route": route})
    return OK


def cmd_hunt(args) -> int:
    from .harness.hunt import hunt

    rep = hunt(args.n_max, args.graph6, n_min=args.n_min, jobs=args.jobs)
    _emit(rep.to_json())
    return OK if rep.clean else VIOLATED


def cmd_lemma_test(args) -> int:
    from .harness.lemmas import lemma_test

    rep = lemma_test(args.name, args.trials, args.seed)
    _emit(rep.to_json())
    return OK if rep.passed else VIOLATED


def cmd_profile(args) -> int:
    g = load_graph(args.file, args.format)
    _emit(profile(g).to_json())
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pancyclic", description="Cycle certificates for graphs with kappa > alpha.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_file(p):
        p.add_argument("file")
        p.add_argument("--format", choices=("auto", "graph6", "edgelist"), default="auto")
        return p

    p = with_file(sub.add_parser("check", help="profile and pancyclicity certificate as JSON"))
    p.set_defaults(fn=cmd_check)
    p = with_file(sub.add_parser("find-cycle", help="one cycle of a given length"))
    p.add_argument("--length", type=int, required=True)
    p.set_defaults(fn=cmd_find_cycle)
    p = sub.add_parser("hunt", help="scan small graphs with kappa > alpha")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--graph6", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_hunt)
    p = sub.add_parser("lemma-test", help="randomised invariant suite for one construction")
    p.add_argument("--name", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(fn=cmd_lemma_test)
    p = with_file(sub.add_parser("profile", help="n, alpha, kappa and minimum degree"))
    p.set_defaults(fn=cmd_profile)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.fn(args)
    except (PreconditionError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return BUDGET


if __name__ == "__main__":
    sys.exit(main())
