"""Command-line front end.

    ginv construct FILE --goal {sym,ah} [--indices 1,3]
    ginv minimize  FILE --formulation {p1,p1sym,p1p3}
    ginv certify   FILE --goal {sym,ah}
    ginv compare   FILE

A JSON run report goes to stdout; constructed or minimized H is written to
``FILE.<command>.out`` unless --quiet is given. Index sets are 1-based here.

Exit codes: 0 success / optimal, 2 bad input, 3 infeasible or degenerate,
4 block solution is suboptimal, 5 optimality not certified.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from .blocks import column_block, symmetric_block
from .errors import DegenerateInput, InputError, InternalError
from .io import parse_matrix, write_matrix
from .linalg import EXACT, FLOAT, as_matrix, is_exact, is_symmetric
from .mpcheck import check_mp
from .normmin import Formulation, min_norm
from .search import Goal, Outcome, best_column_block, best_symmetric_block, certify_block_optimality
from .serialize import scalar_to_json, to_jsonable

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_SUBOPTIMAL = 4
EXIT_NOT_CERTIFIED = 5

_FORMULATIONS = {"p1": Formulation.P1, "p1sym": Formulation.P1_SYM, "p1p3": Formulation.P1_P3}


def _parse_indices(text):
    try:
        idx = [int(t) - 1 for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise InputError(f"bad index list {text!r}") from exc
    if any(i < 0 for i in idx):
        raise InputError("indices are 1-based")
    return tuple(idx)


def _construct(A, args):
    if args.goal == Goal.SYMMETRIC.value:
        if args.indices:
            sol = symmetric_block(A, _parse_indices(args.indices))
            candidates = None
        else:
            res = best_symmetric_block(A, workers=args.workers)
            sol, candidates = res.best, res.candidates_examined
    else:
        if args.indices:
            sol = column_block(A, _parse_indices(args.indices))
            candidates = None
        else:
            res = best_column_block(A, workers=args.workers)
            sol, candidates = res.best, res.candidates_examined
    results = {
        "goal": args.goal,
        "indices": [i + 1 for i in sol.provenance.indices],
        "one_norm": scalar_to_json(sol.one_norm),
        "H": to_jsonable(sol.H),
        "mp_report": check_mp(A, sol.H).to_dict(),
    }
    if candidates is not None:
        results["candidates_examined"] = candidates
    return results, sol.H, EXIT_OK


def _minimize(A, args):
    res = min_norm(A, _FORMULATIONS[args.formulation])
    results = res.to_dict()
    results["mp_report"] = check_mp(A, res.H).to_dict()
    return results, res.H, EXIT_OK


def _certify(A, args):
    cert = certify_block_optimality(A, args.goal)
    code = {Outcome.OPTIMAL: EXIT_OK, Outcome.SUBOPTIMAL: EXIT_SUBOPTIMAL,
            Outcome.NOT_CERTIFIED: EXIT_NOT_CERTIFIED}[cert.outcome]
    return cert.to_dict(one_based=True), None, code


def _gap_section(search, lp_values, key):
    best = search.best.one_norm
    return {
        "blocks": [{"indices": [i + 1 for i in idx], "one_norm": scalar_to_json(v)}
                   for idx, v in search.per_candidate_norms],
        "best_indices": [i + 1 for i in search.best_index_set],
        "best_block_norm": scalar_to_json(best),
        **{f"lp_{k}": scalar_to_json(v) for k, v in lp_values.items()},
        "gap": scalar_to_json(best - lp_values[key]),
    }


def _compare(A, args):
    from .normmin import min_norm_p1, min_norm_p1_p3, min_norm_p1_symmetric

    p1 = min_norm_p1(A).one_norm
    results = {}
    if is_symmetric(A):
        results["symmetric"] = _gap_section(
            best_symmetric_block(A, workers=args.workers),
            {"p1": p1, "p1sym": min_norm_p1_symmetric(A).one_norm}, "p1sym")
    results["ah"] = _gap_section(
        best_column_block(A, workers=args.workers),
        {"p1": p1, "p1p3": min_norm_p1_p3(A).one_norm}, "p1p3")
    return results, None, EXIT_OK


_COMMANDS = {"construct": _construct, "minimize": _minimize, "certify": _certify, "compare": _compare}


def build_parser():
    parser = argparse.ArgumentParser(prog="ginv", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="dense text or Matrix Market file")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--float", dest="mode", action="store_const", const=FLOAT,
                      help="binary64 arithmetic")
    mode.add_argument("--exact", dest="mode", action="store_const", const=EXACT,
                      help="exact rational arithmetic")
    common.add_argument("--quiet", action="store_true", help="do not write the matrix file")
    common.add_argument("--workers", type=int, default=None, help="processes for block enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a block solution")
    p.add_argument("--goal", choices=[g.value for g in Goal], required=True)
    p.add_argument("--indices", help="1-based index set S or T, e.g. 1,3 (default: best block)")

    p = sub.add_parser("minimize", parents=[common], help="solve a 1-norm minimization LP")
    p.add_argument("--formulation", choices=sorted(_FORMULATIONS), required=True)

    p = sub.add_parser("certify", parents=[common], help="certify the best block solution")
    p.add_argument("--goal", choices=[g.value for g in Goal], required=True)

    sub.add_parser("compare", parents=[common], help="block norms against LP optima")
    return parser


def _command_string(args):
    parts = [args.command]
    for opt in ("goal", "indices", "formulation", "mode"):
        val = getattr(args, opt, None)
        if val:
            parts.append(f"--{opt} {val}")
    return " ".join(parts)


def _fail(code, exc):
    print(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}),
          file=sys.stderr)
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    path = Path(args.file)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        return _fail(EXIT_BAD_INPUT, exc)
    start = time.perf_counter()
    try:
        A = as_matrix(parse_matrix(raw.decode("utf-8")), args.mode)
        results, H, code = _COMMANDS[args.command](A, args)
    except DegenerateInput as exc:
        return _fail(EXIT_DEGENERATE, exc)
    except InputError as exc:
        return _fail(EXIT_BAD_INPUT, exc)
    except (InternalError, UnicodeDecodeError) as exc:
        return _fail(EXIT_DEGENERATE if isinstance(exc, InternalError) else EXIT_BAD_INPUT, exc)
    elapsed = (time.perf_counter() - start) * 1000.0
    results["numeric_mode"] = EXACT if is_exact(A) else FLOAT
    if H is not None and not args.quiet:
        out = path.with_name(f"{path.name}.{args.command}.out")
        write_matrix(out, H)
        results["matrix_file"] = str(out)
    report = {
        "input_digest": hashlib.sha256(raw).hexdigest(),
        "command": _command_string(args),
        "results": results,
        "timing_ms": round(elapsed, 3),
    }
    print(json.dumps(report, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
