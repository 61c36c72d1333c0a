"""Command-line surface.  Every operation is a subcommand emitting a JSON
document {"manifest": ..., "result": ...} on stdout and a one-line summary
on stderr.  The manifest records the normalized argument vector, seed and
result digest, so replaying it reproduces the result byte for byte.

Exit codes: 0 success, 1 search-budget or verification failure,
2 usage / precondition error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
import time

from . import __version__
from .ff import FiniteField, field
from .poly import PolyError
from .cartier import BranchLocus, ModelError, detg_marked, invariants, normalize_model
from .cover import CoverError, CoverSpec, invariant_report
from .search import (BudgetError, SearchBudget, construct_a4,
                     construct_hyperelliptic_a2, construct_hyperelliptic_a3,
                     construct_M_to_n, construct_with_N, construct_with_Q,
                     extend_with_group_scheme, find_prank_f, igusa_count,
                     nonordinary_extensions, probe_ordinary_completion,
                     probe_rexact)
from .zeta import ZetaError, verify_decomposition

DEFAULT_SEED = 0


class UsageError(ValueError):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PTF_SEED")
    return int(env) if env else DEFAULT_SEED


def _budget(args) -> SearchBudget:
    return SearchBudget(max_draws=args.budget, seed=_seed(args),
                        tower_cap=args.tower_cap)


def _field(args) -> FiniteField:
    return field(args.p, args.k)


def _branch_values(args, F: FiniteField, allow_infinity: bool = True):
    """Parse --branch: comma list of element indices (base-p digits) with
    an optional "inf" token."""
    if not args.branch:
        raise UsageError("--branch is required for this command")
    out = []
    for tok in args.branch.split(","):
        tok = tok.strip()
        if tok == "inf":
            if not allow_infinity:
                raise UsageError("infinity is not a valid value here")
            out.append(None)
        else:
            out.append(F.from_index(int(tok)))
    return out


def _locus(args, F: FiniteField) -> BranchLocus:
    return BranchLocus(F, _branch_values(args, F))


# -- subcommand handlers ------------------------------------------------------


def _cmd_invariants(args) -> dict:
    model = normalize_model(_locus(args, _field(args)))
    g, f, a, label = invariants(model)
    return {"field": model.field.to_json(), "branch_locus": model.locus.to_json(),
            "genus": g, "p_rank": f, "a_number": a, "label": label.name}


def _cmd_detg(args) -> dict:
    F = _field(args)
    lams = _branch_values(args, F, allow_infinity=False)
    if len(lams) % 2 != 0:
        raise UsageError("detg needs an even number (2g) of branch values")
    D = detg_marked(lams, F)
    g = len(lams) // 2
    return {"field": F.to_json(), "lambdas": [v.to_json() for v in lams],
            "degree": D.degree, "degree_bound": g * (F.p - 1) // 2,
            "coeffs": [c.to_json() for c in D.coeffs]}


def _cmd_roots(args) -> dict:
    F = _field(args)
    lams = _branch_values(args, F, allow_infinity=False)
    if len(lams) % 2 != 0:
        raise UsageError("roots needs an even number (2g) of branch values")
    rl = nonordinary_extensions(lams, _budget(args))
    recs = [{"root": rec.root.to_json(), "field_degree": rec.degree,
             "min_poly": [c.to_json() for c in rec.min_poly.coeffs],
             "multiplicity": rec.multiplicity} for rec in rl.records]
    return {"field": F.to_json(), "lambdas": [v.to_json() for v in lams],
            "distinct_count": rl.distinct_count, "roots": recs,
            "unresolved_degrees": sorted(rl.unresolved)}


def _cmd_igusa(args) -> dict:
    count, squarefree = igusa_count(args.p)
    return {"count": count, "squarefree": squarefree,
            "expected": (args.p - 1) // 2}


_CONSTRUCTIONS = {
    "a2": lambda args: construct_hyperelliptic_a2(args.p, args.g, _budget(args)),
    "a3": lambda args: construct_hyperelliptic_a3(args.p, args.g, _budget(args)),
    "a4": lambda args: construct_a4(args.p, args.g, _budget(args)),
    "m-to-n": lambda args: construct_M_to_n(args.p, args.g, args.n, _budget(args)),
    "with-n": lambda args: construct_with_N(args.p, args.g, _budget(args)),
    "with-q": lambda args: construct_with_Q(args.p, args.g, _budget(args)),
}


def _cmd_construct(args) -> dict:
    if args.kind == "prank":
        if args.f is None:
            raise UsageError("construct prank needs --f")
        model = find_prank_f(args.p, args.g, args.f, _budget(args))
        g, f, a, label = invariants(model)
        return {"model": model.to_json(), "genus": g, "p_rank": f,
                "a_number": a, "label": label.name}
    result = _CONSTRUCTIONS[args.kind](args)
    if not result.success:
        raise BudgetError(result.failure or "construction failed")
    return result.to_json()


def _cmd_extend(args) -> dict:
    if args.input is None:
        raise UsageError("extend needs --input (a model JSON)")
    with open(args.input) as fh:
        data = json.load(fh)
    if "result" in data:           # accept a full CLI output document
        data = data["result"]
    if "model" in data:            # accept a `construct prank` result directly
        data = data["model"]
    F = FiniteField.from_json(data["field"])
    model = normalize_model(BranchLocus.from_json(F, data["branch_locus"]))
    result = extend_with_group_scheme(model, args.s, _budget(args))
    if not result.success:
        raise BudgetError(result.failure or "extension failed")
    return result.to_json()


def _cmd_probe(args) -> dict:
    if args.kind == "rexact":
        return probe_rexact(args.p, _budget(args))
    F = _field(args)
    lams = _branch_values(args, F, allow_infinity=False)
    return probe_ordinary_completion(lams, _budget(args))


def _cmd_verify(args) -> dict:
    if args.input is None:
        raise UsageError("verify needs --input (a cover spec or construction JSON)")
    with open(args.input) as fh:
        data = json.load(fh)
    if "result" in data:           # accept a full CLI output document
        data = data["result"]
    if "spec" in data:             # accept a construction result directly
        data = data["spec"]
    if data is None:
        raise UsageError("input carries no cover spec to verify")
    spec = CoverSpec.from_json(data)
    report = verify_decomposition(spec)
    if not report.get("pass", False) and "notice" not in report:
        raise BudgetError("verification failed: " + json.dumps(report))
    return report


# -- corpus runner ------------------------------------------------------------


def _corpus_entries(seed: int):
    """Fixed roster of end-to-end runs exercising each module."""
    entries = []
    for p in (5, 7, 11, 13):
        entries.append((f"igusa-p{p}", ["igusa", "--p", str(p)]))
    entries.append(("invariants-p5", ["invariants", "--p", "5",
                                      "--branch", "0,1,2,inf"]))
    entries.append(("roots-p7-g2", ["roots", "--p", "7", "--branch", "1,2,3,4",
                                    "--seed", str(seed)]))
    for p in (5, 7):
        for g in (2, 3):
            entries.append((f"a2-p{p}-g{g}",
                            ["construct", "a2", "--p", str(p), "--g", str(g),
                             "--seed", str(seed)]))
    entries.append(("mton-p5-g4-n2", ["construct", "m-to-n", "--p", "5",
                                      "--g", "4", "--n", "2",
                                      "--seed", str(seed), "--budget", "500"]))
    entries.append(("probe-rexact-p7", ["probe", "rexact", "--p", "7",
                                        "--seed", str(seed)]))
    return entries


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".corpus-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cmd_corpus(args) -> dict:
    if args.out is None:
        raise UsageError("corpus needs --out (output directory)")
    os.makedirs(args.out, exist_ok=True)
    seed = _seed(args)
    rows = []
    for name, argv in _corpus_entries(seed):
        t0 = time.time()
        buf = io.StringIO()
        code = _run(argv, stdout=buf, stderr=io.StringIO())
        _atomic_write(os.path.join(args.out, name + ".json"), buf.getvalue())
        rows.append({"entry": name, "exit_code": code,
                     "seconds": round(time.time() - t0, 3)})
    csv_path = os.path.join(args.out, "summary.csv")
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["entry", "exit_code", "seconds"])
    writer.writeheader()
    writer.writerows(rows)
    _atomic_write(csv_path, buf.getvalue())
    failed = [r["entry"] for r in rows if r["exit_code"] != 0]
    if failed:
        raise BudgetError("corpus entries failed: " + ", ".join(failed))
    return {"entries": rows, "summary_csv": csv_path}


_HANDLERS = {
    "invariants": _cmd_invariants, "detg": _cmd_detg, "roots": _cmd_roots,
    "igusa": _cmd_igusa, "construct": _cmd_construct, "extend": _cmd_extend,
    "probe": _cmd_probe, "verify": _cmd_verify, "corpus": _cmd_corpus,
}


# -- argument parsing ---------------------------------------------------------


def _add_common(sub, *names):
    for name in names:
        if name == "p":
            sub.add_argument("--p", type=int, required=True)
        elif name == "k":
            sub.add_argument("--k", type=int, default=1)
        elif name == "g":
            sub.add_argument("--g", type=int, required=True)
        elif name == "n":
            sub.add_argument("--n", type=int, default=2)
        elif name == "f":
            sub.add_argument("--f", type=int, default=None)
        elif name == "a":
            sub.add_argument("--a", type=int, default=None)
        elif name == "s":
            sub.add_argument("--s", type=int, default=1)
        elif name == "branch":
            sub.add_argument("--branch", type=str, default=None,
                             help='comma list of element indices, "inf" allowed')
        elif name == "input":
            sub.add_argument("--input", type=str, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptf", description="p-torsion invariants of hyperelliptic curves "
        "and (Z/2)^n fibre products")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    specs = {
        "invariants": ("p", "k", "branch"),
        "detg": ("p", "k", "branch"),
        "roots": ("p", "k", "branch"),
        "igusa": ("p",),
        "extend": ("s", "input"),
        "verify": ("input",),
        "corpus": (),
    }
    for name, flags in specs.items():
        sub = subs.add_parser(name)
        _add_common(sub, *flags)
        sub.add_argument("--seed", type=int, default=None)
        sub.add_argument("--budget", type=int, default=200)
        sub.add_argument("--tower-cap", dest="tower_cap", type=int, default=2)
        sub.add_argument("--out", type=str, default=None)

    con = subs.add_parser("construct")
    con.add_argument("kind", choices=["a2", "a3", "a4", "m-to-n",
                                      "with-n", "with-q", "prank"])
    _add_common(con, "p", "k", "g", "n", "f", "a")
    con.add_argument("--seed", type=int, default=None)
    con.add_argument("--budget", type=int, default=200)
    con.add_argument("--tower-cap", dest="tower_cap", type=int, default=2)
    con.add_argument("--out", type=str, default=None)

    pr = subs.add_parser("probe")
    pr.add_argument("kind", choices=["ordinary-completion", "rexact"])
    _add_common(pr, "p", "k", "branch")
    pr.add_argument("--seed", type=int, default=None)
    pr.add_argument("--budget", type=int, default=200)
    pr.add_argument("--tower-cap", dest="tower_cap", type=int, default=2)
    pr.add_argument("--out", type=str, default=None)
    return parser


def _normalized_argv(args) -> list[str]:
    """The argument vector that reproduces this run (seed made explicit)."""
    argv = [args.command]
    if getattr(args, "kind", None):
        argv.append(args.kind)
    for flag in ("p", "k", "g", "n", "f", "a", "s", "branch", "input", "out"):
        val = getattr(args, flag, None)
        if val is not None:
            argv.extend([f"--{flag}", str(val)])
    argv.extend(["--seed", str(_seed(args)),
                 "--budget", str(args.budget),
                 "--tower-cap", str(args.tower_cap)])
    return argv


def _run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.time()
    try:
        result = _HANDLERS[args.command](args)
        code = 0
    except BudgetError as exc:
        result = {"error": str(exc), "kind": "budget"}
        if getattr(exc, "trace", None):
            result["trace"] = exc.trace
        code = 1
    except (UsageError, CoverError, ModelError, PolyError, ZetaError,
            ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        result = {"error": str(exc), "kind": "usage"}
        code = 2
    blob = json.dumps(result, sort_keys=True, separators=(",", ":"))
    manifest = {"command": args.command,
                "argv": _normalized_argv(args),
                "seed": _seed(args),
                "version": __version__,
                "wall_clock": round(time.time() - t0, 3),
                "digest": hashlib.sha256(blob.encode()).hexdigest()}
    doc = json.dumps({"manifest": manifest, "result": result},
                     indent=2, sort_keys=True)
    if getattr(args, "out", None) and args.command != "corpus":
        _atomic_write(args.out, doc + "\n")
    else:
        print(doc, file=stdout)
    status = {0: "ok", 1: "FAILED", 2: "usage error"}[code]
    print(f"{args.command}: {status} ({manifest['wall_clock']}s, "
          f"digest {manifest['digest'][:12]})", file=stderr)
    return code


def main(argv=None) -> int:
    return _run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
