"""Command-line entry point: ``deltamod <command> ...``.

Every command can print text, JSON or (where tabular) CSV.  JSON output
carries ``schema_version`` and keeps wall-clock data inside a ``timing``
object, so two runs with the same arguments differ only there.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__, bounds, matio
from .constructions import FAMILIES, CatalogError, ConstructionRecipe, catalog_entries, verify_construction
from .exactmat import DimensionError, ExactMatrix, PreconditionError, rank
from .modularity import delta as max_minor
from .modularity import has_differing_columns, is_delta_modular

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, ExactMatrix):
        return matio.to_json_obj(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"cannot encode {type(x).__name__}")


def _emit(args, command: str, result: dict, text: str, timing: dict | None = None, csv_text: str | None = None):
    if args.format == "json":
        payload = {"schema_version": SCHEMA_VERSION, "command": command, "seed": args.seed, **result}
        payload["timing"] = timing or {}
        out = json.dumps(payload, indent=2, sort_keys=True, default=_default) + "\n"
    elif args.format == "csv":
        if csv_text is None:
            raise UsageError(f"{command} has no CSV output")
        out = csv_text
    else:
        out = text if text.endswith("\n") else text + "\n"
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _read(path) -> ExactMatrix:
    if path is None:
        raise UsageError("--in is required")
    if path == "-":
        return matio.parse(sys.stdin.read())
    return matio.read_matrix(path)


# ------------------------------------------------------------------ commands


def cmd_delta(args) -> int:
    A = _read(args.input)
    t = time.perf_counter()
    rep = max_minor(A, use_hadamard=not args.no_prune)
    timing = {"seconds": time.perf_counter() - t, "minors_evaluated": rep.minors_evaluated}
    _emit(args, "delta", {"delta": rep.delta, "witness": list(rep.witness)}, str(rep.delta), timing)
    return 0


def cmd_check(args) -> int:
    A = _read(args.input)
    checks = []
    r = rank(A)
    checks.append(("rank", r == A.rows, f"rank {r} of {A.rows} rows"))
    ok, pair = has_differing_columns(A)
    checks.append(("differing", ok, "ok" if ok else f"columns {list(pair)}"))
    if A.cols >= A.rows:
        good, witness = is_delta_modular(A, args.delta)
        checks.append(("delta_modular", good, "ok" if good else f"minor on columns {list(witness)} exceeds {args.delta}"))
    else:
        checks.append(("delta_modular", False, "fewer columns than rows"))
    result = {"delta_bound": args.delta, "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in checks]}
    if args.maximal and all(p for _, p, _ in checks):
        from .search import verify_maximal
        maximal, column = verify_maximal(A, args.delta)
        checks.append(("maximal", maximal, "ok" if maximal else f"column {list(column)} can be added"))
        result["checks"].append({"name": "maximal", "passed": maximal, "detail": checks[-1][2]})
    passed = all(p for _, p, _ in checks)
    result["passed"] = passed
    text = "\n".join(f"{'PASS' if p else 'FAIL'}  {n}: {d}" for n, p, d in checks)
    _emit(args, "check", result, text)
    return 0 if passed else 1


def cmd_construct(args) -> int:
    recipe = ConstructionRecipe(args.family, delta=args.delta, m=args.m, variant=args.variant)
    A = recipe.build()
    result = {"family": recipe.family, "delta": recipe.delta, "m": recipe.m, "variant": recipe.variant,
              "matrix": matio.to_json_obj(A)}
    status = 0
    text = matio.format_text(A)
    if args.verify:
        d = max_minor(A).delta if A.cols >= A.rows else None
        report = verify_construction(A, d if d is not None else 0, A.cols)
        result["verification"] = report.as_dict()
        status = 0 if report.passed else 1
        text += f"# delta {d}, {A.cols} columns, checks {'passed' if report.passed else 'failed'}\n"
    _emit(args, "construct", result, text)
    return status


def cmd_bounds(args) -> int:
    if args.table:
        rows = bounds.sweep(args.max_delta, args.max_m)
    else:
        if args.delta is None or args.m is None:
            raise UsageError("bounds needs --delta and --m, or --table")
        rows = [bounds.bounds_table(args.delta, args.m)]
    consistent = all(r.consistent for r in rows)
    result = {"rows": json.loads(bounds.to_json(rows)), "consistent": consistent}
    header = "delta m lower thm_upper glanzer recursive naive3m proximity_upper"
    lines = [header] + [f"{r.delta} {r.m} {r.lower} {r.thm_upper} {r.glanzer}{'' if r.glanzer_exact else '~'} "
                        f"{r.recursive} {r.naive3m} {r.proximity_upper}" for r in rows]
    if args.exponent is not None:
        q = Fraction(args.exponent)
        cond = bounds.exponent_condition(int(q) if q.denominator == 1 else float(q))
        result["exponent_condition"] = cond
        lines.append(f"exponent condition at q = {cond['q']}: holds {cond['holds']} (certified {cond['certified']})")
    _emit(args, "bounds", result, "\n".join(lines), csv_text=bounds.to_csv(rows))
    return 0 if consistent else 1


def cmd_structure(args) -> int:
    from . import structure

    A = _read(args.input)
    action = args.action
    if action == "contract":
        rep = structure.contract(A, args.pivot)
        result = {
            "pivot_index": rep.pivot_index,
            "pivot": list(rep.pivot),
            "transform": rep.transform,
            "contracted": [list(b) for b in rep.contracted],
            "originals": [{"column": list(b), "originals": list(ix), "betas": list(rep.betas(b))}
                          for b, ix in rep.originals.items()],
            "zero_set": list(rep.zero_set),
            "M": [list(b) for b in rep.M],
            "counting_identity": rep.counting_identity(),
        }
        text = "\n".join([f"|A/a0| = {len(rep.contracted)}, |M| = {len(rep.M)}, |O(0)| = {len(rep.zero_set)}"]
                         + [f"{list(b)}  originals {list(ix)}  betas {list(rep.betas(b))}"
                            for b, ix in rep.originals.items()])
        _emit(args, "structure contract", result, text)
        return 0
    if action == "circuits":
        if args.pivot is not None:
            X = structure.contract(A, args.pivot).M
            cols = list(X.columns)
        else:
            X = A
            cols = A.columns()
        circuits = structure.enumerate_circuits(X, args.max_size)
        result = {"circuits": [{"columns": [list(cols[i]) for i in c.column_indices],
                                "indices": list(c.column_indices),
                                "dependence": [str(v) for v in c.dependence_coeffs]} for c in circuits]}
        text = "\n".join([f"{len(circuits)} circuit(s)"] + [
            f"{list(c.column_indices)}  dependence {[str(v) for v in c.dependence_coeffs]}" for c in circuits])
        _emit(args, "structure circuits", result, text)
        return 0
    if action == "bstar":
        b = structure.find_bstar(A)
        result = {"bstar": None if b is None else {"columns": b.columns, "half_sum": list(b.half_sum),
                                                   "indices": list(b.indices), "size": b.size}}
        text = "none" if b is None else f"|B*| = {b.size}\n" + matio.format_text(b.columns)
        _emit(args, "structure bstar", result, text)
        return 0
    rep = structure.check_structural_lemmas(A)
    text = "\n".join(f"{p.status.upper():8} {p.name}: {p.detail}" for p in rep.predicates)
    _emit(args, "structure check", rep.as_dict(), text)
    return 0 if rep.passed else 1


def cmd_search(args) -> int:
    from .search import Budget, max_differing_columns

    budget = Budget(nodes=args.nodes or 10**12, seconds=args.seconds or float("inf"))
    res = max_differing_columns(args.delta, args.m, budget=budget, threads=args.threads, collect=args.collect,
                                orbit_depth=args.orbit_depth)
    result = {"delta": res.delta, "m": res.m, "value": res.value, "exhaustive": res.exhaustive,
              "witness": res.witness}
    if args.collect:
        result["optimal_sets"] = [matio.to_json_obj(W) for W in res.optimal_sets]
    timing = {"seconds": res.wall_time, "nodes_explored": res.nodes_explored}
    text = (f"c({res.delta},{res.m}) {'=' if res.exhaustive else '>='} {res.value}"
            f"  ({'exhaustive' if res.exhaustive else 'budget exhausted'})\n" + matio.format_text(res.witness))
    _emit(args, "search", result, text, timing)
    return 0


def cmd_proximity(args) -> int:
    from .proximity import IPInstance, proximity, random_instances

    if args.random:
        instances = random_instances(args.random, seed=args.seed)
    else:
        if args.input is None:
            raise UsageError("proximity needs --in instance.json or --random N")
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        instances = [IPInstance.from_json_obj(json.loads(text))]
    reports = [proximity(inst, window=args.window) for inst in instances]
    ok = all(r.satisfied for r in reports)
    if len(reports) == 1 and not args.random:
        result = reports[0].as_dict()
        r = reports[0]
        text = ("IP empty" if r.ip_empty else f"pi = {r.pi}") + "  " + json.dumps(r.bounds_checked, sort_keys=True)
    else:
        result = {"instances": [{"instance": inst.to_json_obj(), **r.as_dict()} for inst, r in zip(instances, reports)],
                  "all_satisfied": ok}
        worst = max((r.pi for r in reports if r.pi is not None), default=None)
        text = f"{len(reports)} instances, largest pi {worst}, all bounds satisfied: {ok}"
    _emit(args, "proximity", result, text)
    return 0 if ok else 1


def cmd_verify_catalog(args) -> int:
    rows = []
    timing = {}
    for entry in catalog_entries():
        t = time.perf_counter()
        rep = verify_construction(entry.matrix, entry.delta, entry.count, primitive=entry.primitive)
        timing[entry.name] = time.perf_counter() - t
        rows.append({"name": entry.name, "delta": entry.delta, "count": entry.count, "status": entry.status,
                     "passed": rep.passed, "failures": rep.failures()})
    passed = all(r["passed"] for r in rows)
    width = max(len(r["name"]) for r in rows)
    lines = [f"{'matrix':{width}}  delta  cols  result"]
    lines += [f"{r['name']:{width}}  {r['delta']:5}  {r['count']:4}  {'PASS' if r['passed'] else 'FAIL ' + ','.join(r['failures'])}"
              for r in rows]
    csv_text = "name,delta,count,status,passed\n" + "".join(
        f"\"{r['name']}\",{r['delta']},{r['count']},{r['status']},{r['passed']}\n" for r in rows)
    _emit(args, "verify-catalog", {"entries": rows, "passed": passed}, "\n".join(lines), {"seconds": timing}, csv_text)
    return 0 if passed else 1


# -------------------------------------------------------------------- parser


def _common(defaults: bool) -> argparse.ArgumentParser:
    """Global flags, accepted before or after the command name."""
    p = argparse.ArgumentParser(add_help=False)
    sup = argparse.SUPPRESS
    p.add_argument("--format", choices=("text", "json", "csv"), default="text" if defaults else sup)
    p.add_argument("--seed", type=int, default=42 if defaults else sup)
    p.add_argument("--threads", type=int, default=1 if defaults else sup)
    p.add_argument("--out", default=None if defaults else sup)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deltamod", parents=[_common(True)],
                                     description="Exact tools for integer matrices with bounded m x m minors.")
    parser.add_argument("--version", action="version", version=f"deltamod {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(False)

    p = sub.add_parser("delta", parents=[common], help="largest absolute m x m minor")
    p.add_argument("--in", dest="input")
    p.add_argument("--no-prune", action="store_true", help="disable Hadamard pruning")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("check", parents=[common], help="rank, differing columns and Delta-modularity")
    p.add_argument("--in", dest="input")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--maximal", action="store_true", help="also decide whether a column can be added")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", parents=[common], help="build a catalogued matrix")
    p.add_argument("--family", required=True, help=", ".join(FAMILIES))
    p.add_argument("--delta", type=int, default=2)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--variant")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bounds", parents=[common], help="closed-form and recursive bounds")
    p.add_argument("--delta", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--table", action="store_true", help="sweep every (delta, m) up to the maxima")
    p.add_argument("--max-delta", type=int, default=10)
    p.add_argument("--max-m", type=int, default=10)
    p.add_argument("--exponent", help="evaluate the exponent condition at q (integer or fraction)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("structure", parents=[common], help="contraction, circuits, B* and lemma checks")
    p.add_argument("action", choices=("contract", "circuits", "bstar", "check"))
    p.add_argument("--in", dest="input")
    p.add_argument("--pivot", type=int, help="0-based index of the primitive pivot column")
    p.add_argument("--max-size", type=int, default=6)
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("search", parents=[common], help="exhaustive maximum number of differing columns")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seconds", type=float)
    p.add_argument("--nodes", type=int)
    p.add_argument("--collect", action="store_true", help="also return the maximum column sets met")
    p.add_argument("--orbit-depth", type=int, default=2)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("proximity", parents=[common], help="exact LP-to-IP proximity")
    p.add_argument("--in", dest="input")
    p.add_argument("--window", type=int, help="search radius around each vertex, for infinite bounds")
    p.add_argument("--random", type=int, metavar="N", help="run N seeded random instances instead")
    p.set_defaults(func=cmd_proximity)

    p = sub.add_parser("verify-catalog", parents=[common], help="check every catalogued matrix")
    p.set_defaults(func=cmd_verify_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    try:
        if args.command == "structure" and args.action == "contract" and args.pivot is None:
            raise UsageError("structure contract needs --pivot")
        return args.func(args)
    except (UsageError, CatalogError, PreconditionError, DimensionError, ValueError, OSError) as exc:
        print(f"deltamod: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
