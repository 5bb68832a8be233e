"""Command-line front end: np, estimate, verify, describe, catalog."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .cache import ResultCache
from .errors import NilprobError
from .exact import (
    DEFAULT_SHIFT_BUDGET,
    DEFAULT_TUPLE_BUDGET,
    cp,
    identity_shifts,
    np_bruteforce,
    np_fast,
    np_sup,
)
from .groups import (
    GroupTable,
    catalog_base_names,
    catalog_generators,
    catalog_get,
    group_from_definition,
    group_to_definition,
)
from .montecarlo import DEFAULT_Z, estimate_np
from .perms import schreier_sims
from .structure import (
    SubgroupRef,
    center,
    conjugacy_classes,
    lower_central_series,
    nilpotency_class,
    normal_subgroups,
    subgroup_closure,
    whole_group,
)
from .verify import (
    ALL_CHECKS,
    CorpusConfig,
    default_corpus_names,
    render_report_table,
    run_corpus,
)


def _fraction_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _resolve_group(args, parser) -> GroupTable:
    sources = [s for s in (args.group, args.group_file, args.group_json) if s]
    if len(sources) != 1:
        parser.error("exactly one of --group / --group-file / --group-json is required")
    try:
        if args.group:
            return catalog_get(args.group, args.max_order)
        if args.group_file:
            with open(args.group_file, "r", encoding="utf-8") as fh:
                return group_from_definition(json.load(fh), args.max_order)
        return group_from_definition(json.loads(args.group_json), args.max_order)
    except (NilprobError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        raise _UsageError(f"cannot resolve group: {exc}") from exc


class _UsageError(Exception):
    """Raised for bad definitions and budget violations; exits with code 2."""


def _resolve_subgroup(g: GroupTable, args) -> SubgroupRef:
    if args.subgroup_normal is not None and args.subgroup_gens is not None:
        raise _UsageError("use only one of --subgroup-normal / --subgroup-gens")
    if args.subgroup_normal is not None:
        normals = normal_subgroups(g)
        idx = args.subgroup_normal
        if not 0 <= idx < len(normals):
            raise _UsageError(
                f"--subgroup-normal index {idx} out of range; "
                f"{g.label} has {len(normals)} normal subgroups "
                "(see `describe` for the list)"
            )
        return normals[idx]
    if args.subgroup_gens is not None:
        seeds = _parse_indices(args.subgroup_gens, g.order)
        return subgroup_closure(g, seeds)
    return whole_group(g)


def _parse_indices(text: str, order: int) -> list[int]:
    try:
        out = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise _UsageError(f"bad element list {text!r}") from exc
    for x in out:
        if not 0 <= x < order:
            raise _UsageError(f"element index {x} out of range for order {order}")
    return out


def _open_cache(args) -> Optional[ResultCache]:
    if args.no_cache:
        return None
    directory = Path(args.cache_dir) if args.cache_dir else None
    try:
        return ResultCache(directory)
    except OSError:
        return None


def _emit(args, payload: dict, csv_rows: tuple[list[str], list[list]]) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        header, rows = csv_rows
        print(",".join(header))
        for row in rows:
            print(",".join(str(x) for x in row))
    else:
        width = max(len(k) for k in payload) if payload else 0
        for key in payload:
            print(f"{key:<{width}}  {payload[key]}")


# -- commands -------------------------------------------------------------------


def cmd_np(args, parser) -> int:
    g = _resolve_group(args, parser)
    h = _resolve_subgroup(g, args)
    cache = _open_cache(args)

    if args.cp:
        value = cp(h)
        payload = {"group": g.label, "kind": "cp", "h_order": h.order,
                   "value": _fraction_str(value)}
        _emit(args, payload, (["group", "k", "kind", "value"],
                              [[g.label, 1, "cp", _fraction_str(value)]]))
        return 0

    k = args.k
    if args.sup:
        hit = cache.get_sup(g.table_hash, h.elements, k) if cache is not None else None
        if hit is not None:
            value, witness = hit
        else:
            value, witness = np_sup(g, h, k, args.budget_shifts)
            if cache is not None:
                cache.put_sup(g.table_hash, h.elements, k, (value, witness))
        payload = {
            "group": g.label, "kind": "np_sup", "k": k, "h_order": h.order,
            "value": _fraction_str(value), "witness_shifts": list(witness),
        }
        _emit(args, payload, (["group", "k", "kind", "value"],
                              [[g.label, k, "np_sup", _fraction_str(value)]]))
        return 0

    if args.shifts is not None:
        shifts = _parse_indices(args.shifts, g.order)
        if len(shifts) != k + 1:
            raise _UsageError(f"--shifts needs exactly k+1={k + 1} entries")
    else:
        shifts = list(identity_shifts(k))

    cached = cache.get_np(g.table_hash, h.elements, shifts) if cache is not None else None
    if cached is not None and args.method != "brute":
        value, counted, total = cached
        method = "cache"
    else:
        fn = np_bruteforce if args.method == "brute" else np_fast
        result = fn(g, h, shifts, args.budget_tuples)
        value, counted, total = result.value, result.counted_tuples, result.total_tuples
        method = result.method
        if cache is not None:
            cache.put_np(g.table_hash, h.elements, shifts, value, counted, total)

    payload = {
        "group": g.label, "kind": "np", "k": k, "h_order": h.order,
        "shifts": shifts, "value": _fraction_str(value),
        "counted": counted, "total": total, "method": method,
    }
    _emit(args, payload, (
        ["group", "k", "kind", "value", "counted", "total", "method"],
        [[g.label, k, "np", _fraction_str(value), counted, total, method]],
    ))
    return 0


def cmd_estimate(args, parser) -> int:
    if args.samples < 1:
        parser.error("--samples must be at least 1")
    if bool(args.group) == bool(args.gens_file):
        parser.error("exactly one of --group / --gens-file is required")
    try:
        if args.group:
            _, gens, label = catalog_generators(args.group)
        else:
            with open(args.gens_file, "r", encoding="utf-8") as fh:
                obj = json.load(fh)
            if obj.get("kind") != "perm_gens":
                raise _UsageError("--gens-file needs a perm_gens definition")
            gens = obj["gens"]
            label = obj.get("label", "<perm group>")
        bsgs = schreier_sims(gens)
    except (NilprobError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        raise _UsageError(f"cannot build permutation group: {exc}") from exc

    result = estimate_np(bsgs, args.k, args.samples, args.seed, args.z)
    payload = {"group": label, "order": str(bsgs.order), **result.to_json()}
    _emit(args, payload, (
        ["group", "k", "samples", "seed", "hits", "point", "ci_low", "ci_high", "z"],
        [[label, args.k, result.samples, result.seed, result.hits,
          f"{result.point:.6f}", f"{result.ci_low:.6f}", f"{result.ci_high:.6f}",
          result.z]],
    ))
    return 0


def cmd_verify(args, parser) -> int:
    definitions = []
    if args.corpus_file:
        try:
            with open(args.corpus_file, "r", encoding="utf-8") as fh:
                loaded = json.load(fh)
            if not isinstance(loaded, list):
                raise ValueError("corpus file must hold a JSON list of definitions")
            definitions = loaded
        except (OSError, ValueError, json.JSONDecodeError) as exc:
            raise _UsageError(f"cannot read corpus file: {exc}") from exc

    names = list(args.group) if args.group else []
    if not names and not definitions:
        names = default_corpus_names(args.corpus_max_order)

    checks = tuple(args.checks) if args.checks else ALL_CHECKS
    for c in checks:
        if c not in ALL_CHECKS:
            parser.error(f"unknown check {c!r}; known: {', '.join(ALL_CHECKS)}")

    ks = tuple(args.k) if args.k else (1, 2, 3)
    cfg = CorpusConfig(
        group_names=names,
        definitions=definitions,
        ks=ks,
        k_order_limits={3: args.k3_order_limit},
        checks=checks,
        include_cyclic_subgroups=args.cyclic_subgroups,
        shift_budget=args.budget_shifts,
        tuple_budget=args.budget_tuples,
        max_order=args.max_order,
        threads=args.threads,
    )
    cache = _open_cache(args) if args.threads <= 1 else None
    report = run_corpus(cfg, cache)

    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report.to_json(include_timing=args.include_timing), fh,
                      sort_keys=True, indent=2)
            fh.write("\n")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("group,k,check,lhs,rhs,holds\n")
            for o in report.outcomes:
                lhs = o.to_json()["lhs"]
                rhs = o.to_json()["rhs"]
                fh.write(f"{o.group},{o.params.get('k', 1)},{o.check_id},"
                         f"{lhs},{rhs},{o.holds}\n")

    if args.format == "json":
        print(json.dumps(report.to_json(include_timing=args.include_timing),
                         sort_keys=True))
    else:
        print(render_report_table(report))
    return 0 if report.must_hold_ok else 1


def cmd_describe(args, parser) -> int:
    g = _resolve_group(args, parser)
    if args.emit_definition:
        print(json.dumps(group_to_definition(g), sort_keys=True))
        return 0
    classes = conjugacy_classes(g)
    z = center(g)
    normals = normal_subgroups(g)
    series = lower_central_series(g)
    cls = nilpotency_class(g)
    payload = {
        "group": g.label,
        "order": g.order,
        "classes": classes.num_classes,
        "cp": _fraction_str(cp(g)),
        "center_order": z.order,
        "normal_subgroups": len(normals),
        "normal_subgroup_orders": [n.order for n in normals],
        "nilpotency_class": cls if cls is not None else "not nilpotent",
        "lower_central_orders": [s.order for s in series],
    }
    rows = [[g.label, key, payload[key]] for key in payload if key != "group"]
    _emit(args, payload, (["group", "property", "value"], rows))
    return 0


def cmd_catalog(args, parser) -> int:
    names = catalog_base_names(args.max_order_filter)
    if args.format == "json":
        print(json.dumps(names))
    else:
        for name in names:
            print(name)
    return 0


# -- argument parsing -----------------------------------------------------------


def _add_group_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", help="catalog name or product expression, e.g. S(3)xS(3)")
    p.add_argument("--group-file", help="path to a group-definition JSON file")
    p.add_argument("--group-json", help="inline group-definition JSON")


def _add_global_args(p: argparse.ArgumentParser, suppress: bool) -> None:
    # The same flags are registered on the main parser (with real defaults)
    # and on every subparser (with SUPPRESS), so they work in either
    # position without the subparser defaults clobbering explicit values.
    def d(value):
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--format", choices=("json", "csv", "table"), default=d("table"))
    p.add_argument("--budget-tuples", type=int, default=d(DEFAULT_TUPLE_BUDGET),
                   help="iteration budget for exact tuple enumeration")
    p.add_argument("--budget-shifts", type=int, default=d(DEFAULT_SHIFT_BUDGET),
                   help="budget for suprema over shift tuples")
    p.add_argument("--cache-dir", default=d(None),
                   help="override the results cache directory")
    p.add_argument("--no-cache", action="store_true", default=d(False),
                   help="disable the results cache")
    p.add_argument("--threads", type=int, default=d(1),
                   help="worker processes for corpus verification")
    p.add_argument("--max-order", type=int, default=d(4096),
                   help="largest group order to build as a table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilprob",
        description="Exact and statistical nilpotence probabilities of finite groups.",
    )
    _add_global_args(parser, suppress=False)

    sub = parser.add_subparsers(dest="command", required=True)

    p_np = sub.add_parser("np", help="exact probabilities: np_k, cp, np(H; shifts)")
    _add_global_args(p_np, suppress=True)
    _add_group_args(p_np)
    p_np.add_argument("--k", type=int, default=1)
    p_np.add_argument("--cp", action="store_true", help="commuting probability instead of np")
    p_np.add_argument("--sup", action="store_true",
                      help="supremum over shift tuples, with a witness")
    p_np.add_argument("--shifts", help="comma-separated element indices, k+1 of them")
    p_np.add_argument("--subgroup-normal", type=int, metavar="INDEX",
                      help="use the INDEXth normal subgroup (see describe) as H")
    p_np.add_argument("--subgroup-gens", metavar="ELEMS",
                      help="use the subgroup generated by these element indices as H")
    p_np.add_argument("--method", choices=("dp", "brute"), default="dp")
    p_np.set_defaults(fn=cmd_np)

    p_est = sub.add_parser("estimate", help="Monte Carlo estimate for permutation groups")
    _add_global_args(p_est, suppress=True)
    p_est.add_argument("--group", help="catalog name, e.g. S(5)")
    p_est.add_argument("--gens-file", help="perm_gens definition JSON file")
    p_est.add_argument("--k", type=int, default=1)
    p_est.add_argument("--samples", type=int, default=100000)
    p_est.add_argument("--seed", type=int, default=0)
    p_est.add_argument("--z", type=float, default=DEFAULT_Z)
    p_est.set_defaults(fn=cmd_estimate)

    p_ver = sub.add_parser("verify", help="run the inequality harness over a corpus")
    _add_global_args(p_ver, suppress=True)
    p_ver.add_argument("--group", action="append",
                       help="catalog name to include (repeatable); default: built-in corpus")
    p_ver.add_argument("--corpus-file", help="JSON list of group definitions")
    p_ver.add_argument("--corpus-max-order", type=int, default=64,
                       help="order cap for the default corpus")
    p_ver.add_argument("--k", type=int, action="append",
                       help="k values to check (repeatable); default 1 2 3")
    p_ver.add_argument("--k3-order-limit", type=int, default=24,
                       help="only check k=3 on groups up to this order")
    p_ver.add_argument("--checks", nargs="*", help=f"subset of: {', '.join(ALL_CHECKS)}")
    p_ver.add_argument("--cyclic-subgroups", action="store_true",
                       help="also draw H from cyclic subgroups")
    p_ver.add_argument("--report", help="write the JSON report here")
    p_ver.add_argument("--csv", help="write outcome rows (group,k,check,lhs,rhs,holds) here")
    p_ver.add_argument("--include-timing", action="store_true",
                       help="include wall-clock timings in the JSON report")
    p_ver.set_defaults(fn=cmd_verify)

    p_desc = sub.add_parser("describe", help="structural summary of one group")
    _add_global_args(p_desc, suppress=True)
    _add_group_args(p_desc)
    p_desc.add_argument("--emit-definition", action="store_true",
                        help="print a mul_table definition that round-trips the group")
    p_desc.set_defaults(fn=cmd_describe)

    p_cat = sub.add_parser("catalog", help="list catalog names")
    _add_global_args(p_cat, suppress=True)
    p_cat.add_argument("--max-order-filter", type=int, default=None,
                       help="only names whose order is at most this")
    p_cat.set_defaults(fn=cmd_catalog)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args, parser)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NilprobError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if "budget" in str(exc):
            print("hint: raise --budget-tuples/--budget-shifts or use `estimate`",
                  file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
