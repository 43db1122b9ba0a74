"""Command line entry point: ``roquette <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from ..checks import subgroup_witness
from ..expansive import scan_expansive_trivial_core
from ..group import GroupError, subgroup_properties
from ..structure import fitting, is_roquette
from ..theorems import cohomology_rows
from .cache import load_or_enumerate
from .groupdef import GroupDefError, build_from_def
from .report import emit
from .suites import SUITES, SuiteOptions, run_suite


def _out(obj, as_json: bool, text: str) -> None:
    print(json.dumps(obj, indent=2) if as_json else text)


def cmd_build(args) -> int:
    G = build_from_def(args.definition)
    info = {"definition": G.meta["definition"], "order": G.order, "fingerprint": G.table_hash[:16],
            "abelian": G.is_abelian(), "generators": [G.label(g) for g in G.generators]}
    _out(info, args.json, "\n".join(f"{k}: {v}" for k, v in info.items()))
    return 0


def cmd_subgroups(args) -> int:
    G = build_from_def(args.definition)
    L, source = load_or_enumerate(G, args.cache)
    rows = []
    for ci, members in enumerate(L.classes):
        S = L.subgroups[members[0]]
        p = subgroup_properties(G, S)
        rows.append({"class": ci, "order": S.order, "size": len(members), "abelian": p.is_abelian,
                     "cyclic": p.is_cyclic, "generators": [G.label(g) for g in S.generators]})
    if args.json:
        _out({"order": G.order, "subgroups": len(L), "classes": rows, "source": source}, True, "")
    else:
        print(f"|G| = {G.order}: {len(L)} subgroups in {len(L.classes)} classes ({source})")
        for r in rows:
            kind = "cyclic" if r["cyclic"] else ("abelian" if r["abelian"] else "")
            print(f"  [{r['class']:>3}] order {r['order']:>4} x{r['size']:<3} {kind:8} <{', '.join(r['generators'])}>")
    return 0


def cmd_expansive(args) -> int:
    G = build_from_def(args.definition)
    L, _ = load_or_enumerate(G, args.cache)
    results = scan_expansive_trivial_core(G, L, trace=args.trace)
    rows = []
    for r in results:
        row = {**subgroup_witness(r.subgroup), "expansive": r.expansive,
               "witness_g": None if r.witness_g is None else G.label(r.witness_g)}
        if args.trace:
            row["trace"] = r.per_g_trace
        rows.append(row)
    n_exp = sum(r.expansive for r in results)
    if args.json:
        _out({"order": G.order, "trivial_core_classes": len(results), "expansive": n_exp, "entries": rows},
             True, "")
    else:
        print(f"|G| = {G.order}: {len(results)} trivial-core classes, {n_exp} expansive")
        for row in rows:
            tag = "EXPANSIVE" if row["expansive"] else f"not expansive (g = {row['witness_g']})"
            print(f"  order {row['order']:>4} <{', '.join(row['labels'][:4])}{', ...' if row['order'] > 4 else ''}> {tag}")
            if args.trace:
                for g, c in row["trace"]:
                    print(f"      g = {G.label(g)}: core order {c}")
    return 0


def cmd_roquette(args) -> int:
    G = build_from_def(args.definition)
    L, _ = load_or_enumerate(G, args.cache)
    v = is_roquette(G, L)
    F = fitting(G)
    info = {"order": G.order, "roquette": v.is_roquette, "method_agreement": v.method_agreement,
            "fitting_order": F.order,
            "witness": subgroup_witness(v.witness) if v.witness is not None else None}
    text = (f"|G| = {G.order}: roquette={v.is_roquette} (methods agree: {v.method_agreement}), |F(G)| = {F.order}"
            + (f"\n  non-cyclic normal abelian subgroup of order {v.witness.order}" if v.witness is not None else ""))
    _out(info, args.json, text)
    return 0 if v.method_agreement else 1


def cmd_cohomology(args) -> int:
    rows = cohomology_rows(args.max_n, args.min_n)
    if args.json:
        _out([{"n": r.n, "p": r.p, "k": r.k, "h1": r.h1, "h2": r.h2, "ok": r.ok} for r in rows], True, "")
    else:
        fmt = lambda f: " x ".join(f"C{x}" for x in f) if f else "0"
        print(f"{'n':>5} {'p':>3} {'H1':>6} {'H2':>6}")
        for r in rows:
            print(f"{r.n:>5} {r.p:>3} {fmt(r.h1):>6} {fmt(r.h2):>6}{'' if r.ok else '  MISMATCH'}")
    return 0 if all(r.ok for r in rows) else 1


def cmd_verify(args) -> int:
    opts = SuiteOptions(jobs=args.jobs, cache_dir=args.cache, budget=args.budget,
                        include_heavy=args.include_heavy)
    if args.n_list:
        try:
            opts.n_list = tuple(int(x) for x in args.n_list.split(","))
        except ValueError:
            raise ValueError(f"--n-list must be comma separated integers, got {args.n_list!r}") from None
    report = run_suite(args.suite, opts)
    data = emit(report, args.format)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="roquette", description="Expansive subgroups and Roquette groups.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def group_cmd(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("definition", help="group definition, e.g. 'pk p:3 i:1 k:borel'")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)
        return p

    group_cmd("build", cmd_build, "construct a group and print a summary")
    for name, func, help_ in (("subgroups", cmd_subgroups, "list subgroup conjugacy classes"),
                              ("expansive", cmd_expansive, "scan trivial-core subgroups for expansivity"),
                              ("roquette", cmd_roquette, "decide whether the group is Roquette")):
        p = group_cmd(name, func, help_)
        p.add_argument("--cache", help="lattice cache directory (overrides ROQUETTE_CACHE_DIR)")
        if name == "expansive":
            p.add_argument("--trace", action="store_true", help="record the core order for every g")

    p = sub.add_parser("cohomology", help="H^1 and H^2 of <alpha_p> on C_n")
    p.add_argument("--max-n", type=int, default=200)
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache", help="lattice cache directory (overrides ROQUETTE_CACHE_DIR)")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--budget", type=float, help="time budget in seconds")
    p.add_argument("--include-heavy", action="store_true", help="also run the i = 2 groups")
    p.add_argument("--n-list", help="comma separated n values for cyclic-fitting")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except GroupDefError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GroupError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
