"""Command-line interface: ``maxmatch <command> [options]``.

Exit codes: 0 success, 2 input error, 3 limit-formula precondition failed,
4 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .catalog import CatalogError, catalog, catalog_json, entry_limit, evaluate_closed_form, lookup, \
    profiles_upto, verify_entry
from .exact import DEFAULT_CAP, CapExceeded, SizeProfile, fraction_str, invariant_report
from .families import FAMILY_IDS, FamilyError, generate
from .graph import GraphFormatError, graph6_decode, parse_edge_list
from .recurrence import HypothesisError, RecurrenceSpec, asymptotic_limit, finite_ratio
from .sweep import all_graphs, compare_invariants, read_graph6_stream, write_csv

EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_CAP = 4


class InputError(ValueError):
    pass


def dec(x) -> str:
    return f"{float(x):.12g}"


def emit_json(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _family_params(args) -> dict:
    return {k: getattr(args, k) for k in ("s", "c") if getattr(args, k, None) is not None}


def _add_family_args(p, required=True):
    p.add_argument("--family", required=required, help=f"family id ({', '.join(FAMILY_IDS)}; alias: trees)")
    p.add_argument("--s", type=int, help="clique / bridge parameter")
    p.add_argument("--c", type=int, help="thorn-complete-bipartite side size")


# --- invariants -------------------------------------------------------------


def _load_graph(args):
    sources = [args.edge_list is not None, args.graph6 is not None, args.family is not None]
    if sum(sources) != 1:
        raise InputError("give exactly one of --edge-list, --graph6, --family")
    if args.edge_list is not None:
        if args.edge_list == "-":
            return parse_edge_list(sys.stdin.read())
        try:
            with open(args.edge_list, encoding="utf-8") as fh:
                return parse_edge_list(fh.read())
        except OSError as exc:
            raise InputError(f"cannot read {args.edge_list}: {exc.strerror}") from None
    if args.graph6 is not None:
        return graph6_decode(args.graph6)
    if args.n is None:
        raise InputError("--family needs --n")
    return generate(args.family, _family_params(args), args.n)


def cmd_invariants(args) -> int:
    g = _load_graph(args)
    report = invariant_report(g, args.cap)
    data = {"n": g.n, "m": g.m, **report.to_json()}
    if args.format == "json":
        emit_json(data)
    elif args.format == "csv":
        keys = list(data)
        print(",".join(keys))
        print(",".join(str(data[k]) for k in keys))
    else:
        print(f"vertices  {g.n}\nedges     {g.m}")
        for name in ("nu", "t0", "t1", "t0_ord", "t1_ord", "t0_arw", "t1_arw"):
            print(f"{name:9s} {getattr(report, name)}")
        for name in report.RATIONAL_FIELDS:
            value = getattr(report, name)
            print(f"{name:9s} {fraction_str(value)}  ({dec(value)})")
    return 0


# --- asymptote --------------------------------------------------------------


def _spec_from_file(path: str) -> RecurrenceSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        coeffs = tuple((int(i), int(j), Fraction(str(a))) for i, j, a in raw["coeffs"])
        bases = tuple(SizeProfile.from_dict({int(k): int(v) for k, v in b.items()})
                      for b in raw["base_profiles"])
        return RecurrenceSpec(raw.get("key", path), coeffs, bases, n_min=int(raw.get("n_min", 0)),
                              c=Fraction(str(raw.get("c", 1))))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise InputError(f"bad recurrence file {path}: {exc}") from None


def cmd_asymptote(args) -> int:
    if (args.family is None) == (args.recurrence is None):
        raise InputError("give exactly one of --family, --recurrence")
    if args.recurrence:
        spec = _spec_from_file(args.recurrence)
        result, label, closed = asymptotic_limit(spec), spec.key, None
    else:
        entry = lookup(args.family, _family_params(args))
        result, label = entry_limit(entry), entry.key
        closed = evaluate_closed_form(entry.closed_form, result.dominant_root) if entry.closed_form else None
    data = {"family": label, **result.to_json()}
    if closed is not None:
        data["closed_form_value"] = closed
    if args.format == "json":
        emit_json(data)
    else:
        print(f"family          {label}")
        if result.dominant_root is not None:
            print(f"dominant root   {dec(result.dominant_root)}")
            print(f"alpha           {', '.join(map(str, result.alpha))}")
            print(f"beta            {', '.join(map(str, result.beta))}")
            print(f"base condition  {dec(result.hypothesis_report['p_value'])}")
        print(f"limit           {dec(result.limit)}")
        if closed is not None:
            print(f"closed form     {dec(closed)}")
    return 0


# --- converge ---------------------------------------------------------------


def convergence_table(entry, n_max: int, n_from: int | None = None, step: int = 1) -> dict:
    limit = entry_limit(entry).limit
    profiles = profiles_upto(entry, n_max)
    ns = sorted(n for n in profiles if n_from is None or n >= n_from)
    if not ns:
        raise ValueError(f"--from {n_from} is beyond --n-max {n_max}")
    ns = [n for n in ns if (n - ns[0]) % step == 0 or n == n_max]
    rows = []
    for n in ns:
        value = finite_ratio(profiles[n], entry.family.nu_of(n))
        rows.append({"n": n, "I": fraction_str(value), "I_dec": float(value), "gap": float(value) - limit})
    gaps = [abs(r["gap"]) for r in rows]
    out = {"family": entry.key, "limit": limit, "rows": rows,
           "monotone_gap": all(b <= a for a, b in zip(gaps, gaps[1:]))}
    # a gap of order 1/n cancels in 2*I(G_N) - I(G_{N/2}); N is a multiple of 4 so both share parity
    big = n_max - n_max % 4
    if big // 2 in profiles:
        hi = float(finite_ratio(profiles[big], entry.family.nu_of(big)))
        lo = float(finite_ratio(profiles[big // 2], entry.family.nu_of(big // 2)))
        out["extrapolated"] = {"n": big, "value": 2 * hi - lo, "gap": 2 * hi - lo - limit}
    return out


def cmd_converge(args) -> int:
    entry = lookup(args.family, _family_params(args))
    try:
        table = convergence_table(entry, args.n_max, args.n_from, args.step)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.format == "json":
        emit_json(table)
    elif args.format == "csv":
        print("n,I,I_dec,gap")
        for r in table["rows"]:
            print(f"{r['n']},{r['I']},{r['I_dec']!r},{r['gap']!r}")
    else:
        print(f"family {table['family']}  limit {dec(table['limit'])}")
        print(f"{'n':>6}  {'I(G_n)':>16}  {'gap':>16}")
        for r in table["rows"]:
            print(f"{r['n']:>6}  {dec(r['I_dec']):>16}  {dec(r['gap']):>16}")
        print(f"monotone gap: {'yes' if table['monotone_gap'] else 'no'}")
        if "extrapolated" in table:
            x = table["extrapolated"]
            print(f"extrapolated from n={x['n']}: {dec(x['value'])} (gap {dec(x['gap'])})")
    return 0


# --- verify -----------------------------------------------------------------


def cmd_verify(args) -> int:
    entry = lookup(args.family, _family_params(args))
    lo = args.n_from if args.n_from is not None else entry.verify_range[0]
    hi = args.n_to if args.n_to is not None else entry.verify_range[1]
    if hi < lo:
        raise InputError(f"empty range {lo}..{hi}")
    report = verify_entry(entry, (lo, hi), args.cap, args.workers)
    if args.format == "json":
        emit_json(report.to_json())
    else:
        for row in report.rows:
            mark = "ok" if row.match else f"MISMATCH predicted {row.predicted} enumerated {row.enumerated}"
            print(f"n={row.n:<3} {mark}")
        print(f"{entry.key}: {'PASS' if report.passed else 'FAIL'}")
    return 0


# --- sweep ------------------------------------------------------------------


def cmd_sweep(args) -> int:
    if args.stdin:
        graphs = list(read_graph6_stream(sys.stdin))
    elif args.n is not None:
        try:
            graphs = list(all_graphs(args.n))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        raise InputError("give --n or --stdin")
    rows, summary = compare_invariants(graphs, args.cap, args.workers)
    if args.format == "csv":
        write_csv(rows, sys.stdout)
        print(json.dumps(summary.to_json()), file=sys.stderr)
    elif args.format == "json":
        emit_json({"rows": [dict(zip(("graph6", "n", "m", "nu", "I", "I_ord", "I_DF", "I_ARW",
                                      "I_dec", "I_ord_dec", "I_DF_dec", "I_ARW_dec"), r.csv_fields()))
                            for r in rows],
                   "summary": summary.to_json()})
    else:
        for r in rows:
            print(f"{r.graph6:10s} n={r.n} m={r.m:<2} nu={r.nu}  I={dec(r.i_avg):14s} I_ord={dec(r.i_ord):14s} "
                  f"I_DF={dec(r.i_df):14s} I_ARW={dec(r.i_arw)}")
        s = summary
        print(f"graphs {s.graphs}; I_DF > I_ord: {s.df_above_ord}; I_DF < I: {s.df_below_avg}")
    return 0


# --- report / catalog ---------------------------------------------------------


def cmd_report(args) -> int:
    rows = []
    for entry in catalog():
        result = entry_limit(entry)
        rows.append({
            "family": entry.family_id, "params": entry.params, "label": entry.key,
            "limit": result.limit, "dominant_root": result.dominant_root,
            "closed_form": entry.closed_form, "quoted": entry.quoted,
        })
    if args.format == "json":
        emit_json(rows)
    elif args.format == "csv":
        print("label,limit,dominant_root,quoted")
        for r in rows:
            print(f"{r['label']},{r['limit']!r},{r['dominant_root'] if r['dominant_root'] is not None else ''},"
                  f"{r['quoted'] or ''}")
    else:
        print(f"{'family':30s} {'limit':>16} {'root':>16}  quoted")
        for r in rows:
            root = dec(r["dominant_root"]) if r["dominant_root"] is not None else "-"
            print(f"{r['label']:30s} {dec(r['limit']):>16} {root:>16}  {r['quoted'] or ''}")
    return 0


def cmd_catalog(args) -> int:
    emit_json(catalog_json())
    return 0


# --- wiring -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"),
                        help="output format (default text; csv for sweep)")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="vertex cap for enumeration (default from MAXMATCH_CAP, else 26)")

    parser = argparse.ArgumentParser(prog="maxmatch", description="Exact maximal-matching statistics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="invariant report for one graph")
    p.add_argument("--edge-list", metavar="FILE", help="edge-list file ('-' for stdin)")
    p.add_argument("--graph6", metavar="STRING")
    _add_family_args(p, required=False)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("asymptote", parents=[common], help="limit of I(G_n) for a family")
    _add_family_args(p, required=False)
    p.add_argument("--recurrence", metavar="FILE", help="JSON recurrence {coeffs, base_profiles, n_min, c}")
    p.set_defaults(func=cmd_asymptote)

    p = sub.add_parser("converge", parents=[common], help="I(G_n) against the limit up to n-max")
    _add_family_args(p)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--from", dest="n_from", type=int)
    p.add_argument("--step", type=int, default=1)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("verify", parents=[common], help="recurrence against enumeration")
    _add_family_args(p)
    p.add_argument("--from", dest="n_from", type=int)
    p.add_argument("--to", dest="n_to", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="all graphs of one order, sorted by I")
    p.add_argument("--n", type=int)
    p.add_argument("--stdin", action="store_true", help="read graph6 lines from standard input")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep, default_format="csv")

    p = sub.add_parser("report", parents=[common], help="limit table for every catalog family")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("catalog", help="dump the recurrence catalog as JSON")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "format", None) is None:
        args.format = getattr(args, "default_format", "text")
    if getattr(args, "step", 1) < 1 or getattr(args, "workers", 1) < 1:
        print("error: --step and --workers must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(json.dumps({"hypothesis_report": exc.report}), file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (InputError, GraphFormatError, FamilyError, CatalogError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
