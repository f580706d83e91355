"""Command line entry point: ``spinecensus <command> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
import time

from . import __version__

log = logging.getLogger("spinecensus")

EXIT_OK, EXIT_USAGE, EXIT_STORE = 0, 2, 3


def _cmd_graphs(args) -> int:
    from .quadgraph import enumerate_quadgraphs, filter_useful_bricks, filter_useful_closed

    counts = {}
    for n in range(args.tets, (args.upto or args.tets) + 1):
        t0 = time.time()
        gs = enumerate_quadgraphs(n)
        row = {"all": len(gs)}
        if n >= 3:
            row["useful_closed"] = sum(1 for g in gs if filter_useful_closed(g))
            row["useful_bricks"] = sum(1 for g in gs if filter_useful_bricks(g))
        counts[n] = row
        print("\t".join([str(n)] + [f"{k}={v}" for k, v in row.items()]) + f"\t{time.time() - t0:.1f}s")
        if args.list:
            for g in gs:
                print(g)
    if args.report:
        from .report import write_graph_report

        for p in write_graph_report(counts, args.report):
            print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK


def _cmd_census(args) -> int:
    from .census import StoreError, run_census
    from .pruning import CRITERIA

    prune = CRITERIA if args.prune is None else tuple(x for x in args.prune.split(",") if x)
    bad = set(prune) - set(CRITERIA)
    if bad:
        print(f"error: unknown prune criteria {','.join(sorted(bad))}", file=sys.stderr)
        return EXIT_USAGE
    if args.tets < 1:
        print("error: --tets must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        rep = run_census(
            args.tets,
            args.mode,
            prune,
            orientable_only=args.orientable_only,
            store=args.store,
            workers=args.workers,
        )
    except StoreError as exc:
        print(f"store error: {exc}", file=sys.stderr)
        return EXIT_STORE
    for name, count in rep.stage_rows():
        print(f"{name}\t{count}")
    for r in rep.new_classes:
        print(f"class\t{r.status.split('=', 1)[1]}\t{r.signature}\t{r.record.to_text()}")
    print("# classes are told apart by invariants (H1, TV5, TV7); equal invariants are identified, not proved homeomorphic")
    if args.report:
        from .report import write_census_report

        for p in write_census_report(rep, args.report):
            print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK


def _cmd_seifert(args) -> int:
    from .seifert import FORMULA_LIMIT, ROWS, enumerate_geometric_census

    if not 0 <= args.max_c <= FORMULA_LIMIT:
        print(f"error: --max-c must be in 0..{FORMULA_LIMIT}", file=sys.stderr)
        return EXIT_USAGE
    if args.geometry and args.geometry not in ROWS:
        print(f"error: --geometry must be one of {', '.join(ROWS)}", file=sys.stderr)
        return EXIT_USAGE
    census = enumerate_geometric_census(args.max_c)
    rows = [args.geometry] if args.geometry else list(ROWS)
    if args.rows:
        print("geometry\t" + "\t".join(str(c) for c in range(args.max_c + 1)))
        for g in rows:
            print(g + "\t" + "\t".join(str(x) for x in census.row(g)))
    else:
        for g in rows:
            for c in range(args.max_c + 1):
                print(f"{g} {c} {census.rows.get((g, c), 0)}")
    if args.list:
        for g, c, desc in census.manifolds:
            if g in rows:
                print(f"{g}\t{c}\t{desc}")
    if args.report:
        from .report import write_geometric_report

        for p in write_geometric_report(census, args.report):
            print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK


def _cmd_bricks(args) -> int:
    from .marked import brick_catalogue, lens_assembly
    from .seifert import InvalidPair, LensSpace

    if args.target_lens:
        p, q = args.target_lens
        try:
            lens = LensSpace.canonical(p, q)
        except InvalidPair as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if lens.p == 0:
            print("error: S^2 x S^1 is not built from solid tori here", file=sys.stderr)
            return EXIT_USAGE
        m = lens_assembly(lens.p, lens.q)
        print(f"{lens}\tbound={m.bound}\tformula={lens.complexity}")
        print(m.expr)
        return EXIT_OK
    for b in brick_catalogue():
        kind = "closed" if b.closed else "boundary"
        tori = " ".join(str(t) for t in b.boundary) or ("opaque" if b.opaque else "-")
        print(f"{b.name}\t{kind}\tc={b.c}\t{tori}\t{b.description}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spinecensus", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graphs", help="count 4-valent face-pairing graphs")
    g.add_argument("--tets", type=int, required=True)
    g.add_argument("--upto", type=int, help="count every n from --tets to this")
    g.add_argument("--list", action="store_true", help="print graph codes")
    g.add_argument("--report", metavar="DIR", help="write TSV and PNG to DIR")
    g.set_defaults(func=_cmd_graphs)

    c = sub.add_parser("census", help="run one census level")
    c.add_argument("--tets", type=int, required=True)
    c.add_argument("--mode", choices=("closed", "ideal"), default="closed")
    c.add_argument("--orientable-only", action="store_true")
    c.add_argument("--prune", help="comma-separated subset of faces,incidence,disc (empty string for none)")
    c.add_argument("--store", metavar="DIR")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--report", nargs="?", const="report", metavar="DIR", help="write TSV and PNG (default dir: report)")
    c.set_defaults(func=_cmd_census)

    s = sub.add_parser("seifert", help="geometric census from closed formulas")
    s.add_argument("--max-c", type=int, required=True)
    s.add_argument("--geometry")
    s.add_argument("--rows", action="store_true", help="one wide row per geometry")
    s.add_argument("--list", action="store_true", help="also print each manifold")
    s.add_argument("--report", nargs="?", const="report", metavar="DIR")
    s.set_defaults(func=_cmd_seifert)

    b = sub.add_parser("bricks", help="brick catalogue and lens-space assemblies")
    grp = b.add_mutually_exclusive_group(required=True)
    grp.add_argument("--target-lens", nargs=2, type=int, metavar=("P", "Q"))
    grp.add_argument("--catalogue", action="store_true")
    b.set_defaults(func=_cmd_bricks)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
