"""``wheelramsey`` command line.

Exit codes: 0 every claim verified, 1 a witness was found, 2 usage or
config error, 3 integrity error (hash mismatch).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__, detection, oracles, pipeline
from .certificates import Catalog, Certificate, IntegrityError, apply_report, claim_for, reverify
from .formats import read_coloring, read_graph, sha256_file, to_graph6, write_coloring
from .graph import DomainError, EdgeColoring, Graph

OUTPUT_DIR_ENV = "WHEELRAMSEY_OUTPUT_DIR"


def _output_dir(args) -> Path:
    return Path(args.output_dir or os.environ.get(OUTPUT_DIR_ENV) or "wheelramsey-out")


def _colors(text):
    return None if text is None else [int(x) for x in text.split(",")]


def _emit_report(report, fmt: str) -> None:
    if fmt == "json-lines":
        d = report.to_dict()
        for entry in d["colors"]:
            print(json.dumps({"pattern": d["pattern"], "order": d["order"], **entry}))
        print(json.dumps({"status": d["status"], "census": report.census()}))
    elif fmt == "csv":
        print("color,absent,witness,centers_scanned")
        for r in report.to_dict()["colors"]:
            w = r["witness"]
            wtext = "" if w is None else " ".join(map(str, w.get("rim", w.get("vertices", []))))
            print(f"{r['color']},{r['absent']},{wtext},{r['centers_scanned']}")
        print(report.status_line())
    else:
        sys.stdout.write(report.to_text())


# --------------------------------------------------------------------------


def cmd_construct(args) -> int:
    base = inner = None
    if args.base:
        base = pipeline.builtin_base(args.base) or read_coloring(args.base)
    if args.inner:
        inner = read_coloring(args.inner)
    coloring, spec = pipeline.build(args.family, n=args.n, k=args.k, base=base, inner=inner)
    out = Path(args.output) if args.output else _output_dir(args) / f"{args.family}.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    digest = write_coloring(out, coloring)
    sidecar = out.with_name(out.name.removesuffix(".json") + ".blocks.json")
    sidecar.write_text(json.dumps(spec.to_dict(), indent=2) + "\n")
    if args.graph6_color is not None:
        g6 = out.with_name(out.name.removesuffix(".json") + f".c{args.graph6_color}.g6")
        g6.write_bytes(to_graph6(coloring.color_class(args.graph6_color)) + b"\n")
    print(f"wrote {out} order={coloring.order} colors={coloring.num_colors} sha256={digest}")
    return 0


def cmd_verify(args) -> int:
    path = Path(args.path)
    text = path.read_bytes()
    if b'"claim"' in text[:4096]:
        try:
            cert, report = reverify(path, args.threads)
        except IntegrityError as exc:
            print(f"ERROR: {IntegrityError.code} {exc}")
            return 3
        cert_label = f"certificate {cert.id}: "
    else:
        coloring = read_coloring(path)
        colors = _colors(args.colors)
        if args.pattern == "wheel":
            if args.n is None:
                raise DomainError("--n is required for wheel verification")
            report = detection.verify_wheel_free(coloring, args.n, colors, args.threads)
        else:
            report = detection.verify_pattern_free(coloring, args.pattern, colors)
        cert_label = ""
        if args.certificate:
            claim = claim_for(args.pattern, args.n, coloring.num_colors, coloring.order)
            cert_path = Path(args.certificate)
            rel = os.path.relpath(path.resolve(), cert_path.resolve().parent)
            cert = Certificate(cert_path.stem, rel, sha256_file(path), claim)
            apply_report(cert, report)
            cert_path.parent.mkdir(parents=True, exist_ok=True)
            cert_path.write_text(cert.to_json())
    if args.report:
        Path(args.report).write_text(report.to_text())
    if cert_label and args.format == "text":
        print(cert_label.rstrip())
    _emit_report(report, args.format)
    return 0 if report.passed else 1


def cmd_analyze(args) -> int:
    if args.color is not None:
        g = read_coloring(args.path).color_class(args.color)
    else:
        g = read_graph(args.path)
    wanted = [name for name in ("girth", "circumference", "pancyclic") if getattr(args, name)]
    wanted = wanted or ["girth", "circumference", "pancyclic"]
    out = {"order": g.order, "edges": g.num_edges(), "min_degree": g.min_degree()}
    if "girth" in wanted:
        gi = detection.girth(g)
        out["girth"] = None if gi == float("inf") else int(gi)
    if "circumference" in wanted:
        if g.order <= detection.EXACT_CIRCUMFERENCE_ORDER:
            out["circumference"] = detection.circumference(g)
        else:
            value, exact = detection.circumference_lower_bound(g, args.budget)
            out["circumference"] = value
            out["circumference_bound_only"] = not exact
    if "pancyclic" in wanted:
        res = detection.is_weakly_pancyclic(g)
        out["weakly_pancyclic"] = res.weakly_pancyclic
        out["missing_lengths"] = list(res.missing)
    if args.format == "json-lines":
        print(json.dumps(out))
    else:
        for key, value in out.items():
            print(f"{key}: {value}")
    return 0


def cmd_bounds(args) -> int:
    ns = pipeline._range(args.n_range) if args.n_range else [args.n or 7]
    ks = pipeline._range(args.k) if args.k else [2]
    rows = pipeline.bounds_rows(ks, ns, args.advisory)
    if args.format == "csv":
        sys.stdout.write(pipeline.bounds_csv(ks, ns, args.advisory))
    elif args.format == "json-lines":
        for row in rows:
            print(json.dumps(row))
    elif args.table:
        cols = pipeline.BOUNDS_COLUMNS
        widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
        print("  ".join(c.ljust(widths[c]) for c in cols).rstrip())
        for r in rows:
            print("  ".join(str(r[c]).ljust(widths[c]) for c in cols).rstrip())
    else:
        for r in rows:
            print(f"k={r['k']} n={r['n']}: {r['lower']} <= R <= {r['upper']} "
                  f"[{r['lower_tag']}, {r['upper_tag']}]" + (f" ({r['notes']})" if r["notes"] else ""))
    return 0


def cmd_oracle(args) -> int:
    if args.what == "cycles":
        g = Graph.complete(args.complete) if args.complete else read_graph(args.graph)
        census = oracles.cycle_census(g)
        print(" ".join(f"C{length}:{census[length]}" for length in sorted(census)) or "acyclic")
        return 0
    if args.what == "wheels":
        coloring = _oracle_coloring(args)
        for c in range(coloring.num_colors):
            print(f"color {c}: W{args.n} copies={oracles.wheel_count(coloring, args.n, c)}")
        return 0
    if args.all_colorings:
        free = oracles.colorings_without_mono_triangle(args.all_colorings)
        total = 2 ** (args.all_colorings * (args.all_colorings - 1) // 2)
        print(f"K{args.all_colorings}: {free} of {total} 2-colorings avoid a monochromatic triangle")
        return 0
    coloring = _oracle_coloring(args)
    name, size = detection.parse_pattern(args.pattern)
    for c in range(coloring.num_colors):
        print(f"color {c}: {detection.pattern_label(args.pattern)} copies="
              f"{oracles.pattern_count(coloring, name, size, c)}")
    return 0


def _oracle_coloring(args):
    if args.complete:
        return EdgeColoring.monochromatic(args.complete)
    if not args.coloring:
        raise DomainError("give --coloring PATH or --complete N")
    return read_coloring(args.coloring)


def cmd_pipeline(args) -> int:
    try:
        cfg = pipeline.load_config(args.config, seed=args.seed)
    except pipeline.ConfigError as exc:
        print(f"ERROR: CONFIG {exc}")
        return 2
    result = pipeline.run_pipeline(cfg, _output_dir(args), args.threads)
    for line in result.lines:
        print(line)
    for line in result.errors:
        print(line)
    print(f"pipeline {cfg.name}: exit={result.exit_status} output={result.output_dir}")
    return result.exit_status


def cmd_catalog(args) -> int:
    catalog = Catalog(_output_dir(args))
    if args.action == "list":
        for cert in catalog.certificates():
            print(f"{cert.id}\t{cert.status.upper()}\t{cert.claim['statement']}\torder={cert.claim['order']}")
        return 0
    if args.action == "show":
        if not args.id:
            raise DomainError("catalog show needs an id")
        try:
            cert = catalog.load(args.id)
        except KeyError:
            print(f"ERROR: UNKNOWN_ID {args.id}")
            return 2
        print(f"id: {cert.id}")
        print(f"claim: {cert.claim['statement']}")
        print(f"status: {cert.status}")
        print(f"coloring: {cert.coloring} sha256={cert.sha256}")
        print(f"method census: {cert.method_census}")
        print(f"witness: {cert.witness}")
        return 0
    removed = catalog.gc()
    for p in removed:
        print(f"removed {p}")
    print(f"gc: removed {len(removed)} file(s)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wheelramsey", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--output-dir", help=f"artifact directory (env {OUTPUT_DIR_ENV})")
    parser.add_argument("--threads", type=int, default=None, help="worker threads (default: all)")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized corpora")
    parser.add_argument("--format", choices=("text", "csv", "json-lines"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a coloring")
    p.add_argument("--family", required=True,
                   choices=("even-lower", "odd-lower", "paley5", "rook9", "blowup", "iterated-blowup"))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--base", help="coloring path, or paley5 / rook9 / mono:S")
    p.add_argument("--inner", help="coloring path for the blocks of a blow-up")
    p.add_argument("-o", "--output", help="coloring file to write")
    p.add_argument("--graph6-color", type=int, help="also export this color class as graph6")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a coloring or certificate")
    p.add_argument("path", help="coloring file or certificate")
    p.add_argument("--pattern", default="wheel", help="wheel | triangle | k4- | clique:M")
    p.add_argument("--n", type=int, help="wheel order")
    p.add_argument("--colors", help="comma separated color filter")
    p.add_argument("--report", help="write the text report here")
    p.add_argument("--certificate", help="write a certificate here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="girth / circumference / weak pancyclicity")
    p.add_argument("path", help="graph (.g6 or JSON) or coloring with --color")
    p.add_argument("--color", type=int, help="analyze this color class of a coloring")
    p.add_argument("--girth", action="store_true")
    p.add_argument("--circumference", action="store_true")
    p.add_argument("--pancyclic", action="store_true")
    p.add_argument("--budget", type=int, default=1_000_000, help="DFS node budget above order 32")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bounds", help="evaluate the bound formulas")
    p.add_argument("--k", help="colors: K, A:B or A,B,...")
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", help="A:B inclusive or A,B,...")
    p.add_argument("--table", action="store_true", help="aligned text table")
    p.add_argument("--advisory", action="store_true", help="allow n = 4..6 with a warning")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("oracle", help="brute-force enumeration (order <= 10)")
    p.add_argument("what", choices=("wheels", "cycles", "patterns"))
    p.add_argument("--graph")
    p.add_argument("--coloring")
    p.add_argument("--complete", type=int, help="use K_N (single color)")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--pattern", default="triangle")
    p.add_argument("--all-colorings", type=int, help="scan every 2-coloring of K_N for triangles")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("pipeline", help="run a pipeline config")
    p.add_argument("config", help=f"config path or bundled name ({', '.join(pipeline.BUNDLED)})")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("catalog", help="list / show / gc certificates")
    p.add_argument("action", choices=("list", "show", "gc"))
    p.add_argument("id", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
