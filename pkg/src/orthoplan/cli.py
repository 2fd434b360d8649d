"""Command-line front end.

Exit codes: 0 ok, 1 verification failed, 2 unreadable or malformed input,
3 non-planar graph, 4 no L/T site, 5 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from orthoplan import __version__
from orthoplan.errors import GraphError, OrthoPlanError
from orthoplan.formats import (
    analysis_to_dict,
    dumps,
    graph_to_dict,
    read_graph,
    read_plan,
    removal_to_dict,
    site_to_dict,
    write_graph,
    write_json,
    write_plan,
)
from orthoplan.generate import GenSpec, generate
from orthoplan.layout import L_SHAPE, T_SHAPE, canonicalize_polygon
from orthoplan.pipeline import run
from orthoplan.rel import T1, T2
from orthoplan.svg import render_svg
from orthoplan.triangles import find_kl, find_kt, find_separating_triangles, remove_complex_triangles
from orthoplan.verify import check_plan_against_graph, scaling_probe

log = logging.getLogger("orthoplan")

EXIT_OK, EXIT_VERIFY = 0, 1


def _setup_logging() -> None:
    level = os.environ.get("ORTHOPLAN_LOG", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _shape_name(s: str | None) -> str | None:
    if s is None:
        return None
    return {"L": L_SHAPE, "T": T_SHAPE}.get(s.upper(), s)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_analyze(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    seps = find_separating_triangles(g)
    kl, kt = find_kl(g), find_kt(g)
    removal = None
    if kl:
        _, removal = remove_complex_triangles(g, [kl[0].triangle])
    elif kt:
        _, removal = remove_complex_triangles(g, list(kt[0].triangles))
    report = analysis_to_dict(seps, kl, kt, removal)
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


def _plan_one(graph: str, shape: str, site: int, free_basic: int, out: str | None, svg: str | None) -> dict:
    g = read_graph(graph)
    res = run(g, shape, site, free_basic)
    report = check_plan_against_graph(res.plan, g, res.plan.designated, res.shape)
    outputs = {}
    if out:
        write_plan(out, res.plan)
        outputs["plan"] = out
    if svg:
        Path(svg).write_text(render_svg(res.plan), encoding="utf-8")
        outputs["svg"] = svg
    manifest = {
        "command": "plan",
        "input": graph,
        "shape": shape.upper(),
        "seed": None,
        "site": site_to_dict(res.site),
        "site_index": site,
        "free_basic": f"T{free_basic}",
        "category": res.category,
        "m": res.selector.m if res.selector else None,
        "case": res.selector.case if res.selector else None,
        "flips": [list(e) for e in res.selector.flips_applied] if res.selector else [],
        "rotation": res.rotation,
        "removal": removal_to_dict(res.removal),
        "designated": res.plan.designated,
        "outputs": outputs,
        "timings": {k: round(v, 6) for k, v in res.timings.items()},
        "verdict": report.verdict,
    }
    if out:
        write_json(out + ".manifest.json", manifest)
    if not report.verdict:
        where = (out or graph) + ".verify.json"
        write_json(where, report.to_dict())
        raise OrthoPlanError(f"plan failed its own verification; report written to {where}")
    return manifest


def _plan_job(job: tuple) -> tuple[str, int, str]:
    try:
        m = _plan_one(*job)
        return job[0], EXIT_OK, f"category={m['category']} m={m['m']} designated={m['designated']}"
    except OrthoPlanError as exc:
        return job[0], exc.exit_code, f"{type(exc).__name__}: {exc}"


def cmd_plan(args: argparse.Namespace) -> int:
    free = T1 if args.free_basic == "t1" else T2
    if len(args.graph) == 1:
        m = _plan_one(args.graph[0], args.shape, args.site, free, args.out, args.svg)
        print(f"category: {m['category']}")
        print(f"m: {m['m']}")
        print(f"designated: {m['designated']}")
        return EXIT_OK
    if args.out or args.svg:
        raise GraphError("--out/--svg take a single graph; use --out-dir for several")
    out_dir = Path(args.out_dir or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    jobs = []
    for gpath in args.graph:
        stem = out_dir / Path(gpath).stem
        jobs.append((gpath, args.shape, args.site, free, f"{stem}.plan.json", f"{stem}.svg"))
    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(_plan_job, jobs))
    worst = EXIT_OK
    for path, code, msg in results:
        print(f"{path}: {msg}")
        worst = max(worst, code)
    return worst


def cmd_verify(args: argparse.Namespace) -> int:
    g = read_graph(args.graph)
    plan = read_plan(args.plan)
    designated = args.designated if args.designated is not None else plan.designated
    shape = _shape_name(args.shape)
    if shape is None and designated is not None:
        shape = plan.shapes.get(designated) or None
    report = check_plan_against_graph(plan, g, designated, shape)
    text = dumps(report.to_dict())
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK if report.verdict else EXIT_VERIFY


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        spec = GenSpec(args.kind.upper(), args.n, args.seed)
    except ValueError as exc:
        raise GraphError(str(exc)) from exc
    g = generate(spec)
    if spec.kind == "L" and not find_kl(g):
        raise OrthoPlanError("generated graph has no K_L site")
    if spec.kind == "T" and not find_kt(g):
        raise OrthoPlanError("generated graph has no K_T site")
    if args.out:
        write_graph(args.out, g)
    else:
        sys.stdout.write(dumps(graph_to_dict(g)))
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    plan = read_plan(args.plan)
    plan.polygons = {v: canonicalize_polygon(p) for v, p in plan.polygons.items()}
    text = render_svg(plan)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_probe(args: argparse.Namespace) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    kind = args.kind.upper()
    rows = scaling_probe(
        sizes,
        range(args.seeds),
        lambda n, seed: generate(GenSpec(kind, n, seed)),
        lambda g: run(g, kind),
    )
    out = [{"n": r.n, "median_seconds": round(r.median_seconds, 4), "ratio": r.ratio and round(r.ratio, 3)} for r in rows]
    if args.json:
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    else:
        print(f"{'n':>8} {'median s':>10} {'ratio':>7}")
        for r in out:
            ratio = "-" if r["ratio"] is None else f"{r['ratio']:.2f}"
            print(f"{r['n']:>8} {r['median_seconds']:>10.4f} {ratio:>7}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orthoplan", description="Orthogonal floor plans with an L- or T-shaped module.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="list separating triangles and L/T sites")
    a.add_argument("graph")
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    pl = sub.add_parser("plan", help="build a floor plan")
    pl.add_argument("graph", nargs="+")
    pl.add_argument("--shape", choices=["l", "t", "L", "T"], default="l")
    pl.add_argument("--site", type=int, default=0, help="index into the detected sites")
    pl.add_argument("--free-basic", choices=["t1", "t2"], default="t1")
    pl.add_argument("--out", help="plan JSON (a manifest is written beside it)")
    pl.add_argument("--svg")
    pl.add_argument("--out-dir", help="output directory when several graphs are given")
    pl.add_argument("--jobs", type=int, default=1)
    pl.set_defaults(func=cmd_plan)

    v = sub.add_parser("verify", help="check a plan against its graph")
    v.add_argument("graph")
    v.add_argument("plan")
    v.add_argument("--shape", choices=["l", "t", "L", "T"])
    v.add_argument("--designated", type=int)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    gn = sub.add_parser("gen", help="generate a seeded instance")
    gn.add_argument("--kind", choices=["l", "t", "L", "T"], default="L")
    gn.add_argument("--n", type=int, required=True)
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--out")
    gn.set_defaults(func=cmd_gen)

    r = sub.add_parser("render", help="draw a plan file as SVG")
    r.add_argument("plan")
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)

    pr = sub.add_parser("probe", help="time the pipeline at several sizes")
    pr.add_argument("--kind", choices=["l", "t", "L", "T"], default="L")
    pr.add_argument("--sizes", default="1000,2000,4000")
    pr.add_argument("--seeds", type=int, default=3)
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(func=cmd_probe)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OrthoPlanError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
