"""Command-line entry point: ``noncrossing <subcommand> FILE ...``.

Exit codes: 0 success, 1 a verification check failed, 2 bad input,
3 a resource cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

from . import complex as cx
from .complex import (
    FaceLimitExceeded,
    InvariantViolation,
    NoDiagonals,
    NotADiagonal,
    boundary_faces,
    build_complex,
    cut_along_diagonal,
    f_vector,
    link,
    triangulation_is_tiling,
)
from .homology import Classification, MatrixTooLarge, classify, reduced_homology
from .morse import mouth_incidence_check, run_morse
from .region import (
    Convexity,
    NoMouth,
    Region,
    RegionError,
    classify_all,
    ears,
    is_convex,
    mouths,
    select_mouth,
    validate,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class ParseError(ValueError):
    pass


def _pairs(value, where):
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list of [x, y] pairs")
    out = []
    for k, p in enumerate(value):
        if not (isinstance(p, list) and len(p) == 2 and all(type(c) is int for c in p)):
            raise ParseError(f"{where}[{k}]: expected an [x, y] pair of integers, got {p!r}")
        out.append(tuple(p))
    return out


def parse_region_text(text: str, source: str = "<string>") -> Region:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict) or "outer" not in data:
        raise ParseError(f"{source}: expected an object with an 'outer' field")
    outer = _pairs(data["outer"], f"{source}: outer")
    holes_raw = data.get("holes", [])
    if not isinstance(holes_raw, list):
        raise ParseError(f"{source}: holes: expected a list of rings")
    holes = [_pairs(h, f"{source}: holes[{k}]") for k, h in enumerate(holes_raw)]
    try:
        return validate(outer, holes)
    except RegionError as exc:
        raise RegionError(f"{source}: {exc}") from exc


def parse_region(path) -> Region:
    path = Path(path)
    return parse_region_text(path.read_text(encoding="utf-8"), str(path))


def dump_region(region: Region) -> str:
    return json.dumps(region.to_dict())


def _diag_arg(text: str):
    try:
        u, v = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected U,V, got {text!r}")
    return (min(u, v), max(u, v))


def _fmt_diag(dg) -> str:
    return f"{dg[0]},{dg[1]}"


def _expected_class(region: Region) -> Classification:
    return Classification.SPHERE_LIKE if is_convex(region) else Classification.BALL_LIKE


def cmd_validate(args, out):
    region = parse_region(args.file)
    print(f"valid: n={region.n} h={region.h} convex={str(is_convex(region)).lower()}", file=out)
    return EXIT_OK


def cmd_diagonals(args, out):
    region = parse_region(args.file)
    for dg in cx.enumerate_diagonals(region):
        print(_fmt_diag(dg), file=out)
    return EXIT_OK


def cmd_vertices(args, out):
    region = parse_region(args.file)
    print("index ring convexity principal ear mouth", file=out)
    for c in classify_all(region):
        print(
            f"{c.index} {region.ring_of[c.index]} {c.convexity.value} "
            f"{int(c.principal)} {int(c.ear)} {int(c.mouth)}",
            file=out,
        )
    return EXIT_OK


def cmd_complex(args, out):
    region = parse_region(args.file)
    cplx = build_complex(region, max_faces=args.max_faces)
    if args.count_only:
        print(f"facets: {len(cplx.facets)}", file=out)
        return EXIT_OK
    fv = f_vector(cplx)
    print(f"diagonals: {cplx.d}", file=out)
    print(f"f-vector: {list(fv)}", file=out)
    print(f"facets: {len(cplx.facets)}", file=out)
    print(f"dim: {cplx.dim}", file=out)
    print(f"pure: {str(cplx.is_pure).lower()}", file=out)
    print("flag: true", file=out)
    return EXIT_OK


def cmd_triangulations(args, out):
    region = parse_region(args.file)
    cplx = build_complex(region, max_faces=args.max_faces)
    if args.count_only:
        print(len(cplx.facets), file=out)
        return EXIT_OK
    for f in cplx.facets:
        print(" ".join(_fmt_diag(cplx.labels[i]) for i in cx.members(f)), file=out)
    return EXIT_OK


def cmd_morse(args, out):
    region = parse_region(args.file)
    if args.mouth is None:
        try:
            select_mouth(region)
        except NoMouth:
            print("no mouth: use homology pipeline", file=sys.stderr)
            return EXIT_INPUT
    cplx = build_complex(region, max_faces=args.max_faces)
    result = run_morse(cplx, args.mouth)
    rep = result.conditions
    print(f"mouth: {result.order.x}", file=out)
    for cond in (1, 2, 3, 4):
        print(f"condition {cond}: checked={rep.checked[cond]} failed={rep.failed[cond]}", file=out)
    if rep.undefined:
        print(f"pairing undefined on {rep.undefined} faces", file=out)
    if rep.first_failure:
        print(f"first failure: {rep.first_failure}", file=out)
    if result.matching is not None:
        print(f"matched pairs: {len(result.matching.matched_pairs)}", file=out)
        print(f"critical: {len(result.matching.critical)}", file=out)
    print(f"acyclic: {str(result.acyclic).lower()}", file=out)
    if result.log is not None:
        print(f"collapses: {len(result.log.steps)}", file=out)
        survivor = cplx.labels[cx.members(result.log.survivor)[0]]
        print(f"surviving vertex: {_fmt_diag(survivor)}", file=out)
        if args.log:
            Path(args.log).write_text("\n".join(result.log.to_lines()) + "\n", encoding="utf-8")
    return EXIT_OK if result.ok else EXIT_FAILED


def cmd_homology(args, out):
    region = parse_region(args.file)
    cplx = build_complex(region, max_faces=args.max_faces)
    profile = reduced_homology(cplx)
    label = classify(profile, cplx)
    print(f"reduced betti (GF(2)): {list(profile.reduced_betti)}", file=out)
    print(f"torsion free: {str(profile.torsion_free).lower()}", file=out)
    print(f"{label.value}, dim {cplx.dim}  (homology-level proxy)", file=out)
    ok = label is _expected_class(region) and profile.torsion_free and profile.euler_check
    return EXIT_OK if ok else EXIT_FAILED


def cmd_link(args, out):
    region = parse_region(args.file)
    cplx = build_complex(region, max_faces=args.max_faces)
    try:
        v = cplx.index_of(args.diagonal)
    except ValueError:
        raise NotADiagonal(f"{args.diagonal} is not a diagonal")
    lk = link(cplx, v)
    profile = reduced_homology(lk)
    print(f"f-vector: {list(f_vector(lk))}", file=out)
    print(f"reduced betti (GF(2)): {list(profile.reduced_betti)}", file=out)
    print(f"{classify(profile, lk).value}, dim {lk.dim}  (homology-level proxy)", file=out)
    return EXIT_OK


def cmd_cut(args, out):
    region = parse_region(args.file)
    cut = cut_along_diagonal(region, args.diagonal)
    stem = Path(args.file).stem
    for k, piece in enumerate(cut.pieces):
        text = dump_region(piece)
        if args.out_dir:
            target = Path(args.out_dir) / f"{stem}.cut{k}.json"
            target.write_text(text + "\n", encoding="utf-8")
            print(f"{target} vertex_map={list(cut.vertex_maps[k])}", file=out)
        else:
            print(text, file=out)
    return EXIT_OK


def build_report(region: Region, max_faces=None, timings: bool = False) -> tuple[dict, bool]:
    """Full structured report plus an overall pass/fail verdict."""
    clock = {}
    t0 = time.perf_counter()
    convex = is_convex(region)
    region_part = {
        "n": region.n,
        "h": region.h,
        "convex": convex,
        "ears": ears(region) if region.h == 0 else None,
        "mouths": mouths(region),
    }
    checks = {}
    if region.h == 0:
        checks["at_least_two_ears"] = len(region_part["ears"]) >= 2
    checks["mouth_iff_nonconvex"] = bool(region_part["mouths"]) == (not convex)
    clock["region"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    cplx = build_complex(region, max_faces=max_faces)
    fv = f_vector(cplx)
    complex_part = {
        "diagonals": [list(dg) for dg in cplx.labels],
        "d": cplx.d,
        "f_vector": list(fv),
        "facets": len(cplx.facets),
        "dim": cplx.dim,
        "pure": cplx.is_pure,
        "facet_size": region.triangulation_size,
    }
    checks["pure"] = cplx.is_pure and cplx.dim == region.triangulation_size - 1
    checks["facets_tile"] = all(
        triangulation_is_tiling(region, [cplx.labels[i] for i in cx.members(f)]) for f in cplx.facets
    )
    clock["complex"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    morse_part = None
    if not convex:
        result = run_morse(cplx)
        morse_part = {
            "mouth": result.order.x,
            "conditions": {str(c): result.conditions.failed[c] == 0 for c in (1, 2, 3, 4)},
            "pairing_defined": result.conditions.undefined == 0,
            "acyclic": result.acyclic,
            "collapse_length": len(result.log.steps) if result.log else None,
            "surviving_vertex": (
                list(cplx.labels[cx.members(result.log.survivor)[0]]) if result.log else None
            ),
            "mouth_incidence": mouth_incidence_check(cplx, result.order.x),
        }
        checks["morse_collapse"] = result.ok
        checks["mouth_incidence"] = morse_part["mouth_incidence"]
    clock["morse"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    profile = reduced_homology(cplx)
    label = classify(profile, cplx)
    homology_part = {
        "reduced_betti": list(profile.reduced_betti),
        "torsion_free": profile.torsion_free,
        "euler_check": profile.euler_check,
        "classification": label.value,
        "note": "homology-level proxy, not a homeomorphism certificate",
    }
    checks["classification"] = label is _expected_class(region)
    checks["torsion_free"] = bool(profile.torsion_free)
    if region.h:
        checks["every_vertex_on_boundary"] = boundary_faces(cplx).vertices == frozenset(range(cplx.d))
    clock["homology"] = time.perf_counter() - t0

    report = {
        "region": region_part,
        "complex": complex_part,
        "morse": morse_part,
        "homology": homology_part,
        "checks": checks,
        "ok": all(checks.values()),
    }
    if timings:
        report["timings"] = {k: round(v, 6) for k, v in clock.items()}
    return report, report["ok"]


def cmd_report(args, out):
    region = parse_region(args.file)
    report, ok = build_report(region, args.max_faces, args.timings)
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return EXIT_OK if ok else EXIT_FAILED


def render_svg(region: Region, show_diagonals: bool = False, max_faces=None) -> str:
    """SVG of the region and, for at most 12 diagonals, the 1-skeleton of its complex."""
    pts = region.points
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1
    size = 360
    pad = 20
    scale = (size - 2 * pad) / span

    def to_px(p):
        return pad + (p[0] - min(xs)) * scale, size - pad - (p[1] - min(ys)) * scale

    parts = []
    diagonals = cx.enumerate_diagonals(region)
    if show_diagonals:
        for u, v in diagonals:
            (x1, y1), (x2, y2) = to_px(pts[u]), to_px(pts[v])
            parts.append(
                f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                'stroke="#3b7dd8" stroke-width="1" stroke-dasharray="4 3"/>'
            )
    for ring in region.rings:
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(to_px, ring))
        parts.append(f'<polygon points="{coords}" fill="none" stroke="black" stroke-width="2"/>')
    for i, p in enumerate(pts):
        x, y = to_px(p)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="black"/>')
        parts.append(f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" font-size="11">{i}</text>')

    width = size
    if diagonals and len(diagonals) <= 12:
        cplx = build_complex(region, max_faces=max_faces)
        cx0, cy0, rad = size + size / 2, size / 2, size / 2 - 50
        pos = [
            (cx0 + rad * math.cos(2 * math.pi * k / cplx.d), cy0 + rad * math.sin(2 * math.pi * k / cplx.d))
            for k in range(cplx.d)
        ]
        for f in cplx.by_size.get(2, ()):
            a, b = cx.members(f)
            parts.append(
                f'<line x1="{pos[a][0]:.2f}" y1="{pos[a][1]:.2f}" x2="{pos[b][0]:.2f}" '
                f'y2="{pos[b][1]:.2f}" stroke="#555" stroke-width="1"/>'
            )
        for k, (x, y) in enumerate(pos):
            parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="#c0392b"/>')
            parts.append(f'<text x="{x + 6:.2f}" y="{y - 6:.2f}" font-size="10">{_fmt_diag(cplx.labels[k])}</text>')
        width = 2 * size
    body = "\n  ".join(parts)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{size}" '
        f'viewBox="0 0 {width} {size}">\n  {body}\n</svg>\n'
    )


def cmd_svg(args, out):
    region = parse_region(args.file)
    Path(args.out).write_text(render_svg(region, args.show_diagonals, args.max_faces), encoding="utf-8")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="noncrossing", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("--max-faces", type=int, default=None, help="face enumeration cap")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check a region file")
    add("diagonals", cmd_diagonals, "list diagonals as U,V")
    add("vertices", cmd_vertices, "per-vertex classification table")
    p = add("complex", cmd_complex, "f-vector, facets and purity of the complex")
    p.add_argument("--count-only", action="store_true")
    p = add("triangulations", cmd_triangulations, "list triangulations")
    p.add_argument("--count-only", action="store_true")
    p = add("morse", cmd_morse, "pairing conditions and collapse")
    p.add_argument("--mouth", type=int, default=None)
    p.add_argument("--log", default=None, help="write the collapse log here")
    add("homology", cmd_homology, "reduced Betti numbers and classification")
    p = add("link", cmd_link, "link of a diagonal")
    p.add_argument("--diagonal", type=_diag_arg, required=True)
    p = add("cut", cmd_cut, "cut the region along a diagonal")
    p.add_argument("--diagonal", type=_diag_arg, required=True)
    p.add_argument("--out-dir", default=None)
    p = add("report", cmd_report, "full structured report")
    p.add_argument("--out", default=None)
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (not deterministic)")
    p = add("svg", cmd_svg, "draw the region")
    p.add_argument("--out", required=True)
    p.add_argument("--show-diagonals", action="store_true")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (ParseError, RegionError, NotADiagonal, NoDiagonals, NoMouth, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (FaceLimitExceeded, MatrixTooLarge) as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantViolation as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
