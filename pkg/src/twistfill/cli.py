"""Command line front end.

Every command accepting a curve system file also accepts a catalog id such as
``g2_i4``.  Exit codes: 0 success, 1 a verification failed, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .catalog_io import CatalogError, ParseError, SEEDS, get_system, load_entry, serialize_csf
from .curve_system import CurveSystemError, intersection_number, is_filling
from .free_group import (
    check_pingpong_inclusion,
    pingpong_generator,
    reduce,
    relation_search_abstract,
    stallings_rank,
)
from .twist_engine import TwistError, TwistWord, family_report, image_system

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(name: str):
    try:
        return get_system(name)
    except (ParseError, CurveSystemError, CatalogError) as exc:
        raise UsageError(f"{name}: {exc}") from None
    except OSError as exc:
        raise UsageError(f"{name}: {exc.strerror or exc}") from None


def _table(rows, header=("check", "status", "detail")) -> str:
    rows = [tuple(str(x) for x in r) for r in rows]
    widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header) - 1)]
    lines = []
    for r in [header] + rows:
        head = "  ".join(c.ljust(w) for c, w in zip(r, widths))
        lines.append(f"{head}  {r[-1]}".rstrip())
    return "\n".join(lines)


def _report(args, payload: dict, ok: bool, started: float) -> None:
    if not getattr(args, "json", None):
        return
    report = {
        "command": args.command,
        "inputs": {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "func", "json")},
        "payload": payload,
        "ok": ok,
        "timing": {"elapsed_s": round(time.perf_counter() - started, 3)},
    }
    Path(args.json).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="ascii")


def _pair_names(s) -> tuple[str, str]:
    if len(s.names) != 2:
        raise UsageError(f"a pair file must hold exactly 2 curves, found {len(s.names)}")
    return s.names[0], s.names[1]


def cmd_verify_family(args) -> int:
    started = time.perf_counter()
    if args.d is None or args.d < 2:
        raise UsageError("d must be >= 2")
    s = _load(args.pair)
    a, b = _pair_names(s)
    if not is_filling(s).filling:
        print("not a filling pair", file=sys.stderr)
        return EXIT_FAIL
    fam, rep = family_report(s, a, b, args.d, k_max=args.k, prop22_samples=args.samples, probe_length=args.L)
    names = rep.pairwise.names
    print(f"family d={rep.d} on genus {rep.genus}, base i({a},{b}) = {rep.base_intersection}")
    print("pairwise intersections:")
    print(_table([(x, *rep.pairwise.matrix[i]) for i, x in enumerate(names)], ("", *names)))
    print(f"filling: {rep.filling}   faces: {rep.faces}   formula: {rep.formula_faces}")
    print(_table([(c.name, "PASS" if c.ok else "FAIL", c.detail) for c in rep.checks]))
    if args.out:
        Path(args.out).write_bytes(serialize_csf(fam).encode("ascii"))
    _report(args, rep.to_dict(), rep.ok, started)
    if not rep.ok:
        first = next(c for c in rep.checks if not c.ok)
        print(f"FAILED: {first.name}: {first.detail}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_intersect(args) -> int:
    started = time.perf_counter()
    s = _load(args.file)
    for n in (args.x, args.y):
        if n not in s.names:
            raise UsageError(f"unknown curve {n!r}; curves are {', '.join(s.names)}")
    if args.x == args.y:
        print(0)
        print("note: a simple closed curve can be isotoped off itself", file=sys.stderr)
        value = 0
    else:
        value = intersection_number(s, args.x, args.y)
        print(value)
    _report(args, {"x": args.x, "y": args.y, "intersection": value}, True, started)
    return EXIT_OK


def cmd_twist(args) -> int:
    started = time.perf_counter()
    s = _load(args.file)
    for n in (args.along, args.target):
        if n not in s.names:
            raise UsageError(f"unknown curve {n!r}")
    if args.along == args.target:
        raise UsageError("along and target must differ")
    if args.k == 0:
        out = s
        new = args.target
    else:
        new = args.target + "'"
        out = image_system(s, TwistWord(((args.along, args.k),)), [args.target])
    text = serialize_csf(out)
    if args.out:
        Path(args.out).write_bytes(text.encode("ascii"))
    else:
        sys.stdout.write(text)
    rows = {n: intersection_number(out, new, n) for n in out.names if n != new}
    print(f"image {new}: " + ", ".join(f"i({new},{n}) = {v}" for n, v in rows.items()), file=sys.stderr)
    _report(args, {"image": new, "intersections": rows}, True, started)
    return EXIT_OK


def cmd_certify_free(args) -> int:
    started = time.perf_counter()
    if args.d is None or args.d < 2:
        raise UsageError("d must be >= 2")
    if args.generators:
        gens = [reduce(g) for g in args.generators.split(",")]
    else:
        gens = [pingpong_generator(i) for i in range(args.d)]
    cert = stallings_rank(gens)
    rows = [("stallings_rank", "PASS" if cert["is_basis"] else "FAIL", f"rank {cert['rank']} for {len(gens)} generators")]
    payload = {"generators": [str(g) for g in gens], "rank": cert["rank"], "is_basis": cert["is_basis"]}
    if not args.generators:
        pp = check_pingpong_inclusion(args.d, args.k, args.L)
        rows.append(("pingpong_inclusion", "PASS" if pp.ok else "FAIL", str(pp)))
        rel = relation_search_abstract(args.d, args.L)
        rows.append(("relation_search", "PASS" if not rel else "FAIL", f"{len(rel)} relations of length <= {args.L}"))
        payload.update(pingpong_ok=pp.ok, pingpong_checked=pp.checked, relations=rel)
    ok = all(r[1] == "PASS" for r in rows)
    print(f"rank {cert['rank']}, {'basis' if cert['is_basis'] else 'not a basis'}")
    print(_table(rows))
    _report(args, payload, ok, started)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_faces(args) -> int:
    started = time.perf_counter()
    s = _load(args.file)
    rep = s.faces
    degrees = rep.degree_multiset()
    print(f"vertices {rep.vertex_count}  edges {rep.edge_count}  faces {rep.face_count}")
    print(f"euler {rep.euler}  genus {rep.genus}  components {rep.components}")
    print("face degrees: " + " ".join(map(str, degrees)))
    payload = {
        "vertices": rep.vertex_count,
        "edges": rep.edge_count,
        "faces": rep.face_count,
        "euler": rep.euler,
        "genus": rep.genus,
        "components": rep.components,
        "degrees": list(degrees),
    }
    _report(args, payload, True, started)
    return EXIT_OK


def cmd_validate(args) -> int:
    started = time.perf_counter()
    entry = next((e for e in SEEDS if e.id == args.file), None)
    if entry is not None:
        try:
            load_entry(entry)
        except CatalogError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_FAIL
    s = _load(args.file)
    fill = is_filling(s)
    print(f"ok: {len(s.names)} curves ({', '.join(s.names)}), {s.map.vertex_count} crossings, genus {s.ambient_genus}")
    print(f"filling: {fill.filling}  faces: {fill.face_count}")
    _report(args, {"curves": list(s.names), "filling": fill.filling, "faces": fill.face_count}, True, started)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twistfill", description="Dehn twist families of filling curves.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(q):
        q.add_argument("--json", metavar="PATH", help="write a structured report")

    q = sub.add_parser("verify-family", help="construct and verify a twist family from a filling pair")
    q.add_argument("--pair", required=True, metavar="FILE")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--k", type=int, default=3, help="twist power bound for the exactness sweep")
    q.add_argument("--L", type=int, default=6, help="relation probe length (0 disables)")
    q.add_argument("--samples", type=int, default=20, help="randomized inequality cells")
    q.add_argument("--out", metavar="PATH", help="write the family as CSF")
    common(q)
    q.set_defaults(func=cmd_verify_family)

    q = sub.add_parser("intersect", help="geometric intersection number of two curves")
    q.add_argument("file")
    q.add_argument("x")
    q.add_argument("y")
    common(q)
    q.set_defaults(func=cmd_intersect)

    q = sub.add_parser("twist", help="add the image of a curve under a twist power")
    q.add_argument("file")
    q.add_argument("along")
    q.add_argument("target")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--out", metavar="PATH")
    common(q)
    q.set_defaults(func=cmd_twist)

    q = sub.add_parser("certify-free", help="freeness certificates for h^-i f h^i, 0 <= i < d")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--L", type=int, default=6)
    q.add_argument("--k", type=int, default=3)
    q.add_argument("--generators", help=argparse.SUPPRESS)  # debug: comma separated words in f, h
    common(q)
    q.set_defaults(func=cmd_certify_free)

    for name, func, text in (
        ("faces", cmd_faces, "trace the complementary faces"),
        ("validate", cmd_validate, "parse and check a curve system file"),
    ):
        q = sub.add_parser(name, help=text)
        q.add_argument("file")
        common(q)
        q.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TwistError, CurveSystemError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
