"""Command-line driver: ``python -m smoothpoly <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
parse error, 4 resource cap reached.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from smoothpoly import catalog as catalog_io
from smoothpoly.constructions import blow_downs, is_minimal
from smoothpoly.enumerate3d import classify_all
from smoothpoly.fans import is_smooth, normal_fan, surface_class
from smoothpoly.geometry import GeometryError
from smoothpoly.isomorphism import NotSmoothError, isomorphism
from smoothpoly.labels import (
    LabelError,
    TriangulationLabel,
    edge_blowup_labels,
    facet_point_lower_bound,
    is_realizable,
    label,
    vertex_blowup_labels,
)
from smoothpoly.normality import (
    DEGREE_CAP,
    ORDER_NAMES,
    SIZE_CAP,
    ResourceCapError,
    check_polytope,
    variable_order,
)

OK, FAILED, USAGE, IO_ERROR, CAP_ABORT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _emit(lines) -> None:
    sys.stdout.write("".join(f"{ln}\n" for ln in lines))
    sys.stdout.flush()


def _load_catalog(path):
    try:
        return catalog_io.read(path)
    except OSError as exc:
        raise catalog_io.CatalogFormatError(f"cannot read {path}: {exc.strerror}") from exc


# classify

def _summary(cf: catalog_io.CatalogFile, min_vertices: int) -> list:
    records = [r for r in cf.records if r["f_vector"][0] >= min_vertices]
    noun = "polytopes" if cf.dim == 3 else "polygons"
    lines = [f"{len(records)} {noun}"
             + (f" with at least {min_vertices} vertices" if min_vertices else "")]
    lines.append("by category:")
    lines += [f"  {k}: {v}" for k, v in catalog_io.tally(records).items()]
    if cf.dim == 3:
        lines.append("by embedding dimension:")
        by_dim = Counter(r["num_points"] - 1 for r in records)
        lines += [f"  P^{k}: {by_dim[k]}" for k in sorted(by_dim)]
        lines.append("by variety:")
        by_fiber = Counter(r["fiber_description"] for r in records)
        lines += [f"  {k}: {by_fiber[k]}" for k in sorted(by_fiber)]
        stats = cf.header.get("stats", {})
        if stats:
            lines.append("construction counts:")
            lines += [f"  {k}: {json.dumps(v)}" for k, v in stats.items()]
    else:
        lines.append("by number of vertices:")
        by_v = Counter(r["f_vector"][0] for r in records)
        lines += [f"  {k}: {by_v[k]}" for k in sorted(by_v)]
    return lines


def cmd_classify(args) -> int:
    if args.dim == 3:
        cf = catalog_io.catalog_file(classify_all(args.max_points, prune=not args.no_prune))
    else:
        cf = catalog_io.polygon_catalog(args.max_points)
    if args.out:
        try:
            catalog_io.write(cf, args.out)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return IO_ERROR
    _emit(_summary(cf, args.min_vertices))
    return OK


# verify

def cmd_verify(args) -> int:
    cf = _load_catalog(args.catalog)
    try:
        rep = catalog_io.verify_file(cf)
    except GeometryError as exc:
        raise catalog_io.CatalogFormatError(str(exc)) from exc
    _emit(rep.lines() + [f"{'ok' if rep.ok else 'FAILED'}: {len(cf.records)} entries"])
    return OK if rep.ok else FAILED


# iso

def _read_polytope(path):
    try:
        return catalog_io.read_polytope(path)
    except OSError as exc:
        raise catalog_io.CatalogFormatError(f"cannot read {path}: {exc.strerror}") from exc


def cmd_iso(args) -> int:
    p, q = _read_polytope(args.a), _read_polytope(args.b)
    try:
        m = isomorphism(p, q)
    except NotSmoothError:
        from smoothpoly.oracles import brute_force_isomorphic

        same = brute_force_isomorphic(p, q)
        _emit(["isomorphic (vertex matching, input not smooth)" if same else "not isomorphic"])
        return OK if same else FAILED
    if m is None:
        _emit(["not isomorphic"])
        return FAILED
    lines = ["isomorphic", "matrix:"]
    lines += ["  " + " ".join(f"{c:3d}" for c in row) for row in m.matrix]
    lines.append("translation: " + " ".join(str(c) for c in m.translation))
    _emit(lines)
    return OK


# normality

def _normality_job(item):
    entry_id, vertices, names, checks, caps = item
    from smoothpoly.geometry import hull

    p = hull([tuple(v) for v in vertices])
    results = []
    for name in names:
        try:
            r = check_polytope(p, variable_order(p, name), *caps)
        except ResourceCapError as exc:
            results.append((name, None, str(exc)))
            break
        results.append((name, r, ""))
        if all(getattr(r, c) for c in checks):
            break
    return entry_id, results


def cmd_normality(args) -> int:
    cf = _load_catalog(args.catalog)
    if args.id:
        try:
            records = [cf.record(args.id)]
        except KeyError:
            raise UsageError(f"unknown id {args.id}") from None
    else:
        limit = args.max_points if args.max_points is not None else cf.header["max_points"]
        records = [r for r in cf.records if r["num_points"] <= limit]
    checks = {"lex": ("squarefree",), "degrevlex": ("quadratic",)}.get(args.order, ("quadratic", "squarefree"))
    names = ORDER_NAMES if args.retry else ORDER_NAMES[:1]
    caps = (args.degree_cap, args.size_cap)
    items = [(r["id"], r["vertices"], names, checks, caps) for r in records]
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_normality_job, items))
    else:
        results = [_normality_job(it) for it in items]

    lines, passed, failed, capped, retried = [], 0, 0, 0, 0
    for entry_id, attempts in results:
        name, r, err = attempts[-1]
        if r is None:
            capped += 1
            lines.append(f"{entry_id}: ABORT under order {name}: {err}")
            continue
        ok = all(getattr(r, c) for c in checks)
        parts = []
        if "quadratic" in checks:
            parts.append(f"quadratic degrevlex basis {'yes' if r.quadratic else 'no'}"
                         f" (size {r.degrevlex_size}, max degree {r.degrevlex_max_degree})")
        if "squarefree" in checks:
            parts.append(f"squarefree lex initial ideal {'yes' if r.squarefree else 'no'}"
                         f" (size {r.lex_size})")
        tried = ", ".join(a[0] for a in attempts)
        status = "pass" if ok else "FAIL"
        if ok and len(attempts) > 1:
            retried += 1
            status = f"pass under order {name} (tried {tried})"
        elif not ok and len(attempts) > 1:
            status = f"FAIL under every order tried ({tried})"
        passed += ok
        failed += not ok
        lines.append(f"{entry_id} [{r.points} points]: {status}; " + "; ".join(parts))
        if args.id:
            for aname, ar, err in attempts:
                if ar is None:
                    lines.append(f"  order {aname}: aborted: {err}")
                    continue
                lines.append(f"  order {aname}: degrevlex basis {ar.degrevlex_size} binomials, "
                             f"max degree {ar.degrevlex_max_degree}; lex basis {ar.lex_size} binomials; "
                             f"quadratic {'yes' if ar.quadratic else 'no'}; "
                             f"squarefree {'yes' if ar.squarefree else 'no'}")
    lines.append(f"summary: {passed} passed ({retried} after retrying orders), {failed} failed, "
                 f"{capped} aborted at resource caps, {len(results)} tested")
    _emit(lines)
    if capped:
        return CAP_ABORT
    return OK if not failed else FAILED


# export

def cmd_export(args) -> int:
    cf = _load_catalog(args.catalog)
    try:
        record = cf.record(args.id)
    except KeyError:
        raise UsageError(f"unknown id {args.id}") from None
    if args.format == "off":
        text = catalog_io.to_off(cf.polytope(args.id))
    else:
        text = json.dumps(record, sort_keys=True) + "\n"
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return IO_ERROR
    else:
        sys.stdout.write(text)
    return OK


# label and check

def cmd_label(args) -> int:
    if args.file:
        p = _read_polytope(args.file)
        if p.dim != 3 or not p.is_simple():
            raise UsageError("labels are defined for simple 3-polytopes")
        _emit([label(p).render()])
        return OK
    if not args.label:
        raise UsageError("give a label string or --file")
    try:
        lab = TriangulationLabel.parse(args.label)
    except LabelError as exc:
        raise UsageError(str(exc)) from None
    lines = [f"label: {lab}", f"facets: {lab.num_facets}, vertices: {lab.num_vertices}, edges: {lab.num_edges}",
             f"consistent: {'yes' if lab.is_consistent() else 'no'}"]
    if lab.is_consistent():
        realizable = lab.num_facets <= 9 and is_realizable(lab)
        lines.append(f"realizable: {'yes' if realizable else 'no'}")
        if lab.num_facets <= 9:
            bound = facet_point_lower_bound(lab, allow_unrealizable=True)
            lines.append(f"lattice point lower bound: {bound}")
        lines.append("vertex blow-ups: " + ", ".join(sorted(str(x) for x in vertex_blowup_labels(lab))))
        lines.append("edge blow-ups: " + ", ".join(sorted(str(x) for x in edge_blowup_labels(lab))))
    _emit(lines)
    return OK


def cmd_check(args) -> int:
    p = _read_polytope(args.file)
    smooth = is_smooth(p)
    lines = [f"dimension: {p.dim}", f"lattice points: {p.num_points}",
             f"f-vector: {' '.join(map(str, p.f_vector))}", f"simple: {'yes' if p.is_simple() else 'no'}",
             f"smooth: {'yes' if smooth else 'no'}"]
    if smooth:
        if p.dim == 3:
            lines.append(f"label: {label(p)}")
        else:
            lines.append(f"toric surface: {surface_class(normal_fan(p))}")
        downs = blow_downs(p)
        lines.append(f"minimal: {'yes' if is_minimal(p) else 'no'} ({len(downs)} blow-downs)")
    _emit(lines)
    return OK if smooth else FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="smoothpoly", description="Smooth lattice polytopes with few lattice points.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="enumerate all smooth polytopes up to a point budget")
    c.add_argument("--dim", type=int, choices=(2, 3), default=3)
    c.add_argument("--max-points", type=int, default=16)
    c.add_argument("--out")
    c.add_argument("--no-prune", action="store_true", help="disable label pruning of blow-ups")
    c.add_argument("--min-vertices", type=int, default=0, help="only count entries with this many vertices")
    c.add_argument("--jobs", type=int, default=1, help="parallelism hint (classification runs serially)")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="check a catalog file")
    v.add_argument("catalog")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("iso", help="decide lattice isomorphism of two polytopes")
    i.add_argument("a")
    i.add_argument("b")
    i.set_defaults(func=cmd_iso)

    n = sub.add_parser("normality", help="Groebner basis checks of toric ideals")
    n.add_argument("catalog")
    n.add_argument("--max-points", type=int)
    n.add_argument("--order", choices=("lex", "degrevlex"), help="run only this check (default both)")
    n.add_argument("--id")
    n.add_argument("--jobs", type=int, default=1)
    n.add_argument("--degree-cap", type=int, default=DEGREE_CAP)
    n.add_argument("--size-cap", type=int, default=SIZE_CAP)
    n.add_argument("--no-retry", dest="retry", action="store_false",
                   help="use only the default variable order")
    n.set_defaults(func=cmd_normality)

    e = sub.add_parser("export", help="export one catalog entry")
    e.add_argument("catalog")
    e.add_argument("--id", required=True)
    e.add_argument("--format", choices=("json", "off"), default="json")
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)

    lb = sub.add_parser("label", help="label of a polytope, or facts about a label")
    lb.add_argument("label", nargs="?", help='label such as "3^2 4^3"')
    lb.add_argument("--file", help="polytope file")
    lb.set_defaults(func=cmd_label)

    ck = sub.add_parser("check", help="smoothness, minimality and label of one polytope")
    ck.add_argument("file")
    ck.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if getattr(args, "max_points", None) is not None and args.max_points < 1:
        print("error: --max-points must be positive", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except catalog_io.CatalogFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
