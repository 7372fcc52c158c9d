"""Catalog files: one JSON header line followed by one JSON record per
entry, keys sorted, UTF-8. Also OFF export and polytope input files."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from smoothpoly.enumerate2d import enumerate_smooth_polygons
from smoothpoly.enumerate3d import Catalog, CatalogEntry, Report, verify_catalog
from smoothpoly.fans import is_smooth
from smoothpoly.geometry import GeometryError, LatticePolytope, hull
from smoothpoly.isomorphism import canonical_form
from smoothpoly.labels import TriangulationLabel, label

SCHEMA_VERSION = 1
ENTRY_KEYS = ("id", "category", "recipe", "vertices", "num_points", "f_vector",
              "label", "minimal", "parent", "fiber_description")


class CatalogFormatError(ValueError):
    pass


@dataclass
class CatalogFile:
    header: dict
    records: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.header["dim"]

    def record(self, entry_id: str) -> dict:
        for r in self.records:
            if r["id"] == entry_id:
                return r
        raise KeyError(entry_id)

    def polytope(self, entry_id: str) -> LatticePolytope:
        return hull([tuple(v) for v in self.record(entry_id)["vertices"]])

    def tallies(self) -> dict:
        return tally(self.records)


def tally(records) -> dict:
    out: dict = {}
    for r in records:
        out[r["category"]] = out.get(r["category"], 0) + 1
    return dict(sorted(out.items()))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def entry_record(e: CatalogEntry) -> dict:
    return {
        "id": e.id,
        "category": e.category,
        "recipe": _jsonable(e.recipe),
        "vertices": [list(v) for v in e.polytope.vertices],
        "num_points": e.num_points,
        "f_vector": list(e.f_vector),
        "label": e.label.render(),
        "minimal": e.minimal,
        "parent": e.parent,
        "fiber_description": e.fiber_description,
    }


def catalog_file(cat: Catalog) -> CatalogFile:
    records = sorted((entry_record(e) for e in cat.entries), key=lambda r: r["id"])
    header = {
        "schema_version": SCHEMA_VERSION,
        "dim": cat.dim,
        "max_points": cat.max_points,
        "count": len(records),
        "tallies": tally(records),
        "stats": _jsonable(cat.stats),
    }
    return CatalogFile(header, records)


def polygon_catalog(max_points: int) -> CatalogFile:
    """The smooth polygons in the same record layout. Labels list the facet
    sizes (every edge has two vertices); the fiber field names the toric
    surface of the normal fan."""
    entries = enumerate_smooth_polygons(max_points)
    counter: dict = {}
    records = []
    for e in entries:
        n = e.num_points
        counter[n] = counter.get(n, 0) + 1
        v = e.num_vertices
        records.append({
            "id": f"smooth2-{n:02d}-{counter[n]:02d}",
            "category": "minimal" if e.minimal else "blowup",
            "recipe": {"type": "polygon", "fan_class": e.fan_class},
            "vertices": [list(x) for x in e.polytope.vertices],
            "num_points": n,
            "f_vector": [v, v],
            "label": TriangulationLabel.from_sizes([2] * v).render(),
            "minimal": e.minimal,
            "parent": None,
            "fiber_description": e.fan_class,
        })
    records.sort(key=lambda r: r["id"])
    header = {"schema_version": SCHEMA_VERSION, "dim": 2, "max_points": max_points,
              "count": len(records), "tallies": tally(records), "stats": {}}
    return CatalogFile(header, records)


def dumps(cf: CatalogFile) -> str:
    lines = [json.dumps(cf.header, sort_keys=True)]
    lines += [json.dumps(r, sort_keys=True) for r in cf.records]
    return "\n".join(lines) + "\n"


def loads(text: str) -> CatalogFile:
    numbered = [(i, ln) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not numbered:
        raise CatalogFormatError("empty catalog")
    parsed = []
    for i, ln in numbered:
        try:
            parsed.append(json.loads(ln))
        except json.JSONDecodeError as exc:
            raise CatalogFormatError(f"line {i}: {exc.msg}") from exc
    header, records = parsed[0], parsed[1:]
    if not isinstance(header, dict) or header.get("schema_version") != SCHEMA_VERSION:
        raise CatalogFormatError("missing or unsupported header")
    for k in ("dim", "max_points", "count", "tallies"):
        if k not in header:
            raise CatalogFormatError(f"header lacks {k!r}")
    for i, r in enumerate(records, start=2):
        if not isinstance(r, dict) or set(r) != set(ENTRY_KEYS):
            raise CatalogFormatError(f"line {i}: record keys differ from {ENTRY_KEYS}")
        verts = r["vertices"]
        if not (isinstance(verts, list) and verts and all(
                isinstance(v, list) and len(v) == header["dim"] and all(type(c) is int for c in v)
                for v in verts)):
            raise CatalogFormatError(f"line {i}: bad vertex list")
    if len(records) != header["count"]:
        raise CatalogFormatError(f"header count {header['count']} but {len(records)} records")
    return CatalogFile(header, records)


def write(cf: CatalogFile, path) -> None:
    Path(path).write_text(dumps(cf), encoding="utf-8")


def read(path) -> CatalogFile:
    return loads(Path(path).read_text(encoding="utf-8"))


def _entry_from_record(r: dict) -> CatalogEntry:
    try:
        p = hull([tuple(v) for v in r["vertices"]])
    except GeometryError as exc:
        raise CatalogFormatError(f"{r['id']}: {exc}") from exc
    return CatalogEntry(
        id=r["id"], polytope=p, canonical=canonical_form(p) if is_smooth(p) else None,
        category=r["category"], recipe=r["recipe"], num_points=r["num_points"],
        f_vector=tuple(r["f_vector"]), label=TriangulationLabel.parse(r["label"]),
        minimal=r["minimal"], parent=r["parent"], fiber_description=r["fiber_description"])


def verify_file(cf: CatalogFile) -> Report:
    """Structural checks on the polytopes plus consistency of every stored
    field with the geometry and of the header with the records."""
    if cf.dim == 3:
        rep = verify_catalog([_entry_from_record(r) for r in cf.records], cf.header["max_points"])
    else:
        rep = _verify_polygons(cf)
    rep.checks["stored fields"] = len(cf.records)
    rep.checks["header tallies"] = 1
    ids = {r["id"] for r in cf.records}
    for r in cf.records:
        p = hull([tuple(v) for v in r["vertices"]])
        if r["num_points"] != p.num_points or tuple(r["f_vector"]) != tuple(p.f_vector):
            rep.fail(r["id"], "stored fields", "num_points or f_vector")
        elif cf.dim == 3 and p.is_simple() and r["label"] != label(p).render():
            rep.fail(r["id"], "stored fields", "label")
        if r["parent"] is not None and r["parent"] not in ids:
            rep.fail(r["id"], "stored fields", f"unknown parent {r['parent']}")
    if cf.header["tallies"] != cf.tallies():
        rep.fail("header", "header tallies", f"{cf.header['tallies']} != {cf.tallies()}")
    return rep


def _verify_polygons(cf: CatalogFile) -> Report:
    rep = Report()
    rep.checks = {"smooth": len(cf.records), "point budget": len(cf.records), "distinct": len(cf.records)}
    seen = set()
    for r in cf.records:
        p = hull([tuple(v) for v in r["vertices"]])
        if not is_smooth(p):
            rep.fail(r["id"], "smooth")
            continue
        if p.num_points > cf.header["max_points"]:
            rep.fail(r["id"], "point budget")
        key = canonical_form(p)
        if key in seen:
            rep.fail(r["id"], "distinct")
        seen.add(key)
    return rep


def to_off(p: LatticePolytope) -> str:
    """OFF mesh; faces listed counterclockwise seen from outside. Polygons
    become a single face in the plane z = 0."""
    verts = [tuple(v) + (0,) * (3 - p.dim) for v in p.vertices]
    if p.dim == 2:
        faces = [_polygon_cycle(p)]
    else:
        faces = [list(p.facet_cycle(j)) for j in range(len(p.facets))]
    lines = ["OFF", f"{len(verts)} {len(faces)} {len(p.edges)}"]
    lines += [" ".join(map(str, v)) for v in verts]
    lines += [" ".join(map(str, [len(f)] + f)) for f in faces]
    return "\n".join(lines) + "\n"


def _polygon_cycle(p: LatticePolytope) -> list:
    nbr = p.neighbors
    cycle = [0]
    prev = None
    while len(cycle) < len(p.vertices):
        cur = cycle[-1]
        nxt = [j for j in nbr[cur] if j != prev][0]
        prev = cur
        cycle.append(nxt)
    a, b, c = (p.vertices[i] for i in cycle[:3])
    if (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]) < 0:
        cycle.reverse()
    return cycle


def parse_polytope(text: str) -> LatticePolytope:
    """Polytope from its vertices (or any spanning point set): either JSON,
    a list of integer vectors or an object with a ``vertices`` key, or plain
    text with one point per line (``#`` starts a comment)."""
    stripped = text.strip()
    pts = None
    if stripped.startswith(("[", "{")):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise CatalogFormatError(f"bad JSON: {exc.msg}") from exc
        pts = data.get("vertices") if isinstance(data, dict) else data
    else:
        pts = []
        for ln in stripped.splitlines():
            ln = ln.split("#", 1)[0].replace(",", " ").strip()
            if ln:
                try:
                    pts.append([int(t) for t in ln.split()])
                except ValueError as exc:
                    raise CatalogFormatError(f"bad coordinate line {ln!r}") from exc
    if not (isinstance(pts, list) and pts and all(isinstance(v, list) and all(type(c) is int for c in v)
                                                     for v in pts)):
        raise CatalogFormatError("expected a list of integer vectors")
    if len({len(v) for v in pts}) != 1 or len(pts[0]) not in (2, 3):
        raise CatalogFormatError("points must all have dimension 2 or 3")
    try:
        return hull([tuple(v) for v in pts])
    except GeometryError as exc:
        raise CatalogFormatError(str(exc)) from exc


def read_polytope(path) -> LatticePolytope:
    return parse_polytope(Path(path).read_text(encoding="utf-8"))
