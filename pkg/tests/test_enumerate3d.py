from collections import Counter
from dataclasses import replace

import pytest

from smoothpoly.constructions import cayley_segments, k_delta
from smoothpoly.enumerate3d import (
    category_iii_breakdown,
    classify_all,
    enumerate_category_i,
    enumerate_category_ii,
    enumerate_category_iii,
    fiber_description,
    minimality_graph,
    pair_candidates,
    prism_count,
    segment_parameters,
    verify_catalog,
)
from smoothpoly.geometry import hull
from smoothpoly.isomorphism import canonical_form
from smoothpoly.labels import TriangulationLabel, label

from shapes import corners_cut, vertex_blowups


def test_category_i():
    out = enumerate_category_i(16)
    assert [c.polytope for c in out] == [k_delta(3, 1), k_delta(3, 2)]
    assert [c.polytope.num_points for c in out] == [4, 10]


def brute_segment_triples():
    return [(i, j, k) for i in range(1, 14) for j in range(1, i + 1) for k in range(1, j + 1)
            if i + j + k <= 13]


def test_category_ii():
    prm = segment_parameters(16)
    first = [p[1:] for p in prm if p[0] == 1]
    assert sorted(first) == sorted(brute_segment_triples()) and len(first) == 67
    assert sorted(p for p in prm if p[0] == 2) == [(2, 1, 1, 1), (2, 3, 1, 1)]
    assert cayley_segments(2, 1, 1, 1).num_points == 12
    assert len(enumerate_category_ii(16)) == 69


def test_category_iii():
    cands = pair_candidates(16)
    iii = enumerate_category_iii(16)
    assert len(iii) == 33
    ii = {c.canonical for c in enumerate_category_ii(16)}
    assert sum(1 for c in iii if c.canonical in ii) == 5
    assert category_iii_breakdown(16) == {"P2": 8, "F_4": 1, "F_3": 2, "F_2": 4, "F_1": 9,
                                          "Bl_2(P2)": 1, "Bl_3(P2)": 1, "F_0": 16}
    assert prism_count(cands, "F_0") == 7


def test_catalog_counts(catalog16):
    assert len(catalog16) == 103
    assert catalog16.tallies() == {"simplex": 2, "cayley_segments": 69, "cayley_pair": 28, "blowup": 4}
    s = catalog16.stats
    assert (s["category_i"], s["category_ii"], s["category_iii"], s["category_iii_in_ii"],
            s["category_iv"]) == (2, 69, 33, 5, 4)
    assert s["category_ii_s1_parameters"] == 67


def test_category_iv_entries(catalog16):
    iv = [e for e in catalog16.entries if e.category == "blowup"]
    c311 = cayley_segments(2, 3, 1, 1)
    expected = {
        "one corner of the second order 3,1,1 segments": (set(vertex_blowups(c311, 1)), 15),
        "two corners of the second order 3,1,1 segments": (set(vertex_blowups(c311, 2)), 14),
        "two corners of the second order 2,2,2 segments":
            (set(vertex_blowups(cayley_segments(2, 2, 2, 2), 2)), 16),
        "four corners of 3 Delta_3": ({canonical_form(corners_cut())}, 16),
    }
    matched = {}
    for name, (forms, points) in expected.items():
        hits = [e for e in iv if e.canonical in forms]
        assert len(hits) == 1 and hits[0].num_points == points
        matched[name] = hits[0]
    assert len({e.id for e in matched.values()}) == 4
    two_corners = matched["two corners of the second order 3,1,1 segments"]
    assert two_corners.f_vector == (10, 15, 7) and two_corners.label == TriangulationLabel.parse("3^2 4^3 6^2")
    assert matched["four corners of 3 Delta_3"].label == TriangulationLabel.parse("3^4 6^4")


def test_entry_fields(catalog16):
    for e in catalog16.entries:
        assert e.num_points == e.polytope.num_points <= 16
        assert e.embedding_dim == e.num_points - 1
        assert e.f_vector == e.polytope.f_vector and e.label == label(e.polytope)
        assert e.id == f"smooth3-{e.num_points:02d}-{e.id[-2:]}"
    ids = [e.id for e in catalog16.entries]
    assert len(set(ids)) == len(ids)
    assert ids == sorted(ids)


def test_structural_facts(catalog16):
    for e in catalog16.entries:
        v, ed, f = e.f_vector
        assert f <= 8 and v <= 12 and 2 * ed == 3 * v and 2 * f == 4 + v


def test_fiber_descriptions(catalog16):
    by_type = Counter(e.fiber_description for e in catalog16.entries if e.category != "blowup")
    assert by_type["P3"] == 2 and by_type["P2-bundle over P1"] == 69
    assert fiber_description({"type": "pair", "base_fan": "F_2"}) == "P1-bundle over F_2"
    bl = {"type": "blowup", "root": {"type": "simplex", "k": 3},
          "steps": [{"face": [[0, 0, 0]], "level": 1}] * 4}
    assert fiber_description(bl) == "P3 blown up at 4 points"


def test_restriction_to_twelve_points(catalog16):
    small = classify_all(12)
    assert [e.canonical for e in small.entries] == \
        [e.canonical for e in catalog16.entries if e.num_points <= 12]
    assert len(small) == 33


def test_verify_full_catalog(catalog16):
    rep = verify_catalog(catalog16.entries)
    assert rep.ok, rep.lines()


def test_deleted_entry_breaks_closure(catalog16):
    entries = [e for e in catalog16.entries if e.id != "smooth3-14-16"]
    rep = verify_catalog(entries)
    assert {check for _, check, _ in rep.violations} == {"blow-up closure"}
    assert any(eid == "smooth3-15-14" for eid, _, _ in rep.violations)


def test_impostor_breaks_point_budget(catalog16):
    big = cayley_segments(1, 7, 4, 3)
    assert big.num_points == 17
    impostor = replace(catalog16.entries[0], id="smooth3-17-01", polytope=big)
    rep = verify_catalog(catalog16.entries + [impostor])
    assert ("smooth3-17-01", "point budget", "17 points") in rep.violations


def test_non_smooth_impostor_detected(catalog16):
    bad = replace(catalog16.entries[0], id="bad", polytope=hull([(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1)]))
    rep = verify_catalog(catalog16.entries + [bad])
    assert ("bad", "smooth", "") in rep.violations


def test_minimality_graph_consistent(catalog16):
    by_id = {e.id: e for e in catalog16.entries}
    for child, parent in minimality_graph(catalog16.entries):
        assert not by_id[child].minimal
        assert by_id[parent].num_points > by_id[child].num_points
    for e in catalog16.entries:
        if e.parent is not None:
            assert (e.id, e.parent) in minimality_graph(catalog16.entries)


@pytest.mark.slow
def test_no_prune_gives_same_catalog(catalog16):
    other = classify_all(16, prune=False)
    assert [e.canonical for e in other.entries] == [e.canonical for e in catalog16.entries]
