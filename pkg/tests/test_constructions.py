import pytest
from hypothesis import given
from hypothesis import strategies as st

from smoothpoly.constructions import (
    ConstructionError,
    blow_down,
    blow_downs,
    blow_up_face,
    blowups,
    cayley_pair,
    cayley_segments,
    is_minimal,
    k_delta,
    pair_smooth,
    segments_smooth,
)
from smoothpoly.fans import cone, is_smooth, normal_fan, stellar_subdivide
from smoothpoly.geometry import hull
from smoothpoly.isomorphism import are_isomorphic, canonical_form

from shapes import CUBE, HEXAGON, corners_cut


def slice_count(s, i, j, k):
    """Lattice points of the segment Cayley polytope counted slice by slice:
    a point at heights (y, z) with y + z <= s has x between 0 and the
    interpolated segment length."""
    total = 0
    for y in range(s + 1):
        for z in range(s + 1 - y):
            top = (i * (s - y - z) + j * y + k * z)
            total += top // s + 1
    return total


def test_k_delta_examples():
    assert k_delta(3, 1).num_points == 4
    assert k_delta(3, 2).num_points == 10
    assert k_delta(3, 3).num_points == 20
    with pytest.raises(ConstructionError):
        k_delta(3, 0)


@pytest.mark.parametrize("prm,points", [((2, 3, 1, 1), 16), ((2, 2, 2, 2), 18), ((1, 4, 2, 1), 10)])
def test_cayley_segments_examples(prm, points):
    assert cayley_segments(*prm).num_points == points


def test_first_order_segments_point_count():
    for i in range(1, 12):
        for j in range(1, i + 1):
            for k in range(1, j + 1):
                assert cayley_segments(1, i, j, k).num_points == i + j + k + 3


@given(st.integers(1, 4), st.integers(1, 7), st.integers(1, 7), st.integers(1, 7))
def test_segment_counts_match_slices(s, i, j, k):
    assert cayley_segments(s, i, j, k).num_points == slice_count(s, i, j, k)


def test_segments_smooth_examples():
    assert segments_smooth(1, 5, 3, 2)
    assert segments_smooth(2, 3, 1, 1)
    assert not segments_smooth(2, 2, 1, 1)


def test_segments_smooth_agrees_with_vertex_test():
    for s in range(1, 5):
        for i in range(1, 8):
            for j in range(1, i + 1):
                for k in range(1, j + 1):
                    assert segments_smooth(s, i, j, k) == is_smooth(cayley_segments(s, i, j, k))


def test_cayley_pair_examples():
    d2 = k_delta(2, 1)
    prism = cayley_pair(d2, d2, 4, (0, 0))
    assert prism.num_points == 15
    assert are_isomorphic(cayley_pair(k_delta(2, 2), k_delta(2, 2), 2, (0, 0)), cayley_segments(2, 2, 2, 2))
    with pytest.raises(ConstructionError, match="not strictly isomorphic"):
        cayley_pair(d2, hull([(0, 0), (1, 0), (0, 1), (1, 1)]), 1, (0, 0))


def test_truncated_pyramids_are_not_segment_type():
    for k1, k2, s in [(2, 1, 1), (3, 1, 1), (3, 2, 1), (1, 2, 1)]:
        p = cayley_pair(k_delta(2, k1), k_delta(2, k2), s, (0, 0))
        for prm in [(s, i, j, k) for i in range(1, 8) for j in range(1, i + 1) for k in range(1, j + 1)]:
            q = cayley_segments(*prm)
            if q.num_points == p.num_points:
                assert not are_isomorphic(p, q)


def test_pair_smooth_examples():
    d2 = k_delta(2, 1)
    for s in (1, 2, 3):
        assert pair_smooth(d2, d2, s, (0, 0))
    assert pair_smooth(k_delta(2, 2), d2, 1, (0, 0))
    assert not pair_smooth(k_delta(2, 2), d2, 2, (0, 0))
    assert not is_smooth(cayley_pair(k_delta(2, 2), d2, 2, (0, 0)))


@pytest.mark.parametrize("p0,p1", [
    (k_delta(2, 1), k_delta(2, 2)),
    (hull([(0, 0), (2, 0), (0, 1), (2, 1)]), hull([(0, 0), (1, 0), (0, 3), (1, 3)])),
    (HEXAGON, HEXAGON),
])
def test_pair_smooth_agrees_with_vertex_test(p0, p1):
    for s in (1, 2, 3):
        for tx in range(-3, 4):
            for ty in range(-3, 4):
                assert pair_smooth(p0, p1, s, (tx, ty)) == is_smooth(cayley_pair(p0, p1, s, (tx, ty)))


def test_vertex_blow_up_levels():
    p = k_delta(3, 3)
    assert blow_up_face(p, ((0, 0, 0),), 1).num_points == 19
    assert blow_up_face(p, ((0, 0, 0),), 2).num_points == 16
    with pytest.raises(ConstructionError, match="invalid blow-up level"):
        blow_up_face(p, ((0, 0, 0),), 3)


def test_blow_up_face_shapes():
    p = k_delta(3, 3)
    v = blow_up_face(p, ((0, 0, 0),), 1)
    e = blow_up_face(p, ((0, 0, 0), (3, 0, 0)), 1)
    assert v.f_vector == (6, 9, 5) and e.f_vector == (6, 9, 5)
    new_v = [fv for f, fv in zip(v.facets, v.facet_vertices) if f not in p.facets]
    new_e = [fv for f, fv in zip(e.facets, e.facet_vertices) if f not in p.facets]
    assert [len(x) for x in new_v] == [3] and [len(x) for x in new_e] == [4]


def test_blow_up_rejects_bad_faces():
    with pytest.raises(ConstructionError):
        blow_up_face(CUBE, ((0, 0, 0), (1, 1, 0)), 1)
    with pytest.raises(ConstructionError):
        blow_up_face(CUBE, ((0, 0, 0),), 0)
    with pytest.raises(ConstructionError):
        blow_up_face(CUBE, ((5, 5, 5),), 1)


def test_blow_up_matches_stellar_subdivision():
    p = k_delta(3, 4)
    for face, k, q in blowups(p):
        normals = set.intersection(*[{p.facets[j].normal for j in p.vertex_facets[i]} for i in face])
        assert normal_fan(q) == stellar_subdivide(normal_fan(p), cone(*normals))


@pytest.mark.parametrize("p", [k_delta(3, 3), k_delta(3, 4), cayley_segments(1, 3, 2, 1),
                               cayley_segments(2, 3, 1, 1), corners_cut()],
                         ids=["3delta3", "4delta3", "segments1", "segments2", "bl4"])
def test_blow_up_then_down_round_trip(p):
    for face, k, q in blowups(p):
        assert len(q.vertices) == len(p.vertices) + 2 and len(q.facets) == len(p.facets) + 1
        new = next(j for j, f in enumerate(q.facets) if f not in p.facets)
        back = blow_down(q, new)
        assert back is not None and back.vertices == p.vertices


def test_blow_down_examples():
    q = blow_up_face(k_delta(3, 3), ((0, 0, 0),), 1)
    new = next(j for j, f in enumerate(q.facets) if f.normal == (1, 1, 1))
    assert blow_down(q, new) == k_delta(3, 3)
    assert all(blow_down(k_delta(3, 1), j) is None for j in range(4))
    assert blow_downs(cayley_segments(1, 1, 1, 1)) == []


def test_second_order_segment_polytope_is_an_edge_blow_up():
    # 3 * Delta_3 cut by y + z <= 2 has the six listed vertices
    cut = hull([(0, 0, 0), (3, 0, 0), (0, 2, 0), (1, 2, 0), (0, 0, 2), (1, 0, 2)])
    assert cut == cayley_segments(2, 3, 1, 1)
    assert blow_up_face(k_delta(3, 3), ((0, 3, 0), (0, 0, 3)), 1) == cut
    infos = blow_downs(cut)
    assert [(i.polytope, i.level) for i in infos] == [(k_delta(3, 3), 1)]


def test_is_minimal_examples():
    assert is_minimal(k_delta(3, 1))
    assert is_minimal(cayley_segments(1, 1, 1, 1)) and is_minimal(k_delta(3, 2))
    assert not is_minimal(cayley_segments(2, 3, 1, 1))
    assert not is_minimal(corners_cut())
    assert len(blow_downs(corners_cut())) == 4


def test_minimal_categories_close_under_blow_down(catalog16):
    canon = {canonical_form(e.polytope) for e in catalog16.entries}
    for e in catalog16.entries:
        if e.category == "blowup":
            continue
        for info in blow_downs(e.polytope):
            if info.polytope.num_points <= 16:
                assert canonical_form(info.polytope) in canon
