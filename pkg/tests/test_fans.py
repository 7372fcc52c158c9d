import pytest
from hypothesis import given
from hypothesis import strategies as st

from smoothpoly.constructions import blow_up_face, cayley_segments, k_delta
from smoothpoly.fans import (
    Fan,
    FanError,
    blowdown_candidates,
    cone,
    hirzebruch_fan,
    is_smooth,
    is_unimodular,
    normal_fan,
    projective_plane_fan,
    stellar_subdivide,
    surface_class,
)
from smoothpoly.geometry import hull
from smoothpoly.isomorphism import transform
from smoothpoly.lattice import UnimodularAffineMap

from shapes import CUBE, brute_smooth, corners_cut
from strategies import unimodular_matrices


def test_normal_fan_examples():
    assert set(normal_fan(k_delta(2, 1)).rays) == {(1, 0), (0, 1), (-1, -1)}
    f = normal_fan(CUBE)
    assert set(f.rays) == {(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)}
    assert len(f.maximal_cones) == 8


def test_rectangles_share_a_fan():
    fans = {normal_fan(hull([(0, 0), (a, 0), (0, b), (a, b)])) for a in (1, 2, 5) for b in (1, 3)}
    assert len(fans) == 1


def test_is_unimodular_examples():
    assert is_unimodular(projective_plane_fan())
    bad = Fan.from_generators([((1, 0), (1, 2)), ((1, 2), (-1, 0)), ((-1, 0), (0, -1)), ((0, -1), (1, 0))])
    assert not is_unimodular(bad)


def test_is_smooth_examples():
    assert is_smooth(k_delta(2, 2))
    assert not is_smooth(hull([(0, 0), (2, 0), (0, 1)]))
    assert not is_smooth(cayley_segments(2, 2, 1, 1))
    assert not brute_smooth(cayley_segments(2, 2, 1, 1))


def test_hirzebruch_fans():
    f0 = hirzebruch_fan(0)
    assert set(f0.rays) == {(1, 0), (0, 1), (-1, 0), (0, -1)}
    assert (-1, 1) in hirzebruch_fan(1).rays
    for r in range(6):
        assert is_unimodular(hirzebruch_fan(r)) and hirzebruch_fan(r).is_complete()
    with pytest.raises(FanError):
        hirzebruch_fan(-1)


def test_projective_plane_subdivision_gives_first_hirzebruch():
    f = stellar_subdivide(projective_plane_fan(), cone((1, 0), (-1, 1)))
    assert f == hirzebruch_fan(1)


def test_subdivide_octant():
    f = stellar_subdivide(normal_fan(CUBE), cone((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert len(f.rays) == 7 and (1, 1, 1) in f.rays
    assert is_unimodular(f) and f.is_complete()


def test_subdivide_errors():
    f = normal_fan(CUBE)
    with pytest.raises(FanError):
        stellar_subdivide(f, cone((1, 0, 0)))
    with pytest.raises(FanError):
        stellar_subdivide(f, cone((1, 0, 0), (-1, 0, 1)))


@pytest.mark.parametrize("sigma", [
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 0, 0), (0, 1, 0)),
    ((-1, 0, 0), (0, 0, -1)),
])
def test_subdivide_then_blow_down_round_trip(sigma):
    f = normal_fan(CUBE)
    g = stellar_subdivide(f, cone(*sigma))
    assert len(g.rays) == len(f.rays) + 1 and is_unimodular(g) and g.is_complete()
    ray = tuple(sum(x) for x in zip(*sigma))
    found = [s for r, s in blowdown_candidates(g) if r == ray]
    assert cone(*sigma) in found


def test_blowdown_candidates_examples():
    assert blowdown_candidates(normal_fan(k_delta(3, 1))) == []
    one = normal_fan(blow_up_face(k_delta(3, 3), ((0, 0, 0),), 1))
    assert [r for r, _ in blowdown_candidates(one)] == [(1, 1, 1)]
    rays = sorted(r for r, _ in blowdown_candidates(normal_fan(corners_cut())))
    assert rays == sorted([(1, 1, 1), (-1, 0, 0), (0, -1, 0), (0, 0, -1)])


def test_blow_up_polytope_matches_fan_subdivision():
    p = k_delta(3, 3)
    q = blow_up_face(p, ((0, 0, 0), (3, 0, 0)), 1)
    sigma = cone((0, 1, 0), (0, 0, 1))
    assert normal_fan(q) == stellar_subdivide(normal_fan(p), sigma)


def test_surface_classes():
    assert surface_class(projective_plane_fan()) == "P2"
    assert surface_class(hirzebruch_fan(3)) == "F_3"
    hexagon = normal_fan(hull([(0, 0), (1, 0), (0, 1), (1, 2), (2, 1), (2, 2)]))
    assert surface_class(hexagon) == "Bl_3(P2)"


def test_simple_fan_counts():
    p = corners_cut()
    f = normal_fan(p)
    assert len(f.maximal_cones) == len(p.vertices) and len(f.rays) == len(p.facets)


def test_smoothness_equivalence_on_catalog(catalog16):
    for e in catalog16.entries:
        assert is_smooth(e.polytope) and is_unimodular(normal_fan(e.polytope))
        assert brute_smooth(e.polytope)


@given(unimodular_matrices(), st.sampled_from(["cube", "bl4", "segments", "nonsmooth", "simplex2"]))
def test_smoothness_equivalence_under_unimodular_maps(m, name):
    base = {
        "cube": CUBE,
        "bl4": corners_cut(),
        "segments": cayley_segments(1, 3, 2, 1),
        "nonsmooth": cayley_segments(2, 2, 1, 1),
        "simplex2": hull([(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1)]),
    }[name]
    p = transform(base, UnimodularAffineMap(m, (1, -2, 3)))
    assert is_smooth(p) == is_unimodular(normal_fan(p)) == brute_smooth(p) == is_smooth(base)


def test_non_simple_polytope_has_non_simplicial_fan():
    pyramid = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])
    f = normal_fan(pyramid)
    apex = [c for c in f.maximal_cones if not c.is_simplicial]
    assert len(apex) == 1 and len(apex[0].generators) == 4 and apex[0].dim == 3
    assert not is_unimodular(f) and not is_smooth(pyramid)
    with pytest.raises(FanError):
        f.is_complete()
