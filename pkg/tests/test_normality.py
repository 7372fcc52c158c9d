import random
from itertools import product

import pytest

from smoothpoly.constructions import blow_up_face, cayley_pair, cayley_segments, k_delta
from smoothpoly.geometry import hull
from smoothpoly.normality import (
    ORDER_NAMES,
    GroebnerBasis,
    ResourceCapError,
    check_polytope,
    check_with_retries,
    degree,
    degrevlex,
    has_squarefree_lex_initial,
    is_groebner,
    is_quadratic_gb,
    lex,
    point_config,
    reduced_groebner,
    toric_ideal,
    variable_order,
)
from smoothpoly.oracles import kernel_binomials, quadric_space_dimension

from shapes import CUBE


def line_config(xs):
    return [(x, 1) for x in xs]


def member(gb, u, v):
    return gb.reduce(*gb.order.orient(tuple(u), tuple(v))) is None


def test_monomial_orders():
    assert lex(3).compare((1, 0, 0), (0, 5, 5)) == 1
    assert degrevlex(3).compare((0, 0, 2), (1, 0, 0)) == 1
    # degrevlex: among equal degrees the smaller power of the last variable wins
    assert degrevlex(3).compare((1, 0, 1), (0, 2, 0)) == -1
    assert degrevlex(3, [2, 1, 0]).compare((1, 0, 1), (0, 2, 0)) == -1
    assert lex(2, [1, 0]).compare((1, 0), (0, 1)) == -1


def test_point_config_examples():
    assert len(point_config(k_delta(3, 1))) == 4
    assert len(point_config(CUBE)) == 8
    assert len(point_config(k_delta(3, 2))) == 10
    cfg = point_config(hull([(-1, -1, -1), (0, -1, -1), (-1, 0, -1), (-1, -1, 0)]))
    assert cfg == [(0, 0, 0, 1), (0, 0, 1, 1), (0, 1, 0, 1), (1, 0, 0, 1)]


def test_simplex_ideal_is_zero():
    assert len(toric_ideal(point_config(k_delta(3, 1)))) == 0
    assert is_quadratic_gb(k_delta(3, 1)) and has_squarefree_lex_initial(k_delta(3, 1))


def test_square_gives_one_binomial():
    cfg = [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]
    gb = toric_ideal(cfg)
    assert gb.elements == [((0, 1, 1, 0), (1, 0, 0, 1))]
    for order in (lex(4), degrevlex(4), lex(4, [3, 2, 1, 0])):
        assert len(reduced_groebner(gb.elements, order)) == 1


def test_empty_input():
    assert len(reduced_groebner([], lex(3))) == 0


def test_cube_has_nine_quadrics():
    cfg = point_config(CUBE)
    gb = toric_ideal(cfg)
    assert len(gb) == 9 == quadric_space_dimension(cfg)
    assert all(degree(a) == 2 == degree(b) for a, b in gb.elements)


def test_second_dilate_is_quadratic():
    r = check_polytope(k_delta(3, 2))
    assert r.quadratic and r.squarefree and r.degrevlex_size == 20


def test_generators_homogeneous():
    for p in (CUBE, k_delta(3, 2), cayley_segments(1, 3, 2, 1)):
        for a, b in toric_ideal(point_config(p)).elements:
            assert degree(a) == degree(b)
            assert all(x == 0 or y == 0 for x, y in zip(a, b))


def test_twisted_cubic_gap_gives_a_cubic():
    gb = toric_ideal(line_config([0, 1, 3]))
    assert gb.elements == [((0, 3, 0), (2, 0, 1))]
    assert not all(degree(a) == 2 for a, _ in gb.elements)


def test_conic_lex_initial_depends_on_order():
    cfg = line_config([0, 1, 2])
    gb = toric_ideal(cfg)
    assert gb.elements == [((0, 2, 0), (1, 0, 1))]
    middle_first = reduced_groebner(gb.elements, lex(3, [1, 0, 2]))
    assert [a for a, _ in middle_first.elements] == [(0, 2, 0)]
    plain = reduced_groebner(gb.elements, lex(3))
    assert [a for a, _ in plain.elements] == [(1, 0, 1)]


def test_non_unimodular_circuit_status():
    # {0, e1, e2, e1 + e2 + 3 e3}: affinely independent (determinant 3), so no binomials
    cfg = [(0, 0, 0, 1), (1, 0, 0, 1), (0, 1, 0, 1), (1, 1, 3, 1)]
    assert len(toric_ideal(cfg)) == 0
    assert kernel_binomials(cfg, 4) == []
    # adding the lattice points of the segment from 0 to the apex exposes relations
    cfg2 = cfg + [(0, 0, 1, 1)]
    gb = toric_ideal(cfg2)
    assert all(member(gb, u, v) for u, v in kernel_binomials(cfg2, 4))


@pytest.mark.parametrize("p", [CUBE, k_delta(3, 2), cayley_segments(1, 2, 1, 1),
                               cayley_pair(k_delta(2, 1), k_delta(2, 1), 1, (0, 0)),
                               hull([(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1)])],
                         ids=["cube", "2delta3", "segments", "prism", "nonsmooth"])
def test_buchberger_postcondition(p):
    cfg = point_config(p)
    drl = toric_ideal(cfg)
    assert is_groebner(drl)
    lx = reduced_groebner(drl.elements, lex(len(cfg)), True)
    assert is_groebner(lx)


def test_small_entries_match_kernel_oracle(catalog16):
    for e in catalog16.entries:
        cfg = point_config(e.polytope)
        if len(cfg) > 8:
            continue
        gb = toric_ideal(cfg)
        kernel = kernel_binomials(cfg, 4)
        assert all(member(gb, u, v) for u, v in kernel)
        pairs = {frozenset((u, v)) for u, v in kernel}
        assert all(frozenset((a, b)) in pairs for a, b in gb.elements)


def test_order_independent_membership():
    p = blow_up_face(k_delta(3, 3), ((0, 0, 0),), 2)
    cfg = point_config(p)
    n = len(cfg)
    drl = toric_ideal(cfg)
    lx = reduced_groebner(drl.elements, lex(n), True)
    rng = random.Random(7)
    for a, b in rng.sample(drl.elements, 10):
        assert member(lx, a, b)
    for a, b in rng.sample(lx.elements, 10):
        assert member(drl, a, b)


def test_caps_abort():
    with pytest.raises(ResourceCapError):
        toric_ideal(point_config(k_delta(3, 2)), size_cap=3)
    with pytest.raises(ResourceCapError):
        toric_ideal(line_config([0, 1, 3]), degree_cap=2)


def test_variable_orders_are_permutations():
    p = cayley_segments(1, 2, 2, 1)
    n = p.num_points
    for name in ORDER_NAMES:
        assert sorted(variable_order(p, name)) == list(range(n))
    verts = variable_order(p, "vertices-first")[:len(p.vertices)]
    assert {p.lattice_points[i] for i in verts} == set(p.vertices)
    with pytest.raises(ValueError):
        variable_order(p, "nope")


def test_retries_stop_at_first_success():
    assert list(check_with_retries(CUBE)) == ["default"]


def test_entries_up_to_twelve_points(catalog16):
    small = [e for e in catalog16.entries if e.num_points <= 12]
    assert len(small) == 33
    for e in small:
        r = check_polytope(e.polytope)
        assert r.quadratic and r.squarefree, e.id
        assert r.seconds < 30


def test_lex_initial_squarefree_on_full_catalog(catalog16):
    for e in catalog16.entries:
        cfg = point_config(e.polytope)
        drl = toric_ideal(cfg)
        lx = reduced_groebner(drl.elements, lex(len(cfg)), True)
        assert all(max(a) <= 1 for a, _ in lx.elements), e.id


@pytest.mark.slow
def test_full_catalog_quadratic_report(catalog16):
    """Recorded outcome of the extended run: seven entries need another
    variable order and one has cubics in every order tried."""
    retried, failed = [], []
    for e in catalog16.entries:
        res = check_with_retries(e.polytope)
        last = list(res.values())[-1]
        if len(res) > 1:
            retried.append(e.id)
        if not (last.quadratic and last.squarefree):
            failed.append(e.id)
    assert retried == ["smooth3-14-16", "smooth3-14-17", "smooth3-15-14", "smooth3-16-23",
                       "smooth3-16-27", "smooth3-16-28", "smooth3-16-29"]
    assert failed == ["smooth3-16-29"]


def test_cubic_elements_of_four_corner_cut_are_ideal_members(catalog16):
    """The cubic leads of the four-corner cut are genuine: the quadrics alone
    generate the same ideal and give the same basis."""
    p = catalog16.by_id("smooth3-16-29").polytope
    cfg = point_config(p)
    gb = toric_ideal(cfg)
    cubics = [x for x in gb.elements if degree(x[0]) == 3]
    assert len(cubics) == 14
    quad = reduced_groebner([x for x in gb.elements if degree(x[0]) == 2], gb.order, True)
    assert sorted(quad.elements) == gb.elements
    assert is_groebner(GroebnerBasis(gb.order, gb.elements))
    kernel_quadrics = kernel_binomials(cfg, 2)
    assert all(member(gb, u, v) for u, v in kernel_quadrics)
