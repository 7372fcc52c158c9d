import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smoothpoly import _kernels_py as pure
from smoothpoly import kernels
from smoothpoly.normality import _mask, degrevlex, elimination, lex, point_config, toric_ideal

from shapes import corners_cut

compiled = pytest.importorskip("smoothpoly._kernels")

coord = st.integers(-4, 4)
points3 = st.lists(st.tuples(coord, coord, coord), min_size=4, max_size=14, unique=True)
points2 = st.lists(st.tuples(coord, coord), min_size=3, max_size=10, unique=True)


def test_backend_selected():
    assert kernels.BACKEND == "cython"


def test_pure_flag_forces_fallback():
    env = dict(os.environ, SMOOTHPOLY_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from smoothpoly import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True).stdout
    assert out.strip() == "python"


@given(st.one_of(points2, points3))
def test_facet_planes_agree(pts):
    d = len(pts[0])
    assert sorted(compiled.facet_planes(pts, d)) == sorted(pure.facet_planes(pts, d))


@given(points3)
def test_lattice_points_agree(pts):
    planes = pure.facet_planes(pts, 3)
    if not planes:
        return
    normals = [n for n, _ in planes]
    offsets = [h for _, h in planes]
    lo = [min(p[c] for p in pts) for c in range(3)]
    hi = [max(p[c] for p in pts) for c in range(3)]
    assert list(compiled.lattice_points(normals, offsets, lo, hi)) == \
        list(pure.lattice_points(normals, offsets, lo, hi))


matrices = st.lists(st.lists(coord, min_size=3, max_size=3), min_size=3, max_size=3)


@given(points3, st.lists(st.tuples(matrices, st.tuples(coord, coord, coord)), min_size=1, max_size=6))
def test_min_image_agrees(pts, frames):
    frames = [(tuple(map(tuple, m)), t) for m, t in frames]
    assert compiled.min_image(pts, frames) == pure.min_image(pts, frames)


def _reduction_inputs():
    cfg = point_config(corners_cut())
    n, d = len(cfg), len(cfg[0])
    gb = toric_ideal(cfg)
    basis = [((0,) * d + a, (0,) * d + b, _mask((0,) * d + a)) for a, b in gb.elements]
    return n, d, basis


N, D, BASIS = _reduction_inputs()
monomials = st.lists(st.integers(0, 2), min_size=N + D, max_size=N + D).map(tuple)


@given(monomials, monomials, st.booleans(), st.booleans(),
       st.sampled_from(["degrevlex", "lex"]))
def test_binomial_normal_form_agrees(a, b, full, saturate, kind):
    inner = degrevlex(N) if kind == "degrevlex" else lex(N)
    w = elimination(D, inner).weights
    assert compiled.binomial_normal_form(a, b, BASIS, w, full, saturate) == \
        pure.binomial_normal_form(a, b, BASIS, w, full, saturate)


def test_wide_masks_fall_back():
    n = 70
    a = tuple(1 if i in (0, 69) else 0 for i in range(n))
    b = tuple(1 if i in (1, 68) else 0 for i in range(n))
    basis = [(a, b, _mask(a))]
    w = degrevlex(n).weights
    assert compiled.binomial_normal_form(a, b, basis, w, True, True) is None
    c = tuple(x + y for x, y in zip(a, a))
    assert compiled.binomial_normal_form(c, b, basis, w, True, False) == \
        pure.binomial_normal_form(c, b, basis, w, True, False)
