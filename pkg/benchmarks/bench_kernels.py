"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

Each kernel runs on inputs taken from real workloads: facet planes and
lattice points of 3 * Delta_3 blown up at its vertices, canonical-form frame
scans over the same polytope, and the normal forms met while computing a
toric ideal. ``--end-to-end`` also times a 12-point classification and a
normality run in fresh interpreters with each backend.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time
from timeit import Timer

from smoothpoly import _kernels_py
from smoothpoly.constructions import blow_up_face, k_delta
from smoothpoly.isomorphism import _all_frames
from smoothpoly.normality import _mask, degrevlex, elimination, point_config, toric_ideal

try:
    from smoothpoly import _kernels as _compiled
except ImportError:
    _compiled = None


def workloads():
    q = k_delta(3, 3)
    for corner in [(0, 0, 0), (3, 0, 0), (0, 3, 0), (0, 0, 3)]:
        q = blow_up_face(q, (q.vertices.index(corner),), 1)
    pts = list(q.lattice_points)
    normals = [f.normal for f in q.facets]
    offsets = [f.offset for f in q.facets]
    lo = [min(x[c] for x in pts) for c in range(3)]
    hi = [max(x[c] for x in pts) for c in range(3)]
    frames = [(m.matrix, m.translation) for m in _all_frames(q)]

    config = point_config(q)
    n, d = len(config), len(config[0])
    order = elimination(d, degrevlex(n))
    gb = toric_ideal(config)
    basis = [((0,) * d + a, (0,) * d + b, _mask((0,) * d + a)) for a, b in gb.elements]
    spairs = []
    for i in range(len(basis)):
        for j in range(i + 1, min(len(basis), i + 6)):
            lcm = tuple(max(x, y) for x, y in zip(basis[i][0], basis[j][0]))
            s_lead = tuple(l - x + y for l, x, y in zip(lcm, basis[i][0], basis[i][1]))
            s_trail = tuple(l - x + y for l, x, y in zip(lcm, basis[j][0], basis[j][1]))
            spairs.append((s_lead, s_trail))

    return {
        "facet_planes": lambda k: k.facet_planes(pts, 3),
        "lattice_points": lambda k: k.lattice_points(normals, offsets, lo, hi),
        "min_image": lambda k: k.min_image(pts, frames),
        "binomial_normal_form": lambda k: [k.binomial_normal_form(a, b, basis, order.weights, True, True)
                                           for a, b in spairs],
    }


def bench(repeat: int) -> None:
    print(f"{'kernel':<22}{'python ms':>12}{'compiled ms':>14}{'speedup':>10}")
    for name, fn in workloads().items():
        t_py = min(Timer(lambda: fn(_kernels_py)).repeat(repeat, 1)) * 1e3
        if _compiled is None:
            print(f"{name:<22}{t_py:>12.2f}{'n/a':>14}{'':>10}")
            continue
        assert fn(_compiled) == fn(_kernels_py), f"{name}: backends disagree"
        t_c = min(Timer(lambda: fn(_compiled)).repeat(repeat, 1)) * 1e3
        print(f"{name:<22}{t_py:>12.2f}{t_c:>14.2f}{t_py / t_c:>9.1f}x")


END_TO_END = (
    "from smoothpoly.enumerate3d import classify_all\n"
    "from smoothpoly.normality import check_polytope\n"
    "import time\n"
    "t = time.perf_counter(); cat = classify_all(12); a = time.perf_counter() - t\n"
    "t = time.perf_counter(); [check_polytope(e.polytope) for e in cat.entries]; b = time.perf_counter() - t\n"
    "print(f'{a:.2f} {b:.2f}')\n"
)


def end_to_end() -> None:
    print(f"\n{'end to end':<22}{'python s':>12}{'compiled s':>14}")
    rows = {}
    for label, pure in (("python", "1"), ("compiled", "0")):
        env = dict(os.environ, SMOOTHPOLY_PURE=pure)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        rows[label] = [float(x) for x in out]
    for i, name in enumerate(("classify <= 12 points", "normality <= 12 points")):
        print(f"{name:<22}{rows['python'][i]:>12.2f}{rows['compiled'][i]:>14.2f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()
    start = time.perf_counter()
    bench(args.repeat)
    if args.end_to_end:
        end_to_end()
    print(f"\ntotal {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
