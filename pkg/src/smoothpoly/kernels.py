"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``SMOOTHPOLY_PURE=1`` to force the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("SMOOTHPOLY_PURE") != "1":
    try:
        from smoothpoly._kernels import (  # type: ignore[import-not-found]
            binomial_normal_form,
            facet_planes,
            lattice_points,
            min_image,
        )

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from smoothpoly._kernels_py import (  # noqa: F401
        binomial_normal_form,
        facet_planes,
        lattice_points,
        min_image,
    )

__all__ = ["BACKEND", "binomial_normal_form", "facet_planes", "lattice_points", "min_image"]
