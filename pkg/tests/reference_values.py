"""Reference values the computations are compared against."""

# vertex blow-ups of a polytope labelled 3^1 4^3 5^3:
# (label, associated to a sphere triangulation, lower bound on lattice points)
VERTEX_BLOWUPS_OF_31_43_53 = [
    ("3^1 4^2 5^5", False, 21),
    ("3^1 4^3 5^3 6^1", True, 19),
    ("3^1 4^4 5^1 6^2", True, 17),
    ("3^2 5^6", False, 22),
    ("3^2 4^1 5^4 6^1", True, 21),
    ("3^2 4^2 5^2 6^2", True, 19),
    ("3^2 4^3 6^3", False, 15),
]

# sphere triangulations with n = 4..8 vertices
TRIANGULATION_COUNTS = {4: 1, 5: 1, 6: 2, 7: 5, 8: 14}

MINIMAL_LABELS = {"3^4", "3^2 4^3", "4^6", "4^5 5^2", "4^6 6^2"}
