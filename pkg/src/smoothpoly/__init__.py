"""Smooth lattice polytopes in dimension 2 and 3: constructions, canonical
forms, enumeration and toric-ideal checks."""

__version__ = "0.1.0"
