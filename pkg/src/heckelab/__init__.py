"""Symplectic and orthogonal bundles on P^1: Hecke transformations, HN data, degree formula."""
