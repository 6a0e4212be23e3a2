"""Exact Lie-superalgebra and Weyl-module computations."""
