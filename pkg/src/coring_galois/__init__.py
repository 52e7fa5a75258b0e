"""Exact computations with corings, comatrix corings and Galois conditions over finite-dimensional algebras."""
