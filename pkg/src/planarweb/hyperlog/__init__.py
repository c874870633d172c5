"""Iterated-integral calculus: words, shuffle algebra, symbolic derivative,
arbitrary-precision evaluation, monodromy, special functions, AFE checks."""
