"""Benchmark the two mod-p elimination kernels on a real jet matrix.

The nullspace engine selects the numpy kernel when numpy is importable and
PLANARWEB_PUREPY is unset; the pure-Python kernel is the fallback.  Both
produce identical pivots and reduced rows (asserted here).
"""

import os
import time
from fractions import Fraction

from planarweb.jets import JetSystem
from planarweb.linalg import _rref_numpy, _rref_pure, prime_stream
from planarweb.web import Web, pick_generic_point


def jet_matrix(order=12):
    web = Web.from_expressions(
        ["x", "y", "x/y", "(1-y)/(1-x)", "y*(1-x)/(x*(1-y))",
         "x*y", "x*(1-y)/(x-1)", "(1-y)/(y*(x-1))", "x*(1-y)^2/(y*(1-x)^2)"])
    bp = pick_generic_point(web, preferred=(Fraction(1, 3), Fraction(1, 2)))
    system = JetSystem(web, bp, order)
    p = next(prime_stream())
    den_cleared = []
    for row in system.rows:
        den = 1
        for v in row:
            if v:
                den = den * v.denominator // __import__("math").gcd(den, v.denominator)
        den_cleared.append([int(v * den) % p for v in row])
    return den_cleared, p


def main():
    rows, p = jet_matrix()
    shape = (len(rows), len(rows[0]))
    print(f"jet matrix of the nine-term web: {shape[0]} x {shape[1]}, prime {p}")
    t0 = time.time()
    piv_np, red_np = _rref_numpy(rows, p)
    t_np = time.time() - t0
    t0 = time.time()
    piv_py, red_py = _rref_pure(rows, p)
    t_py = time.time() - t0
    assert piv_np == piv_py
    assert [list(map(int, r)) for r in red_np] == [list(map(int, r)) for r in red_py]
    print(f"numpy kernel      : {t_np * 1000:8.1f} ms")
    print(f"pure-python kernel: {t_py * 1000:8.1f} ms")
    print(f"speedup           : {t_py / t_np:8.1f}x")


if __name__ == "__main__":
    main()
