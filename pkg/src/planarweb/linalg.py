"""Certified exact linear algebra over Q for the jet systems.

Nullspaces are computed by reduced row echelon form modulo several word-sized
primes, Chinese-remainder combination of the (canonical) echelon kernel
basis, rational reconstruction, and a final exact integer verification
M v = 0 of every basis vector.

This is a certificate, not a heuristic: rank mod p never exceeds the rank
over Q, so the mod-p nullity bounds the rational nullity from above, while
exactly verified independent kernel vectors bound it from below.  Once
verification succeeds the two bounds meet and the kernel is exact.

Primes are 27-bit so the elimination fits int64 numpy arithmetic
((p-1)^2 * n_cols < 2^63).  A pure-Python elimination kernel doubles as a
fallback and a benchmark baseline; set PLANARWEB_PUREPY=1 to force it.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd, isqrt
from typing import List, Optional, Sequence, Tuple

try:
    import numpy as _np
except Exception:  # pragma: no cover
    _np = None


def _use_numpy() -> bool:
    return _np is not None and not os.environ.get("PLANARWEB_PUREPY")


# ---------------------------------------------------------------------------
# deterministic prime stream (27-bit)
# ---------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_stream():
    """Deterministic decreasing stream of 27-bit primes."""
    n = (1 << 27) - 1
    while n > (1 << 26):
        if _is_prime(n):
            yield n
        n -= 2


# ---------------------------------------------------------------------------
# mod-p reduced row echelon form
# ---------------------------------------------------------------------------


def _rref_numpy(rows_mod: List[List[int]], p: int):
    m = _np.array(rows_mod, dtype=_np.int64)
    n_rows, n_cols = m.shape
    piv_cols: List[int] = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        nz = _np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = (m[r] * pow(int(m[r, c]), p - 2, p)) % p
        others = _np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - _np.outer(m[others, c], m[r])) % p
        piv_cols.append(c)
        r += 1
    return piv_cols, m[: len(piv_cols)]


def _rref_pure(rows_mod: List[List[int]], p: int):
    m = [list(r) for r in rows_mod]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    piv_cols: List[int] = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                mr = m[r]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], mr)]
        piv_cols.append(c)
        r += 1
    return piv_cols, m[: len(piv_cols)]


def modp_rref(rows: Sequence[Sequence[int]], p: int):
    """(pivot columns, reduced rows) of the matrix modulo p."""
    rows_mod = [[v % p for v in row] for row in rows]
    if not rows_mod:
        return [], []
    if _use_numpy():
        piv, m = _rref_numpy(rows_mod, p)
        return piv, [[int(v) for v in row] for row in m]
    return _rref_pure(rows_mod, p)


def modp_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(modp_rref(rows, p)[0])


# ---------------------------------------------------------------------------
# rational reconstruction
# ---------------------------------------------------------------------------


def rational_reconstruct(a: int, m: int) -> Optional[Fraction]:
    """Unique n/d with a*d = n mod m, |n|, d <= sqrt(m/2), if it exists."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(abs(r1), abs(s1)) != 1:
        return None
    return Fraction(r1 * (1 if s1 > 0 else -1), abs(s1))


def _clear_rows(mat: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    """Scale each row to coprime integers (kernel unchanged)."""
    out = []
    for row in mat:
        den = 1
        for v in row:
            if v:
                den = den * v.denominator // gcd(den, v.denominator)
        ints = [int(v * den) for v in row]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


class ExactKernel:
    """Certified nullspace: dimension, exact basis, pivot structure."""

    def __init__(self, dimension: int, basis: List[List[Fraction]], pivot_cols: List[int]):
        self.dimension = dimension
        self.basis = basis
        self.pivot_cols = pivot_cols


def exact_nullspace(
    mat: Sequence[Sequence[Fraction]], n_cols: Optional[int] = None
) -> ExactKernel:
    """Certified exact nullspace of a rational matrix."""
    rows = [list(r) for r in mat]
    if not rows or all(not any(r) for r in rows):
        n = n_cols if n_cols is not None else (len(rows[0]) if rows else 0)
        basis = [
            [Fraction(1) if i == j else Fraction(0) for i in range(n)] for j in range(n)
        ]
        return ExactKernel(n, basis, [])
    n = len(rows[0])
    int_rows = [r for r in _clear_rows(rows) if any(r)]

    primes_used: List[int] = []
    residues: List[dict] = []  # per prime: (free_col, piv_idx) -> residue
    best: Optional[Tuple[Tuple[int, ...], int]] = None  # (pivots, rank)
    stream = prime_stream()
    max_primes = 600

    while len(primes_used) < max_primes:
        p = next(stream)
        piv, red = modp_rref(int_rows, p)
        key = tuple(piv)
        if best is None or len(piv) > best[1]:
            best = (key, len(piv))
            primes_used, residues = [], []
        if key != best[0]:
            continue  # unlucky prime (lower or different rank profile)
        primes_used.append(p)
        piv_list = list(best[0])
        free_cols = [c for c in range(n) if c not in set(piv_list)]
        residues.append({(f, k): red[k][f] for f in free_cols for k in range(len(piv_list))})
        # try to reconstruct once a few primes are in, then every couple more
        if len(primes_used) >= 2 and (len(primes_used) % 2 == 0 or len(primes_used) == 2):
            kernel = _crt_reconstruct(primes_used, residues, piv_list, free_cols, n)
            if kernel is not None and _verify_kernel(int_rows, kernel):
                return ExactKernel(len(free_cols), kernel, piv_list)
    raise RuntimeError("kernel reconstruction did not converge (unexpected)")


def _crt_reconstruct(primes, residues, piv_list, free_cols, n):
    modulus = 1
    for p in primes:
        modulus *= p
    # precompute CRT multipliers
    mults = []
    for p in primes:
        mp = modulus // p
        mults.append(mp * pow(mp % p, p - 2, p))
    basis = []
    for f in free_cols:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for k, c in enumerate(piv_list):
            acc = 0
            for mult, res in zip(mults, residues):
                acc += mult * res[(f, k)]
            rec = rational_reconstruct((-acc) % modulus, modulus)
            if rec is None:
                return None
            v[c] = rec
        basis.append(v)
    return basis


def _verify_kernel(int_rows: List[List[int]], basis: List[List[Fraction]]) -> bool:
    """Exact integer check that every vector annihilates every row."""
    for v in basis:
        den = 1
        for x in v:
            if x:
                den = den * x.denominator // gcd(den, x.denominator)
        iv = [int(x * den) for x in v]
        nz = [(c, val) for c, val in enumerate(iv) if val]
        for row in int_rows:
            s = 0
            for c, val in nz:
                rc = row[c]
                if rc:
                    s += rc * val
            if s:
                return False
    return True


# ---------------------------------------------------------------------------
# span ranks and membership
# ---------------------------------------------------------------------------


def exact_rank_of_span(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Certified rank of the Q-span of the given vectors.

    A mod-p independent subset is independent over Q; the remaining vectors
    are verified to lie in its span by exact elimination.
    """
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return 0
    int_rows = _clear_rows(vecs)
    p = next(prime_stream())
    sel = _greedy_independent(int_rows, p)
    basis = [vecs[i] for i in sel]
    rank = len(sel)
    sel_set = set(sel)
    reducer = _ExactReducer(basis)
    for i, v in enumerate(vecs):
        if i in sel_set:
            continue
        if not reducer.contains(v):
            reducer.add(v)
            rank += 1
    return rank


def _greedy_independent(int_rows: List[List[int]], p: int) -> List[int]:
    n = len(int_rows[0])
    ech: List[List[int]] = []
    piv_of: List[int] = []
    chosen: List[int] = []
    for idx, row in enumerate(int_rows):
        v = [x % p for x in row]
        for e_row, pc in zip(ech, piv_of):
            if v[pc]:
                f = v[pc]
                v = [(a - f * b) % p for a, b in zip(v, e_row)]
        pc = next((c for c in range(n) if v[c]), None)
        if pc is None:
            continue
        inv = pow(v[pc], p - 2, p)
        ech.append([(a * inv) % p for a in v])
        piv_of.append(pc)
        chosen.append(idx)
    return chosen


class _ExactReducer:
    """Incremental exact echelon basis for span-membership tests."""

    def __init__(self, vectors: Sequence[Sequence[Fraction]] = ()):
        self.rows: List[List[Fraction]] = []
        self.pivots: List[int] = []
        for v in vectors:
            self.add(v)

    def _reduce(self, v: Sequence[Fraction]) -> List[Fraction]:
        w = [Fraction(x) for x in v]
        for row, pc in zip(self.rows, self.pivots):
            if w[pc]:
                f = w[pc]
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def contains(self, v: Sequence[Fraction]) -> bool:
        return not any(self._reduce(v))

    def add(self, v: Sequence[Fraction]) -> bool:
        """Add v to the span; returns True if it enlarged the span."""
        w = self._reduce(v)
        pc = next((c for c, a in enumerate(w) if a), None)
        if pc is None:
            return False
        f = w[pc]
        w = [a / f for a in w]
        self.rows.append(w)
        self.pivots.append(pc)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def in_span(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    """Exact membership of v in the Q-span of the basis vectors."""
    red = _ExactReducer(basis)
    return red.contains(v)


def solve_exact(
    mat: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Optional[List[Fraction]]:
    """One exact solution of M x = rhs, or None if inconsistent.

    Plain rational Gauss; intended for small systems.
    """
    m = [list(row) + [Fraction(v)] for row, v in zip(mat, rhs)]
    if not m:
        return []
    n_rows, n_cols = len(m), len(m[0]) - 1
    piv_cols = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [a / pv for a in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, n_rows):
        if m[i][n_cols] != 0:
            return None
    x = [Fraction(0)] * n_cols
    for k, c in enumerate(piv_cols):
        x[c] = m[k][n_cols]
    return x
