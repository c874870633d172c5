"""Arbitrary-precision evaluation of hyperlogarithm words.

Strategy: expand the whole suffix-closed family of words at the tangential
base point 0 (power series with log z slices, shuffle-regularized), move to
a regular anchor, then transport the value vector along a polyline whose
steps stay within half the distance to the nearest ramification point.  The
Taylor recursion at a regular point uses the geometric structure of the
kernels, so one step costs O(terms) per word.

Default paths stay inside the cut plane: vertical cuts leave each real
ramification point downward except at 1, where the cut goes upward (so the
segment (1, oo) is reached below the cut).  Values carry a validated error
estimate obtained by recomputing with increased precision and depth.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import mpmath

from ..errors import OnCut, PrecisionNotReached
from .words import Alphabet, HyperlogExpr, STANDARD, Word


class MultiFloat:
    """Value with a validated error bound."""

    __slots__ = ("value", "error", "digits")

    def __init__(self, value, error, digits: int):
        self.value = value
        self.error = error
        self.digits = digits

    def __repr__(self):
        return f"MultiFloat({self.value}, +-{self.error})"


def suffix_closure(words: Iterable[Word]) -> List[Word]:
    out = set()
    for w in words:
        w = tuple(w)
        for k in range(len(w) + 1):
            out.add(w[k:])
    return sorted(out, key=lambda w: (len(w), w))


# ---------------------------------------------------------------------------
# regularized expansion at the base point 0
# ---------------------------------------------------------------------------


def _series_at_zero(alphabet: Alphabet, closure: Sequence[Word], n_terms: int, mp):
    """For each word, slices[k] = coefficients of log(z)^k * z^n.

    Shuffle regularization: no integration constants, so every value at the
    tangential base point is 0 except the empty word."""
    series: Dict[Word, List[List]] = {(): [[mp.mpf(1)] + [mp.mpf(0)] * (n_terms - 1)]}
    zero_pt = Fraction(0)
    for w in closure:
        if not w:
            continue
        a = w[0]
        tail = series[w[1:]]
        point = alphabet.points[a]
        sign = alphabet.signs[a]
        if point == zero_pt:
            # multiply by sign/z then integrate: index shift, log-raise at n=0
            integ = [[mp.mpf(0)] * n_terms for _ in range(len(tail) + 1)]
            for k, slice_k in enumerate(tail):
                # n=0 term: sign * c0 * log^k / z -> sign*c0 log^{k+1}/(k+1)
                c0 = slice_k[0]
                if c0:
                    integ[k + 1][0] += sign * c0 / (k + 1)
                # n>=1 terms: integrand sign*c_n z^{n-1} log^k
                b = [mp.mpf(0)] * n_terms
                for n in range(1, n_terms):
                    b[n - 1] = sign * slice_k[n]
                _integrate_slices_into(integ, k, b, mp)
        else:
            # kernel geometric: sign/(z-q) = -(sign/q) sum (z/q)^m
            g0 = -sign / mp.mpf(point.numerator) * point.denominator
            r = mp.mpf(point.denominator) / point.numerator
            integ = [[mp.mpf(0)] * n_terms for _ in range(len(tail))]
            for k, slice_k in enumerate(tail):
                prod = [mp.mpf(0)] * n_terms
                acc = mp.mpf(0)
                for n in range(n_terms):
                    acc = acc * r + slice_k[n]
                    prod[n] = g0 * acc
                # integrand prod_n z^n log^k -> shift to b_{n} = coeff of z^{n-1}
                b = [mp.mpf(0)] * n_terms
                for n in range(n_terms - 1):
                    b[n] = prod[n]
                _integrate_slices_into(integ, k, b, mp)
        while len(integ) > 1 and not any(integ[-1]):
            integ.pop()
        series[w] = integ
    return series


def _integrate_slices_into(integ, k, b, mp):
    """Add the antiderivative of sum_n b[n-1] z^{n-1} log^k z to integ.

    Ansatz sum_{j<=k} A_{j,n} z^n log^j with
    b_{k,n-1} = n A_{k,n} + (k+1) A_{k+1,n} solved downward in j."""
    n_terms = len(b)
    upper = [mp.mpf(0)] * n_terms  # A_{j+1, n} of the previous (higher) j
    for j in range(k, -1, -1):
        cur = [mp.mpf(0)] * n_terms
        for n in range(1, n_terms):
            rhs = (b[n - 1] if j == k else mp.mpf(0)) - (j + 1) * upper[n]
            if rhs:
                cur[n] = rhs / n
        for n in range(n_terms):
            if cur[n]:
                integ[j][n] += cur[n]
        upper = cur


def _eval_log_series(slices, z, logz, mp):
    total = mp.mpc(0)
    for k, slice_k in enumerate(slices):
        acc = mp.mpc(0)
        for c in reversed(slice_k):
            acc = acc * z + c
        total += acc * logz**k
    return total


# ---------------------------------------------------------------------------
# transport at regular points
# ---------------------------------------------------------------------------


def _transport_step(alphabet: Alphabet, closure, values, p, q, n_terms, mp):
    """Taylor-transport all word values from p to q (|q-p| small enough)."""
    coeffs: Dict[Word, List] = {(): [mp.mpc(1)] + [mp.mpc(0)] * (n_terms - 1)}
    for w in closure:
        if not w:
            continue
        a = w[0]
        tail = coeffs[w[1:]]
        pa = p - mp.mpf(alphabet.points[a].numerator) / alphabet.points[a].denominator
        g0 = alphabet.signs[a] / pa
        r = -1 / pa
        t = [mp.mpc(0)] * n_terms
        t[0] = values[w]
        acc = mp.mpc(0)
        for n in range(n_terms - 1):
            acc = acc * r + tail[n]
            t[n + 1] = g0 * acc / (n + 1)
        coeffs[w] = t
    h = q - p
    out = {}
    for w in closure:
        acc = mp.mpc(0)
        for c in reversed(coeffs[w]):
            acc = acc * h + c
        out[w] = acc
    return out


def _nearest_letter_distance(alphabet: Alphabet, z, mp):
    return min(
        abs(z - mp.mpf(pt.numerator) / pt.denominator)
        for pt in alphabet.points.values()
    )


def _subdivide(alphabet: Alphabet, path, mp, theta=0.5):
    """Insert intermediate points so each step <= theta * distance to the
    nearest ramification point at the step's start."""
    out = [path[0]]
    for target in path[1:]:
        guard = 0
        while True:
            p = out[-1]
            rho = _nearest_letter_distance(alphabet, p, mp)
            if rho == 0:
                raise OnCut("path touches a ramification point")
            d = abs(target - p)
            if d <= theta * rho:
                out.append(target)
                break
            out.append(p + (target - p) * (theta * rho / d))
            guard += 1
            if guard > 4000:
                raise PrecisionNotReached("path subdivision did not converge")
    return out


# ---------------------------------------------------------------------------
# the evaluator
# ---------------------------------------------------------------------------


_ANCHOR_CACHE: Dict[Tuple, Dict[Word, object]] = {}


class WordEvaluator:
    """Evaluate a family of words at points of the cut plane."""

    def __init__(self, alphabet: Alphabet = STANDARD, words: Iterable[Word] = (), dps: int = 50):
        self.alphabet = alphabet
        self.closure = suffix_closure(list(words) or [()])
        self.dps = dps
        self.mp = mpmath.mp.clone()
        self.mp.dps = dps + 10 + 5 * max(len(w) for w in self.closure)
        self.n_terms = int(self.mp.dps * 3.4) + 24
        nonzero = [p for p in alphabet.points.values() if p != 0]
        scale = min(abs(Fraction(p)) for p in nonzero) if nonzero else Fraction(1)
        self.anchor = self.mp.mpf(2 * scale.numerator) / (5 * scale.denominator)
        self._anchor_values = self._compute_anchor_values()

    def _compute_anchor_values(self):
        key = (self.alphabet, tuple(self.closure), self.mp.dps, self.n_terms)
        cached = _ANCHOR_CACHE.get(key)
        if cached is not None:
            return cached
        mp = self.mp
        series = _series_at_zero(self.alphabet, self.closure, self.n_terms, mp)
        logz = mp.log(self.anchor)
        vals = {
            w: _eval_log_series(series[w], mp.mpc(self.anchor), logz, mp)
            for w in self.closure
        }
        _ANCHOR_CACHE[key] = vals
        return vals

    # -- paths ---------------------------------------------------------

    def on_cut(self, z) -> bool:
        mp = self.mp
        re, im = mp.re(z), mp.im(z)
        for pt in self.alphabet.points.values():
            p = mp.mpf(pt.numerator) / pt.denominator
            if re == p:
                if im == 0:
                    return True  # a ramification point itself
                if pt >= 1 and im > 0:
                    return True
                if pt < 1 and im < 0:
                    return True
        return False

    def route(self, z) -> List:
        """Waypoints from the anchor to z inside the cut plane."""
        mp = self.mp
        if isinstance(z, Fraction):
            z = mp.mpf(z.numerator) / z.denominator
        z = mp.mpc(z)
        if self.on_cut(z):
            raise OnCut(f"{z} lies on a branch cut")
        a = self.anchor

        def num(p: Fraction):
            return mp.mpf(p.numerator) / p.denominator

        re, im = mp.re(z), mp.im(z)
        up_cuts = [num(p) for p in self.alphabet.points.values() if p >= 1]
        low = [num(p) for p in self.alphabet.points.values() if p < 1]
        max_low = max(low) if low else None
        gap_hi = min(up_cuts) if up_cuts else None
        pts = sorted(self.alphabet.points.values())
        min_gap = min(
            (Fraction(b - a2) for a2, b in zip(pts, pts[1:])), default=Fraction(1)
        )
        alt = mp.mpf("0.35") * min(
            1, mp.mpf(min_gap.numerator) / min_gap.denominator
        )
        if im == 0 and gap_hi is not None and max_low is not None and max_low < re < gap_hi:
            return [a, z]
        if gap_hi is None or re < gap_hi:
            # travel above (all cuts below except those at points >= 1)
            return [a, a + 1j * alt, mp.mpc(re, alt), z]
        # re >= first up-cut: travel below, come up through the (max_low, oo)
        # real gap at re
        return [a, a - 1j * alt, mp.mpc(re, -alt), z]

    # -- evaluation ------------------------------------------------------

    def values_along(self, path: Sequence) -> Dict[Word, object]:
        """Transport all closure words from the anchor along the polyline."""
        mp = self.mp
        pts = _subdivide(self.alphabet, [mp.mpc(p) for p in path], mp)
        vals = dict(self._anchor_values)
        for p, q in zip(pts, pts[1:]):
            vals = _transport_step(
                self.alphabet, self.closure, vals, p, q, self.n_terms, mp
            )
        return vals

    def value_vector(self, z, strict_words: Optional[Iterable[Word]] = None) -> Dict[Word, object]:
        """Values of all closure words at z.  At a ramification point itself,
        finite words get their limit and divergent ones their regularized
        constant; divergence of a word listed in strict_words raises OnCut."""
        mp = self.mp
        if isinstance(z, Fraction):
            z = mp.mpf(z.numerator) / z.denominator
        zc = mp.mpc(z)
        for pt in self.alphabet.points.values():
            p = mp.mpf(pt.numerator) / pt.denominator
            if zc == p:
                exps = self.local_expansions_at(pt)
                out = {}
                tol = mp.mpf(10) ** (-(self.dps))
                strict = set(map(tuple, strict_words)) if strict_words else set()
                for w in self.closure:
                    slices = exps[w]
                    if w in strict and any(abs(s[0]) > tol for s in slices[1:]):
                        raise OnCut(f"L_{w} diverges at the ramification point {pt}")
                    out[w] = slices[0][0]
                return out
        path = self.route(z)
        return self.values_along(path)

    def local_expansions_at(self, letter_point) -> Dict[Word, List[List]]:
        """Log-structured expansions sum_k log(h)^k P_k(h) of every closure
        word at the given ramification point, with the branch constants fixed
        by transport from the anchor.  The h^0 log^0 coefficients are the
        regularized values at the point."""
        mp = self.mp
        pt = Fraction(letter_point)
        a = mp.mpf(pt.numerator) / pt.denominator
        rho = min(
            (
                abs(a - mp.mpf(q.numerator) / q.denominator)
                for q in self.alphabet.points.values()
                if q != pt
            ),
            default=mp.mpf(1),
        )
        # slice variable log(direction * h): real along the approach ray, so
        # the extracted constants follow the real-parameter shuffle
        # regularization (log(1-z) slices at the point 1, etc.)
        direction = 1 if self.anchor >= a else -1
        p = a + direction * rho / 2
        vals = self.values_along(self.route(p))
        h_p = mp.mpc(p - a)
        log_hp = mp.log(direction * h_p)
        out: Dict[Word, List[List]] = {(): [[mp.mpc(1)] + [mp.mpc(0)] * (self.n_terms - 1)]}
        for w in self.closure:
            if not w:
                continue
            b = w[0]
            tail = out[w[1:]]
            bpt = self.alphabet.points[b]
            sign = self.alphabet.signs[b]
            if bpt == pt:
                integ = [[mp.mpc(0)] * self.n_terms for _ in range(len(tail) + 1)]
                for k, slice_k in enumerate(tail):
                    c0 = slice_k[0]
                    if c0:
                        integ[k + 1][0] += sign * c0 / (k + 1)
                    bb = [mp.mpc(0)] * self.n_terms
                    for n in range(1, self.n_terms):
                        bb[n - 1] = sign * slice_k[n]
                    _integrate_slices_into(integ, k, bb, mp)
            else:
                qa = a - mp.mpf(bpt.numerator) / bpt.denominator
                g0 = sign / qa
                r = -1 / qa
                integ = [[mp.mpc(0)] * self.n_terms for _ in range(len(tail))]
                for k, slice_k in enumerate(tail):
                    bb = [mp.mpc(0)] * self.n_terms
                    acc = mp.mpc(0)
                    for n in range(self.n_terms - 1):
                        acc = acc * r + slice_k[n]
                        bb[n] = g0 * acc
                    _integrate_slices_into(integ, k, bb, mp)
            # branch constant from the transported value
            particular = mp.mpc(0)
            for k, slice_k in enumerate(integ):
                acc = mp.mpc(0)
                for c in reversed(slice_k):
                    acc = acc * h_p + c
                particular += acc * log_hp**k
            integ[0][0] += vals[w] - particular
            while len(integ) > 1 and not any(integ[-1]):
                integ.pop()
            out[w] = integ
        return out

    def regularized_values_at(self, letter_point) -> Dict[Word, object]:
        """Shuffle-regularized values (constant terms of the local
        log-expansions) at a ramification point."""
        exps = self.local_expansions_at(letter_point)
        return {w: exps[w][0][0] for w in self.closure}

    def continue_loop(self, loop: Sequence) -> Dict[Word, object]:
        """Values after transporting around a closed polyline based at the
        anchor (numeric analytic continuation; monodromy oracle)."""
        closed = list(loop)
        if closed[0] != self.anchor:
            closed = [self.anchor] + closed
        if closed[-1] != closed[0]:
            closed = closed + [closed[0]]
        return self.values_along(closed)


def eval_word(
    word: Sequence[str],
    z,
    dps: int = 50,
    alphabet: Alphabet = STANDARD,
    path: Optional[Sequence] = None,
) -> MultiFloat:
    """Value of L_word at z (path from 0 inside the cut plane), validated by
    recomputation at increased precision."""
    w = tuple(word)
    results = []
    for extra in (0, 12):
        ev = WordEvaluator(alphabet, [w], dps=dps + extra)
        if path is not None:
            vals = ev.values_along(path)
        else:
            vals = ev.value_vector(z, strict_words=[w])
        results.append(vals[w])
    err = abs(results[0] - results[1]) + mpmath.mpf(10) ** (-(dps + 4))
    digits = int(-mpmath.log10(err)) if err > 0 else dps
    if digits < dps - 2:
        raise PrecisionNotReached(f"validated only {digits} of {dps} digits")
    return MultiFloat(results[1], err, digits)


def eval_expr(
    expr: HyperlogExpr,
    z,
    dps: int = 50,
    evaluator: Optional[WordEvaluator] = None,
) -> object:
    """Numeric value of a hyperlog expression (single computation, no
    doubling; use eval_word for validated values)."""
    ev = evaluator or WordEvaluator(expr.alphabet, expr.words(), dps=dps)
    vals = ev.value_vector(z)
    mp = ev.mp
    total = mp.mpc(0)
    for w, c in expr.terms.items():
        total += c.numeric(mp) * vals[w]
    return total
