"""Webs of plane foliations with rational first integrals.

A Foliation is the level-curve foliation of a non-constant rational function;
two integrals define the same foliation exactly when their Jacobian vanishes
identically (post-composition with a Mobius map changes the integral, not the
foliation).

The singular locus is assembled from two kinds of affine curve components:

* tangency components: for each pair of integrals the denominator-cleared
  Jacobian polynomial den_i^2 den_j^2 (dU_i ^ dU_j).  Clearing (rather than
  reducing) keeps components supported on pole curves, which are common
  leaves of the two pencils and genuinely singular for the web.  This is the
  affine restriction of the projective wedge of the pencils' defining forms.
* pole components: the denominator curve of each integral, where the value
  reaches infinity (the paper's printed loci include these).

Components are stored squarefree and pairwise coprime; indeterminacy sets
are kept as (numerator, denominator) ideal descriptors since downstream code
only ever needs avoidance, which is decided by evaluation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import ConstantInput, DegenerateMap, SearchExhausted, TooFewFoliations
from .parse import format_ratfunc, parse_ratfunc
from .poly import BivarPoly, coprime_split, poly_divides, poly_divmod_exact, squarefree_part
from .ratfunc import RatFunc, cleared_jacobian, jacobian_numerator


class Foliation:
    """Level-curve foliation of a non-constant rational first integral."""

    __slots__ = ("integral",)

    def __init__(self, integral: RatFunc):
        if integral.is_constant():
            raise ConstantInput("a first integral must be non-constant")
        self.integral = integral

    def __repr__(self):
        return f"Foliation({self.integral})"


def same_foliation(f: Foliation, g: Foliation) -> bool:
    return jacobian_numerator(f.integral, g.integral).is_zero()


class Web:
    """Unordered set of N >= 3 pairwise distinct foliations."""

    def __init__(self, foliations: Sequence[Foliation], name: Optional[str] = None):
        fols = list(foliations)
        if len(fols) < 3:
            raise TooFewFoliations(f"a web needs at least 3 foliations, got {len(fols)}")
        for i in range(len(fols)):
            for j in range(i + 1, len(fols)):
                if same_foliation(fols[i], fols[j]):
                    raise DegenerateMap(
                        f"foliations {i + 1} and {j + 1} coincide as foliations"
                    )
        self.foliations = fols
        self.name = name

    @property
    def size(self) -> int:
        return len(self.foliations)

    def integrals(self) -> List[RatFunc]:
        return [f.integral for f in self.foliations]

    @staticmethod
    def from_integrals(integrals: Iterable[RatFunc], name: Optional[str] = None) -> "Web":
        return Web([Foliation(u) for u in integrals], name=name)

    @staticmethod
    def from_expressions(exprs: Iterable[str], name: Optional[str] = None) -> "Web":
        return Web.from_integrals([parse_ratfunc(e) for e in exprs], name=name)

    def subweb(self, indices: Sequence[int], name: Optional[str] = None) -> "Web":
        """Web of the selected foliations (1-based indices)."""
        idx = sorted(set(indices))
        if len(idx) < 3:
            raise TooFewFoliations("a subweb needs at least 3 foliations")
        if idx[0] < 1 or idx[-1] > self.size:
            raise ValueError("subweb index out of range")
        return Web([self.foliations[i - 1] for i in idx], name=name)

    def subweb_without(self, removed: Sequence[int], name: Optional[str] = None) -> "Web":
        """Complement convention: drop the listed (1-based) indices."""
        keep = [i for i in range(1, self.size + 1) if i not in set(removed)]
        return self.subweb(keep, name=name)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"Web{label}[{', '.join(str(u) for u in self.integrals())}]"


class SingularLocus:
    """Curve components (squarefree, pairwise coprime) plus indeterminacy
    ideal descriptors of a web."""

    def __init__(self, curve_components, indeterminacy_points, tangency_components):
        self.curve_components: List[BivarPoly] = curve_components
        self.indeterminacy_points: List[Tuple[BivarPoly, BivarPoly]] = indeterminacy_points
        # subset of curve_components arising from pairwise tangency alone;
        # this part is invariant under Mobius reparametrization of integrals
        self.tangency_components: List[BivarPoly] = tangency_components

    def product(self) -> BivarPoly:
        out = BivarPoly.const(1)
        for c in self.curve_components:
            out = out * c
        return out

    def vanishes_at(self, x, y) -> bool:
        return any(c.evaluate(x, y) == 0 for c in self.curve_components)

    def __repr__(self):
        return f"SingularLocus({[str(c) for c in self.curve_components]})"


def singular_locus(web: Web) -> SingularLocus:
    """Curve components and indeterminacy descriptors of the web's locus."""
    us = web.integrals()
    tang: List[BivarPoly] = []
    for i in range(len(us)):
        for j in range(i + 1, len(us)):
            w = cleared_jacobian(us[i], us[j])
            if w.is_zero():
                raise DegenerateMap("coincident foliations in singular_locus")
            if not w.is_constant():
                tang.append(squarefree_part(w))
    poles: List[BivarPoly] = []
    for u in us:
        if not u.den.is_constant():
            poles.append(squarefree_part(u.den))
    tang_split = coprime_split(tang)
    all_split = coprime_split(tang + poles)
    indet = [(u.num, u.den) for u in us if not u.den.is_constant()]
    return SingularLocus(all_split, indet, tang_split)


def verify_sigma_factors(web: Web, candidates: Sequence[BivarPoly]) -> dict:
    """Compare candidate factors against the computed singular locus.

    Reports, per candidate, whether it divides the locus product, and whether
    the product of the candidates matches the computed squarefree product up
    to a rational constant.
    """
    locus = singular_locus(web)
    product = locus.product()
    per_candidate = []
    cand_product = BivarPoly.const(1)
    all_divide = True
    for c in candidates:
        if c.is_zero():
            raise ValueError("zero candidate factor")
        divides = poly_divides(squarefree_part(c), product)
        all_divide = all_divide and divides
        per_candidate.append({"factor": str(c), "divides": divides})
        cand_product = cand_product * c
    cand_sf = squarefree_part(cand_product) if not cand_product.is_constant() else cand_product
    prod_match = False
    if not product.is_constant() and not cand_sf.is_constant():
        ok, q = poly_divmod_exact(product, cand_sf)
        prod_match = bool(ok and q is not None and q.is_constant())
    elif product.is_constant() and cand_sf.is_constant():
        prod_match = True
    return {
        "web": web.name,
        "candidates": per_candidate,
        "all_divide": all_divide,
        "product_equal_up_to_constant": prod_match,
        "computed_components": [str(c) for c in locus.curve_components],
    }


def pick_generic_point(
    web: Web,
    seed: int = 0,
    preferred: Optional[Tuple[Fraction, Fraction]] = None,
    max_trials: int = 20000,
):
    """Deterministic search for a rational base point off the singular locus
    with every integral finite.  A valid preferred point wins."""
    locus = singular_locus(web)

    def valid(px, py) -> bool:
        if locus.vanishes_at(px, py):
            return False
        for u in web.integrals():
            if u.den.evaluate(px, py) == 0:
                return False
        return True

    if preferred is not None:
        px, py = Fraction(preferred[0]), Fraction(preferred[1])
        if valid(px, py):
            return BasePoint(web, (px, py))

    # seeded deterministic spiral over small-denominator rationals
    import random

    rng = random.Random(seed)
    trials = 0
    for den in (2, 3, 5, 7, 11, 13, 17, 23, 31, 43):
        for _ in range(max_trials // 10):
            trials += 1
            px = Fraction(rng.randrange(1, 4 * den), den)
            py = Fraction(rng.randrange(1, 4 * den), den + rng.randrange(1, 3))
            if valid(px, py):
                return BasePoint(web, (px, py))
    raise SearchExhausted(f"no generic point found in {trials} trials")


class BasePoint:
    """A generic point with the integral values; integrals infinite at the
    point are flipped to their reciprocals (same foliation, finite value)."""

    def __init__(self, web: Web, point: Tuple[Fraction, Fraction]):
        self.point = (Fraction(point[0]), Fraction(point[1]))
        self.web = web
        images = []
        effective = []
        for u in web.integrals():
            dv = u.den.evaluate(*self.point)
            if dv == 0:
                u = u.inverse()
            effective.append(u)
            images.append(u.evaluate(*self.point))
        self.effective_integrals: List[RatFunc] = effective
        self.images: List[Fraction] = images

    def __repr__(self):
        return f"BasePoint({self.point}, images={self.images})"


def pullback_web(web: Web, map_xy: Tuple[RatFunc, RatFunc], name: Optional[str] = None) -> Web:
    """Web with integrals U_i composed with the map; distinctness revalidated."""
    fx, fy = map_xy
    if fx.is_constant() or fy.is_constant():
        raise DegenerateMap("pullback map components must be non-constant")
    pulled = [u.substitute(fx, fy) for u in web.integrals()]
    try:
        return Web.from_integrals(pulled, name=name)
    except DegenerateMap as exc:
        raise DegenerateMap(f"pullback collapsed two foliations: {exc}") from exc


def webs_equal_as_foliations(a: Web, b: Web) -> Optional[List[int]]:
    """If the webs agree as unordered sets of foliations, the matching
    (1-based, position i of `a` -> returned[i-1] of `b`); else None."""
    if a.size != b.size:
        return None
    used = [False] * b.size
    match: List[int] = []
    for fa in a.foliations:
        found = None
        for j, fb in enumerate(b.foliations):
            if not used[j] and same_foliation(fa, fb):
                found = j
                break
        if found is None:
            return None
        used[found] = True
        match.append(found + 1)
    return match


def condition_c_local(web: Web) -> dict:
    """Local surrogate of the coordinate-system condition: for each integral,
    which partners have their full tangency divisor inside the locus product
    (always true by construction; the report enumerates the witnesses).
    Globality (injectivity of the pair map) is not decided here."""
    us = web.integrals()
    locus = singular_locus(web)
    product = locus.product()
    witnesses = []
    holds_everywhere = True
    for i in range(len(us)):
        partners = []
        for l in range(len(us)):
            if l == i:
                continue
            w = cleared_jacobian(us[i], us[l])
            wsf = squarefree_part(w) if not w.is_constant() else BivarPoly.const(1)
            ok = wsf.is_constant() or poly_divides(wsf, product)
            if ok:
                partners.append(l + 1)
        witnesses.append({"integral": i + 1, "partners": partners})
        holds_everywhere = holds_everywhere and bool(partners)
    return {"web": web.name, "holds": holds_everywhere, "witnesses": witnesses}


# ---------------------------------------------------------------------------
# web definition files
# ---------------------------------------------------------------------------


def web_to_text(web: Web, variables=("x", "y")) -> str:
    lines = []
    if web.name:
        lines.append(f"name: {web.name}")
    lines.append(f"variables: {variables[0]} {variables[1]}")
    for u in web.integrals():
        lines.append(format_ratfunc(u, variables))
    return "\n".join(lines) + "\n"


def web_from_text(text: str) -> Web:
    name = None
    variables = ("x", "y")
    exprs = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("name:"):
            name = line[5:].strip()
        elif line.startswith("variables:"):
            parts = line[10:].split()
            if len(parts) != 2:
                raise ValueError("variables line must list exactly two names")
            variables = (parts[0], parts[1])
        else:
            exprs.append(parse_ratfunc(line, variables))
    return Web.from_integrals(exprs, name=name)


def load_web(path) -> Web:
    with open(path, "r", encoding="utf-8") as fh:
        return web_from_text(fh.read())
