"""Graded duality between the tree algebra and words in tree letters.

A word ``Z_t1 Z_t2 ... Z_tk`` pairs with ``h`` through the iterated
coproduct: the ``i``-th leg is read through its coefficient of the single
tree ``t_i``, and the empty word pairs as the counit.  Words are not
straightened to a PBW basis; everything is stated on the free (tensor)
algebra of words, whose coproduct makes each letter primitive.

The graded dual is represented by :class:`DualElem`, a combination of
``delta_F`` (the functional dual to the forest ``F``).  Its product is
convolution against the coproduct.  The Grossman-Larson grafting
product on forests gives a concrete model of the enveloping algebra.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from math import factorial
from numbers import Rational

from rootedhopf import linalg
from rootedhopf.errors import DomainError, ResourceBoundError
from rootedhopf.hopf import HElem, Tensor, _forest_coproduct, as_helem, forest_text
from rootedhopf.models import CK, gl_product_forests
from rootedhopf.structure import compositions
from rootedhopf.trees import EMPTY_FOREST, Forest, Tree, canonicalize, generate_forests, generate_trees
from rootedhopf.vectors import LinComb, format_coeff

__all__ = [
    "PAIRING_BOUND",
    "ZWord",
    "DualElem",
    "words",
    "coeff_extract",
    "pair_word",
    "pair_word_literal",
    "word_coproduct",
    "dual_product",
    "dual_coproduct",
    "counit_functional",
    "psi",
    "psi_rank",
    "check_pairing_recursion",
    "check_psi_multiplicative",
    "witness_phi_not_algebraic",
    "witness_psi_not_coalgebraic",
    "gl_product",
    "symmetry_factor",
    "check_gl_associative",
    "check_gl_matches_pairing",
    "check_double_dual",
    "pairing_report",
]

PAIRING_BOUND = 8


class ZWord(tuple):
    """A word ``Z_t1 ... Z_tk``; the empty word is the unit 1."""

    def __new__(cls, letters=()):
        return super().__new__(cls, (canonicalize(t) for t in letters))

    @property
    def weight(self) -> int:
        return sum(t.weight for t in self)

    def __mul__(self, other):
        return ZWord(tuple(self) + tuple(other))

    def __str__(self):
        if not self:
            return "1"
        return " ".join(f"Z{t.canon}" for t in self)

    def __repr__(self):
        return f"ZWord({str(self)!r})"


def words(n: int) -> list[ZWord]:
    """All words of weight ``n`` (compositions of ``n`` filled with trees)."""
    out = []
    for comp in compositions(n):
        for letters in cartesian(*(generate_trees(c) for c in comp)):
            out.append(ZWord(letters))
    return out


class DualElem(LinComb):
    """A graded functional on the tree algebra, as a combination of ``delta_F``."""

    __slots__ = ()

    @classmethod
    def delta(cls, f) -> DualElem:
        if isinstance(f, Tree):
            f = Forest((f,))
        return cls._raw({f: Fraction(1)})

    @classmethod
    def from_coords(cls, n: int, coords) -> DualElem:
        return cls(zip(generate_forests(n), coords))

    def _coerce(self, other):
        if isinstance(other, DualElem):
            return other
        if isinstance(other, (int, Rational)):
            return DualElem({EMPTY_FOREST: other})
        return NotImplemented

    def __call__(self, h) -> Fraction:
        h = as_helem(h)
        return sum((c * h.coefficient(f) for f, c in self.terms.items()), Fraction(0))

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if not isinstance(other, DualElem):
            return NotImplemented
        return dual_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def degrees(self) -> list[int]:
        return sorted({f.weight for f in self.terms})

    def coords(self, n: int) -> list[Fraction]:
        return [self.coefficient(f) for f in generate_forests(n)]

    def to_json(self) -> list[dict]:
        """``[{"degree": n, "coords": ["rat", ...]}, ...]`` against the forest order."""
        return [{"degree": n, "coords": [str(c) for c in self.coords(n)]}
                for n in self.degrees()]

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (kv[0].weight, forest_text(kv[0])))
        return " + ".join(format_coeff(c, f"d[{forest_text(f)}]") for f, c in items)

    def __repr__(self):
        return f"DualElem({str(self)!r})"


def counit_functional() -> DualElem:
    return DualElem.delta(EMPTY_FOREST)


def coeff_extract(t, h) -> Fraction:
    """Coefficient of the single-tree monomial ``t`` in ``h``."""
    t = canonicalize(t)
    return as_helem(h).coefficient(Forest((t,)))


@lru_cache(maxsize=None)
def _pair_forest(w: tuple, f: Forest) -> Fraction:
    if not w:
        return Fraction(int(f.is_unit))
    if sum(t.weight for t in w) != f.weight:
        return Fraction(0)
    if len(w) == 1:
        return Fraction(int(f.trees == (w[0],)))
    head = Forest((w[0],))
    rest = tuple(w[1:])
    total = Fraction(0)
    for (left, right), c in _forest_coproduct(f).items():
        if left == head:
            total += c * _pair_forest(rest, right)
    return total


def pair_word(w, h) -> Fraction:
    """``<w, h>``: counit for the empty word, iterated coproduct otherwise."""
    w = ZWord(w)
    h = as_helem(h)
    return sum((c * _pair_forest(tuple(w), f) for f, c in h.terms.items()), Fraction(0))


def pair_word_literal(w, h) -> Fraction:
    """Same pairing via the explicit ``(k-1)``-fold coproduct, leg by leg.

    Kept as an independent route for checking :func:`pair_word`.
    """
    from rootedhopf.hopf import iterated_coproduct

    w = ZWord(w)
    h = as_helem(h)
    if not w:
        return h.coefficient(EMPTY_FOREST)
    total = Fraction(0)
    for legs, c in iterated_coproduct(h, len(w) - 1).terms.items():
        v = c
        for t, leg in zip(w, legs):
            v *= coeff_extract(t, HElem.of(leg))
            if not v:
                break
        total += v
    return total


def word_coproduct(w) -> dict:
    """Coproduct of a word with primitive letters: order-preserving splittings."""
    w = ZWord(w)
    out: dict = {}
    k = len(w)
    for mask in range(1 << k):
        left = ZWord(w[i] for i in range(k) if mask >> i & 1)
        right = ZWord(w[i] for i in range(k) if not mask >> i & 1)
        out[(left, right)] = out.get((left, right), 0) + 1
    return out


def dual_product(f: DualElem, g: DualElem) -> DualElem:
    """Convolution ``(f * g)(x) = (f (x) g)(D x)``."""
    return DualElem(CK.dual_mul_lin(f.terms, g.terms))


def dual_coproduct(f: DualElem, n: int | None = None) -> Tensor:
    """Coproduct dual to multiplication, as a tensor over ``delta`` labels.

    With ``n`` given only the degree-``n`` part of ``f`` is used.
    """
    out: dict = {}
    for forest, c in f.terms.items():
        if n is not None and forest.weight != n:
            continue
        for k, v in CK.dual_comul(forest).items():
            out[k] = out.get(k, 0) + c * v
    return Tensor(out)


def _check_bound(n: int) -> None:
    if n > PAIRING_BOUND:
        raise ResourceBoundError(f"word weight {n} exceeds pairing bound {PAIRING_BOUND}")


def psi(w) -> DualElem:
    """The functional ``<w, .>`` in dual-forest coordinates."""
    w = ZWord(w)
    _check_bound(w.weight)
    n = w.weight
    return DualElem((f, _pair_forest(tuple(w), f)) for f in generate_forests(n))


def psi_rank(n: int) -> int:
    return linalg.rank([psi(w).coords(n) for w in words(n)])


def _all_words(dmax: int) -> list[ZWord]:
    return [w for n in range(dmax + 1) for w in words(n)]


def check_pairing_recursion(dmax: int) -> dict:
    """``<w w', h> = <w (x) w', D h>`` at every split point, plus the literal route."""
    failures = []
    for n in range(dmax + 1):
        forests = generate_forests(n)
        for w in words(n) if n else [ZWord()]:
            for f in forests:
                val = pair_word(w, f)
                if val != pair_word_literal(w, f):
                    failures.append({"word": str(w), "forest": str(f), "split": "literal"})
                    continue
                for s in range(len(w) + 1):
                    a, b = ZWord(w[:s]), ZWord(w[s:])
                    rhs = sum((c * pair_word(a, HElem.of(l)) * pair_word(b, HElem.of(r))
                               for (l, r), c in _forest_coproduct(f).items()), Fraction(0))
                    if rhs != val:
                        failures.append({"word": str(w), "forest": str(f), "split": s})
    return {"check": "pairing_recursion", "dmax": dmax, "pass": not failures,
            "failures": failures[:5]}


def check_psi_multiplicative(dmax: int):
    """Verify ``psi(w w') = psi(w) * psi(w')``; return ``(ok, first failing pair)``."""
    ws = _all_words(dmax)
    for w in ws:
        for v in ws:
            if w.weight + v.weight > dmax:
                continue
            if psi(w * v) != psi(w) * psi(v):
                return False, (w, v)
    return True, None


def witness_phi_not_algebraic(dmax: int):
    """Search forests x, y and words w with ``<w, x y> != sum_S <w_S, x> <w_S^c, y>``.

    Returns the first witness ``(x, y, w, lhs, rhs)`` in forest/word order,
    or ``None`` when the map ``h -> <., h>`` is multiplicative up to ``dmax``.
    """
    forests = [f for n in range(dmax + 1) for f in generate_forests(n)]
    for x in forests:
        for y in forests:
            n = x.weight + y.weight
            if n > dmax:
                continue
            xy = HElem.of(x * y)
            for w in (words(n) if n else [ZWord()]):
                lhs = pair_word(w, xy)
                rhs = sum((c * pair_word(a, HElem.of(x)) * pair_word(b, HElem.of(y))
                           for (a, b), c in word_coproduct(w).items()), Fraction(0))
                if lhs != rhs:
                    return (x, y, w, lhs, rhs)
    return None


def witness_psi_not_coalgebraic(dmax: int):
    """Compare ``dual_coproduct(psi(w))`` with ``(psi (x) psi)(D w)`` for all words.

    Returns ``(w, lhs, rhs)`` for the first discrepancy or ``None``.
    """
    for w in _all_words(dmax):
        lhs = dual_coproduct(psi(w))
        rhs: dict = {}
        for (a, b), c in word_coproduct(w).items():
            pa, pb = psi(a), psi(b)
            for f, x in pa.terms.items():
                for g, y in pb.terms.items():
                    rhs[(f, g)] = rhs.get((f, g), 0) + c * x * y
        rhs = Tensor(rhs)
        if lhs != rhs:
            return (w, lhs, rhs)
    return None


def gl_product(x, y) -> HElem:
    """Grossman-Larson grafting product, extended bilinearly."""
    x, y = as_helem(x), as_helem(y)
    out: dict = {}
    for f, a in x.terms.items():
        for g, b in y.terms.items():
            for k, c in gl_product_forests(f, g).items():
                out[k] = out.get(k, 0) + a * b * c
    return HElem(out)


@lru_cache(maxsize=None)
def _tree_symmetry(t: Tree) -> int:
    return symmetry_factor(Forest(t.children))


def symmetry_factor(f: Forest) -> int:
    """Order of the automorphism group of a forest."""
    out = 1
    counts: dict[Tree, int] = {}
    for t in f.trees:
        counts[t] = counts.get(t, 0) + 1
    for t, m in counts.items():
        out *= factorial(m) * _tree_symmetry(t) ** m
    return out


def check_gl_associative(dmax: int) -> dict:
    forests = [f for n in range(dmax + 1) for f in generate_forests(n)]
    failures = []
    for a in forests:
        for b in forests:
            for c in forests:
                if a.weight + b.weight + c.weight > dmax:
                    continue
                A, B, C = HElem.of(a), HElem.of(b), HElem.of(c)
                if gl_product(gl_product(A, B), C) != gl_product(A, gl_product(B, C)):
                    failures.append((str(a), str(b), str(c)))
    return {"check": "gl_associative", "dmax": dmax, "pass": not failures,
            "failures": failures[:5]}


def _gl_image(f: Forest, normalization: str) -> DualElem:
    if normalization == "plain":
        return DualElem.delta(f)
    if normalization == "symmetry":
        return DualElem.delta(f).scale(symmetry_factor(f))
    raise DomainError(f"unknown normalization {normalization!r}")


def check_gl_matches_pairing(dmax: int, normalization: str = "plain") -> dict:
    """Is ``F -> delta_F`` (optionally scaled by symmetry factors) an algebra map?

    Single trees go to ``delta_t = psi(Z_t)`` under either normalization.
    For all forest pairs of total weight <= ``dmax`` the image of the
    grafting product is compared with the convolution of the images.
    """
    forests = [f for n in range(dmax + 1) for f in generate_forests(n)]
    for f in forests:
        for g in forests:
            if f.weight + g.weight > dmax:
                continue
            lhs = DualElem()
            for k, c in gl_product_forests(f, g).items():
                lhs = lhs + _gl_image(k, normalization).scale(c)
            rhs = _gl_image(f, normalization) * _gl_image(g, normalization)
            if lhs != rhs:
                return {"check": "gl_matches_pairing", "dmax": dmax,
                        "normalization": normalization, "pass": False,
                        "witness": {"F": str(f), "G": str(g), "lhs": str(lhs), "rhs": str(rhs)}}
    return {"check": "gl_matches_pairing", "dmax": dmax, "normalization": normalization,
            "pass": True, "witness": None}


def check_double_dual(n: int) -> bool:
    """The evaluation map from degree ``n`` into the dual of the dual has full rank."""
    forests = generate_forests(n)
    duals = [DualElem.delta(f) for f in forests]
    matrix = [[d(HElem.of(f)) for d in duals] for f in forests]
    return linalg.rank(matrix) == len(forests)


def pairing_report(dmax: int = 4) -> dict:
    ok_mult, bad = check_psi_multiplicative(dmax)
    phi = witness_phi_not_algebraic(dmax)
    psi_w = witness_psi_not_coalgebraic(dmax)
    return {
        "report": "pairing",
        "dmax": dmax,
        "pairing_recursion": check_pairing_recursion(dmax),
        "psi_multiplicative": {"pass": ok_mult,
                               "witness": None if bad is None else [str(bad[0]), str(bad[1])]},
        "psi_rank": [{"degree": n, "rank": psi_rank(n), "dim": len(generate_forests(n))}
                     for n in range(dmax + 1)],
        "phi_not_algebraic": {
            "witness_found": phi is not None,
            "witness": None if phi is None else {
                "x": str(phi[0]), "y": str(phi[1]), "word": str(phi[2]),
                "lhs": str(phi[3]), "rhs": str(phi[4])}},
        "psi_not_coalgebraic": {
            "witness_found": psi_w is not None,
            "witness": None if psi_w is None else {
                "word": str(psi_w[0]), "lhs": str(psi_w[1]), "rhs": str(psi_w[2])}},
        "gl_associative": check_gl_associative(dmax),
        "gl_matches_pairing": [check_gl_matches_pairing(dmax, m) for m in ("plain", "symmetry")],
        "double_dual": [{"degree": n, "pass": check_double_dual(n)} for n in range(dmax + 1)],
    }
