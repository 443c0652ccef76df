"""The Hopf algebra of rooted trees.

As an algebra it is the polynomial ring over Q whose variables are tree
classes; forests are its monomials and the empty forest is 1.  The
coproduct of a tree sums over admissible cuts (sets of edges meeting every
root-to-leaf path at most once)::

    D(t) = t (x) 1 + sum_c P_c(t) (x) R_c(t)

with the pruned forest ``P_c`` on the left and the trunk ``R_c`` (the part
still containing the root) on the right; the empty cut contributes
``1 (x) t``.  The same coproduct is also computed from the recursion
``D(B+(F)) = B+(F) (x) 1 + (id (x) B+) D(F)`` as an independent check.
"""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from rootedhopf.errors import DomainError
from rootedhopf.trees import EMPTY_FOREST, Forest, Tree, attach, generate_forests
from rootedhopf.vectors import LinComb, format_coeff

__all__ = [
    "HElem",
    "Tensor",
    "forest_text",
    "as_helem",
    "product",
    "b_plus",
    "b_plus_linear",
    "admissible_cuts",
    "coproduct_cuts",
    "coproduct_bplus",
    "coproduct",
    "iterated_coproduct",
    "counit",
    "antipode",
    "graft_top",
    "graded_component",
    "degree",
    "reduced_coproduct",
    "coordinates",
    "from_coordinates",
    "check_hopf_axioms",
    "check_coproduct_oracle",
]


def forest_text(f: Forest) -> str:
    """Algebraic rendering of a forest: trees joined by ``*``, unit as ``1``."""
    if f.is_unit:
        return "1"
    return "*".join(t.canon for t in f.trees)


class HElem(LinComb):
    """An element of the Hopf algebra: a rational combination of forests."""

    __slots__ = ()

    @classmethod
    def one(cls) -> HElem:
        return cls._raw({EMPTY_FOREST: Fraction(1)})

    @classmethod
    def scalar(cls, c) -> HElem:
        return cls({EMPTY_FOREST: c})

    @classmethod
    def of(cls, x) -> HElem:
        return as_helem(x)

    def _coerce(self, other):
        if isinstance(other, HElem):
            return other
        if isinstance(other, (Tree, Forest, int, Rational)):
            return as_helem(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> HElem:
        out = HElem.one()
        for _ in range(k):
            out = out * self
        return out

    @property
    def degree(self) -> int:
        return degree(self)

    def is_homogeneous(self) -> bool:
        return len({f.weight for f in self.terms}) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0].weight, forest_text(kv[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(format_coeff(c, None if f.is_unit else forest_text(f))
                          for f, c in self.sorted_terms())

    def __repr__(self):
        return f"HElem({str(self)!r})"


def as_helem(x) -> HElem:
    if isinstance(x, HElem):
        return x
    if isinstance(x, Tree):
        return HElem._raw({Forest((x,)): Fraction(1)})
    if isinstance(x, Forest):
        return HElem._raw({x: Fraction(1)})
    if isinstance(x, (int, Rational)):
        return HElem.scalar(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as an element of H")


class Tensor(LinComb):
    """An element of a tensor power of H, keyed by tuples of forests."""

    __slots__ = ()

    @classmethod
    def pure(cls, *legs, coeff=1) -> Tensor:
        keys = tuple(_to_forest(x) for x in legs)
        return cls({keys: coeff})

    def _coerce(self, other):
        if isinstance(other, Tensor):
            return other
        if isinstance(other, (int, Rational)) and self.terms:
            k = len(next(iter(self.terms)))
            return Tensor({(EMPTY_FOREST,) * k: other})
        return NotImplemented

    @property
    def arity(self) -> int | None:
        return len(next(iter(self.terms))) if self.terms else None

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if isinstance(other, HElem) and all(f.is_unit for f in other.terms):
            return self.scale(other.coefficient(EMPTY_FOREST))
        if not isinstance(other, Tensor):
            return NotImplemented
        d: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                if len(k1) != len(k2):
                    raise DomainError("cannot multiply tensors of different arity")
                k = tuple(a * b for a, b in zip(k1, k2))
                d[k] = d.get(k, 0) + c1 * c2
        return Tensor(d)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if isinstance(other, HElem) and all(f.is_unit for f in other.terms):
            return self.scale(other.coefficient(EMPTY_FOREST))
        return NotImplemented

    def leg_degrees(self):
        return {tuple(f.weight for f in k) for k in self.terms}

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda kv: (sum(f.weight for f in kv[0]),
                                      tuple(forest_text(f) for f in kv[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(format_coeff(c, "⊗".join(forest_text(f) for f in k))
                          for k, c in self.sorted_terms())

    def __repr__(self):
        return f"Tensor({str(self)!r})"


def _to_forest(x) -> Forest:
    if isinstance(x, Forest):
        return x
    if isinstance(x, Tree):
        return Forest((x,))
    if isinstance(x, HElem) and len(x.terms) == 1:
        ((f, c),) = x.terms.items()
        if c == 1:
            return f
    if x == 1:
        return EMPTY_FOREST
    raise TypeError(f"cannot interpret {x!r} as a forest")


def product(x, y) -> HElem:
    x, y = as_helem(x), as_helem(y)
    d: dict = {}
    for f, a in x.terms.items():
        for g, b in y.terms.items():
            k = f * g
            d[k] = d.get(k, 0) + a * b
    return HElem(d)


def b_plus(f: Forest | Tree) -> Tree:
    """Graft the trees of a forest onto a new common root."""
    return Tree(_to_forest(f).trees)


def b_plus_linear(x) -> HElem:
    x = as_helem(x)
    return HElem((Forest((b_plus(f),)), c) for f, c in x.terms.items())


@lru_cache(maxsize=None)
def admissible_cuts(t: Tree) -> tuple[tuple[Forest, Tree], ...]:
    """All admissible cuts of ``t`` (including the empty cut) as (pruned, trunk).

    Enumerates edge subsets directly: edge ``v`` is the edge entering the
    preorder vertex ``v``; a subset is admissible iff no cut vertex is an
    ancestor of another.
    """
    nodes = list(t.preorder())
    parents = t.parent_array()
    w = len(nodes)
    anc = [0] * w
    kids: list[list[int]] = [[] for _ in range(w)]
    for v in range(1, w):
        p = parents[v]
        anc[v] = anc[p] | (1 << p)
        kids[p].append(v)
    out = []
    for mask in range(1 << (w - 1)):
        cut = mask << 1
        chosen = [v for v in range(1, w) if cut >> v & 1]
        if any(anc[v] & cut for v in chosen):
            continue

        def trunk(v: int) -> Tree:
            return Tree(trunk(c) for c in kids[v] if not cut >> c & 1)

        out.append((Forest(nodes[v] for v in chosen), trunk(0)))
    return tuple(out)


@lru_cache(maxsize=None)
def _tree_coproduct(t: Tree) -> dict:
    d: dict = {(Forest((t,)), EMPTY_FOREST): Fraction(1)}
    for pruned, trunk in admissible_cuts(t):
        k = (pruned, Forest((trunk,)))
        d[k] = d.get(k, 0) + 1
    return d


def _mul_tensor_dicts(a: dict, b: dict) -> dict:
    d: dict = {}
    for (l1, r1), c1 in a.items():
        for (l2, r2), c2 in b.items():
            k = (l1 * l2, r1 * r2)
            d[k] = d.get(k, 0) + c1 * c2
    return d


@lru_cache(maxsize=None)
def _forest_coproduct(f: Forest) -> dict:
    d: dict = {(EMPTY_FOREST, EMPTY_FOREST): Fraction(1)}
    for t in f.trees:
        d = _mul_tensor_dicts(d, _tree_coproduct(t))
    return d


def coproduct_cuts(t: Tree) -> Tensor:
    """Admissible-cut coproduct of a single tree."""
    return Tensor(_tree_coproduct(t))


@lru_cache(maxsize=None)
def _bplus_forest_coproduct(f: Forest) -> dict:
    d: dict = {(EMPTY_FOREST, EMPTY_FOREST): Fraction(1)}
    for t in f.trees:
        d = _mul_tensor_dicts(d, _bplus_tree_coproduct(t))
    return d


@lru_cache(maxsize=None)
def _bplus_tree_coproduct(t: Tree) -> dict:
    inner = Forest(t.children)
    d: dict = {(Forest((t,)), EMPTY_FOREST): Fraction(1)}
    for (left, right), c in _bplus_forest_coproduct(inner).items():
        k = (left, Forest((b_plus(right),)))
        d[k] = d.get(k, 0) + c
    return d


def coproduct_bplus(t: Tree) -> Tensor:
    """Coproduct of a tree from the B+ recursion, independent of cut enumeration."""
    return Tensor(_bplus_tree_coproduct(t))


def coproduct(x) -> Tensor:
    """Coproduct, extended multiplicatively to forests and linearly to H."""
    x = as_helem(x)
    d: dict = {}
    for f, c in x.terms.items():
        for k, v in _forest_coproduct(f).items():
            d[k] = d.get(k, 0) + c * v
    return Tensor(d)


def iterated_coproduct(x, k: int) -> Tensor:
    """``k``-fold iterated coproduct into ``k + 1`` legs (``k = 0`` is ``x`` itself)."""
    x = as_helem(x)
    cur = {(f,): c for f, c in x.terms.items()}
    for _ in range(k):
        nxt: dict = {}
        for key, c in cur.items():
            for (l, r), v in _forest_coproduct(key[-1]).items():
                kk = key[:-1] + (l, r)
                nxt[kk] = nxt.get(kk, 0) + c * v
        cur = nxt
    return Tensor(cur)


def counit(x) -> Fraction:
    return as_helem(x).coefficient(EMPTY_FOREST)


@lru_cache(maxsize=None)
def _tree_antipode(t: Tree) -> HElem:
    s = -as_helem(t)
    for pruned, trunk in admissible_cuts(t):
        if pruned.is_unit:
            continue
        s = s - _forest_antipode(pruned) * as_helem(trunk)
    return s


@lru_cache(maxsize=None)
def _forest_antipode(f: Forest) -> HElem:
    s = HElem.one()
    for t in f.trees:
        s = s * _tree_antipode(t)
    return s


def antipode(x) -> HElem:
    x = as_helem(x)
    out = HElem()
    for f, c in x.terms.items():
        out = out + _forest_antipode(f).scale(c)
    return out


def _graft_forests(m: Forest, n: Forest) -> HElem:
    if n.is_unit:
        return HElem()
    d: dict = {}
    for v in range(n.weight):
        k = attach(n, v, m)
        d[k] = d.get(k, 0) + 1
    return HElem(d).scale(Fraction(1, n.weight))


def graft_top(m, n) -> HElem:
    """``M T N``: the average over nodes of ``N`` of attaching ``M`` there; zero if ``N = 1``."""
    m, n = as_helem(m), as_helem(n)
    out = HElem()
    for f, a in m.terms.items():
        for g, b in n.terms.items():
            out = out + _graft_forests(f, g).scale(a * b)
    return out


def graded_component(x, n: int) -> HElem:
    x = as_helem(x)
    return HElem._raw({f: c for f, c in x.terms.items() if f.weight == n})


def degree(x) -> int:
    """Largest weight occurring in ``x`` (0 for the zero element)."""
    x = as_helem(x)
    return max((f.weight for f in x.terms), default=0)


def reduced_coproduct(x) -> Tensor:
    """``D(x) - x (x) 1 - 1 (x) x`` for counit-free ``x``."""
    x = as_helem(x)
    if counit(x) != 0:
        raise DomainError("reduced coproduct needs an element with zero counit")
    d = dict(coproduct(x).terms)
    for f, c in x.terms.items():
        for k in ((f, EMPTY_FOREST), (EMPTY_FOREST, f)):
            v = d.get(k, 0) - c
            if v:
                d[k] = v
            else:
                d.pop(k, None)
    return Tensor._raw(d)


def coordinates(x, n: int) -> list[Fraction]:
    """Coordinates of the degree-``n`` part of ``x`` in the forest basis."""
    x = as_helem(x)
    return [x.coefficient(f) for f in generate_forests(n)]


def from_coordinates(coords: Iterable, n: int) -> HElem:
    return HElem(zip(generate_forests(n), coords))


def _apply_legwise(t: Tensor, fns) -> Tensor:
    """Apply one linear map H -> H (or H -> tensor) per leg, concatenating legs."""
    out: dict = {}
    for key, c in t.terms.items():
        parts = [{(): Fraction(1)}]
        for f, fn in zip(key, fns):
            img = fn(f)
            nxt = []
            for acc in parts:
                for k, v in acc.items():
                    nxt.append({k + kk: v * vv for kk, vv in img.items()})
            parts = nxt
        for acc in parts:
            for k, v in acc.items():
                out[k] = out.get(k, 0) + c * v
    return Tensor(out)


def check_hopf_axioms(nmax: int) -> dict:
    """Coassociativity, counit, multiplicativity and antipode laws up to weight ``nmax``."""
    ident = lambda f: {(f,): Fraction(1)}
    delta = lambda f: _forest_coproduct(f)
    failures: dict[str, list[str]] = {
        "coassociativity": [], "counit": [], "multiplicativity": [], "antipode": []}
    forests = [f for n in range(nmax + 1) for f in generate_forests(n)]
    for f in forests:
        d = Tensor(_forest_coproduct(f))
        left = _apply_legwise(d, (delta, ident))
        right = _apply_legwise(d, (ident, delta))
        if left != right:
            failures["coassociativity"].append(str(f))
        x = as_helem(f)
        lc = HElem()
        rc = HElem()
        sl = HElem()
        sr = HElem()
        for (a, b), c in d.terms.items():
            if a.is_unit:
                lc = lc + as_helem(b).scale(c)
            if b.is_unit:
                rc = rc + as_helem(a).scale(c)
            sl = sl + (_forest_antipode(a) * as_helem(b)).scale(c)
            sr = sr + (as_helem(a) * _forest_antipode(b)).scale(c)
        if lc != x or rc != x:
            failures["counit"].append(str(f))
        unit_eps = HElem.scalar(counit(x))
        if sl != unit_eps or sr != unit_eps:
            failures["antipode"].append(str(f))
    for i, f in enumerate(forests):
        for g in forests[i:]:
            if f.weight + g.weight > nmax:
                continue
            if coproduct(f * g) != coproduct(f) * coproduct(g):
                failures["multiplicativity"].append(f"{f} , {g}")
    return {"nmax": nmax, "forests": len(forests),
            "laws": {k: {"pass": not v, "failures": v[:5]} for k, v in failures.items()},
            "pass": not any(failures.values())}


def check_coproduct_oracle(nmax: int) -> dict:
    """Compare cut-enumeration and B+-recursion coproducts on all trees up to ``nmax``."""
    from rootedhopf.trees import trees_up_to

    mismatches = [str(t) for t in trees_up_to(nmax) if coproduct_cuts(t) != coproduct_bplus(t)]
    return {"nmax": nmax, "trees": len(trees_up_to(nmax)), "mismatches": mismatches,
            "pass": not mismatches}
