"""Degree-by-degree structure of the Hopf algebra of rooted trees.

Primitive elements are computed as the exact kernel of the reduced
coproduct on each graded piece, either in the whole algebra (``"full"``)
or inside the subalgebra generated by ladders (``"ladder"``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product as cartesian

from rootedhopf import linalg
from rootedhopf.errors import DomainError
from rootedhopf.hopf import (
    HElem,
    as_helem,
    coordinates,
    counit,
    from_coordinates,
    graft_top,
    reduced_coproduct,
)
from rootedhopf.trees import Forest, generate_forests, ladder

__all__ = [
    "VARIANTS",
    "NESTINGS",
    "GradedBasis",
    "ladder_forests",
    "primitive_basis",
    "top_word",
    "top_monomial_basis",
    "subalgebra_degree_span",
    "primitively_generated_report",
    "strictly_graded_check",
    "integral_injectivity",
    "integrals_report",
    "power_independence",
    "compositions",
]

VARIANTS = ("full", "ladder")
NESTINGS = ("right", "left")


@dataclass
class GradedBasis:
    """Homogeneous elements of degree ``degree`` with forest-basis coordinates."""

    degree: int
    elements: list[HElem]
    coords: list[list[Fraction]] = field(default_factory=list)
    labels: list = field(default_factory=list)
    is_basis: bool = False

    @property
    def dim(self) -> int:
        return linalg.rank(self.coords) if self.coords else 0

    def __len__(self):
        return len(self.elements)


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise DomainError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def ladder_forests(n: int) -> list[Forest]:
    """Monomials in ladders of total weight ``n``, in forest order."""
    return [f for f in generate_forests(n) if all(t == ladder(t.weight) for t in f.trees)]


def _ambient(n: int, variant: str) -> list[Forest]:
    return list(generate_forests(n)) if variant == "full" else ladder_forests(n)


def _normalize(vec: list[Fraction], pivot_index: int | None = None) -> list[Fraction]:
    if pivot_index is None:
        pivot_index = next(i for i, x in enumerate(vec) if x != 0)
    c = vec[pivot_index]
    return [x / c for x in vec]


_prim_cache: dict[tuple[int, str], GradedBasis] = {}


def primitive_basis(n: int, variant: str = "full") -> GradedBasis:
    """Kernel basis of the reduced coproduct on the degree-``n`` piece.

    ``full`` vectors are scaled so their first nonzero forest coordinate is
    1; ``ladder`` vectors so the coefficient of the ladder ``l_n`` is 1.
    """
    _check_variant(variant)
    if n < 1:
        raise DomainError("primitive degree must be >= 1")
    key = (n, variant)
    if key in _prim_cache:
        return _prim_cache[key]
    amb = _ambient(n, variant)
    images = [reduced_coproduct(as_helem(f)) for f in amb]
    rows_keys = sorted({k for im in images for k in im.terms},
                       key=lambda k: (k[0].key, k[1].key))
    matrix = [[im.coefficient(k) for im in images] for k in rows_keys]
    if matrix:
        kernel = linalg.kernel_basis(matrix)
    else:
        kernel = [[Fraction(int(i == j)) for j in range(len(amb))] for i in range(len(amb))]
    full_forests = list(generate_forests(n))
    elements, coords = [], []
    ln = Forest((ladder(n),))
    for v in kernel:
        if variant == "ladder":
            v = _normalize(v, amb.index(ln))
        else:
            v = _normalize(v)
        x = HElem(zip(amb, v))
        elements.append(x)
        coords.append([x.coefficient(f) for f in full_forests])
    gb = GradedBasis(n, elements, coords, labels=[(n, i) for i in range(len(elements))],
                     is_basis=True)
    _prim_cache[key] = gb
    return gb


def compositions(n: int):
    """Ordered tuples of positive integers summing to ``n``."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def top_word(letters: list[HElem], nesting: str = "right") -> HElem:
    """Combine elements with the grafting operator, right- or left-nested."""
    if nesting not in NESTINGS:
        raise DomainError(f"unknown nesting {nesting!r}")
    if nesting == "right":
        acc = letters[-1]
        for x in reversed(letters[:-1]):
            acc = graft_top(x, acc)
    else:
        acc = letters[0]
        for x in letters[1:]:
            acc = graft_top(acc, x)
    return acc


def top_monomial_basis(n: int, nesting: str = "right", variant: str = "full") -> GradedBasis:
    """All grafting words in primitive basis elements with degrees summing to ``n``.

    Words are indexed by (degrees, indices) labels; ``is_basis`` records
    whether they are independent and span the degree-``n`` piece.
    """
    if n < 1:
        raise DomainError("degree must be >= 1")
    elements, labels = [], []
    for comp in compositions(n):
        bases = [primitive_basis(j, variant).elements for j in comp]
        for idx in cartesian(*(range(len(b)) for b in bases)):
            letters = [bases[k][i] for k, i in enumerate(idx)]
            elements.append(top_word(letters, nesting))
            labels.append((comp, idx))
    coords = [coordinates(x, n) for x in elements]
    target = len(_ambient(n, variant))
    rk = linalg.rank(coords) if coords else 0
    return GradedBasis(n, elements, coords, labels,
                       is_basis=(rk == len(elements) == target))


def subalgebra_degree_span(generators: list, n: int) -> GradedBasis:
    """Span in degree ``n`` of all products of the (homogeneous) generators."""
    gens = [as_helem(g) for g in generators]
    for g in gens:
        if not g or not g.is_homogeneous() or g.degree < 1:
            raise DomainError("generators must be nonzero, homogeneous, of positive degree")
    products: list[HElem] = []
    idx = list(range(len(gens)))
    for k in range(1, n + 1):
        for combo in combinations_with_replacement(idx, k):
            if sum(gens[i].degree for i in combo) != n:
                continue
            x = HElem.one()
            for i in combo:
                x = x * gens[i]
            products.append(x)
    coords = [coordinates(x, n) for x in products]
    if not coords:
        return GradedBasis(n, [], [])
    red, pivots = linalg.rref(coords)
    basis_coords = red[: len(pivots)]
    return GradedBasis(n, [from_coordinates(c, n) for c in basis_coords], basis_coords,
                       is_basis=True)


def primitively_generated_report(variant: str = "full", nmax: int = 5) -> list[dict]:
    """Per degree: dimension generated by primitives of degree <= n vs total dimension."""
    _check_variant(variant)
    rows = []
    for n in range(1, nmax + 1):
        gens = [p for j in range(1, n + 1) for p in primitive_basis(j, variant).elements]
        span = subalgebra_degree_span(gens, n)
        total = len(_ambient(n, variant))
        g = span.dim
        rows.append({"degree": n, "variant": variant, "dim_total": total,
                     "dim_generated": g, "defect": total - g})
    return rows


def strictly_graded_check(nmax: int, variant: str = "full") -> tuple[bool, HElem | None]:
    """True iff every primitive up to degree ``nmax`` lies in degree 1.

    On failure the first primitive of degree >= 2 is returned as witness.
    """
    for n in range(2, nmax + 1):
        prims = primitive_basis(n, variant).elements
        if prims:
            return False, prims[0]
    return True, None


def integral_injectivity(n: int) -> bool:
    """Whether multiplication by the one-vertex tree is injective on degree ``n``."""
    if n < 0:
        raise DomainError("degree must be >= 0")
    l1 = as_helem(ladder(1))
    src = generate_forests(n)
    cols = [coordinates(as_helem(f) * l1, n + 1) for f in src]
    return linalg.rank(cols) == len(src)


def integrals_report(nmax: int) -> dict:
    rows = []
    l1 = as_helem(ladder(1))
    for n in range(nmax + 1):
        src = generate_forests(n)
        cols = [coordinates(as_helem(f) * l1, n + 1) for f in src]
        rk = linalg.rank(cols)
        rows.append({"degree": n, "dim": len(src), "rank": rk, "injective": rk == len(src)})
    return {"report": "integrals", "nmax": nmax, "degrees": rows,
            "all_injective": all(r["injective"] for r in rows)}


def power_independence(x, kmax: int) -> bool:
    """Whether ``x, x**2, ..., x**kmax`` are linearly independent (``x`` primitive)."""
    x = as_helem(x)
    if not x:
        raise DomainError("x must be nonzero")
    if counit(x) != 0:
        raise DomainError("x must have zero counit")
    if reduced_coproduct(x):
        raise DomainError("x is not primitive")
    powers = []
    p = HElem.one()
    for _ in range(kmax):
        p = p * x
        powers.append(p)
    support = sorted({f for q in powers for f in q.terms}, key=lambda f: f.key)
    rows = [[q.coefficient(f) for f in support] for q in powers]
    return linalg.rank(rows) == kmax

