"""Concrete graded Hopf algebras on the forest basis, and their graded duals.

Two models share the basis of forests:

* :class:`ConnesKreimer` -- commutative product (disjoint union), coproduct
  by admissible cuts;
* :class:`GrossmanLarson` -- grafting product, cocommutative coproduct
  splitting a forest into two sub-multisets (trees are primitive).

The graded dual of a model has basis ``delta_F`` (dual to forests).  Its
structure constants are read off the model's own: the product of
``delta_G`` and ``delta_K`` collects the coefficient of ``G (x) K`` in every
coproduct, and the coproduct of ``delta_F`` collects the coefficient of
``F`` in every product ``G K``.  Tables are built once per degree.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian

from rootedhopf import hopf
from rootedhopf.trees import EMPTY_FOREST, Forest, attach_many, generate_forests

__all__ = [
    "GradedHopfModel",
    "ConnesKreimer",
    "GrossmanLarson",
    "CK",
    "GL",
    "gl_product_forests",
    "gl_coproduct_forest",
    "gl_antipode_forest",
]


def _accumulate(d: dict, k, c) -> None:
    v = d.get(k, 0) + c
    if v:
        d[k] = v
    else:
        d.pop(k, None)


class GradedHopfModel:
    """A connected graded Hopf algebra with basis ``generate_forests(n)``."""

    name = "abstract"

    def __init__(self):
        self._lock = threading.Lock()
        self._dual_mul_tables: dict[int, dict] = {}
        self._dual_comul_tables: dict[int, dict] = {}

    # --- structure on the forest basis
    def basis(self, n: int) -> tuple[Forest, ...]:
        return generate_forests(n)

    def mul(self, f: Forest, g: Forest) -> dict:
        raise NotImplementedError

    def comul(self, f: Forest) -> dict:
        raise NotImplementedError

    def antipode(self, f: Forest) -> dict:
        raise NotImplementedError

    def counit(self, f: Forest) -> Fraction:
        return Fraction(int(f.is_unit))

    # --- graded dual, basis delta_F
    def _dual_mul_table(self, n: int) -> dict:
        with self._lock:
            table = self._dual_mul_tables.get(n)
            if table is None:
                table = {}
                for f in self.basis(n):
                    for (g, k), c in self.comul(f).items():
                        table.setdefault((g, k), {})[f] = c
                self._dual_mul_tables[n] = table
            return table

    def dual_mul(self, g: Forest, k: Forest) -> dict:
        """``delta_g * delta_k`` as ``{F: coefficient}``."""
        return self._dual_mul_table(g.weight + k.weight).get((g, k), {})

    def _dual_comul_table(self, n: int) -> dict:
        with self._lock:
            table = self._dual_comul_tables.get(n)
            if table is None:
                table = {}
                for p in range(n + 1):
                    for g in self.basis(p):
                        for k in self.basis(n - p):
                            for f, c in self.mul(g, k).items():
                                table.setdefault(f, {})[(g, k)] = c
                self._dual_comul_tables[n] = table
            return table

    def dual_comul(self, f: Forest) -> dict:
        """Coproduct of ``delta_f`` in the graded dual, ``{(G, K): coefficient}``."""
        return self._dual_comul_table(f.weight).get(f, {})

    def dual_counit(self, f: Forest) -> Fraction:
        return Fraction(int(f.is_unit))

    # --- linear extensions on dicts
    def mul_lin(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for f, a in x.items():
            for g, b in y.items():
                for k, c in self.mul(f, g).items():
                    _accumulate(out, k, a * b * c)
        return out

    def dual_mul_lin(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for f, a in x.items():
            for g, b in y.items():
                for k, c in self.dual_mul(f, g).items():
                    _accumulate(out, k, a * b * c)
        return out


class ConnesKreimer(GradedHopfModel):
    name = "ck"

    def mul(self, f, g):
        return {f * g: Fraction(1)}

    def comul(self, f):
        return hopf._forest_coproduct(f)

    def antipode(self, f):
        return hopf._forest_antipode(f).terms


@lru_cache(maxsize=None)
def gl_product_forests(f: Forest, g: Forest) -> dict:
    """Grafting product: each tree of ``f`` either stays a root or grafts onto a node of ``g``."""
    out: dict = {}
    slots = range(-1, g.weight)  # -1 keeps the tree beside g
    for targets in cartesian(slots, repeat=len(f.trees)):
        stay = []
        assignment: dict[int, list] = {}
        for t, v in zip(f.trees, targets):
            if v < 0:
                stay.append(t)
            else:
                assignment.setdefault(v, []).append(t)
        res = attach_many(g, assignment) if assignment else g
        k = Forest(res.trees + tuple(stay))
        out[k] = out.get(k, 0) + 1
    return {k: Fraction(c) for k, c in out.items()}


@lru_cache(maxsize=None)
def gl_coproduct_forest(f: Forest) -> dict:
    """Split the multiset of trees in every way; trees are primitive."""
    out: dict = {}
    ts = f.trees
    for mask in range(1 << len(ts)):
        left = Forest(t for i, t in enumerate(ts) if mask >> i & 1)
        right = Forest(t for i, t in enumerate(ts) if not mask >> i & 1)
        out[(left, right)] = out.get((left, right), 0) + 1
    return {k: Fraction(c) for k, c in out.items()}


@lru_cache(maxsize=None)
def gl_antipode_forest(f: Forest) -> dict:
    if f.is_unit:
        return {EMPTY_FOREST: Fraction(1)}
    out: dict = {f: Fraction(-1)}
    for (left, right), c in gl_coproduct_forest(f).items():
        if left.is_unit or right.is_unit:
            continue
        for g, a in gl_antipode_forest(left).items():
            for k, b in gl_product_forests(g, right).items():
                _accumulate(out, k, -c * a * b)
    return out


class GrossmanLarson(GradedHopfModel):
    name = "gl"

    def mul(self, f, g):
        return gl_product_forests(f, g)

    def comul(self, f):
        return gl_coproduct_forest(f)

    def antipode(self, f):
        return gl_antipode_forest(f)


CK = ConnesKreimer()
GL = GrossmanLarson()
