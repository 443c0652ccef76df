"""Finite-dimensional modules given by families of endomorphisms.

A left module over the tree algebra is the same thing as a family of
pairwise commuting matrices ``f_t``, one per tree; a forest acts by the
product of its trees' matrices.  Over the free algebra on generators
(the word algebra) any family works and words act by composition.
Generators absent from a family act as zero.
"""

from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from fractions import Fraction

from rootedhopf.errors import DimensionMismatch, NotCommutingError
from rootedhopf.hopf import as_helem
from rootedhopf.linalg import QMatrix
from rootedhopf.trees import Tree, canonicalize

__all__ = [
    "EndoFamily",
    "WordFamily",
    "check_commuting",
    "act_polynomial",
    "act_word",
    "is_module_morphism",
    "load_family",
]


class _Family:
    def __init__(self, gens: Mapping, dim: int | None = None):
        mats = {self._label(k): m if isinstance(m, QMatrix) else QMatrix(m)
                for k, m in gens.items()}
        if dim is None:
            if not mats:
                raise DimensionMismatch("empty family needs an explicit dimension")
            dim = next(iter(mats.values())).nrows
        for k, m in mats.items():
            if m.shape != (dim, dim):
                raise DimensionMismatch(f"generator {k} has shape {m.shape}, expected {(dim, dim)}")
        self.dim = dim
        self.gens = mats

    @staticmethod
    def _label(k):
        return k

    def matrix(self, label) -> QMatrix:
        m = self.gens.get(self._label(label))
        return m if m is not None else QMatrix.zeros(self.dim, self.dim)


class EndoFamily(_Family):
    """Matrices indexed by trees; the commuting test runs once at construction."""

    def __init__(self, gens: Mapping, dim: int | None = None):
        super().__init__(gens, dim)
        self.commute_witness = _first_noncommuting(self.gens)

    @staticmethod
    def _label(k):
        return canonicalize(k)

    @property
    def commuting(self) -> bool:
        return self.commute_witness is None


class WordFamily(_Family):
    """Matrices indexed by arbitrary hashable labels (free generators)."""


def _first_noncommuting(gens: Mapping):
    keys = sorted(gens, key=lambda k: k.key if isinstance(k, Tree) else (0, str(k)))
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            comm = gens[a] @ gens[b] - gens[b] @ gens[a]
            if not comm.is_zero():
                return (a, b, comm)
    return None


def check_commuting(family: EndoFamily | Mapping):
    """``(True, None)`` or ``(False, (t, t', f_t f_t' - f_t' f_t))``."""
    if not isinstance(family, EndoFamily):
        family = EndoFamily(family)
    w = family.commute_witness
    return (w is None, w)


def _vec(v, dim: int) -> list[Fraction]:
    v = [Fraction(x) for x in v]
    if len(v) != dim:
        raise DimensionMismatch(f"vector of length {len(v)} for a {dim}-dimensional module")
    return v


def act_polynomial(family: EndoFamily, x, v: Sequence) -> list[Fraction]:
    """Action of an element of the tree algebra on ``v``."""
    if not family.commuting:
        a, b, _ = family.commute_witness
        raise NotCommutingError(f"generators {a} and {b} do not commute")
    v = _vec(v, family.dim)
    out = [Fraction(0)] * family.dim
    for forest, c in as_helem(x).terms.items():
        w = v
        for t in reversed(forest.trees):
            w = family.matrix(t) @ w
        out = [o + c * y for o, y in zip(out, w)]
    return out


def act_word(family: WordFamily, word: Sequence, v: Sequence) -> list[Fraction]:
    """``f_{w1} f_{w2} ... f_{wk} (v)``: the last letter acts first."""
    w = _vec(v, family.dim)
    for letter in reversed(list(word)):
        w = family.matrix(letter) @ w
    return w


def is_module_morphism(src: _Family, dst: _Family, h) -> bool:
    """Whether ``h f_t = f'_t h`` for every generator listed in either family."""
    h = h if isinstance(h, QMatrix) else QMatrix(h)
    if h.shape != (dst.dim, src.dim):
        raise DimensionMismatch(f"morphism shape {h.shape} does not map {src.dim} -> {dst.dim}")
    labels = set(src.gens) | set(dst.gens)
    return all(h @ src.matrix(t) == dst.matrix(t) @ h for t in labels)


def load_family(data, kind: str = "tree") -> EndoFamily | WordFamily:
    """Read ``{"dim": d, "gens": {label: [[rat, ...], ...]}}`` (dict or JSON text)."""
    if isinstance(data, str):
        data = json.loads(data)
    gens = {k: [[Fraction(x) for x in row] for row in m] for k, m in data["gens"].items()}
    cls = EndoFamily if kind == "tree" else WordFamily
    return cls(gens, data.get("dim"))
