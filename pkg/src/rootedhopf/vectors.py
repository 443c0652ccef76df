"""Finitely supported rational linear combinations over hashable keys."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction
from numbers import Rational

__all__ = ["LinComb", "format_coeff"]


def format_coeff(c: Fraction, body: str | None) -> str:
    """Render ``c * body``; ``body=None`` means the unit."""
    if body is None:
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


class LinComb:
    """Base class: a dict from keys to nonzero :class:`Fraction` coefficients.

    Subclasses fix the key type and add the product that makes sense for it.
    Addition, subtraction and scalar multiplication return the subclass.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        d: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                if c:
                    d[k] = d.get(k, 0) + Fraction(c)
            d = {k: c for k, c in d.items() if c}
        self.terms: dict = d

    @classmethod
    def _raw(cls, d: dict):
        """Wrap a dict already free of zero coefficients."""
        obj = cls.__new__(cls)
        obj.terms = d
        return obj

    def __iter__(self):
        return iter(self.terms.items())

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def __getitem__(self, key) -> Fraction:
        return self.coefficient(key)

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = dict(self.terms)
        for k, c in other.terms.items():
            s = d.get(k, 0) + c
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        return type(self)._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return type(self)._raw({})
        return type(self)._raw({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, type(self)) or isinstance(self, type(other)):
            return self.terms == other.terms
        if isinstance(other, (int, Rational)):
            other = self._coerce(other)
            if other is NotImplemented:
                return False
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))
