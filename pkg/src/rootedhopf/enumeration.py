"""Counting equivalence classes of rooted trees by weight.

A tree of weight ``n + 1`` is a root plus a multiset of subtrees whose
weights sum to ``n``.  Choosing ``lam_i`` subtrees of weight ``i`` from the
``a(i)`` available classes can be done in ``multichoose(a(i), lam_i)``
ways, which gives the recurrence evaluated by :func:`count_trees`.

:func:`count_branch_trees` restricts the vertex fertility.  Two readings of
the fertility constraint are available:

``"corrected"``
    the root has at most ``r`` children, i.e. ``sum(lam_i) <= r``, and the
    subtrees are themselves counted with the same bound;
``"paper-literal"``
    at most ``r`` distinct subtree weights occur, ``#{i : lam_i != 0} <= r``.

Only the corrected reading agrees with brute-force enumeration (already at
``r = 1, n = 3``); :func:`first_divergence` locates the first disagreement.
"""

from __future__ import annotations

import math
import threading
from collections.abc import Iterator

from rootedhopf.errors import DomainError, ResourceBoundError
from rootedhopf.trees import generate_trees, max_fertility

__all__ = [
    "MODES",
    "ORACLE_BOUND",
    "multichoose",
    "partitions",
    "count_trees",
    "count_branch_trees",
    "oracle_count",
    "oracle_count_branch",
    "first_divergence",
    "count_table",
]

MODES = ("corrected", "paper-literal")
ORACLE_BOUND = 14


def multichoose(a: int, lam: int) -> int:
    """Number of multisets of size ``lam`` drawn from ``a`` types."""
    if a < 0 or lam < 0:
        raise DomainError("multichoose needs non-negative arguments")
    if lam == 0:
        return 1
    return math.comb(a + lam - 1, lam)


def partitions(n: int) -> Iterator[dict[int, int]]:
    """Solutions of ``1*lam_1 + 2*lam_2 + ... + n*lam_n = n``.

    Each solution is a ``{part: multiplicity}`` dict with the largest part
    first.  Solutions come in lexicographic order of their non-increasing
    part sequences, so ``partitions(2)`` yields ``{1: 2}`` then ``{2: 1}``.
    """
    if n < 0:
        raise DomainError("cannot partition a negative integer")

    def rec(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for p in range(1, min(rest, cap) + 1):
            for tail in rec(rest - p, p):
                yield (p,) + tail

    for parts in rec(n, n):
        lam: dict[int, int] = {}
        for p in parts:
            lam[p] = lam.get(p, 0) + 1
        yield lam


class _Memo:
    """Bottom-up table of the recurrence, shared between threads."""

    def __init__(self, admissible):
        self.values = [0, 1]
        self.admissible = admissible
        self.lock = threading.Lock()

    def get(self, n: int) -> int:
        with self.lock:
            while len(self.values) <= n:
                m = len(self.values) - 1  # computing a(m + 1)
                total = 0
                for lam in partitions(m):
                    if not self.admissible(lam):
                        continue
                    term = 1
                    for i, k in lam.items():
                        term *= multichoose(self.values[i], k)
                        if term == 0:
                            break
                    total += term
                self.values.append(total)
            return self.values[n]


_plain = _Memo(lambda lam: True)
_branch: dict[tuple[int, str], _Memo] = {}
_branch_lock = threading.Lock()


def count_trees(n: int) -> int:
    """Number of equivalence classes of rooted trees of weight ``n``."""
    if n < 1:
        raise DomainError("weight must be >= 1")
    return _plain.get(n)


def _branch_memo(r: int, mode: str) -> _Memo:
    with _branch_lock:
        memo = _branch.get((r, mode))
        if memo is None:
            if mode == "corrected":
                memo = _Memo(lambda lam: sum(lam.values()) <= r)
            else:
                memo = _Memo(lambda lam: len(lam) <= r)
            _branch[(r, mode)] = memo
        return memo


def count_branch_trees(r: int, n: int, mode: str = "corrected") -> int:
    """Number of classes of weight ``n`` with a fertility bound ``r``."""
    if r < 1 or n < 1:
        raise DomainError("r and n must both be >= 1")
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}; expected one of {MODES}")
    return _branch_memo(r, mode).get(n)


def _check_bound(n: int, bound: int) -> None:
    if n > bound:
        raise ResourceBoundError(f"oracle weight {n} exceeds bound {bound}")


def oracle_count(n: int, bound: int = ORACLE_BOUND) -> int:
    """Brute-force count: the number of generated canonical trees."""
    _check_bound(n, bound)
    return len(generate_trees(n))


def oracle_count_branch(r: int, n: int, bound: int = ORACLE_BOUND) -> int:
    _check_bound(n, bound)
    return sum(1 for t in generate_trees(n) if max_fertility(t) <= r)


def first_divergence(rmax: int, nmax: int, mode: str = "paper-literal"):
    """First ``(r, n)`` (r-major order) where ``mode`` disagrees with the oracle."""
    for r in range(1, rmax + 1):
        for n in range(1, nmax + 1):
            got = count_branch_trees(r, n, mode)
            want = oracle_count_branch(r, n)
            if got != want:
                return {"r": r, "n": n, "mode": mode, "value": str(got),
                        "oracle": str(want)}
    return None


def count_table(nmax: int, r: int | None = None, mode: str = "corrected",
                verify: bool = False) -> list[dict]:
    """Rows of the count table as JSON-ready dicts."""
    rows = []
    for n in range(1, nmax + 1):
        if r is None:
            row = {"n": n, "a": str(count_trees(n))}
            if verify:
                oracle = oracle_count(n)
                row["oracle"] = str(oracle)
                row["match"] = int(row["a"]) == oracle
        else:
            row = {"n": n, "r": r, "mode": mode,
                   "a": str(count_branch_trees(r, n, mode))}
            if verify or mode == "paper-literal":
                oracle = oracle_count_branch(r, n)
                row["oracle"] = str(oracle)
                row["match"] = int(row["a"]) == oracle
        rows.append(row)
    return rows
