"""Rooted trees and forests up to sibling permutation.

A :class:`Tree` is stored in canonical form: its children are sorted by
``(weight, canonical string)``.  Two rooted trees that differ only by
swapping subtrees hanging at the same height therefore produce the same
object, so equivalence is plain equality.

The canonical string is ``"(" + children strings + ")"``; a forest is
written ``t1.t2.t3`` with the trees in sorted order, and the empty forest
(the unit of the algebra) is ``"1"``.

Nodes of a tree or forest are addressed by their preorder index in the
canonical form, trees of a forest numbered one after another.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from functools import lru_cache

from rootedhopf.errors import DomainError, ParseError

__all__ = [
    "Tree",
    "Forest",
    "EMPTY_FOREST",
    "canonicalize",
    "equivalent",
    "parse_tree",
    "parse_forest",
    "canonical_string",
    "from_parent_array",
    "generate_trees",
    "generate_forests",
    "trees_up_to",
    "ladder",
    "max_fertility",
    "attach",
    "attach_many",
    "to_dot",
    "forest_to_dot",
]


class Tree:
    """Canonical representative of an equivalence class of rooted trees."""

    __slots__ = ("children", "weight", "canon", "key", "_hash")

    def __init__(self, children: Iterable[Tree] = ()):
        kids = tuple(sorted(children, key=_tree_key))
        self.children: tuple[Tree, ...] = kids
        self.weight: int = 1 + sum(c.weight for c in kids)
        self.canon: str = "(" + "".join(c.canon for c in kids) + ")"
        self.key = (self.weight, self.canon)
        self._hash = hash(self.canon)

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        return self.canon == other.canon

    def __lt__(self, other: Tree) -> bool:
        return self.key < other.key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Tree({self.canon!r})"

    def __str__(self):
        return self.canon

    @property
    def fertility(self) -> int:
        """Number of children of the root."""
        return len(self.children)

    def preorder(self) -> Iterator[Tree]:
        """Subtrees rooted at each vertex, in preorder."""
        stack = [self]
        while stack:
            t = stack.pop()
            yield t
            stack.extend(reversed(t.children))

    def parent_array(self) -> list[int]:
        """Preorder parent indices; the root's parent is -1."""
        parents: list[int] = []

        def walk(t: Tree, parent: int) -> None:
            me = len(parents)
            parents.append(parent)
            for c in t.children:
                walk(c, me)

        walk(self, -1)
        return parents


def _tree_key(t: Tree):
    return t.key


class Forest:
    """A multiset of trees: a monomial of the polynomial algebra on trees."""

    __slots__ = ("trees", "weight", "key", "_hash")

    def __init__(self, trees: Iterable[Tree] = ()):
        ts = tuple(sorted(trees, key=_tree_key))
        self.trees: tuple[Tree, ...] = ts
        self.weight: int = sum(t.weight for t in ts)
        self.key = (self.weight, tuple(t.key for t in ts))
        self._hash = hash(tuple(t.canon for t in ts))

    @classmethod
    def of(cls, *trees: Tree) -> Forest:
        return cls(trees)

    def __mul__(self, other: Forest) -> Forest:
        if not isinstance(other, Forest):
            return NotImplemented
        return Forest(self.trees + other.trees)

    def __eq__(self, other):
        if not isinstance(other, Forest):
            return NotImplemented
        return self.trees == other.trees

    def __lt__(self, other: Forest) -> bool:
        return self.key < other.key

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def __bool__(self):
        # the empty forest is the unit, not a "false" value
        return True

    @property
    def is_unit(self) -> bool:
        return not self.trees

    def __repr__(self):
        return f"Forest({str(self)!r})"

    def __str__(self):
        if not self.trees:
            return "1"
        return ".".join(t.canon for t in self.trees)


EMPTY_FOREST = Forest()


def canonical_string(x: Tree | Forest) -> str:
    return str(x)


def canonicalize(raw) -> Tree:
    """Canonical representative of a rooted tree given in any child order.

    ``raw`` may be a :class:`Tree`, a parenthesised string, or a nested
    sequence in which each vertex is the sequence of its children
    (``[]`` is a single vertex).
    """
    if isinstance(raw, Tree):
        return raw
    if isinstance(raw, str):
        return parse_tree(raw)
    if isinstance(raw, Sequence):
        return _canon_nested(raw)
    raise TypeError(f"cannot interpret {type(raw).__name__} as a rooted tree")


def _canon_nested(raw: Sequence) -> Tree:
    return Tree(canonicalize(c) for c in raw)


def equivalent(t1, t2) -> bool:
    """True iff the two rooted trees differ by sibling permutations only."""
    return canonicalize(t1) == canonicalize(t2)


def from_parent_array(parents: Sequence[int]) -> Tree:
    """Build a tree from a parent array (exactly one entry equal to -1)."""
    roots = [i for i, p in enumerate(parents) if p < 0]
    if len(roots) != 1:
        raise DomainError("parent array must have exactly one root")
    kids: dict[int, list[int]] = {i: [] for i in range(len(parents))}
    for i, p in enumerate(parents):
        if p >= 0:
            if p >= len(parents):
                raise DomainError(f"parent index {p} out of range")
            kids[p].append(i)

    seen = set()

    def build(v: int) -> Tree:
        if v in seen:
            raise DomainError("parent array contains a cycle")
        seen.add(v)
        return Tree(build(c) for c in kids[v])

    t = build(roots[0])
    if len(seen) != len(parents):
        raise DomainError("parent array is not connected")
    return t


def _parse_tree_at(s: str, i: int) -> tuple[Tree, int]:
    if i >= len(s):
        raise ParseError("unexpected end of input, expected '('", i)
    if s[i] != "(":
        raise ParseError(f"unexpected character {s[i]!r}, expected '('", i)
    # iterative to survive deep ladders
    stack: list[list[Tree]] = [[]]
    j = i + 1
    while True:
        if j >= len(s):
            raise ParseError("unbalanced parentheses", j)
        ch = s[j]
        if ch == "(":
            stack.append([])
        elif ch == ")":
            kids = stack.pop()
            t = Tree(kids)
            if not stack:
                return t, j + 1
            stack[-1].append(t)
        else:
            raise ParseError(f"unexpected character {ch!r}", j)
        j += 1


def parse_tree(s: str) -> Tree:
    """Parse a tree written in the parenthesised grammar ``tree := "(" tree* ")"``."""
    t, end = _parse_tree_at(s, 0)
    if end != len(s):
        raise ParseError(f"trailing character {s[end]!r}", end)
    return t


def parse_forest(s: str) -> Forest:
    """Parse ``"1"`` or ``tree ("." tree)*``."""
    if s == "1":
        return EMPTY_FOREST
    trees = []
    i = 0
    while True:
        t, i = _parse_tree_at(s, i)
        trees.append(t)
        if i == len(s):
            return Forest(trees)
        if s[i] != ".":
            raise ParseError(f"unexpected character {s[i]!r}, expected '.'", i)
        i += 1


def ladder(i: int) -> Tree:
    """The chain tree with ``i`` vertices."""
    if i < 1:
        raise DomainError("ladder weight must be >= 1")
    t = Tree()
    for _ in range(i - 1):
        t = Tree((t,))
    return t


def max_fertility(t: Tree) -> int:
    return max(len(v.children) for v in t.preorder())


@lru_cache(maxsize=None)
def generate_trees(n: int) -> tuple[Tree, ...]:
    """All canonical trees of weight ``n`` in ascending canonical order."""
    if n < 1:
        raise DomainError("tree weight must be >= 1")
    if n == 1:
        return (Tree(),)
    return tuple(sorted((Tree(f.trees) for f in generate_forests(n - 1)),
                        key=_tree_key))


def trees_up_to(n: int) -> list[Tree]:
    """All trees of weight 1..n, weight-major in canonical order."""
    return [t for w in range(1, n + 1) for t in generate_trees(w)]


@lru_cache(maxsize=None)
def generate_forests(n: int) -> tuple[Forest, ...]:
    """All forests of total weight ``n`` in ascending forest order.

    Forests are compared by total weight, then lexicographically on their
    sorted tree sequences.
    """
    if n < 0:
        raise DomainError("forest weight must be >= 0")
    if n == 0:
        return (EMPTY_FOREST,)
    pool = trees_up_to(n)
    out: list[Forest] = []

    def rec(remaining: int, start: int, acc: list[Tree]) -> None:
        if remaining == 0:
            out.append(Forest(acc))
            return
        for idx in range(start, len(pool)):
            t = pool[idx]
            if t.weight > remaining:
                break
            acc.append(t)
            rec(remaining - t.weight, idx, acc)
            acc.pop()

    rec(n, 0, [])
    out.sort(key=lambda f: f.key)
    return tuple(out)


def _attach_tree(t: Tree, v: int, graft: tuple[Tree, ...]) -> Tree:
    if v == 0:
        return Tree(t.children + graft)
    v -= 1
    kids = list(t.children)
    for i, c in enumerate(kids):
        if v < c.weight:
            kids[i] = _attach_tree(c, v, graft)
            break
        v -= c.weight
    return Tree(kids)


def attach(host: Forest | Tree, v: int, graft: Forest | Tree) -> Forest:
    """Attach every tree of ``graft`` by a new edge below node ``v`` of ``host``."""
    if isinstance(host, Tree):
        host = Forest((host,))
    if isinstance(graft, Tree):
        graft = Forest((graft,))
    if host.is_unit:
        raise DomainError("cannot attach to the empty forest")
    if not 0 <= v < host.weight:
        raise DomainError(f"node index {v} out of range for weight {host.weight}")
    if graft.is_unit:
        return host
    trees = list(host.trees)
    for i, t in enumerate(trees):
        if v < t.weight:
            trees[i] = _attach_tree(t, v, graft.trees)
            break
        v -= t.weight
    return Forest(trees)


def attach_many(host: Forest, assignment: dict[int, Sequence[Tree]]) -> Forest:
    """Attach several trees at once: ``assignment`` maps node index -> trees."""
    if host.is_unit:
        if assignment:
            raise DomainError("cannot attach to the empty forest")
        return host
    counter = 0

    def rebuild(t: Tree) -> Tree:
        nonlocal counter
        me = counter
        counter += 1
        kids = [rebuild(c) for c in t.children]
        kids.extend(assignment.get(me, ()))
        return Tree(kids)

    out = Forest(rebuild(t) for t in host.trees)
    bad = [v for v in assignment if not 0 <= v < host.weight]
    if bad:
        raise DomainError(f"node index {bad[0]} out of range for weight {host.weight}")
    return out


def to_dot(t: Tree, name: str = "T") -> str:
    """Graphviz digraph with preorder indices as node labels."""
    return forest_to_dot(Forest((t,)), name)


def forest_to_dot(f: Forest, name: str = "F") -> str:
    lines = [f"digraph {name} {{"]
    offset = 0
    edges = []
    for t in f.trees:
        parents = t.parent_array()
        for i in range(len(parents)):
            lines.append(f'  {offset + i} [label="{offset + i}"];')
        for i, p in enumerate(parents):
            if p >= 0:
                edges.append(f"  {offset + p} -> {offset + i};")
        offset += len(parents)
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines)
