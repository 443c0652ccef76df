"""Shared hypothesis strategies and small oracles for the test suite."""

import itertools
from itertools import permutations

from hypothesis import strategies as st

from rootedhopf.hopf import HElem
from rootedhopf.trees import Tree, generate_forests, generate_trees


def nested_trees(max_weight: int = 10):
    """Nested-list trees (each vertex is the list of its children), weight <= max_weight."""

    @st.composite
    def build(draw, budget):
        kids = []
        left = budget - 1
        while left > 0 and draw(st.booleans()):
            w = draw(st.integers(1, left))
            kids.append(draw(build(w)))
            left -= _weight(kids[-1])
        return kids

    return st.integers(1, max_weight).flatmap(build)


def _weight(nested) -> int:
    return 1 + sum(_weight(c) for c in nested)


def shuffle_nested(draw, nested):
    """Randomly permute children at every vertex."""
    kids = [shuffle_nested(draw, c) for c in nested]
    return draw(st.permutations(kids)) if kids else []


def all_sibling_orders(nested):
    """Every nested list reachable by sibling permutations (small inputs only)."""
    if not nested:
        yield []
        return
    child_variants = [list(all_sibling_orders(c)) for c in nested]
    for combo in itertools.product(*child_variants):
        for perm in permutations(combo):
            yield list(perm)


def forests_upto(n: int):
    return [f for m in range(n + 1) for f in generate_forests(m)]


def forest_strategy(max_weight: int = 5):
    return st.integers(0, max_weight).flatmap(lambda n: st.sampled_from(generate_forests(n)))


def helem_strategy(max_weight: int = 4, max_terms: int = 3):
    return st.lists(st.tuples(forest_strategy(max_weight), st.integers(-3, 3)),
                    max_size=max_terms).map(HElem)


def tree_strategy(max_weight: int = 6):
    return st.integers(1, max_weight).flatmap(lambda n: st.sampled_from(generate_trees(n)))


__all__ = ["nested_trees", "shuffle_nested", "all_sibling_orders", "forests_upto",
           "forest_strategy", "helem_strategy", "tree_strategy", "Tree"]
