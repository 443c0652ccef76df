import pytest
from hypothesis import given, settings, strategies as st

from helpers import all_sibling_orders, nested_trees, shuffle_nested
from rootedhopf.errors import DomainError, ParseError
from rootedhopf.trees import (
    EMPTY_FOREST,
    Forest,
    Tree,
    attach,
    attach_many,
    canonicalize,
    equivalent,
    forest_to_dot,
    from_parent_array,
    generate_forests,
    generate_trees,
    ladder,
    max_fertility,
    parse_forest,
    parse_tree,
    to_dot,
)

L1, L2, L3 = ladder(1), ladder(2), ladder(3)
VEE = Tree((L1, L1))


def test_single_vertex():
    assert canonicalize([]).canon == "()"


def test_sibling_order_irrelevant():
    a = canonicalize([[[]], []])
    b = canonicalize([[], [[]]])
    assert a == b
    assert a.canon == "(()(()))"


def test_weight7_pair_equivalent():
    # weight-7 tree with subtrees swapped at two different heights
    left = [[[], [[]]], [[]]]
    right = [[[]], [[[]], []]]
    assert canonicalize(left).weight == 7
    assert canonicalize(left) == canonicalize(right)


def test_equivalence_examples():
    t = canonicalize([[], [[]]])
    assert equivalent(t, t)
    assert not equivalent(L3, VEE)
    # the brute-force orbit of l3 never reaches the vee
    orbit = {canonicalize(x) for x in all_sibling_orders([[[]]])}
    assert VEE not in orbit


def test_parse_examples():
    assert parse_tree("()") == L1
    assert parse_tree("(())") == L2
    t = parse_tree("(()(()))")
    assert str(t) == "(()(()))"
    assert parse_tree("((())())").canon == "(()(()))"


@pytest.mark.parametrize("text,offset", [("(()", 3), ("())", 2), ("(a)", 1), ("", 0), (")", 0)])
def test_parse_errors_carry_offset(text, offset):
    with pytest.raises(ParseError) as exc:
        parse_tree(text)
    assert exc.value.offset == offset


def test_parse_forest():
    assert parse_forest("1") is EMPTY_FOREST
    f = parse_forest("(()).()")
    assert str(f) == "().(())"
    with pytest.raises(ParseError) as exc:
        parse_forest("().x")
    assert exc.value.offset == 3


def test_generate_trees_small():
    assert [t.canon for t in generate_trees(1)] == ["()"]
    assert [t.canon for t in generate_trees(2)] == ["(())"]
    assert set(generate_trees(3)) == {L3, VEE}
    with pytest.raises(DomainError):
        generate_trees(0)


def test_generate_forests_small():
    assert generate_forests(0) == (EMPTY_FOREST,)
    assert generate_forests(2) == (Forest((L1, L1)), Forest((L2,)))
    assert len(generate_forests(3)) == 4 == len(generate_trees(4))


def test_generation_invariants():
    sizes = [len(generate_trees(n)) for n in range(1, 11)]
    assert all(a < b for a, b in zip(sizes[2:], sizes[3:]))
    for n in range(1, 9):
        ts = generate_trees(n)
        assert len(set(ts)) == len(ts)
        assert all(t.weight == n and canonicalize(t.canon) == t for t in ts)
        assert list(ts) == sorted(ts)


def test_ladder_and_fertility():
    assert ladder(1).canon == "()"
    assert ladder(2).canon == "(())"
    assert ladder(4).canon == "(((())))"
    with pytest.raises(DomainError):
        ladder(0)
    assert max_fertility(ladder(5)) == 1
    assert max_fertility(L1) == 0
    assert max_fertility(VEE) == 2


def test_attach_examples():
    assert attach(L1, 0, L1) == Forest((L2,))
    assert attach(L2, 0, L1) == Forest((VEE,))
    f = Forest((L1, L2))
    assert attach(f, 1, EMPTY_FOREST) == f
    with pytest.raises(DomainError):
        attach(L2, 2, L1)
    with pytest.raises(DomainError):
        attach(EMPTY_FOREST, 0, L1)


def test_attach_preserves_tree_count_and_adds_weight():
    for host in generate_forests(3):
        for v in range(host.weight):
            out = attach(host, v, Forest((L1, L2)))
            assert len(out) == len(host)
            assert out.weight == host.weight + 3


def test_attach_many_matches_repeated_attach():
    host = Forest((L3,))
    # grafting at distinct nodes of a ladder does not shift preorder indices above
    assert attach_many(host, {0: [L1], 2: [L1]}) == attach(attach(host, 2, L1), 0, L1)
    with pytest.raises(DomainError):
        attach_many(host, {3: [L1]})


def test_parent_array_round_trip():
    for n in range(1, 8):
        for t in generate_trees(n):
            assert from_parent_array(t.parent_array()) == t
    with pytest.raises(DomainError):
        from_parent_array([-1, -1])
    with pytest.raises(DomainError):
        from_parent_array([1, 0])


def test_dot_export():
    dot = to_dot(VEE)
    assert dot.splitlines()[0] == "digraph T {"
    assert "0 -> 1;" in dot and "0 -> 2;" in dot
    assert '2 [label="2"];' in dot
    fd = forest_to_dot(Forest((L1, L2)))
    assert "1 -> 2;" in fd and fd.count("label=") == 3


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_permutation_invariance(data):
    nested = data.draw(nested_trees(10))
    shuffled = shuffle_nested(data.draw, nested)
    assert canonicalize(shuffled) == canonicalize(nested)


@settings(max_examples=100, deadline=None)
@given(nested_trees(10))
def test_idempotent_and_round_trip(nested):
    t = canonicalize(nested)
    assert canonicalize(t) is t
    assert parse_tree(t.canon) == t
    assert parse_tree(t.canon).canon == t.canon


def test_round_trip_all_generated():
    for n in range(1, 11):
        for t in generate_trees(n):
            assert parse_tree(t.canon) == t


def test_trees_hash_consistently():
    assert hash(canonicalize([[], [[]]])) == hash(canonicalize([[[]], []]))
    assert bool(EMPTY_FOREST) is True
    assert str(EMPTY_FOREST) == "1"
