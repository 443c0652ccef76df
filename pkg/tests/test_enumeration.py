import threading
from itertools import combinations_with_replacement

import pytest

from rootedhopf import enumeration as en
from rootedhopf.errors import DomainError, ResourceBoundError
from rootedhopf.trees import generate_trees, max_fertility


def test_multichoose_examples():
    assert en.multichoose(1, 3) == 1
    assert en.multichoose(2, 2) == 3
    # exhaustive multiset listing
    assert en.multichoose(9, 2) == len(list(combinations_with_replacement(range(9), 2))) == 45
    assert en.multichoose(5, 0) == 1
    assert en.multichoose(0, 2) == 0


def test_partitions_examples():
    assert list(en.partitions(0)) == [{}]
    assert list(en.partitions(2)) == [{1: 2}, {2: 1}]
    assert len(list(en.partitions(4))) == 5


def test_partitions_are_exact_and_unique():
    for n in range(1, 12):
        parts = list(en.partitions(n))
        assert all(sum(i * k for i, k in lam.items()) == n for lam in parts)
        keys = [tuple(sorted(lam.items())) for lam in parts]
        assert len(set(keys)) == len(keys)
    # partition numbers
    assert [len(list(en.partitions(n))) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]


def test_count_trees_examples():
    assert en.count_trees(1) == 1
    assert en.count_trees(4) == 4 == len(generate_trees(4))
    assert en.count_trees(7) == len(generate_trees(7))
    with pytest.raises(DomainError):
        en.count_trees(0)


def test_hand_expansion():
    a = {1: 1}
    # a(2): partition {1:1}
    a[2] = en.multichoose(a[1], 1)
    # a(3): {1:2}, {2:1}
    a[3] = en.multichoose(a[1], 2) + en.multichoose(a[2], 1)
    # a(4): {1:3}, {1:1,2:1}, {3:1} -> 1 + 1 + 2
    a[4] = en.multichoose(a[1], 3) + a[1] * a[2] + en.multichoose(a[3], 1)
    assert (a[2], a[3], a[4]) == (1, 2, 4)
    assert [en.count_trees(n) for n in (2, 3, 4)] == [1, 2, 4]


def test_branch_examples():
    assert en.count_branch_trees(1, 5, "corrected") == 1
    assert en.count_branch_trees(1, 3, "paper-literal") == 2
    want = sum(1 for t in generate_trees(4) if max_fertility(t) <= 2)
    assert en.count_branch_trees(2, 4, "corrected") == want == 3
    with pytest.raises(DomainError):
        en.count_branch_trees(0, 3)
    with pytest.raises(DomainError):
        en.count_branch_trees(1, 3, "other")


def test_oracle_examples():
    assert en.oracle_count(3) == 2
    assert en.oracle_count_branch(1, 6) == 1
    assert en.oracle_count(1) == 1
    with pytest.raises(ResourceBoundError):
        en.oracle_count(en.ORACLE_BOUND + 1)


def test_fertility_bound_inactive_and_monotone():
    for n in range(1, 10):
        for r in range(n - 1, n + 2):
            if r >= 1:
                assert en.count_branch_trees(r, n) == en.count_trees(n)
        for r in range(1, 5):
            assert en.count_branch_trees(r, n) <= en.count_branch_trees(r + 1, n) <= en.count_trees(n)


def test_first_divergence():
    assert en.first_divergence(3, 10) == {"r": 1, "n": 3, "mode": "paper-literal",
                                          "value": "2", "oracle": "1"}
    assert en.first_divergence(3, 10, "corrected") is None


def test_count_table_format():
    rows = en.count_table(3)
    assert rows == [{"n": 1, "a": "1"}, {"n": 2, "a": "1"}, {"n": 3, "a": "2"}]
    rows = en.count_table(3, r=1, mode="paper-literal")
    assert rows[-1] == {"n": 3, "r": 1, "mode": "paper-literal", "a": "2",
                        "oracle": "1", "match": False}
    assert all(r["match"] for r in en.count_table(6, verify=True))


def test_memo_is_thread_safe():
    results = []

    def work():
        results.append([en.count_branch_trees(2, n) for n in range(1, 14)])

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)


def test_big_counts_are_exact():
    # asymptotic growth never forces floats
    v = en.count_trees(30)
    assert isinstance(v, int) and v == 354426847597
