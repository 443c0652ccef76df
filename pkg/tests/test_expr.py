from fractions import Fraction

import pytest

from rootedhopf import expr, hopf
from rootedhopf.errors import DomainError, ParseError, ResourceBoundError
from rootedhopf.hopf import HElem
from rootedhopf.trees import parse_forest


def ev(text, bound=expr.DEFAULT_BOUND):
    return expr.evaluate_text(text, bound)


def H(text):
    return HElem.of(parse_forest(text))


def test_rendered_examples():
    assert str(ev("graft((), (()))")) == "1/2*((())) + 1/2*(()())"
    assert str(ev("antipode((()))")) == "-(()) + ()*()"
    assert str(ev("coproduct(())")) == "()⊗1 + 1⊗()"


def test_bare_and_quoted_literals_agree():
    assert ev("(())") == ev('t"(())"') == H("(())")
    assert ev('t"().()"') == H("()") * H("()")
    assert ev('t"1"') == HElem.scalar(1)


def test_grouping_versus_tree_literal():
    assert ev("(() + ())") == H("()").scale(2)
    assert ev("(())*(())") == H("(())") * H("(())")
    assert ev("2*(() - ())") == HElem.scalar(0)


def test_precedence_and_rationals():
    assert ev("1 + 2*()") == HElem.scalar(1) + H("()").scale(2)
    assert ev("-1/2*() + ()") == H("()").scale(Fraction(1, 2))
    assert ev("--()") == H("()")
    assert ev("3/6") == HElem.scalar(Fraction(1, 2))


def test_operations_match_library():
    x = H("(()())") + H("()").scale(3)
    assert ev("antipode((()()) + 3*())") == hopf.antipode(x)
    assert ev("bplus(()*())") == ev('bplus(t"().()")') == H("(()())")
    assert ev("bplus(1)") == H("()")
    assert ev("graft((), 1)") == HElem.scalar(0)
    assert ev("coproduct(2*())") == hopf.coproduct(H("()").scale(2))
    assert ev("3*coproduct(())") == hopf.coproduct(H("()")).scale(3)


def test_antipode_is_involutive_through_the_language():
    assert ev("antipode(antipode(((())())))") == H("((())())")


@pytest.mark.parametrize("text,offset", [
    ("graft(", 6),
    ("() +", 4),
    ("foo(())", 0),
    ("1/0", 2),
    ("graft(())", 0),
    ('t"(()"', 5),
    ("() ]", 3),
])
def test_parse_errors_report_offset(text, offset):
    with pytest.raises(ParseError) as info:
        expr.parse(text)
    assert info.value.offset == offset
    assert f"offset {offset}" in str(info.value)


def test_type_errors():
    with pytest.raises(DomainError):
        ev("antipode(coproduct(()))")
    with pytest.raises(DomainError):
        ev("coproduct(()) + ()")


def test_degree_bound():
    assert hopf.degree(ev("bplus(bplus(bplus(())))", bound=4)) == 4
    with pytest.raises(ResourceBoundError):
        ev("bplus(bplus(bplus(())))", bound=3)
    with pytest.raises(ResourceBoundError):
        ev("()", bound=expr.HARD_CAP + 1)
    with pytest.raises(ResourceBoundError):
        ev("((((((((()))))))))")
