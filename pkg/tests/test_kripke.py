import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsmc.errors import ParseError
from hsmc.kripke import (KripkeStructure, label_word, parse_model, proper_prefixes,
                         proper_suffixes, reverse, serialize_model, star_concat)

from conftest import K0_TEXT, all_traces


def test_parse_k0(k0):
    assert k0.props == ("p", "q")
    assert k0.states == ("s0", "s1")
    assert k0.initial == "s0"
    assert k0.edges == {("s0", "s1"), ("s1", "s0"), ("s1", "s1")}
    assert k0.labeling == {"s0": frozenset({"p"}), "s1": frozenset({"q"})}


def test_missing_init():
    text = "\n".join(ln for ln in K0_TEXT.splitlines() if not ln.startswith("init"))
    with pytest.raises(ParseError, match="missing initial state"):
        parse_model(text)


def test_undeclared_edge_target():
    with pytest.raises(ParseError, match="'s7'"):
        parse_model(K0_TEXT + "edge: s0 s7\n")


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 2"):
        parse_model("props: p\nbogus line\n")
    with pytest.raises(ParseError, match="undeclared proposition"):
        parse_model("props: p\nstates: a\ninit: a\nlabel a: r\n")
    with pytest.raises(ParseError, match="labelled twice"):
        parse_model(K0_TEXT + "label s0: q\n")


def test_empty_label_line():
    k = parse_model("props: p\nstates: a\ninit: a\nedge: a a\nlabel a:\n")
    assert k.labeling == {"a": frozenset()}


def test_label_word(k0):
    assert label_word(k0, k0.trace("s0")) == (frozenset({"p"}),)
    assert label_word(k0, k0.trace("s0 s1 s0")) == ({"p"}, {"q"}, {"p"})
    with pytest.raises(ValueError):
        label_word(k0, (0, 0))


def test_star_concat():
    assert star_concat((0, 1), (1, 0)) == (0, 1, 0)
    assert star_concat((0,), (0, 1)) == (0, 1)
    with pytest.raises(ValueError):
        star_concat((0, 1), (0,))


def test_prefixes_suffixes():
    assert proper_prefixes((0, 1, 0)) == [(0,), (0, 1)]
    assert proper_prefixes((0,)) == []
    assert proper_suffixes((0, 1, 0)) == [(1, 0), (0,)]


def test_reverse(k0):
    r = reverse(k0)
    assert r.edges == {("s1", "s0"), ("s0", "s1"), ("s1", "s1")}
    assert reverse(r) == k0
    loop = KripkeStructure(["p"], ["a"], [("a", "a")], {"a": {"p"}}, "a")
    assert reverse(loop) == loop


def test_round_trip(k0):
    assert parse_model(serialize_model(k0)) == k0


def test_structure_invariants():
    with pytest.raises(ValueError):
        KripkeStructure(["p"], ["a"], [], {}, "a")
    with pytest.raises(ValueError):
        KripkeStructure(["p"], ["a"], [], {"a": set()}, "b")
    with pytest.raises(ValueError):
        KripkeStructure(["p"], ["a", "a"], [], {"a": set()}, "a")
    with pytest.raises(ValueError):
        KripkeStructure([], ["a"], [], {"a": set()}, "a")


@given(st.lists(st.sampled_from([0, 1]), min_size=1, max_size=6),
       st.lists(st.sampled_from([0, 1]), min_size=1, max_size=6),
       st.lists(st.sampled_from([0, 1]), min_size=1, max_size=6))
@settings(max_examples=200, deadline=None)
def test_star_concat_associative(a, b, c):
    a, b, c = tuple(a), tuple(b), tuple(c)
    # force the endpoints to match
    b = (a[-1],) + b[1:]
    c = (b[-1],) + c[1:]
    assert star_concat(star_concat(a, b), c) == star_concat(a, star_concat(b, c))
    assert star_concat(a, (a[-1],)) == a
    assert star_concat((a[0],), a) == a


def test_prefixes_are_traces(k0):
    for t in all_traces(k0, 5):
        w = label_word(k0, t)
        for p in proper_prefixes(t):
            assert k0.is_trace(p)
            assert label_word(k0, p) == w[:len(p)]
