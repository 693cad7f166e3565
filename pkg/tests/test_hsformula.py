import itertools

import pytest

from hsmc.errors import ParseError
from hsmc.hsformula import (And, Atom, Box, Diamond, Mod, NegAtom, Not, Or, aa_set, depth_b,
                            dual, formula_size, is_pnf, mirror, parse_formula, sd_set,
                            subformulas, to_pnf, upsilon)
from hsmc.kripke import reverse
from hsmc.oracle import Oracle
from hsmc.relang import parse_regex

from conftest import all_traces

R = parse_regex("r")
P = parse_regex("p")
Q = parse_regex("q")


def test_parse_bounded_response():
    f = parse_formula("[A]({req} -> <~B>{req . (true.true)* . res})")
    target = parse_regex("req . (true.true)* . res")
    assert f == Box(Mod.A, Or(Not(Atom(parse_regex("req"))), Diamond(Mod.B_INV, Atom(target))))


def test_parse_simple():
    assert parse_formula("<B>{p}") == Diamond(Mod.B, Atom(P))
    assert parse_formula("~{p} & {q} | {p}") == Or(And(Not(Atom(P)), Atom(Q)), Atom(P))
    assert parse_formula("{p} -> {q} -> {p}") == Or(Not(Atom(P)), Or(Not(Atom(Q)), Atom(P)))
    assert parse_formula("[~E]<~A>{p}") == Box(Mod.E_INV, Diamond(Mod.A_INV, Atom(P)))


@pytest.mark.parametrize("text", ["<D>{p}", "[L]{p}", "{p", "{p .}", "{p} &", "({p}", "", "{p} {q}"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_unknown_modality_message():
    with pytest.raises(ParseError, match="outside the supported set"):
        parse_formula("<D>{p}")


def test_print_round_trip():
    for text in ["<B>{p} & [~B]~{q . p*}", "<A>({p} | <~E>[B]{q})", "~(<B>{p} & {q})"]:
        f = parse_formula(text)
        assert parse_formula(str(f)) == f


def test_to_pnf_examples():
    assert to_pnf(Not(Diamond(Mod.B, Atom(R)))) == Box(Mod.B, NegAtom(R))
    assert to_pnf(Not(And(Atom(P), Atom(Q)))) == Or(NegAtom(P), NegAtom(Q))
    assert to_pnf(Not(Not(Atom(R)))) == Atom(R)


def test_dual_examples():
    assert dual(Atom(R)) == NegAtom(R)
    psi = Diamond(Mod.B, Atom(R))
    assert dual(Diamond(Mod.B_INV, psi)) == Box(Mod.B_INV, dual(psi))
    assert dual(And(Atom(P), Atom(Q))) == Or(NegAtom(P), NegAtom(Q))
    with pytest.raises(ValueError):
        dual(Not(Atom(R)))


def test_depth_b_examples():
    assert depth_b(Atom(R)) == 0
    assert depth_b(Diamond(Mod.B, Atom(R))) == 1
    assert depth_b(Diamond(Mod.B_INV, Diamond(Mod.B, Atom(R)))) == 1
    assert depth_b(Box(Mod.B, Diamond(Mod.B, Atom(R)))) == 2


def test_upsilon_examples():
    assert upsilon(parse_formula("<A>[B]<B>{r}")) == 0
    assert upsilon(Diamond(Mod.B_INV, Box(Mod.E_INV, Atom(R)))) == 1
    assert upsilon(Box(Mod.E_INV, Diamond(Mod.B, Box(Mod.E_INV, Atom(R))))) == 0
    assert upsilon(parse_formula("<~B>[~E]<A><~E>{r}")) == 2


def test_sd_and_aa_sets():
    assert set(sd_set(Atom(R))) == {Atom(R), NegAtom(R)}
    assert aa_set(Atom(R)) == []
    assert set(aa_set(Diamond(Mod.A, Atom(R)))) == {Diamond(Mod.A, Atom(R)), Box(Mod.A, NegAtom(R))}


def _formulas(max_nodes):
    """All PNF formulas over atoms p, q with at most ``max_nodes`` nodes (A, ~A, B, ~B, ~E, E)."""
    mods = [Mod.A, Mod.A_INV, Mod.B, Mod.B_INV, Mod.E_INV, Mod.E]
    by = {1: [Atom(P), Atom(Q), NegAtom(P)]}
    for n in range(2, max_nodes + 1):
        cur = [N(m, f) for f in by[n - 1] for m in mods for N in (Diamond, Box)]
        for i in range(1, n - 1):
            cur += [N(a, b) for a in by[i] for b in by[n - 1 - i] for N in (And, Or)]
        by[n] = cur
    return [f for n in sorted(by) for f in by[n]]


def test_structural_properties():
    for f in _formulas(4):
        assert is_pnf(f)
        d = dual(f)
        assert dual(d) == f
        assert upsilon(d) == upsilon(f)
        assert depth_b(d) == depth_b(f)
        sd = sd_set(f)
        assert len(sd) <= 2 * len(subformulas(f))
        assert all(dual(g) in sd for g in sd)
        aa = aa_set(f)
        assert set(aa) <= set(sd) and all(dual(g) in aa for g in aa)
        assert formula_size(f) >= 1


def test_pnf_and_dual_agree_with_oracle(k0):
    o = Oracle(k0, 3)
    traces = all_traces(k0, 3)
    for f in _formulas(3):
        neg = Not(f)
        for t in traces:
            v = o.holds(t, f)
            assert o.holds(t, to_pnf(neg)) == (not v)
            assert o.holds(t, dual(f)) == (not v)
            assert o.holds(t, to_pnf(f)) == v


def test_mirror_semantics(k0):
    # a formula holds on a trace iff its mirror holds on the reversed trace of the reversed structure
    o, orev = Oracle(k0, 4), Oracle(reverse(k0), 4)
    for f in _formulas(3):
        g = mirror(f)
        for t in all_traces(k0, 3):
            assert o.holds(t, f) == orev.holds(t[::-1], g), (str(f), t)


def test_negated_formula_generation_is_pnf():
    for a, b in itertools.product(_formulas(2), repeat=2):
        assert is_pnf(to_pnf(Not(And(a, Not(b)))))
