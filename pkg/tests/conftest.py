import random

import pytest

from hsmc.kripke import KripkeStructure, parse_model

K0_TEXT = """\
props: p q
states: s0 s1
init: s0
edge: s0 s1
edge: s1 s0
edge: s1 s1
label s0: p
label s1: q
"""


@pytest.fixture
def k0():
    return parse_model(K0_TEXT)


def random_structure(rng, n_states, props=("p", "q"), density=0.5):
    states = [f"s{i}" for i in range(n_states)]
    edges = [(a, b) for a in states for b in states if rng.random() < density]
    # every state keeps at least one successor so traces can grow
    for a in states:
        if not any(x == a for x, _ in edges):
            edges.append((a, rng.choice(states)))
    labeling = {s: {p for p in props if rng.random() < 0.5} for s in states}
    return KripkeStructure(props, states, edges, labeling, "s0")


def all_traces(k, maxlen, start=None):
    out = []
    layer = [(s,) for s in range(len(k.states)) if start is None or s == start]
    while layer and len(layer[0]) <= maxlen:
        out += layer
        layer = [t + (n,) for t in layer for n in k.succ[t[-1]]]
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)


def regex_match(r, word):
    """Direct reading of the language equations; independent of the automaton code."""
    from functools import lru_cache

    from hsmc.relang import Concat, Eps, Star, Test, Union, eval_prop

    word = tuple(frozenset(a) for a in word)

    @lru_cache(maxsize=None)
    def m(r, i, j):
        t = type(r)
        if t is Eps:
            return i == j
        if t is Test:
            return j == i + 1 and eval_prop(r.prop, word[i])
        if t is Union:
            return m(r.left, i, j) or m(r.right, i, j)
        if t is Concat:
            return any(m(r.left, i, k) and m(r.right, k, j) for k in range(i, j + 1))
        if t is Star:
            # empty, or a non-empty first iteration followed by more iterations
            return i == j or any(m(r.arg, i, k) and m(r, k, j) for k in range(i + 1, j + 1))
        raise TypeError(r)

    return m(r, 0, len(word))


def all_words(alphabet, maxlen):
    out = [()]
    layer = [()]
    for _ in range(maxlen):
        layer = [w + (a,) for w in layer for a in alphabet]
        out += layer
    return out


LETTERS = [frozenset(), frozenset({"p"}), frozenset({"q"}), frozenset({"p", "q"})]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
