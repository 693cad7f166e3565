"""Finite Kripke structures, traces and the line-based model file format.

A trace is a plain tuple of state indices into ``KripkeStructure.states``.
"""

import re

from .errors import ParseError

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")

Trace = tuple


class KripkeStructure:
    """Immutable ``(AP, S, R, mu, s0)``; iteration order follows declaration order."""

    def __init__(self, props, states, edges, labeling, initial):
        self.props = tuple(props)
        self.states = tuple(states)
        self._validate_names()
        self.index = {s: i for i, s in enumerate(self.states)}
        if initial not in self.index:
            raise ValueError(f"initial state {initial!r} is not declared")
        self.initial = initial
        seen = {}
        for a, b in edges:
            for s in (a, b):
                if s not in self.index:
                    raise ValueError(f"edge endpoint {s!r} is not a declared state")
            seen.setdefault((self.index[a], self.index[b]), None)
        # index pairs, first-declaration order, duplicates dropped
        self.edge_index = tuple(seen)
        props_set = set(self.props)
        labels = []
        for s in self.states:
            if s not in labeling:
                raise ValueError(f"state {s!r} has no label")
            lab = frozenset(labeling[s])
            bad = lab - props_set
            if bad:
                raise ValueError(f"label of {s!r} uses undeclared propositions {sorted(bad)}")
            labels.append(lab)
        extra = set(labeling) - set(self.states)
        if extra:
            raise ValueError(f"label for undeclared state {sorted(extra)[0]!r}")
        self.labels = tuple(labels)
        succ = [[] for _ in self.states]
        pred = [[] for _ in self.states]
        for i, j in self.edge_index:
            succ[i].append(j)
            pred[j].append(i)
        self.succ = tuple(tuple(sorted(x)) for x in succ)
        self.pred = tuple(tuple(sorted(x)) for x in pred)
        self.s0 = self.index[initial]

    def _validate_names(self):
        if not self.props:
            raise ValueError("a structure needs at least one proposition")
        if not self.states:
            raise ValueError("a structure needs at least one state")
        for kind, names in (("proposition", self.props), ("state", self.states)):
            if len(set(names)) != len(names):
                raise ValueError(f"duplicate {kind} identifier")
            for n in names:
                if not IDENT.match(n):
                    raise ValueError(f"invalid {kind} identifier {n!r}")

    @property
    def edges(self):
        return frozenset((self.states[i], self.states[j]) for i, j in self.edge_index)

    @property
    def labeling(self):
        return {s: self.labels[i] for i, s in enumerate(self.states)}

    def __eq__(self, other):
        if not isinstance(other, KripkeStructure):
            return NotImplemented
        return (self.props == other.props and self.states == other.states
                and self.edges == other.edges and self.labels == other.labels
                and self.initial == other.initial)

    def __hash__(self):
        return hash((self.props, self.states, self.edges, self.labels, self.initial))

    def __repr__(self):
        return (f"KripkeStructure(|S|={len(self.states)}, |AP|={len(self.props)}, "
                f"|R|={len(self.edge_index)}, init={self.initial!r})")

    # -- traces -------------------------------------------------------------

    def trace(self, names):
        """Build a validated trace from state names (a list or a space-separated string)."""
        if isinstance(names, str):
            names = names.split()
        try:
            t = tuple(self.index[n] for n in names)
        except KeyError as e:
            raise ValueError(f"unknown state {e.args[0]!r}") from None
        self.check_trace(t)
        return t

    def names(self, t):
        return [self.states[i] for i in t]

    def is_trace(self, t):
        if not t:
            return False
        n = len(self.states)
        if any(not 0 <= i < n for i in t):
            return False
        return all(b in self.succ[a] for a, b in zip(t, t[1:]))

    def check_trace(self, t):
        if not self.is_trace(t):
            raise ValueError(f"not a trace of this structure: {t!r}")


def label_word(k, t):
    """The labeling sequence induced by ``t``, one frozenset of prop names per step."""
    k.check_trace(t)
    return tuple(k.labels[i] for i in t)


def star_concat(t1, t2):
    if t1[-1] != t2[0]:
        raise ValueError(f"cannot star-concatenate: last state {t1[-1]} != first state {t2[0]}")
    return t1[:-1] + t2


def proper_prefixes(t):
    return [t[:i] for i in range(1, len(t))]


def proper_suffixes(t):
    return [t[i:] for i in range(1, len(t))]


def reverse(k):
    """Same structure with every edge reversed."""
    return KripkeStructure(k.props, k.states, [(b, a) for a, b in _edge_names(k)],
                           k.labeling, k.initial)


def _edge_names(k):
    return [(k.states[i], k.states[j]) for i, j in k.edge_index]


# -- model file format ------------------------------------------------------

def parse_model(text):
    props = states = initial = None
    edges = []
    labeling = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", f"line {lineno}")
        key = key.strip()
        toks = rest.split()
        for tok in toks:
            if not IDENT.match(tok):
                raise ParseError(f"invalid identifier {tok!r}", f"line {lineno}")
        if key == "props":
            props = toks
        elif key == "states":
            states = toks
        elif key == "init":
            if len(toks) != 1:
                raise ParseError("init takes exactly one state", f"line {lineno}")
            initial = toks[0]
        elif key == "edge":
            if len(toks) != 2:
                raise ParseError("edge takes exactly two states", f"line {lineno}")
            edges.append((tuple(toks), lineno))
        elif key.startswith("label ") or key.startswith("label\t"):
            name = key[5:].strip()
            if name in labeling:
                raise ParseError(f"state {name!r} labelled twice", f"line {lineno}")
            labeling[name] = (toks, lineno)
        else:
            raise ParseError(f"unknown directive {key!r}", f"line {lineno}")
    if props is None:
        raise ParseError("missing props declaration")
    if states is None:
        raise ParseError("missing states declaration")
    if initial is None:
        raise ParseError("missing initial state")
    declared = set(states)
    if initial not in declared:
        raise ParseError(f"undeclared initial state {initial!r}")
    for (a, b), lineno in edges:
        for s in (a, b):
            if s not in declared:
                raise ParseError(f"edge to undeclared state {s!r}", f"line {lineno}")
    full = {}
    for name, (toks, lineno) in labeling.items():
        if name not in declared:
            raise ParseError(f"label for undeclared state {name!r}", f"line {lineno}")
        for p in toks:
            if p not in props:
                raise ParseError(f"undeclared proposition {p!r}", f"line {lineno}")
        full[name] = toks
    for s in states:
        # states without a label line get the empty label set
        full.setdefault(s, [])
    try:
        return KripkeStructure(props, states, [e for e, _ in edges], full, initial)
    except ValueError as e:
        raise ParseError(str(e)) from None


def serialize_model(k):
    lines = [f"props: {' '.join(k.props)}", f"states: {' '.join(k.states)}",
             f"init: {k.initial}"]
    lines += [f"edge: {a} {b}" for a, b in _edge_names(k)]
    for s, lab in zip(k.states, k.labels):
        body = " ".join(p for p in k.props if p in lab)
        lines.append(f"label {s}: {body}".rstrip())
    return "\n".join(lines) + "\n"
