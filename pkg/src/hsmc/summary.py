"""Trace summaries: endpoints plus the NFA run relation over the trace's labels.

The run relation of each automaton is a tuple of row bitmasks (row ``q`` holds
every ``q'`` reachable from ``q``); composing with one more letter is a boolean
matrix product.
"""

import threading
from dataclasses import dataclass

from .relang import _bits, compile_regex, regex_size


class SpecSet:
    """Ordered set of regular expressions with their compiled automata.

    Automaton ``l`` owns the global state ids ``offsets[l] .. offsets[l]+n_l-1``,
    so state spaces are pairwise disjoint.
    """

    def __init__(self, exprs):
        self.exprs = tuple(dict.fromkeys(exprs))
        self.automata = tuple(compile_regex(r) for r in self.exprs)
        offs, acc = [], 0
        for a in self.automata:
            offs.append(acc)
            acc += a.n
        self.offsets = tuple(offs)
        self.size = sum(regex_size(r) for r in self.exprs)
        self._pos = {r: i for i, r in enumerate(self.exprs)}

    def __len__(self):
        return len(self.exprs)

    def automaton(self, r):
        return self.automata[self._pos[r]]

    def global_id(self, ell, q):
        return self.offsets[ell] + q

    def __repr__(self):
        return f"SpecSet([{', '.join(str(r) for r in self.exprs)}])"


@dataclass(frozen=True)
class Summary:
    first: int
    rel: tuple  # per automaton: tuple of row bitmasks
    last: int

    def pairs(self, spec):
        """The pair set Pi, over global automaton state ids."""
        out = set()
        for ell, rows in enumerate(self.rel):
            off = spec.offsets[ell]
            for q, row in enumerate(rows):
                out.update((off + q, off + q2) for q2 in _bits(row))
        return out

    def accepts(self, spec, ell):
        """Is the summarized label word in the language of ``spec.exprs[ell]``?"""
        a = spec.automata[ell]
        rows = self.rel[ell]
        return any(rows[q] & a.acc_mask for q in a.initials)


def _compose(rows, step):
    out = []
    for row in rows:
        acc = 0
        for q2 in _bits(row):
            acc |= step[q2]
        out.append(acc)
    return tuple(out)


def letter_relation(spec, letter):
    return tuple(a.step_rows(letter) for a in spec.automata)


def extend_summary(s, spec, letter, next_state):
    """Summary of the trace ``rho . next_state`` given ``s`` = S(rho) and ``letter`` = mu(next_state)."""
    step = letter_relation(spec, letter)
    return Summary(s.first, tuple(_compose(r, st) for r, st in zip(s.rel, step)), next_state)


def summary_of(k, spec, t):
    k.check_trace(t)
    s = Summary(t[0], letter_relation(spec, k.labels[t[0]]), t[0])
    for i in t[1:]:
        s = extend_summary(s, spec, k.labels[i], i)
    return s


def summary_count_bound(k, spec):
    return len(k.states) ** 2 * 2 ** ((2 * spec.size) ** 2)


class SummaryTable:
    """Per (structure, spec) session: cached letter relations and interned summaries."""

    def __init__(self, k, spec):
        self.k = k
        self.spec = spec
        self.steps = tuple(letter_relation(spec, lab) for lab in k.labels)
        self._intern = {}
        self._prefix_cache = {}
        self._lock = threading.Lock()

    def intern(self, s):
        got = self._intern.get(s)
        if got is None:
            with self._lock:
                got = self._intern.setdefault(s, s)
        return got

    def __len__(self):
        return len(self._intern)

    def point(self, state):
        return self.intern(Summary(state, self.steps[state], state))

    def extend(self, s, state):
        step = self.steps[state]
        rel = tuple(_compose(r, st) for r, st in zip(s.rel, step))
        return self.intern(Summary(s.first, rel, state))

    def of(self, t):
        return self.prefix_summaries(t)[-1]

    def prefix_summaries(self, t):
        """``[S(t[:1]), S(t[:2]), ..., S(t)]``; computed by one left-to-right sweep."""
        got = self._prefix_cache.get(t)
        if got is not None:
            return got
        # reuse the longest cached proper prefix when there is one
        base = self._prefix_cache.get(t[:-1]) if len(t) > 1 else None
        if base is not None:
            out = base + (self.extend(base[-1], t[-1]),)
        else:
            out = [self.point(t[0])]
            for i in t[1:]:
                out.append(self.extend(out[-1], i))
            out = tuple(out)
        self._prefix_cache[t] = out
        return out
