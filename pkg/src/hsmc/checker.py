"""Model checking for the AABBE fragment (and its mirror image by reversal).

The alternating procedure is run deterministically: existential choices are
short-circuit ORs, universal choices short-circuit ANDs, and the AA-labeling
is computed bottom-up instead of guessed. Certificates are enumerated on the
quotient of traces under contraction, so the search is finite without ever
approaching the theoretical length bound.

With ``max_cert_len`` below that bound the checker switches to plain traces
of bounded length (no contraction) and reports the verdict as incomplete; it
then decides exactly the length-bounded semantics the oracle implements.
"""

import heapq
from dataclasses import dataclass, field

from .bisim import _sampling, certificate_bound, contract_counted
from .errors import InvariantViolation
from .hsformula import (FRAGMENT, MIRROR_FRAGMENT, And, Atom, Box, Diamond, Mod,
                        NegAtom, Or, atoms, children, depth_b, dual, mirror, modalities,
                        to_pnf)
from .kripke import proper_prefixes, reverse
from .relang import accepts, compile_regex
from .summary import SpecSet, SummaryTable


class FragmentError(ValueError):
    pass


@dataclass
class CheckerConfig:
    max_cert_len: int = None
    collect_stats: bool = True
    witness: bool = True


@dataclass
class Stats:
    certificates_explored: int = 0
    contractions: int = 0
    mode_switches: int = 0
    max_certificate_length: int = 0

    def as_dict(self):
        return {"certificates_explored": self.certificates_explored,
                "contractions": self.contractions,
                "mode_switches": self.mode_switches}


@dataclass
class Verdict:
    satisfied: bool
    trace: tuple  # counterexample when unsatisfied, else None
    complete: bool
    stats: Stats = field(default_factory=Stats)
    bound: int = 0

    @property
    def witness_or_counterexample(self):
        return self.trace


class Labeling:
    """AA-labeling: for each state, exactly one of every dual pair of A/~A formulas."""

    def __init__(self, n_states):
        self._val = [{} for _ in range(n_states)]

    def set(self, state, f, value, f_dual):
        self._val[state][f] = value
        self._val[state][f_dual] = not value

    def holds(self, state, f):
        try:
            return self._val[state][f]
        except KeyError:
            raise InvariantViolation(f"{f} is not labeled at state {state}") from None

    def labeled(self, f):
        return f in self._val[0]

    def members(self, state):
        return frozenset(f for f, v in self._val[state].items() if v)

    def as_map(self):
        return [self.members(s) for s in range(len(self._val))]


class _Stream:
    """Re-iterable view of a generator; items are produced on demand and kept."""

    def __init__(self, gen):
        self._gen = gen
        self._items = []
        self._done = False

    def __iter__(self):
        i = 0
        while True:
            if i < len(self._items):
                yield self._items[i]
                i += 1
            elif self._done:
                return
            else:
                try:
                    self._items.append(next(self._gen))
                except StopIteration:
                    self._done = True


def _universal(f):
    return type(f) is Box and (f.mod is Mod.B_INV or f.mod is Mod.E_INV)


class Checker:
    def __init__(self, k, spec, h, cfg=None):
        self.k = k
        self.spec = spec
        self.h = h
        self.cfg = cfg or CheckerConfig()
        self.bound = certificate_bound(k, spec, h)
        cap = self.cfg.max_cert_len
        if cap is not None and cap < 1:
            raise ValueError("max_cert_len must be positive")
        self.capped = cap is not None and cap < self.bound
        self.effective_bound = cap if self.capped else self.bound
        self.table = SummaryTable(k, spec)
        self.lab = Labeling(len(k.states))
        self.stats = Stats()
        self._memo = {}
        self._streams = {}
        self._nfas = {}
        self._prefix_lists = {}
        self._label_rel = {}

    # -- certificate enumeration ----------------------------------------------

    def _node(self, t):
        if self.capped:
            return t, t
        c, n = contract_counted(self.table, t, self.h)
        self.stats.contractions += n
        sums = self.table.prefix_summaries(c)
        # equal sampling words imply bisimilarity, so one trace per word suffices
        return c, tuple(sums[p - 1] for p in _sampling(sums, self.h))

    def _explore(self, seeds, grow):
        heap = []
        seen = set()

        def push(t):
            if self.capped and len(t) > self.effective_bound:
                return
            c, key = self._node(t)
            if key not in seen:
                seen.add(key)
                heapq.heappush(heap, (len(c), c))

        for t in seeds:
            push(t)
        while heap:
            _, t = heapq.heappop(heap)
            self.stats.certificates_explored += 1
            if len(t) > self.stats.max_certificate_length:
                self.stats.max_certificate_length = len(t)
            yield t
            for u in grow(t):
                push(u)

    def _forward(self, t):
        return [t + (n,) for n in self.k.succ[t[-1]]]

    def _backward(self, t):
        return [(p,) + t for p in self.k.pred[t[0]]]

    def certificates(self, anchor, forward=True):
        """Certificates starting (forward) or ending (backward) at ``anchor``."""
        key = ("fwd" if forward else "bwd", anchor)
        s = self._streams.get(key)
        if s is None:
            grow = self._forward if forward else self._backward
            s = self._streams[key] = _Stream(self._explore([(anchor,)], grow))
        return s

    def witnesses(self, t, mod):
        """~B-witnesses (right extensions) or ~E-witnesses (left extensions) of ``t``."""
        key = (mod, t)
        s = self._streams.get(key)
        if s is None:
            if mod is Mod.B_INV:
                gen = self._explore(self._forward(t), self._forward)
            elif mod is Mod.E_INV:
                gen = self._explore(self._backward(t), self._backward)
            else:
                raise ValueError(f"no witnesses for modality {mod}")
            s = self._streams[key] = _Stream(gen)
        return s

    # -- alternating procedures -----------------------------------------------

    def _atom(self, r, t):
        a = self._nfas.get(r)
        if a is None:
            a = self._nfas[r] = compile_regex(r)
        return accepts(a, [self.k.labels[i] for i in t])

    def _cached(self, mode, f, t):
        """Outcome of the single obligation (f, t) in True (valid) or False (not valid) mode.

        The two modes are exact duals: they branch on the same options and stop
        at the same one, so they share one memo entry and one switch count.
        """
        key = (f, t)
        got = self._memo.get(key)
        if got is None:
            got = self._memo[key] = self._single(f, t)
        return got if mode else (not got[0], got[1])

    def _single(self, f, t):
        typ = type(f)
        if typ is Atom:
            return bool(self._atom(f.regex, t)), 0
        if typ is NegAtom:
            return not self._atom(f.regex, t), 0
        if typ is And:
            return self._forall(True, ((f.left, t), (f.right, t)))
        if typ is Or:
            return self._exists(True, ((f.left, t), (f.right, t)))
        mod = f.mod
        if mod is Mod.A:
            return self.lab.holds(t[-1], f), 0
        if mod is Mod.A_INV:
            return self.lab.holds(t[0], f), 0
        if mod is Mod.B:
            pairs = ((f.arg, p) for p in self._prefixes(t))
            return self._exists(True, pairs) if typ is Diamond else self._forall(True, pairs)
        if mod is Mod.B_INV or mod is Mod.E_INV:
            if typ is Diamond:
                return self._exists(True, ((f.arg, w) for w in self.witnesses(t, mod)))
            # a universal singleton: hand its dual over to the False mode
            v, r = self._cached(False, dual(f), t)
            return v, r + 1
        raise FragmentError(f"modality {mod} is not supported by the checker")

    def _prefixes(self, t):
        got = self._prefix_lists.get(t)
        if got is None:
            got = self._prefix_lists[t] = proper_prefixes(t)
        return got

    def _exists(self, mode, pairs):
        rel = 0
        memo = self._memo
        for f, t in pairs:
            got = memo.get((f, t))
            if got is None:
                got = memo[f, t] = self._single(f, t)
            v, r = got
            if r > rel:
                rel = r
            if v == mode:
                return True, rel
        return False, rel

    def _forall(self, mode, pairs):
        rel = 0
        memo = self._memo
        for f, t in pairs:
            got = memo.get((f, t))
            if got is None:
                got = memo[f, t] = self._single(f, t)
            v, r = got
            if r > rel:
                rel = r
            if v != mode:
                return False, rel
        return True, rel

    def _pick(self, W):
        for i, (f, _) in enumerate(W):
            if not _universal(f):
                return W.pop(i)
        return None

    def _true(self, W):
        """(W is valid, most True/False switches below this call)."""
        W = list(W)
        rel = 0
        while True:
            item = self._pick(W)
            if item is None:
                break
            f, t = item
            typ = type(f)
            if typ is Atom:
                if not self._atom(f.regex, t):
                    return False, rel
            elif typ is NegAtom:
                if self._atom(f.regex, t):
                    return False, rel
            elif typ is And:
                W += [(f.left, t), (f.right, t)]
            elif typ is Or:
                v, r = self._exists(True, ((g, t) for g in (f.left, f.right)))
                rel = max(rel, r)
                if not v:
                    return False, rel
            elif f.mod is Mod.A:
                if not self.lab.holds(t[-1], f):
                    return False, rel
            elif f.mod is Mod.A_INV:
                if not self.lab.holds(t[0], f):
                    return False, rel
            elif f.mod is Mod.B:
                if typ is Box:
                    W += [(f.arg, p) for p in self._prefixes(t)]
                else:
                    v, r = self._exists(True, ((f.arg, p) for p in self._prefixes(t)))
                    rel = max(rel, r)
                    if not v:
                        return False, rel
            elif typ is Diamond and f.mod in (Mod.B_INV, Mod.E_INV):
                v, r = self._exists(True, ((f.arg, w) for w in self.witnesses(t, f.mod)))
                rel = max(rel, r)
                if not v:
                    return False, rel
            else:
                raise FragmentError(f"modality {f.mod} is not supported by the checker")
        if not W:
            return True, rel
        v, r = self._forall(False, ((dual(f), t) for f, t in W))
        return v, max(rel, r + 1)

    def _false(self, W):
        """(W is not valid, most True/False switches below this call)."""
        W = list(W)
        rel = 0
        while True:
            item = self._pick(W)
            if item is None:
                break
            f, t = item
            typ = type(f)
            if typ is Atom:
                if not self._atom(f.regex, t):
                    return True, rel
            elif typ is NegAtom:
                if self._atom(f.regex, t):
                    return True, rel
            elif typ is And:
                W += [(f.left, t), (f.right, t)]
            elif typ is Or:
                v, r = self._forall(False, ((g, t) for g in (f.left, f.right)))
                rel = max(rel, r)
                if v:
                    return True, rel
            elif f.mod is Mod.A:
                if not self.lab.holds(t[-1], f):
                    return True, rel
            elif f.mod is Mod.A_INV:
                if not self.lab.holds(t[0], f):
                    return True, rel
            elif f.mod is Mod.B:
                if typ is Box:
                    W += [(f.arg, p) for p in self._prefixes(t)]
                else:
                    v, r = self._forall(False, ((f.arg, p) for p in self._prefixes(t)))
                    rel = max(rel, r)
                    if v:
                        return True, rel
            elif typ is Diamond and f.mod in (Mod.B_INV, Mod.E_INV):
                v, r = self._forall(False, ((f.arg, w) for w in self.witnesses(t, f.mod)))
                rel = max(rel, r)
                if v:
                    return True, rel
            else:
                raise FragmentError(f"modality {f.mod} is not supported by the checker")
        if not W:
            return False, rel
        v, r = self._exists(True, ((dual(f), t) for f, t in W))
        return v, max(rel, r + 1)

    def holds(self, f, t):
        """Validity of the single obligation (f, t), memoized."""
        v, r = self._cached(True, f, t)
        self.stats.mode_switches = max(self.stats.mode_switches, r)
        return v

    def check_true(self, W):
        v, r = self._true(W)
        self.stats.mode_switches = max(self.stats.mode_switches, r)
        return v

    def check_false(self, W):
        v, r = self._false(W)
        self.stats.mode_switches = max(self.stats.mode_switches, r)
        return v

    # -- labeling and top level -------------------------------------------------

    def compute_labeling(self, phi):
        """Label every A/~A subformula of ``phi`` (with its dual), children first."""
        r = self._label_rel.get(phi)
        if r is None:
            r = 0
            for c in children(phi):
                self.compute_labeling(c)
                r = max(r, self._label_rel[c])
            typ = type(phi)
            if (typ is Diamond or typ is Box) and phi.mod in (Mod.A, Mod.A_INV):
                g = phi if typ is Diamond else dual(phi)
                r = max(r, self._label(g))
            self._label_rel[phi] = r
        # switches spent on labeling count towards every formula that needs it
        self.stats.mode_switches = max(self.stats.mode_switches, r)
        return self.lab

    def _label(self, g):
        r = self._label_rel.get(("lab", g))
        if r is not None:
            return r
        # the argument of the dual form has dual subformulas: label those too
        self.compute_labeling(g.arg)
        r = self._label_rel[g.arg]
        forward = g.mod is Mod.A
        g_dual = dual(g)
        for s in range(len(self.k.states)):
            hit = False
            for t in self.certificates(s, forward):
                v, rr = self._cached(True, g.arg, t)
                r = max(r, rr)
                if v:
                    hit = True
                    break
            self.lab.set(s, g, hit, g_dual)
        self._label_rel[("lab", g)] = r
        return r

    def model_check(self, phi, anchor_end=False):
        """First failing certificate anchored at the initial state, or None."""
        self.compute_labeling(phi)
        for t in self.certificates(self.k.s0, forward=not anchor_end):
            if not self.holds(phi, t):
                return t
        return None


def prepare(k, phi):
    """Normalize ``phi`` and pick the structure/orientation it is checked on.

    Returns ``(structure, formula, reversed)``; mirror-fragment formulas are
    checked on the reversed structure over traces ending in the initial state.
    """
    f = to_pnf(phi)
    mods = modalities(f)
    if mods <= FRAGMENT:
        return k, f, False
    if mods <= MIRROR_FRAGMENT:
        return reverse(k), mirror(f), True
    raise FragmentError("formula is outside the AABBE and AAEBE fragments "
                        f"(uses {', '.join(sorted(m.value for m in mods))})")


def model_check(k, phi, cfg=None):
    cfg = cfg or CheckerConfig()
    kk, f, rev = prepare(k, phi)
    spec = SpecSet(atoms(f))
    ch = Checker(kk, spec, depth_b(f), cfg)
    cex = ch.model_check(f, anchor_end=rev)
    if cex is not None and rev:
        cex = cex[::-1]
    return Verdict(satisfied=cex is None,
                   trace=cex if cfg.witness else None,
                   complete=not ch.capped,
                   stats=ch.stats if cfg.collect_stats else Stats(),
                   bound=ch.effective_bound)


# -- thin functional wrappers ------------------------------------------------------

def enumerate_certificates(k, spec, h, anchor, direction="forward", cfg=None):
    ch = Checker(k, spec, h, cfg)
    return iter(ch.certificates(anchor, forward=direction == "forward"))


def x_witnesses(k, spec, h, t, mod, cfg=None):
    ch = Checker(k, spec, h, cfg)
    return iter(ch.witnesses(tuple(t), mod))


def compute_labeling(k, spec, phi, cfg=None):
    ch = Checker(k, spec, depth_b(phi), cfg)
    return ch.compute_labeling(phi)


def _checker_for(k, spec, W, cfg):
    h = max((depth_b(f) for f, _ in W), default=0)
    ch = Checker(k, spec, h, cfg)
    for f, _ in W:
        ch.compute_labeling(f)
    return ch


def check_true(k, spec, W, cfg=None):
    """Validity of the obligation list ``W``; the labeling is computed on the fly."""
    return _checker_for(k, spec, W, cfg).check_true(W)


def check_false(k, spec, W, cfg=None):
    return _checker_for(k, spec, W, cfg).check_false(W)
