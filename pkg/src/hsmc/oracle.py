"""Reference semantics of HS over a Kripke structure with a trace-length bound.

Every trace quantifier ranges over traces of length at most ``L``. The
verdicts are exact only for formulas whose truth does not depend on longer
traces; callers should report ``L`` with every verdict.
"""

from .hsformula import And, Atom, Box, Diamond, Mod, NegAtom, Not, Or
from .kripke import proper_prefixes, proper_suffixes
from .relang import accepts, compile_regex


class Oracle:
    def __init__(self, k, bound):
        if bound < 1:
            raise ValueError("trace bound must be positive")
        self.k = k
        self.bound = bound
        self._memo = {}
        self._nfa = {}
        self._fwd = {}
        self._bwd = {}
        self._rel = {}
        self._ids = {}
        self._traces = []
        self._initial = None

    def paths_from(self, s, maxlen):
        """All traces starting at ``s`` of length <= maxlen, shortest first."""
        key = (s, maxlen)
        got = self._fwd.get(key)
        if got is None:
            got, layer = [], [(s,)]
            while layer and len(layer[0]) <= maxlen:
                got.extend(layer)
                layer = [t + (n,) for t in layer for n in self.k.succ[t[-1]]]
            self._fwd[key] = got
        return got

    def paths_to(self, s, maxlen):
        key = (s, maxlen)
        got = self._bwd.get(key)
        if got is None:
            got, layer = [], [(s,)]
            while layer and len(layer[0]) <= maxlen:
                got.extend(layer)
                layer = [(p,) + t for t in layer for p in self.k.pred[t[0]]]
            self._bwd[key] = got
        return got

    def _id(self, t):
        i = self._ids.get(t)
        if i is None:
            i = self._ids[t] = len(self._traces)
            self._traces.append(t)
        return i

    def _accepts(self, r, t):
        a = self._nfa.get(r)
        if a is None:
            a = self._nfa[r] = compile_regex(r)
        return accepts(a, [self.k.labels[i] for i in t])

    def related(self, mod, t):
        """Traces related to ``t`` by the Allen relation of ``mod`` (within the bound)."""
        return [self._traces[i] for i in self._related_ids(mod, self._id(t))]

    def _related_ids(self, mod, i):
        key = (mod, i)
        got = self._rel.get(key)
        if got is None:
            got = self._rel[key] = [self._id(u) for u in self._related(mod, self._traces[i])]
        return got

    def _related(self, mod, t):
        L = self.bound
        if mod is Mod.B:
            return proper_prefixes(t)
        if mod is Mod.E:
            return proper_suffixes(t)
        if mod is Mod.B_INV:
            return [t + ext[1:] for ext in self.paths_from(t[-1], L - len(t) + 1) if len(ext) > 1]
        if mod is Mod.E_INV:
            return [ext[:-1] + t for ext in self.paths_to(t[0], L - len(t) + 1) if len(ext) > 1]
        if mod is Mod.A:
            return self.paths_from(t[-1], L)
        if mod is Mod.A_INV:
            return self.paths_to(t[0], L)
        raise ValueError(f"unsupported modality {mod}")

    def holds(self, t, f):
        return self._holds(self._id(tuple(t)), f)

    def _holds(self, i, f):
        # traces are interned: the memo and relation tables are keyed by trace id
        key = (i, f)
        got = self._memo.get(key)
        if got is not None:
            return got
        typ = type(f)
        if typ is Atom:
            v = self._accepts(f.regex, self._traces[i])
        elif typ is NegAtom:
            v = not self._accepts(f.regex, self._traces[i])
        elif typ is Not:
            v = not self._holds(i, f.arg)
        elif typ is And:
            v = self._holds(i, f.left) and self._holds(i, f.right)
        elif typ is Or:
            v = self._holds(i, f.left) or self._holds(i, f.right)
        elif typ is Diamond:
            v = False
            for u in self._related_ids(f.mod, i):
                if self._holds(u, f.arg):
                    v = True
                    break
        elif typ is Box:
            v = True
            for u in self._related_ids(f.mod, i):
                if not self._holds(u, f.arg):
                    v = False
                    break
        else:
            raise TypeError(f"not an HS formula: {f!r}")
        self._memo[key] = v
        return v

    def initial_traces(self):
        """Initial traces within the bound, shortest first, then lexicographic."""
        if self._initial is None:
            self._initial = sorted(self.paths_from(self.k.s0, self.bound), key=lambda u: (len(u), u))
        return self._initial

    def counterexample(self, f):
        """First initial trace violating ``f``, or None."""
        for t in self.initial_traces():
            if not self.holds(t, f):
                return t
        return None

    def model_check(self, f):
        return self.counterexample(f) is None


def oracle_holds(k, t, f, bound):
    k.check_trace(t)
    if len(t) > bound:
        raise ValueError(f"trace of length {len(t)} exceeds the bound {bound}")
    return Oracle(k, bound).holds(tuple(t), f)


def oracle_model_check(k, f, bound):
    return Oracle(k, bound).model_check(f)
