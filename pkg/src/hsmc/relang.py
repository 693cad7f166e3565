"""Propositional-based regular expressions and their complete NFAs.

Letters are sets of proposition names; regex atoms are propositional formulas
tested against one letter. Automata carry propositional guards so the
alphabet 2^AP is never materialized.
"""

import re
from dataclasses import dataclass

from .errors import ParseError


class _Interned(type):
    """Hash-consing: structurally equal nodes are the same object."""

    _table = {}

    def __call__(cls, *args, **kw):
        if kw:
            args += tuple(kw[f] for f in cls.__dataclass_fields__ if f in kw)
        key = (cls, *args)
        obj = _Interned._table.get(key)
        if obj is None:
            obj = _Interned._table[key] = super().__call__(*args)
        return obj


def _node(cls):
    """Immutable syntax node; equality and hashing are by identity after interning."""
    body = {k: v for k, v in cls.__dict__.items() if k not in ("__dict__", "__weakref__")}
    cls = _Interned(cls.__name__, cls.__bases__, body)
    return dataclass(frozen=True, eq=False)(cls)


# -- propositional formulas -------------------------------------------------

@_node
class PAtom:
    name: str

    def __str__(self):
        return self.name


@_node
class PConst:
    value: bool

    def __str__(self):
        return "true" if self.value else "false"


@_node
class PNot:
    arg: object

    def __str__(self):
        return f"!{_pwrap(self.arg, 3)}"


@_node
class PAnd:
    left: object
    right: object

    def __str__(self):
        return f"{_pwrap(self.left, 2)} & {_pwrap(self.right, 2)}"


@_node
class POr:
    left: object
    right: object

    def __str__(self):
        return f"{_pwrap(self.left, 1)} | {_pwrap(self.right, 1)}"


TRUE = PConst(True)
FALSE = PConst(False)

_PPREC = {POr: 1, PAnd: 2, PNot: 3, PAtom: 4, PConst: 4}


def _pwrap(f, prec):
    s = str(f)
    return f"({s})" if _PPREC[type(f)] < prec else s


def eval_prop(f, letter):
    """Does the label set ``letter`` satisfy ``f``?"""
    t = type(f)
    if t is PAtom:
        return f.name in letter
    if t is PConst:
        return f.value
    if t is PNot:
        return not eval_prop(f.arg, letter)
    if t is PAnd:
        return eval_prop(f.left, letter) and eval_prop(f.right, letter)
    if t is POr:
        return eval_prop(f.left, letter) or eval_prop(f.right, letter)
    raise TypeError(f"not a propositional formula: {f!r}")


def prop_atoms(f):
    if isinstance(f, PAtom):
        return {f.name}
    if isinstance(f, PConst):
        return set()
    if isinstance(f, PNot):
        return prop_atoms(f.arg)
    return prop_atoms(f.left) | prop_atoms(f.right)


# -- regular expressions ----------------------------------------------------

@_node
class Eps:
    def __str__(self):
        return "eps"


@_node
class Test:
    prop: object
    __test__ = False  # not a pytest class

    def __str__(self):
        return str(self.prop) if isinstance(self.prop, (PAtom, PConst)) else f"({self.prop})"


@_node
class Union:
    left: object
    right: object

    def __str__(self):
        return f"{_rwrap(self.left, 1)} + {_rwrap(self.right, 1)}"


@_node
class Concat:
    left: object
    right: object

    def __str__(self):
        return f"{_rwrap(self.left, 2)} . {_rwrap(self.right, 2)}"


@_node
class Star:
    arg: object

    def __str__(self):
        return f"{_rwrap(self.arg, 3)}*"


EPS = Eps()
_RPREC = {Union: 1, Concat: 2, Star: 3, Test: 4, Eps: 4}


def _rwrap(r, prec):
    s = str(r)
    return f"({s})" if _RPREC[type(r)] < prec else s


def regex_size(r):
    """Number of subexpression nodes; a test counts as one node."""
    t = type(r)
    if t in (Eps, Test):
        return 1
    if t is Star:
        return 1 + regex_size(r.arg)
    return 1 + regex_size(r.left) + regex_size(r.right)


def regex_props(r):
    t = type(r)
    if t is Eps:
        return set()
    if t is Test:
        return prop_atoms(r.prop)
    if t is Star:
        return regex_props(r.arg)
    return regex_props(r.left) | regex_props(r.right)


def reverse_regex(r):
    """Expression for the mirror-image language."""
    t = type(r)
    if t in (Eps, Test):
        return r
    if t is Star:
        return Star(reverse_regex(r.arg))
    if t is Union:
        return Union(reverse_regex(r.left), reverse_regex(r.right))
    return Concat(reverse_regex(r.right), reverse_regex(r.left))


# -- parser -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*)|([()!&|+.*]))")
KEYWORDS = {"eps", "true", "false"}


def _tokenize(text):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos + 1)
        toks.append((m.group(1) or m.group(2), m.start(m.lastindex) + 1))
        pos = m.end()
    return toks


class _RegexParser:
    """Recursive descent. Propositional operators bind tighter than regex ones.

    A parenthesised group is parsed as a regex; if it turns out to be a single
    test it may also serve as an operand of !, & and |.
    """

    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.end = len(text) + 1

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def pos(self):
        return self.toks[self.i][1] if self.i < len(self.toks) else self.end

    def take(self, tok=None):
        if self.i >= len(self.toks):
            raise ParseError("unexpected end of input", self.pos())
        t = self.toks[self.i][0]
        if tok is not None and t != tok:
            raise ParseError(f"expected {tok!r}, got {t!r}", self.pos())
        self.i += 1
        return t

    def parse(self):
        if not self.toks:
            raise ParseError("empty regular expression", 1)
        r = self.union()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r}", self.pos())
        return r

    def union(self):
        r = self.concat()
        while self.peek() == "+":
            self.take()
            r = Union(r, self.concat())
        return r

    def concat(self):
        r = self.starred()
        while self.peek() == ".":
            self.take()
            r = Concat(r, self.starred())
        return r

    def starred(self):
        r = self.prop_or()
        while self.peek() == "*":
            self.take()
            r = Star(r)
        return r

    def _combine(self, op, a, b, pos):
        if not (isinstance(a, Test) and isinstance(b, Test)):
            raise ParseError(f"operator {op!r} applied to a non-propositional expression", pos)
        return Test(PAnd(a.prop, b.prop) if op == "&" else POr(a.prop, b.prop))

    def prop_or(self):
        r = self.prop_and()
        while self.peek() == "|":
            pos = self.pos()
            self.take()
            r = self._combine("|", r, self.prop_and(), pos)
        return r

    def prop_and(self):
        r = self.prop_not()
        while self.peek() == "&":
            pos = self.pos()
            self.take()
            r = self._combine("&", r, self.prop_not(), pos)
        return r

    def prop_not(self):
        if self.peek() == "!":
            pos = self.pos()
            self.take()
            r = self.prop_not()
            if not isinstance(r, Test):
                raise ParseError("'!' applied to a non-propositional expression", pos)
            return Test(PNot(r.prop))
        return self.primary()

    def primary(self):
        pos = self.pos()
        t = self.take()
        if t == "(":
            r = self.union()
            self.take(")")
            return r
        if t == "eps":
            return EPS
        if t == "true":
            return Test(TRUE)
        if t == "false":
            return Test(FALSE)
        if t[0].isalpha() or t[0] == "_":
            return Test(PAtom(t))
        raise ParseError(f"unexpected {t!r}", pos)


def parse_regex(text):
    return _RegexParser(text).parse()


# -- automata ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Nfa:
    """Complete NFA over 2^AP with guarded transitions.

    States are ``0..n-1``; the last state is the non-accepting completion sink.
    """
    n: int
    initials: frozenset
    accepting: frozenset
    transitions: tuple  # (q, guard, q') in construction order
    owner_tag: str = ""

    def __post_init__(self):
        object.__setattr__(self, "_cache", {})
        object.__setattr__(self, "init_mask", _mask(self.initials))
        object.__setattr__(self, "acc_mask", _mask(self.accepting))

    @property
    def states(self):
        return tuple(range(self.n))

    def step_rows(self, letter):
        """Row q of the result is the bitmask of states reachable from q by reading ``letter``."""
        letter = frozenset(letter)
        rows = self._cache.get(letter)
        if rows is None:
            acc = [0] * self.n
            for q, g, q2 in self.transitions:
                if eval_prop(g, letter):
                    acc[q] |= 1 << q2
            rows = self._cache[letter] = tuple(acc)
        return rows


def _mask(states):
    m = 0
    for q in states:
        m |= 1 << q
    return m


def _bits(m):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def step_pairs(a, letter):
    rows = a.step_rows(letter)
    return {(q, q2) for q in range(a.n) for q2 in _bits(rows[q])}


def accepts(a, word):
    cur = a.init_mask
    for letter in word:
        rows = a.step_rows(letter)
        nxt = 0
        for q in _bits(cur):
            nxt |= rows[q]
        cur = nxt
        if not cur:
            return False
    return bool(cur & a.acc_mask)


class _Builder:
    def __init__(self):
        self.n = 0
        self.eps = []
        self.moves = []

    def new(self):
        self.n += 1
        return self.n - 1

    def build(self, r):
        """Thompson fragment for ``r``: (start, end), at most two states per node."""
        t = type(r)
        if t is Eps:
            s = self.new()
            return s, s
        if t is Test:
            s, e = self.new(), self.new()
            self.moves.append((s, r.prop, e))
            return s, e
        if t is Concat:
            s1, e1 = self.build(r.left)
            s2, e2 = self.build(r.right)
            self.eps.append((e1, s2))
            return s1, e2
        if t is Union:
            s, e = self.new(), self.new()
            for sub in (r.left, r.right):
                s1, e1 = self.build(sub)
                self.eps += [(s, s1), (e1, e)]
            return s, e
        if t is Star:
            s, e = self.new(), self.new()
            s1, e1 = self.build(r.arg)
            self.eps += [(s, s1), (s, e), (e1, s1), (e1, e)]
            return s, e
        raise TypeError(f"not a regular expression: {r!r}")


def compile_regex(r, tag=None):
    """Canonical complete NFA of ``r`` with at most 2*size(r)+1 states."""
    b = _Builder()
    start, end = b.build(r)
    eps_succ = [[] for _ in range(b.n)]
    for x, y in b.eps:
        eps_succ[x].append(y)

    def closure(q):
        seen = [q]
        stack = [q]
        while stack:
            for y in eps_succ[stack.pop()]:
                if y not in seen:
                    seen.append(y)
                    stack.append(y)
        return seen

    moves_from = [[] for _ in range(b.n)]
    for q, g, q2 in b.moves:
        moves_from[q].append((g, q2))
    letter_moves = {}
    accepting = set()
    for q in range(b.n):
        cl = closure(q)
        if end in cl:
            accepting.add(q)
        out = []
        for c in cl:
            for g, q2 in moves_from[c]:
                if (g, q2) not in out:
                    out.append((g, q2))
        letter_moves[q] = out

    # keep states reachable from start, numbered in discovery order
    order = [start]
    for q in order:
        for _, q2 in letter_moves[q]:
            if q2 not in order:
                order.append(q2)
    ren = {q: i for i, q in enumerate(order)}
    sink = len(order)
    trans = []
    for q in order:
        guards = []
        for g, q2 in letter_moves[q]:
            trans.append((ren[q], g, ren[q2]))
            guards.append(g)
        rest = TRUE if not guards else PNot(_disj(guards))
        trans.append((ren[q], rest, sink))
    trans.append((sink, TRUE, sink))
    return Nfa(n=sink + 1, initials=frozenset({0}),
               accepting=frozenset(ren[q] for q in order if q in accepting),
               transitions=tuple(trans), owner_tag=tag if tag is not None else str(r))


def _disj(gs):
    f = gs[0]
    for g in gs[1:]:
        f = POr(f, g)
    return f
