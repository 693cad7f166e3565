"""HS formulas with regular-expression atoms: parsing, PNF, duals and measures."""

import enum
import re

from .errors import ParseError
from .relang import _node, parse_regex, regex_size, reverse_regex


class Mod(str, enum.Enum):
    A = "A"
    A_INV = "~A"
    B = "B"
    B_INV = "~B"
    E = "E"
    E_INV = "~E"

    def __str__(self):
        return self.value


FRAGMENT = frozenset({Mod.A, Mod.A_INV, Mod.B, Mod.B_INV, Mod.E_INV})
MIRROR_FRAGMENT = frozenset({Mod.A, Mod.A_INV, Mod.E, Mod.B_INV, Mod.E_INV})
EXTENDING = frozenset({Mod.B_INV, Mod.E_INV})


@_node
class Atom:
    regex: object

    def __str__(self):
        return "{%s}" % self.regex


@_node
class NegAtom:
    regex: object

    def __str__(self):
        return "~{%s}" % self.regex


@_node
class Not:
    arg: object

    def __str__(self):
        return f"~{_wrap(self.arg, 4)}"


@_node
class And:
    left: object
    right: object

    def __str__(self):
        return f"{_wrap(self.left, 3)} & {_wrap(self.right, 3)}"


@_node
class Or:
    left: object
    right: object

    def __str__(self):
        return f"{_wrap(self.left, 2)} | {_wrap(self.right, 2)}"


@_node
class Diamond:
    mod: Mod
    arg: object

    def __str__(self):
        return f"<{self.mod}>{_wrap(self.arg, 4)}"


@_node
class Box:
    mod: Mod
    arg: object

    def __str__(self):
        return f"[{self.mod}]{_wrap(self.arg, 4)}"


_PREC = {Or: 2, And: 3, Not: 4, Diamond: 4, Box: 4, Atom: 5, NegAtom: 5}


def _wrap(f, prec):
    s = str(f)
    return f"({s})" if _PREC[type(f)] < prec else s


# -- parser -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(->|<~?[A-Za-z]>|\[~?[A-Za-z]\]|[~&|()])")
_MODS = {m.value: m for m in Mod}


def _tokenize(text):
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            return toks
        if text[pos] == "{":
            close = text.find("}", pos)
            if close < 0:
                raise ParseError("unterminated atom '{'", pos + 1)
            body = text[pos + 1:close]
            try:
                r = parse_regex(body)
            except ParseError as e:
                raise ParseError(f"bad regular expression in atom: {e}", pos + 1) from None
            toks.append((("atom", r), pos + 1))
            pos = close + 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos + 1)
        tok = m.group(1)
        if tok[0] in "<[" and len(tok) > 2:
            name = tok[1:-1]
            if name not in _MODS:
                raise ParseError(f"modality {tok} outside the supported set", pos + 1)
            toks.append((("diamond" if tok[0] == "<" else "box", _MODS[name]), pos + 1))
        else:
            toks.append((tok, pos + 1))
        pos = m.end()


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.end = len(text) + 1

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def pos(self):
        return self.toks[self.i][1] if self.i < len(self.toks) else self.end

    def take(self):
        if self.i >= len(self.toks):
            raise ParseError("unexpected end of input", self.end)
        self.i += 1
        return self.toks[self.i - 1][0]

    def parse(self):
        if not self.toks:
            raise ParseError("empty formula", 1)
        f = self.implication()
        if self.peek() is not None:
            raise ParseError(f"unexpected token {self.peek()!r}", self.pos())
        return f

    def implication(self):
        f = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Or(Not(f), self.implication())
        return f

    def disjunction(self):
        f = self.conjunction()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        pos = self.pos()
        t = self.take()
        if t == "~":
            return Not(self.unary())
        if isinstance(t, tuple):
            kind, val = t
            if kind == "atom":
                return Atom(val)
            node = Diamond if kind == "diamond" else Box
            return node(val, self.unary())
        if t == "(":
            f = self.implication()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos())
            self.take()
            return f
        raise ParseError(f"unexpected token {t!r}", pos)


def parse_formula(text):
    """Parse without normalizing; ``a -> b`` becomes ``~a | b``."""
    return _Parser(text).parse()


# -- normal forms -----------------------------------------------------------

def to_pnf(f, negate=False):
    t = type(f)
    if t is Atom:
        return NegAtom(f.regex) if negate else f
    if t is NegAtom:
        return Atom(f.regex) if negate else f
    if t is Not:
        return to_pnf(f.arg, not negate)
    if t is And:
        node = Or if negate else And
        return node(to_pnf(f.left, negate), to_pnf(f.right, negate))
    if t is Or:
        node = And if negate else Or
        return node(to_pnf(f.left, negate), to_pnf(f.right, negate))
    if t is Diamond:
        return (Box if negate else Diamond)(f.mod, to_pnf(f.arg, negate))
    if t is Box:
        return (Diamond if negate else Box)(f.mod, to_pnf(f.arg, negate))
    raise TypeError(f"not an HS formula: {f!r}")


def is_pnf(f):
    return all(type(g) is not Not for g in subformulas(f))


_DUALS = {}


def dual(f):
    """PNF of the negation of a PNF formula."""
    got = _DUALS.get(f)
    if got is None:
        got = _DUALS[f] = _dual(f)
    return got


def _dual(f):
    t = type(f)
    if t is Atom:
        return NegAtom(f.regex)
    if t is NegAtom:
        return Atom(f.regex)
    if t is And:
        return Or(dual(f.left), dual(f.right))
    if t is Or:
        return And(dual(f.left), dual(f.right))
    if t is Diamond:
        return Box(f.mod, dual(f.arg))
    if t is Box:
        return Diamond(f.mod, dual(f.arg))
    if t is Not:
        raise ValueError("dual() needs a formula in positive normal form")
    raise TypeError(f"not an HS formula: {f!r}")


def children(f):
    t = type(f)
    if t in (And, Or):
        return (f.left, f.right)
    if t in (Not, Diamond, Box):
        return (f.arg,)
    return ()


def subformulas(f):
    """Distinct subformulas in pre-order of first occurrence."""
    out = {}
    stack = [f]
    while stack:
        g = stack.pop()
        if g not in out:
            out[g] = None
            stack.extend(reversed(children(g)))
    return list(out)


def atoms(f):
    """Distinct regular expressions occurring in ``f``, in order of first occurrence."""
    return list(dict.fromkeys(g.regex for g in subformulas(f) if type(g) in (Atom, NegAtom)))


def modalities(f):
    return {g.mod for g in subformulas(f) if type(g) in (Diamond, Box)}


def node_count(f):
    return 1 + sum(node_count(c) for c in children(f))


def formula_size(f):
    """Non-atomic subformulas plus the total size of the atoms' expressions."""
    subs = subformulas(f)
    return (sum(1 for g in subs if type(g) is not Atom)
            + sum(regex_size(r) for r in atoms(f)))


def in_fragment(f, allowed=FRAGMENT):
    return modalities(f) <= allowed


# -- measures ---------------------------------------------------------------

def depth_b(f):
    t = type(f)
    if t in (Atom, NegAtom):
        return 0
    if t in (Diamond, Box) and f.mod is Mod.B:
        return 1 + depth_b(f.arg)
    return max(depth_b(c) for c in children(f))


def upsilon(f, last=None):
    """Alternation depth between existential and universal ~B / ~E modalities."""
    t = type(f)
    if t in (Diamond, Box) and f.mod in EXTENDING:
        kind = t
        bump = 1 if last is not None and last is not kind else 0
        return bump + upsilon(f.arg, kind)
    cs = children(f)
    return max((upsilon(c, last) for c in cs), default=0)


def sd_set(f):
    out = {}
    for g in subformulas(f):
        out.setdefault(g, None)
        out.setdefault(dual(g), None)
    return list(out)


def aa_set(f):
    return [g for g in sd_set(f) if type(g) in (Diamond, Box) and g.mod in (Mod.A, Mod.A_INV)]


# -- mirror fragment --------------------------------------------------------

_MIRROR = {Mod.A: Mod.A_INV, Mod.A_INV: Mod.A, Mod.B_INV: Mod.E_INV,
           Mod.E_INV: Mod.B_INV, Mod.E: Mod.B, Mod.B: Mod.E}


def mirror(f):
    """Time-reversed formula: holds on the reversed trace of the reversed structure."""
    t = type(f)
    if t in (Atom, NegAtom):
        return t(reverse_regex(f.regex))
    if t is Not:
        return Not(mirror(f.arg))
    if t in (And, Or):
        return t(mirror(f.left), mirror(f.right))
    return t(_MIRROR[f.mod], mirror(f.arg))
