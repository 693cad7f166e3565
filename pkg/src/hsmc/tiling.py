"""Alternating multi-tiling instances: the hardness structure K_I and word-code validators.

Letters are plain strings: domino names, the counter bits ``r_0 r_1 c_0 c_1``,
the separator ``bot`` and the terminator ``end``. Counter bits are read most
significant first.
"""

from dataclasses import dataclass

from .errors import ParseError
from .kripke import IDENT, KripkeStructure

ROW = ("r_0", "r_1")
COL = ("c_0", "c_1")
BOT = "bot"
END = "end"
RESERVED = ROW + COL + (BOT, END)


@dataclass(frozen=True)
class TilingInstance:
    n: int
    dominoes: tuple
    initial: frozenset
    H: frozenset
    V: frozenset
    M: frozenset
    accepting: frozenset

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2 or self.n % 2:
            raise ValueError(f"n must be a positive even integer, got {self.n}")
        if not self.dominoes:
            raise ValueError("at least one domino type is required")
        if len(set(self.dominoes)) != len(self.dominoes):
            raise ValueError("duplicate domino type")
        for d in self.dominoes:
            if not IDENT.match(d) or d in RESERVED:
                raise ValueError(f"bad domino name {d!r}")
        ds = set(self.dominoes)
        for name in ("initial", "accepting"):
            extra = set(getattr(self, name)) - ds
            if extra:
                raise ValueError(f"{name} dominoes {sorted(extra)} are not declared")
        for name in ("H", "V", "M"):
            for a, b in getattr(self, name):
                if a not in ds or b not in ds:
                    raise ValueError(f"relation {name} uses undeclared domino in ({a}, {b})")

    @property
    def side(self):
        return 2 ** self.n

    @property
    def alphabet(self):
        return tuple(self.dominoes) + RESERVED


def make_instance(n, dominoes, initial=(), H=(), V=(), M=(), accepting=()):
    return TilingInstance(n, tuple(dominoes), frozenset(initial), frozenset(map(tuple, H)),
                          frozenset(map(tuple, V)), frozenset(map(tuple, M)), frozenset(accepting))


def gen_kripke(inst):
    """S = AP, identity labeling, s0 = end, every non-end state sees every state."""
    ap = inst.alphabet
    edges = [(s, t) for s in ap if s != END for t in ap]
    return KripkeStructure(ap, ap, edges, {s: {s} for s in ap}, END)


# -- instance files -----------------------------------------------------------

def parse_instance(text):
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("n", "dominoes", "initial", "H", "V", "M", "accepting"):
            raise ParseError(f"unrecognized line {raw.strip()!r}", f"line {lineno}")
        if key in fields:
            raise ParseError(f"duplicate field {key!r}", f"line {lineno}")
        fields[key] = (rest.strip(), lineno)
    for key in ("n", "dominoes"):
        if key not in fields:
            raise ParseError(f"missing field {key!r}", "end of file")

    def rel(key):
        body, lineno = fields.get(key, ("", 0))
        out = []
        for chunk in body.split("/"):
            parts = chunk.split()
            if not parts:
                continue
            if len(parts) != 2:
                raise ParseError(f"relation {key} needs pairs 'a b' separated by '/'", f"line {lineno}")
            out.append(tuple(parts))
        return out

    n_text, n_line = fields["n"]
    try:
        n = int(n_text)
    except ValueError:
        raise ParseError(f"n must be an integer, got {n_text!r}", f"line {n_line}") from None
    try:
        return make_instance(n, fields["dominoes"][0].split(),
                             fields.get("initial", ("", 0))[0].split(),
                             rel("H"), rel("V"), rel("M"),
                             fields.get("accepting", ("", 0))[0].split())
    except ValueError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e), "instance") from None


def serialize_instance(inst):
    def pairs(r):
        return " / ".join(f"{a} {b}" for a, b in sorted(r))

    order = {d: i for i, d in enumerate(inst.dominoes)}
    return "\n".join([
        f"n: {inst.n}",
        f"dominoes: {' '.join(inst.dominoes)}",
        f"initial: {' '.join(sorted(inst.initial, key=order.get))}",
        f"H: {pairs(inst.H)}",
        f"V: {pairs(inst.V)}",
        f"M: {pairs(inst.M)}",
        f"accepting: {' '.join(sorted(inst.accepting, key=order.get))}",
    ]) + "\n"


# -- encodings ------------------------------------------------------------------

def bits(value, n):
    """n-bit binary encoding, most significant bit first."""
    return [(value >> (n - 1 - i)) & 1 for i in range(n)]


def encode_multicell(inst, row, col, content):
    n = inst.n
    return (list(content) + [ROW[b] for b in bits(row, n)]
            + [COL[b] for b in bits(col, n)])


def encode_initial_cell(inst, col, d):
    return [d] + [COL[b] for b in bits(col, inst.n)]


def encode_initialized(w, inits):
    """bot.w.bot.w_n ... bot.w_1.end, with ``inits`` = [w_1, ..., w_n]."""
    out = [BOT] + list(w)
    for wl in reversed(inits):
        out += [BOT] + list(wl)
    return out + [END]


# -- validators -------------------------------------------------------------------

@dataclass(frozen=True)
class Invalid:
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class MultiCell:
    row: int
    col: int
    content: tuple


@dataclass(frozen=True)
class InitialCell:
    col: int
    content: str


def _read_bits(word, alphabet):
    value = 0
    for x in word:
        if x not in alphabet:
            return None
        value = 2 * value + alphabet.index(x)
    return value


def validate_multicell(inst, w):
    n = inst.n
    w = list(w)
    if len(w) != 3 * n:
        return Invalid("length")
    content = w[:n]
    if any(d not in inst.dominoes for d in content):
        return Invalid("multi-cell shape")
    row = _read_bits(w[n:2 * n], ROW)
    col = _read_bits(w[2 * n:], COL)
    if row is None or col is None:
        return Invalid("multi-cell shape")
    if any((a, b) not in inst.M for a, b in zip(content, content[1:])):
        return Invalid("multi-cell M-coherence")
    return MultiCell(row, col, tuple(content))


def _multicells(inst, w):
    size = 3 * inst.n
    if not w or len(w) % size:
        return Invalid("length")
    cells = []
    for i in range(0, len(w), size):
        c = validate_multicell(inst, w[i:i + size])
        if not c:
            return c
        cells.append(c)
    return cells


def validate_multitiling_code(inst, w):
    """Segmented multi-cell codes, or the first violated requirement."""
    cells = _multicells(inst, list(w))
    if not cells:
        return cells
    side = inst.side
    by_pos = {}
    for c in cells:
        by_pos.setdefault((c.row, c.col), set()).add(c.content)
    if len(by_pos) != side * side:
        return Invalid("completeness requirement")
    if any(len(v) > 1 for v in by_pos.values()):
        return Invalid("uniqueness requirement")
    grid = {pos: next(iter(v)) for pos, v in by_pos.items()}
    for (i, j), x in grid.items():
        right = grid.get((i, j + 1))
        if right is not None and any((a, b) not in inst.H for a, b in zip(x, right)):
            return Invalid("row-adjacency requirement")
    for (i, j), x in grid.items():
        below = grid.get((i + 1, j))
        if below is not None and any((a, b) not in inst.V for a, b in zip(x, below)):
            return Invalid("column-adjacency requirement")
    if not any(c.row == side - 1 and c.content[-1] in inst.accepting for c in cells):
        return Invalid("acceptance requirement")
    return cells


def validate_initialization_code(inst, w):
    w = list(w)
    size = inst.n + 1
    if not w or len(w) % size:
        return Invalid("length")
    cells = []
    for i in range(0, len(w), size):
        seg = w[i:i + size]
        col = _read_bits(seg[1:], COL)
        if col is None or seg[0] not in inst.dominoes:
            return Invalid("initial cell shape")
        if seg[0] not in inst.initial:
            return Invalid("initial domino")
        cells.append(InitialCell(col, seg[0]))
    by_col = {}
    for c in cells:
        by_col.setdefault(c.col, set()).add(c.content)
    if len(by_col) != inst.side:
        return Invalid("completeness requirement")
    if any(len(v) > 1 for v in by_col.values()):
        return Invalid("uniqueness requirement")
    return cells


def _split_bot(w):
    """Segments between separators; None unless the word is bot-led and end-terminated."""
    if len(w) < 2 or w[0] != BOT or w[-1] != END or END in w[:-1]:
        return None
    segs, cur = [], None
    for x in w[:-1]:
        if x == BOT:
            if cur is not None:
                segs.append(cur)
            cur = []
        else:
            cur.append(x)
    segs.append(cur)
    return segs


def validate_multi_initialization_code(inst, w):
    """Returns ``[w_1 cells, ..., w_n cells]`` for bot.w_n ... bot.w_1.end."""
    segs = _split_bot(list(w))
    if segs is None or len(segs) != inst.n:
        return Invalid("multi-initialization shape")
    out = []
    for seg in reversed(segs):
        cells = validate_initialization_code(inst, seg)
        if not cells:
            return cells
        out.append(cells)
    return out


def validate_initialized_code(inst, w):
    w = list(w)
    segs = _split_bot(w)
    if segs is None or len(segs) != inst.n + 1:
        return Invalid("initialized code shape")
    cells = validate_multitiling_code(inst, segs[0])
    if not cells:
        return cells
    inits = validate_multi_initialization_code(inst, w[len(segs[0]) + 1:])
    if not inits:
        return inits
    for c in cells:
        if c.row:
            continue
        for ell, d in enumerate(c.content):
            if InitialCell(c.col, d) not in inits[ell]:
                return Invalid("initialization coherence requirement")
    return cells, inits
