"""Prefix samplings, sampling words, h-prefix bisimilarity and trace contraction.

Positions are 1-based throughout, as in the usual statement of the sampling
definitions; traces are tuples of state indices.
"""

from functools import lru_cache

from .summary import SummaryTable


def _table(k, spec, table=None):
    return table if table is not None else SummaryTable(k, spec)


def _skeleton(sums, i, j):
    """Prefix-skeleton sampling over a prefix-summary list (``sums[p-1]`` = S(rho(1,p)))."""
    if i == j:
        return [i]
    first = {}
    for p in range(i + 1, j):
        first.setdefault(sums[p - 1], p)
    return sorted({i, j, *first.values()})


def _sampling(sums, h):
    ps = sorted({1, len(sums)})
    for _ in range(h):
        nxt = set(ps)
        for a, b in zip(ps, ps[1:]):
            nxt.update(_skeleton(sums, a, b))
        if len(nxt) == len(ps):
            # later levels cannot add positions once a level adds none
            break
        ps = sorted(nxt)
    return ps


def _check_positions(t, i, j):
    if not (1 <= i <= j <= len(t)):
        raise ValueError(f"positions must satisfy 1 <= i <= j <= {len(t)}, got [{i}, {j}]")


def prefix_skeleton_sampling(k, spec, t, i, j, table=None):
    _check_positions(t, i, j)
    k.check_trace(t)
    return tuple(_skeleton(_table(k, spec, table).prefix_summaries(t), i, j))


def h_prefix_sampling(k, spec, t, h, table=None):
    k.check_trace(t)
    return tuple(_sampling(_table(k, spec, table).prefix_summaries(t), h))


def sampling_word(k, spec, t, h, table=None):
    k.check_trace(t)
    sums = _table(k, spec, table).prefix_summaries(t)
    return tuple(sums[p - 1] for p in _sampling(sums, h))


def is_h_prefix_bisimilar(k, spec, t1, t2, h, table=None):
    """Direct doubly-recursive decision of the inductive definition."""
    k.check_trace(t1)
    k.check_trace(t2)
    tab = _table(k, spec, table)
    s1 = tab.prefix_summaries(t1)
    s2 = tab.prefix_summaries(t2)

    @lru_cache(maxsize=None)
    def bis(n1, n2, d):
        if s1[n1 - 1] != s2[n2 - 1]:
            return False
        if d == 0:
            return True
        return (all(any(bis(a, b, d - 1) for b in range(1, n2)) for a in range(1, n1))
                and all(any(bis(a, b, d - 1) for a in range(1, n1)) for b in range(1, n2)))

    return bis(len(t1), len(t2), h)


def _find_pair(sums, h):
    """Leftmost (l, l') strictly inside two consecutive sampled positions with equal summaries."""
    ps = _sampling(sums, h)
    for a, b in zip(ps, ps[1:]):
        count = {}
        for p in range(a + 1, b):
            count[sums[p - 1]] = count.get(sums[p - 1], 0) + 1
        for l in range(a + 1, b):
            s = sums[l - 1]
            if count[s] > 1:
                l2 = next(r for r in range(l + 1, b) if sums[r - 1] == s)
                return l, l2
    return None


def contract_counted(table, t, h):
    """Contract to a fixed point; returns (trace, number of contraction steps)."""
    sums = list(table.prefix_summaries(t))
    t = list(t)
    steps = 0
    while True:
        pair = _find_pair(sums, h)
        if pair is None:
            return tuple(t), steps
        l, l2 = pair
        # drop positions l+1..l2; later prefix summaries are unchanged by congruence
        del t[l:l2]
        del sums[l:l2]
        steps += 1


def contract(k, spec, t, h, table=None):
    k.check_trace(t)
    return contract_counted(_table(k, spec, table), tuple(t), h)[0]


def certificate_bound(k, spec, h):
    return (len(k.states) * 2 ** ((2 * spec.size) ** 2)) ** (h + 2)


def skeleton_bound(k, spec):
    return len(k.states) * 2 ** ((2 * spec.size) ** 2) + 2


def sampling_bound(k, spec, h):
    return (len(k.states) * 2 ** ((2 * spec.size) ** 2)) ** (h + 1)
