"""Brute-force reference computations used as independent test oracles.

Everything here works from the raw multiplication table with frozensets
and plain loops; nothing calls into the library's algorithms.
"""

from __future__ import annotations

import itertools
from collections import Counter
from math import comb


def table(g):
    return [list(row) for row in g.mul]


def identity(mul):
    return next(e for e in range(len(mul)) if all(mul[e][t] == t for t in range(len(mul))))


def inverse(mul, x):
    e = identity(mul)
    return next(y for y in range(len(mul)) if mul[x][y] == e)


def all_subgroups(mul):
    """Every subset closed under multiplication (finite, so a subgroup)."""
    n = len(mul)
    e = identity(mul)
    others = [x for x in range(n) if x != e]
    out = set()
    for r in range(n):
        for combo in itertools.combinations(others, r):
            s = frozenset((e,) + combo)
            if n % len(s):
                continue
            if all(mul[a][b] in s for a in s for b in s):
                out.add(s)
    return out


def conjugate_set(mul, g, s):
    gi = inverse(mul, g)
    return frozenset(mul[mul[g][x]][gi] for x in s)


def conjugacy_classes(mul):
    n = len(mul)
    seen, out = set(), []
    for x in range(n):
        if x in seen:
            continue
        cls = {mul[mul[g][x]][inverse(mul, g)] for g in range(n)}
        seen |= cls
        out.append(sorted(cls))
    return out


def normalizer(mul, s):
    return frozenset(g for g in range(len(mul)) if conjugate_set(mul, g, s) == s)


def commutator(mul, s):
    # a b a^-1 b^-1
    comms = {mul[mul[mul[a][b]][inverse(mul, a)]][inverse(mul, b)] for a in s for b in s}
    return closure(mul, comms)


def closure(mul, gens):
    e = identity(mul)
    out = {e} | set(gens)
    while True:
        new = {mul[a][b] for a in out for b in out} - out
        if not new:
            return frozenset(out)
        out |= new


def stabilizer(mul, a):
    return frozenset(g for g in range(len(mul)) if frozenset(mul[g][x] for x in a) == a)


def groupoid_components(mul):
    """Connected components of vertices ``A ∋ e`` under ``A ~ t^-1 A``."""
    n = len(mul)
    e = identity(mul)
    others = [x for x in range(n) if x != e]
    vertices = [frozenset((e,) + c) for r in range(n) for c in itertools.combinations(others, r)]
    seen, comps = set(), []
    for a in vertices:
        if a in seen:
            continue
        comp = {frozenset(mul[inverse(mul, t)][x] for x in a) for t in a}
        seen |= comp
        comps.append(comp)
    return comps


def component_census(mul):
    """Counter of ``(m, conjugacy class of the isotropy group)``."""
    out = Counter()
    for comp in groupoid_components(mul):
        base = next(iter(comp))
        h = stabilizer(mul, base)
        cls = frozenset(conjugate_set(mul, g, h) for g in range(len(mul)))
        out[(len(comp), cls)] += 1
    return out


def subgroup_class(mul, h):
    return frozenset(conjugate_set(mul, g, h) for g in range(len(mul)))


def arrows(mul):
    n = len(mul)
    e = identity(mul)
    out = []
    for r in range(n):
        for c in itertools.combinations([x for x in range(n) if x != e], r):
            a = frozenset((e,) + c)
            out += [(a, g) for g in range(n) if inverse(mul, g) in a]
    return out


def dimension_by_levels(n):
    return sum(k * comb(n - 1, k - 1) for k in range(1, n + 1))


def abelian_class_count(n):
    """Number of abelian groups of order ``n``: product of partition counts."""
    from sympy import factorint
    from sympy.functions.combinatorial.numbers import partition

    out = 1
    for _, e in factorint(n).items():
        out *= int(partition(e))
    return out


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den
