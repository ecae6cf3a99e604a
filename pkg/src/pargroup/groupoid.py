"""The groupoid of pairs ``(A, g)`` and exact arithmetic in its algebra.

An arrow ``(A, g)`` has ``e`` and ``g^-1`` in ``A``; its source vertex is
``A`` and its range vertex is ``gA``. Two arrows compose as
``(hB, g) . (B, h) = (B, gh)``.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Mapping, NamedTuple

import numpy as np

from .errors import DimensionBoundExceeded, DirectBoundExceeded, GroupMismatch, InvalidInput
from .groups import FiniteGroup, Subgroup, elements_of, popcount

DEFAULT_MAX_DIRECT = 20
DEFAULT_MAX_DIMENSION = 1024


def direct_bound() -> int:
    return int(os.environ.get("PARGROUP_MAX_DIRECT", DEFAULT_MAX_DIRECT))


def check_direct_bound(g: FiniteGroup, bound: int | None = None) -> None:
    bound = direct_bound() if bound is None else bound
    if g.order > bound:
        raise DirectBoundExceeded(
            f"|G| = {g.order} exceeds the direct-enumeration bound {bound} "
            "(set PARGROUP_MAX_DIRECT to raise it)"
        )


class Arrow(NamedTuple):
    A: int
    g: int


def arrow_key(x: Arrow) -> tuple[int, int, int]:
    """Canonical basis order: ``(|A|, A bits, g)``."""
    return (popcount(x.A), x.A, x.g)


def is_arrow(g: FiniteGroup, x: Arrow) -> bool:
    return bool((x.A >> g.identity) & 1 and (x.A >> g.inv[x.g]) & 1)


def arrow_source(x: Arrow) -> int:
    return x.A


def arrow_range(g: FiniteGroup, x: Arrow) -> int:
    return g.translate(x.g, x.A)


def arrow_inverse(g: FiniteGroup, x: Arrow) -> Arrow:
    return Arrow(g.translate(x.g, x.A), g.inv[x.g])


def arrow_compose(g: FiniteGroup, x: Arrow, y: Arrow) -> Arrow | None:
    """``x . y``, defined when the source of ``x`` is the range of ``y``."""
    if x.A != g.translate(y.g, y.A):
        return None
    return Arrow(y.A, g.mul[x.g][y.g])


def subsets_with_identity(g: FiniteGroup, required: int = 0) -> Iterator[int]:
    """All subsets containing ``e`` and every element of ``required``, ascending."""
    fixed = required | (1 << g.identity)
    free = [x for x in range(g.order) if not (fixed >> x) & 1]
    for r in range(1 << len(free)):
        a = fixed
        i = 0
        while r:
            if r & 1:
                a |= 1 << free[i]
            r >>= 1
            i += 1
        yield a


def all_arrows(g: FiniteGroup) -> list[Arrow]:
    arrows = [Arrow(a, x) for a in subsets_with_identity(g) for x in range(g.order) if (a >> g.inv[x]) & 1]
    arrows.sort(key=arrow_key)
    return arrows


def arrow_count(n: int) -> int:
    return 1 if n == 1 else 2 ** (n - 2) * (n + 1)


# -- vertex census --------------------------------------------------------

def _translate_many(masks: np.ndarray, row) -> np.ndarray:
    out = np.zeros_like(masks)
    for j, target in enumerate(row):
        out |= ((masks >> np.uint64(j)) & np.uint64(1)) << np.uint64(target)
    return out


def vertex_census(g: FiniteGroup, bound: int | None = None):
    """Vectorized pass over all vertices ``A``.

    Returns ``(masks, stab, base)`` as ``uint64`` arrays: every subset
    containing ``e``, its stabilizer ``{x : xA = A}``, and the smallest
    vertex of its connected component (the set ``{t^-1 A : t in A}``).
    """
    check_direct_bound(g, bound)
    n, e = g.order, g.identity
    if n > 63:
        raise DirectBoundExceeded("vertex census supports |G| <= 63")
    rest = np.arange(1 << (n - 1), dtype=np.uint64)
    low_mask = np.uint64((1 << e) - 1)
    masks = (rest & low_mask) | np.uint64(1 << e) | ((rest >> np.uint64(e)) << np.uint64(e + 1))
    stab = np.zeros_like(masks)
    base = masks.copy()
    for x in range(n):
        moved = _translate_many(masks, g.mul[x])
        stab |= (moved == masks).astype(np.uint64) << np.uint64(x)
        # moved = t^-1 A with t = x^-1, a vertex of the component when t in A
        t = g.inv[x]
        usable = ((masks >> np.uint64(t)) & np.uint64(1)).astype(bool)
        base = np.where(usable & (moved < base), moved, base)
    return masks, stab, base


@dataclass(frozen=True)
class Component:
    """A connected component: ``m`` vertices, the isotropy group of the
    smallest vertex, and arrows from that vertex to each vertex."""

    vertices: tuple[int, ...]
    isotropy: Subgroup
    transversal: tuple[Arrow, ...]

    @property
    def m(self) -> int:
        return len(self.vertices)

    @property
    def base(self) -> int:
        return self.vertices[0]

    @property
    def level(self) -> int:
        return popcount(self.vertices[0])


@dataclass
class PartialGroupoid:
    group: FiniteGroup
    levels: dict[int, list[int]]
    components: list[Component]

    def level_sizes(self) -> list[int]:
        return [len(self.levels[k]) for k in range(1, self.group.order + 1)]

    def arrow_count(self) -> int:
        # each vertex A is the source of exactly |A| arrows
        return sum(k * len(vs) for k, vs in self.levels.items())

    def components_at(self, level: int) -> list[Component]:
        return [c for c in self.components if c.level == level]


def build_groupoid(g: FiniteGroup, bound: int | None = None) -> PartialGroupoid:
    masks, stab, base = vertex_census(g, bound)
    levels: dict[int, list[int]] = {k: [] for k in range(1, g.order + 1)}
    for a in masks.tolist():
        levels[popcount(a)].append(a)
    members: dict[int, list[int]] = defaultdict(list)
    for a, b in zip(masks.tolist(), base.tolist()):
        members[b].append(a)
    stab_of = dict(zip(masks.tolist(), stab.tolist()))
    components = []
    for b in sorted(members, key=lambda v: (popcount(v), v)):
        verts = tuple(sorted(members[b]))
        iso = stab_of[b]
        arrows: dict[int, Arrow] = {}
        for t in elements_of(b):
            ti = g.inv[t]
            v = g.translate(ti, b)
            if v not in arrows:
                arrows[v] = Arrow(b, ti)
        components.append(Component(verts, Subgroup(popcount(iso), iso), tuple(arrows[v] for v in verts)))
    return PartialGroupoid(g, levels, components)


# -- groupoid algebra -----------------------------------------------------

class AlgebraElement:
    """A finite linear combination of arrows with rational coefficients."""

    __slots__ = ("group", "terms")

    def __init__(self, group: FiniteGroup, terms: Mapping[Arrow, Fraction] | None = None):
        self.group = group
        self.terms: dict[Arrow, Fraction] = {}
        for x, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[Arrow(*x)] = c

    @classmethod
    def arrow(cls, group: FiniteGroup, x: Arrow, coeff=1) -> AlgebraElement:
        return cls(group, {x: Fraction(coeff)})

    def _check(self, other: AlgebraElement) -> None:
        if not isinstance(other, AlgebraElement) or other.group != self.group:
            raise GroupMismatch("algebra elements live over different groups")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for x, c in other.terms.items():
            terms[x] = terms.get(x, 0) + c
        return AlgebraElement(self.group, terms)

    def __neg__(self):
        return AlgebraElement(self.group, {x: -c for x, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraElement(self.group, {x: c * other for x, c in self.terms.items()})
        self._check(other)
        g = self.group
        by_range: dict[int, list[tuple[Arrow, Fraction]]] = defaultdict(list)
        for y, c in other.terms.items():
            by_range[g.translate(y.g, y.A)].append((y, c))
        terms: dict[Arrow, Fraction] = defaultdict(Fraction)
        for x, a in self.terms.items():
            row = g.mul[x.g]
            for y, b in by_range.get(x.A, ()):
                terms[Arrow(y.A, row[y.g])] += a * b
        return AlgebraElement(g, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.group == other.group and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"AlgebraElement({len(self.terms)} terms)"

    def sorted_terms(self) -> list[tuple[Arrow, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: arrow_key(kv[0]))


def algebra_add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x + y


def algebra_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def algebra_scale(x: AlgebraElement, c) -> AlgebraElement:
    return x * Fraction(c)


def algebra_unit(g: FiniteGroup) -> AlgebraElement:
    e = g.identity
    return AlgebraElement(g, {Arrow(a, e): 1 for a in subsets_with_identity(g)})


def lambda_par(g: FiniteGroup, x: int) -> AlgebraElement:
    """Sum of all arrows ``(A, x)`` with ``x^-1`` in ``A``."""
    return AlgebraElement(g, {Arrow(a, x): 1 for a in subsets_with_identity(g, 1 << g.inv[x])})


def lambda_product(g: FiniteGroup, word) -> AlgebraElement:
    out = algebra_unit(g)
    for x in word:
        out = out * lambda_par(g, x)
    return out


def arrow_from_lambdas(g: FiniteGroup, b: int, h: int) -> AlgebraElement:
    """Rebuild the basis arrow ``(B, h)`` from products of ``lambda_par``.

    A product ``lambda(g_k)...lambda(g_1)`` with partial products running
    through the inverses of ``B`` yields the sum of ``(A, h)`` over all
    ``A`` containing ``B``; inclusion-exclusion over ``G \\ B`` then
    isolates ``(B, h)``.
    """
    if not is_arrow(g, Arrow(b, h)):
        raise InvalidInput("not an arrow: B must contain e and h^-1")
    mul, inv = g.mul, g.inv
    cache: dict[tuple[int, int], AlgebraElement] = {}

    def supersets(bb: int) -> AlgebraElement:
        rest = [inv[x] for x in elements_of(bb) if x != inv[h]]
        # partial products g_j ... g_1 must be the b_j listed in rest, then h
        word, prev = [], g.identity
        for target in rest + [h]:
            word.append(mul[target][inv[prev]])
            prev = target
        return lambda_product(g, reversed(word))

    def avoiding(bb: int, excluded: int) -> AlgebraElement:
        key = (bb, excluded)
        if key not in cache:
            if not excluded:
                cache[key] = supersets(bb)
            else:
                x = excluded & -excluded
                rest = excluded ^ x
                cache[key] = avoiding(bb, rest) - avoiding(bb | x, rest)
        return cache[key]

    return avoiding(b, g.full_mask & ~b)


def left_regular_matrix(g: FiniteGroup, x: AlgebraElement, *, max_dimension: int = DEFAULT_MAX_DIMENSION) -> np.ndarray:
    """Matrix of ``y -> x*y`` in the canonical arrow basis (object array of Fractions)."""
    if x.group != g:
        raise GroupMismatch("element belongs to a different group")
    dim = arrow_count(g.order)
    if dim > max_dimension:
        raise DimensionBoundExceeded(f"dimension {dim} exceeds bound {max_dimension}")
    basis = all_arrows(g)
    pos = {a: i for i, a in enumerate(basis)}
    by_range: dict[int, list[Arrow]] = defaultdict(list)
    for y in basis:
        by_range[g.translate(y.g, y.A)].append(y)
    out = np.full((dim, dim), Fraction(0), dtype=object)
    for a, c in x.terms.items():
        for y in by_range[a.A]:
            out[pos[Arrow(y.A, g.mul[a.g][y.g])], pos[y]] += c
    return out


# -- text format ----------------------------------------------------------

def dumps_element(x: AlgebraElement) -> str:
    return "".join(
        f"{c.numerator}/{c.denominator} {a.A:x} {a.g}\n" for a, c in x.sorted_terms()
    )


def loads_element(g: FiniteGroup, text: str) -> AlgebraElement:
    terms: dict[Arrow, Fraction] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        toks = line.split()
        if len(toks) != 3:
            raise InvalidInput(f"line {lineno}: expected '<num>/<den> <A-hex> <g>'")
        try:
            c, a, x = Fraction(toks[0]), int(toks[1], 16), int(toks[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"line {lineno}: {exc}") from None
        arrow = Arrow(a, x)
        if x >= g.order or a >> g.order or not is_arrow(g, arrow):
            raise InvalidInput(f"line {lineno}: not an arrow of this groupoid")
        if arrow in terms:
            raise InvalidInput(f"line {lineno}: duplicate arrow")
        terms[arrow] = c
    return AlgebraElement(g, terms)


def level_vertex_count(n: int, k: int) -> int:
    return comb(n - 1, k - 1)
