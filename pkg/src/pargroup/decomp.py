"""Block decomposition of the partial group algebra.

The algebra splits as a direct sum of blocks ``M_m(KH)``. Two independent
routes produce the block multiset: :func:`decompose_direct` walks the
connected components of the groupoid, :func:`decompose_formula` counts
vertices through the subgroup lattice with binomial coefficients.
Wedderburn expansion assumes an algebraically closed field of
characteristic zero.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping

from .errors import AmbiguousDegrees, NonIntegralMultiplicity, PreconditionViolated
from .groupoid import vertex_census
from .groups import FiniteGroup, class_count_within, commutator_bits, conjugacy_classes, popcount
from .lattice import SubgroupLattice, subgroup_lattice

log = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def binomial_row(top: int) -> tuple[int, ...]:
    """Row ``top`` of Pascal's triangle."""
    return tuple(comb(top, k) for k in range(top + 1))


def binomial(top: int, k: int) -> int:
    if k < 0 or k > top or top < 0:
        return 0
    return binomial_row(top)[k]


def dim_partial_algebra(n: int) -> int:
    if n < 1:
        raise ValueError("group order must be positive")
    return 1 if n == 1 else 2 ** (n - 2) * (n + 1)


# -- types ----------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    """``multiplicity`` copies of ``M_m(KH)``.

    ``subgroup`` is a lattice index; closed-form decompositions carry only
    the subgroup ``order`` (their subgroups are all abelian).
    """

    m: int
    order: int
    multiplicity: int
    subgroup: int | None = None
    bits: int | None = None

    @property
    def level(self) -> int:
        return self.m * self.order

    def sort_key(self):
        return (self.m * self.order, self.m, self.order, self.bits or 0)

    def label(self) -> str:
        bits = "*" if self.bits is None else f"{self.bits:x}"
        return f"block m={self.m} H={self.order}:{bits} mult={self.multiplicity}"


@dataclass(frozen=True)
class CharacterDegreeProfile:
    """Matrix sizes of the Wedderburn components of a group algebra ``KH``."""

    degrees: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> CharacterDegreeProfile:
        return cls(tuple(sorted((int(k), int(v)) for k, v in d.items() if v)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.degrees)

    @property
    def order(self) -> int:
        return sum(d * d * c for d, c in self.degrees)

    @property
    def class_count(self) -> int:
        return sum(c for _, c in self.degrees)


@dataclass(frozen=True)
class WedderburnProfile:
    """Multiset of matrix sizes: ``sizes[s]`` copies of ``M_s(K)``."""

    sizes: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> WedderburnProfile:
        return cls(tuple(sorted((int(k), int(v)) for k, v in d.items() if v)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.sizes)

    def count(self, size: int) -> int:
        return self.as_dict().get(size, 0)

    def dimension(self) -> int:
        return sum(s * s * c for s, c in self.sizes)

    def lines(self) -> list[str]:
        return [f"M{s} x {c}" for s, c in self.sizes]


@dataclass
class StructuralDecomposition:
    group: FiniteGroup | None
    lattice: SubgroupLattice | None
    blocks: list[Block]
    method: str
    order: int = 0
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.blocks = sorted((b for b in self.blocks if b.multiplicity), key=Block.sort_key)
        if self.group is not None:
            self.order = self.group.order

    def dimension(self) -> int:
        return sum(b.multiplicity * b.m * b.m * b.order for b in self.blocks)

    def level_counts(self) -> dict[int, int]:
        """Vertices accounted for at each level: ``sum mult * m``."""
        out: dict[int, int] = defaultdict(int)
        for b in self.blocks:
            out[b.level] += b.multiplicity * b.m
        return dict(sorted(out.items()))

    def merged_by_class(self) -> StructuralDecomposition:
        """Attribute every block to the first subgroup of its conjugacy class."""
        if self.lattice is None:
            return self
        lat = self.lattice
        acc: Counter = Counter()
        for b in self.blocks:
            rep = lat.conj_classes[lat.class_of[b.subgroup]][0]
            acc[(b.m, rep)] += b.multiplicity
        blocks = [_block(lat, m, i, c) for (m, i), c in acc.items()]
        return StructuralDecomposition(self.group, lat, blocks, self.method)

    def key(self) -> list[tuple[int, int, int]]:
        """Comparable content: ``(m, subgroup, multiplicity)`` after class merge."""
        return sorted((b.m, b.subgroup, b.multiplicity) for b in self.merged_by_class().blocks)

    def lines(self) -> list[str]:
        return [b.label() for b in self.blocks]


def _block(lat: SubgroupLattice, m: int, i: int, mult: int) -> Block:
    h = lat.subgroups[i]
    return Block(m, h.order, mult, i, h.bits)


# -- direct route ---------------------------------------------------------

def decompose_direct(g: FiniteGroup, lattice: SubgroupLattice | None = None, *, bound: int | None = None) -> StructuralDecomposition:
    """One block per connected component of the groupoid.

    Each component contributes ``M_m(KH)`` where ``m`` is its vertex count
    and ``H`` the stabilizer of its smallest vertex.
    """
    masks, stab, base = vertex_census(g, bound)
    lattice = lattice if lattice is not None else subgroup_lattice(g)
    tally: Counter = Counter()
    is_base = masks == base
    for a, s in zip(masks[is_base].tolist(), stab[is_base].tolist()):
        tally[(popcount(a) // popcount(s), s)] += 1
    blocks = [_block(lattice, m, lattice.index_of(s), c) for (m, s), c in tally.items()]
    return StructuralDecomposition(g, lattice, blocks, "direct")


# -- lattice route --------------------------------------------------------

def b_table(lattice: SubgroupLattice) -> list[list[int]]:
    """``table[i][m]``: vertices at level ``m|H_i|`` whose stabilizer is exactly ``H_i``.

    Computed from the largest subgroups down: the ``C((G:H)-1, m-1)``
    unions of ``m`` right cosets of ``H`` containing ``H`` itself, minus
    those whose stabilizer is a strictly larger subgroup.
    """
    if "b" in lattice.cache:
        return lattice.cache["b"]
    n = lattice.group.order
    k = len(lattice)
    table: list[list[int]] = [[] for _ in range(k)]
    supers = lattice.supergroups
    for i in reversed(range(k)):
        h = lattice.order(i)
        index = n // h
        row = [0] + list(binomial_row(index - 1))
        for j in supers[i]:
            r = lattice.order(j) // h
            above = table[j]
            for m2 in range(1, len(above)):
                row[m2 * r] -= above[m2]
        table[i] = row
    lattice.cache["b"] = table
    return table


def b_coeff(lattice: SubgroupLattice, h: int, m: int) -> int:
    row = b_table(lattice)[h]
    if not 1 <= m < len(row):
        raise ValueError(f"m must lie in 1..{len(row) - 1}")
    return row[m]


def decompose_formula(g: FiniteGroup, lattice: SubgroupLattice | None = None) -> StructuralDecomposition:
    """Block multiplicities from the lattice recursion alone.

    For each conjugacy class ``[H]`` and each ``m``, the number of
    components is ``sum_{H' in [H]} b_m(H') / m``, attributed to the first
    member of the class.
    """
    lattice = lattice if lattice is not None else subgroup_lattice(g)
    table = b_table(lattice)
    blocks = []
    notes = []
    for members in lattice.conj_classes:
        rep = members[0]
        for m in range(1, len(table[rep])):
            total = sum(table[i][m] for i in members)
            if total % m:
                raise NonIntegralMultiplicity(
                    f"class of subgroup {rep}: {total} vertices at m={m} not divisible by m"
                )
            if table[rep][m] % m:
                msg = f"b_{m}(H_{rep}) = {table[rep][m]} not divisible by {m}; class total is"
                log.info(msg)
                notes.append(msg)
            if total:
                blocks.append(_block(lattice, m, rep, total // m))
    return StructuralDecomposition(g, lattice, blocks, "formula", notes=notes)


# -- counting formulas ----------------------------------------------------

def gamma_m(g: FiniteGroup, lattice: SubgroupLattice, m: int) -> int:
    return sum(1 for h in lattice.subgroups if h.order == m)


def beta_m(g: FiniteGroup, lattice: SubgroupLattice, m: int) -> int:
    """Sum of ``(H : [H, H])`` over subgroups of order ``m``."""
    return sum(
        h.order // lattice.order(lattice.commutator[i])
        for i, h in enumerate(lattice.subgroups)
        if h.order == m
    )


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def multiplicity_preconditions(n: int, k: int) -> None:
    if k < 1 or n % k:
        raise PreconditionViolated("NotDivisor", f"{k} does not divide {n}")
    if n == 2 * k:
        raise PreconditionViolated("OrderTwiceK", f"|G| = 2k = {n}")
    if k == n or any((n // k) % p for p in _prime_factors(n)):
        raise PreconditionViolated("PrimeCondition", f"some prime dividing {n} does not divide {n // k}")


def multiplicity_formula(g: FiniteGroup, lattice: SubgroupLattice, k: int) -> int:
    """Multiplicity of ``M_{|G|/k - 1}(K)`` in the Wedderburn decomposition."""
    n = g.order
    multiplicity_preconditions(n, k)
    size = n // k - 1
    total = 0
    for m in range(1, n + 1):
        # m < k n / (n - k)
        if n % m or m * (n - k) >= k * n:
            continue
        total += binomial(n // m - 1, size - 1) * beta_m(g, lattice, m)
    value = Fraction(k * total, n - k)
    if value.denominator != 1:
        raise NonIntegralMultiplicity(f"formula gave {value} for k={k}")
    return int(value)


# -- character degrees ----------------------------------------------------

def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def solve_degrees(order: int, classes: int, linear: int, limit: int = 2) -> list[dict[int, int]]:
    """Degree multisets with ``classes`` entries, ``linear`` of them equal to 1,
    the rest divisors ``> 1`` of ``order``, squares summing to ``order``."""
    rest_count, rest_sum = classes - linear, order - linear
    cands = [d for d in reversed(_divisors(order)) if d > 1 and d * d <= rest_sum]
    found: list[dict[int, int]] = []

    def search(start, count, remaining, chosen):
        if len(found) >= limit:
            return
        if count == 0:
            if remaining == 0:
                prof = Counter(chosen)
                prof[1] = linear
                found.append(dict(sorted(prof.items())))
            return
        # candidates are descending, so the first d with d^2 * count short of
        # the remainder ends the branch
        for pos in range(start, len(cands)):
            sq = cands[pos] ** 2
            if sq > remaining:
                continue
            if sq * count < remaining or cands[-1] ** 2 * count > remaining:
                return
            search(pos, count - 1, remaining - sq, chosen + [cands[pos]])

    if rest_count < 0 or rest_sum < 0:
        return []
    if rest_count == 0:
        return [{1: linear}] if rest_sum == 0 else []
    search(0, rest_count, rest_sum, [])
    return found


def _profile_from_data(order, classes, commutator_order, overrides) -> CharacterDegreeProfile:
    linear = order // commutator_order
    if linear == order:
        return CharacterDegreeProfile(((1, order),))
    fingerprint = (order, classes, linear)
    if overrides and fingerprint in overrides:
        return CharacterDegreeProfile.from_dict(overrides[fingerprint])
    sols = solve_degrees(order, classes, linear)
    if len(sols) != 1:
        raise AmbiguousDegrees(fingerprint, sols)
    return CharacterDegreeProfile.from_dict(sols[0])


def degree_profile(h: FiniteGroup, overrides=None) -> CharacterDegreeProfile:
    """Degree profile of ``KH`` from class count and commutator index."""
    if h.is_abelian:
        return CharacterDegreeProfile(((1, h.order),))
    comm = popcount(commutator_bits(h, h.full_mask))
    return _profile_from_data(h.order, len(conjugacy_classes(h)), comm, overrides)


def subgroup_degree_profile(lattice: SubgroupLattice, i: int, overrides=None) -> CharacterDegreeProfile:
    key = ("deg", i)
    if key in lattice.cache and not overrides:
        return lattice.cache[key]
    rep = lattice.conj_classes[lattice.class_of[i]][0]
    if rep != i:
        prof = subgroup_degree_profile(lattice, rep, overrides)
    elif lattice.is_abelian(i):
        prof = CharacterDegreeProfile(((1, lattice.order(i)),))
    else:
        h = lattice.subgroups[i]
        classes = class_count_within(lattice.group, h.bits)
        prof = _profile_from_data(h.order, classes, lattice.order(lattice.commutator[i]), overrides)
    if not overrides:
        lattice.cache[key] = prof
    return prof


def _block_profile(d: StructuralDecomposition, b: Block, overrides) -> CharacterDegreeProfile:
    if b.subgroup is None:
        return CharacterDegreeProfile(((1, b.order),))
    return subgroup_degree_profile(d.lattice, b.subgroup, overrides)


def wedderburn_expand(d: StructuralDecomposition, overrides=None) -> WedderburnProfile:
    """``M_m(KH)`` contributes ``mu`` copies of ``M_{m*deg}(K)`` per degree ``deg`` of ``KH``."""
    sizes: Counter = Counter()
    for b in d.blocks:
        for deg, mu in _block_profile(d, b, overrides).degrees:
            sizes[b.m * deg] += b.multiplicity * mu
    return WedderburnProfile.from_dict(sizes)


def signature(d: StructuralDecomposition, overrides=None) -> dict[tuple, int]:
    """Block multiset keyed by ``(m, |H|, degree profile of H)``."""
    acc: Counter = Counter()
    for b in d.blocks:
        acc[(b.m, b.order, _block_profile(d, b, overrides).degrees)] += b.multiplicity
    return dict(sorted(acc.items()))


def center_dimension(d: StructuralDecomposition) -> int:
    total = 0
    for b in d.blocks:
        classes = b.order if b.subgroup is None else d.lattice.class_count(b.subgroup)
        total += b.multiplicity * classes
    return total


@dataclass(frozen=True)
class Comparison:
    equal: bool
    witness: int | None = None

    def __str__(self):
        return "Equal" if self.equal else f"Different(size {self.witness})"


def compare_decompositions(d1: StructuralDecomposition, d2: StructuralDecomposition, overrides=None) -> Comparison:
    """Compare Wedderburn profiles; the witness is the largest size whose counts differ."""
    p1 = wedderburn_expand(d1, overrides).as_dict()
    p2 = wedderburn_expand(d2, overrides).as_dict()
    diff = sorted(s for s in set(p1) | set(p2) if p1.get(s, 0) != p2.get(s, 0))
    return Comparison(True) if not diff else Comparison(False, diff[-1])


# -- closed forms ---------------------------------------------------------

def _exact(num: int, den: int) -> int:
    if num % den:
        raise NonIntegralMultiplicity(f"{num}/{den} is not an integer")
    return num // den


def closed_form(family: str, p: int, q: int | None = None) -> StructuralDecomposition:
    """Decomposition of ``Z_p``, ``Z_p x Z_p``, ``Z_p x Z_q`` or ``Z_{p^2}`` from binomials."""
    blocks: list[Block] = []

    def add(m, order, mult):
        if mult:
            blocks.append(Block(m, order, mult))

    if family == "Zp":
        n = p
        for k in range(1, p):
            add(k, 1, _exact(binomial(p - 1, k - 1), k))
    elif family in ("ZpZp", "Zp2"):
        n = p * p
        subs = p + 1 if family == "ZpZp" else 1
        for k in range(1, n):
            if k % p:
                add(k, 1, _exact(binomial(n - 1, k - 1), k))
        for m in range(1, p):
            add(m, p, _exact(subs * binomial(p - 1, m - 1), m))
            add(m * p, 1, _exact(binomial(n - 1, m * p - 1) - subs * binomial(p - 1, m - 1), m * p))
    elif family == "Zpq":
        if q is None or q == p:
            raise ValueError("Zpq needs two distinct primes")
        n = p * q
        for k in range(1, n):
            if k % p and k % q:
                add(k, 1, _exact(binomial(n - 1, k - 1), k))
        for m in range(1, p):
            add(m, q, _exact(binomial(p - 1, m - 1), m))
        for m in range(1, q):
            add(m, p, _exact(binomial(q - 1, m - 1), m))
        for m in range(1, q):
            add(m * p, 1, _exact(binomial(n - 1, m * p - 1) - binomial(q - 1, m - 1), m * p))
        for m in range(1, p):
            add(m * q, 1, _exact(binomial(n - 1, m * q - 1) - binomial(p - 1, m - 1), m * q))
    else:
        raise ValueError(f"unknown family {family!r}")
    add(1, n, 1)
    return StructuralDecomposition(None, None, blocks, "closed-form", order=n)
