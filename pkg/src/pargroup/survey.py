"""Batch runs over abelian groups of a given order and the order-605 pair."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .decomp import (
    WedderburnProfile,
    compare_decompositions,
    decompose_formula,
    signature,
    subgroup_degree_profile,
    wedderburn_expand,
)
from .errors import BoundExceeded
from .groups import group_abelian, group_metacyclic_pair
from .lattice import subgroup_lattice

DEFAULT_ABELIAN_BOUND = 128

COUNTEREXAMPLE_PARAMS = ((11, 5, 3, 9), (11, 5, 3, 4))


@dataclass(frozen=True, order=True)
class AbelianType:
    """Invariant factors ``d_1 | d_2 | ... | d_k``, each at least 2."""

    invariants: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def __str__(self):
        return "(" + ",".join(map(str, self.invariants)) + ")"


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def partitions(n: int, largest: int | None = None):
    """Partitions of ``n`` as non-increasing tuples."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def enumerate_abelian(n: int, bound: int = DEFAULT_ABELIAN_BOUND) -> list[AbelianType]:
    """One invariant-factor type per isomorphism class of abelian groups of order ``n``.

    Sorted by number of factors, then lexicographically.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if n > bound:
        raise BoundExceeded(f"order {n} exceeds the survey bound {bound}")
    primes = sorted(factorize(n).items())
    out = []
    for choice in itertools.product(*(list(partitions(e)) for _, e in primes)):
        length = max((len(lam) for lam in choice), default=0)
        factors = []
        for i in range(length):
            d = 1
            for (p, _), lam in zip(primes, choice):
                if i < len(lam):
                    d *= p ** lam[i]
            factors.append(d)
        out.append(AbelianType(tuple(reversed(factors))))
    out.sort(key=lambda t: (len(t.invariants), t.invariants))
    return out


def abelian_profile(t: AbelianType) -> WedderburnProfile:
    g = group_abelian(t.invariants)
    return wedderburn_expand(decompose_formula(g, subgroup_lattice(g)))


@dataclass
class SurveyReport:
    order: int
    entries: list[tuple[AbelianType, WedderburnProfile]]
    collisions: list[tuple[AbelianType, AbelianType]] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "AllDistinct" if not self.collisions else "CollisionList"

    def to_json(self) -> dict:
        out = {
            "order": self.order,
            "classes": [
                {
                    "invariants": list(t.invariants),
                    "profile": [{"size": s, "mult": c} for s, c in prof.sizes],
                }
                for t, prof in self.entries
            ],
            "verdict": self.verdict,
        }
        if self.collisions:
            out["collisions"] = [[list(a.invariants), list(b.invariants)] for a, b in self.collisions]
        return out

    def table(self) -> list[str]:
        lines = [f"order {self.order}: {len(self.entries)} abelian classes"]
        for t, prof in self.entries:
            lines.append(f"  {t!s:<20} " + ", ".join(f"M{s} x {c}" for s, c in prof.sizes))
        lines.append(f"verdict: {self.verdict}")
        for a, b in self.collisions:
            lines.append(f"  collision: {a} ~ {b}")
        return lines


def _map(fn, items, threads: int):
    if threads > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def theorem_check(n: int, *, threads: int = 1, bound: int = DEFAULT_ABELIAN_BOUND) -> SurveyReport:
    types = enumerate_abelian(n, bound)
    profiles = _map(abelian_profile, types, threads)
    entries = list(zip(types, profiles))
    collisions = [
        (a, b) for (a, pa), (b, pb) in itertools.combinations(entries, 2) if pa == pb
    ]
    return SurveyReport(n, entries, collisions)


@dataclass
class CounterexampleResult:
    profiles_equal: bool
    signatures_equal: bool
    census: tuple[dict[int, int], dict[int, int]]
    subgroup_counts: tuple[int, int]
    group_algebra_profiles: tuple[dict[int, int], dict[int, int]]
    profiles: tuple[WedderburnProfile, WedderburnProfile]
    note: str = (
        "G1 and G2 are not isomorphic; this is a cited fact and is not "
        "verified by this program"
    )

    def to_json(self) -> dict:
        return {
            "equal": self.profiles_equal,
            "signatures_equal": self.signatures_equal,
            "groups": [
                {
                    "params": list(params),
                    "subgroups": count,
                    "census": {str(k): v for k, v in census.items()},
                    "group_algebra": [{"size": s, "mult": c} for s, c in sorted(ga.items())],
                    "profile": [{"size": s, "mult": c} for s, c in prof.sizes],
                }
                for params, count, census, ga, prof in zip(
                    COUNTEREXAMPLE_PARAMS,
                    self.subgroup_counts,
                    self.census,
                    self.group_algebra_profiles,
                    self.profiles,
                )
            ],
            "note": self.note,
        }


def _counterexample_side(params):
    g = group_metacyclic_pair(*params)
    lat = subgroup_lattice(g)
    d = decompose_formula(g, lat)
    return g, lat, d


def counterexample_run(*, threads: int = 1) -> CounterexampleResult:
    (g1, l1, d1), (g2, l2, d2) = _map(_counterexample_side, list(COUNTEREXAMPLE_PARAMS), threads)
    cmp = compare_decompositions(d1, d2)
    return CounterexampleResult(
        profiles_equal=cmp.equal,
        signatures_equal=signature(d1) == signature(d2),
        census=(l1.order_census(), l2.order_census()),
        subgroup_counts=(len(l1), len(l2)),
        group_algebra_profiles=(
            subgroup_degree_profile(l1, l1.whole).as_dict(),
            subgroup_degree_profile(l2, l2.whole).as_dict(),
        ),
        profiles=(wedderburn_expand(d1), wedderburn_expand(d2)),
    )
