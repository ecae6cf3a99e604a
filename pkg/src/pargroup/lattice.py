"""Subgroup lattice enumeration by cyclic-extension closure."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import LatticeTooLarge
from .groups import (
    FiniteGroup,
    Subgroup,
    _mask_from_flags,
    class_count_within,
    commutator_bits,
    extend_subgroup,
)

DEFAULT_MAX_SUBGROUPS = 100_000


@dataclass
class SubgroupLattice:
    """All subgroups of a group, sorted by ``(order, bits)``.

    Index 0 is the trivial subgroup and the last index is the whole group.
    ``normalizer[i]`` and ``commutator[i]`` are lattice indices;
    ``conj_classes`` partitions the indices under conjugation.
    """

    group: FiniteGroup
    subgroups: list[Subgroup]
    elements: list[tuple[int, ...]]
    normalizer: list[int]
    commutator: list[int]
    conj_classes: list[list[int]]
    index: dict[int, int] = field(repr=False)
    cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __len__(self):
        return len(self.subgroups)

    @property
    def trivial(self) -> int:
        return 0

    @property
    def whole(self) -> int:
        return len(self.subgroups) - 1

    def index_of(self, bits: int) -> int:
        return self.index[bits]

    def order(self, i: int) -> int:
        return self.subgroups[i].order

    def is_normal(self, i: int) -> bool:
        return self.normalizer[i] == self.whole

    def is_abelian(self, i: int) -> bool:
        return self.commutator[i] == 0

    @cached_property
    def class_of(self) -> list[int]:
        """Position of each subgroup's conjugacy class in ``conj_classes``."""
        out = [0] * len(self.subgroups)
        for c, members in enumerate(self.conj_classes):
            for i in members:
                out[i] = c
        return out

    @cached_property
    def supergroups(self) -> list[np.ndarray]:
        """``supergroups[i]``: indices ``j`` with ``H_i`` a proper subgroup of ``H_j``."""
        k, n = len(self.subgroups), self.group.order
        member = np.zeros((k, n), dtype=np.float32)
        for i, elems in enumerate(self.elements):
            member[i, list(elems)] = 1.0
        orders = np.array([h.order for h in self.subgroups], dtype=np.float32)
        out = []
        chunk = 512
        for start in range(0, k, chunk):
            inter = member[start : start + chunk] @ member.T
            contained = inter == orders[start : start + chunk, None]
            for row, i in enumerate(range(start, min(start + chunk, k))):
                js = np.nonzero(contained[row])[0]
                out.append(js[js != i])
        return out

    def contains(self, big: int, small: int) -> bool:
        b, s = self.subgroups[big].bits, self.subgroups[small].bits
        return b & s == s

    def order_census(self) -> dict[int, int]:
        census: dict[int, int] = {}
        for h in self.subgroups:
            census[h.order] = census.get(h.order, 0) + 1
        return dict(sorted(census.items()))

    def class_count(self, i: int) -> int:
        """Number of conjugacy classes of the subgroup ``H_i`` itself."""
        if self.is_abelian(i):
            return self.subgroups[i].order
        return class_count_within(self.group, self.subgroups[i].bits)


def _enumerate(g: FiniteGroup, max_subgroups: int) -> list[tuple[int, tuple[int, ...], tuple[int, ...]]]:
    mul, e, n = g.mul, g.identity, g.order
    found: dict[int, int] = {}
    records: list[tuple[int, tuple[int, ...], tuple[int, ...]]] = []

    def add(elems, flags, gens):
        bits = _mask_from_flags(flags)
        if bits in found:
            return
        if len(records) >= max_subgroups:
            raise LatticeTooLarge(f"more than {max_subgroups} subgroups")
        found[bits] = len(records)
        records.append((bits, tuple(elems), tuple(gens)))

    trivial_flags = bytearray(n)
    trivial_flags[e] = 1
    add([e], trivial_flags, ())
    for x in range(n):
        if x == e:
            continue
        flags = bytearray(trivial_flags)
        elems = extend_subgroup(mul, e, [e], flags, (x,))
        add(elems, flags, (x,))

    i = 0
    while i < len(records):
        bits, elems, gens = records[i]
        h_flags = bytearray(n)
        for x in elems:
            h_flags[x] = 1
        covered = bytearray(h_flags)
        for x in range(n):
            if covered[x]:
                continue
            # <H, x> only depends on the right coset H x
            for h in elems:
                covered[mul[h][x]] = 1
            flags = bytearray(h_flags)
            new_gens = gens + (x,)
            new_elems = extend_subgroup(mul, e, list(elems), flags, new_gens)
            add(new_elems, flags, new_gens)
        i += 1
    return records


def subgroup_lattice(g: FiniteGroup, *, max_subgroups: int = DEFAULT_MAX_SUBGROUPS) -> SubgroupLattice:
    records = _enumerate(g, max_subgroups)
    records.sort(key=lambda r: (len(r[1]), r[0]))
    subgroups = [Subgroup(len(elems), bits) for bits, elems, _ in records]
    elements = [tuple(sorted(elems)) for _, elems, _ in records]
    index = {h.bits: i for i, h in enumerate(subgroups)}
    k = len(subgroups)

    if g.is_abelian:
        normalizer = [k - 1] * k
        commutator = [0] * k
        conj_classes = [[i] for i in range(k)]
    else:
        normalizer, conj_classes = _normalizers_and_classes(g, subgroups, elements, index)
        commutator = [index[commutator_bits(g, h.bits)] for h in subgroups]
    return SubgroupLattice(g, subgroups, elements, normalizer, commutator, conj_classes, index)


def _normalizers_and_classes(g, subgroups, elements, index):
    n, k = g.order, len(subgroups)
    conj = g.conj
    normalizer = []
    for elems in elements:
        idx = np.array(elems)
        inside = np.zeros(n, dtype=bool)
        inside[idx] = True
        ok = inside[conj[:, idx]].all(axis=1)
        normalizer.append(index[_mask_from_flags(ok.astype(np.uint8))])

    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, elems in enumerate(elements):
        idx = np.array(elems)
        for s in g.generators:
            flags = np.zeros(n, dtype=np.uint8)
            flags[conj[s, idx]] = 1
            j = index[_mask_from_flags(flags)]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    conj_classes = sorted(groups.values(), key=lambda c: c[0])
    return normalizer, conj_classes

