"""Finite groups as dense multiplication tables.

Elements are the integers ``0..n-1``; subsets of a group are Python ints
used as bitmasks (bit ``i`` set iff element ``i`` belongs to the subset).
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadAction,
    BoundExceeded,
    ClosureTooLarge,
    InvalidInput,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotLatinSquare,
    SubsetMissingIdentity,
)

DEFAULT_MAX_ORDER = 1024


def max_order() -> int:
    return int(os.environ.get("PARGROUP_MAX_ORDER", DEFAULT_MAX_ORDER))


# -- bitmask helpers ------------------------------------------------------

def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for x in elements:
        mask |= 1 << int(x)
    return mask


def elements_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _mask_from_flags(flags) -> int:
    arr = np.frombuffer(bytes(flags), dtype=np.uint8) if not isinstance(flags, np.ndarray) else flags
    packed = np.packbits(arr.astype(bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


@dataclass(frozen=True, order=True)
class Subgroup:
    """A subgroup given by its element bitmask; ordered by ``(order, bits)``."""

    order: int
    bits: int

    def __contains__(self, x: int) -> bool:
        return bool((self.bits >> x) & 1)

    def elements(self) -> list[int]:
        return elements_of(self.bits)


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``mul[s][t]`` is the index of ``s*t``. The table is validated on
    construction (Latin square, identity, inverses, associativity).
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
        name: str | None = None,
        *,
        bound: int | None = None,
    ):
        bound = max_order() if bound is None else bound
        n = len(table)
        if n < 1:
            raise InvalidInput("group must have at least one element")
        if n > bound:
            raise BoundExceeded(f"group order {n} exceeds the configured bound {bound}")
        if any(len(row) != n for row in table):
            raise InvalidInput(f"table must be {n}x{n}")
        arr = np.array(table, dtype=np.int64)
        if arr.shape != (n, n):
            raise InvalidInput(f"table must be {n}x{n}, got shape {arr.shape}")
        if arr.min() < 0 or arr.max() >= n:
            bad = np.argwhere((arr < 0) | (arr >= n))[0]
            raise InvalidInput(f"entry out of range at cell ({bad[0]}, {bad[1]})")
        if labels is not None and len(labels) != n:
            raise InvalidInput(f"expected {n} labels, got {len(labels)}")

        identity = _validate_table(arr)
        self.order = n
        self.identity = identity
        self.array = arr
        self.array.setflags(write=False)
        self.mul: tuple[tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in arr)
        inv = np.argmax(arr == identity, axis=1)
        self.inv: tuple[int, ...] = tuple(int(x) for x in inv)
        self.labels = tuple(labels) if labels is not None else None
        self.name = name

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, name={self.name!r})"

    def __len__(self):
        return self.order

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.array == self.array.T).all())

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[g, h] = g h g^-1``."""
        inv = np.array(self.inv)
        right = self.array[:, inv]  # right[h, g] = h g^-1
        return self.array[np.arange(self.order)[:, None], right.T]

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def power(self, g: int, k: int) -> int:
        x = self.identity
        for _ in range(k % self.element_order(g)):
            x = self.mul[x][g]
        return x

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x][g]
            k += 1
        return k

    def translate(self, g: int, mask: int) -> int:
        """Left translate ``g * A`` of the subset ``A``."""
        row = self.mul[g]
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out |= 1 << row[i]
            mask >>= 1
            i += 1
        return out

    def generate(self, gens: Iterable[int]) -> int:
        """Bitmask of the subgroup generated by ``gens``."""
        elems, flags = [self.identity], bytearray(self.order)
        flags[self.identity] = 1
        used: list[int] = []
        for g in gens:
            if flags[g]:
                continue
            used.append(g)
            elems = extend_subgroup(self.mul, self.identity, elems, flags, used)
        return _mask_from_flags(flags)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by element index."""
        elems, flags = [self.identity], bytearray(self.order)
        flags[self.identity] = 1
        gens: list[int] = []
        for g in range(self.order):
            if not flags[g]:
                gens.append(g)
                elems = extend_subgroup(self.mul, self.identity, elems, flags, gens)
        return tuple(gens)


def extend_subgroup(mul, identity: int, h_elems: list[int], flags: bytearray, gens: Sequence[int]) -> list[int]:
    """Grow subgroup ``H`` (elements + membership flags) to ``<gens>``.

    ``gens`` must contain a generating set of ``H``. The new group is built
    as a union of right cosets ``H x``; ``flags`` is updated in place.
    """
    elems = list(h_elems)
    reps = [identity]
    i = 0
    while i < len(reps):
        row = mul[reps[i]]
        for s in gens:
            x = row[s]
            if not flags[x]:
                reps.append(x)
                for h in h_elems:
                    y = mul[h][x]
                    flags[y] = 1
                    elems.append(y)
        i += 1
    return elems


def _validate_table(arr: np.ndarray) -> int:
    n = arr.shape[0]
    full = np.arange(n)
    for axis_name, rows in (("row", arr), ("column", arr.T)):
        srt = np.sort(rows, axis=1)
        bad = np.nonzero((srt != full).any(axis=1))[0]
        if len(bad):
            i = int(bad[0])
            seen: set[int] = set()
            for j, v in enumerate(rows[i]):
                if int(v) in seen:
                    cell = (i, j) if axis_name == "row" else (j, i)
                    raise NotLatinSquare(f"{axis_name} {i} repeats value {int(v)} at cell {cell}")
                seen.add(int(v))
    ids = np.nonzero((arr == full).all(axis=1) & (arr.T == full).all(axis=1))[0]
    if not len(ids):
        raise NoIdentity("no element acts as a two-sided identity")
    e = int(ids[0])
    right_inv = np.argmax(arr == e, axis=1)
    left_ok = arr[right_inv, full] == e
    if not left_ok.all():
        t = int(np.nonzero(~left_ok)[0][0])
        raise NoInverse(f"element {t} has no two-sided inverse")
    for a in range(n):
        lhs = arr[arr[a]]           # lhs[b, c] = (a b) c
        rhs = arr[a][arr]           # rhs[b, c] = a (b c)
        diff = lhs != rhs
        if diff.any():
            b, c = (int(v) for v in np.argwhere(diff)[0])
            raise NotAssociative(f"(s t) u != s (t u) at triple ({a}, {b}, {c})")
    return e


# -- constructors ---------------------------------------------------------

def group_from_table(n: int, rows: Sequence[Sequence[int]], labels=None, name=None) -> FiniteGroup:
    if len(rows) != n:
        raise InvalidInput(f"expected {n} rows, got {len(rows)}")
    return FiniteGroup(rows, labels=labels, name=name)


def group_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidInput("cyclic group order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, labels=[str(i) for i in range(n)], name=f"Z{n}")


def group_abelian(invariants: Sequence[int]) -> FiniteGroup:
    """Product of cyclic groups; elements are tuples in lexicographic order."""
    invariants = [int(d) for d in invariants]
    if any(d < 2 for d in invariants):
        raise InvalidInput(f"abelian invariants must be >= 2, got {invariants}")
    elems = list(itertools.product(*(range(d) for d in invariants)))
    index = {x: i for i, x in enumerate(elems)}
    table = [
        [index[tuple((a + b) % d for a, b, d in zip(x, y, invariants))] for y in elems]
        for x in elems
    ]
    labels = ["(" + ",".join(map(str, x)) + ")" for x in elems]
    name = "x".join(f"Z{d}" for d in invariants) or "Z1"
    return FiniteGroup(table, labels=labels, name=name)


def group_direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Elements are pairs ``(a, b)`` with index ``a * |G2| + b``."""
    n1, n2 = g1.order, g2.order
    table = [
        [g1.mul[a][c] * n2 + g2.mul[b][d] for c in range(n1) for d in range(n2)]
        for a in range(n1)
        for b in range(n2)
    ]
    labels = [f"({g1.label(a)},{g2.label(b)})" for a in range(n1) for b in range(n2)]
    name = f"{g1.name or 'G'}x{g2.name or 'H'}"
    return FiniteGroup(table, labels=labels, name=name)


_CYCLE = re.compile(r"\(([^()]*)\)")


def permutation_from_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse 1-based cycle notation like ``"(1 2)(3 4)"`` into 0-based images."""
    text = text.strip()
    if _CYCLE.sub("", text).strip():
        raise InvalidInput(f"bad cycle notation: {text!r}")
    images = list(range(degree))
    seen: set[int] = set()
    for body in _CYCLE.findall(text):
        pts = [int(tok) - 1 for tok in body.replace(",", " ").split()]
        for p in pts:
            if not 0 <= p < degree or p in seen:
                raise InvalidInput(f"bad point {p + 1} in {text!r} for degree {degree}")
            seen.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return tuple(images)


def cycles_string(perm: Sequence[int]) -> str:
    seen, parts = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = perm[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def group_from_permutations(degree: int, generators, *, bound: int | None = None) -> FiniteGroup:
    """Permutation group closure.

    Generators are 1-based cycle strings or 0-based image sequences. The
    product ``p*q`` applies ``q`` first. Elements are numbered in
    breadth-first discovery order from the identity, right-multiplying by
    generators.
    """
    bound = max_order() if bound is None else bound
    gens = []
    for g in generators:
        perm = permutation_from_cycles(g, degree) if isinstance(g, str) else tuple(int(x) for x in g)
        if sorted(perm) != list(range(degree)):
            raise InvalidInput(f"not a permutation of degree {degree}: {g!r}")
        gens.append(perm)
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for s in gens:
            y = tuple(x[s[k]] for k in range(degree))
            if y not in index:
                if len(elems) >= bound:
                    raise ClosureTooLarge(f"permutation closure exceeds {bound} elements")
                index[y] = len(elems)
                elems.append(y)
        i += 1
    table = [[index[tuple(x[y[k]] for k in range(degree))] for y in elems] for x in elems]
    return FiniteGroup(table, labels=[cycles_string(x) for x in elems], name=f"Perm{degree}")


def group_dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``: elements ``r^i s^j`` at index ``2i + j``."""
    def idx(i, j):
        return 2 * (i % n) + j

    table = [
        [idx(i + (k if j == 0 else -k), (j + l) % 2) for k in range(n) for l in range(2)]
        for i in range(n)
        for j in range(2)
    ]
    labels = [f"r^{i}" + ("s" if j else "") for i in range(n) for j in range(2)]
    return FiniteGroup(table, labels=labels, name=f"D{n}")


def group_dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order ``4n`` (``n = 2`` gives Q8).

    Elements ``a^i x^j`` (``i < 2n``, ``j < 2``) with ``x^2 = a^n`` and
    ``x a x^-1 = a^-1``.
    """
    m = 2 * n

    def prod(i, j, k, l):
        i2 = i + (k if j == 0 else -k)
        if j + l == 2:
            return (i2 + n) % m, 0
        return i2 % m, j + l

    table = []
    for i in range(m):
        for j in range(2):
            row = []
            for k in range(m):
                for l in range(2):
                    a, b = prod(i, j, k, l)
                    row.append(2 * a + b)
            table.append(row)
    labels = [f"a^{i}" + ("x" if j else "") for i in range(m) for j in range(2)]
    return FiniteGroup(table, labels=labels, name="Q8" if n == 2 else f"Dic{n}")


def group_metacyclic_pair(p: int, q: int, r: int, s: int) -> FiniteGroup:
    """``<a, b, c | a^p = b^p = c^q = 1, ab = ba, c^-1 a c = a^r, c^-1 b c = b^s>``.

    Element ``a^i b^j c^k`` has index ``(i*p + j)*q + k``.
    """
    for x, name in ((r, "r"), (s, "s")):
        if pow(x, q, p) != 1:
            raise BadAction(f"{name}^q = {x}^{q} is not 1 mod {p}")
    # c^k a^i c^-k = a^(i * r^-k)
    r_inv, s_inv = pow(r, -1, p), pow(s, -1, p)
    rk = [pow(r_inv, k, p) for k in range(q)]
    sk = [pow(s_inv, k, p) for k in range(q)]
    elems = [(i, j, k) for i in range(p) for j in range(p) for k in range(q)]

    def idx(i, j, k):
        return ((i % p) * p + (j % p)) * q + (k % q)

    table = [
        [idx(i + i2 * rk[k], j + j2 * sk[k], k + k2) for (i2, j2, k2) in elems]
        for (i, j, k) in elems
    ]
    labels = [f"a^{i}b^{j}c^{k}" for (i, j, k) in elems]
    g = FiniteGroup(table, labels=labels, name=f"M({p},{q},{r},{s})")
    _check_metacyclic_relations(g, p, q, r, s, idx)
    return g


def _check_metacyclic_relations(g: FiniteGroup, p, q, r, s, idx) -> None:
    a, b, c = idx(1, 0, 0), idx(0, 1, 0), idx(0, 0, 1)
    mul, inv = g.mul, g.inv
    ok = (
        g.order == p * p * q
        and g.element_order(a) == p
        and g.element_order(b) == p
        and g.element_order(c) == q
        and mul[a][b] == mul[b][a]
        and mul[mul[inv[c]][a]][c] == g.power(a, r)
        and mul[mul[inv[c]][b]][c] == g.power(b, s)
    )
    if not ok:
        raise BadAction(f"defining relations fail for parameters {(p, q, r, s)}")


# -- structure ------------------------------------------------------------

def conjugacy_classes(g: FiniteGroup) -> list[list[int]]:
    """Conjugacy classes, each sorted, listed by minimal element."""
    if g.is_abelian:
        return [[x] for x in range(g.order)]
    seen = np.zeros(g.order, dtype=bool)
    classes = []
    for x in range(g.order):
        if seen[x]:
            continue
        orbit = np.unique(g.conj[:, x])
        seen[orbit] = True
        classes.append([int(y) for y in orbit])
    return classes


def class_count_within(g: FiniteGroup, bits: int) -> int:
    """Number of conjugacy classes of the subgroup ``H`` under its own conjugation."""
    elems = np.array(elements_of(bits))
    if g.is_abelian:
        return len(elems)
    seen = np.zeros(g.order, dtype=bool)
    count = 0
    sub = g.conj[elems]
    for x in elems:
        if not seen[x]:
            seen[sub[:, x]] = True
            count += 1
    return count


def commutator_bits(g: FiniteGroup, bits: int) -> int:
    """Bitmask of ``[H, H]`` for the subgroup with element mask ``bits``."""
    if g.is_abelian:
        return 1 << g.identity
    elems = np.array(elements_of(bits))
    inv = np.array(g.inv)[elems]
    arr = g.array
    comms = arr[arr[elems[:, None], elems[None, :]], arr[inv[:, None], inv[None, :]]]
    return g.generate(int(x) for x in np.unique(comms))


def commutator_subgroup(g: FiniteGroup) -> Subgroup:
    bits = commutator_bits(g, g.full_mask)
    return Subgroup(popcount(bits), bits)


def normalizer(g: FiniteGroup, h: Subgroup | int) -> Subgroup:
    bits = h.bits if isinstance(h, Subgroup) else h
    if g.is_abelian:
        return Subgroup(g.order, g.full_mask)
    elems = np.array(elements_of(bits))
    inside = np.zeros(g.order, dtype=bool)
    inside[elems] = True
    ok = inside[g.conj[:, elems]].all(axis=1)
    nbits = _mask_from_flags(ok.astype(np.uint8))
    return Subgroup(int(ok.sum()), nbits)


def right_cosets(g: FiniteGroup, h: Subgroup | int) -> list[int]:
    """Right cosets ``H t`` as bitmasks, ordered by minimal element."""
    bits = h.bits if isinstance(h, Subgroup) else h
    elems = elements_of(bits)
    covered = bytearray(g.order)
    out = []
    for t in range(g.order):
        if covered[t]:
            continue
        coset = [g.mul[x][t] for x in elems]
        for y in coset:
            covered[y] = 1
        out.append(mask_of(coset))
    return out


def stabilizer_of_subset(g: FiniteGroup, a: int) -> Subgroup:
    """``S(A) = {x : xA = A}``; requires ``e in A`` (so ``S(A)`` lies inside ``A``)."""
    if not (a >> g.identity) & 1:
        raise SubsetMissingIdentity("subset must contain the identity")
    bits = 0
    for x in elements_of(a):
        if g.translate(x, a) == a:
            bits |= 1 << x
    return Subgroup(popcount(bits), bits)


# -- mtab v1 --------------------------------------------------------------

def dumps_mtab(g: FiniteGroup) -> str:
    lines = [f"mtab 1 {g.order}"]
    lines += [" ".join(map(str, row)) for row in g.mul]
    if g.labels is not None:
        lines += [f"# label {i} {lab}" for i, lab in enumerate(g.labels)]
    return "\n".join(lines) + "\n"


def loads_mtab(text: str) -> FiniteGroup:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise InvalidInput("empty mtab input")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "mtab" or head[1] != "1" or not head[2].isdigit():
        raise InvalidInput(f"bad mtab header: {lines[0]!r}")
    n = int(head[2])
    if len(lines) < n + 1:
        raise InvalidInput(f"expected {n} table rows, found {len(lines) - 1}")
    rows = []
    for lineno, line in enumerate(lines[1 : n + 1], start=2):
        toks = line.split()
        if len(toks) != n or not all(t.isdigit() for t in toks):
            raise InvalidInput(f"line {lineno}: expected {n} non-negative integers")
        rows.append([int(t) for t in toks])
    labels: dict[int, str] = {}
    for lineno, line in enumerate(lines[n + 1 :], start=n + 2):
        m = re.fullmatch(r"# label (\d+) (.*)", line)
        if not m:
            raise InvalidInput(f"line {lineno}: trailing garbage {line!r}")
        i = int(m.group(1))
        if i >= n or i in labels:
            raise InvalidInput(f"line {lineno}: bad label index {i}")
        labels[i] = m.group(2)
    if labels and len(labels) != n:
        raise InvalidInput("labels must be given for every element or none")
    label_seq = [labels[i] for i in range(n)] if labels else None
    return FiniteGroup(rows, labels=label_seq)


def read_mtab(path) -> FiniteGroup:
    with open(path, encoding="utf-8") as fh:
        return loads_mtab(fh.read())


def write_mtab(g: FiniteGroup, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_mtab(g))
