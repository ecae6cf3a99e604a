"""Partial representations by exact rational matrices.

A partial representation sends ``e`` to the identity and satisfies, for
all ``s, t``::

    (a)  pi(s) pi(t) pi(t^-1) = pi(st) pi(t^-1)
    (b)  pi(s^-1) pi(s) pi(t) = pi(s^-1) pi(st)
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np

from .errors import ComputationError, GroupMismatch, InvalidInput, NotAPartialRep
from .exact import (
    block_diag,
    equal,
    format_rational,
    inverse,
    is_positive_definite,
    is_zero,
    mat_chain,
    matmul as mm,
    qeye,
    qmatrix,
    qzeros,
)
from .groupoid import AlgebraElement, Arrow, all_arrows, arrow_count, check_direct_bound
from .groups import FiniteGroup, elements_of, mask_of


@dataclass(eq=False)
class PartialRep:
    group: FiniteGroup
    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        self.matrices = tuple(qmatrix(m) for m in self.matrices)
        if len(self.matrices) != self.group.order:
            raise InvalidInput(f"need {self.group.order} matrices, got {len(self.matrices)}")
        d = self.matrices[0].shape[0]
        if any(m.shape != (d, d) for m in self.matrices):
            raise InvalidInput("matrices must be square and of equal size")

    @property
    def d(self) -> int:
        return self.matrices[0].shape[0]

    def __call__(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def with_matrix(self, g: int, m) -> PartialRep:
        mats = list(self.matrices)
        mats[g] = qmatrix(m)
        return PartialRep(self.group, tuple(mats))


class Violation(NamedTuple):
    s: int
    t: int
    axiom: str


def verify_partial_rep(rep: PartialRep) -> Violation | None:
    """First violated axiom over all pairs ``(s, t)`` in index order, else ``None``.

    ``axiom`` is ``"c"`` for ``pi(e) != 1``, otherwise ``"a"`` or ``"b"``.
    """
    g, pi = rep.group, rep.matrices
    e, inv, mul = g.identity, g.inv, g.mul
    if not equal(pi[e], qeye(rep.d)):
        return Violation(e, e, "c")
    # right[t] = pi(t) pi(t^-1), left[s] = pi(s^-1) pi(s)
    right = [mm(pi[t], pi[inv[t]]) for t in range(g.order)]
    left = [mm(pi[inv[s]], pi[s]) for s in range(g.order)]
    for s in range(g.order):
        for t in range(g.order):
            st = mul[s][t]
            if not equal(mm(pi[s], right[t]), mm(pi[st], pi[inv[t]])):
                return Violation(s, t, "a")
            if not equal(mm(left[s], pi[t]), mm(pi[inv[s]], pi[st])):
                return Violation(s, t, "b")
    return None


def is_partial_rep(rep: PartialRep) -> bool:
    return verify_partial_rep(rep) is None


def _require_valid(rep: PartialRep) -> None:
    bad = verify_partial_rep(rep)
    if bad is not None:
        raise NotAPartialRep(bad)


# -- constructions --------------------------------------------------------

def _subgroup_elements(g: FiniteGroup, sub) -> list[int]:
    if isinstance(sub, int):
        elems = elements_of(sub)
    elif hasattr(sub, "bits"):
        elems = elements_of(sub.bits)
    else:
        elems = sorted(set(sub))
    if g.generate(elems) != mask_of(elems):
        raise InvalidInput("elements do not form a subgroup")
    return elems


def extend_by_zero(g: FiniteGroup, subgroup, matrices: Mapping[int, object]) -> PartialRep:
    """Extend a (partial) representation of ``H`` to ``G`` by the zero map off ``H``.

    ``matrices`` maps each element of ``H`` (as an index in ``G``) to its matrix.
    """
    elems = _subgroup_elements(g, subgroup)
    if set(matrices) != set(elems):
        raise InvalidInput("matrices must be given exactly on the subgroup")
    mats = {h: qmatrix(m) for h, m in matrices.items()}
    d = mats[g.identity].shape[0]
    inside = set(elems)
    for s in elems:
        for t in elems:
            st, ti, si = g.mul[s][t], g.inv[t], g.inv[s]
            if not equal(mat_chain(mats[s], mats[t], mats[ti]), mm(mats[st], mats[ti])) or not equal(
                mat_chain(mats[si], mats[s], mats[t]), mm(mats[si], mats[st])
            ):
                raise InvalidInput(f"input is not a partial representation of H at ({s}, {t})")
    if not equal(mats[g.identity], qeye(d)):
        raise InvalidInput("input must send e to the identity")
    full = tuple(mats[x] if x in inside else qzeros(d) for x in range(g.order))
    return PartialRep(g, full)


def coset_representation(g: FiniteGroup, subgroup, inner=None) -> dict[int, np.ndarray]:
    """Permutation matrices of ``H`` acting on its left cosets ``xK``.

    ``inner`` is the subgroup ``K`` of ``H`` (default trivial: the regular
    representation of ``H``); ``K = H`` gives the trivial representation.
    """
    elems = _subgroup_elements(g, subgroup)
    k_elems = [g.identity] if inner is None else _subgroup_elements(g, inner)
    if not set(k_elems) <= set(elems):
        raise InvalidInput("inner subgroup must lie inside the subgroup")
    cosets: list[int] = []
    for x in elems:
        c = mask_of(g.mul[x][k] for k in k_elems)
        if c not in cosets:
            cosets.append(c)
    pos = {c: i for i, c in enumerate(cosets)}
    out = {}
    for h in elems:
        m = qzeros(len(cosets))
        for c, i in pos.items():
            m[pos[g.translate(h, c)], i] = Fraction(1)
        out[h] = m
    return out


def direct_sum(*reps: PartialRep) -> PartialRep:
    g = reps[0].group
    if any(r.group != g for r in reps):
        raise GroupMismatch("direct sum over different groups")
    return PartialRep(g, tuple(block_diag(*(r.matrices[x] for r in reps)) for x in range(g.order)))


def conjugate(rep: PartialRep, p) -> PartialRep:
    """The equivalent partial representation ``x -> P pi(x) P^-1``."""
    p = qmatrix(p)
    p_inv = inverse(p)
    return PartialRep(rep.group, tuple(mat_chain(p, m, p_inv) for m in rep.matrices))


# -- projections ----------------------------------------------------------

@dataclass(eq=False)
class ProjectionFamily:
    """``eps[t] = pi(t) pi(t^-1)`` and the products ``P_S`` over subsets ``S``.

    ``P`` stores only the nonzero ``P_S`` (keyed by subset bitmask); all
    other ``P_S`` vanish.
    """

    rep: PartialRep
    eps: tuple[np.ndarray, ...]
    P: dict[int, np.ndarray]

    def projection(self, subset: int) -> np.ndarray:
        return self.P.get(subset, qzeros(self.rep.d))


def _projection_products(eps, d) -> dict[int, np.ndarray]:
    one = qeye(d)
    level = {0: one}
    for s, e_s in enumerate(eps):
        nxt = {}
        for mask, acc in level.items():
            with_s = mm(acc, e_s)
            without = mm(acc, one - e_s)
            if not is_zero(with_s):
                nxt[mask | (1 << s)] = with_s
            if not is_zero(without):
                nxt[mask] = without
        level = nxt
    return level


def projection_family(rep: PartialRep) -> ProjectionFamily:
    _require_valid(rep)
    g, pi, d = rep.group, rep.matrices, rep.d
    eps = tuple(mm(pi[t], pi[g.inv[t]]) for t in range(g.order))
    P = _projection_products(eps, d)
    fam = ProjectionFamily(rep, eps, P)
    _check_family(fam)
    return fam


def _check_family(fam: ProjectionFamily) -> None:
    g, pi, eps, d = fam.rep.group, fam.rep.matrices, fam.eps, fam.rep.d
    problems = []
    for t in range(g.order):
        if not equal(mm(eps[t], eps[t]), eps[t]):
            problems.append(f"eps({t}) not idempotent")
        for s in range(g.order):
            if not equal(mm(eps[t], eps[s]), mm(eps[s], eps[t])):
                problems.append(f"eps({t}), eps({s}) do not commute")
            if not equal(mm(pi[t], eps[s]), mm(eps[g.mul[t][s]], pi[t])):
                problems.append(f"exchange relation fails at ({t}, {s})")
    total = qzeros(d)
    for mask, p in fam.P.items():
        total = total + p
        if not (mask >> g.identity) & 1:
            problems.append(f"P_S nonzero for S={mask:x} without e")
        for t in range(g.order):
            if not (mask >> t) & 1 and not is_zero(mm(p, pi[t])):
                problems.append(f"P_S pi(t) nonzero for t={t} outside S={mask:x}")
        for other, q in fam.P.items():
            if other != mask and not is_zero(mm(p, q)):
                problems.append(f"P_S P_T nonzero for S={mask:x}, T={other:x}")
    if not equal(total, qeye(d)):
        problems.append("projections do not sum to the identity")
    if problems:
        raise ComputationError("projection family invariants fail: " + "; ".join(problems[:3]))


# -- lift to the groupoid algebra ----------------------------------------

class Lift(Mapping):
    """Unital homomorphism from the groupoid algebra: ``(A, g) -> pi(g) P_A``."""

    def __init__(self, family: ProjectionFamily):
        self.family = family
        self.group = family.rep.group

    def __getitem__(self, x: Arrow) -> np.ndarray:
        a, g = x
        return mm(self.family.rep.matrices[g], self.family.projection(a))

    def __iter__(self) -> Iterator[Arrow]:
        return iter(all_arrows(self.group))

    def __len__(self) -> int:
        return arrow_count(self.group.order)

    def apply(self, x: AlgebraElement) -> np.ndarray:
        if x.group != self.group:
            raise GroupMismatch("element belongs to a different group")
        out = qzeros(self.family.rep.d)
        for arrow, c in x.terms.items():
            out = out + self[arrow] * c
        return out


def lift(rep: PartialRep, bound: int | None = None) -> Lift:
    check_direct_bound(rep.group, bound)
    return Lift(projection_family(rep))


# -- invariant inner product ---------------------------------------------

def invariant_inner_product(rep: PartialRep) -> np.ndarray:
    """Gram matrix of ``<x, y> = sum_S sum_t [P_S pi(t) x, P_S pi(t) y]``.

    Starts from the standard inner product; the result is positive
    definite and satisfies ``pi(g)^T M = M pi(g^-1)``.
    """
    fam = projection_family(rep)
    g, pi = rep.group, rep.matrices
    gram = qzeros(rep.d)
    for p in fam.P.values():
        for t in range(g.order):
            v = mm(p, pi[t])
            gram = gram + mm(v.T, v)
    if not is_positive_definite(gram):
        raise ComputationError("Gram matrix is not positive definite")
    for x in range(g.order):
        if not equal(mm(pi[x].T, gram), mm(gram, pi[g.inv[x]])):
            raise ComputationError(f"Gram matrix is not invariant at element {x}")
    return gram


# -- prep v1 text format --------------------------------------------------

def dumps_prep(rep: PartialRep) -> str:
    lines = [f"prep 1 {rep.group.order} {rep.d}"]
    for m in rep.matrices:
        lines += [" ".join(format_rational(v) for v in row) for row in m]
    return "\n".join(lines) + "\n"


def loads_prep(g: FiniteGroup, text: str) -> PartialRep:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidInput("empty prep input")
    head = lines[0].split()
    if len(head) != 4 or head[:2] != ["prep", "1"] or not head[2].isdigit() or not head[3].isdigit():
        raise InvalidInput(f"bad prep header: {lines[0]!r}")
    n, d = int(head[2]), int(head[3])
    if n != g.order:
        raise InvalidInput(f"file is for a group of order {n}, not {g.order}")
    if d < 1:
        raise InvalidInput("dimension must be positive")
    if len(lines) != 1 + n * d:
        raise InvalidInput(f"expected {n * d} matrix rows, found {len(lines) - 1}")
    mats = []
    for k in range(n):
        rows = []
        for lineno in range(1 + k * d, 1 + (k + 1) * d):
            toks = lines[lineno].split()
            if len(toks) != d:
                raise InvalidInput(f"row {lineno}: expected {d} entries")
            try:
                rows.append([Fraction(tok) for tok in toks])
            except (ValueError, ZeroDivisionError):
                raise InvalidInput(f"row {lineno}: bad rational") from None
        mats.append(qmatrix(rows))
    return PartialRep(g, tuple(mats))
