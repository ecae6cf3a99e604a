"""Random partial representations and corruptions, plus a sympy axiom oracle."""

import sympy

from pargroup.exact import qmatrix
from pargroup.lattice import subgroup_lattice
from pargroup.parrep import PartialRep, conjugate, coset_representation, direct_sum, extend_by_zero
from pargroup.zoo import zoo_group

SMALL = ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z2xZ2", "S3"]


def random_partial_rep(rng, names=SMALL, max_parts=3, conj=True):
    """Direct sum of extensions by zero of coset representations, maybe conjugated."""
    g = zoo_group(rng.choice(names))
    lat = subgroup_lattice(g)
    parts = []
    for _ in range(rng.randint(1, max_parts)):
        h = rng.randrange(len(lat))
        k = rng.choice([j for j in range(len(lat)) if lat.contains(h, j)])
        mats = coset_representation(g, lat.subgroups[h], lat.subgroups[k])
        parts.append(extend_by_zero(g, lat.subgroups[h], mats))
    rep = direct_sum(*parts)
    if conj and rng.random() < 0.5:
        d = rep.d
        p = [[0] * d for _ in range(d)]
        for i in range(d):
            p[i][i] = rng.choice([1, 2, -1])
            for j in range(i + 1, d):
                p[i][j] = rng.randint(-2, 2)
        rep = conjugate(rep, p)
    return rep


def sym(m):
    return sympy.Matrix(m.shape[0], m.shape[1], [sympy.Rational(v.numerator, v.denominator) for v in m.flat])


def violations(rep):
    """All ``(s, t, axiom)`` failures in checker order, computed with sympy."""
    g = rep.group
    pi = [sym(m) for m in rep.matrices]
    inv, mul = g.inv, g.mul
    out = []
    if pi[g.identity] != sympy.eye(rep.d):
        out.append((g.identity, g.identity, "c"))
    for s in range(g.order):
        for t in range(g.order):
            st = mul[s][t]
            if pi[s] * pi[t] * pi[inv[t]] != pi[st] * pi[inv[t]]:
                out.append((s, t, "a"))
            if pi[inv[s]] * pi[s] * pi[t] != pi[inv[s]] * pi[st]:
                out.append((s, t, "b"))
    return out


def axiom_fails(rep, s, t, axiom):
    g = rep.group
    pi = [sym(m) for m in rep.matrices]
    if axiom == "c":
        return pi[g.identity] != sympy.eye(rep.d)
    st, ti, si = g.mul[s][t], g.inv[t], g.inv[s]
    if axiom == "a":
        return pi[s] * pi[t] * pi[ti] != pi[st] * pi[ti]
    return pi[si] * pi[s] * pi[t] != pi[si] * pi[st]


def corrupt(rep, rng):
    """Perturb one matrix of ``rep``; the result may or may not stay valid."""
    g, d = rep.group, rep.d
    x = rng.randrange(g.order)
    m = [[v for v in row] for row in rep.matrices[x].tolist()]
    kind = rng.choice(["bump", "scale", "zero", "identity"])
    if kind == "bump":
        m[rng.randrange(d)][rng.randrange(d)] += rng.choice([1, -1, 2])
    elif kind == "scale":
        m = [[2 * v for v in row] for row in m]
    elif kind == "zero":
        m = [[0] * d for _ in range(d)]
    else:
        m = [[int(i == j) for j in range(d)] for i in range(d)]
    return rep.with_matrix(x, qmatrix(m))


def corrupted_reps(rng, count):
    """``count`` corrupted maps that the oracle confirms are not partial representations."""
    out = []
    while len(out) < count:
        bad = corrupt(random_partial_rep(rng, max_parts=2), rng)
        if violations(bad):
            out.append(bad)
    return out


__all__ = ["PartialRep", "SMALL", "axiom_fails", "corrupt", "corrupted_reps", "random_partial_rep", "sym", "violations"]
