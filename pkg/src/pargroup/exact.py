"""Exact rational matrices as numpy object arrays of ``Fraction``."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

_INT64_SAFE = 1 << 62


def qmatrix(rows) -> np.ndarray:
    arr = np.array(rows, dtype=object)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d array")
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = Fraction(v)
    return out


def qzeros(d: int) -> np.ndarray:
    return np.full((d, d), Fraction(0), dtype=object)


def qeye(d: int) -> np.ndarray:
    out = qzeros(d)
    for i in range(d):
        out[i, i] = Fraction(1)
    return out


def is_zero(a: np.ndarray) -> bool:
    return not any(a.flat)


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and bool((a == b).all())


def _scaled(a: np.ndarray) -> tuple[np.ndarray, int]:
    """Integer array ``A`` and denominator ``den`` with ``a == A / den``."""
    den = math.lcm(*(x.denominator for x in a.flat)) if a.size else 1
    return np.array([x.numerator * (den // x.denominator) for x in a.flat], dtype=object).reshape(a.shape), den


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product, done in int64 when the entries allow it."""
    ia, da = _scaled(a)
    ib, db = _scaled(b)
    big_a = max((abs(x) for x in ia.flat), default=0)
    big_b = max((abs(x) for x in ib.flat), default=0)
    if big_a * big_b * max(a.shape[1], 1) < _INT64_SAFE:
        prod = (ia.astype(np.int64) @ ib.astype(np.int64)).astype(object)
    else:
        prod = ia @ ib
    den = da * db
    out = np.empty(prod.shape, dtype=object)
    for idx, v in np.ndenumerate(prod):
        out[idx] = Fraction(int(v), den)
    return out


def mat_chain(*mats: np.ndarray) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = matmul(out, m)
    return out


def inverse(a: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inverse; raises ``ValueError`` on singular input."""
    d = a.shape[0]
    work = np.concatenate([qmatrix(a), qeye(d)], axis=1)
    for col in range(d):
        pivot = next((r for r in range(col, d) if work[r, col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
        work[col] = work[col] / work[col, col]
        for r in range(d):
            if r != col and work[r, col] != 0:
                work[r] = work[r] - work[r, col] * work[col]
    return work[:, d:]


def ldl_pivots(a: np.ndarray) -> list[Fraction]:
    """Diagonal of ``D`` in ``A = L D L^T`` without pivoting.

    Stops at the first non-positive pivot, which already decides that a
    symmetric matrix is not positive definite.
    """
    d = a.shape[0]
    work = qmatrix(a)
    pivots = []
    for k in range(d):
        p = work[k, k]
        pivots.append(p)
        if p <= 0:
            break
        col = work[k + 1 :, k] / p
        work[k + 1 :, k + 1 :] = work[k + 1 :, k + 1 :] - np.outer(col, work[k, k + 1 :])
    return pivots


def is_symmetric(a: np.ndarray) -> bool:
    return equal(a, a.T)


def is_positive_definite(a: np.ndarray) -> bool:
    if not is_symmetric(a):
        return False
    pivots = ldl_pivots(a)
    return len(pivots) == a.shape[0] and all(p > 0 for p in pivots)


def block_diag(*mats: np.ndarray) -> np.ndarray:
    d = sum(m.shape[0] for m in mats)
    out = qzeros(d)
    pos = 0
    for m in mats:
        k = m.shape[0]
        out[pos : pos + k, pos : pos + k] = m
        pos += k
    return out


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"
