"""Exact rational linear algebra on small dense blocks.

Blocks are lists of rows.  Entries are exact rationals (``gmpy2.mpq`` when
available, else ``fractions.Fraction``) or Python ints.  The pure-Python
kernels here are replaced at import by the compiled ones in
``sphbranch._kernels`` when that extension is built, unless the environment
variable ``SPHBRANCH_PURE`` is set to 1.  ``KERNELS`` names the active set.
"""

from __future__ import annotations

import os
from fractions import Fraction

try:  # pragma: no cover - depends on environment
    from gmpy2 import mpq as _mpq

    def rational(num, den=1):
        return _mpq(num, den)

    RATIONAL_BACKEND = "gmpy2"
except ImportError:  # pragma: no cover
    rational = Fraction
    RATIONAL_BACKEND = "fractions"


def to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator)) if not isinstance(x, int) else Fraction(x)


def zeros(r: int, c: int) -> list:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(A, B) -> list:
    """A @ B for dense blocks; A is r x m, B is m x c."""
    if not A or not B:
        c = len(B[0]) if B else 0
        return zeros(len(A), c)
    c = len(B[0])
    out = []
    for row in A:
        acc = [0] * c
        for k, a in enumerate(row):
            if a:
                bk = B[k]
                for j in range(c):
                    b = bk[j]
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def matvec(A, v) -> list:
    return [sum((a * x for a, x in zip(row, v) if a and x), 0) for row in A]


def sub(A, B) -> list:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(c, A) -> list:
    return [[c * a for a in row] for row in A]


def transpose(A, ncols: int | None = None) -> list:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def is_zero(A) -> bool:
    return all(not x for row in A for x in row)


def _reduce_rows(rows, ncols):
    """Row-reduce in place to reduced echelon form; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        p = None
        for k in range(r, nrows):
            if rows[k][c]:
                p = k
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            inv = rational(1) / piv
            rows[r] = [x * inv if x else x for x in rows[r]]
        prow = rows[r]
        for k in range(nrows):
            if k != r:
                f = rows[k][c]
                if f:
                    rows[k] = [x - f * y if y else x for x, y in zip(rows[k], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(rows, ncols: int):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    piv = _reduce_rows(rows, ncols)
    return rows[: len(piv)], piv


def rank(rows, ncols: int) -> int:
    if not rows:
        return 0
    return len(_reduce_rows([list(r) for r in rows], ncols))


def nullspace(rows, ncols: int) -> list:
    """Basis of {x : rows @ x = 0} as a list of vectors of length ncols."""
    R, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, p in zip(R, piv):
            if row[f]:
                x[p] = -row[f]
        basis.append(x)
    return basis


class IncrementalBasis:
    """Greedy maximal independent subset of a stream of vectors.

    ``add(v)`` returns ``(True, index)`` when v is independent of the vectors
    kept so far (it becomes basis vector ``index``), else ``(False, coeffs)``
    with v == sum(coeffs[j] * kept[j]).
    """

    def __init__(self):
        self.rows = []  # echelon rows: (pivot, dict row, dict combo)
        self.count = 0

    def add(self, vec: dict):
        r = dict(vec)
        acc: dict = {}
        for piv, row, combo in self.rows:
            f = r.get(piv)
            if not f:
                continue
            for c, x in row.items():
                y = r.get(c, 0) - f * x
                if y:
                    r[c] = y
                else:
                    r.pop(c, None)
            for j, x in combo.items():
                y = acc.get(j, 0) + f * x
                if y:
                    acc[j] = y
                else:
                    acc.pop(j, None)
        if not r:
            return False, acc
        piv = min(r)
        inv = rational(1) / r[piv]
        t = self.count
        self.count += 1
        combo = {j: -x * inv for j, x in acc.items()}
        combo[t] = inv
        self.rows.append((piv, {c: x * inv for c, x in r.items()}, combo))
        return True, t


def raised_images(R, offsets, count: int, i: int, h) -> list:
    """Sparse raised images of the candidates f_i v_k, k < count.

    Column k of ``R[j]`` is the component in the j-th raised space; the
    diagonal term h v_k is added in the i-th one.
    """
    out = []
    for k in range(count):
        vec = {}
        for j, Rj in enumerate(R):
            o = offsets[j]
            if Rj is not None:
                for r, row in enumerate(Rj):
                    x = row[k]
                    if x:
                        vec[o + r] = x
            if j == i and h:
                x = vec.get(o + k, 0) + h
                if x:
                    vec[o + k] = x
                else:
                    vec.pop(o + k, None)
        out.append(vec)
    return out


py_matmul = matmul
py_raised_images = raised_images
py_reduce_rows = _reduce_rows
PyIncrementalBasis = IncrementalBasis

KERNELS = "python"
if os.environ.get("SPHBRANCH_PURE", "") != "1":
    try:
        from ._kernels import IncrementalBasis, matmul, raised_images  # noqa: F811
        from ._kernels import reduce_rows as _reduce_rows  # noqa: F811

        KERNELS = "cython"
    except ImportError:  # extension not built
        pass
