# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact-elimination kernels.

Same semantics as the pure-Python versions in :mod:`sphbranch.linalg`, which
selects this module at import when it has been built.  Entries stay Python
objects (ints or exact rationals); the gain is in the loop overhead.
"""

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as _Q


def matmul(list A, list B):
    """A @ B for dense blocks given as lists of row lists."""
    cdef Py_ssize_t c, k, j, m
    cdef list row, acc, bk, out
    cdef object a, b
    if not A or not B:
        c = len(B[0]) if B else 0
        return [[0] * c for _ in range(len(A))]
    c = len(B[0])
    out = []
    for row in A:
        acc = [0] * c
        m = len(row)
        for k in range(m):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(c):
                    b = bk[j]
                    if b:
                        acc[j] = acc[j] + a * b
        out.append(acc)
    return out


def reduce_rows(list rows, Py_ssize_t ncols):
    """Row-reduce in place to reduced echelon form; returns pivot columns."""
    cdef list pivots = []
    cdef Py_ssize_t r = 0, nrows = len(rows), c, k, p, t
    cdef list prow, rk
    cdef object piv, inv, f, y
    for c in range(ncols):
        p = -1
        for k in range(r, nrows):
            if (<list>rows[k])[c]:
                p = k
                break
        if p < 0:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = <list>rows[r]
        piv = prow[c]
        if piv != 1:
            inv = _Q(1) / piv
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        for k in range(nrows):
            if k != r:
                rk = <list>rows[k]
                f = rk[c]
                if f:
                    for t in range(c, ncols):
                        y = prow[t]
                        if y:
                            rk[t] = rk[t] - f * y
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


cdef class IncrementalBasis:
    """Greedy maximal independent subset of a stream of sparse vectors.

    ``add(v)`` returns ``(True, index)`` when v is independent of the vectors
    kept so far, else ``(False, coeffs)`` with v == sum(coeffs[j] * kept[j]).
    """

    cdef public list rows
    cdef public Py_ssize_t count

    def __init__(self):
        self.rows = []
        self.count = 0

    def add(self, dict vec):
        cdef dict r = dict(vec)
        cdef dict acc = {}
        cdef dict row, combo
        cdef tuple entry
        cdef object piv, f, x, y, c, j, inv
        for entry in self.rows:
            piv = entry[0]
            f = r.get(piv)
            if not f:
                continue
            row = <dict>entry[1]
            combo = <dict>entry[2]
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
        inv = _Q(1) / r[piv]
        t = self.count
        self.count += 1
        combo = {j: -x * inv for j, x in acc.items()}
        combo[t] = inv
        self.rows.append((piv, {c: x * inv for c, x in r.items()}, combo))
        return True, t


def raised_images(list R, list offsets, Py_ssize_t count, Py_ssize_t i, object h):
    """Sparse raised images of the candidates f_i v_k, k < count.

    Column k of ``R[j]`` is the component in the j-th raised space; the
    diagonal term h v_k is added in the i-th one.
    """
    cdef list out = []
    cdef Py_ssize_t k, j, r, o, n = len(R)
    cdef dict vec
    cdef list Rj, row
    cdef object x
    for k in range(count):
        vec = {}
        for j in range(n):
            o = offsets[j]
            if R[j] is not None:
                Rj = <list>R[j]
                for r in range(len(Rj)):
                    row = <list>Rj[r]
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
