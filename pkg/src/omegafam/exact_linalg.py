"""Exact rational matrices and tensors held in numpy object arrays.

Entries are Python ints or fractions.Fraction; nothing here ever produces a
float.  Rank and kernel computations are done by elimination over the
integers/rationals.
"""

from fractions import Fraction
from math import gcd, lcm
import numbers

import numpy as np


class ShapeError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


def scalar(x):
    """Coerce ints, Fractions and "p/q" strings to an exact scalar."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, numbers.Integral):
        return int(x)
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, str):
        q = Fraction(x.strip())
        return int(q) if q.denominator == 1 else q
    if isinstance(x, numbers.Rational):
        q = Fraction(x.numerator, x.denominator)
        return int(q) if q.denominator == 1 else q
    raise TypeError(f"not an exact rational: {x!r}")


_scalar_vec = np.frompyfunc(scalar, 1, 1)


def exact_array(data, shape=None):
    arr = np.array(data, dtype=object)
    if arr.size:
        arr = _scalar_vec(arr).astype(object)
    if shape is not None:
        shape = tuple(shape)
        if arr.size == 0 and arr.shape != shape:
            arr = arr.reshape(shape)
        if arr.shape != shape:
            raise ShapeError(f"expected shape {shape}, got {arr.shape}")
    return arr


def zeros(shape):
    arr = np.empty(shape, dtype=object)
    arr.fill(0)
    return arr


def identity(n):
    m = zeros((n, n))
    for i in range(n):
        m[i, i] = 1
    return m


def is_zero(arr):
    arr = np.asarray(arr, dtype=object)
    return all(x == 0 for x in arr.flat)


def first_nonzero(arr):
    """Lexicographically smallest index with a nonzero entry, or None."""
    arr = np.asarray(arr, dtype=object)
    for idx in np.ndindex(arr.shape):
        if arr[idx] != 0:
            return idx
    return None


def normalize(arr):
    """Store integral fractions as ints (keeps later arithmetic on ints)."""
    arr = np.asarray(arr, dtype=object)
    if arr.size == 0:
        return arr.copy()
    return _scalar_vec(arr).astype(object)


def to_jsonable(arr):
    arr = np.asarray(arr, dtype=object)
    if arr.ndim == 0:
        return str(scalar(arr.item()))
    return [to_jsonable(x) for x in arr]


def _integer_rows(m):
    rows = []
    for r in m:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        row = {}
        for j, x in enumerate(r):
            if x != 0:
                row[j] = int(x * den)
        if row:
            rows.append(row)
    return rows


def _primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {j: v // g for j, v in row.items()}


def rank(m):
    """Exact rank by fraction-free elimination.

    Rows are scaled to integers, each elimination step is a cross
    multiplication, and rows are kept primitive (content divided out) to
    bound coefficient growth.  Rows are sparse dicts, which suits the very
    sparse coboundary matrices.
    """
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise ShapeError("rank expects a matrix")
    rows = [_primitive(r) for r in _integer_rows(m)]
    r = 0
    while rows:
        # pivot on the smallest leading column present, shortest row first
        col = min(min(row) for row in rows)
        cands = [k for k, row in enumerate(rows) if col in row]
        k = min(cands, key=lambda k: (len(rows[k]), abs(rows[k][col])))
        piv = rows.pop(k)
        p = piv[col]
        rest = []
        for row in rows:
            c = row.get(col)
            if c is None:
                rest.append(row)
                continue
            g = gcd(p, c)
            a, b = p // g, c // g
            new = {j: a * v for j, v in row.items()}
            for j, v in piv.items():
                w = new.get(j, 0) - b * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            if new:
                rest.append(_primitive(new))
        rows = rest
        r += 1
    return r


def rref(m):
    """Reduced row echelon form over the rationals; returns (R, pivots)."""
    a = [[Fraction(x) for x in row] for row in np.asarray(m, dtype=object)]
    nrows = len(a)
    ncols = np.asarray(m).shape[1] if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return exact_array(a, (nrows, ncols)) if nrows else zeros((0, ncols)), pivots


def kernel_basis(m):
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise ShapeError("kernel_basis expects a matrix")
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return [identity(ncols)[:, j].copy() for j in range(ncols)]
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = scalar(-red[i, f])
        basis.append(v)
    return basis


def inverse(m):
    m = np.asarray(m, dtype=object)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ShapeError("inverse expects a square matrix")
    aug = np.concatenate([m, identity(n)], axis=1)
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return normalize(red[:, n:])


def matpow(m, k):
    out = identity(m.shape[0])
    for _ in range(k):
        out = out @ m
    return normalize(out)


def assemble_linear_map(basis_images):
    """Matrix whose j-th column is the image of the j-th basis vector."""
    images = [np.asarray(v, dtype=object) for v in basis_images]
    if not images:
        return zeros((0, 0))
    lengths = {v.shape for v in images}
    if len(lengths) != 1 or images[0].ndim != 1:
        raise ShapeError("ragged basis images")
    return exact_array(np.stack(images, axis=1))
