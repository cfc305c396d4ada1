"""Exact integer linear algebra on small lattices.

Vectors and linear forms are plain tuples of Python ints; matrices are tuples
of row tuples. Everything here is a pure function of its arguments.
"""

from __future__ import annotations

from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from sympy import isprime, primefactors

LatticeVector = tuple[int, ...]
LinearForm = tuple[int, ...]
IntegerMatrix = tuple[LatticeVector, ...]


class LatticeError(ValueError):
    pass


def p_content(value: int, p: int) -> int:
    """Largest power of the prime ``p`` dividing ``value``."""
    if value == 0:
        raise LatticeError("p-content undefined at zero")
    if not isprime(p):
        raise LatticeError(f"{p} is not prime")
    value = abs(value)
    q = 1
    while value % p == 0:
        value //= p
        q *= p
    return q


def prime_support(values: Iterable[int]) -> list[int]:
    """Sorted primes dividing at least one of the nonzero ``values``."""
    primes: set[int] = set()
    for v in values:
        if v:
            primes.update(primefactors(abs(v)))
    return sorted(primes)


def gcd_all(values: Iterable[int]) -> int:
    return reduce(gcd, values, 0)


def lcm_all(values: Iterable[int]) -> int:
    return reduce(lcm, values, 1)


def is_primitive(v: Sequence[int]) -> bool:
    return gcd_all(v) == 1


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise LatticeError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def as_matrix(rows: Iterable[Iterable[int]]) -> IntegerMatrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and len({len(r) for r in m}) != 1:
        raise LatticeError("matrix rows have unequal lengths")
    return m


def transpose(a: Sequence[Sequence[int]], ncols: int | None = None) -> IntegerMatrix:
    # ncols is needed for matrices with no rows
    if not a:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*a))


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> LatticeVector:
    return tuple(dot(row, v) for row in a)


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntegerMatrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def identity(n: int) -> IntegerMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def hermite_normal_form(
    a: Sequence[Sequence[int]], ncols: int | None = None
) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``H == A @ U``, ``U`` unimodular, and ``H`` in
    column echelon form: each pivot is positive and the entries to its left
    in the pivot row lie in ``[0, pivot)``. Columns of ``H`` past the rank
    are zero. Pivots are taken row by row, top to bottom, so the output is
    fully determined by ``A``.
    """
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    h = [list(row) for row in a]
    u = [list(row) for row in identity(n)]

    def combine(i: int, j: int, s: int, t: int, x: int, y: int) -> None:
        # (col_i, col_j) <- (s*col_i + t*col_j, x*col_i + y*col_j)
        for mat in (h, u):
            for row in mat:
                ci, cj = row[i], row[j]
                row[i] = s * ci + t * cj
                row[j] = x * ci + y * cj

    col = 0
    for r in range(m):
        if col == n:
            break
        row = h[r]
        for j in range(col + 1, n):
            b = row[j]
            if b == 0:
                continue
            a0 = row[col]
            g, s, t = xgcd(a0, b)
            combine(col, j, s, t, -b // g, a0 // g)
        pivot = row[col]
        if pivot == 0:
            continue
        if pivot < 0:
            for mat in (h, u):
                for rr in mat:
                    rr[col] = -rr[col]
            pivot = -pivot
        for j in range(col):
            q = row[j] // pivot
            if q:
                for mat in (h, u):
                    for rr in mat:
                        rr[j] -= q * rr[col]
        col += 1
    return as_matrix(h) if m else tuple(), as_matrix(u)


def row_hermite_basis(rows: Sequence[Sequence[int]], ncols: int) -> IntegerMatrix:
    """Canonical row-echelon basis of the lattice spanned by ``rows``."""
    if not rows:
        return ()
    h, _ = hermite_normal_form(transpose(rows, ncols), len(rows))
    ht = transpose(h, len(rows))
    return tuple(r for r in ht if any(r))


def kernel_basis(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[LatticeVector]:
    """Saturated basis of the integer kernel ``{x : M x = 0}``.

    ``ncols`` is only required when ``m`` has no rows. The basis is returned
    in canonical row-Hermite form, so it depends only on the kernel lattice.
    """
    n = len(m[0]) if m else ncols
    if n is None:
        raise LatticeError("ncols required for a matrix with no rows")
    h, u = hermite_normal_form(m, n)
    rank = 0
    if m:
        for j in range(n):
            if any(row[j] for row in h):
                rank = j + 1
    ut = transpose(u)
    kernel = ut[rank:]
    return list(row_hermite_basis(kernel, n))


def quotient_basis(u: Sequence[int]) -> IntegerMatrix:
    """Matrix ``Q`` with ``Q u = 0`` presenting ``Z^(n+1) / Z u`` as ``Z^n``.

    The rows of ``Q`` form a basis of the (saturated) orthogonal lattice of
    ``u``, which makes ``Q`` surjective whenever ``u`` is primitive.
    """
    u = tuple(u)
    if not u or gcd_all(u) != 1:
        raise LatticeError("weight vector not primitive")
    return tuple(kernel_basis([u]))


def smith_invariants(a: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix."""
    d = [list(row) for row in a]
    m = len(d)
    n = len(d[0]) if m else 0
    out: list[int] = []
    t = 0
    while t < min(m, n):
        entries = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        d[t], d[pi] = d[pi], d[t]
        for row in d:
            row[t], row[pj] = row[pj], row[t]
        p = d[t][t]
        dirty = False
        for i in range(t + 1, m):
            q = d[i][t] // p
            if q:
                d[i] = [x - q * y for x, y in zip(d[i], d[t])]
            dirty |= d[i][t] != 0
        for j in range(t + 1, n):
            q = d[t][j] // p
            if q:
                for row in d:
                    row[j] -= q * row[t]
            dirty |= d[t][j] != 0
        if dirty:
            continue
        bad = next(
            (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p),
            None,
        )
        if bad is not None:
            d[t] = [x + y for x, y in zip(d[t], d[bad])]
            continue
        out.append(abs(p))
        t += 1
    return out


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise LatticeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(a: Sequence[Sequence[int]]) -> bool:
    return len(a) > 0 and all(len(r) == len(a) for r in a) and abs(determinant(a)) == 1


def unimodular_inverse(a: Sequence[Sequence[int]]) -> IntegerMatrix:
    if not is_unimodular(a):
        raise LatticeError("matrix is not unimodular")
    h, u = hermite_normal_form(a)
    assert h == identity(len(a))
    return u
