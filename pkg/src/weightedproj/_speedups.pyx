# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernels; same contract as ``_kernels_py``."""

from weightedproj import _kernels_py

ctypedef unsigned long long u64

cdef int _BITS = 8
cdef u64 _MASK = 0xFF


cdef int _max_degree(dict terms, int arity):
    cdef int best = 0, e
    cdef tuple exp
    for exp in terms:
        for e in exp:
            if e > best:
                best = e
    return best


cdef list _pack(dict terms):
    cdef list out = []
    cdef tuple exp
    cdef u64 key
    cdef Py_ssize_t i
    for exp, c in terms.items():
        key = 0
        for i in range(len(exp) - 1, -1, -1):
            key = (key << _BITS) | <u64>(<long>exp[i])
        out.append((key, c))
    return out


def mul_terms(dict a, dict b, int arity):
    if not a or not b:
        return {}
    # 8 bits per variable in one machine word; otherwise defer
    if arity * _BITS > 63 or _max_degree(a, arity) + _max_degree(b, arity) > 255:
        return _kernels_py.mul_terms(a, b, arity)
    cdef list pa = _pack(a)
    cdef list pb = _pack(b)
    cdef Py_ssize_t na = len(pa), nb = len(pb), i, j, v
    cdef u64 ka, k
    cdef dict acc = {}
    cdef object ca, cb, key, prev
    for i in range(na):
        ka = <u64>pa[i][0]
        ca = pa[i][1]
        for j in range(nb):
            k = ka + <u64>pb[j][0]
            cb = pb[j][1]
            key = k
            prev = acc.get(key)
            if prev is None:
                acc[key] = ca * cb
            else:
                acc[key] = prev + ca * cb
    cdef dict out = {}
    cdef list exp
    for key, c in acc.items():
        if not c:
            continue
        k = <u64>key
        exp = []
        for v in range(arity):
            exp.append(<long>(k & _MASK))
            k >>= _BITS
        out[tuple(exp)] = c
    return out


def add_terms(dict a, dict b, long sign):
    cdef dict out = dict(a)
    cdef object v
    for exp, c in b.items():
        v = out.get(exp, 0) + sign * c
        if v:
            out[exp] = v
        else:
            out.pop(exp, None)
    return out
