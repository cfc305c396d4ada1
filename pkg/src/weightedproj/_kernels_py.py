"""Pure-Python sparse polynomial kernels.

Terms are dicts mapping exponent tuples to nonzero ints. Products pack each
exponent tuple into one int (16 bits per variable) so the inner loop adds
keys instead of tuples.
"""

_BITS = 16
_MASK = (1 << _BITS) - 1


def _pack(terms):
    out = {}
    for exp, c in terms.items():
        key = 0
        for e in reversed(exp):
            key = (key << _BITS) | e
        out[key] = c
    return out


def _unpack(packed, arity):
    out = {}
    for key, c in packed.items():
        exp = []
        for _ in range(arity):
            exp.append(key & _MASK)
            key >>= _BITS
        out[tuple(exp)] = c
    return out


def mul_terms(a, b, arity):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    pa = _pack(a)
    pb = list(_pack(b).items())
    acc = {}
    get = acc.get
    for ka, ca in pa.items():
        for kb, cb in pb:
            k = ka + kb
            acc[k] = get(k, 0) + ca * cb
    return _unpack({k: c for k, c in acc.items() if c}, arity)


def add_terms(a, b, sign):
    out = dict(a)
    for exp, c in b.items():
        v = out.get(exp, 0) + sign * c
        if v:
            out[exp] = v
        else:
            out.pop(exp, None)
    return out
