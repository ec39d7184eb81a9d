# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel for sparse polynomial term arithmetic.

Behavioral twin of `_termops_py`: same functions, same dict-of-exponent-tuple
representation, same mixing of int and Fraction coefficients.  The win is
C-level loop and tuple handling around the coefficient arithmetic.
"""

from fractions import Fraction




def add_terms(dict a, dict b):
    cdef dict out
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    cdef object exps, coeff, s
    for exps, coeff in b.items():
        s = out.get(exps, 0) + coeff
        if s:
            out[exps] = s
        elif exps in out:
            del out[exps]
    return out


def sub_terms(dict a, dict b):
    cdef dict out
    if not b:
        return dict(a)
    out = dict(a)
    cdef object exps, coeff, s
    for exps, coeff in b.items():
        s = out.get(exps, 0) - coeff
        if s:
            out[exps] = s
        elif exps in out:
            del out[exps]
    return out


def neg_terms(dict a):
    cdef dict out = {}
    cdef object exps, coeff
    for exps, coeff in a.items():
        out[exps] = -coeff
    return out


def scale_terms(dict a, c):
    cdef dict out = {}
    cdef object exps, coeff
    if not c:
        return out
    for exps, coeff in a.items():
        out[exps] = coeff * c
    return out


cdef inline tuple _add_exps(tuple ea, tuple eb):
    cdef Py_ssize_t i, n = len(ea)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <object>ea[i] + <object>eb[i]
    return tuple(out)


cdef inline long _total_deg(tuple exps):
    cdef long total = 0
    cdef Py_ssize_t i
    for i in range(len(exps)):
        total += <long>exps[i]
    return total


def mul_terms(dict a, dict b, long trunc=-1):
    """Product of two term dicts, optionally dropping total degree > trunc."""
    cdef dict out = {}
    cdef dict small, big, buckets
    cdef object ea, ca, eb, cb, s, pair
    cdef tuple exps
    cdef long allowed, d
    cdef list degrees, bucket
    if not a or not b:
        return out
    if len(a) > len(b):
        small, big = b, a
    else:
        small, big = a, b
    if trunc >= 0:
        # bucket the large factor by total degree so each term of the small
        # factor only meets partners that survive the cap
        buckets = {}
        for eb, cb in big.items():
            d = _total_deg(<tuple>eb)
            if d in buckets:
                (<list>buckets[d]).append((eb, cb))
            else:
                buckets[d] = [(eb, cb)]
        degrees = sorted(buckets)
        for ea, ca in small.items():
            allowed = trunc - _total_deg(<tuple>ea)
            if allowed < 0:
                continue
            for d in degrees:
                if d > allowed:
                    break
                bucket = <list>buckets[d]
                for pair in bucket:
                    eb = (<tuple>pair)[0]
                    cb = (<tuple>pair)[1]
                    exps = _add_exps(<tuple>ea, <tuple>eb)
                    s = out.get(exps, 0) + ca * cb
                    if s:
                        out[exps] = s
                    elif exps in out:
                        del out[exps]
        return out
    for ea, ca in small.items():
        for eb, cb in big.items():
            exps = _add_exps(<tuple>ea, <tuple>eb)
            s = out.get(exps, 0) + ca * cb
            if s:
                out[exps] = s
            elif exps in out:
                del out[exps]
    return out


def pow_terms(dict a, long k, long trunc=-1):
    cdef dict result
    cdef long i
    if k == 0:
        nvars = len(next(iter(a))) if a else 0
        return {(0,) * nvars: Fraction(1)}
    result = dict(a)
    for i in range(k - 1):
        result = mul_terms(result, a, trunc)
    return result


def diff_terms(dict a, Py_ssize_t idx):
    cdef dict out = {}
    cdef object exps, coeff, s
    cdef tuple lowered
    cdef long e
    for exps, coeff in a.items():
        e = <long>(<tuple>exps)[idx]
        if e == 0:
            continue
        lowered = (<tuple>exps)[:idx] + (e - 1,) + (<tuple>exps)[idx + 1:]
        s = out.get(lowered, 0) + coeff * e
        if s:
            out[lowered] = s
        elif lowered in out:
            del out[lowered]
    return out


def truncate_terms(dict a, long trunc):
    cdef dict out = {}
    cdef object exps, coeff
    cdef long total
    cdef Py_ssize_t i
    for exps, coeff in a.items():
        total = 0
        for i in range(len(<tuple>exps)):
            total += <long>(<tuple>exps)[i]
        if total <= trunc:
            out[exps] = coeff
    return out


def eval_terms(dict a, tuple values):
    """Exact evaluation; `values` holds one Fraction per variable."""
    cdef object total = 0
    cdef dict cache = {}
    cdef object exps, coeff, term, p
    cdef long e
    cdef Py_ssize_t i
    for exps, coeff in a.items():
        term = coeff
        for i in range(len(<tuple>exps)):
            e = <long>(<tuple>exps)[i]
            if e == 0:
                continue
            key = (i, e)
            p = cache.get(key)
            if p is None:
                p = values[i] ** e
                cache[key] = p
            term = term * p
        total = total + term
    return total
