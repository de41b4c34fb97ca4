# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coefficient kernels.

Same contract as ``qcong._kernels_py``. Inputs whose coefficients fit in a
machine word are processed with overflow-checked int64 arithmetic; on any
overflow the computation restarts on Python integers.
"""

from libc.stdlib cimport malloc, calloc, free

from qcong._kernels_py import kronecker_mul

cdef extern from *:
    """
    static inline int qc_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int qc_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int qc_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    bint qc_mul_ovf(long long a, long long b, long long *r) nogil
    bint qc_add_ovf(long long a, long long b, long long *r) nogil
    bint qc_sub_ovf(long long a, long long b, long long *r) nogil


# Operands longer than this go through Kronecker substitution when they do
# not fit the int64 path.
cdef Py_ssize_t OBJECT_CUTOFF = 24
# The int64 path is quadratic; past this length big-integer products win.
cdef Py_ssize_t WORD_CUTOFF = 400

KRONECKER_CUTOFF = 24
cdef long long LLONG_MIN_ = -9223372036854775807 - 1


cdef long long* _to_words(list src, Py_ssize_t n) except? NULL:
    # Returns NULL (without an exception) when some entry does not fit.
    cdef long long *out = <long long*> malloc(n * sizeof(long long))
    cdef Py_ssize_t i
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        try:
            out[i] = src[i]
        except OverflowError:
            free(out)
            return NULL
    return out


cdef list _word_mul(long long *a, Py_ssize_t la, long long *b, Py_ssize_t lb):
    # Returns None on overflow.
    cdef Py_ssize_t n = la + lb - 1, i, j
    cdef long long *acc = <long long*> calloc(n, sizeof(long long))
    cdef long long t
    cdef bint bad = False
    if acc == NULL:
        raise MemoryError()
    with nogil:
        for i in range(la):
            if a[i] == 0:
                continue
            for j in range(lb):
                if qc_mul_ovf(a[i], b[j], &t) or qc_add_ovf(acc[i + j], t, &acc[i + j]):
                    bad = True
                    break
            if bad:
                break
    if bad:
        free(acc)
        return None
    out = [acc[i] for i in range(n)]
    free(acc)
    return out


cdef list _object_mul(list a, list b):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    cdef list out = [0] * (la + lb - 1)
    cdef object x
    for i in range(la):
        x = a[i]
        if x:
            for j in range(lb):
                out[i + j] += x * b[j]
    return out


def mul(a, b):
    cdef list la_ = list(a), lb_ = list(b)
    cdef Py_ssize_t la = len(la_), lb = len(lb_)
    cdef long long *wa
    cdef long long *wb
    cdef list res
    if la == 0 or lb == 0:
        return []
    if la > lb:
        la_, lb_ = lb_, la_
        la, lb = lb, la
    if la <= WORD_CUTOFF:
        wa = _to_words(la_, la)
        if wa != NULL:
            wb = _to_words(lb_, lb)
            if wb != NULL:
                res = _word_mul(wa, la, wb, lb)
                free(wb)
                free(wa)
                if res is not None:
                    return res
            else:
                free(wa)
    if la > OBJECT_CUTOFF:
        return kronecker_mul(la_, lb_)
    return _object_mul(la_, lb_)


cdef object _word_divmod(list a, list b, long long lead):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, nt = 0
    cdef long long *r = _to_words(a, la)
    cdef long long *bw
    cdef long long *q
    cdef Py_ssize_t *idx
    cdef long long c, t
    cdef bint bad = False
    if r == NULL:
        return None
    bw = _to_words(b, lb)
    if bw == NULL:
        free(r)
        return None
    q = <long long*> calloc(la - lb + 1, sizeof(long long))
    idx = <Py_ssize_t*> malloc(lb * sizeof(Py_ssize_t))
    for j in range(lb - 1):
        if bw[j] != 0:
            idx[nt] = j
            nt += 1
    with nogil:
        i = la - lb
        while i >= 0:
            c = r[i + lb - 1]
            if c != 0:
                if lead == -1:
                    if c == LLONG_MIN_:
                        bad = True
                        break
                    c = -c
                q[i] = c
                for j in range(nt):
                    if qc_mul_ovf(c, bw[idx[j]], &t) or qc_sub_ovf(r[i + idx[j]], t, &r[i + idx[j]]):
                        bad = True
                        break
                if bad:
                    break
            i -= 1
    if bad:
        out = None
    else:
        out = ([q[i] for i in range(la - lb + 1)], [r[i] for i in range(lb - 1)])
    free(idx)
    free(q)
    free(bw)
    free(r)
    return out


cdef tuple _object_divmod(list a, list b, object lead):
    cdef Py_ssize_t la = len(a), lb = len(b), i, k, nt
    cdef list rem = list(a)
    cdef list quot = [0] * (la - lb + 1)
    cdef list pos = []
    cdef list val = []
    cdef object c
    for k in range(lb - 1):
        if b[k]:
            pos.append(k)
            val.append(b[k])
    nt = len(pos)
    i = la - lb
    while i >= 0:
        c = rem[i + lb - 1]
        if c:
            if lead == -1:
                c = -c
            quot[i] = c
            for k in range(nt):
                rem[i + <Py_ssize_t> pos[k]] -= c * val[k]
        i -= 1
    return quot, rem[: lb - 1]


def divmod_monic(a, b):
    cdef list la_ = list(a), lb_ = list(b)
    cdef Py_ssize_t la = len(la_), lb = len(lb_)
    lead = lb_[lb - 1]
    if lead != 1 and lead != -1:
        raise ValueError("divisor must have leading coefficient +1 or -1")
    if la < lb:
        return [], la_ + [0] * (lb - 1 - la)
    res = _word_divmod(la_, lb_, lead)
    if res is not None:
        return res
    return _object_divmod(la_, lb_, lead)


def add_shifted(a, b, Py_ssize_t shift):
    cdef list out = list(a)
    cdef Py_ssize_t end = shift + len(b), i
    if end > len(out):
        out.extend([0] * (end - len(out)))
    for i in range(len(b)):
        out[shift + i] += b[i]
    return out
