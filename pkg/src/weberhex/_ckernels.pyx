# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contract as ``weberhex._pykernels``."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t


def mask_images(const unsigned char[:] perms, unsigned int mask):
    cdef Py_ssize_t order = perms.shape[0] // 16
    cdef Py_ssize_t g, base
    cdef int nbits = 0, k
    cdef int bits[16]
    cdef unsigned int img
    for k in range(16):
        if mask >> k & 1:
            bits[nbits] = k
            nbits += 1
    out = [0] * order
    for g in range(order):
        base = 16 * g
        img = 0
        for k in range(nbits):
            img |= 1u << perms[base + bits[k]]
        out[g] = img
    return out


def stabilizer_members(const unsigned char[:] perms, unsigned int mask):
    cdef Py_ssize_t order = perms.shape[0] // 16
    cdef Py_ssize_t g, base
    cdef int nbits = 0, k
    cdef int bits[16]
    cdef bint ok
    for k in range(16):
        if mask >> k & 1:
            bits[nbits] = k
            nbits += 1
    out = []
    for g in range(order):
        base = 16 * g
        ok = True
        for k in range(nbits):
            if not (mask >> perms[base + bits[k]]) & 1:
                ok = False
                break
        if ok:
            out.append(g)
    return out


def sqrt_mul(list a, list b, list lamprod):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t x, y
    cdef list c = [0] * n
    cdef object ax, by
    for x in range(n):
        ax = a[x]
        if not ax:
            continue
        for y in range(n):
            by = b[y]
            if by:
                c[x ^ y] = c[x ^ y] + ax * by * lamprod[x & y]
    return c


def box_search(gram, target, values):
    # int64 only; the dispatcher falls back to Python when entries are too big
    cdef int n = len(gram)
    cdef int64_t t = target
    cdef int64_t *g = <int64_t *> malloc(n * n * sizeof(int64_t))
    cdef int nv = len(values)
    cdef int *z = <int *> malloc(n * sizeof(int))
    cdef int *k = <int *> malloc(n * sizeof(int))
    cdef int *vals = <int *> malloc(nv * sizeof(int))
    cdef int i, j, pos
    cdef int64_t acc, row
    hits = []
    if g == NULL or z == NULL or k == NULL or vals == NULL:
        free(g)
        free(z)
        free(k)
        free(vals)
        raise MemoryError()
    try:
        for i in range(n):
            for j in range(n):
                g[i * n + j] = gram[i][j]
        for i in range(nv):
            vals[i] = values[i]
        for i in range(n):
            k[i] = 0
            z[i] = vals[0]
        while True:
            acc = 0
            for i in range(n):
                if z[i] != 0:
                    row = 0
                    for j in range(n):
                        row += g[i * n + j] * z[j]
                    acc += z[i] * row
            if acc == t:
                hits.append(tuple([z[i] for i in range(n)]))
            pos = n - 1
            while pos >= 0 and k[pos] == nv - 1:
                k[pos] = 0
                z[pos] = vals[0]
                pos -= 1
            if pos < 0:
                break
            k[pos] += 1
            z[pos] = vals[k[pos]]
    finally:
        free(g)
        free(z)
        free(k)
        free(vals)
    return hits
