# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Fixed-width kernels; callers guarantee modulus < 2**62."""

from libc.stdlib cimport malloc, calloc, free

cdef extern from *:
    """
    #include <stdint.h>
    static inline int64_t mulmod_i64(int64_t a, int64_t b, int64_t m) {
        return (int64_t)(((__int128)a * (__int128)b) % m);
    }
    """
    long long mulmod_i64(long long a, long long b, long long m) nogil


def poly_mulmod(a, b, long long p, long long m, modulus):
    cdef long long M = modulus
    cdef Py_ssize_t d = len(a)
    cdef long long q = 1
    cdef long long k
    for k in range(m - 1):
        q *= p
    cdef Py_ssize_t n = p * q
    cdef long long *A = <long long *> malloc(d * sizeof(long long))
    cdef long long *B = <long long *> malloc(d * sizeof(long long))
    cdef long long *C = <long long *> calloc(n, sizeof(long long))
    cdef Py_ssize_t i, j, r, idx
    cdef long long t, top
    try:
        for i in range(d):
            A[i] = a[i] % modulus
            B[i] = b[i] % modulus
        for i in range(d):
            if A[i] == 0:
                continue
            for j in range(d):
                if B[j] == 0:
                    continue
                idx = i + j
                if idx >= n:
                    idx -= n
                t = C[idx] + mulmod_i64(A[i], B[j], M)
                if t >= M:
                    t -= M
                C[idx] = t
        for r in range(q):
            top = C[d + r]
            if top:
                for j in range(p - 1):
                    idx = j * q + r
                    t = C[idx] - top
                    if t < 0:
                        t += M
                    C[idx] = t
        return [C[i] for i in range(d)]
    finally:
        free(A)
        free(B)
        free(C)


def poly_taylor_shift(a, modulus):
    cdef long long M = modulus
    cdef Py_ssize_t d = len(a)
    cdef long long *c = <long long *> malloc(d * sizeof(long long))
    cdef Py_ssize_t i, j
    cdef long long t
    try:
        for i in range(d):
            c[i] = a[i] % modulus
        for i in range(d - 1):
            for j in range(d - 2, i - 1, -1):
                t = c[j] + c[j + 1]
                if t >= M:
                    t -= M
                c[j] = t
        return [c[i] for i in range(d)]
    finally:
        free(c)
