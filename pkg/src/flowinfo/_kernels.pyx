# cython: language_level=3
"""Compiled entropy-type sums over probability arrays.

Every sum runs in row-major cell order with Neumaier compensation and
skips zero cells (0 log 0 = 0).  Results are in bits.  The API matches
``_kernels_py`` exactly.
"""

from libc.math cimport fabs, isinf, log2

ctypedef struct Acc:
    double s
    double c


cdef inline void acc_add(Acc* a, double x) noexcept nogil:
    cdef double t = a.s + x
    if fabs(a.s) >= fabs(x):
        a.c += (a.s - t) + x
    else:
        a.c += (x - t) + a.s
    a.s = t


cdef inline double acc_value(Acc* a) noexcept nogil:
    return a.s + a.c


cdef inline double vi_term(double p, double r, double c) noexcept nogil:
    cdef double q = (r / p) * (c / p)
    if isinf(q):
        return p * (log2(r / p) + log2(c / p))
    return p * log2(q)


def compensated_sum(const double[::1] x):
    cdef Acc a = Acc(0.0, 0.0)
    cdef Py_ssize_t i
    with nogil:
        for i in range(x.shape[0]):
            acc_add(&a, x[i])
    return acc_value(&a)


def entropy_bits(const double[::1] p):
    cdef Acc a = Acc(0.0, 0.0)
    cdef Py_ssize_t i
    cdef double v
    with nogil:
        for i in range(p.shape[0]):
            v = p[i]
            if v > 0.0:
                acc_add(&a, -v * log2(v))
    return acc_value(&a)


def joint_entropy_bits(const double[:, ::1] P):
    cdef Acc a = Acc(0.0, 0.0)
    cdef Py_ssize_t i, j
    cdef double v
    with nogil:
        for i in range(P.shape[0]):
            for j in range(P.shape[1]):
                v = P[i, j]
                if v > 0.0:
                    acc_add(&a, -v * log2(v))
    return acc_value(&a)


def mutual_information_bits(const double[:, ::1] P, const double[::1] r, const double[::1] c):
    cdef Acc a = Acc(0.0, 0.0)
    cdef Py_ssize_t i, j
    cdef double v
    with nogil:
        for i in range(P.shape[0]):
            for j in range(P.shape[1]):
                v = P[i, j]
                if v > 0.0:
                    acc_add(&a, v * log2((v / r[i]) / c[j]))
    return acc_value(&a)


def conditional_entropy_bits(const double[:, ::1] P, const double[::1] r, const double[::1] c, bint given_z):
    """H(Y|Z) when ``given_z`` else H(Z|Y)."""
    cdef Acc a = Acc(0.0, 0.0)
    cdef Py_ssize_t i, j
    cdef double v
    with nogil:
        for i in range(P.shape[0]):
            for j in range(P.shape[1]):
                v = P[i, j]
                if v > 0.0:
                    if given_z:
                        acc_add(&a, v * log2(c[j] / v))
                    else:
                        acc_add(&a, v * log2(r[i] / v))
    return acc_value(&a)


def variation_bits(const double[:, ::1] P, const double[::1] r, const double[::1] c):
    cdef Acc a = Acc(0.0, 0.0)
    cdef Py_ssize_t i, j
    cdef double v
    with nogil:
        for i in range(P.shape[0]):
            for j in range(P.shape[1]):
                v = P[i, j]
                if v > 0.0:
                    acc_add(&a, vi_term(v, r[i], c[j]))
    return acc_value(&a)


def all_bits(const double[:, ::1] P, const double[::1] r, const double[::1] c):
    """One pass, five independent accumulators.

    Returns (H(Y,Z), I(Y;Z), H(Y|Z), H(Z|Y), VI).
    """
    cdef Acc h = Acc(0.0, 0.0)
    cdef Acc mi = Acc(0.0, 0.0)
    cdef Acc yz = Acc(0.0, 0.0)
    cdef Acc zy = Acc(0.0, 0.0)
    cdef Acc vi = Acc(0.0, 0.0)
    cdef Py_ssize_t i, j
    cdef double v, ri, cj
    with nogil:
        for i in range(P.shape[0]):
            ri = r[i]
            for j in range(P.shape[1]):
                v = P[i, j]
                if v > 0.0:
                    cj = c[j]
                    acc_add(&h, -v * log2(v))
                    acc_add(&mi, v * log2((v / ri) / cj))
                    acc_add(&yz, v * log2(cj / v))
                    acc_add(&zy, v * log2(ri / v))
                    acc_add(&vi, vi_term(v, ri, cj))
    return (acc_value(&h), acc_value(&mi), acc_value(&yz), acc_value(&zy), acc_value(&vi))
