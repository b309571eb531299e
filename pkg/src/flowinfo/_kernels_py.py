"""Pure Python/numpy twin of the compiled ``_kernels`` extension.

Per-cell terms are vectorized with numpy; the sums go through
:func:`math.fsum`, which is exactly rounded and therefore order-free.
"""

import math

import numpy as np



def _cells(P, r, c):
    mask = P > 0
    rows, cols = np.nonzero(mask)
    return P[mask], r[rows], c[cols]


def compensated_sum(x):
    return math.fsum(np.asarray(x, dtype=np.float64).tolist())


def entropy_bits(p):
    p = np.asarray(p, dtype=np.float64)
    v = p[p > 0]
    return math.fsum((-v * np.log2(v)).tolist())


def joint_entropy_bits(P):
    return entropy_bits(np.asarray(P).ravel())


def mutual_information_bits(P, r, c):
    v, ri, cj = _cells(np.asarray(P), np.asarray(r), np.asarray(c))
    return math.fsum((v * np.log2((v / ri) / cj)).tolist())


def conditional_entropy_bits(P, r, c, given_z):
    """H(Y|Z) when ``given_z`` else H(Z|Y)."""
    v, ri, cj = _cells(np.asarray(P), np.asarray(r), np.asarray(c))
    given = cj if given_z else ri
    return math.fsum((v * np.log2(given / v)).tolist())


def _vi_terms(v, ri, cj):
    with np.errstate(over="ignore"):
        q = (ri / v) * (cj / v)
    out = v * np.log2(q)
    big = np.isinf(q)
    if big.any():
        out[big] = v[big] * (np.log2(ri[big] / v[big]) + np.log2(cj[big] / v[big]))
    return out


def variation_bits(P, r, c):
    v, ri, cj = _cells(np.asarray(P), np.asarray(r), np.asarray(c))
    return math.fsum(_vi_terms(v, ri, cj).tolist())


def all_bits(P, r, c):
    """Returns (H(Y,Z), I(Y;Z), H(Y|Z), H(Z|Y), VI)."""
    v, ri, cj = _cells(np.asarray(P), np.asarray(r), np.asarray(c))
    lv = np.log2(v)
    fs = math.fsum
    return (
        fs((-v * lv).tolist()),
        fs((v * np.log2((v / ri) / cj)).tolist()),
        fs((v * np.log2(cj / v)).tolist()),
        fs((v * np.log2(ri / v)).tolist()),
        fs(_vi_terms(v, ri, cj).tolist()),
    )
