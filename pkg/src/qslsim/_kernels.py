"""Numba kernels for the hot loops: gate streams over packed planes, GF(2) row reduction.

Planes are uint64 word arrays, bit i of the register living at word i >> 6,
bit position i & 63. Gate streams are parallel int64 arrays (code, a, b, c).
"""

import numpy as np
from numba import njit

# Gate codes shared by circuits.py / perms.py.
OP_X = 0
OP_Z = 1
OP_H = 2
OP_CNOT = 3
OP_TOFFOLI = 4

_ONE = np.uint64(1)


@njit(cache=True, nogil=True)
def run_pair_ops(codes, a, b, c, z, x):
    """Apply a gate stream to both planes with paired-bit semantics.

    X flips the computational bit, Z flips the phase bit, H swaps the two,
    CNOT couples computational forward and phase backward, TOFFOLI is a
    classical Toffoli on the computational plane and identity on phases.
    """
    for i in range(codes.shape[0]):
        g = codes[i]
        ai = a[i]
        ma = _ONE << np.uint64(ai & 63)
        aw = ai >> 6
        if g == OP_CNOT:
            bi = b[i]
            mb = _ONE << np.uint64(bi & 63)
            bw = bi >> 6
            if z[aw] & ma:
                z[bw] ^= mb
            if x[bw] & mb:
                x[aw] ^= ma
        elif g == OP_TOFFOLI:
            bi = b[i]
            mb = _ONE << np.uint64(bi & 63)
            if (z[aw] & ma) and (z[bi >> 6] & mb):
                ci = c[i]
                z[ci >> 6] ^= _ONE << np.uint64(ci & 63)
        elif g == OP_X:
            z[aw] ^= ma
        elif g == OP_Z:
            x[aw] ^= ma
        else:  # OP_H
            bz = z[aw] & ma
            bx = x[aw] & ma
            if (bz == 0) != (bx == 0):
                z[aw] ^= ma
                x[aw] ^= ma


@njit(cache=True, nogil=True)
def run_classical_ops(codes, a, b, c, z, base):
    """Apply X/CNOT/TOFFOLI to the computational plane only, offset by base."""
    for i in range(codes.shape[0]):
        g = codes[i]
        ai = a[i] + base
        ma = _ONE << np.uint64(ai & 63)
        aw = ai >> 6
        if g == OP_CNOT:
            bi = b[i] + base
            if z[aw] & ma:
                z[bi >> 6] ^= _ONE << np.uint64(bi & 63)
        elif g == OP_TOFFOLI:
            bi = b[i] + base
            mb = _ONE << np.uint64(bi & 63)
            if (z[aw] & ma) and (z[bi >> 6] & mb):
                ci = c[i] + base
                z[ci >> 6] ^= _ONE << np.uint64(ci & 63)
        else:  # OP_X
            z[aw] ^= ma


@njit(cache=True, nogil=True)
def run_classical_ops_sliced(codes, a, b, c, cols):
    """Bit-sliced evaluation: cols[j] holds input bit j for a batch of inputs."""
    for i in range(codes.shape[0]):
        g = codes[i]
        if g == OP_CNOT:
            ca = cols[a[i]]
            cb = cols[b[i]]
            for w in range(ca.shape[0]):
                cb[w] ^= ca[w]
        elif g == OP_TOFFOLI:
            ca = cols[a[i]]
            cb = cols[b[i]]
            cc = cols[c[i]]
            for w in range(ca.shape[0]):
                cc[w] ^= ca[w] & cb[w]
        else:  # OP_X
            ca = cols[a[i]]
            for w in range(ca.shape[0]):
                ca[w] = ~ca[w]


@njit(cache=True, nogil=True)
def rref_words(mat, width):
    """In-place reduced row echelon form over GF(2); returns pivot columns."""
    nrows, nwords = mat.shape
    cap = nrows if nrows < width else width
    pivots = np.empty(cap, dtype=np.int64)
    r = 0
    for col in range(width):
        w = col >> 6
        m = _ONE << np.uint64(col & 63)
        p = -1
        for i in range(r, nrows):
            if mat[i, w] & m:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(nwords):
                t = mat[r, j]
                mat[r, j] = mat[p, j]
                mat[p, j] = t
        for i in range(nrows):
            if i != r and (mat[i, w] & m):
                for j in range(nwords):
                    mat[i, j] ^= mat[r, j]
        pivots[r] = col
        r += 1
        if r == nrows:
            break
    return pivots[:r]


def warmup():
    """Force-compile (or load from cache) every kernel."""
    z = np.zeros(1, dtype=np.uint64)
    x = np.zeros(1, dtype=np.uint64)
    e = np.zeros(1, dtype=np.int64)
    run_pair_ops(e[:0], e, e, e, z, x)
    run_classical_ops(e[:0], e, e, e, z, 0)
    run_classical_ops_sliced(e[:0], e, e, e, np.zeros((1, 1), dtype=np.uint64))
    rref_words(np.zeros((1, 1), dtype=np.uint64), 1)
