"""Packed-word arithmetic for vectors over Z2^gamma x Z4^delta.

A vector is one unsigned integer: the top ``gamma`` bits hold the binary
part (coordinate 0 most significant), the low ``2*delta`` bits hold the
quaternary part (symbol 0 in the most significant bit pair, low bit of a
symbol at the even position).  Numeric order on keys therefore equals
lexicographic order on digit strings, and the ambient space is exactly
``range(2**(gamma + 2*delta))``.

Scalar helpers work on Python ints of any width; the ``*_np`` variants
mirror them on uint64 numpy arrays (valid while gamma + 2*delta <= 62).
"""

from __future__ import annotations

import numpy as np

_LO_CACHE: dict[int, int] = {}


def lo_mask(delta: int) -> int:
    """0b0101...01 over 2*delta bits (the low bit of every symbol)."""
    m = _LO_CACHE.get(delta)
    if m is None:
        m = ((1 << (2 * delta)) - 1) // 3 if delta else 0
        _LO_CACHE[delta] = m
    return m


def quat_mask(delta: int) -> int:
    return (1 << (2 * delta)) - 1


def bin_mask(gamma: int, delta: int) -> int:
    return ((1 << gamma) - 1) << (2 * delta)


# ---------------------------------------------------------------------------
# scalar (Python int) ops

def quat_add(a: int, b: int, delta: int) -> int:
    # per 2-bit field: carry propagates only from the low bit, mod 4 drops the rest
    lo = lo_mask(delta)
    return a ^ b ^ (((a & b & lo) << 1) & quat_mask(delta))


def quat_neg(a: int, delta: int) -> int:
    return quat_add(a ^ quat_mask(delta), lo_mask(delta), delta)


def quat_scalar(s: int, a: int, delta: int) -> int:
    s &= 3
    if s == 0:
        return 0
    if s == 1:
        return a
    if s == 2:
        return (a & lo_mask(delta)) << 1
    return quat_neg(a, delta)


def key_add(u: int, v: int, gamma: int, delta: int) -> int:
    shift = 2 * delta
    qm = quat_mask(delta)
    return ((u >> shift) ^ (v >> shift)) << shift | quat_add(u & qm, v & qm, delta)


def key_neg(u: int, gamma: int, delta: int) -> int:
    shift = 2 * delta
    qm = quat_mask(delta)
    return (u >> shift) << shift | quat_neg(u & qm, delta)


def key_scalar(s: int, u: int, gamma: int, delta: int) -> int:
    shift = 2 * delta
    qm = quat_mask(delta)
    b = (u >> shift) if s & 1 else 0
    return b << shift | quat_scalar(s, u & qm, delta)


def key_weight(u: int, gamma: int, delta: int, metric: str) -> int:
    shift = 2 * delta
    q = u & quat_mask(delta)
    lo = q & lo_mask(delta)
    hi = (q >> 1) & lo_mask(delta)
    w = (u >> shift).bit_count()
    if metric == "hamming":
        return w + (hi | lo).bit_count()
    if metric == "lee":
        return w + lo.bit_count() + 2 * (hi & ~lo).bit_count()
    if metric == "euclidean":
        return w + lo.bit_count() + 4 * (hi & ~lo).bit_count()
    raise ValueError(f"unknown metric {metric!r}")


def key_gray(u: int, gamma: int, delta: int) -> int:
    """Packed binary image of length gamma + 2*delta, same bit layout.

    Per symbol (hi, lo): image pair is (hi, hi ^ lo), i.e. 0->00, 1->01,
    2->11, 3->10.  Binary bits are untouched, so popcount(gray) is the
    Lee weight.
    """
    lo = lo_mask(delta)
    q = u & quat_mask(delta)
    return (u & bin_mask(gamma, delta)) | (q & (lo << 1)) | (((q >> 1) ^ q) & lo)


def key_inner(u: int, v: int, gamma: int, delta: int) -> int:
    """2*(binary dot) + (quaternary dot), reduced mod 4."""
    shift = 2 * delta
    total = 2 * ((u >> shift) & (v >> shift)).bit_count()
    lo = lo_mask(delta)
    uq, vq = u & quat_mask(delta), v & quat_mask(delta)
    u0, u1 = uq & lo, (uq >> 1) & lo
    v0, v1 = vq & lo, (vq >> 1) & lo
    # (2u1+u0)(2v1+v0) mod 4 = u0*v0 + 2*(u1*v0 + u0*v1)
    total += (u0 & v0).bit_count()
    total += 2 * ((u1 & v0).bit_count() + (u0 & v1).bit_count())
    return total & 3


# ---------------------------------------------------------------------------
# numpy (uint64 chunk) ops

U64 = np.uint64


def _u(x: int) -> np.uint64:
    return U64(x)


def quat_add_np(a: np.ndarray, b, delta: int) -> np.ndarray:
    lo = _u(lo_mask(delta))
    b = U64(b) if isinstance(b, int) else b
    return a ^ b ^ ((a & b & lo) << _u(1))


def quat_neg_np(a: np.ndarray, delta: int) -> np.ndarray:
    return quat_add_np(a ^ _u(quat_mask(delta)), _u(lo_mask(delta)), delta)


def key_add_np(u: np.ndarray, v, gamma: int, delta: int) -> np.ndarray:
    shift = _u(2 * delta)
    qm = _u(quat_mask(delta))
    v = U64(v) if isinstance(v, int) else v
    return ((u >> shift) ^ (v >> shift)) << shift | quat_add_np(u & qm, v & qm, delta)


def key_sub_np(u: np.ndarray, v_key: int, gamma: int, delta: int) -> np.ndarray:
    return key_add_np(u, key_neg(v_key, gamma, delta), gamma, delta)


def key_weight_np(u: np.ndarray, gamma: int, delta: int, metric: str) -> np.ndarray:
    """Weights as uint8 (max possible weight is gamma + 4*delta <= 255)."""
    shift = _u(2 * delta)
    lo = _u(lo_mask(delta))
    q = u & _u(quat_mask(delta))
    qlo = q & lo
    qhi = (q >> _u(1)) & lo
    w = np.bitwise_count(u >> shift)
    if metric == "hamming":
        w += np.bitwise_count(qhi | qlo)
    elif metric == "lee":
        w += np.bitwise_count(qlo) + 2 * np.bitwise_count(qhi & ~qlo)
    elif metric == "euclidean":
        w += np.bitwise_count(qlo) + 4 * np.bitwise_count(qhi & ~qlo)
    else:
        raise ValueError(f"unknown metric {metric!r}")
    return w.astype(np.uint8, copy=False)


def key_gray_np(u: np.ndarray, gamma: int, delta: int) -> np.ndarray:
    lo = _u(lo_mask(delta))
    q = u & _u(quat_mask(delta))
    return (u & _u(bin_mask(gamma, delta))) | (q & (lo << _u(1))) | (((q >> _u(1)) ^ q) & lo)


class SyndromeMasks:
    """Precomputed masks evaluating <u, h> mod 4 for a fixed row h.

    Value positions of h are split by symbol value; the dot product is a
    handful of popcounts:  sum over h_j=1 of u_j  +  2*sum over h_j=2 of
    u_j0  +  sum over h_j=3 of (3*u_j0 + 2*u_j1),  plus 2*(binary dot).
    """

    def __init__(self, h_key: int, gamma: int, delta: int):
        self.gamma, self.delta = gamma, delta
        self.shift = 2 * delta
        lo = lo_mask(delta)
        hq = h_key & quat_mask(delta)
        h0, h1 = hq & lo, (hq >> 1) & lo
        self.hb = h_key >> self.shift
        self.sel1 = h0 & ~h1
        self.sel2 = h1 & ~h0
        self.sel3 = h0 & h1

    def eval_key(self, u: int) -> int:
        ub = u >> self.shift
        lo = lo_mask(self.delta)
        u0 = u & lo
        u1 = (u >> 1) & lo
        t = 2 * (ub & self.hb).bit_count()
        t += (u0 & self.sel1).bit_count() + 2 * (u1 & self.sel1).bit_count()
        t += 2 * (u0 & self.sel2).bit_count()
        t += 3 * (u0 & self.sel3).bit_count() + 2 * (u1 & self.sel3).bit_count()
        return t & 3

    def eval_np(self, u: np.ndarray) -> np.ndarray:
        lo = _u(lo_mask(self.delta))
        u0 = u & lo
        u1 = (u >> _u(1)) & lo
        t = 2 * np.bitwise_count((u >> _u(self.shift)) & _u(self.hb))
        t += np.bitwise_count(u0 & _u(self.sel1)) + 2 * np.bitwise_count(u1 & _u(self.sel1))
        t += 2 * np.bitwise_count(u0 & _u(self.sel2))
        t += 3 * np.bitwise_count(u0 & _u(self.sel3)) + 2 * np.bitwise_count(u1 & _u(self.sel3))
        return (t & 3).astype(np.uint8, copy=False)


def iter_chunks(total: int, chunk: int = 1 << 20):
    """Yield (start, stop) index ranges covering range(total)."""
    start = 0
    while start < total:
        stop = min(start + chunk, total)
        yield start, stop
        start = stop
