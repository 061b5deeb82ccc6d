"""Numba-compiled implementations of the hot GF(2) kernels.

Function-for-function mirror of indexcode._kernels._numpy; rows are
int64 bitmasks (bit j = column j, columns 0..62).  cache=True persists
the compiled artifacts next to this file so repeat runs skip the JIT.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MAX_BITS = 63
_FULL = (1 << 63) - 1


@njit(cache=True)
def _reduce_into(v, slots):
    """Eliminate v against pivot slots; return (residue, pivot or -1)."""
    for p in range(MAX_BITS - 1, -1, -1):
        if (v >> p) & 1:
            b = slots[p]
            if b != 0:
                v ^= b
            else:
                return v, p
    return 0, -1


@njit(cache=True)
def rank_masks(masks):
    slots = np.zeros(MAX_BITS, dtype=np.int64)
    r = 0
    for i in range(masks.shape[0]):
        v, p = _reduce_into(masks[i], slots)
        if p >= 0:
            slots[p] = v
            r += 1
    return r


@njit(cache=True)
def in_span_masks(v, masks):
    slots = np.zeros(MAX_BITS, dtype=np.int64)
    for i in range(masks.shape[0]):
        row, p = _reduce_into(masks[i], slots)
        if p >= 0:
            slots[p] = row
    residue, _ = _reduce_into(v, slots)
    return residue == 0


@njit(cache=True)
def rank_dense(matrix):
    rows, cols = matrix.shape
    m = matrix.copy()
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = -1
        for i in range(r, rows):
            if m[i, c] & 1:
                pivot = i
                break
        if pivot < 0:
            continue
        if pivot != r:
            for j in range(cols):
                tmp = m[r, j]
                m[r, j] = m[pivot, j]
                m[pivot, j] = tmp
        for i in range(r + 1, rows):
            if m[i, c] & 1:
                for j in range(cols):
                    m[i, j] ^= m[r, j]
        r += 1
    return r


@njit(cache=True)
def first_undecodable(rows, side, own):
    slots = np.zeros(MAX_BITS, dtype=np.int64)
    for i in range(side.shape[0]):
        keep = _FULL ^ side[i]
        slots[:] = 0
        for k in range(rows.shape[0]):
            v, p = _reduce_into(rows[k] & keep, slots)
            if p >= 0:
                slots[p] = v
        rem = own[i]
        ok = True
        while rem != 0:
            bit = rem & (-rem)
            residue, _ = _reduce_into(bit, slots)
            if residue != 0:
                ok = False
                break
            rem ^= bit
        if not ok:
            return i
    return -1


@njit(cache=True)
def fitting_search(cands, starts, counts, n, target):
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    idx = np.full(n, -1, dtype=np.int64)
    slots_stack = np.zeros((n + 1, MAX_BITS), dtype=np.int64)
    rank_stack = np.zeros(n + 1, dtype=np.int64)
    d = 0
    while True:
        idx[d] += 1
        if idx[d] >= counts[d]:
            d -= 1
            if d < 0:
                return np.zeros(0, dtype=np.int64)
            continue
        v = cands[starts[d] + idx[d]]
        residue, p = _reduce_into(v, slots_stack[d])
        if p >= 0 and rank_stack[d] >= target:
            continue
        if d == n - 1:
            out = np.empty(n, dtype=np.int64)
            for k in range(n):
                out[k] = cands[starts[k] + idx[k]]
            return out
        slots_stack[d + 1, :] = slots_stack[d, :]
        if p >= 0:
            slots_stack[d + 1, p] = residue
            rank_stack[d + 1] = rank_stack[d] + 1
        else:
            rank_stack[d + 1] = rank_stack[d]
        d += 1
        idx[d] = -1


@njit(cache=True)
def _feasible(rows, side, own, slots):
    # Joint-rank prefilter: at the minimal length every feasible code
    # has independent rows, so dependent combinations cannot win.
    slots[:] = 0
    r = 0
    for k in range(rows.shape[0]):
        v, p = _reduce_into(rows[k], slots)
        if p >= 0:
            slots[p] = v
            r += 1
    if r < rows.shape[0]:
        return False
    for i in range(side.shape[0]):
        keep = _FULL ^ side[i]
        slots[:] = 0
        for k in range(rows.shape[0]):
            v, p = _reduce_into(rows[k] & keep, slots)
            if p >= 0:
                slots[p] = v
        rem = own[i]
        while rem != 0:
            bit = rem & (-rem)
            residue, _ = _reduce_into(bit, slots)
            if residue != 0:
                return False
            rem ^= bit
    return True


@njit(cache=True)
def oracle_scan2(blocks_a, blocks_b, side, own):
    la = blocks_a.shape[1]
    lb = blocks_b.shape[1]
    rows = np.empty(la + lb, dtype=np.int64)
    slots = np.zeros(MAX_BITS, dtype=np.int64)
    out = np.empty(2, dtype=np.int64)
    for ia in range(blocks_a.shape[0]):
        for k in range(la):
            rows[k] = blocks_a[ia, k]
        for ib in range(blocks_b.shape[0]):
            for k in range(lb):
                rows[la + k] = blocks_b[ib, k]
            if _feasible(rows, side, own, slots):
                out[0] = ia
                out[1] = ib
                return out
    out[0] = -1
    out[1] = -1
    return out


@njit(cache=True)
def oracle_scan3(blocks_a, blocks_b, blocks_c, side, own):
    la = blocks_a.shape[1]
    lb = blocks_b.shape[1]
    lc = blocks_c.shape[1]
    rows = np.empty(la + lb + lc, dtype=np.int64)
    slots = np.zeros(MAX_BITS, dtype=np.int64)
    out = np.empty(3, dtype=np.int64)
    for ia in range(blocks_a.shape[0]):
        for k in range(la):
            rows[k] = blocks_a[ia, k]
        for ib in range(blocks_b.shape[0]):
            for k in range(lb):
                rows[la + k] = blocks_b[ib, k]
            for ic in range(blocks_c.shape[0]):
                for k in range(lc):
                    rows[la + lb + k] = blocks_c[ic, k]
                if _feasible(rows, side, own, slots):
                    out[0] = ia
                    out[1] = ib
                    out[2] = ic
                    return out
    out[0] = -1
    out[1] = -1
    out[2] = -1
    return out
