"""Pure-Python reference implementations of the hot GF(2) kernels.

Mirrors the numba backend function for function; selected when the
INDEXCODE_BACKEND environment variable is "numpy" or when numba is
unavailable.  Rows of GF(2) matrices are packed into int bitmasks
(bit j = column j), which keeps every kernel allocation-free.
"""

from __future__ import annotations

import numpy as np

# Masks are int64; bit 62 is the highest usable column.
MAX_BITS = 63


def _reduce(v: int, slots: list[int]) -> tuple[int, int]:
    """Eliminate v against pivot slots; return (residue, pivot).

    pivot is the highest bit of v that no slot covers, or -1 when v
    reduces to zero (v lies in the span of the slot rows).
    """
    for p in range(MAX_BITS - 1, -1, -1):
        if (v >> p) & 1:
            b = slots[p]
            if b:
                v ^= b
            else:
                return v, p
    return 0, -1


def rank_masks(masks) -> int:
    """GF(2) rank of rows given as int bitmasks."""
    slots = [0] * MAX_BITS
    r = 0
    for v in np.asarray(masks, dtype=np.int64).tolist():
        v, p = _reduce(v, slots)
        if p >= 0:
            slots[p] = v
            r += 1
    return r


def in_span_masks(v: int, masks) -> bool:
    """True iff bitmask v is a GF(2) combination of the given rows."""
    slots = [0] * MAX_BITS
    for row in np.asarray(masks, dtype=np.int64).tolist():
        row, p = _reduce(row, slots)
        if p >= 0:
            slots[p] = row
    residue, _ = _reduce(int(v), slots)
    return residue == 0


def rank_dense(matrix) -> int:
    """GF(2) rank of a dense uint8 matrix (any width, vectorized)."""
    m = (np.asarray(matrix, dtype=np.uint8) & 1).copy()
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivots = np.nonzero(m[r:, c])[0]
        if pivots.size == 0:
            continue
        pr = r + pivots[0]
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        below = r + 1 + np.nonzero(m[r + 1:, c])[0]
        m[below] ^= m[r]
        r += 1
    return r


def first_undecodable(rows, side, own) -> int:
    """Index of the first receiver that cannot decode, or -1.

    rows: code rows as bitmasks over the column space.
    side[i]: mask of columns receiver i already knows.
    own[i]: mask of the columns receiver i demands.
    A receiver passes iff every demanded unit vector lies in the span
    of the code rows with the known columns zeroed out.
    """
    row_list = np.asarray(rows, dtype=np.int64).tolist()
    side_list = np.asarray(side, dtype=np.int64).tolist()
    own_list = np.asarray(own, dtype=np.int64).tolist()
    full = (1 << MAX_BITS) - 1
    for i, (s, o) in enumerate(zip(side_list, own_list)):
        keep = full ^ s
        slots = [0] * MAX_BITS
        for row in row_list:
            v, p = _reduce(row & keep, slots)
            if p >= 0:
                slots[p] = v
        rem = o
        while rem:
            bit = rem & -rem
            residue, _ = _reduce(bit, slots)
            if residue != 0:
                return i
            rem ^= bit
    return -1


def fitting_search(cands, starts, counts, n: int, target: int):
    """Depth-first search for n rows, one per vertex, spanning <= target dims.

    cands holds the candidate bitmasks for vertex i at
    cands[starts[i] : starts[i] + counts[i]], ordered; the first
    solution in row-major candidate order is returned as an int64
    array of n rows, or an empty array when none exists.
    """
    cand_list = np.asarray(cands, dtype=np.int64).tolist()
    start_list = np.asarray(starts, dtype=np.int64).tolist()
    count_list = np.asarray(counts, dtype=np.int64).tolist()
    if n == 0:
        return np.zeros(0, dtype=np.int64)

    idx = [-1] * n
    slots_stack = [[0] * MAX_BITS for _ in range(n + 1)]
    rank_stack = [0] * (n + 1)
    d = 0
    while True:
        idx[d] += 1
        if idx[d] >= count_list[d]:
            d -= 1
            if d < 0:
                return np.zeros(0, dtype=np.int64)
            continue
        v = cand_list[start_list[d] + idx[d]]
        residue, p = _reduce(v, slots_stack[d])
        if p >= 0 and rank_stack[d] >= target:
            continue
        if d == n - 1:
            return np.array(
                [cand_list[start_list[k] + idx[k]] for k in range(n)],
                dtype=np.int64,
            )
        nxt = slots_stack[d + 1]
        nxt[:] = slots_stack[d]
        if p >= 0:
            nxt[p] = residue
            rank_stack[d + 1] = rank_stack[d] + 1
        else:
            rank_stack[d + 1] = rank_stack[d]
        d += 1
        idx[d] = -1


def _code_feasible(rows, nrows, side_list, own_list, full) -> bool:
    # Joint-rank prefilter: at the minimal length every feasible code
    # has independent rows, so dependent combinations cannot win.
    slots = [0] * MAX_BITS
    r = 0
    for v in rows:
        v, p = _reduce(v, slots)
        if p >= 0:
            slots[p] = v
            r += 1
    if r < nrows:
        return False
    for s, o in zip(side_list, own_list):
        keep = full ^ s
        slots = [0] * MAX_BITS
        for row in rows:
            v, p = _reduce(row & keep, slots)
            if p >= 0:
                slots[p] = v
        rem = o
        while rem:
            bit = rem & -rem
            residue, _ = _reduce(bit, slots)
            if residue != 0:
                return False
            rem ^= bit
    return True


def oracle_scan2(blocks_a, blocks_b, side, own):
    """First (ia, ib) pair of sender blocks forming a decodable code.

    blocks_a: (na, la) int64 array, each row set one candidate block.
    Scans ia outer, ib inner; returns (-1, -1) when nothing decodes.
    """
    a_list = np.asarray(blocks_a, dtype=np.int64).tolist()
    b_list = np.asarray(blocks_b, dtype=np.int64).tolist()
    side_list = np.asarray(side, dtype=np.int64).tolist()
    own_list = np.asarray(own, dtype=np.int64).tolist()
    full = (1 << MAX_BITS) - 1
    la = len(a_list[0]) if a_list else 0
    lb = len(b_list[0]) if b_list else 0
    nrows = la + lb
    for ia, ra in enumerate(a_list):
        for ib, rb in enumerate(b_list):
            if _code_feasible(ra + rb, nrows, side_list, own_list, full):
                return np.array([ia, ib], dtype=np.int64)
    return np.array([-1, -1], dtype=np.int64)


def oracle_scan3(blocks_a, blocks_b, blocks_c, side, own):
    """Three-sender variant of oracle_scan2 (ia outer, ic inner)."""
    a_list = np.asarray(blocks_a, dtype=np.int64).tolist()
    b_list = np.asarray(blocks_b, dtype=np.int64).tolist()
    c_list = np.asarray(blocks_c, dtype=np.int64).tolist()
    side_list = np.asarray(side, dtype=np.int64).tolist()
    own_list = np.asarray(own, dtype=np.int64).tolist()
    full = (1 << MAX_BITS) - 1
    la = len(a_list[0]) if a_list else 0
    lb = len(b_list[0]) if b_list else 0
    lc = len(c_list[0]) if c_list else 0
    nrows = la + lb + lc
    for ia, ra in enumerate(a_list):
        for ib, rb in enumerate(b_list):
            head = ra + rb
            for ic, rc in enumerate(c_list):
                if _code_feasible(head + rc, nrows, side_list, own_list, full):
                    return np.array([ia, ib, ic], dtype=np.int64)
    return np.array([-1, -1, -1], dtype=np.int64)
