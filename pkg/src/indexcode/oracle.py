"""Independent ground truth: exhaustive search over sender-respecting codes.

A candidate code is a stack of per-sender blocks, each row supported
only on the columns of messages its sender holds.  Within one sender a
block may be replaced by any row-equivalent matrix without affecting
decodability, so only reduced-row-echelon canonical bases of each
dimension are enumerated.  Scan order: total length ascending, then
sender-1 block length ascending (then sender-2 for three senders), then
candidate matrices in generation order; the first feasible code is the
deterministic witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import _kernels as kernels
from .gf2 import BitMatrix
from .instance import ValidatedInstance
from .solver import SearchBudgetExceeded, minrank

__all__ = [
    "SenderCode",
    "oracle_rate",
    "single_sender_projection",
    "DEFAULT_ORACLE_MESSAGE_LIMIT",
]

DEFAULT_ORACLE_MESSAGE_LIMIT = 7


@dataclass(frozen=True)
class SenderCode:
    """A code as per-sender blocks of transmissions.

    Every block matrix has one column per message; rows of the block
    for sender s are zero outside the messages s holds.
    """

    blocks: tuple[tuple[int, BitMatrix], ...]

    @property
    def total_length(self) -> int:
        return sum(mat.rows for _, mat in self.blocks)

    def stacked_masks(self) -> list[int]:
        out: list[int] = []
        for _, mat in self.blocks:
            out.extend(mat.to_masks())
        return out

    def num_columns(self) -> int:
        return max((mat.cols for _, mat in self.blocks), default=0)


@lru_cache(maxsize=None)
def _rref_blocks(cols: tuple[int, ...], dim: int) -> np.ndarray:
    """All rank-`dim` RREF matrices over the given global columns.

    cols lists the allowed global column indices ascending; returned
    array has shape (count, dim), rows packed as bitmasks.  RREF
    canonical forms enumerate each row space exactly once.
    """
    k = len(cols)
    if dim == 0:
        return np.zeros((1, 0), dtype=np.int64)
    out: list[list[int]] = []
    for pivots in combinations(range(k), dim):
        free_pos: list[tuple[int, int]] = []
        for r in range(dim):
            for c in range(pivots[r] + 1, k):
                if c not in pivots:
                    free_pos.append((r, c))
        base = [1 << cols[p] for p in pivots]
        nfree = len(free_pos)
        for assign in range(1 << nfree):
            rows = list(base)
            for bit, (r, c) in enumerate(free_pos):
                if (assign >> bit) & 1:
                    rows[r] |= 1 << cols[c]
            out.append(rows)
    return np.asarray(out, dtype=np.int64)


def _receiver_masks(inst) -> tuple[np.ndarray, np.ndarray]:
    side = np.zeros(inst.num_messages, dtype=np.int64)
    own = np.zeros(inst.num_messages, dtype=np.int64)
    for i in range(1, inst.num_messages + 1):
        mask = 0
        for j in inst.side_info[i - 1]:
            mask |= 1 << (j - 1)
        side[i - 1] = mask
        own[i - 1] = 1 << (i - 1)
    return side, own


def _check_oracle_pre(inst, limit_m: int) -> None:
    if inst.t != 1:
        raise SearchBudgetExceeded("oracle search supports t=1 only")
    if inst.num_messages > limit_m:
        raise SearchBudgetExceeded(
            f"m={inst.num_messages} exceeds the oracle message limit {limit_m}"
        )
    if inst.num_senders > 3:
        raise SearchBudgetExceeded(
            f"oracle search supports at most 3 senders, got {inst.num_senders}"
        )


def oracle_rate(
    validated: ValidatedInstance, limit_m: int = DEFAULT_ORACLE_MESSAGE_LIMIT
) -> tuple[int, SenderCode]:
    """Shortest sender-respecting linear code by exhaustive search.

    Lengths below the single-sender optimum of the full digraph cannot
    be feasible, so the scan starts there.
    """
    inst = validated.instance
    _check_oracle_pre(inst, limit_m)
    m = inst.num_messages
    sender_cols = [tuple(sorted(s)) for s in inst.senders]
    col_bits = [tuple(c - 1 for c in cols) for cols in sender_cols]
    side, own = _receiver_masks(inst)
    start = single_sender_projection(validated)
    for total in range(start, m + 1):
        hit = _scan_length(total, col_bits, side, own)
        if hit is not None:
            lengths, indices = hit
            blocks = []
            for s_idx, (l_s, block_idx) in enumerate(zip(lengths, indices)):
                cands = _rref_blocks(col_bits[s_idx], l_s)
                masks = [int(v) for v in cands[block_idx]]
                blocks.append(
                    (s_idx + 1, BitMatrix.from_masks(masks, m))
                )
            return total, SenderCode(blocks=tuple(blocks))
    raise AssertionError("identity code is always feasible")  # pragma: no cover


def _scan_length(total, col_bits, side, own):
    """First feasible (lengths, block indices) at this total length."""
    s = len(col_bits)
    if s == 1:
        for l1 in (total,):
            if l1 > len(col_bits[0]):
                continue
            a = _rref_blocks(col_bits[0], l1)
            hit = kernels.oracle_scan2(
                a, np.zeros((1, 0), dtype=np.int64), side, own
            )
            if hit[0] >= 0:
                return (l1,), (int(hit[0]),)
        return None
    if s == 2:
        for l1 in range(0, total + 1):
            l2 = total - l1
            if l1 > len(col_bits[0]) or l2 > len(col_bits[1]):
                continue
            a = _rref_blocks(col_bits[0], l1)
            b = _rref_blocks(col_bits[1], l2)
            hit = kernels.oracle_scan2(a, b, side, own)
            if hit[0] >= 0:
                return (l1, l2), (int(hit[0]), int(hit[1]))
        return None
    for l1 in range(0, total + 1):
        if l1 > len(col_bits[0]):
            continue
        a = _rref_blocks(col_bits[0], l1)
        for l2 in range(0, total - l1 + 1):
            l3 = total - l1 - l2
            if l2 > len(col_bits[1]) or l3 > len(col_bits[2]):
                continue
            b = _rref_blocks(col_bits[1], l2)
            c = _rref_blocks(col_bits[2], l3)
            hit = kernels.oracle_scan3(a, b, c, side, own)
            if hit[0] >= 0:
                return (l1, l2, l3), tuple(int(v) for v in hit)
    return None


def single_sender_projection(validated: ValidatedInstance) -> int:
    """Optimal rate when one sender holds everything: minrank of D.

    Any multi-sender code works unchanged for the merged sender, so
    this is a lower bound on the multi-sender optimum.
    """
    from .instance import build_digraph

    return minrank(build_digraph(validated))
