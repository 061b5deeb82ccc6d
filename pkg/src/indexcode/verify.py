"""Decodability checks: a per-receiver linear criterion and an
exhaustive message-space simulation for tiny instances.

Column layout for t-bit messages: message j occupies columns
(j-1)*t .. j*t-1, so t=1 keeps column j-1 for message j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .instance import ValidatedInstance
from .oracle import SenderCode
from .solver import SearchBudgetExceeded

__all__ = [
    "VerificationReport",
    "verify_linear",
    "verify_exhaustive",
    "EXHAUSTIVE_BIT_LIMIT",
]

EXHAUSTIVE_BIT_LIMIT = 20

# Structural failures (a block using columns outside its sender's
# message set) are reported against pseudo-receiver 0.
STRUCTURAL = 0


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    failures: tuple[tuple[int, str], ...]
    method: str


def _column_span(messages, t: int) -> list[int]:
    cols: list[int] = []
    for j in sorted(messages):
        cols.extend(range((j - 1) * t, j * t))
    return cols


def _structural_failures(code: SenderCode, validated) -> list[tuple[int, str]]:
    inst = validated.instance
    cols = inst.num_messages * inst.t
    failures: list[tuple[int, str]] = []
    for sender, mat in code.blocks:
        if mat.cols != cols:
            raise ValueError(
                f"code block for sender {sender} has {mat.cols} columns, "
                f"instance needs {cols}"
            )
        if not 1 <= sender <= inst.num_senders:
            failures.append(
                (STRUCTURAL, f"block names unknown sender {sender}")
            )
            continue
        allowed = np.zeros(cols, dtype=bool)
        allowed[_column_span(inst.senders[sender - 1], inst.t)] = True
        if mat.array[:, ~allowed].any():
            failures.append(
                (
                    STRUCTURAL,
                    f"sender {sender} block uses columns outside its message set",
                )
            )
    return failures


def verify_linear(code: SenderCode, validated: ValidatedInstance) -> VerificationReport:
    """Receiver i passes iff every demanded unit vector lies in the span
    of the code rows with the receiver's known columns zeroed out.

    Equivalent to spanning e_i together with the known unit vectors;
    zeroing known columns folds those units in directly.
    """
    inst = validated.instance
    t = inst.t
    cols = inst.num_messages * t
    failures = _structural_failures(code, validated)
    stacked = (
        np.vstack([mat.array for _, mat in code.blocks])
        if code.blocks
        else np.zeros((0, cols), dtype=np.uint8)
    )
    use_masks = cols <= kernels.MAX_BITS
    if use_masks:
        row_masks = [
            int(np.bitwise_or.reduce(
                (row.astype(np.int64) << np.arange(cols, dtype=np.int64))
            )) if cols else 0
            for row in stacked
        ]
    for i in range(1, inst.num_messages + 1):
        known = _column_span(inst.side_info[i - 1], t)
        demanded = _column_span([i], t)
        if use_masks:
            known_mask = 0
            for c in known:
                known_mask |= 1 << c
            keep = ((1 << cols) - 1) ^ known_mask
            basis = np.asarray(
                [r & keep for r in row_masks], dtype=np.int64
            )
            ok = all(
                kernels.in_span_masks(1 << c, basis) for c in demanded
            )
        else:
            masked = stacked.copy()
            masked[:, known] = 0
            units = np.zeros((len(demanded), cols), dtype=np.uint8)
            for k, c in enumerate(demanded):
                units[k, c] = 1
            base_rank = kernels.rank_dense(masked)
            ok = (
                kernels.rank_dense(np.vstack([masked, units])) == base_rank
            )
        if not ok:
            failures.append(
                (i, f"receiver {i} cannot decode message {i}")
            )
    return VerificationReport(
        ok=not failures, failures=tuple(failures), method="linear"
    )


def verify_exhaustive(
    code: SenderCode, validated: ValidatedInstance
) -> VerificationReport:
    """Simulate every message assignment and check decodability by table.

    Receiver i passes iff its demanded bits are a function of what it
    observes: its side information plus all transmitted values.
    """
    inst = validated.instance
    t = inst.t
    nbits = inst.num_messages * t
    if nbits > EXHAUSTIVE_BIT_LIMIT:
        raise SearchBudgetExceeded(
            f"{nbits} message bits exceed the exhaustive limit {EXHAUSTIVE_BIT_LIMIT}"
        )
    failures = _structural_failures(code, validated)
    assigns = np.arange(1 << nbits, dtype=np.uint64)
    stacked = (
        np.vstack([mat.array for _, mat in code.blocks])
        if code.blocks
        else np.zeros((0, nbits), dtype=np.uint8)
    )
    nrows = stacked.shape[0]
    out_key = np.zeros_like(assigns)
    for k, row in enumerate(stacked):
        mask = np.uint64(sum(int(v) << c for c, v in enumerate(row)))
        bit = np.bitwise_count(assigns & mask).astype(np.uint64) & np.uint64(1)
        out_key |= bit << np.uint64(k)
    for i in range(1, inst.num_messages + 1):
        side_mask = np.uint64(
            sum(1 << c for c in _column_span(inst.side_info[i - 1], t))
        )
        observed = ((assigns & side_mask) << np.uint64(nrows)) | out_key
        demand = np.zeros_like(assigns)
        for k, c in enumerate(_column_span([i], t)):
            demand |= (
                (assigns >> np.uint64(c)) & np.uint64(1)
            ) << np.uint64(k)
        keyed = (observed << np.uint64(t)) | demand
        if np.unique(keyed).size != np.unique(observed).size:
            failures.append(
                (
                    i,
                    f"receiver {i} sees identical observations for "
                    f"assignments that differ in message {i}",
                )
            )
    return VerificationReport(
        ok=not failures, failures=tuple(failures), method="exhaustive"
    )
