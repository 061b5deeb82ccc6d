"""Exact single-sender solver for scalar instances.

The optimal scalar linear rate of a single sender equals the smallest
rank of a fitting matrix: ones on the diagonal, arbitrary entries on
side-information positions, zeros elsewhere.  The search removes edges
on no cycle, splits into strongly connected components, and runs an
iterative-deepening DFS per component; ranks add across components.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels as kernels
from .gf2 import BitMatrix
from .graphs import reduce_noncycle_edges, scc
from .instance import SideInfoDigraph

__all__ = [
    "SearchBudgetExceeded",
    "SingleSenderSolution",
    "minrank",
    "optimal_code",
    "DEFAULT_COMPONENT_LIMIT",
]

DEFAULT_COMPONENT_LIMIT = 10


class SearchBudgetExceeded(RuntimeError):
    """The instance is outside the exact-search budget."""


@dataclass(frozen=True)
class SingleSenderSolution:
    """Optimal scalar code for one sender holding all listed messages.

    generator rows are transmissions (bit j-1 set means message j is
    xored in); fitting holds one row per vertex in sorted order, each
    row equal to that receiver's decoding combination.
    """

    rate: int
    generator: BitMatrix
    fitting: BitMatrix
    vertices: tuple[int, ...]


def _component_candidates(
    comp: list[int], side_info: dict[int, frozenset[int]]
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-vertex candidate rows in local bit space, binary-counting order.

    Candidate 0 is always the unit vector; counter bit k toggles the
    k-th allowed column in ascending vertex order, so the search prefers
    sparse rows and lower-indexed side-information.
    """
    local = {v: k for k, v in enumerate(comp)}
    total = sum(
        1 << sum(1 for u in side_info[v] if u in local) for v in comp
    )
    if total > 1 << 22:
        raise SearchBudgetExceeded(
            f"{total} candidate rows exceed the per-component search budget"
        )
    cands: list[int] = []
    starts = np.zeros(len(comp), dtype=np.int64)
    counts = np.zeros(len(comp), dtype=np.int64)
    for pos, v in enumerate(comp):
        allowed = sorted(local[u] for u in side_info[v] if u in local)
        starts[pos] = len(cands)
        counts[pos] = 1 << len(allowed)
        base = 1 << local[v]
        for c in range(1 << len(allowed)):
            mask = base
            for k, col in enumerate(allowed):
                if (c >> k) & 1:
                    mask ^= 1 << col
            cands.append(mask)
    return np.asarray(cands, dtype=np.int64), starts, counts


def _solve_component(
    comp: list[int], side_info: dict[int, frozenset[int]]
) -> tuple[int, list[int]]:
    """(rank, fitting rows in local bit space) for one component."""
    n = len(comp)
    cands, starts, counts = _component_candidates(comp, side_info)
    for target in range(1, n + 1):
        rows = kernels.fitting_search(cands, starts, counts, n, target)
        if rows.size:
            return target, [int(r) for r in rows]
    raise AssertionError("identity matrix always fits")  # pragma: no cover


def optimal_code(
    d: SideInfoDigraph,
    component_limit: int = DEFAULT_COMPONENT_LIMIT,
    num_columns: Optional[int] = None,
) -> SingleSenderSolution:
    """Minimum-rank fitting matrix and a generator built from its rows.

    Receiver i recovers its message from the transmission matching its
    fitting row: that row is e_i plus side-information columns, and it
    lies in the generator's span by construction.
    """
    verts = sorted(d.vertices)
    cols = num_columns if num_columns is not None else (max(verts) if verts else 0)
    if cols > kernels.MAX_BITS:
        raise SearchBudgetExceeded(
            f"{cols} columns exceed the {kernels.MAX_BITS}-bit mask kernels"
        )
    if not verts:
        return SingleSenderSolution(
            rate=0,
            generator=BitMatrix.zeros(0, cols),
            fitting=BitMatrix.zeros(0, cols),
            vertices=(),
        )
    side_info = {v: frozenset(j for (i, j) in d.edges if i == v) for v in verts}
    reduced = reduce_noncycle_edges(d)
    comps = scc(reduced.vertices, reduced.edges)
    for comp in comps:
        if len(comp) > component_limit:
            raise SearchBudgetExceeded(
                f"component of size {len(comp)} exceeds limit {component_limit}"
            )
    reduced_side = {
        v: frozenset(j for (i, j) in reduced.edges if i == v) for v in verts
    }
    fitting_of: dict[int, int] = {}
    total = 0
    for comp in comps:
        comp_sorted = sorted(comp)
        rank, local_rows = _solve_component(comp_sorted, reduced_side)
        total += rank
        for pos, v in enumerate(comp_sorted):
            mask = 0
            row = local_rows[pos]
            for k, u in enumerate(comp_sorted):
                if (row >> k) & 1:
                    mask |= 1 << (u - 1)
            fitting_of[v] = mask
    fitting_masks = [fitting_of[v] for v in verts]
    gen_masks: list[int] = []
    slots = [0] * kernels.MAX_BITS
    for mask in fitting_masks:
        v = mask
        p = -1
        for bit in range(kernels.MAX_BITS - 1, -1, -1):
            if (v >> bit) & 1:
                if slots[bit]:
                    v ^= slots[bit]
                else:
                    p = bit
                    break
        if p >= 0:
            slots[p] = v
            gen_masks.append(mask)
    assert len(gen_masks) == total
    return SingleSenderSolution(
        rate=total,
        generator=BitMatrix.from_masks(gen_masks, cols),
        fitting=BitMatrix.from_masks(fitting_masks, cols),
        vertices=tuple(verts),
    )


def minrank(
    d: SideInfoDigraph, component_limit: int = DEFAULT_COMPONENT_LIMIT
) -> int:
    """Minimum rank over GF(2) of the fitting matrices of the digraph."""
    return optimal_code(d, component_limit=component_limit).rate
