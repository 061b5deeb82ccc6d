"""Explicit code constructions that achieve the per-case optimal rates.

A Codeword here is a tuple of GF(2) elements; an element is either a
scalar bit or a packed row mask, since XOR and zero are all the
constructions need.  Positions are 1-indexed with position 1 leftmost.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .gf2 import BitMatrix
from .graphs import interaction_digraph, scc
from .instance import (
    ValidatedInstance,
    build_digraph,
    induced_subdigraph,
    partition,
    part_key_str,
)
from .oracle import SenderCode
from .rates import (
    Case,
    CaseLabel,
    NoApplicableRule,
    classify,
    multi_rate,
    two_sender_report,
    P1,
    P2,
    P12,
)
from .solver import DEFAULT_COMPONENT_LIMIT, SearchBudgetExceeded, optimal_code
from .verify import verify_linear

__all__ = [
    "Codeword",
    "BuildRefused",
    "xor_pad",
    "slice_bits",
    "optimal_sub_codes",
    "build",
    "build_multi",
    "construct",
]


class BuildRefused(RuntimeError):
    """No construction applies; the caller should fall back to a
    brute-force witness."""


@dataclass(frozen=True)
class Codeword:
    bits: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.bits)


EMPTY = Codeword(())


def xor_pad(a: Codeword, b: Codeword) -> Codeword:
    """Elementwise XOR after zero-padding the shorter word at the end."""
    n = max(a.length, b.length)
    pa = a.bits + (0,) * (n - a.length)
    pb = b.bits + (0,) * (n - b.length)
    return Codeword(tuple(x ^ y for x, y in zip(pa, pb)))


def slice_bits(c: Codeword, lo: int, hi: int) -> Codeword:
    """Positions lo..hi inclusive, 1-indexed from the left."""
    if not 1 <= lo <= hi <= c.length:
        raise ValueError(
            f"slice [{lo}:{hi}] out of range for length {c.length}"
        )
    return Codeword(c.bits[lo - 1 : hi])


def _prefix(c: Codeword, n: int) -> Codeword:
    # Internal: tolerate n == 0 where the strict slice would refuse.
    return slice_bits(c, 1, n) if n > 0 else EMPTY


def _tail(c: Codeword, lo: int) -> Codeword:
    return slice_bits(c, lo, c.length) if lo <= c.length else EMPTY


def _word(mat: BitMatrix) -> Codeword:
    return Codeword(tuple(mat.to_masks()))


def _block(word: Codeword, cols: int) -> BitMatrix:
    return BitMatrix.from_masks(word.bits, cols)


def optimal_sub_codes(
    validated: ValidatedInstance, component_limit: int = DEFAULT_COMPONENT_LIMIT
) -> dict[tuple[int, ...], BitMatrix]:
    """Optimal single-sender generator per non-empty message part, with
    rows embedded into the full instance's column space."""
    inst = validated.instance
    d = build_digraph(validated)
    parts = partition(validated)
    out: dict[tuple[int, ...], BitMatrix] = {}
    for key in parts.nonempty_keys():
        sub = induced_subdigraph(d, parts.part(key))
        sol = optimal_code(
            sub, component_limit=component_limit, num_columns=inst.num_messages
        )
        out[key] = sol.generator
    return out


def _assemble(
    blocks: Sequence[tuple[int, Codeword]], cols: int
) -> SenderCode:
    kept = tuple(
        (sender, _block(word, cols))
        for sender, word in blocks
        if word.length > 0
    )
    return SenderCode(blocks=kept)


def _checked(
    code: SenderCode,
    validated: ValidatedInstance,
    expected_length: int,
) -> SenderCode:
    if code.total_length != expected_length:
        raise AssertionError(
            f"construction emitted {code.total_length} rows, "
            f"expected {expected_length}"
        )
    report = verify_linear(code, validated)
    if not report.ok:
        raise BuildRefused(
            f"constructed code failed verification: {report.failures}"
        )
    return code


def build(
    validated: ValidatedInstance,
    label: CaseLabel,
    sub_codes: Mapping[tuple[int, ...], BitMatrix],
) -> SenderCode:
    """Two-sender construction for the labelled interaction case.

    Refuses when the case's rate formula needs fully participated
    interactions the instance does not have, naming the first violated
    edge; refuses outright for the unresolved case.
    """
    inst = validated.instance
    if inst.num_senders != 2:
        raise ValueError("case construction needs exactly two senders")
    if label.case is Case.UNRESOLVED:
        raise BuildRefused("no construction is known for this interaction pattern")
    if label.missing_required:
        a, b = label.missing_required[0]
        raise BuildRefused(
            f"interaction {part_key_str(a)}->{part_key_str(b)} "
            "is not fully participated"
        )
    m = inst.num_messages
    c1 = _word(sub_codes[P1]) if P1 in sub_codes else EMPTY
    c2 = _word(sub_codes[P2]) if P2 in sub_codes else EMPTY
    c12 = _word(sub_codes[P12]) if P12 in sub_codes else EMPTY
    b1, b2, b12 = c1.length, c2.length, c12.length
    if label.case in (Case.I, Case.II_A):
        expected = b1 + b2 + b12
        blocks = [(1, c1), (2, c2), (1, c12)]
    elif label.case is Case.II_B:
        expected = max(b12, b1 + b2)
        t1 = xor_pad(c1, _prefix(c12, min(b1, b12)))
        t2 = xor_pad(
            c2,
            slice_bits(c12, b1 + 1, min(b1 + b2, b12))
            if b12 > b1
            else EMPTY,
        )
        t3 = _tail(c12, b1 + b2 + 1)
        blocks = [(1, t1), (2, t2), (1, t3)]
    elif label.case is Case.II_C:
        expected = b2 + max(b1, b12)
        blocks = [(1, xor_pad(c1, c12)), (2, c2)]
    elif label.case is Case.II_D:
        expected = b1 + max(b2, b12)
        blocks = [(1, c1), (2, xor_pad(c2, c12))]
    else:  # Case.II_E
        mu = min(b1, b2, b12)
        expected = max(b1 + b2, b1 + b12, b2 + b12)
        t1 = xor_pad(c1, _prefix(c12, mu))
        t2 = xor_pad(c2, _prefix(c12, mu))
        t3 = _tail(c12, mu + 1)
        blocks = [(1, t1), (2, t2), (1, t3)]
    return _checked(_assemble(blocks, m), validated, expected)


def build_multi(
    validated: ValidatedInstance,
    sub_codes: Mapping[tuple[int, ...], BitMatrix],
    rule: str,
) -> SenderCode:
    """Construction matching a closed-form multi-sender rate rule."""
    inst = validated.instance
    m = inst.num_messages
    parts = partition(validated)
    if rule in ("acyclic-sum", "one-way-into-shared-sum"):
        blocks = [
            (min(key), _word(sub_codes[key])) for key in parts.nonempty_keys()
        ]
        expected = sum(word.length for _, word in blocks)
        return _checked(_assemble(blocks, m), validated, expected)
    if rule == "clique-cluster-sum":
        d = build_digraph(validated)
        h = interaction_digraph(d, parts)
        clusters = scc(h.vertices, h.edges)
        blocks = []
        expected = 0
        for cluster in sorted(clusters, key=lambda c: min(c)):
            word = EMPTY
            common = None
            for key in sorted(cluster, key=lambda k: (len(k), k)):
                word = xor_pad(word, _word(sub_codes[key]))
                common = set(key) if common is None else common & set(key)
            if not common:
                raise BuildRefused(
                    "cluster "
                    + "|".join(part_key_str(k) for k in sorted(cluster))
                    + " has no common sender"
                )
            expected += word.length
            blocks.append((min(common), word))
        return _checked(_assemble(blocks, m), validated, expected)
    raise BuildRefused(f"no construction for rule {rule!r}")


def construct(
    validated: ValidatedInstance,
    component_limit: int = DEFAULT_COMPONENT_LIMIT,
    oracle_limit_m: Optional[int] = None,
) -> tuple[SenderCode, str, int]:
    """Build an optimal code, falling back to the brute-force witness
    when no closed-form construction applies.

    Returns the code, a label for how it was obtained, and its length.
    """
    inst = validated.instance
    if inst.t != 1:
        raise SearchBudgetExceeded("constructions cover one-bit messages only")
    if inst.num_senders == 1:
        sol = optimal_code(build_digraph(validated), component_limit=component_limit)
        code = SenderCode(blocks=((1, sol.generator),))
        return _checked(code, validated, sol.rate), "single-sender", sol.rate
    try:
        sub_codes = optimal_sub_codes(validated, component_limit)
        if inst.num_senders == 2:
            report = two_sender_report(validated, component_limit=component_limit)
            code = build(validated, report.case, sub_codes)
            return code, f"case {report.case.case}", code.total_length
        report = multi_rate(validated, component_limit=component_limit)
        if report.formula_rate is None:
            raise BuildRefused("no closed-form rule applies")
        code = build_multi(validated, sub_codes, report.rule)
        return code, report.rule, code.total_length
    except (BuildRefused, NoApplicableRule) as exc:
        from .oracle import DEFAULT_ORACLE_MESSAGE_LIMIT, oracle_rate

        if oracle_limit_m is None:
            oracle_limit_m = DEFAULT_ORACLE_MESSAGE_LIMIT
        rate, code = oracle_rate(validated, limit_m=oracle_limit_m)
        report = verify_linear(code, validated)
        if not report.ok:
            raise AssertionError(
                f"oracle witness failed verification: {report.failures}"
            ) from exc
        return code, "oracle-witness", rate
