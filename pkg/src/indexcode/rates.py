"""Case classification and closed-form optimal rates.

Two-sender interaction digraphs fall into six cases; each case has an
exact rate formula in the three sub-problem rates, valid whenever the
case's required interactions are fully participated (cases I and II-A
hold under any participation).  Selected multi-sender shapes reduce to
sums and per-cluster maxima of sub-problem rates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .graphs import (
    InteractionDigraph,
    interaction_digraph,
    scc,
    topological_order,
    two_cycle,
)
from .instance import (
    ValidatedInstance,
    build_digraph,
    induced_subdigraph,
    part_key_str,
    partition,
)
from .solver import (
    DEFAULT_COMPONENT_LIMIT,
    SearchBudgetExceeded,
    minrank,
)

__all__ = [
    "Case",
    "CaseLabel",
    "RateReport",
    "Bound",
    "NoApplicableRule",
    "classify",
    "formula_rate",
    "required_interactions",
    "sub_rates",
    "bounds",
    "two_sender_report",
    "multi_rate",
]

P1 = (1,)
P2 = (2,)
P12 = (1, 2)


class Case(enum.Enum):
    I = "I"
    II_A = "II-A"
    II_B = "II-B"
    II_C = "II-C"
    II_D = "II-D"
    II_E = "II-E"
    UNRESOLVED = "Unresolved"

    def __str__(self) -> str:
        return self.value


class NoApplicableRule(RuntimeError):
    """No closed-form rate applies; callers fall back to bounds/oracle."""


@dataclass(frozen=True)
class CaseLabel:
    case: Case
    all_interactions_fully_participated: bool
    required_interactions_fully_participated: bool
    missing_required: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()


class Bound(NamedTuple):
    name: str
    value: Fraction
    is_max: bool


@dataclass(frozen=True)
class RateReport:
    """Everything the rate engine knows about one instance.

    formula_rate is exact iff exact is true; otherwise it is the
    fully-participated completion value, still a valid lower bound.
    consistent records the oracle cross-check: equality when exact, the
    bound direction otherwise; vacuously true without an oracle run.
    """

    rule: str
    case: Optional[CaseLabel]
    sub_rates: dict[tuple[int, ...], Fraction]
    formula_rate: Optional[Fraction]
    exact: bool
    upper_bound: Fraction
    lower_bounds: tuple[Bound, ...] = ()
    oracle_rate: Optional[int] = None
    consistent: bool = True
    warnings: tuple[str, ...] = ()


def classify(h: InteractionDigraph) -> CaseLabel:
    """Label a two-sender interaction digraph.

    First match wins: acyclic is case I; both private parts in a
    2-cycle with the shared part is II-B; only part 1 is II-C; only
    part 2 is II-D; a cyclic digraph whose shared part has no outgoing
    interaction is II-A; everything else is II-E.  Unresolved is
    unreachable on two-sender inputs.
    """
    allowed = {P1, P2, P12}
    extra = set(h.vertices) - allowed
    if extra:
        raise ValueError(
            f"two-sender classification needs parts among 1, 2, 1-2; got {sorted(extra)}"
        )
    if topological_order(h.vertices, h.edges) is not None:
        case = Case.I
    elif two_cycle(h, P1, P12) and two_cycle(h, P2, P12):
        case = Case.II_B
    elif two_cycle(h, P1, P12):
        case = Case.II_C
    elif two_cycle(h, P2, P12):
        case = Case.II_D
    elif P12 not in h.vertices or h.out_degree(P12) == 0:
        case = Case.II_A
    else:
        case = Case.II_E
    required = required_interactions(case, h)
    missing = tuple(
        e for e in required if not h.is_fully_participated(*e)
    )
    all_full = all(h.is_fully_participated(*e) for e in sorted(h.edges))
    return CaseLabel(
        case=case,
        all_interactions_fully_participated=all_full,
        required_interactions_fully_participated=not missing,
        missing_required=missing,
    )


def required_interactions(
    case: Case, h: InteractionDigraph
) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Interactions that must be fully participated for the case formula.

    Cases I and II-A need none: their formulas hold under any
    participation.  II-C strips the shared code across the 1 <-> 1-2
    cycle, II-D mirrors, II-B needs both cycles, II-E needs every
    existing interaction.
    """
    if case in (Case.I, Case.II_A):
        return ()
    if case is Case.II_B:
        return ((P1, P12), (P12, P1), (P2, P12), (P12, P2))
    if case is Case.II_C:
        return ((P1, P12), (P12, P1))
    if case is Case.II_D:
        return ((P2, P12), (P12, P2))
    if case is Case.II_E:
        return tuple(sorted(h.edges))
    return ()


def formula_rate(
    case: Case, b1: Fraction, b2: Fraction, b12: Fraction
) -> Fraction:
    """Closed-form optimal rate in the three sub-problem rates."""
    b1, b2, b12 = Fraction(b1), Fraction(b2), Fraction(b12)
    if any(b < 0 for b in (b1, b2, b12)):
        raise ValueError("sub-rates must be nonnegative")
    if case in (Case.I, Case.II_A):
        return b1 + b2 + b12
    if case is Case.II_B:
        return max(b12, b1 + b2)
    if case is Case.II_C:
        return b2 + max(b1, b12)
    if case is Case.II_D:
        return b1 + max(b2, b12)
    if case is Case.II_E:
        return max(b1 + b2, b1 + b12, b2 + b12)
    raise NoApplicableRule(
        "no closed form for an unresolved case; use bounds and the oracle"
    )


def sub_rates(
    validated: ValidatedInstance,
    component_limit: int = DEFAULT_COMPONENT_LIMIT,
) -> dict[tuple[int, ...], Fraction]:
    """Optimal scalar rate of each part's induced sub-digraph; 0 if empty."""
    if validated.instance.t != 1:
        raise SearchBudgetExceeded("sub-rate solver supports t=1 only")
    d = build_digraph(validated)
    parts = partition(validated)
    out: dict[tuple[int, ...], Fraction] = {}
    for key, msgs in parts.parts.items():
        if msgs:
            sub = induced_subdigraph(d, msgs)
            out[key] = Fraction(minrank(sub, component_limit=component_limit))
        else:
            out[key] = Fraction(0)
    return out


def _two_sender_rates(rates):
    return (
        rates.get(P1, Fraction(0)),
        rates.get(P2, Fraction(0)),
        rates.get(P12, Fraction(0)),
    )


def bounds(
    validated: ValidatedInstance,
    component_limit: int = DEFAULT_COMPONENT_LIMIT,
) -> tuple[Bound, ...]:
    """Every applicable lower bound, with the largest flagged.

    single_sender_relaxation: one merged sender can reuse any code.
    disjoint_private_parts: senders transmit in disjoint time slots, so
    exclusively-held parts need independent dimensions.
    private_i_plus_shared: dropping the other private part leaves a
    single-sender problem whose cross edges lie on no cycle; applies
    only when part i and the shared part do not form a 2-cycle.
    fully_participated_completion: completing all existing interactions
    can only lower the rate, and the completed rate is the formula.
    """
    inst = validated.instance
    if inst.t != 1:
        raise SearchBudgetExceeded("bounds need the t=1 minrank solver")
    d = build_digraph(validated)
    parts = partition(validated)
    rates = sub_rates(validated, component_limit=component_limit)
    out: list[tuple[str, Fraction]] = []
    out.append(
        (
            "single_sender_relaxation",
            Fraction(minrank(d, component_limit=component_limit)),
        )
    )
    private_sum = sum(
        (rates[k] for k in parts.parts if len(k) == 1), Fraction(0)
    )
    out.append(("disjoint_private_parts", private_sum))
    if inst.num_senders == 2:
        h = interaction_digraph(d, parts)
        b1, b2, b12 = _two_sender_rates(rates)
        if not two_cycle(h, P2, P12):
            out.append(("private_2_plus_shared", b2 + b12))
        if not two_cycle(h, P1, P12):
            out.append(("private_1_plus_shared", b1 + b12))
        label = classify(h)
        if label.case is not Case.UNRESOLVED:
            out.append(
                (
                    "fully_participated_completion",
                    formula_rate(label.case, b1, b2, b12),
                )
            )
    best = max(v for _, v in out)
    return tuple(Bound(name, v, v == best) for name, v in out)


def two_sender_report(
    validated: ValidatedInstance,
    check_oracle: bool = False,
    limit_m: Optional[int] = None,
    component_limit: int = DEFAULT_COMPONENT_LIMIT,
) -> RateReport:
    """Classification, formula, bounds, and optional oracle cross-check."""
    inst = validated.instance
    if inst.num_senders != 2:
        raise ValueError(
            f"two-sender report needs exactly 2 senders, got {inst.num_senders}"
        )
    if inst.t != 1:
        raise SearchBudgetExceeded("rate formulas are evaluated at t=1")
    d = build_digraph(validated)
    parts = partition(validated)
    h = interaction_digraph(d, parts)
    label = classify(h)
    rates = sub_rates(validated, component_limit=component_limit)
    b1, b2, b12 = _two_sender_rates(rates)
    formula = formula_rate(label.case, b1, b2, b12)
    exact = label.required_interactions_fully_participated
    lower = bounds(validated, component_limit=component_limit)
    upper = b1 + b2 + b12
    oracle = None
    consistent = True
    if check_oracle:
        from .oracle import DEFAULT_ORACLE_MESSAGE_LIMIT, oracle_rate

        oracle, _ = oracle_rate(
            validated, limit_m=limit_m or DEFAULT_ORACLE_MESSAGE_LIMIT
        )
        consistent = (
            (oracle == formula) if exact else (Fraction(oracle) >= formula)
        )
    return RateReport(
        rule="two-sender-formula",
        case=label,
        sub_rates=rates,
        formula_rate=formula,
        exact=exact,
        upper_bound=upper,
        lower_bounds=lower,
        oracle_rate=oracle,
        consistent=consistent,
        warnings=validated.warnings,
    )


def _cluster_rule(h: InteractionDigraph):
    """Clusters usable for the per-cluster maximum rule, or None.

    Clusters are the strongly connected components of the interaction
    digraph.  Interactions crossing clusters lie on no cycle of the
    side-information digraph, so they are removable; within a cluster
    every ordered pair must interact fully (so one code serves all its
    parts) and some sender must hold every part (to transmit the
    combined code).
    """
    comps = scc(h.vertices, h.edges)
    clusters = [tuple(sorted(c)) for c in comps]
    for cluster in clusters:
        if len(cluster) == 1:
            continue
        for a in cluster:
            for b in cluster:
                if a != b and not h.is_fully_participated(a, b):
                    return None
        common = set(cluster[0])
        for key in cluster[1:]:
            common &= set(key)
        if not common:
            return None
    return clusters


def multi_rate(
    validated: ValidatedInstance,
    check_oracle: bool = False,
    limit_m: Optional[int] = None,
    component_limit: int = DEFAULT_COMPONENT_LIMIT,
) -> RateReport:
    """Closed-form rate for the multi-sender shapes that admit one.

    Tries, in order: acyclic interaction digraph (sum of sub-rates),
    the one-way-into-shared shape (sum), the clique-cluster shape (sum
    over clusters of the in-cluster maximum).  Otherwise a bounds-only
    report with rule "bounds-only" and no formula.
    """
    inst = validated.instance
    if inst.t != 1:
        raise SearchBudgetExceeded("rate formulas are evaluated at t=1")
    d = build_digraph(validated)
    parts = partition(validated)
    h = interaction_digraph(d, parts)
    rates = sub_rates(validated, component_limit=component_limit)
    total = sum(rates.values(), Fraction(0))

    rule = None
    formula: Optional[Fraction] = None
    if topological_order(h.vertices, h.edges) is not None:
        rule, formula = "acyclic-sum", total
    elif _one_way_into_shared(h):
        rule, formula = "one-way-into-shared-sum", total
    else:
        clusters = _cluster_rule(h)
        if clusters is not None:
            formula = sum(
                (max(rates[k] for k in cluster) for cluster in clusters),
                Fraction(0),
            )
            rule = "clique-cluster-sum"
    exact = rule is not None
    lower: tuple[Bound, ...] = ()
    try:
        lower = bounds(validated, component_limit=component_limit)
    except SearchBudgetExceeded:
        pass
    oracle = None
    consistent = True
    if check_oracle:
        from .oracle import DEFAULT_ORACLE_MESSAGE_LIMIT, oracle_rate

        oracle, _ = oracle_rate(
            validated, limit_m=limit_m or DEFAULT_ORACLE_MESSAGE_LIMIT
        )
        if exact:
            consistent = oracle == formula
        else:
            consistent = all(b.value <= oracle for b in lower) and (
                Fraction(oracle) <= total
            )
    return RateReport(
        rule=rule or "bounds-only",
        case=None,
        sub_rates=rates,
        formula_rate=formula,
        exact=exact,
        upper_bound=total,
        lower_bounds=lower,
        oracle_rate=oracle,
        consistent=consistent,
        warnings=validated.warnings,
    )


def _one_way_into_shared(h: InteractionDigraph) -> bool:
    """Singletons never receive from shared parts; shared parts acyclic."""
    for (a, b) in h.edges:
        if len(a) > 1 and len(b) == 1:
            return False
    multi = [v for v in h.vertices if len(v) > 1]
    medges = [(a, b) for (a, b) in h.edges if len(a) > 1 and len(b) > 1]
    return topological_order(multi, medges) is not None
