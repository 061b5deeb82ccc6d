"""Optimal linear broadcast rates and explicit index codes for
multi-sender unicast index coding over GF(2).

The library models a problem as receivers demanding one message each
while holding side-information, splits the messages by which senders
hold them, classifies how the resulting groups interact, and evaluates
closed-form optimal rates with matching code constructions wherever a
rule applies.  Everything is cross-checkable against brute-force
search oracles.
"""

from .builder import (
    BuildRefused,
    Codeword,
    build,
    build_multi,
    construct,
    optimal_sub_codes,
    slice_bits,
    xor_pad,
)
from .gf2 import BitMatrix
from .graphs import (
    InteractionDigraph,
    interaction_digraph,
    reduce_noncycle_edges,
    scc,
    topological_order,
    two_cycle,
)
from .instance import (
    InstanceValidationError,
    MessagePartition,
    ProblemInstance,
    SideInfoDigraph,
    ValidatedInstance,
    build_digraph,
    induced_subdigraph,
    instance_from_dict,
    load_instance,
    part_key_str,
    partition,
    validate,
)
from .oracle import SenderCode, oracle_rate, single_sender_projection
from .rates import (
    Bound,
    Case,
    CaseLabel,
    NoApplicableRule,
    RateReport,
    bounds,
    classify,
    formula_rate,
    multi_rate,
    required_interactions,
    sub_rates,
    two_sender_report,
)
from .solver import (
    SearchBudgetExceeded,
    SingleSenderSolution,
    minrank,
    optimal_code,
)
from .verify import VerificationReport, verify_exhaustive, verify_linear

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "Bound",
    "BuildRefused",
    "Case",
    "CaseLabel",
    "Codeword",
    "InstanceValidationError",
    "InteractionDigraph",
    "MessagePartition",
    "NoApplicableRule",
    "ProblemInstance",
    "RateReport",
    "SearchBudgetExceeded",
    "SenderCode",
    "SideInfoDigraph",
    "SingleSenderSolution",
    "ValidatedInstance",
    "VerificationReport",
    "bounds",
    "build",
    "build_digraph",
    "build_multi",
    "classify",
    "construct",
    "formula_rate",
    "induced_subdigraph",
    "instance_from_dict",
    "interaction_digraph",
    "load_instance",
    "minrank",
    "multi_rate",
    "optimal_code",
    "optimal_sub_codes",
    "oracle_rate",
    "part_key_str",
    "partition",
    "reduce_noncycle_edges",
    "required_interactions",
    "scc",
    "single_sender_projection",
    "slice_bits",
    "sub_rates",
    "topological_order",
    "two_cycle",
    "two_sender_report",
    "validate",
    "verify_exhaustive",
    "verify_linear",
    "xor_pad",
    "__version__",
]
