"""Problem instances: messages, senders, side-information, and the
derived side-information digraph and message partition.

Message and receiver indices are 1-based everywhere in this module;
only the GF(2) layer uses 0-based columns.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence, Union

import jsonschema

__all__ = [
    "ProblemInstance",
    "ValidatedInstance",
    "SideInfoDigraph",
    "MessagePartition",
    "InstanceValidationError",
    "INSTANCE_SCHEMA",
    "load_instance",
    "instance_from_dict",
    "validate",
    "build_digraph",
    "partition",
    "induced_subdigraph",
    "part_key_str",
]

INSTANCE_SCHEMA = {
    "type": "object",
    "required": ["num_messages", "senders", "side_info"],
    "additionalProperties": False,
    "properties": {
        "t": {"type": "integer", "minimum": 1},
        "num_messages": {"type": "integer", "minimum": 1},
        "senders": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 1},
            },
        },
        "side_info": {
            "type": "object",
            "patternProperties": {
                "^[1-9][0-9]*$": {
                    "type": "array",
                    "items": {"type": "integer", "minimum": 1},
                }
            },
            "additionalProperties": False,
        },
    },
}


class InstanceValidationError(ValueError):
    """Raised when an instance violates the model; carries all findings."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class ProblemInstance:
    """An s-sender unicast problem: receiver i demands message i."""

    num_messages: int
    t: int
    senders: tuple[frozenset[int], ...]
    side_info: tuple[frozenset[int], ...]  # index 0 holds K_1

    @property
    def num_senders(self) -> int:
        return len(self.senders)

    def side_info_of(self, receiver: int) -> frozenset[int]:
        return self.side_info[receiver - 1]


@dataclass(frozen=True)
class ValidatedInstance:
    """A checked instance; senders with an empty private part are removed.

    removed_senders maps the surviving 1-based sender positions back to
    the positions in the input (identity when nothing was removed).
    """

    instance: ProblemInstance
    warnings: tuple[str, ...] = ()
    original_sender_ids: tuple[int, ...] = ()

    def __getattr__(self, name):
        return getattr(self.instance, name)


@dataclass(frozen=True)
class SideInfoDigraph:
    """Digraph with edge (i, j) iff receiver i knows message j."""

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(j for (i, j) in self.edges if i == v))

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edges


@dataclass(frozen=True)
class MessagePartition:
    """Messages grouped by the exact set of senders that hold them.

    parts maps every non-empty subset of [s] (as a sorted tuple) to the
    messages held by exactly that sender set; empty groups are kept so
    callers can see the full lattice.
    """

    num_senders: int
    parts: Mapping[tuple[int, ...], frozenset[int]] = field(default_factory=dict)

    def nonempty_keys(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            k for k in sorted(self.parts, key=lambda s: (len(s), s)) if self.parts[k]
        )

    def part(self, key: tuple[int, ...]) -> frozenset[int]:
        return self.parts[tuple(sorted(key))]


def part_key_str(key: tuple[int, ...]) -> str:
    """Canonical text form of a sender-subset key, e.g. (1, 2) -> "1,2"."""
    return ",".join(str(s) for s in key)


def instance_from_dict(doc: dict) -> ProblemInstance:
    """Parse an already-loaded JSON document; unknown fields are rejected."""
    try:
        jsonschema.validate(doc, INSTANCE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InstanceValidationError([f"schema: {exc.message}"]) from exc
    m = doc["num_messages"]
    t = doc.get("t", 1)
    senders = tuple(frozenset(s) for s in doc["senders"])
    side: list[frozenset[int]] = []
    for i in range(1, m + 1):
        side.append(frozenset(doc["side_info"].get(str(i), ())))
    extra = [k for k in doc["side_info"] if not 1 <= int(k) <= m]
    if extra:
        raise InstanceValidationError(
            [f"side_info key {k} is outside 1..{m}" for k in sorted(extra)]
        )
    return ProblemInstance(num_messages=m, t=t, senders=senders, side_info=tuple(side))


def load_instance(path: Union[str, Path]) -> ProblemInstance:
    """Load and parse an instance JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceValidationError([f"invalid JSON: {exc}"]) from exc
    if not isinstance(doc, dict):
        raise InstanceValidationError(["top-level JSON value must be an object"])
    return instance_from_dict(doc)


def validate(instance: ProblemInstance) -> ValidatedInstance:
    """Check model invariants and drop senders with no exclusive message.

    A sender whose messages are all held by others adds nothing to the
    partition lattice; such senders are removed lowest index first and
    reported in warnings.  Raises InstanceValidationError with every
    finding when the instance is structurally broken.
    """
    m = instance.num_messages
    errors: list[str] = []
    for s_idx, msgs in enumerate(instance.senders, start=1):
        bad = sorted(x for x in msgs if not 1 <= x <= m)
        if bad:
            errors.append(f"sender {s_idx} lists out-of-range messages {bad}")
    held = frozenset().union(*instance.senders) if instance.senders else frozenset()
    orphans = sorted(set(range(1, m + 1)) - held)
    if orphans:
        errors.append(f"messages held by no sender: {orphans}")
    for i in range(1, m + 1):
        k = instance.side_info[i - 1]
        if i in k:
            errors.append(f"receiver {i} lists its own demand as side-information")
        bad = sorted(x for x in k if not 1 <= x <= m)
        if bad:
            errors.append(f"receiver {i} lists out-of-range side-information {bad}")
    if errors:
        raise InstanceValidationError(errors)

    senders = list(instance.senders)
    original = list(range(1, len(senders) + 1))
    warnings: list[str] = []
    while True:
        removed = False
        for pos in range(len(senders)):
            exclusive = senders[pos].difference(*[
                senders[q] for q in range(len(senders)) if q != pos
            ]) if len(senders) > 1 else senders[pos]
            if not exclusive:
                warnings.append(
                    f"sender {original[pos]} holds no exclusive message; removed"
                )
                del senders[pos]
                del original[pos]
                removed = True
                break
        if not removed:
            break
    reduced = ProblemInstance(
        num_messages=m,
        t=instance.t,
        senders=tuple(senders),
        side_info=instance.side_info,
    )
    return ValidatedInstance(
        instance=reduced,
        warnings=tuple(warnings),
        original_sender_ids=tuple(original),
    )


def build_digraph(validated: ValidatedInstance) -> SideInfoDigraph:
    """One edge per side-information entry: (i, j) iff j in K_i."""
    inst = validated.instance
    edges = frozenset(
        (i, j) for i in range(1, inst.num_messages + 1) for j in inst.side_info[i - 1]
    )
    return SideInfoDigraph(
        vertices=tuple(range(1, inst.num_messages + 1)), edges=edges
    )


def partition(validated: ValidatedInstance) -> MessagePartition:
    """Group messages by the exact sender subset holding them."""
    inst = validated.instance
    s = inst.num_senders
    keys = []
    for mask in range(1, 1 << s):
        keys.append(tuple(i + 1 for i in range(s) if (mask >> i) & 1))
    parts: dict[tuple[int, ...], set[int]] = {tuple(sorted(k)): set() for k in keys}
    for msg in range(1, inst.num_messages + 1):
        holders = tuple(
            idx for idx, msgs in enumerate(inst.senders, start=1) if msg in msgs
        )
        parts[holders].add(msg)
    return MessagePartition(
        num_senders=s,
        parts={k: frozenset(v) for k, v in sorted(parts.items(), key=lambda kv: (len(kv[0]), kv[0]))},
    )


def induced_subdigraph(d: SideInfoDigraph, vertices) -> SideInfoDigraph:
    """Sub-digraph on the given vertex set, original labels preserved."""
    vset = frozenset(vertices)
    extra = vset - set(d.vertices)
    if extra:
        raise ValueError(f"vertices not in digraph: {sorted(extra)}")
    return SideInfoDigraph(
        vertices=tuple(sorted(vset)),
        edges=frozenset((i, j) for (i, j) in d.edges if i in vset and j in vset),
    )
