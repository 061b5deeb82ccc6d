"""Shared fixtures: the worked examples used as golden tests, plus a
random-instance generator for the property suites."""

from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from indexcode import (
    ProblemInstance,
    ValidatedInstance,
    instance_from_dict,
    validate,
)

DATA = Path(__file__).parent / "data"


def load_fixture(name: str) -> ValidatedInstance:
    with open(DATA / name, "r", encoding="utf-8") as fh:
        return validate(instance_from_dict(json.load(fh)))


def make_instance(
    m: int,
    senders,
    side_info: dict[int, set[int]],
    t: int = 1,
) -> ValidatedInstance:
    return validate(
        ProblemInstance(
            num_messages=m,
            t=t,
            senders=tuple(frozenset(s) for s in senders),
            side_info=tuple(
                frozenset(side_info.get(i, ())) for i in range(1, m + 1)
            ),
        )
    )


@pytest.fixture(scope="session")
def example1():
    """m=5, two senders sharing x5; only the shared->private-1
    interaction is fully participated."""
    return load_fixture("example1.json")


@pytest.fixture(scope="session")
def example2():
    """m=6, fully participated, rate 3."""
    return load_fixture("example2.json")


@pytest.fixture(scope="session")
def example3():
    """m=7, fully participated, every pairwise interaction, rate 2."""
    return load_fixture("example3.json")


@pytest.fixture(scope="session")
def example4():
    """Three senders, m=8, sum rule applies, rate 6."""
    return load_fixture("example4.json")


@pytest.fixture(scope="session")
def example6():
    """Three senders, m=10, cluster rule applies, rate 5."""
    return load_fixture("example6.json")


def random_two_sender_fully_participated(rng: random.Random):
    """A two-sender instance whose interaction digraph is exactly a
    sampled edge set, every interaction fully participated.

    Returns (validated, h_edges) where h_edges uses part keys.
    """
    P1, P2, P12 = (1,), (2,), (1, 2)
    while True:
        m = rng.randint(3, 6)
        m12 = rng.randint(0, m - 2)
        m1 = rng.randint(1, m - m12 - 1)
        m2 = m - m12 - m1
        if m2 < 1:
            continue
        ids = list(range(1, m + 1))
        rng.shuffle(ids)
        parts = {
            P1: set(ids[:m1]),
            P2: set(ids[m1 : m1 + m2]),
            P12: set(ids[m1 + m2 :]),
        }
        keys = [k for k in (P1, P2, P12) if parts[k]]
        pairs = [(a, b) for a in keys for b in keys if a != b]
        h_edges = {e for e in pairs if rng.random() < 0.5}
        side = {i: set() for i in range(1, m + 1)}
        for (a, b) in h_edges:
            for u in parts[a]:
                for v in parts[b]:
                    side[u].add(v)
        for k in keys:
            for u in parts[k]:
                for v in parts[k]:
                    if u != v and rng.random() < 0.5:
                        side[u].add(v)
        senders = [parts[P1] | parts[P12], parts[P2] | parts[P12]]
        return make_instance(m, senders, side), h_edges


def random_two_sender_partial(rng: random.Random) -> ValidatedInstance:
    """A two-sender instance with independently sampled side-information
    edges, so interactions are usually only partially participated."""
    while True:
        m = rng.randint(3, 6)
        m12 = rng.randint(0, m - 2)
        m1 = rng.randint(1, m - m12 - 1)
        m2 = m - m12 - m1
        if m2 < 1:
            continue
        ids = list(range(1, m + 1))
        rng.shuffle(ids)
        p1 = set(ids[:m1])
        p2 = set(ids[m1 : m1 + m2])
        p12 = set(ids[m1 + m2 :])
        side = {
            i: {j for j in range(1, m + 1) if j != i and rng.random() < 0.3}
            for i in range(1, m + 1)
        }
        return make_instance(m, [p1 | p12, p2 | p12], side)


def random_instance(
    rng: random.Random, max_m: int = 5, max_senders: int = 3
) -> ValidatedInstance:
    """Unconstrained random instance; sender sets cover all messages."""
    while True:
        m = rng.randint(2, max_m)
        s = rng.randint(1, max_senders)
        senders = [set() for _ in range(s)]
        for j in range(1, m + 1):
            holders = rng.sample(range(s), rng.randint(1, s))
            for h in holders:
                senders[h].add(j)
        if any(not msgs for msgs in senders):
            continue
        side = {
            i: {j for j in range(1, m + 1) if j != i and rng.random() < 0.4}
            for i in range(1, m + 1)
        }
        validated = make_instance(m, senders, side)
        if validated.instance.num_senders == s:
            return validated
