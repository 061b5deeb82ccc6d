import json

import pytest

from indexcode import (
    InstanceValidationError,
    build_digraph,
    induced_subdigraph,
    instance_from_dict,
    load_instance,
    part_key_str,
    partition,
    validate,
)
from conftest import make_instance


def doc(**overrides):
    base = {
        "num_messages": 3,
        "t": 1,
        "senders": [[1, 2], [2, 3]],
        "side_info": {"1": [2], "2": [3], "3": [1]},
    }
    base.update(overrides)
    return base


def test_parse_round_trip():
    inst = instance_from_dict(doc())
    assert inst.num_messages == 3
    assert inst.num_senders == 2
    assert inst.side_info_of(2) == frozenset({3})


def test_t_defaults_to_one():
    d = doc()
    del d["t"]
    assert instance_from_dict(d).t == 1


def test_unknown_fields_rejected():
    with pytest.raises(InstanceValidationError):
        instance_from_dict(doc(extra_field=1))


def test_bad_side_info_key_rejected():
    with pytest.raises(InstanceValidationError):
        instance_from_dict(doc(side_info={"0": [1]}))
    with pytest.raises(InstanceValidationError):
        instance_from_dict(doc(side_info={"7": [1]}))


def test_schema_type_errors():
    with pytest.raises(InstanceValidationError):
        instance_from_dict(doc(num_messages="three"))
    with pytest.raises(InstanceValidationError):
        instance_from_dict(doc(senders=[1, 2]))


def test_load_instance_rejects_bad_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json", encoding="utf-8")
    with pytest.raises(InstanceValidationError):
        load_instance(p)
    p2 = tmp_path / "list.json"
    p2.write_text("[]", encoding="utf-8")
    with pytest.raises(InstanceValidationError):
        load_instance(p2)


def test_load_instance_ok(tmp_path):
    p = tmp_path / "ok.json"
    p.write_text(json.dumps(doc()), encoding="utf-8")
    assert load_instance(p).num_messages == 3


def test_validate_collects_all_errors():
    bad = {
        "num_messages": 3,
        "t": 1,
        "senders": [[1, 9]],
        "side_info": {"1": [1], "2": [8]},
    }
    with pytest.raises(InstanceValidationError) as exc:
        validate(instance_from_dict(bad))
    text = "; ".join(exc.value.errors)
    assert "out-of-range messages" in text
    assert "held by no sender" in text
    assert "own demand" in text
    assert "out-of-range side-information" in text


def test_validate_removes_redundant_sender():
    # sender 2's messages are all held by sender 1
    v = make_instance(3, [{1, 2, 3}, {2, 3}], {1: {2}, 2: set(), 3: set()})
    assert v.instance.num_senders == 1
    assert v.original_sender_ids == (1,)
    assert any("no exclusive message" in w for w in v.warnings)


def test_validate_removal_is_iterative_lowest_first():
    # dropping sender 1 makes sender 2 redundant in turn
    v = make_instance(
        4,
        [{1, 2}, {1, 2, 3}, {1, 2, 3, 4}],
        {1: set(), 2: set(), 3: set(), 4: set()},
    )
    assert v.instance.num_senders == 1
    assert v.original_sender_ids == (3,)
    assert len(v.warnings) == 2


def test_validate_keeps_all_senders_with_exclusive_parts():
    v = make_instance(3, [{1, 3}, {2, 3}], {1: set(), 2: set(), 3: set()})
    assert v.instance.num_senders == 2
    assert v.warnings == ()


def test_build_digraph():
    v = make_instance(3, [{1, 2, 3}], {1: {2}, 2: {3}, 3: {1}})
    d = build_digraph(v)
    assert d.vertices == (1, 2, 3)
    assert d.edges == frozenset({(1, 2), (2, 3), (3, 1)})
    assert d.out_neighbors(1) == (2,)
    assert d.has_edge(1, 2) and not d.has_edge(2, 1)


def test_partition_covers_all_sender_subsets():
    v = make_instance(4, [{1, 3, 4}, {2, 3}, {4}], {i: set() for i in range(1, 5)})
    # sender 3 holds only message 4 which sender 1 also holds: removed
    assert v.instance.num_senders == 2
    parts = partition(v)
    assert parts.part((1,)) == frozenset({1, 4})
    assert parts.part((2,)) == frozenset({2})
    assert parts.part((1, 2)) == frozenset({3})
    assert parts.nonempty_keys() == ((1,), (2,), (1, 2))


def test_partition_empty_shared_part():
    v = make_instance(2, [{1}, {2}], {1: set(), 2: set()})
    parts = partition(v)
    assert parts.part((1, 2)) == frozenset()
    assert parts.nonempty_keys() == ((1,), (2,))


def test_part_key_str():
    assert part_key_str((1,)) == "1"
    assert part_key_str((1, 2)) == "1,2"


def test_induced_subdigraph():
    v = make_instance(3, [{1, 2, 3}], {1: {2, 3}, 2: {1}, 3: set()})
    d = build_digraph(v)
    sub = induced_subdigraph(d, {1, 2})
    assert sub.vertices == (1, 2)
    assert sub.edges == frozenset({(1, 2), (2, 1)})
    with pytest.raises(ValueError):
        induced_subdigraph(d, {1, 9})
