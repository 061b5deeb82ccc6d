import random

import pytest

from indexcode import (
    BitMatrix,
    SearchBudgetExceeded,
    SenderCode,
    construct,
    verify_exhaustive,
    verify_linear,
)
from indexcode.verify import EXHAUSTIVE_BIT_LIMIT
from conftest import make_instance, random_instance


def code_of(m, *rows_by_sender):
    blocks = tuple(
        (sender, BitMatrix.from_rows(rows, cols=m))
        for sender, rows in rows_by_sender
    )
    return SenderCode(blocks=blocks)


def random_code(rng, validated, max_extra_rows=3):
    """Rows drawn inside each sender's support; possibly undecodable."""
    inst = validated.instance
    m = inst.num_messages
    blocks = []
    for idx, msgs in enumerate(inst.senders, start=1):
        rows = []
        for _ in range(rng.randint(0, max_extra_rows)):
            row = [0] * m
            for j in msgs:
                row[j - 1] = rng.randint(0, 1)
            rows.append(row)
        if rows:
            blocks.append((idx, BitMatrix.from_rows(rows, cols=m)))
    return SenderCode(blocks=tuple(blocks))


class TestVerifyLinear:
    def test_identity_code_always_passes(self):
        rng = random.Random(29)
        for _ in range(10):
            v = random_instance(rng, max_m=5, max_senders=1)
            m = v.instance.num_messages
            code = SenderCode(blocks=((1, BitMatrix.identity(m)),))
            assert verify_linear(code, v).ok

    def test_empty_code_fails_without_side_info(self):
        v = make_instance(1, [{1}], {1: set()})
        report = verify_linear(SenderCode(blocks=()), v)
        assert not report.ok
        assert report.failures == ((1, "receiver 1 cannot decode message 1"),)
        assert report.method == "linear"

    def test_zero_rows_do_not_help(self):
        v = make_instance(2, [{1, 2}], {1: set(), 2: set()})
        code = code_of(2, (1, ["00", "00"]))
        report = verify_linear(code, v)
        assert {i for i, _ in report.failures} == {1, 2}

    def test_side_info_substitutes_for_columns(self):
        # x1+x2 alone serves both receivers of a 2-cycle
        v = make_instance(2, [{1, 2}], {1: {2}, 2: {1}})
        assert verify_linear(code_of(2, (1, ["11"])), v).ok

    def test_partial_failure_names_the_receiver(self):
        v = make_instance(3, [{1, 2, 3}], {1: {2}, 2: {1}, 3: set()})
        report = verify_linear(code_of(3, (1, ["110"])), v)
        assert not report.ok
        assert report.failures == ((3, "receiver 3 cannot decode message 3"),)

    def test_structural_failure_is_receiver_zero(self):
        v = make_instance(2, [{1}, {2}], {1: {2}, 2: {1}})
        report = verify_linear(code_of(2, (1, ["11"]), (2, ["01"])), v)
        assert not report.ok
        assert (
            0,
            "sender 1 block uses columns outside its message set",
        ) in report.failures

    def test_unknown_sender_is_structural(self):
        v = make_instance(2, [{1, 2}], {1: {2}, 2: {1}})
        report = verify_linear(code_of(2, (5, ["11"])), v)
        assert (0, "block names unknown sender 5") in report.failures

    def test_column_mismatch_raises(self):
        v = make_instance(3, [{1, 2, 3}], {1: set(), 2: set(), 3: set()})
        with pytest.raises(ValueError, match="has 2 columns"):
            verify_linear(code_of(2, (1, ["11"])), v)

    def test_vector_messages(self):
        # t=2: message j covers two columns; a full identity decodes all
        v = make_instance(2, [{1, 2}], {1: {2}, 2: {1}}, t=2)
        code = SenderCode(blocks=((1, BitMatrix.identity(4)),))
        assert verify_linear(code, v).ok
        short = code_of(4, (1, ["1010", "0101"]))  # x1+x2 componentwise
        assert verify_linear(short, v).ok
        broken = code_of(4, (1, ["1010"]))
        report = verify_linear(broken, v)
        assert {i for i, _ in report.failures} == {1, 2}

    def test_wide_instances_use_the_dense_path(self):
        m = 70  # beyond the packed-mask kernel width
        v = make_instance(
            m,
            [set(range(1, m + 1))],
            {i: {i % m + 1} for i in range(1, m + 1)},
        )
        rows = []
        for i in range(1, m):
            row = [0] * m
            row[i - 1] = row[i % m] = 1
            rows.append(row)
        assert verify_linear(code_of(m, (1, rows)), v).ok
        assert not verify_linear(code_of(m, (1, rows[:-1])), v).ok


class TestVerifyExhaustive:
    def test_agrees_on_known_codes(self, example2, example3):
        for v in (example2, example3):
            code, _, _ = construct(v)
            assert verify_exhaustive(code, v).ok

    def test_failure_message_names_confusable_assignments(self):
        v = make_instance(1, [{1}], {1: set()})
        report = verify_exhaustive(SenderCode(blocks=()), v)
        assert not report.ok
        assert report.method == "exhaustive"
        assert "identical observations" in report.failures[0][1]

    def test_bit_limit(self):
        m = EXHAUSTIVE_BIT_LIMIT + 1
        v = make_instance(m, [set(range(1, m + 1))], {})
        code = SenderCode(blocks=((1, BitMatrix.identity(m)),))
        with pytest.raises(SearchBudgetExceeded):
            verify_exhaustive(code, v)

    def test_vector_messages(self):
        v = make_instance(2, [{1, 2}], {1: {2}, 2: {1}}, t=2)
        assert verify_exhaustive(code_of(4, (1, ["1010", "0101"])), v).ok
        assert not verify_exhaustive(code_of(4, (1, ["1010"])), v).ok


class TestLinearMatchesExhaustive:
    def test_random_codes_and_instances(self):
        rng = random.Random(31)
        seen_disagreement = []
        for _ in range(150):
            v = random_instance(rng, max_m=4, max_senders=3)
            code = random_code(rng, v)
            lin = verify_linear(code, v)
            exh = verify_exhaustive(code, v)
            assert lin.ok == exh.ok
            assert {i for i, _ in lin.failures} == {i for i, _ in exh.failures}

    def test_adding_rows_never_breaks_a_receiver(self):
        rng = random.Random(37)
        for _ in range(60):
            v = random_instance(rng, max_m=4, max_senders=2)
            code = random_code(rng, v)
            failing = {i for i, _ in verify_linear(code, v).failures}
            extended = random_code(rng, v)
            merged = SenderCode(blocks=code.blocks + extended.blocks)
            still_failing = {i for i, _ in verify_linear(merged, v).failures}
            assert still_failing <= failing
