"""
Tests for T_a, the shift bookkeeping and the color shift.
"""

import random

import pytest

from core.derivations import (
    COLUMN, DIAGONAL, POWER_CASES, ROW, DerivationEngine, color_shift, color_shift_stages,
    independence_trace, shift_generator, shift_plan,
)
from core.lie_algebra import ColorLabel, LoopElement, build_symplectic_model
from core.partitions import (
    ArrayKind, ColoredPartition, Generator, colored_partitions, enumerate_admissible, phi_bijection,
)
from core.pbw import UElement
from core.verification import check_derivation_on_vacuum, check_leibniz


def gen(text, degree, rank):
    return Generator.parse(text, degree, rank)


def partition(ell, *generators):
    return ColoredPartition.from_generators(generators, ArrayKind.full(ell))


@pytest.fixture(scope="module")
def engine_one():
    return DerivationEngine(1)


@pytest.fixture(scope="module")
def engine_two():
    return DerivationEngine(2)


def test_shift_generator():
    assert shift_generator(1, 2) == ColorLabel.parse("1 4", 4)
    assert shift_generator(2, 2) == ColorLabel.parse("2 3", 4)
    assert shift_generator(1, 1) == ColorLabel.parse("1 2", 2)


def test_shift_plan_counts_barred_indices():
    pi = partition(2, gen("1 2_", -1, 2), gen("2_ 1_", -3, 2), gen("2_ 1_", -3, 2))
    plan = shift_plan(pi)
    assert plan.m_underline == (2, 3)
    assert plan.bigM == 5
    assert plan.t_word == ((shift_generator(1, 2), 2), (shift_generator(2, 2), 3))
    assert plan.application_order() == [(2, 3), (1, 2)]


def test_shift_plan_diagonal_counts_twice():
    plan = shift_plan(partition(1, gen("1_ 1_", -1, 1)))
    assert plan.m_underline == (2,)


def test_color_shift_examples():
    pi = partition(3, gen("2 3_", -1, 3), gen("1_ 1_", -2, 3))
    image = color_shift(pi)
    assert image.kind == ArrayKind.fs(3)
    assert image == ColoredPartition.from_generators(
        [gen("2 4", -1, 6), gen("6 6", -2, 6)], ArrayKind.fs(3),
    )


def test_color_shift_stages_relabel_one_index_at_a_time():
    pi = partition(2, gen("2_ 1_", -1, 2))
    stages = color_shift_stages(pi)
    assert stages == [{gen("3 1_", -1, 4): 1}, {gen("3 4", -1, 4): 1}]


@pytest.mark.parametrize("ell", [1, 2])
def test_color_shift_is_phi(ell):
    kind = ArrayKind.full(ell)
    for n in range(1, 4):
        for pi in colored_partitions(kind, n):
            assert color_shift(pi) == phi_bijection(pi)


def test_T_on_diagonal_rank_one(engine_one):
    u = engine_one.element([LoopElement(ColorLabel.parse("1_ 1_", 1), -1)])
    once = engine_one.apply_T(1, u)
    assert once == engine_one.element([LoopElement(ColorLabel.parse("2 1_", 2), -1)])
    twice = engine_one.apply_T(1, u, 2)
    assert twice == -2 * engine_one.element([LoopElement(ColorLabel.parse("2 2", 2), -1)])
    assert not engine_one.apply_T(1, u, 3)
    assert engine_one.nilpotency_order(1, ColorLabel.parse("1_ 1_", 1)) == 3


def test_T_rank_three_examples():
    engine = DerivationEngine(3)
    u = engine.element([LoopElement(ColorLabel.parse("3_ 3_", 3), -1)])
    expected = engine.element([LoopElement(ColorLabel.parse("4 3_", 6), -1)])
    scalar = engine.apply_T(3, u).proportionality(expected)
    assert scalar not in (None, 0)
    assert not engine.apply_T(3, engine.element([LoopElement(ColorLabel.parse("1 1", 3), -1)]))


def test_T_kills_constants(engine_two):
    assert not engine_two.apply_T(1, UElement.word(()))
    with pytest.raises(ValueError):
        engine_two.apply_T(3, UElement.word(()))
    with pytest.raises(ValueError):
        engine_two.apply_T(1, UElement.word(()), times=-1)


@pytest.mark.parametrize("ell", [1, 2])
def test_single_generator_lemmas(ell):
    engine = DerivationEngine(ell)
    for a in range(1, ell + 1):
        for n in (-1, -2):
            report = engine.verify_lemma_single(a, n)
            assert report.checks
            assert report.passed, report.lines()


@pytest.mark.parametrize("case", POWER_CASES)
def test_power_lemmas(engine_two, case):
    for a in (1, 2):
        for m in (1, 2, 3):
            report = engine_two.verify_lemma_powers(a, m, case)
            assert report.passed, report.lines()


def test_power_lemma_diagonal_scalar(engine_one):
    report = engine_one.verify_lemma_powers(1, 2, DIAGONAL)
    shift = report.checks[0]
    assert shift.name == "power shift a_a_"
    assert shift.scalar not in ("0", "none")


def test_power_cases_have_checks(engine_two):
    assert not engine_two.verify_lemma_powers(1, 1, COLUMN).checks
    assert engine_two.verify_lemma_powers(2, 1, COLUMN).checks
    assert len(engine_two.verify_lemma_powers(1, 1, ROW).checks) == 2 * 3
    with pytest.raises(ValueError):
        engine_two.verify_lemma_powers(1, 0, ROW)
    with pytest.raises(ValueError):
        engine_two.verify_lemma_powers(1, 1, "anti")


def test_nilpotency_bounded(engine_two):
    for a in (1, 2):
        assert max(order for _, order in engine_two.nilpotency_table(a)) <= 3


def test_corrupted_bracket_fails():
    model = build_symplectic_model(2).with_bracket_override(
        shift_generator(1, 1), ColorLabel.parse("1_ 1_", 2), {},
    )
    engine = DerivationEngine(1, model=model)
    assert not engine.verify_lemma_single(1).passed


def test_end_to_end_scalar(engine_one):
    pi = partition(1, gen("1_ 1_", -1, 1))
    report = engine_one.verify_color_shift_end_to_end(pi, level=1)
    assert report.passed, report.lines()
    final = [c for c in report.checks if c.name == "T(pi)u(pi)"]
    assert final[0].scalar == "-2"
    assert any(c.name == "t(pi)u(pi)v" for c in report.checks)


@pytest.mark.parametrize("level", [1, 2])
def test_end_to_end_admissible_rank_one(engine_one, level):
    partitions = enumerate_admissible(1, level, 3)
    for n, pis in partitions.items():
        for pi in pis:
            report = engine_one.verify_color_shift_end_to_end(pi, level, others=pis)
            assert report.passed, report.lines()


def test_end_to_end_rank_two(engine_two):
    for pi in enumerate_admissible(2, 1, 2)[2]:
        report = engine_two.verify_color_shift_end_to_end(pi, 1)
        assert report.passed, report.lines()


def test_independence_trace():
    partitions = enumerate_admissible(1, 2, 4)
    for pis in partitions.values():
        trace = independence_trace(pis, 2)
        assert trace.passed
        assert sum(len(r.partitions) for r in trace.rounds) == len(pis)
        bigMs = [r.bigM for r in trace.rounds]
        assert bigMs == sorted(bigMs, reverse=True)


def test_leibniz_sampled(engine_two):
    assert check_leibniz(engine_two, random.Random(11), samples=30, max_degree=2).passed


def test_shift_generator_on_vacuum_is_T(engine_one):
    assert check_derivation_on_vacuum(engine_one, random.Random(5), 150, level=1, max_degree=4).passed
    assert check_derivation_on_vacuum(engine_one, random.Random(6), 50, level=2, max_degree=3).passed
