"""
Tests for the generator arrays, path loads, enumeration and the FULL -> FS relabeling.
"""

import pytest

from core.errors import ResourceCapExceeded
from core.lie_algebra import ColorLabel, WeightVector, affine_simple_root
from core.partitions import (
    ArrayKind, ArrayPosition, ColoredPartition, Generator, affine_weight, array_position, check_gluing,
    colored_partitions, count_table, downward_paths_through, enumerate_admissible, enumerate_admissible_bruteforce,
    generator_at, generators_up_to, glued_pairs, is_admissible, max_path_load, max_path_load_bruteforce,
    phi_bijection, phi_color, phi_inverse, sort_monomial,
)


def gen(text, degree, rank):
    return Generator.parse(text, degree, rank)


def partition(kind, *generators):
    return ColoredPartition.from_generators(generators, kind)


def test_generator_degree_must_be_negative():
    with pytest.raises(ValueError):
        Generator(ColorLabel.parse("1 1", 1), 0)


def test_array_positions_rank_two():
    kind = ArrayKind.full(2)
    assert array_position(gen("2 2", -2, 2), kind) == ArrayPosition(0, 1)
    assert array_position(gen("1 1", -1, 2), kind) == ArrayPosition(4, 0)


def test_array_positions_rank_one():
    kind = ArrayKind.full(1)
    h = ColorLabel.cartan(1, 1)
    expected = {
        -1: {"1 1": (2, 0), "1_ 1_": (2, 1)},
        -2: {"1 1": (0, 0), "1_ 1_": (0, 1)},
        -3: {"1 1": (2, 2), "1_ 1_": (2, 3)},
    }
    for degree, cells in expected.items():
        for text, position in cells.items():
            assert array_position(gen(text, degree, 1), kind) == position
    assert array_position(Generator(h, -1), kind) == (1, 0)
    assert array_position(Generator(h, -2), kind) == (1, 1)
    assert array_position(Generator(h, -3), kind) == (1, 2)


@pytest.mark.parametrize("kind", [ArrayKind.full(1), ArrayKind.full(2), ArrayKind.fs(1), ArrayKind.fs(2)])
def test_positions_are_a_bijection(kind):
    gens = generators_up_to(kind, 4)
    positions = [array_position(g, kind) for g in gens]
    assert len(set(positions)) == len(gens)
    for g, position in zip(gens, positions):
        assert 0 <= position.row <= kind.width
        assert generator_at(position, kind) == g


def test_path_counts():
    assert len(downward_paths_through(ArrayPosition(0, 0), ArrayKind.full(1))) == 4
    assert len(downward_paths_through(ArrayPosition(0, 3), ArrayKind.full(2))) == 16
    with pytest.raises(ValueError):
        downward_paths_through(ArrayPosition(1, 0), ArrayKind.full(1))


@pytest.mark.parametrize("ell", [1, 2, 3, 4])
def test_path_counts_both_arrays(ell):
    for kind in (ArrayKind.full(ell), ArrayKind.fs(ell)):
        paths = downward_paths_through(ArrayPosition(0, 1), kind)
        assert len(paths) == 4 ** ell
        assert all(len(path) == 2 * ell + 1 for path in paths)
        assert len({path.nodes for path in paths}) == 4 ** ell


def test_glued_generators_are_neighbours():
    kind = ArrayKind.full(1)
    lower, upper = glued_pairs(kind, 2)[-1]
    assert lower == gen("1_ 1_", -1, 1)
    assert upper == Generator(ColorLabel.cartan(1, 1), -2)
    assert array_position(lower, kind) == ArrayPosition(2, 1)
    assert array_position(upper, kind) == ArrayPosition(1, 1)


def test_gluing_shifts_weight_by_alpha_zero():
    lower, upper = gen("2 1_", -3, 2), gen("1 2", -4, 2)
    assert affine_weight(upper) == affine_weight(lower) - affine_simple_root(2)
    assert affine_weight(upper) == WeightVector((1, 1), delta=-4)


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_gluing_holds(ell):
    for kind in (ArrayKind.full(ell), ArrayKind.fs(ell)):
        assert len(glued_pairs(kind, 6)) == 5 * 2 * ell
        assert check_gluing(kind, 6) == []


def test_fs_array_rejects_barred_colors():
    kind = ArrayKind.fs(1)
    assert str(kind) == "FS(2)"
    assert len(kind.colors()) == 3
    with pytest.raises(ValueError):
        partition(kind, gen("1 1_", -1, 2))


def test_sort_monomial_golden():
    kind = ArrayKind.full(2)
    pi = partition(
        kind,
        gen("1 1", -1, 2), gen("2_ 1_", -1, 2), gen("1 2_", -2, 2), Generator(ColorLabel.cartan(2, 2), -1),
    )
    assert sort_monomial(pi) == [
        gen("1 2_", -2, 2), gen("2_ 1_", -1, 2), Generator(ColorLabel.cartan(2, 2), -1), gen("1 1", -1, 2),
    ]


def test_partition_bookkeeping():
    kind = ArrayKind.full(1)
    pi = partition(kind, gen("1 1", -1, 1), gen("1 1", -1, 1), gen("1_ 1_", -2, 1))
    assert pi.degree == 4
    assert pi.length == 3
    assert pi.multiplicity(gen("1 1", -1, 1)) == 2
    assert ColoredPartition.from_records(pi.records(), kind) == pi
    assert str(ColoredPartition.empty(kind)) == "{}"


def test_max_path_load():
    kind = ArrayKind.full(1)
    # 1_1_(-2) sits at (0,1), h(-1) at (1,0): no path reaches both
    assert max_path_load(partition(kind, gen("1_ 1_", -2, 1), Generator(ColorLabel.cartan(1, 1), -1))) == 1
    assert max_path_load(partition(kind, gen("1 1", -1, 1), gen("1 1", -1, 1))) == 2
    assert max_path_load(partition(kind, gen("1 1", -2, 1), gen("1 1", -1, 1))) == 2
    assert max_path_load(ColoredPartition.empty(kind)) == 0


@pytest.mark.parametrize("kind", [ArrayKind.full(1), ArrayKind.fs(1)])
def test_dp_matches_bruteforce(kind):
    for n in range(1, 5):
        for pi in colored_partitions(kind, n):
            assert max_path_load(pi) == max_path_load_bruteforce(pi)


def test_admissible_counts_level_one():
    partitions = enumerate_admissible(1, 1, 6)
    assert [len(partitions[n]) for n in range(1, 7)] == [3, 4, 7, 13, 19, 29]
    assert all(is_admissible(pi, 1) for pis in partitions.values() for pi in pis)


def test_admissible_degree_two_level_one():
    pis = enumerate_admissible(1, 1, 2)[2]
    pairs = [pi for pi in pis if pi.length == 2]
    assert pairs == [partition(ArrayKind.full(1), gen("1_ 1_", -1, 1), gen("1 1", -1, 1))]


def test_admissible_counts_level_two():
    partitions = enumerate_admissible(1, 2, 3)
    assert count_table(partitions) == [(1, 3), (2, 9), (3, 15)]


@pytest.mark.parametrize("ell, max_degree", [(1, 5), (2, 3)])
def test_counts_grow_with_level(ell, max_degree):
    tables = [enumerate_admissible(ell, level, max_degree) for level in (1, 2, 3)]
    for low, high in zip(tables, tables[1:]):
        for n in range(1, max_degree + 1):
            assert len(low[n]) <= len(high[n])
            assert set(low[n]) <= set(high[n])


@pytest.mark.slow
def test_dp_matches_bruteforce_rank_two():
    for kind in (ArrayKind.full(2), ArrayKind.fs(2)):
        for n in range(1, 5):
            for pi in colored_partitions(kind, n):
                assert max_path_load(pi) == max_path_load_bruteforce(pi)


def test_enumeration_matches_bruteforce():
    for kind in (ArrayKind.full(1), ArrayKind.fs(1)):
        for level in (1, 2):
            assert enumerate_admissible(1, level, 4, kind=kind) == \
                enumerate_admissible_bruteforce(1, level, 4, kind=kind)


def test_enumeration_is_deterministic():
    assert enumerate_admissible(1, 2, 4) == enumerate_admissible(1, 2, 4)


def test_enumeration_cap():
    with pytest.raises(ResourceCapExceeded):
        enumerate_admissible(1, 1, 6, cap=10)


def test_enumeration_rejects_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_admissible(1, 0, 3)
    with pytest.raises(ValueError):
        enumerate_admissible(1, 1, 3, kind=ArrayKind.full(2))


def test_colored_partition_counts():
    # 3 colors: coefficients of prod (1 - q^j)^-3
    assert [len(colored_partitions(ArrayKind.full(1), n)) for n in range(0, 6)] == [1, 3, 9, 22, 51, 108]


def test_phi_colors():
    assert phi_color(ColorLabel.parse("3_ 3_", 3)) == ColorLabel.parse("4 4", 6)
    assert phi_color(ColorLabel.parse("1 3_", 3)) == ColorLabel.parse("1 4", 6)
    assert phi_color(ColorLabel.parse("1_ 1_", 3)) == ColorLabel.parse("6 6", 6)
    assert phi_color(ColorLabel.parse("1 2", 3)) == ColorLabel.parse("1 2", 6)


def test_phi_preserves_path_loads():
    kind = ArrayKind.full(2)
    for n in range(1, 4):
        for pi in colored_partitions(kind, n):
            image = phi_bijection(pi)
            assert image.kind == ArrayKind.fs(2)
            assert (image.degree, image.length) == (pi.degree, pi.length)
            assert max_path_load(image) == max_path_load(pi)
            assert phi_inverse(image) == pi


def test_phi_maps_admissible_sets():
    full = enumerate_admissible(1, 2, 4)
    fs = enumerate_admissible(1, 2, 4, kind=ArrayKind.fs(1))
    for n in full:
        assert sorted(map(str, (phi_bijection(pi) for pi in full[n]))) == sorted(map(str, fs[n]))
