"""
Tests for the sp_{2m} model: labels, brackets, form and embeddings.
"""

from fractions import Fraction

import pytest

from core.lie_algebra import (
    UNDERLINE, ColorLabel, IndexLabel, LoopElement, WeightVector, affine_bracket, build_symplectic_model,
    check_embedding_homomorphism, colors_of_rank, embed_subalgebra, weight_of,
)


def color(text, rank):
    return ColorLabel.parse(text, rank)


def test_label_positions():
    assert IndexLabel(1).position(3) == 1
    assert IndexLabel(3, True).position(3) == 4
    assert IndexLabel(1, True).position(3) == 6
    assert IndexLabel.from_position(5, 3) == IndexLabel(2, True)
    assert IndexLabel(2).succeeds(IndexLabel(3), 3)
    assert IndexLabel(3).succeeds(IndexLabel(3, True), 3)


def test_parse_accepts_both_bar_spellings():
    assert color("2_ 1_", 2) == color(f"2{UNDERLINE} 1{UNDERLINE}", 2)
    with pytest.raises(ValueError):
        color("1_ 2", 2)
    with pytest.raises(ValueError):
        color("3 3", 2)


def test_colors_of_rank_two_ascending():
    names = [str(c).replace(UNDERLINE, "_") for c in colors_of_rank(2)]
    assert names == ["1_ 1_", "2_ 1_", "2_ 2_", "2 1_", "2 2_", "2 2", "1 1_", "1 2_", "1 2", "1 1"]


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_dimension(m):
    assert build_symplectic_model(m).dim == m * (2 * m + 1)


def test_weights():
    assert weight_of(color("1 1", 3)).eps == (2, 0, 0)
    assert weight_of(color("1 3_", 3)).eps == (1, 0, -1)
    assert weight_of(ColorLabel.cartan(2, 3)).eps == (0, 0, 0)
    assert weight_of(color("2_ 1_", 2)).eps == (-1, -1)


def test_shapes():
    assert ColorLabel.cartan(1, 2).shape == "h"
    assert color("1 2", 2).shape == "ab"
    assert color("2_ 1_", 2).shape == "a_b_"
    assert color("1 2_", 2).shape == "ab_"


def test_known_brackets():
    model = build_symplectic_model(3)
    assert model.bracket(color("1 2_", 3), color("2 3_", 3)) == {color("1 3_", 3): 1}

    small = build_symplectic_model(1)
    assert small.bracket(color("1 1", 1), color("1_ 1_", 1)) == {ColorLabel.cartan(1, 1): 1}
    assert small.bracket(color("1 1", 1), color("1 1", 1)) == {}


def test_form_values():
    model = build_symplectic_model(2)
    assert model.form(color("1 1", 2), color("1_ 1_", 2)) == 1
    assert model.form(ColorLabel.cartan(1, 2), ColorLabel.cartan(1, 2)) == 2
    assert model.form(color("1 1", 2), color("1 1", 2)) == 0
    assert model.theta_norm() == Fraction(2)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_structure_checks_pass(m):
    model = build_symplectic_model(m)
    assert model.check_antisymmetry() == []
    assert model.check_jacobi() == []
    assert model.check_form() == []
    assert model.check_grading() == []


def test_corrupted_bracket_breaks_form_invariance():
    model = build_symplectic_model(1)
    broken = model.with_bracket_override(color("1 1", 1), color("1_ 1_", 1), {})
    assert broken.bracket(color("1_ 1_", 1), color("1 1", 1)) == {}
    assert broken.check_form() != []
    # the original cached model is untouched
    assert model.check_form() == []


def test_grade_one_labels():
    model = build_symplectic_model(2)
    grade_one = model.grade_one_labels()
    assert len(grade_one) == 3
    assert all(not c.first.barred and not c.second.barred for c in grade_one)
    assert model.grade(ColorLabel.cartan(2, 2)) == 0
    assert model.grade(color("1_ 1_", 2)) == -1
    assert sorted(w.eps for w in model.gamma()) == [(0, 2), (1, 1), (2, 0)]
    assert sorted(w.eps for w in model.gamma()) == [(0, 2), (1, 1), (2, 0)]


def test_affine_bracket_central_term():
    combination, central = affine_bracket(
        LoopElement(color("1 1", 1), 2), LoopElement(color("1_ 1_", 1), -2), level=3,
    )
    assert combination == {LoopElement(ColorLabel.cartan(1, 1), 0): 1}
    assert central == 6

    _, central = affine_bracket(LoopElement(color("1 1", 1), 1), LoopElement(color("1_ 1_", 1), -2), level=3)
    assert central == 0


def test_embedding_is_label_preserving():
    phi = embed_subalgebra(2)
    assert phi[color("2_ 1_", 2)] == color("2_ 1_", 4)
    assert phi[ColorLabel.cartan(2, 2)] == ColorLabel.cartan(2, 4)

    shifted = embed_subalgebra(2, [2, 4])
    assert shifted[color("1 2_", 2)] == color("2 4_", 4)


@pytest.mark.parametrize("indices", [None, (1, 3), (2, 4), (3, 4)])
def test_embedding_homomorphism(indices):
    assert check_embedding_homomorphism(2, indices) == []


def test_embedding_rejects_bad_subsets():
    with pytest.raises(ValueError):
        embed_subalgebra(2, [3, 1])
    with pytest.raises(ValueError):
        embed_subalgebra(2, [1, 5])


def test_weight_pairing():
    theta = WeightVector((2, 0))
    assert theta.pair(theta) == 2
    assert (theta - theta) == WeightVector.zero(2)


def test_dump_lists_basis_and_form():
    dump = build_symplectic_model(1).dump()
    assert dump["dimension"] == 3
    assert len(dump["basis"]) == 3
    assert dump["brackets"]
    assert any(entry["value"] == "2" for entry in dump["form"])
