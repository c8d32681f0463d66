"""
Tests for PBW normal ordering in U and in the vacuum module.
"""

import random

import pytest

from core.derivations import shift_generator
from core.errors import TruncationError
from core.lie_algebra import ColorLabel, LoopElement, build_symplectic_model
from core.pbw import (
    EnvelopingAlgebra, ModuleVector, UElement, VacuumModule, act, adjoint_word_action, letter_of,
    monomial_vector, pbw_words, word_weight,
)
from core.verification import check_module_axiom


def loop(text, degree, rank):
    return LoopElement(ColorLabel.parse(text, rank), degree)


@pytest.mark.parametrize("dim, expected", [
    (3, [1, 3, 9, 22, 51, 108, 221]),
    (10, [1, 10, 65, 330, 1430, 5512]),
])
def test_pbw_word_counts(dim, expected):
    assert [sum(1 for _ in pbw_words(dim, n)) for n in range(len(expected))] == expected


def test_pbw_words_are_sorted():
    for word in pbw_words(3, 4):
        assert list(word) == sorted(word)
        assert sum(-d for d, _ in word) == 4


def test_raising_operator_on_lowest_vector():
    model = build_symplectic_model(1)
    module = VacuumModule(model, level=3, truncation=2)
    vector = act(loop("1_ 1_", -1, 1), ModuleVector.vacuum(), module)
    assert act(loop("1 1", 1, 1), vector, module) == 3 * ModuleVector.vacuum()


def test_cartan_central_term():
    model = build_symplectic_model(2)
    module = VacuumModule(model, level=2, truncation=2)
    h = LoopElement(ColorLabel.cartan(1, 2), 1)
    vector = act(LoopElement(ColorLabel.cartan(1, 2), -1), ModuleVector.vacuum(), module)
    assert act(h, vector, module) == 4 * ModuleVector.vacuum()


def test_nonnegative_modes_kill_vacuum():
    model = build_symplectic_model(1)
    module = VacuumModule(model, level=1, truncation=2)
    for color in model.basis:
        assert not act(LoopElement(color, 0), ModuleVector.vacuum(), module)
        assert not act(LoopElement(color, 1), ModuleVector.vacuum(), module)
    assert module.act_central(ModuleVector.vacuum()) == ModuleVector.vacuum()


def test_zero_mode_acts_by_bracket():
    model = build_symplectic_model(1)
    module = VacuumModule(model, level=1, truncation=2)
    vector = act(loop("1_ 1_", -1, 1), ModuleVector.vacuum(), module)
    image = act(LoopElement(ColorLabel.cartan(1, 1), 0), vector, module)
    assert image == -2 * vector


def test_monomial_vector_is_the_word():
    model = build_symplectic_model(2)
    module = VacuumModule(model, level=1, truncation=4)
    factors = [loop("1 2_", -2, 2), loop("2_ 1_", -1, 2), loop("1 1", -1, 2)]
    vector = monomial_vector(factors, module)
    assert vector == ModuleVector.word([letter_of(f, model) for f in factors])
    with pytest.raises(ArithmeticError):
        monomial_vector(list(reversed(factors)), module)


def test_truncation():
    model = build_symplectic_model(1)
    module = VacuumModule(model, level=1, truncation=1)
    vector = act(loop("1 1", -1, 1), ModuleVector.vacuum(), module)
    with pytest.raises(TruncationError):
        act(loop("1 1", -1, 1), vector, module)


def test_enveloping_commutator():
    model = build_symplectic_model(1)
    algebra = EnvelopingAlgebra(model)
    x = algebra.element([loop("1 1", -1, 1)])
    y = algebra.element([loop("1_ 1_", -2, 1)])
    expected = algebra.element([LoopElement(ColorLabel.cartan(1, 1), -3)])
    assert algebra.commutator(x, y) == expected
    assert algebra.product(x, y) - algebra.product(y, x) == expected


def test_central_term_needs_a_level():
    model = build_symplectic_model(1)
    h = ColorLabel.cartan(1, 1)
    with pytest.raises(ValueError):
        EnvelopingAlgebra(model).element([LoopElement(h, 1), LoopElement(h, -1)])
    with_level = EnvelopingAlgebra(model, level=2).element([LoopElement(h, 1), LoopElement(h, -1)])
    assert with_level.coefficient(()) == 4


def test_proportionality():
    u = UElement({((-1, 0),): 2, ((-2, 1),): 4})
    w = UElement({((-1, 0),): 1, ((-2, 1),): 2})
    assert u.proportionality(w) == 2
    assert UElement.zero().proportionality(w) == 0
    assert UElement.word([(-1, 0)]).proportionality(w) is None
    with pytest.raises(ValueError):
        w.proportionality(UElement.zero())


def test_word_weight():
    model = build_symplectic_model(2)
    word = (letter_of(loop("1 2_", -2, 2), model), letter_of(loop("1 1", -1, 2), model))
    weight = word_weight(word, model)
    assert weight.eps == (3, -1)
    assert weight.delta == -3


def test_module_axiom_sampled():
    module = VacuumModule(build_symplectic_model(1), level=2, truncation=6)
    assert check_module_axiom(module, random.Random(7), samples=200).passed


def test_shift_word_kills_vacuum():
    module = VacuumModule(build_symplectic_model(4), 2, truncation=3)
    t_word = [(shift_generator(1, 2), 3), (shift_generator(2, 2), 1)]
    assert not adjoint_word_action(t_word, ModuleVector.vacuum(), module)
    word = ModuleVector.word((letter_of(loop("1 1", -1, 4), module.model),))
    assert adjoint_word_action([], word, module) == word
