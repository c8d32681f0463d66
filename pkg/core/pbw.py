"""
PBW Engine

Normal ordering in the enveloping algebra of the affine algebra (at a fixed
level) and in the vacuum generalized Verma module M(kLambda_0), truncated at
a t-degree N. Letters are (t-degree, basis index) pairs, so plain tuple
comparison is the PBW order: degree first, then the color order of the model.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from core.errors import TruncationError
from core.lie_algebra import Coefficient, LieAlgebraModel, LoopElement, WeightVector, exact

logger = logging.getLogger(__name__)

Letter = Tuple[int, int]
Word = Tuple[Letter, ...]
Terms = Dict[Word, Coefficient]


def add_terms(into: Terms, terms: Mapping[Word, Coefficient], scale: Coefficient = 1):
    for word, c in terms.items():
        value = into.get(word, 0) + scale * c
        if value:
            into[word] = value
        else:
            into.pop(word, None)


class WordCombination:
    """Immutable finite combination of PBW words with exact coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Word, Coefficient]] = None):
        self._terms: Terms = {tuple(w): exact(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, word: Sequence[Letter], coefficient: Coefficient = 1):
        return cls({tuple(word): coefficient})

    @classmethod
    def zero(cls):
        return cls()

    @property
    def terms(self) -> Terms:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def words(self) -> List[Word]:
        return sorted(self._terms)

    def coefficient(self, word: Sequence[Letter]) -> Coefficient:
        return self._terms.get(tuple(word), 0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other):
        terms = dict(self._terms)
        add_terms(terms, other._terms)
        return type(self)(terms)

    def __sub__(self, other):
        terms = dict(self._terms)
        add_terms(terms, other._terms, -1)
        return type(self)(terms)

    def __neg__(self):
        return type(self)({w: -c for w, c in self._terms.items()})

    def __rmul__(self, scalar: Coefficient):
        return type(self)({w: scalar * c for w, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def proportionality(self, other) -> Optional[Coefficient]:
        """c with self == c * other, or None if there is no such c (other must be nonzero)."""
        if not other:
            raise ValueError("proportionality to the zero element is undefined")
        if set(self._terms) != set(other._terms):
            return 0 if not self._terms else None
        word = min(other._terms)
        c = Fraction(self._terms[word]) / other._terms[word]
        if all(self._terms[w] == c * other._terms[w] for w in other._terms):
            return exact(c)
        return None

    def __repr__(self) -> str:
        return f"{type(self).__name__}({len(self._terms)} terms)"


class UElement(WordCombination):
    """Element of U(affine algebra) in the PBW basis; letters of any t-degree."""

    __slots__ = ()


class ModuleVector(WordCombination):
    """Element of M(kLambda_0): PBW words in negative-degree letters applied to v (the empty word)."""

    __slots__ = ()

    @classmethod
    def vacuum(cls) -> "ModuleVector":
        return cls({(): 1})


def letter_of(element: LoopElement, model: LieAlgebraModel) -> Letter:
    return element.degree, model.index[element.color]


def element_of(letter: Letter, model: LieAlgebraModel) -> LoopElement:
    return LoopElement(model.basis[letter[1]], letter[0])


def word_degree(word: Sequence[Letter]) -> int:
    return sum(d for d, _ in word)


def word_weight(word: Sequence[Letter], model: LieAlgebraModel) -> WeightVector:
    """Finite weight and delta coefficient of a word (Lambda_0 part excluded)."""
    eps = [0] * model.rank
    for _, i in word:
        for a, x in enumerate(model.weights[i]):
            eps[a] += x
    return WeightVector(tuple(eps), word_degree(word))


def word_str(word: Sequence[Letter], model: LieAlgebraModel) -> str:
    return " ".join(f"[{element_of(letter, model)}]" for letter in word) or "1"


def pbw_words(dim: int, n: int) -> Iterator[Word]:
    """
    All PBW words x_1 <= ... <= x_s of negative letters with total degree -n.

    The count is the dimension of the degree-n slice of M(kLambda_0).
    """
    letters = [(d, i) for d in range(-n, 0) for i in range(dim)]

    def extend(start: int, remaining: int, prefix: List[Letter]) -> Iterator[Word]:
        if remaining == 0:
            yield tuple(prefix)
            return
        for idx in range(start, len(letters)):
            letter = letters[idx]
            if -letter[0] > remaining:
                continue
            prefix.append(letter)
            yield from extend(idx, remaining + letter[0], prefix)
            prefix.pop()

    yield from extend(0, n, [])


# ============================================================================
# NORMAL ORDERING
# ============================================================================

class NormalOrdering:
    """
    Straightening of letter * PBW word into the PBW basis.

    x * (y w) = y (x w) + [x, y] w when x > y, where [x, y] also carries the
    central term i <x, y> k for x = a(i), y = b(-i). Results are memoized per
    (letter, word).
    """

    def __init__(self, model: LieAlgebraModel, level: Optional[int] = None):
        self.model = model
        self.level = level
        self._cache: Dict[Tuple[Letter, Word], Terms] = {}

    def _empty(self, letter: Letter) -> Terms:
        raise NotImplementedError

    def bracket_letters(self, x: Letter, y: Letter) -> Tuple[Dict[Letter, Coefficient], Coefficient]:
        i, a = x
        j, b = y
        combination = {(i + j, z): c for z, c in self.model.bracket_indices(a, b)}
        central = 0
        if i + j == 0 and i:
            value = self.model.form_indices(a, b)
            if value:
                if self.level is None:
                    raise ValueError("central terms need a level; construct the algebra with level=k")
                central = i * value * self.level
        return combination, central

    def left_multiply(self, letter: Letter, word: Word) -> Terms:
        key = (letter, word)
        cached = self._cache.get(key)
        if cached is not None:
            return cached

        if not word:
            result = self._empty(letter)
        elif letter <= word[0]:
            result = {(letter,) + word: 1}
        else:
            head, rest = word[0], word[1:]
            result = {}
            for w, c in self.left_multiply(letter, rest).items():
                add_terms(result, self.left_multiply(head, w), c)
            combination, central = self.bracket_letters(letter, head)
            for z, c in combination.items():
                add_terms(result, self.left_multiply(z, rest), c)
            if central:
                add_terms(result, {rest: central})

        self._cache[key] = result
        return result

    def multiply_letters(self, letters: Sequence[Letter], terms: Mapping[Word, Coefficient]) -> Terms:
        """letters[0] * ... * letters[-1] * terms, applied right to left."""
        current: Terms = dict(terms)
        for letter in reversed(letters):
            nxt: Terms = {}
            for w, c in current.items():
                add_terms(nxt, self.left_multiply(letter, w), c)
            current = nxt
        return current


class EnvelopingAlgebra(NormalOrdering):
    """U of the affine algebra with c acting by the level (when one is given)."""

    def _empty(self, letter: Letter) -> Terms:
        return {(letter,): 1}

    def element(self, elements: Iterable[LoopElement], coefficient: Coefficient = 1) -> UElement:
        """Normal-ordered product of loop elements."""
        letters = [letter_of(e, self.model) for e in elements]
        return UElement(self.multiply_letters(letters, {(): coefficient}))

    def product(self, u: UElement, w: UElement) -> UElement:
        result: Terms = {}
        for word, c in u.items():
            add_terms(result, self.multiply_letters(word, w.terms), c)
        return UElement(result)

    def commutator(self, u: UElement, w: UElement) -> UElement:
        return self.product(u, w) - self.product(w, u)


class VacuumModule(NormalOrdering):
    """
    M(kLambda_0) = U(g tensor t^-1 C[t^-1]) v with g tensor C[t] v = 0 and c v = k v.

    Every slice of degree above the truncation is out of range.
    """

    def __init__(self, model: LieAlgebraModel, level: int, truncation: int):
        if level < 1:
            raise ValueError(f"level must be positive, got {level}")
        super().__init__(model, level)
        self.truncation = truncation

    def _empty(self, letter: Letter) -> Terms:
        return {(letter,): 1} if letter[0] < 0 else {}

    def _check(self, degree: int):
        if -degree > self.truncation:
            raise TruncationError(-degree, self.truncation)

    def act(self, element: LoopElement, vector: ModuleVector) -> ModuleVector:
        """element . vector in PBW coordinates."""
        letter = letter_of(element, self.model)
        result: Terms = {}
        for word, c in vector.items():
            self._check(letter[0] + word_degree(word))
            add_terms(result, self.left_multiply(letter, word), c)
        return ModuleVector(result)

    def act_central(self, vector: ModuleVector) -> ModuleVector:
        return self.level * vector

    def apply_word(self, letters: Sequence[Letter], vector: ModuleVector) -> ModuleVector:
        result: Terms = {}
        for word, c in vector.items():
            self._check(word_degree(letters) + word_degree(word))
            add_terms(result, self.multiply_letters(letters, {word: 1}), c)
        return ModuleVector(result)

    def apply(self, u: UElement, vector: ModuleVector) -> ModuleVector:
        result = ModuleVector.zero()
        for word, c in u.items():
            result = result + c * self.apply_word(word, vector)
        return result


def act(element: LoopElement, vector: ModuleVector, module: VacuumModule) -> ModuleVector:
    return module.act(element, vector)


def monomial_vector(generators: Sequence[LoopElement], module: VacuumModule) -> ModuleVector:
    """
    u(pi) v for the sorted factors of a colored partition.

    Acting right to left on v. For a sorted word the result is the word
    itself with coefficient 1; anything else means the factors were not in
    PBW order.
    """
    letters = [letter_of(g, module.model) for g in generators]
    vector = ModuleVector.vacuum()
    for letter in reversed(letters):
        vector = module.act(element_of(letter, module.model), vector)
    if vector != ModuleVector.word(letters):
        raise ArithmeticError(f"monomial {word_str(letters, module.model)} is not in PBW order")
    return vector


def adjoint_word_action(t_word: Sequence[Tuple[object, int]], vector: ModuleVector,
                        module: VacuumModule) -> ModuleVector:
    """
    Apply t_1^{m_1} ... t_l^{m_l} to a vector, rightmost factor first.

    Args:
        t_word: (degree-0 color, exponent) pairs in product order
        vector: Vector of M(kLambda_0)
        module: Vacuum module of the rank the colors live in
    """
    for color, exponent in reversed(list(t_word)):
        element = LoopElement(color, 0)
        for _ in range(exponent):
            vector = module.act(element, vector)
    return vector
