"""
Color-Shift Derivations

Inner derivations T_a = ad(a(2l-a+1)) of C_{2l} acting on the enveloping
algebra, the bookkeeping m_a_(pi), M(pi), t(pi), T(pi) of a colored
partition, the color shift pi -> pi' onto the grade-one array, and checkers
for the action of T_a and its powers.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from core.lie_algebra import (
    ColorLabel, Coefficient, IndexLabel, LieAlgebraModel, LoopElement,
    build_symplectic_model, coefficient_str, embed_subalgebra,
)
from core.partitions import (
    ArrayKind, ColoredPartition, FULL, Generator, is_admissible, sort_monomial,
)
from core.pbw import (
    EnvelopingAlgebra, Terms, UElement, VacuumModule, Word,
    add_terms, adjoint_word_action, letter_of, monomial_vector,
)
from core.reports import IdentityCheck, VerificationReport

logger = logging.getLogger(__name__)

DIAGONAL = "diagonal"
COLUMN = "column"
ROW = "row"
POWER_CASES = (DIAGONAL, COLUMN, ROW)


def shifted_index(a: int, ell: int) -> int:
    """a_ is shifted to 2l-a+1."""
    return 2 * ell - a + 1


def shift_generator(a: int, ell: int) -> ColorLabel:
    """t_a = a(2l-a+1) in C_{2l}."""
    return ColorLabel(IndexLabel(a), IndexLabel(shifted_index(a, ell)), 2 * ell)


def color_from_labels(x: IndexLabel, y: IndexLabel, rank: int) -> ColorLabel:
    """The color with index pair {x, y}, canonically ordered."""
    if x.position(rank) > y.position(rank):
        x, y = y, x
    return ColorLabel(x, y, rank)


def barred_count(color: ColorLabel, a: int) -> int:
    """Occurrences of a_ in the color; a_a_ counts twice."""
    return sum(1 for label in (color.first, color.second) if label.barred and label.value == a)


@dataclass(frozen=True)
class ShiftPlan:
    """m_a_(pi) for a = 1..l, M(pi) and t(pi) = t_1^{m_1_} ... t_l^{m_l_}."""

    pi: ColoredPartition
    m_underline: Tuple[int, ...]
    t_word: Tuple[Tuple[ColorLabel, int], ...]

    @property
    def bigM(self) -> int:
        return sum(self.m_underline)

    def application_order(self) -> List[Tuple[int, int]]:
        """(a, exponent) in the order T(pi) acts: a = l first."""
        return [(a, m) for a, m in reversed(list(enumerate(self.m_underline, start=1)))]


def shift_plan(pi: ColoredPartition) -> ShiftPlan:
    """
    Bookkeeping of the barred indices of pi.

    m_a_(pi) = sum_b m_{b a_} + sum_{b<a} m_{a_ b_} + 2 m_{a_ a_} + sum_{b>a} m_{b_ a_},
    summed over all t-degrees, which is the number of a_ occurrences.
    """
    if pi.kind.family != FULL:
        raise ValueError(f"shift_plan expects a FULL partition, got {pi.kind}")
    ell = pi.kind.ell
    m = [0] * ell
    for g, mult in pi.parts:
        for a in range(1, ell + 1):
            m[a - 1] += barred_count(g.color, a) * mult
    t_word = tuple((shift_generator(a, ell), m[a - 1]) for a in range(1, ell + 1))
    return ShiftPlan(pi, tuple(m), t_word)


def _shift_label(label: IndexLabel, a: int, ell: int) -> IndexLabel:
    if label.barred and label.value == a:
        return IndexLabel(shifted_index(a, ell))
    return label


def _shift_color(color: ColorLabel, a: int, ell: int) -> ColorLabel:
    return color_from_labels(_shift_label(color.first, a, ell), _shift_label(color.second, a, ell), 2 * ell)


def color_shift_stages(pi: ColoredPartition) -> List[Dict[Generator, int]]:
    """
    Generator multiplicities after T_l_, then T_{l-1}_, ..., T_1_.

    Colors are in C_{2l}; each stage relabels one barred index a_ to
    2l-a+1 and the last stage has no barred index left.
    """
    if pi.kind.family != FULL:
        raise ValueError(f"color_shift_stages expects a FULL partition, got {pi.kind}")
    ell = pi.kind.ell
    embedding = embed_subalgebra(ell)
    current = {Generator(embedding[g.color], g.degree): m for g, m in pi.parts}
    stages = []
    for a in range(ell, 0, -1):
        shifted: Dict[Generator, int] = {}
        for g, m in current.items():
            target = Generator(_shift_color(g.color, a, ell), g.degree)
            shifted[target] = shifted.get(target, 0) + m
        current = shifted
        stages.append(dict(current))
    return stages


def color_shift(pi: ColoredPartition) -> ColoredPartition:
    """
    pi -> pi' on the FS(2l) array.

    m_{ab}(pi') = m_{ab}(pi), m_{a(2l-b+1)}(pi') = m_{ab_}(pi),
    m_{(2l-a+1)(2l-b+1)}(pi') = m_{a_b_}(pi).
    """
    final = color_shift_stages(pi)[-1]
    return ColoredPartition.from_counts(final, ArrayKind.fs(pi.kind.ell))


def _factor_order_letters(pi: ColoredPartition, colors: Dict[Generator, Generator],
                          model: LieAlgebraModel) -> List[Tuple[int, int]]:
    """Letters of u(pi) in factor order with each factor replaced through colors."""
    return [letter_of(colors[g], model) for g in sort_monomial(pi)]


# ============================================================================
# DERIVATION ENGINE
# ============================================================================

class DerivationEngine:
    """
    T_a = ad(t_a) on U of the affine C_{2l}, C_l embedded label-preserving.

    Words are normal-ordered through an EnvelopingAlgebra without a level:
    T_a never creates a central term and products of negative letters never
    need one.
    """

    def __init__(self, ell: int, level: Optional[int] = None, model: Optional[LieAlgebraModel] = None):
        if ell < 1:
            raise ValueError(f"ell must be positive, got {ell}")
        if model is not None and model.rank != 2 * ell:
            raise ValueError(f"model of rank {model.rank} cannot host C_{ell} inside C_{2 * ell}")
        self.ell = ell
        self.model = model or build_symplectic_model(2 * ell)
        self.algebra = EnvelopingAlgebra(self.model, level)
        self.embedding = embed_subalgebra(ell)
        self._derivative_cache: Dict[Tuple[int, Word], Terms] = {}

    def t_generator(self, a: int) -> ColorLabel:
        if not 1 <= a <= self.ell:
            raise ValueError(f"a must lie in 1..{self.ell}, got {a}")
        return shift_generator(a, self.ell)

    def lift(self, color: ColorLabel) -> ColorLabel:
        """Rank-l colors go through the embedding, rank-2l colors stay."""
        if color.rank == self.ell:
            return self.embedding[color]
        return color

    def element(self, factors: Sequence[LoopElement]) -> UElement:
        return self.algebra.element(LoopElement(self.lift(f.color), f.degree) for f in factors)

    def monomial(self, pi: ColoredPartition) -> UElement:
        """u(pi) in U of the affine C_{2l}."""
        return self.element(sort_monomial(pi))

    def _bracket_letter(self, a: int, letter: Tuple[int, int]) -> Dict[Tuple[int, int], Coefficient]:
        t = self.model.index[self.t_generator(a)]
        degree, i = letter
        return {(degree, z): c for z, c in self.model.bracket_indices(t, i)}

    def _derive_word(self, a: int, word: Word) -> Terms:
        key = (a, word)
        cached = self._derivative_cache.get(key)
        if cached is not None:
            return cached
        result: Terms = {}
        for pos, letter in enumerate(word):
            image = self._bracket_letter(a, letter)
            if not image:
                continue
            suffix = {word[pos + 1:]: 1}
            for z, c in image.items():
                middle = self.algebra.multiply_letters((z,), suffix)
                add_terms(result, self.algebra.multiply_letters(word[:pos], middle), c)
        self._derivative_cache[key] = result
        return result

    def apply_T(self, a: int, u: UElement, times: int = 1) -> UElement:
        """
        ad(t_a)^times u by the Leibniz rule on PBW words.

        Args:
            a: 1 <= a <= l
            u: Element of U of the affine C_{2l}
            times: Number of applications
        """
        if times < 0:
            raise ValueError(f"times must be nonnegative, got {times}")
        self.t_generator(a)
        current = u.terms
        for _ in range(times):
            nxt: Terms = {}
            for word, c in current.items():
                add_terms(nxt, self._derive_word(a, word), c)
            current = nxt
            if not current:
                break
        return UElement(current)

    def apply_T_commutative(self, a: int, factors: Sequence[LoopElement], times: int) -> Dict[Tuple, Coefficient]:
        """
        ad(t_a)^times on the commutative image of a product of loop elements.

        Returns:
            Map from sorted factor tuples (monomials of the symmetric algebra) to coefficients
        """
        current: Dict[Tuple, Coefficient] = {
            tuple(sorted(letter_of(LoopElement(self.lift(f.color), f.degree), self.model) for f in factors)): 1
        }
        for _ in range(times):
            nxt: Dict[Tuple, Coefficient] = {}
            for monomial, c in current.items():
                counts = Counter(monomial)
                for letter, e in counts.items():
                    rest = list(monomial)
                    rest.remove(letter)
                    for z, value in self._bracket_letter(a, letter).items():
                        key = tuple(sorted(rest + [z]))
                        total = nxt.get(key, 0) + c * e * value
                        if total:
                            nxt[key] = total
                        else:
                            nxt.pop(key, None)
            current = nxt
        return current

    def nilpotency_order(self, a: int, color: ColorLabel) -> int:
        """Smallest r with ad(t_a)^r color = 0 in the finite algebra."""
        t = self.model.index[self.t_generator(a)]
        vector: Dict[int, Coefficient] = {self.model.index[self.lift(color)]: 1}
        order = 0
        while vector:
            nxt: Dict[int, Coefficient] = {}
            for i, c in vector.items():
                for z, value in self.model.bracket_indices(t, i):
                    nxt[z] = nxt.get(z, 0) + c * value
            vector = {z: v for z, v in nxt.items() if v}
            order += 1
            if order > 2 * self.model.dim:
                raise ArithmeticError(f"ad(t_{a}) is not nilpotent on {color}")
        return order

    # ------------------------------------------------------------------
    # Checks on single generators
    # ------------------------------------------------------------------

    def _check(self, name: str, a: int, color: ColorLabel, n: int, times: int,
               target: Optional[ColorLabel]) -> IdentityCheck:
        source = LoopElement(self.lift(color), n)
        image = self.apply_T(a, self.element([source]), times)
        inputs = f"l={self.ell} a={a} x={source} T^{times}"
        if target is None:
            return IdentityCheck(name, inputs, "0", "0" if not image else "nonzero", not image)
        expected = self.element([LoopElement(target, n)])
        scalar = image.proportionality(expected)
        passed = scalar is not None and scalar != 0
        shown = coefficient_str(scalar) if scalar is not None else "none"
        return IdentityCheck(name, inputs, f"Q*{LoopElement(target, n)}", shown, passed)

    def verify_lemma_single(self, a: int, n: int = -1) -> VerificationReport:
        """
        Action of T_a on the generators of C_l at t-degree n.

        T_a(a_b_) ~ (2l-a+1)b_ for b <= a, T_a(c a_) ~ c(2l-a+1) for every
        c above a_, squares vanish off the a_a_ diagonal, T_a^3(a_a_) = 0 and
        generators free of a_ are killed by T_a^2.
        """
        ell = self.ell
        rank = 2 * ell
        shifted = IndexLabel(shifted_index(a, ell))
        a_bar = IndexLabel(a, True)
        checks = []

        for b in range(1, a + 1):
            color = ColorLabel(a_bar, IndexLabel(b, True), ell)
            target = color_from_labels(shifted, IndexLabel(b, True), rank)
            checks.append(self._check("shift a_b_", a, color, n, 1, target))
            if b < a:
                checks.append(self._check("square kills a_b_", a, color, n, 2, None))
        diagonal = ColorLabel(a_bar, a_bar, ell)
        checks.append(self._check("square of a_a_", a, diagonal, n, 2, ColorLabel(shifted, shifted, rank)))
        checks.append(self._check("cube kills a_a_", a, diagonal, n, 3, None))

        for color in self.row_colors(a):
            other = color.first
            checks.append(self._check("shift c a_", a, color, n, 1, color_from_labels(other, shifted, rank)))
            checks.append(self._check("square kills c a_", a, color, n, 2, None))

        for color in build_symplectic_model(ell).basis:
            if barred_count(color, a) == 0:
                checks.append(self._check("square kills bc", a, color, n, 2, None))

        return VerificationReport(f"T_{a} on generators, l={ell}, n={n}", checks)

    def row_colors(self, a: int) -> List[ColorLabel]:
        """Colors c a_ of C_l with c above a_: unbarred c, and b_ for b > a."""
        ell = self.ell
        a_bar = IndexLabel(a, True)
        colors = [ColorLabel(IndexLabel(c), a_bar, ell) for c in range(1, ell + 1)]
        colors += [ColorLabel(IndexLabel(b, True), a_bar, ell) for b in range(a + 1, ell + 1)]
        return colors

    def column_colors(self, a: int) -> List[ColorLabel]:
        """Colors a_ b_ of C_l with b < a."""
        return [ColorLabel(IndexLabel(a, True), IndexLabel(b, True), self.ell) for b in range(1, a)]

    # ------------------------------------------------------------------
    # Checks on powers
    # ------------------------------------------------------------------

    def _power_check(self, name: str, a: int, color: ColorLabel, m: int, n: int, times: int,
                     target: Optional[ColorLabel]) -> IdentityCheck:
        factors = [LoopElement(color, n)] * m
        image = self.apply_T_commutative(a, factors, times)
        inputs = f"l={self.ell} a={a} x=({LoopElement(color, n)})^{m} T^{times}"
        if target is None:
            return IdentityCheck(name, inputs, "0", "0" if not image else "nonzero", not image)
        expected = tuple([letter_of(LoopElement(target, n), self.model)] * m)
        passed = set(image) == {expected} and image[expected] != 0
        scalar = coefficient_str(image[expected]) if expected in image else "0"
        return IdentityCheck(name, inputs, f"Q*({LoopElement(target, n)})^{m}", scalar, passed)

    def verify_lemma_powers(self, a: int, m: int, case: str, n: int = -1) -> VerificationReport:
        """
        Powers of T_a on pure powers, in the commutative image.

        diagonal: T^{2m}(a_a_)^m ~ ((2l-a+1)(2l-a+1))^m and T^{2m+1} kills it;
        column:   T^m (a_b_)^m ~ ((2l-a+1)b_)^m for b < a and T^{m+1} kills it;
        row:      T^m (c a_)^m ~ (c(2l-a+1))^m and T^{m+1} kills it.
        """
        if m < 1:
            raise ValueError(f"m must be positive, got {m}")
        if case not in POWER_CASES:
            raise ValueError(f"case must be one of {POWER_CASES}, got {case!r}")
        rank = 2 * self.ell
        shifted = IndexLabel(shifted_index(a, self.ell))
        checks = []

        if case == DIAGONAL:
            color = ColorLabel(IndexLabel(a, True), IndexLabel(a, True), self.ell)
            checks.append(self._power_check("power shift a_a_", a, color, m, n, 2 * m,
                                            ColorLabel(shifted, shifted, rank)))
            checks.append(self._power_check("power kills a_a_", a, color, m, n, 2 * m + 1, None))
        else:
            colors = self.column_colors(a) if case == COLUMN else self.row_colors(a)
            for color in colors:
                other = color.second if case == COLUMN else color.first
                target = color_from_labels(other, shifted, rank)
                checks.append(self._power_check(f"power shift {case}", a, color, m, n, m, target))
                checks.append(self._power_check(f"power kills {case}", a, color, m, n, m + 1, None))

        return VerificationReport(f"T_{a} powers, l={self.ell}, m={m}, case={case}", checks)

    # ------------------------------------------------------------------
    # End to end
    # ------------------------------------------------------------------

    def apply_plan(self, plan: ShiftPlan, u: UElement) -> List[UElement]:
        """Elements after each stage of T(pi) (a = l first)."""
        results = []
        for a, exponent in plan.application_order():
            u = self.apply_T(a, u, exponent)
            results.append(u)
        return results

    def verify_color_shift_end_to_end(self, pi: ColoredPartition, level: int,
                                      others: Sequence[ColoredPartition] = ()) -> VerificationReport:
        """
        T(pi) u(pi) = c w(pi') with c nonzero, stage by stage and in M(kLambda_0).

        Each stage is compared with the product of the relabeled factors in
        the original factor order; the last stage with the sorted monomial of
        color_shift(pi). For every other partition with a different t-word
        and M not above M(pi), T(pi) must kill its monomial.
        """
        plan = shift_plan(pi)
        label = f"l={self.ell} k={level} pi={pi}"
        checks = []

        u = self.monomial(pi)
        stages = color_shift_stages(pi)
        results = self.apply_plan(plan, u)
        factors = sort_monomial(pi)
        current = {g: Generator(self.lift(g.color), g.degree) for g in factors}
        for (a, exponent), stage, result in zip(plan.application_order(), stages, results):
            current = {g: Generator(_shift_color(h.color, a, self.ell), h.degree) for g, h in current.items()}
            letters = _factor_order_letters(pi, current, self.model)
            expected = UElement(self.algebra.multiply_letters(letters, {(): 1}))
            scalar = result.proportionality(expected)
            relabeled = Counter(current[g] for g in factors) == Counter(stage)
            checks.append(IdentityCheck(
                "stage", f"{label} a={a} exponent={exponent}", "Q*stage product",
                coefficient_str(scalar) if scalar is not None else "none",
                relabeled and scalar is not None and scalar != 0,
            ))

        final = results[-1] if results else u
        shifted = color_shift(pi)
        w = self.algebra.element(sort_monomial(shifted))
        c = final.proportionality(w)
        checks.append(IdentityCheck(
            "T(pi)u(pi)", label, f"Q*w({shifted})",
            coefficient_str(c) if c is not None else "none", c is not None and c != 0,
        ))

        if pi.degree > 0 and c:
            module = VacuumModule(self.model, level, pi.degree)
            lhs = adjoint_word_action(plan.t_word, monomial_vector(
                [LoopElement(self.lift(g.color), g.degree) for g in factors], module), module)
            rhs = c * monomial_vector(sort_monomial(shifted), module)
            checks.append(IdentityCheck(
                "t(pi)u(pi)v", label, f"{coefficient_str(c)}*w({shifted})v",
                coefficient_str(c), lhs == rhs,
            ))

        for other in others:
            other_plan = shift_plan(other)
            if other_plan.m_underline == plan.m_underline or other_plan.bigM > plan.bigM:
                continue
            killed = self.apply_plan(plan, self.monomial(other))
            image = killed[-1] if killed else self.monomial(other)
            checks.append(IdentityCheck(
                "selection", f"{label} other={other}", "0",
                "0" if not image else "nonzero", not image,
            ))

        return VerificationReport(f"color shift, {label}", checks)

    def nilpotency_table(self, a: int) -> List[Tuple[ColorLabel, int]]:
        """(generator, order) for every basis color of C_{2l}."""
        return [(color, self.nilpotency_order(a, color)) for color in self.model.basis]


@dataclass
class TraceRound:
    bigM: int
    m_underline: Tuple[int, ...]
    partitions: List[ColoredPartition]
    images: List[ColoredPartition]
    distinct: bool
    admissible: bool

    @property
    def passed(self) -> bool:
        return self.distinct and self.admissible


@dataclass
class IndependenceTrace:
    rounds: List[TraceRound] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rounds)


def independence_trace(partitions: Sequence[ColoredPartition], level: int) -> IndependenceTrace:
    """
    Replay the elimination order of the independence argument.

    Repeatedly take the partitions with the largest M among those left,
    grouped by their t-word; within a group the color-shifted images must be
    distinct and admissible on the FS array.
    """
    remaining = list(partitions)
    trace = IndependenceTrace()
    while remaining:
        plans = {id(pi): shift_plan(pi) for pi in remaining}
        top = max(plans[id(pi)].bigM for pi in remaining)
        leader = min(
            (pi for pi in remaining if plans[id(pi)].bigM == top),
            key=lambda pi: plans[id(pi)].m_underline,
        )
        m_underline = plans[id(leader)].m_underline
        group = [pi for pi in remaining if plans[id(pi)].m_underline == m_underline]
        images = [color_shift(pi) for pi in group]
        trace.rounds.append(TraceRound(
            bigM=top,
            m_underline=m_underline,
            partitions=group,
            images=images,
            distinct=len(set(images)) == len(images),
            admissible=all(is_admissible(image, level) for image in images),
        ))
        remaining = [pi for pi in remaining if plans[id(pi)].m_underline != m_underline]
    return trace
