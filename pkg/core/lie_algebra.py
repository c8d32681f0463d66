"""
Symplectic Lie Algebra Model

Exact, table-driven model of sp_{2m} (type C_m): index and color labels,
weights, structure constants from the 2m x 2m matrix realization, the
normalized trace form, the minuscule-coweight grading, the affine bracket and
the embedding C_l inside C_{2l}.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from core.linalg import inverse_matrix

logger = logging.getLogger(__name__)

UNDERLINE = "\u0332"

Coefficient = Union[int, Fraction]


def exact(value) -> Coefficient:
    """Return an int when the rational value is integral, otherwise a Fraction."""
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else value


def coefficient_str(value: Coefficient) -> str:
    return str(exact(value))


@dataclass(frozen=True)
class IndexLabel:
    """One of the 2m labels 1, ..., m, m_, ..., 1_ ordered 1 > 2 > ... > m > m_ > ... > 1_."""

    value: int
    barred: bool = False

    def position(self, rank: int) -> int:
        """1-based position in the order, 1 for the largest label and 2m for 1_."""
        return 2 * rank + 1 - self.value if self.barred else self.value

    @classmethod
    def from_position(cls, position: int, rank: int) -> "IndexLabel":
        if not 1 <= position <= 2 * rank:
            raise ValueError(f"position {position} outside 1..{2 * rank}")
        if position <= rank:
            return cls(position)
        return cls(2 * rank + 1 - position, True)

    def succeeds(self, other: "IndexLabel", rank: int) -> bool:
        """True if self > other in the label order."""
        return self.position(rank) < other.position(rank)

    @classmethod
    def parse(cls, token: str) -> "IndexLabel":
        token = token.strip()
        barred = token.endswith(UNDERLINE) or token.endswith("_")
        digits = token.rstrip(UNDERLINE + "_")
        if not digits.isdigit():
            raise ValueError(f"Invalid index label: {token!r}")
        return cls(int(digits), barred)

    def __str__(self) -> str:
        return f"{self.value}{UNDERLINE if self.barred else ''}"


@dataclass(frozen=True)
class WeightVector:
    """Affine weight: eps-coordinates, delta coefficient and Lambda_0 coefficient (level)."""

    eps: Tuple[int, ...]
    delta: int = 0
    level: int = 0

    @classmethod
    def zero(cls, rank: int) -> "WeightVector":
        return cls((0,) * rank)

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(
            tuple(a + b for a, b in zip(self.eps, other.eps)),
            self.delta + other.delta,
            self.level + other.level,
        )

    def __neg__(self) -> "WeightVector":
        return WeightVector(tuple(-a for a in self.eps), -self.delta, -self.level)

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return self + (-other)

    def pair(self, other: "WeightVector") -> Fraction:
        """
        Normalized invariant form on weights.

        (eps_a|eps_b) = delta_ab / 2 so that the highest root 2 eps_1 has
        square length 2; (Lambda_0|delta) = 1, (Lambda_0|Lambda_0) = (delta|delta) = 0.
        """
        finite = Fraction(sum(a * b for a, b in zip(self.eps, other.eps)), 2)
        return finite + self.level * other.delta + self.delta * other.level

    def __str__(self) -> str:
        terms = [f"{c:+d}e{i + 1}" for i, c in enumerate(self.eps) if c]
        if self.delta:
            terms.append(f"{self.delta:+d}d")
        if self.level:
            terms.append(f"{self.level:+d}L0")
        return "".join(terms) or "0"


def affine_simple_root(rank: int) -> WeightVector:
    """alpha_0 = -theta + delta."""
    return WeightVector((-2,) + (0,) * (rank - 1), delta=1)


@dataclass(frozen=True)
class ColorLabel:
    """
    Basis element of sp_{2m} named by an ordered index pair.

    Shapes: ab (a <= b), a_b_ (a >= b), ab_ (a != b) and aa_ = h_a. In positions
    (see IndexLabel.position) a color is a pair p <= q in 1..2m.
    """

    first: IndexLabel
    second: IndexLabel
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        for label in (self.first, self.second):
            if not 1 <= label.value <= self.rank:
                raise ValueError(f"index {label} outside 1..{self.rank}")
        p, q = self.positions
        if p > q:
            raise ValueError(f"Color {self} is not in canonical order")

    @property
    def positions(self) -> Tuple[int, int]:
        return self.first.position(self.rank), self.second.position(self.rank)

    @classmethod
    def from_positions(cls, p: int, q: int, rank: int) -> "ColorLabel":
        return cls(IndexLabel.from_position(p, rank), IndexLabel.from_position(q, rank), rank)

    @classmethod
    def of(cls, a: int, a_barred: bool, b: int, b_barred: bool, rank: int) -> "ColorLabel":
        return cls(IndexLabel(a, a_barred), IndexLabel(b, b_barred), rank)

    @classmethod
    def cartan(cls, a: int, rank: int) -> "ColorLabel":
        return cls(IndexLabel(a), IndexLabel(a, True), rank)

    @property
    def is_cartan(self) -> bool:
        return (not self.first.barred and self.second.barred
                and self.first.value == self.second.value)

    @property
    def shape(self) -> str:
        if self.is_cartan:
            return "h"
        if not self.second.barred:
            return "ab"
        if self.first.barred:
            return "a_b_"
        return "ab_"

    @property
    def sort_key(self) -> Tuple[int, int]:
        """Ascending key for the order on colors (lexicographic, 1_ smallest)."""
        p, q = self.positions
        return -p, -q

    def weight(self) -> WeightVector:
        eps = [0] * self.rank
        for label in (self.first, self.second):
            eps[label.value - 1] += -1 if label.barred else 1
        return WeightVector(tuple(eps))

    @classmethod
    def parse(cls, text: str, rank: int) -> "ColorLabel":
        tokens = text.split()
        if len(tokens) != 2:
            raise ValueError(f"Invalid color label: {text!r}")
        return cls(IndexLabel.parse(tokens[0]), IndexLabel.parse(tokens[1]), rank)

    def __str__(self) -> str:
        return f"{self.first} {self.second}"


@dataclass(frozen=True)
class LoopElement:
    """x(n) = x tensor t^n for a color x and any integer t-degree n."""

    color: ColorLabel
    degree: int

    def __str__(self) -> str:
        return f"{self.color}({self.degree})"


def weight_of(color: ColorLabel) -> WeightVector:
    """Finite weight of a color: eps_a + eps_b, eps_a - eps_b, -eps_a - eps_b, or 0 for h_a."""
    return color.weight()


def colors_of_rank(rank: int) -> List[ColorLabel]:
    """All m(2m+1) colors of rank m, in ascending order."""
    colors = [
        ColorLabel.from_positions(p, q, rank)
        for p in range(1, 2 * rank + 1)
        for q in range(p, 2 * rank + 1)
    ]
    return sorted(colors, key=lambda c: c.sort_key)


# ============================================================================
# MATRIX REALIZATION
# ============================================================================

def _sign(position: int, rank: int) -> int:
    return 1 if position <= rank else -1


def matrix_of(color: ColorLabel) -> np.ndarray:
    """
    Matrix of a color in the defining representation of sp_{2m}.

    Rows and columns are indexed by positions; the symplectic form pairs
    position i with 2m+1-i. Root vectors are E_{p,q'} + s E_{q,p'} with
    s = sign(p) sign(q), the Cartan element h_a is E_aa - E_{a'a'}.
    """
    m = color.rank
    size = 2 * m
    M = np.zeros((size, size), dtype=np.int64)
    p, q = color.positions
    if q == size + 1 - p:
        M[p - 1, p - 1] = 1
        M[q - 1, q - 1] = -1
    elif p == q:
        M[p - 1, size - p] = 1
    else:
        M[p - 1, size - q] = 1
        M[q - 1, size - p] = _sign(p, m) * _sign(q, m)
    return M


def _coordinates(M: np.ndarray, basis: Sequence[ColorLabel], rank: int) -> Tuple[Tuple[int, Coefficient], ...]:
    size = 2 * rank
    terms = []
    for k, color in enumerate(basis):
        p, q = color.positions
        entry = M[p - 1, p - 1] if color.is_cartan else M[p - 1, size - q]
        if entry:
            terms.append((k, int(entry)))
    return tuple(terms)


# ============================================================================
# MODEL
# ============================================================================

class LieAlgebraModel:
    """
    Immutable structure-constant model of sp_{2m}.

    Basis elements are stored in ascending color order, so the index of a
    color is also its rank in the PBW order within a fixed t-degree.
    """

    def __init__(self, rank: int, basis: Sequence[ColorLabel],
                 brackets: Sequence[Sequence[Tuple[Tuple[int, Coefficient], ...]]],
                 form: Sequence[Sequence[Coefficient]]):
        self.rank = rank
        self.basis: Tuple[ColorLabel, ...] = tuple(basis)
        self.index: Dict[ColorLabel, int] = {c: i for i, c in enumerate(self.basis)}
        self._brackets = tuple(tuple(row) for row in brackets)
        self._form = tuple(tuple(row) for row in form)
        self.weights: Tuple[Tuple[int, ...], ...] = tuple(c.weight().eps for c in self.basis)
        self.grades: Tuple[int, ...] = tuple(self._grade_of(c) for c in self.basis)
        self.theta = ColorLabel.of(1, False, 1, False, rank)
        self.cartan_indices: Tuple[int, ...] = tuple(
            self.index[ColorLabel.cartan(a, rank)] for a in range(1, rank + 1)
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    @staticmethod
    def _grade_of(color: ColorLabel) -> int:
        return (int(not color.first.barred) + int(not color.second.barred)) - 1

    def bracket_indices(self, i: int, j: int) -> Tuple[Tuple[int, Coefficient], ...]:
        return self._brackets[i][j]

    def bracket(self, x: ColorLabel, y: ColorLabel) -> Dict[ColorLabel, Coefficient]:
        """[x, y] as a combination of colors."""
        return {self.basis[k]: c for k, c in self._brackets[self.index[x]][self.index[y]]}

    def form_indices(self, i: int, j: int) -> Coefficient:
        return self._form[i][j]

    def form(self, x: ColorLabel, y: ColorLabel) -> Coefficient:
        return self._form[self.index[x]][self.index[y]]

    def grade(self, color: ColorLabel) -> int:
        return self.grades[self.index[color]]

    def grade_one_labels(self) -> List[ColorLabel]:
        return [c for c, g in zip(self.basis, self.grades) if g == 1]

    def gamma(self) -> List[WeightVector]:
        """Weights of the grade +1 part of the minuscule-coweight grading."""
        return [c.weight() for c in self.grade_one_labels()]

    def weight_of(self, color: ColorLabel) -> WeightVector:
        return color.weight()

    def theta_norm(self) -> Fraction:
        """<theta, theta> computed from the form restricted to the Cartan subalgebra."""
        gram = [[self._form[i][j] for j in self.cartan_indices] for i in self.cartan_indices]
        inverse = inverse_matrix(gram)
        theta = self.theta.weight().eps
        # eps_a(h_b) = delta_ab, so (lambda|mu) = lambda^T G^{-1} mu
        return sum(
            (Fraction(theta[a]) * inverse[a, b] * theta[b]
             for a in range(self.rank) for b in range(self.rank)),
            Fraction(0),
        )

    # ------------------------------------------------------------------
    # Consistency checks, each returns the offending tuples
    # ------------------------------------------------------------------

    def _combine(self, terms: Iterable[Tuple[int, Coefficient]], scale: Coefficient,
                 into: Dict[int, Coefficient]):
        for k, c in terms:
            into[k] = into.get(k, 0) + scale * c

    def _nested(self, i: int, j: int, k: int) -> Dict[int, Coefficient]:
        """[[x_i, x_j], x_k]"""
        result: Dict[int, Coefficient] = {}
        for z, c in self._brackets[i][j]:
            self._combine(self._brackets[z][k], c, result)
        return result

    def check_antisymmetry(self) -> List[Tuple[ColorLabel, ColorLabel]]:
        failures = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                forward = dict(self._brackets[i][j])
                backward = {k: -c for k, c in self._brackets[j][i]}
                if forward != backward:
                    failures.append((self.basis[i], self.basis[j]))
        return failures

    def check_jacobi(self) -> List[Tuple[ColorLabel, ColorLabel, ColorLabel]]:
        failures = []
        n = self.dim
        for i in range(n):
            for j in range(i, n):
                for k in range(j, n):
                    total: Dict[int, Coefficient] = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        for z, value in self._nested(a, b, c).items():
                            total[z] = total.get(z, 0) + value
                    if any(total.values()):
                        failures.append((self.basis[i], self.basis[j], self.basis[k]))
        return failures

    def check_form(self) -> List[Tuple[ColorLabel, ...]]:
        """Symmetry and invariance <[x,y],z> = <x,[y,z]> on all basis triples."""
        failures = []
        n = self.dim
        for i in range(n):
            for j in range(n):
                if self._form[i][j] != self._form[j][i]:
                    failures.append((self.basis[i], self.basis[j]))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = sum(c * self._form[z][k] for z, c in self._brackets[i][j])
                    right = sum(c * self._form[i][z] for z, c in self._brackets[j][k])
                    if left != right:
                        failures.append((self.basis[i], self.basis[j], self.basis[k]))
        return failures

    def check_grading(self) -> List[Tuple[ColorLabel, ColorLabel]]:
        failures = []
        for i in range(self.dim):
            for j in range(self.dim):
                expected = self.grades[i] + self.grades[j]
                for k, _ in self._brackets[i][j]:
                    if self.grades[k] != expected:
                        failures.append((self.basis[i], self.basis[j]))
                        break
        return failures

    def with_bracket_override(self, x: ColorLabel, y: ColorLabel,
                              combination: Mapping[ColorLabel, Coefficient]) -> "LieAlgebraModel":
        """Copy of the model with [x, y] (and [y, x]) replaced; used for negative controls."""
        i, j = self.index[x], self.index[y]
        forward = tuple((self.index[c], exact(v)) for c, v in combination.items() if v)
        backward = tuple((k, -v) for k, v in forward)
        rows = [list(row) for row in self._brackets]
        rows[i][j] = forward
        rows[j][i] = backward
        return LieAlgebraModel(self.rank, self.basis, rows, self._form)

    def dump(self) -> Dict[str, object]:
        """Structured description (basis, bracket triples, nonzero form entries)."""
        brackets = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                terms = self._brackets[i][j]
                if terms:
                    brackets.append({
                        "x": str(self.basis[i]),
                        "y": str(self.basis[j]),
                        "bracket": [[str(self.basis[k]), coefficient_str(c)] for k, c in terms],
                    })
        form = [
            {"x": str(self.basis[i]), "y": str(self.basis[j]), "value": coefficient_str(self._form[i][j])}
            for i in range(self.dim) for j in range(i, self.dim) if self._form[i][j]
        ]
        return {
            "rank": self.rank,
            "dimension": self.dim,
            "basis": [str(c) for c in self.basis],
            "brackets": brackets,
            "form": form,
        }


@lru_cache(maxsize=None)
def build_symplectic_model(m: int) -> LieAlgebraModel:
    """
    Build the exact model of sp_{2m} from its matrix realization.

    Args:
        m: Rank (m >= 1)

    Returns:
        LieAlgebraModel with m(2m+1) basis colors, integer structure
        constants and the trace form (which already gives <theta,theta> = 2)
    """
    if m < 1:
        raise ValueError(f"rank must be positive, got {m}")

    basis = colors_of_rank(m)
    matrices = np.stack([matrix_of(c) for c in basis])
    n = len(basis)
    logger.info(f"Building sp_{2 * m} model with {n} basis colors")

    brackets = [[()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            X, Y = matrices[i], matrices[j]
            commutator = X @ Y - Y @ X
            terms = _coordinates(commutator, basis, m)
            if terms:
                coefficients = np.array([c for _, c in terms], dtype=np.int64)
                rebuilt = np.tensordot(coefficients, matrices[[k for k, _ in terms]], axes=1)
                if not np.array_equal(rebuilt, commutator):
                    raise ArithmeticError(f"[{basis[i]}, {basis[j]}] left the symplectic algebra")
            elif commutator.any():
                raise ArithmeticError(f"[{basis[i]}, {basis[j]}] left the symplectic algebra")
            brackets[i][j] = terms

    # trace form tr(XY); sum of the elementwise product with the transpose
    form = [[int((matrices[i] * matrices[j].T).sum()) for j in range(n)] for i in range(n)]

    return LieAlgebraModel(m, basis, brackets, form)


def affine_bracket(x: LoopElement, y: LoopElement, level: int,
                   model: Optional[LieAlgebraModel] = None) -> Tuple[Dict[LoopElement, Coefficient], Coefficient]:
    """
    [x(i), y(j)] = [x, y](i+j) + i delta_{i+j,0} <x, y> c, with c acting by the level.

    Returns:
        (combination of loop elements, central scalar)
    """
    if model is None:
        model = build_symplectic_model(x.color.rank)
    i, j = x.degree, y.degree
    combination = {
        LoopElement(color, i + j): c
        for color, c in model.bracket(x.color, y.color).items()
    }
    central = i * model.form(x.color, y.color) * level if i + j == 0 else 0
    return combination, central


def embed_subalgebra(ell: int, indices: Optional[Sequence[int]] = None) -> Dict[ColorLabel, ColorLabel]:
    """
    Label-preserving embedding of the colors of C_l into C_{2l}.

    Args:
        ell: Rank l of the subalgebra
        indices: Increasing l-subset of 1..2l receiving 1..l (default 1..l)

    Returns:
        Map from rank-l colors to rank-2l colors
    """
    if ell < 1:
        raise ValueError(f"ell must be positive, got {ell}")
    if indices is None:
        indices = list(range(1, ell + 1))
    indices = list(indices)
    if len(indices) != ell or sorted(set(indices)) != indices or not all(1 <= i <= 2 * ell for i in indices):
        raise ValueError(f"indices must be an increasing {ell}-subset of 1..{2 * ell}, got {indices}")

    def image(label: IndexLabel) -> IndexLabel:
        return IndexLabel(indices[label.value - 1], label.barred)

    return {
        color: ColorLabel(image(color.first), image(color.second), 2 * ell)
        for color in colors_of_rank(ell)
    }


def check_embedding_homomorphism(ell: int, indices: Optional[Sequence[int]] = None) -> List[Tuple[ColorLabel, ColorLabel]]:
    """Pairs (x, y) of rank-l colors for which phi([x, y]) != [phi(x), phi(y)]."""
    small = build_symplectic_model(ell)
    large = build_symplectic_model(2 * ell)
    phi = embed_subalgebra(ell, indices)
    failures = []
    for x in small.basis:
        for y in small.basis:
            mapped = {phi[c]: v for c, v in small.bracket(x, y).items()}
            if mapped != large.bracket(phi[x], phi[y]):
                failures.append((x, y))
    return failures
