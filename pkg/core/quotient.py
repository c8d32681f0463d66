"""
Quotient Construction of L(kLambda_0)

The maximal submodule of M(kLambda_0) is generated by the singular vector
s = theta(-1)^{k+1} v. Its degree-(k+1) part is the g-module Y = U(g) s, and
its degree-n part is spanned by w y with y in Y and w a PBW word of degree
n-k-1. Everything is split into blocks of fixed (degree, finite weight).
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from joblib import Parallel, delayed
from tqdm import tqdm

from core.errors import ResourceCapExceeded
from core.lie_algebra import LieAlgebraModel, LoopElement, build_symplectic_model, coefficient_str
from core.linalg import EchelonBasis
from core.partitions import ColoredPartition, sort_monomial
from core.pbw import (
    ModuleVector, VacuumModule, Word, letter_of, monomial_vector, pbw_words, word_weight,
)

logger = logging.getLogger(__name__)

Weight = Tuple[int, ...]


def dominant(weight: Weight) -> Weight:
    """Representative of the signed-permutation orbit of a finite weight."""
    return tuple(sorted((abs(x) for x in weight), reverse=True))


@dataclass
class GradedSlice:
    """Degree-n slice: ambient PBW basis, relation rank and quotient dimension."""

    degree: int
    ambient_basis: Tuple[Word, ...]
    relation_rank: int
    quotient_dim: int
    weight_dims: Dict[Weight, Tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        if self.quotient_dim != len(self.ambient_basis) - self.relation_rank:
            raise ArithmeticError(f"slice {self.degree}: inconsistent dimensions")
        if self.quotient_dim < 0:
            raise ArithmeticError(f"slice {self.degree}: negative quotient dimension")

    @property
    def ambient_dim(self) -> int:
        return len(self.ambient_basis)


@dataclass
class RankResult:
    """Rank of a set of monomial vectors in L(kLambda_0) with explicit dependencies."""

    degree: int
    count: int
    rank: int
    dependencies: List[Dict[int, int]] = field(default_factory=list)

    @property
    def independent(self) -> bool:
        return self.rank == self.count

    def certificate(self, partitions: Sequence[ColoredPartition]) -> List[List[Tuple[str, str]]]:
        """Dependencies as (partition, coefficient) lists."""
        return [
            [(str(partitions[i]), coefficient_str(c)) for i, c in sorted(dep.items())]
            for dep in self.dependencies
        ]


class QuotientModule:
    """
    Truncated L(kLambda_0) for C_m^(1) as M(kLambda_0) modulo the submodule generated by s.

    Blocks are built lazily and cached; a slice of degree n only touches
    dominant weights since every slice is a finite-dimensional g-module.
    """

    def __init__(self, rank: int, level: int, truncation: int, max_slice_dim: Optional[int] = None):
        self.model: LieAlgebraModel = build_symplectic_model(rank)
        self.level = level
        self.truncation = truncation
        self.max_slice_dim = max_slice_dim
        self.module = VacuumModule(self.model, level, truncation)
        self._words: Dict[int, Dict[Weight, List[Word]]] = {}
        self._singular: Optional[Dict[Weight, List[ModuleVector]]] = None
        self._blocks: Dict[Tuple[int, Weight], EchelonBasis] = {}
        self._slices: Dict[int, GradedSlice] = {}

    # ------------------------------------------------------------------
    # Ambient words
    # ------------------------------------------------------------------

    def words(self, n: int) -> Dict[Weight, List[Word]]:
        """PBW words of degree n grouped by finite weight."""
        if n not in self._words:
            groups: Dict[Weight, List[Word]] = defaultdict(list)
            count = 0
            for word in pbw_words(self.model.dim, n):
                groups[word_weight(word, self.model).eps].append(word)
                count += 1
                if self.max_slice_dim is not None and count > self.max_slice_dim:
                    raise ResourceCapExceeded(f"PBW words of degree {n}", count, self.max_slice_dim)
            self._words[n] = dict(groups)
        return self._words[n]

    # ------------------------------------------------------------------
    # Singular vector and its g-module
    # ------------------------------------------------------------------

    @property
    def singular_degree(self) -> int:
        return self.level + 1

    def singular_vector(self) -> ModuleVector:
        theta = letter_of(LoopElement(self.model.theta, -1), self.model)
        return ModuleVector.word((theta,) * self.singular_degree)

    def singular_module(self) -> Dict[Weight, List[ModuleVector]]:
        """Basis of U(g) s grouped by weight, closed under every degree-0 root vector."""
        if self._singular is None:
            bases: Dict[Weight, EchelonBasis] = defaultdict(EchelonBasis)
            vectors: Dict[Weight, List[ModuleVector]] = defaultdict(list)
            index = _WordIndex()
            roots = [c for c in self.model.basis if not c.is_cartan]

            s = self.singular_vector()
            start = word_weight(s.words()[0], self.model).eps
            bases[start].add(index.vector(s))
            vectors[start].append(s)
            queue = [(start, s)]
            while queue:
                weight, y = queue.pop()
                for color in roots:
                    image = self.module.act(LoopElement(color, 0), y)
                    if not image:
                        continue
                    target = tuple(a + b for a, b in zip(weight, color.weight().eps))
                    if bases[target].add(index.vector(image)):
                        vectors[target].append(image)
                        queue.append((target, image))

            self._singular = dict(vectors)
            logger.info(f"Singular module of C_{self.model.rank} at level {self.level}: "
                        f"dimension {sum(len(v) for v in self._singular.values())}")
        return self._singular

    # ------------------------------------------------------------------
    # Relation blocks
    # ------------------------------------------------------------------

    def relation_rows(self, n: int, weight: Weight) -> List[ModuleVector]:
        """Spanning set of the relation block (n, weight)."""
        shift = n - self.singular_degree
        if shift < 0:
            return []
        rows = []
        words = self.words(shift)
        for nu, ys in self.singular_module().items():
            rest = tuple(a - b for a, b in zip(weight, nu))
            for w in words.get(rest, []):
                for y in ys:
                    rows.append(self.module.apply_word(w, y))
        return rows

    def block(self, n: int, weight: Weight) -> EchelonBasis:
        key = (n, tuple(weight))
        if key not in self._blocks:
            basis = EchelonBasis()
            index = _WordIndex(self.words(n).get(tuple(weight), []))
            for row in self.relation_rows(n, tuple(weight)):
                basis.add(index.vector(row))
            self._blocks[key] = basis
        return self._blocks[key]

    # ------------------------------------------------------------------
    # Slices
    # ------------------------------------------------------------------

    def slice(self, n: int) -> GradedSlice:
        if n > self.truncation:
            raise ValueError(f"degree {n} beyond truncation {self.truncation}")
        if n not in self._slices:
            groups = self.words(n)
            relation_rank = 0
            weight_dims: Dict[Weight, Tuple[int, int]] = {}
            for weight, words in groups.items():
                rep = dominant(weight)
                if rep not in weight_dims:
                    if rep not in groups:
                        raise ArithmeticError(f"weight {rep} missing from degree {n}")
                    rank = self.block(n, rep).rank
                    weight_dims[rep] = (len(groups[rep]), len(groups[rep]) - rank)
                ambient, quotient = weight_dims[rep]
                if ambient != len(words):
                    raise ArithmeticError(f"degree {n}: weight {weight} and {rep} have different ambient sizes")
                relation_rank += ambient - quotient

            ambient_basis = tuple(w for weight in sorted(groups) for w in groups[weight])
            self._slices[n] = GradedSlice(
                degree=n,
                ambient_basis=ambient_basis,
                relation_rank=relation_rank,
                quotient_dim=len(ambient_basis) - relation_rank,
                weight_dims=dict(sorted(weight_dims.items(), reverse=True)),
            )
            logger.debug(f"C_{self.model.rank} k={self.level} slice {n}: ambient {len(ambient_basis)}, "
                         f"quotient {self._slices[n].quotient_dim}")
        return self._slices[n]

    def close_slice(self, n: int) -> List[Tuple[str, Weight]]:
        """
        Act with every degree-0 root vector on the relation blocks of degree n.

        Returns:
            (color, weight) pairs whose image left the relation space; empty
            when the slice is g-stable
        """
        failures = []
        for weight in sorted(self.words(n)):
            for row in self.relation_rows(n, weight):
                for color in self.model.basis:
                    if color.is_cartan:
                        continue
                    image = self.module.act(LoopElement(color, 0), row)
                    if not image:
                        continue
                    target = tuple(a + b for a, b in zip(weight, color.weight().eps))
                    index = _WordIndex(self.words(n).get(target, []))
                    if not self.block(n, target).contains(index.vector(image)):
                        failures.append((str(color), weight))
        return failures

    # ------------------------------------------------------------------
    # Rank tests
    # ------------------------------------------------------------------

    def monomial(self, pi: ColoredPartition) -> ModuleVector:
        if pi.kind.rank != self.model.rank:
            raise ValueError(f"{pi.kind} colors do not live in C_{self.model.rank}")
        return monomial_vector(sort_monomial(pi), self.module)

    def rank_test(self, partitions: Sequence[ColoredPartition]) -> RankResult:
        """
        Rank of {u(pi) v} in L(kLambda_0) with one dependency per missing rank.

        Raises:
            ValueError: If the partitions have different degrees
        """
        if not partitions:
            return RankResult(degree=0, count=0, rank=0)
        degrees = {pi.degree for pi in partitions}
        if len(degrees) != 1:
            raise ValueError(f"rank_test needs partitions of one degree, got {sorted(degrees)}")
        n = degrees.pop()

        by_weight: Dict[Weight, List[int]] = defaultdict(list)
        vectors = []
        for i, pi in enumerate(partitions):
            vector = self.monomial(pi)
            vectors.append(vector)
            by_weight[word_weight(vector.words()[0], self.model).eps].append(i)

        dependencies = []
        for weight in sorted(by_weight):
            basis = self.block(n, weight).copy()
            index = _WordIndex(self.words(n).get(weight, []))
            for i in by_weight[weight]:
                combo = basis.insert(index.vector(vectors[i]), {i: 1})
                if combo is not None:
                    dependencies.append(combo)

        return RankResult(degree=n, count=len(partitions),
                          rank=len(partitions) - len(dependencies), dependencies=dependencies)


class _WordIndex:
    """Column numbering for words; preseeded words keep their order."""

    def __init__(self, words: Sequence[Word] = ()):
        self._columns: Dict[Word, int] = {w: i for i, w in enumerate(words)}

    def column(self, word: Word) -> int:
        if word not in self._columns:
            self._columns[word] = len(self._columns)
        return self._columns[word]

    def vector(self, vector: ModuleVector) -> Dict[int, object]:
        return {self.column(w): c for w, c in vector.items()}


def _slices_for(rank: int, level: int, degrees: Sequence[int], truncation: int,
                max_slice_dim: Optional[int]) -> List[GradedSlice]:
    quotient = QuotientModule(rank, level, truncation, max_slice_dim)
    return [quotient.slice(n) for n in degrees]


def build_quotient_slices(ell: int, level: int, max_degree: int, max_slice_dim: Optional[int] = None,
                          n_jobs: int = 1, progress: bool = False,
                          quotient: Optional[QuotientModule] = None) -> List[GradedSlice]:
    """
    Graded slices of L(kLambda_0) for C_l^(1), degrees 0..N.

    Args:
        ell: Rank l
        level: Level k >= 1
        max_degree: Truncation N
        max_slice_dim: Cap on the ambient PBW count of one degree
        n_jobs: joblib workers, one task per degree
        progress: Show a tqdm bar
        quotient: Module to fill in place (serial runs only), so later rank
            tests reuse its relation blocks

    Raises:
        ResourceCapExceeded: If an ambient slice is larger than the cap
    """
    if level < 1:
        raise ValueError(f"level must be positive, got {level}")
    degrees = list(range(max_degree + 1))
    if quotient is not None and (quotient.model.rank, quotient.level) != (ell, level):
        raise ValueError(f"quotient is C_{quotient.model.rank} at level {quotient.level}, expected C_{ell} at level {level}")
    if n_jobs == 1:
        if quotient is None:
            quotient = QuotientModule(ell, level, max_degree, max_slice_dim)
        return [
            quotient.slice(n)
            for n in tqdm(degrees, desc=f"Slices C_{ell} k={level}", disable=not progress)
        ]
    chunks = Parallel(n_jobs=n_jobs)(
        delayed(_slices_for)(ell, level, [n], max_degree, max_slice_dim) for n in degrees
    )
    return [s for chunk in chunks for s in chunk]
