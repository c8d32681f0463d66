"""
Colored Partitions and Path Arrays

Generators x(n) with n < 0 laid out in the pi/4-rotated arrays of the full
basis (FULL) and of the grade-one basis (FS), downward paths, the path-load
admissibility test, enumeration of admissible colored partitions, the
FULL -> FS relabeling and the monomial order.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from joblib import Parallel, delayed
from tqdm import tqdm

from core.errors import ResourceCapExceeded
from core.lie_algebra import ColorLabel, IndexLabel, LoopElement, WeightVector, affine_simple_root, colors_of_rank

logger = logging.getLogger(__name__)

FULL = "full"
FS = "fs"


@dataclass(frozen=True)
class Generator(LoopElement):
    """A node b(n) of the generator array; the t-degree n is negative."""

    def __post_init__(self):
        if self.degree >= 0:
            raise ValueError(f"Generator degree must be negative, got {self.degree}")

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        return (self.degree,) + self.color.sort_key

    @classmethod
    def parse(cls, text: str, degree: int, rank: int) -> "Generator":
        return cls(ColorLabel.parse(text, rank), degree)


@dataclass(frozen=True)
class ArrayKind:
    """
    Which generator array a partition lives on.

    FULL(l) holds every color of C_l; FS(2l) holds the grade-one colors ij,
    i <= j, of C_{2l}. Both arrays have width 2l and 2l+1 rotated rows.
    """

    family: str
    ell: int

    def __post_init__(self):
        if self.family not in (FULL, FS):
            raise ValueError(f"Unknown array family: {self.family}")
        if self.ell < 1:
            raise ValueError(f"ell must be positive, got {self.ell}")

    @classmethod
    def full(cls, ell: int) -> "ArrayKind":
        return cls(FULL, ell)

    @classmethod
    def fs(cls, ell: int) -> "ArrayKind":
        return cls(FS, ell)

    @property
    def rank(self) -> int:
        """Rank of the algebra whose colors label the array."""
        return self.ell if self.family == FULL else 2 * self.ell

    @property
    def width(self) -> int:
        return 2 * self.ell

    @property
    def rows(self) -> int:
        return 2 * self.ell + 1

    def colors(self) -> List[ColorLabel]:
        """Colors of the array in ascending order."""
        return [c for c in colors_of_rank(self.rank) if self.admits(c)]

    def admits(self, color: ColorLabel) -> bool:
        if color.rank != self.rank:
            return False
        return self.family == FULL or not (color.first.barred or color.second.barred)

    def cell(self, color: ColorLabel) -> Tuple[int, int]:
        """Row/column (i, j), 1 <= i <= j <= 2l, of the color in one triangle of the array."""
        if not self.admits(color):
            raise ValueError(f"Color {color} (rank {color.rank}) is not in the {self} array")
        if self.family == FULL:
            return color.positions
        return color.first.value, color.second.value

    def color_at(self, i: int, j: int) -> ColorLabel:
        if self.family == FULL:
            return ColorLabel.from_positions(i, j, self.rank)
        return ColorLabel(IndexLabel(i), IndexLabel(j), self.rank)

    def __str__(self) -> str:
        return f"FULL({self.ell})" if self.family == FULL else f"FS({2 * self.ell})"


class ArrayPosition(NamedTuple):
    row: int
    diag: int


@dataclass(frozen=True)
class DownwardPath:
    nodes: Tuple[ArrayPosition, ...]

    def __len__(self) -> int:
        return len(self.nodes)


# ============================================================================
# ARRAY COORDINATES
# ============================================================================
#
# The unrotated array is the band {(x, y): y <= d, d+1 <= x+y <= 2d+1} with
# d = 2l. Degree -n triangles alternate: odd n = 2p+1 puts cell (i, j) at
# (j + dp, d+1-i-dp), even n = 2p+2 puts it at (i + d(p+1), d+1-j-dp).
# Rotated rows are the antidiagonals x+y = const, row 0 being x+y = 2d+1.

def array_position(g: Generator, kind: ArrayKind) -> ArrayPosition:
    """Rotated-array coordinates of a generator."""
    d = kind.width
    i, j = kind.cell(g.color)
    p, even = divmod(-g.degree - 1, 2)
    if even:
        x, y = i + d * (p + 1), d + 1 - j - d * p
    else:
        x, y = j + d * p, d + 1 - i - d * p
    return ArrayPosition(2 * d + 1 - x - y, d - y)


def generator_at(position: ArrayPosition, kind: ArrayKind) -> Generator:
    """Inverse of array_position."""
    d = kind.width
    row, diag = position
    if not 0 <= row <= d or diag < 0:
        raise ValueError(f"{position} is outside the {kind} array")
    y = d - diag
    x = 2 * d + 1 - row - y
    p = diag // d
    if x <= d + d * p:
        degree = -(2 * p + 1)
        i, j = d + 1 - y - d * p, x - d * p
    else:
        degree = -(2 * p + 2)
        i, j = x - d - d * p, d + 1 - y - d * p
    return Generator(kind.color_at(i, j), degree)


def affine_weight(g: Generator) -> WeightVector:
    """Weight of b(n) in the affine algebra: wt(b) + n delta."""
    return WeightVector(g.color.weight().eps, delta=g.degree)


def glued_pairs(kind: ArrayKind, max_degree: int) -> List[Tuple[Generator, Generator]]:
    """
    (cell (p, 2l) of degree -n, cell (1, p) of degree -n-1) for n < max_degree.

    On FULL(l) these are a1_(-n) and 1a(-n-1), where one triangle of the
    array is glued to the next.
    """
    d = kind.width
    return [
        (Generator(kind.color_at(p, d), -n), Generator(kind.color_at(1, p), -n - 1))
        for n in range(1, max_degree)
        for p in range(1, d + 1)
    ]


def check_gluing(kind: ArrayKind, max_degree: int) -> List[str]:
    """
    Glued generators are neighbours in the unrotated band and, on FULL(l),
    wt(1a(-n-1)) = -alpha_0 + wt(a1_(-n)).

    Returns:
        One message per failing pair; empty when the gluing holds
    """
    d = kind.width
    alpha_0 = affine_simple_root(kind.rank)
    failures = []
    for lower, upper in glued_pairs(kind, max_degree):
        (r1, c1), (r2, c2) = array_position(lower, kind), array_position(upper, kind)
        # unrotated y = d - diag, x + y = 2d + 1 - row
        dy = (d - c2) - (d - c1)
        dx = (r1 - r2) - dy
        if abs(dx) + abs(dy) != 1:
            failures.append(f"{lower} and {upper} are not neighbours in {kind}")
        if kind.family == FULL and affine_weight(upper) != affine_weight(lower) - alpha_0:
            failures.append(f"wt({upper}) != -alpha_0 + wt({lower})")
    return failures


def downward_paths_through(position: ArrayPosition, kind: ArrayKind) -> List[DownwardPath]:
    """All 2^{2l} downward paths starting at a top-row position."""
    if position.row != 0:
        raise ValueError(f"{position} is not in the top row")
    paths = []
    for steps in product((0, 1), repeat=kind.width):
        nodes = [position]
        diag = position.diag
        for row, step in enumerate(steps, start=1):
            diag += step
            nodes.append(ArrayPosition(row, diag))
        paths.append(DownwardPath(tuple(nodes)))
    return paths


# ============================================================================
# COLORED PARTITIONS
# ============================================================================

@dataclass(frozen=True)
class ColoredPartition:
    """Sparse multiset of generators, parts kept in monomial order."""

    parts: Tuple[Tuple[Generator, int], ...]
    kind: ArrayKind

    def __post_init__(self):
        for g, mult in self.parts:
            if mult <= 0:
                raise ValueError(f"multiplicity of {g} must be positive, got {mult}")
            if not self.kind.admits(g.color):
                raise ValueError(f"Color {g.color} is not in the {self.kind} array")

    @classmethod
    def from_counts(cls, counts: Mapping[Generator, int], kind: ArrayKind) -> "ColoredPartition":
        parts = sorted(((g, m) for g, m in counts.items() if m), key=lambda item: item[0].sort_key)
        return cls(tuple(parts), kind)

    @classmethod
    def from_generators(cls, generators: Iterable[Generator], kind: ArrayKind) -> "ColoredPartition":
        counts: Dict[Generator, int] = {}
        for g in generators:
            counts[g] = counts.get(g, 0) + 1
        return cls.from_counts(counts, kind)

    @classmethod
    def empty(cls, kind: ArrayKind) -> "ColoredPartition":
        return cls((), kind)

    def counts(self) -> Dict[Generator, int]:
        return dict(self.parts)

    def multiplicity(self, g: Generator) -> int:
        return self.counts().get(g, 0)

    @property
    def degree(self) -> int:
        """|pi| = sum of j * m_{b(-j)}."""
        return sum(-g.degree * m for g, m in self.parts)

    @property
    def length(self) -> int:
        return sum(m for _, m in self.parts)

    def records(self) -> List[Dict[str, object]]:
        return [{"color": str(g.color), "degree": g.degree, "mult": m} for g, m in self.parts]

    @classmethod
    def from_records(cls, records: Iterable[Mapping[str, object]], kind: ArrayKind) -> "ColoredPartition":
        counts = {}
        for record in records:
            g = Generator.parse(str(record["color"]), int(record["degree"]), kind.rank)
            counts[g] = counts.get(g, 0) + int(record["mult"])
        return cls.from_counts(counts, kind)

    def __str__(self) -> str:
        if not self.parts:
            return "{}"
        body = ", ".join(f"{g}^{m}" if m > 1 else str(g) for g, m in self.parts)
        return "{" + body + "}"


def sort_monomial(pi: ColoredPartition) -> List[Generator]:
    """
    Factors of u(pi) as x_1 <= ... <= x_s.

    Primary key: t-degree ascending. Secondary: the color's index pair
    compared lexicographically under 1 > 2 > ... > 1_.
    """
    ordered = sorted(pi.parts, key=lambda item: item[0].sort_key)
    return [g for g, m in ordered for _ in range(m)]


def _load_table(pi: ColoredPartition) -> Dict[ArrayPosition, int]:
    return {array_position(g, pi.kind): m for g, m in pi.parts}


def _window_max_load(loads: Mapping[ArrayPosition, int], width: int) -> int:
    if not loads:
        return 0
    diags = [pos.diag for pos in loads]
    lo, hi = max(0, min(diags) - width), max(diags)
    best = [loads.get(ArrayPosition(0, q), 0) for q in range(lo, hi + 1)]
    for row in range(1, width + 1):
        # predecessors outside the window carry load 0
        best = [
            loads.get(ArrayPosition(row, q), 0) + max(best[q - lo], best[q - lo - 1] if q > lo else 0)
            for q in range(lo, hi + 1)
        ]
    return max(best)


def max_path_load(pi: ColoredPartition) -> int:
    """
    Largest total multiplicity of pi along a downward path.

    Dynamic programming over the window of diagonals [qmin - 2l, qmax]: paths
    move to diagonals q or q+1, so every path meeting the support starts in
    that range and its load is realized before it leaves the window.
    """
    return _window_max_load(_load_table(pi), pi.kind.width)


def max_path_load_bruteforce(pi: ColoredPartition) -> int:
    """Same as max_path_load, by explicit enumeration of all paths meeting the support."""
    loads = _load_table(pi)
    if not loads:
        return 0
    width = pi.kind.width
    diags = [pos.diag for pos in loads]
    best = 0
    for top in range(max(0, min(diags) - width), max(diags) + 1):
        for path in downward_paths_through(ArrayPosition(0, top), pi.kind):
            best = max(best, sum(loads.get(node, 0) for node in path.nodes))
    return best


def is_admissible(pi: ColoredPartition, level: int) -> bool:
    return max_path_load(pi) <= level


# ============================================================================
# ENUMERATION
# ============================================================================

def generators_up_to(kind: ArrayKind, n: int) -> List[Generator]:
    """Generators of degrees -n..-1 in ascending monomial order."""
    colors = kind.colors()
    return [Generator(c, degree) for degree in range(-n, 0) for c in colors]


def _iter_partitions(kind: ArrayKind, n: int, level: Optional[int]) -> Iterator[ColoredPartition]:
    gens = generators_up_to(kind, n)
    positions = [array_position(g, kind) for g in gens]
    counts: Dict[int, int] = {}

    def load() -> int:
        return _window_max_load({positions[i]: m for i, m in counts.items()}, kind.width)

    def extend(start: int, remaining: int) -> Iterator[ColoredPartition]:
        if remaining == 0:
            yield ColoredPartition.from_counts({gens[i]: m for i, m in counts.items()}, kind)
            return
        for idx in range(start, len(gens)):
            size = -gens[idx].degree
            if size > remaining:
                continue
            counts[idx] = counts.get(idx, 0) + 1
            if level is None or load() <= level:
                yield from extend(idx, remaining - size)
            counts[idx] -= 1
            if not counts[idx]:
                del counts[idx]

    if n == 0:
        yield ColoredPartition.empty(kind)
        return
    yield from extend(0, n)


def colored_partitions(kind: ArrayKind, n: int) -> List[ColoredPartition]:
    """Every colored partition of degree n on the array, in canonical order."""
    return list(_iter_partitions(kind, n, None))


def _admissible_of_degree(kind: ArrayKind, level: int, n: int, cap: Optional[int]) -> List[ColoredPartition]:
    result = []
    for pi in _iter_partitions(kind, n, level):
        result.append(pi)
        if cap is not None and len(result) > cap:
            raise ResourceCapExceeded(f"admissible partitions of degree {n} on {kind}", len(result), cap)
    return result


def enumerate_admissible(ell: int, level: int, max_degree: int, kind: Optional[ArrayKind] = None,
                         cap: Optional[int] = None, n_jobs: int = 1,
                         progress: bool = False) -> Dict[int, List[ColoredPartition]]:
    """
    Enumerate the kLambda_0-admissible colored partitions of degrees 1..N.

    Args:
        ell: Rank l of C_l
        level: Level k (bound on every path load)
        max_degree: Largest degree N
        kind: Array (defaults to FULL(l))
        cap: Per-degree count limit
        n_jobs: joblib workers; degrees are independent
        progress: Show a tqdm bar

    Returns:
        Mapping degree -> partitions in canonical (degree-lexicographic) order

    Raises:
        ValueError: If level < 1
        ResourceCapExceeded: If a degree has more than cap partitions
    """
    if level < 1:
        raise ValueError(f"level must be positive, got {level}")
    if kind is None:
        kind = ArrayKind.full(ell)
    if kind.ell != ell:
        raise ValueError(f"array {kind} does not belong to ell={ell}")

    degrees = list(range(1, max_degree + 1))
    if n_jobs == 1:
        lists = [
            _admissible_of_degree(kind, level, n, cap)
            for n in tqdm(degrees, desc=f"Enumerating {kind} k={level}", disable=not progress)
        ]
    else:
        lists = Parallel(n_jobs=n_jobs)(
            delayed(_admissible_of_degree)(kind, level, n, cap) for n in degrees
        )

    result = dict(zip(degrees, lists))
    for n, partitions in result.items():
        logger.debug(f"{kind} k={level} degree {n}: {len(partitions)} admissible partitions")
    return result


def enumerate_admissible_bruteforce(ell: int, level: int, max_degree: int,
                                    kind: Optional[ArrayKind] = None) -> Dict[int, List[ColoredPartition]]:
    """Independent enumerator: filter all colored partitions by explicit path enumeration."""
    if kind is None:
        kind = ArrayKind.full(ell)
    return {
        n: [pi for pi in colored_partitions(kind, n) if max_path_load_bruteforce(pi) <= level]
        for n in range(1, max_degree + 1)
    }


# ============================================================================
# FULL(l) -> FS(2l)
# ============================================================================

def phi_color(color: ColorLabel) -> ColorLabel:
    """ab -> ab, ab_ -> a(2l-b+1), a_b_ -> (2l-a+1)(2l-b+1) for a rank-l color."""
    p, q = color.positions
    return ColorLabel(IndexLabel(p), IndexLabel(q), 2 * color.rank)


def phi_inverse_color(color: ColorLabel) -> ColorLabel:
    if color.rank % 2 or color.first.barred or color.second.barred:
        raise ValueError(f"Color {color} is not a grade-one color of even rank")
    return ColorLabel.from_positions(color.first.value, color.second.value, color.rank // 2)


def phi_bijection(pi: ColoredPartition) -> ColoredPartition:
    """Relabel a FULL(l) partition onto the FS(2l) array, keeping degrees and multiplicities."""
    if pi.kind.family != FULL:
        raise ValueError(f"phi_bijection expects a FULL partition, got {pi.kind}")
    kind = ArrayKind.fs(pi.kind.ell)
    return ColoredPartition.from_counts(
        {Generator(phi_color(g.color), g.degree): m for g, m in pi.parts}, kind
    )


def phi_inverse(pi: ColoredPartition) -> ColoredPartition:
    if pi.kind.family != FS:
        raise ValueError(f"phi_inverse expects an FS partition, got {pi.kind}")
    kind = ArrayKind.full(pi.kind.ell)
    return ColoredPartition.from_counts(
        {Generator(phi_inverse_color(g.color), g.degree): m for g, m in pi.parts}, kind
    )


def count_table(partitions: Mapping[int, Sequence[ColoredPartition]]) -> List[Tuple[int, int]]:
    return [(n, len(partitions[n])) for n in sorted(partitions)]
