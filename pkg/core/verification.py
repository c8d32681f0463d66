"""
Verification Suites

Runs the engines against each other over parameter grids: basis theorem
(admissible count = quotient dimension = monomial rank = character),
grade-one subspace rank, the T_a checks, color-shift end to end and the
algebraic property suites.
"""

import logging
import random
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence, Tuple

from tqdm import tqdm

from core.characters import graded_dims
from core.derivations import POWER_CASES, DerivationEngine, color_shift, independence_trace, shift_generator
from core.lie_algebra import (
    LoopElement, affine_bracket, build_symplectic_model, check_embedding_homomorphism,
)
from core.partitions import (
    ArrayKind, ColoredPartition, check_gluing, colored_partitions, enumerate_admissible, max_path_load,
    phi_bijection,
)
from core.pbw import ModuleVector, UElement, VacuumModule, Word, adjoint_word_action, pbw_words
from core.quotient import QuotientModule, build_quotient_slices
from core.reports import GradedDimTable, IdentityCheck, VerificationReport

logger = logging.getLogger(__name__)


def _admissible_with_empty(ell: int, level: int, max_degree: int, kind: ArrayKind,
                           cap: Optional[int], n_jobs: int, progress: bool):
    partitions = enumerate_admissible(ell, level, max_degree, kind=kind, cap=cap, n_jobs=n_jobs, progress=progress)
    partitions[0] = [ColoredPartition.empty(kind)]
    return partitions


# ============================================================================
# BASIS THEOREM
# ============================================================================

def verify_theorem(ell: int, level: int, max_degree: int, array: str = "full",
                   max_partitions: Optional[int] = None, max_slice_dim: Optional[int] = None,
                   max_weights: Optional[int] = None, close_slices: bool = False,
                   n_jobs: int = 1, progress: bool = False) -> GradedDimTable:
    """
    Per-degree admissible count, ambient and quotient dimensions, monomial rank and character.

    On the FULL array the verdict asks count = dim = rank = character in every
    degree; on the FS array (inside C_{2l}) it asks the monomial vectors to be
    independent.
    """
    kind = ArrayKind.full(ell) if array == "full" else ArrayKind.fs(ell)
    partitions = _admissible_with_empty(ell, level, max_degree, kind, max_partitions, n_jobs, progress)

    quotient = QuotientModule(kind.rank, level, max_degree, max_slice_dim)
    character = graded_dims(kind.rank, level, max_degree, max_weights)

    slices = build_quotient_slices(kind.rank, level, max_degree, max_slice_dim, quotient=quotient)

    counts, ambient, relations, dims, ranks, closed = [], [], [], [], [], []
    for n in tqdm(range(max_degree + 1), desc=f"Theorem {kind} k={level}", disable=not progress):
        graded_slice = slices[n]
        result = quotient.rank_test(partitions[n])
        counts.append(len(partitions[n]))
        ambient.append(graded_slice.ambient_dim)
        relations.append(graded_slice.relation_rank)
        dims.append(graded_slice.quotient_dim)
        ranks.append(result.rank)
        if close_slices:
            closed.append(int(not quotient.close_slice(n)))
        logger.info(f"{kind} k={level} degree {n}: count {counts[-1]}, dim {dims[-1]}, rank {ranks[-1]}")

    table = GradedDimTable(ell, level, max_degree, {
        "admissible_count": counts,
        "ambient_dim": ambient,
        "relation_rank": relations,
        "dim": dims,
        "character_dim": character.dims,
        "monomial_rank": ranks,
    })
    if close_slices:
        table.add_column("g_stable", closed)

    oracle = dims == character.dims and (not close_slices or all(closed))
    if kind.family == "full":
        table.verdict = oracle and counts == dims == ranks
    else:
        table.verdict = oracle and counts == ranks
    return table


# ============================================================================
# LEMMAS
# ============================================================================

def verify_lemma_grid(max_ell: int, max_multiplicity: int, degrees: Sequence[int] = (-1, -2),
                      engine_factory=DerivationEngine) -> VerificationReport:
    """Single-generator and power checks for 1 <= a <= l <= max_ell, m <= max_multiplicity, at every degree."""
    report = VerificationReport(f"T_a checks, l <= {max_ell}, m <= {max_multiplicity}")
    for ell in range(1, max_ell + 1):
        engine = engine_factory(ell)
        for a in range(1, ell + 1):
            for n in degrees:
                report.extend(engine.verify_lemma_single(a, n))
                for m in range(1, max_multiplicity + 1):
                    for case in POWER_CASES:
                        report.extend(engine.verify_lemma_powers(a, m, case, n))
    return report


# ============================================================================
# COLOR SHIFT
# ============================================================================

def verify_shift(ell: int, level: int, max_degree: int, max_partitions: Optional[int] = None,
                 progress: bool = False) -> VerificationReport:
    """
    Color shift of every admissible partition up to degree N.

    Per partition: T(pi)u(pi) = c w(pi') (all stages, and in M(kLambda_0)),
    pi' = phi(pi), and the selection property against the same degree. Per
    degree: the independence trace.
    """
    engine = DerivationEngine(ell)
    partitions = enumerate_admissible(ell, level, max_degree, cap=max_partitions)
    report = VerificationReport(f"color shift, l={ell} k={level} N={max_degree}")
    for n in tqdm(range(1, max_degree + 1), desc=f"Color shift l={ell} k={level}", disable=not progress):
        for pi in partitions[n]:
            report.extend(engine.verify_color_shift_end_to_end(pi, level, others=partitions[n]))
            image = color_shift(pi)
            report.checks.append(IdentityCheck(
                "shift equals phi", f"l={ell} pi={pi}", str(phi_bijection(pi)), str(image),
                image == phi_bijection(pi),
            ))
        trace = independence_trace(partitions[n], level)
        report.checks.append(IdentityCheck(
            "independence trace", f"l={ell} k={level} n={n}", "distinct admissible images",
            f"rounds={len(trace.rounds)}", trace.passed,
        ))
    return report


# ============================================================================
# ALGEBRAIC PROPERTIES
# ============================================================================

def check_bijection_invariance(ell: int, max_degree: int) -> IdentityCheck:
    """phi preserves degree, length and max path load on every partition of degree <= N."""
    kind = ArrayKind.full(ell)
    failures = 0
    total = 0
    for n in range(1, max_degree + 1):
        for pi in colored_partitions(kind, n):
            image = phi_bijection(pi)
            total += 1
            if (image.degree, image.length, max_path_load(image)) != (pi.degree, pi.length, max_path_load(pi)):
                failures += 1
    return IdentityCheck("phi invariance", f"l={ell} N={max_degree} partitions={total}", "0 failures",
                         str(failures), failures == 0)


@lru_cache(maxsize=None)
def _words_of(dim: int, degree: int) -> Tuple[Word, ...]:
    return tuple(pbw_words(dim, degree))


def random_word(rng: random.Random, dim: int, degree: int) -> Word:
    """A uniformly chosen PBW word of the given degree."""
    return rng.choice(_words_of(dim, degree))


def check_leibniz(engine: DerivationEngine, rng: random.Random, samples: int, max_degree: int = 3) -> IdentityCheck:
    """T_a(u w) = T_a(u) w + u T_a(w) on random PBW words."""
    failures = 0
    dim = engine.model.dim
    for _ in range(samples):
        a = rng.randint(1, engine.ell)
        u = UElement.word(random_word(rng, dim, rng.randint(1, max_degree)))
        w = UElement.word(random_word(rng, dim, rng.randint(1, max_degree)))
        lhs = engine.apply_T(a, engine.algebra.product(u, w))
        rhs = engine.algebra.product(engine.apply_T(a, u), w) + engine.algebra.product(u, engine.apply_T(a, w))
        if lhs != rhs:
            failures += 1
    return IdentityCheck("Leibniz", f"C_{engine.model.rank} samples={samples}", "0 failures",
                         str(failures), failures == 0)


def check_derivation_on_vacuum(engine: DerivationEngine, rng: random.Random, samples: int,
                               level: int = 1, max_degree: int = 4) -> IdentityCheck:
    """t_a(u v) = (T_a u) v in M(kLambda_0) for random PBW words u."""
    failures = 0
    module = VacuumModule(engine.model, level, truncation=max_degree)
    vacuum = ModuleVector.vacuum()
    for _ in range(samples):
        a = rng.randint(1, engine.ell)
        u = UElement.word(random_word(rng, engine.model.dim, rng.randint(1, max_degree)))
        lhs = adjoint_word_action([(shift_generator(a, engine.ell), 1)], module.apply(u, vacuum), module)
        rhs = module.apply(engine.apply_T(a, u), vacuum)
        if lhs != rhs:
            failures += 1
    return IdentityCheck("t_a on the vacuum", f"C_{engine.model.rank} k={level} samples={samples}", "0 failures",
                         str(failures), failures == 0)


def check_module_axiom(module: VacuumModule, rng: random.Random, samples: int, max_degree: int = 3) -> IdentityCheck:
    """x(y w) - y(x w) = [x, y] w + central term, for random loop elements and words."""
    failures = 0
    model = module.model
    for _ in range(samples):
        degree = rng.randint(0, max_degree)
        vector = ModuleVector.word(random_word(rng, model.dim, degree))
        x = LoopElement(rng.choice(model.basis), rng.randint(-1, 2))
        y = LoopElement(rng.choice(model.basis), rng.randint(-1, 2))
        lhs = module.act(x, module.act(y, vector)) - module.act(y, module.act(x, vector))
        combination, central = affine_bracket(x, y, module.level, model)
        rhs = central * vector
        for z, c in combination.items():
            rhs = rhs + c * module.act(z, vector)
        if lhs != rhs:
            failures += 1
    return IdentityCheck("module axiom", f"C_{model.rank} k={module.level} samples={samples}", "0 failures",
                         str(failures), failures == 0)


def verify_algebra(max_rank: int, samples: int, seed: int, level: int = 1) -> VerificationReport:
    """Structure constants, form, grading, embeddings, Leibniz rule and module axiom."""
    rng = random.Random(seed)
    report = VerificationReport(f"algebra, rank <= {max_rank}, seed={seed}")
    for m in range(1, max_rank + 1):
        model = build_symplectic_model(m)
        for name, failures in (
            ("antisymmetry", model.check_antisymmetry()),
            ("Jacobi", model.check_jacobi()),
            ("form invariance", model.check_form()),
            ("grading", model.check_grading()),
        ):
            report.checks.append(IdentityCheck(name, f"C_{m}", "0 failures", str(len(failures)), not failures))
        norm = model.theta_norm()
        report.checks.append(IdentityCheck("theta norm", f"C_{m}", "2", str(norm), norm == 2))

    for ell in range(1, max_rank // 2 + 1):
        for indices in combinations(range(1, 2 * ell + 1), ell):
            failures = check_embedding_homomorphism(ell, indices)
            report.checks.append(IdentityCheck(
                "embedding", f"l={ell} indices={list(indices)}", "0 failures", str(len(failures)), not failures,
            ))
        for kind in (ArrayKind.full(ell), ArrayKind.fs(ell)):
            failures = check_gluing(kind, 6)
            report.checks.append(IdentityCheck(
                "gluing", f"{kind} N=6", "0 failures", str(len(failures)), not failures,
            ))
        engine = DerivationEngine(ell)
        report.checks.append(check_leibniz(engine, rng, samples))
        report.checks.append(check_derivation_on_vacuum(engine, rng, samples, level))
        for a in range(1, ell + 1):
            orders = engine.nilpotency_table(a)
            worst = max(order for _, order in orders)
            report.checks.append(IdentityCheck(
                "nilpotency", f"l={ell} a={a}", "order <= 3", str(worst), worst <= 3,
            ))
        module = VacuumModule(build_symplectic_model(ell), level, truncation=6)
        report.checks.append(check_module_axiom(module, rng, samples))

    return report


def verify_phi(max_ell: int, max_degree: int) -> VerificationReport:
    return VerificationReport(
        f"phi invariance, l <= {max_ell}, N={max_degree}",
        [check_bijection_invariance(ell, max_degree) for ell in range(1, max_ell + 1)],
    )

