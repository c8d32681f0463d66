"""
Character Oracle

Weight multiplicities of L(kLambda_0) for C_l^(1) by the affine Freudenthal
recursion, summed into graded dimensions. Independent of the PBW engine.

Weights are kLambda_0 + mu - n delta with mu in the finite root lattice
(integer eps-coordinates with even sum) and n >= 0.
"""

import logging
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Dict, List, Optional, Tuple

from core.errors import ResourceCapExceeded
from core.reports import GradedDimTable

logger = logging.getLogger(__name__)

Weight = Tuple[int, ...]


def _pair(x: Weight, y: Weight) -> Fraction:
    """(eps_a|eps_b) = delta_ab / 2."""
    return Fraction(sum(a * b for a, b in zip(x, y)), 2)


def finite_roots(ell: int) -> Tuple[List[Weight], List[Weight]]:
    """(positive roots, all roots) of C_l in eps-coordinates."""
    positive = []
    for i in range(ell):
        for j in range(i + 1, ell):
            for sign in (-1, 1):
                root = [0] * ell
                root[i], root[j] = 1, sign
                positive.append(tuple(root))
        root = [0] * ell
        root[i] = 2
        positive.append(tuple(root))
    roots = positive + [tuple(-x for x in r) for r in positive]
    return positive, roots


def _marks(ell: int) -> List[int]:
    return [2] * (ell - 1) + [1]


def _simple_coordinates(mu: Weight) -> List[Fraction]:
    """Coefficients of mu in the simple roots eps_i - eps_{i+1}, 2 eps_l."""
    partial = 0
    coords = []
    for x in mu[:-1]:
        partial += x
        coords.append(Fraction(partial))
    coords.append(Fraction(sum(mu), 2))
    return coords


def candidate_weights(ell: int, level: int, n: int) -> List[Weight]:
    """
    Finite parts mu that can occur at delta-degree n.

    kLambda_0 - (kLambda_0 + mu - n delta) must be a nonnegative combination
    of simple roots, and every weight has norm at most that of kLambda_0.
    """
    bound = 4 * level * n
    radius = isqrt(bound)
    marks = _marks(ell)
    result = []
    for mu in product(range(-radius, radius + 1), repeat=ell):
        if sum(mu) % 2 or sum(x * x for x in mu) > bound:
            continue
        if all(c <= n * a for c, a in zip(_simple_coordinates(mu), marks)):
            result.append(mu)
    return result


def weight_multiplicities(ell: int, level: int, max_degree: int,
                          max_weights: Optional[int] = None) -> Dict[int, Dict[Weight, int]]:
    """
    mult(kLambda_0 + mu - n delta) for n = 0..N.

    Real roots alpha + m delta have multiplicity 1, imaginary roots m delta
    have multiplicity l. Within a degree, weights are processed by
    decreasing height so that mu + j alpha (alpha > 0) is always known.

    Raises:
        ResourceCapExceeded: If a degree has more candidate weights than max_weights
        ArithmeticError: If the recursion does not divide exactly
    """
    if ell < 1 or level < 1:
        raise ValueError(f"ell and level must be positive, got ell={ell} level={level}")
    positive, roots = finite_roots(ell)
    rho = tuple(range(ell, 0, -1))
    dual_coxeter = ell + 1
    rho_norm = _pair(rho, rho)

    mult: Dict[int, Dict[Weight, int]] = {0: {(0,) * ell: 1}}
    for n in range(1, max_degree + 1):
        candidates = candidate_weights(ell, level, n)
        if max_weights is not None and len(candidates) > max_weights:
            raise ResourceCapExceeded(f"candidate weights of degree {n}", len(candidates), max_weights)
        allowed = set(candidates)
        current: Dict[Weight, int] = {}
        mult[n] = current

        def lookup(weight: Weight, degree: int) -> int:
            return mult.get(degree, {}).get(weight, 0)

        for mu in sorted(candidates, key=lambda w: sum(r * x for r, x in zip(rho, w)), reverse=True):
            shifted = tuple(a + b for a, b in zip(mu, rho))
            lhs = rho_norm - _pair(shifted, shifted) + 2 * n * (level + dual_coxeter)

            total = Fraction(0)
            for alpha in positive:
                alpha_norm = _pair(alpha, alpha)
                mu_alpha = _pair(mu, alpha)
                j = 1
                while True:
                    weight = tuple(a + j * b for a, b in zip(mu, alpha))
                    if weight not in allowed:
                        break
                    total += (mu_alpha + j * alpha_norm) * current.get(weight, 0)
                    j += 1

            for m in range(1, n + 1):
                for j in range(1, n // m + 1):
                    lower = n - j * m
                    for alpha in roots:
                        weight = tuple(a + j * b for a, b in zip(mu, alpha))
                        found = lookup(weight, lower)
                        if found:
                            total += (_pair(mu, alpha) + level * m + j * _pair(alpha, alpha)) * found
                    found = lookup(mu, lower)
                    if found:
                        total += ell * level * m * found

            rhs = 2 * total
            if lhs == 0:
                if rhs != 0:
                    raise ArithmeticError(f"degree {n}, weight {mu}: vanishing norm difference with nonzero sum")
                continue
            value = rhs / lhs
            if value.denominator != 1 or value < 0:
                raise ArithmeticError(f"degree {n}, weight {mu}: multiplicity {value} is not a nonnegative integer")
            if value:
                current[mu] = int(value)

        logger.debug(f"C_{ell} k={level} degree {n}: {len(current)} weights, "
                     f"dimension {sum(current.values())}")
    return mult


def graded_dims(ell: int, level: int, max_degree: int, max_weights: Optional[int] = None) -> GradedDimTable:
    """
    dim L(kLambda_0)_n for n = 0..N as a GradedDimTable.

    Args:
        ell: Rank l
        level: Level k >= 1
        max_degree: N >= 0
        max_weights: Cap on the candidate weights of one degree
    """
    if max_degree < 0:
        raise ValueError(f"max_degree must be nonnegative, got {max_degree}")
    mult = weight_multiplicities(ell, level, max_degree, max_weights)
    dims = [sum(mult[n].values()) for n in range(max_degree + 1)]
    logger.info(f"Character of C_{ell}^(1) at level {level}: {dims}")
    return GradedDimTable(ell, level, max_degree, {"dim": dims})
