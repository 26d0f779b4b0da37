"""Seeded random generators for exact test data: scalars, polynomials, unitaries, realizations."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .ncpoly import I, NcPoly, ONE, Scalar, ZERO
from .realize import Realization


@dataclass(frozen=True)
class SampleConfig:
    max_num: int = 3
    max_den: int = 3
    complex_coefficients: bool = True
    zero_prob: float = 0.1


def random_rational(rng: random.Random, cfg: SampleConfig = SampleConfig()) -> Fraction:
    if rng.random() < cfg.zero_prob:
        return Fraction(0)
    return Fraction(rng.randint(-cfg.max_num, cfg.max_num), rng.randint(1, cfg.max_den))


def random_scalar(rng: random.Random, cfg: SampleConfig = SampleConfig()) -> Scalar:
    im = random_rational(rng, cfg) if cfg.complex_coefficients else 0
    return Scalar(random_rational(rng, cfg), im)


def random_monomial(rng: random.Random, modes: int, degree: int) -> tuple:
    mono = [0] * (2 * modes)
    for _ in range(degree):
        mono[rng.randrange(2 * modes)] += 1
    return tuple(mono)


def random_poly(rng: random.Random, modes: int = 1, max_degree: int = 4, max_terms: int = 5,
                cfg: SampleConfig = SampleConfig()) -> NcPoly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = random_monomial(rng, modes, rng.randint(0, max_degree))
        terms[mono] = random_scalar(rng, cfg)
    return NcPoly(terms, modes)


def random_hermitian(rng: random.Random, modes: int = 1, max_degree: int = 4,
                     max_terms: int = 5) -> NcPoly:
    """A self-adjoint polynomial whose degree does not exceed max_degree."""
    return random_poly(rng, modes, max_degree, max_terms).herm()


def random_unitary(rng: random.Random, n: int) -> tuple:
    """Signed permutation times a diagonal of phases from {1, -1, i, -i}."""
    perm = list(range(n))
    rng.shuffle(perm)
    phases = (ONE, -ONE, I, -I)
    return tuple(tuple(rng.choice(phases) if perm[r] == c else ZERO for c in range(n))
                 for r in range(n))


def random_realization(rng: random.Random, modes: int, channels: int, h_degree: int = 4,
                       l_degree: int = 3) -> Realization:
    H = random_hermitian(rng, modes, h_degree, 5)
    H = H - Scalar(H.constant_term().re)
    L = tuple(random_poly(rng, modes, l_degree, 3) for _ in range(channels))
    S = random_unitary(rng, channels)
    return Realization(H, L, S, (ZERO,) * channels)
