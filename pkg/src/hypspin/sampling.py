"""Seeded random inputs for property checks."""
from __future__ import annotations

import random

from . import linalg
from .field_core import Field
from .orthogonal_group import HyperbolicVector


def random_vector(field: Field, n: int, rng: random.Random) -> tuple:
    return tuple(field.random(rng) for _ in range(n))


def random_hyperbolic(field: Field, n: int, rng: random.Random) -> HyperbolicVector:
    return HyperbolicVector(field, random_vector(field, n, rng), random_vector(field, n, rng))


def random_invertible(field: Field, n: int, rng: random.Random) -> linalg.Matrix:
    while True:
        g = [[field.random(rng) for _ in range(n)] for _ in range(n)]
        if linalg.det(g):
            return g


def random_sl(field: Field, n: int, rng: random.Random) -> linalg.Matrix:
    """Determinant one, by rescaling the first row of a random invertible matrix."""
    g = random_invertible(field, n, rng)
    d = linalg.det(g)
    g[0] = [x / d for x in g[0]]
    return g


def random_square_det(field: Field, n: int, rng: random.Random) -> linalg.Matrix:
    """Random SL_n element times diag(u², 1, ..., 1)."""
    g = random_sl(field, n, rng)
    u = field.random(rng, nonzero=True)
    g = [list(row) for row in g]
    for row in g:
        row[0] = row[0] * u * u
    return g


def random_nonsquare(field: Field, rng: random.Random):
    while True:
        a = field.random(rng, nonzero=True)
        if field.sqrt(a) is None:
            return a


def random_kernel_pair(field: Field, n: int, rng: random.Random):
    """(δ, w) with δ(w) = 0 and w a nonzero vector."""
    while True:
        w = random_vector(field, n, rng)
        if any(w):
            break
    # δ: random, then correct one coordinate where w is nonzero
    delta = list(random_vector(field, n, rng))
    k = next(i for i, x in enumerate(w) if x)
    s = sum((d * x for i, (d, x) in enumerate(zip(delta, w)) if i != k), field.zero)
    delta[k] = -s / w[k]
    return tuple(delta), w


def random_split_pair(field: Field, n: int, rng: random.Random):
    """(w, f) with f(w) = 1."""
    while True:
        w = random_vector(field, n, rng)
        if any(w):
            break
    f = list(random_vector(field, n, rng))
    k = next(i for i, x in enumerate(w) if x)
    s = sum((d * x for i, (d, x) in enumerate(zip(f, w)) if i != k), field.zero)
    f[k] = (1 - s) / w[k]
    return w, tuple(f)
