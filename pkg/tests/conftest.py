"""Shared helpers: brute-force oracles and random instance generators."""

import itertools
import random

import pytest

from xorgames.games import Clause, XorGame, make_game


def brute_force_c_perfect(game):
    """Exhaustive search over all 2^(3n) binary assignments."""
    n = game.n
    for bits in itertools.product((0, 1), repeat=3 * n):
        if all(
            (bits[cl.a - 1] + bits[n + cl.b - 1] + bits[2 * n + cl.c - 1] - cl.s)
            % 2
            == 0
            for cl in game.clauses
        ):
            return True
    return False


def best_classical_fraction(game):
    """Best classical score over all deterministic strategies, exact."""
    from fractions import Fraction

    n = game.n
    best = 0
    for bits in itertools.product((0, 1), repeat=3 * n):
        hits = sum(
            1
            for cl in game.clauses
            if (bits[cl.a - 1] + bits[n + cl.b - 1] + bits[2 * n + cl.c - 1] - cl.s)
            % 2
            == 0
        )
        best = max(best, hits)
    return Fraction(best, game.m)


def random_game(rng, n_max=5, m_max=12, full_tuple=False):
    """Random game via plain rejection; independent of the library sampler."""
    n = rng.randint(1, n_max)
    cap = 2 * n**3 if full_tuple else n**3
    m = rng.randint(1, min(m_max, cap))
    seen = set()
    clauses = []
    while len(clauses) < m:
        cl = (
            rng.randint(1, n),
            rng.randint(1, n),
            rng.randint(1, n),
            rng.randint(0, 1),
        )
        key = cl if full_tuple else cl[:3]
        if key in seen:
            continue
        seen.add(key)
        clauses.append(cl)
    return make_game(n, clauses)


@pytest.fixture
def ghz_game():
    return make_game(2, [(1, 1, 1, 0), (1, 2, 2, 1), (2, 1, 2, 1), (2, 2, 1, 1)])


@pytest.fixture
def py_rng():
    return random.Random(12345)
