"""Strategy scoring: exact formulas and a 3-qubit GHZ state-vector oracle.

A MERP strategy is a rational phase vector z of length 3n (entries in
[0, 2)); player alpha answers question j by measuring a Z-rotated X
observable with phase z[(alpha-1)*n + j - 1].  A deterministic classical
strategy is a binary vector with the same indexing.

Perfection decisions use rational mod-2 arithmetic only; floats appear in
reported scores and in the simulator.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch


@dataclass(frozen=True)
class MerpStrategy:
    z: tuple

    @classmethod
    def from_entries(cls, entries):
        return cls(z=tuple(Fraction(v) % 2 for v in entries))


@dataclass(frozen=True)
class ClassicalStrategy:
    x: tuple

    @classmethod
    def from_entries(cls, entries):
        vals = tuple(int(v) for v in entries)
        if any(v not in (0, 1) for v in vals):
            raise ValueError("classical strategy entries must be bits")
        return cls(x=vals)


def _check_length(game, vec):
    if len(vec) != 3 * game.n:
        raise DimensionMismatch(
            f"strategy length {len(vec)} != 3n = {3 * game.n}"
        )


def _clause_args(game, z):
    n = game.n
    for cl in game.clauses:
        yield z[cl.a - 1] + z[n + cl.b - 1] + z[2 * n + cl.c - 1] - cl.s


def classical_score(game, strat):
    """Exact fraction of clauses satisfied by a deterministic strategy."""
    _check_length(game, strat.x)
    hits = sum(1 for arg in _clause_args(game, strat.x) if arg % 2 == 0)
    return Fraction(hits, game.m)


def merp_score(game, strat):
    """Score of a MERP strategy: 1/2 + (1/2m) sum_i cos(pi * arg_i)."""
    _check_length(game, strat.z)
    total = sum(math.cos(math.pi * float(arg)) for arg in _clause_args(game, strat.z))
    return 0.5 + total / (2 * game.m)


def is_perfect_merp(game, strat):
    """Exact perfection predicate: every clause argument is 0 mod 2."""
    _check_length(game, strat.z)
    return all(Fraction(arg) % 2 == 0 for arg in _clause_args(game, strat.z))


def _rotated_x(phase):
    # exp(i sz phi) sx exp(-i sz phi) for phi = pi*phase/2, i.e. an X
    # observable conjugated by a Z rotation; the off-diagonal picks up
    # exp(+-2i phi) = exp(+-i pi phase).
    theta = math.pi * float(phase)
    return np.array(
        [[0.0, np.exp(1j * theta)], [np.exp(-1j * theta), 0.0]],
        dtype=complex,
    )


def ghz_state():
    """The 3-qubit GHZ state (|000> + |111>)/sqrt(2) as 8 amplitudes."""
    psi = np.zeros(8, dtype=complex)
    psi[0] = psi[7] = 1.0 / math.sqrt(2.0)
    return psi


def simulate_merp(game, strat):
    """Per-clause win probabilities from explicit GHZ simulation.

    For clause (a, b, c, s) the three players measure their rotated
    observables on a shared GHZ state; the three-party correlation equals
    cos(pi*(z_a + z_b + z_c)) and the win probability is
    (1 + (-1)^s * correlation)/2.
    """
    _check_length(game, strat.z)
    n = game.n
    psi = ghz_state()
    probs = []
    for cl in game.clauses:
        ops = [
            _rotated_x(strat.z[cl.a - 1]),
            _rotated_x(strat.z[n + cl.b - 1]),
            _rotated_x(strat.z[2 * n + cl.c - 1]),
        ]
        full = np.kron(np.kron(ops[0], ops[1]), ops[2])
        corr = float(np.real(np.vdot(psi, full @ psi)))
        sign = -1.0 if cl.s else 1.0
        probs.append((1.0 + sign * corr) / 2.0)
    return probs
