"""3XOR games: clauses, defining linear systems, random sampling, file I/O.

A game has n questions per player and m clauses (a, b, c, s): player 1
receives question a, player 2 question b, player 3 question c, and the team
wins the round iff the XOR of the three answer bits equals s.
"""

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import (
    DuplicateClause,
    ExhaustedSpace,
    IndexOutOfRange,
    ParseError,
)


class Clause(NamedTuple):
    a: int
    b: int
    c: int
    s: int


class Dedup(Enum):
    """Rejection rule for repeated clauses during sampling.

    TRIPLE discards a draw when its question triple (a, b, c) was already
    drawn, regardless of parity.  FULL_TUPLE only discards exact (a, b, c, s)
    repeats, so contradictory clause pairs may coexist.
    """

    TRIPLE = "triple"
    FULL_TUPLE = "full"


# Stable integer codes for seeding; enum order must never leak into RNG state.
_DEDUP_CODE = {Dedup.TRIPLE: 0, Dedup.FULL_TUPLE: 1}


@dataclass(frozen=True)
class XorGame:
    n: int
    clauses: tuple

    @property
    def m(self):
        return len(self.clauses)


@dataclass(frozen=True)
class DefiningSystem:
    """The mod-2 linear system gamma . x = s_vec encoding a game.

    gamma is m x 3n over {0,1}; columns 1..n belong to player 1, n+1..2n to
    player 2, 2n+1..3n to player 3.  Row i has exactly one 1 per block, at
    positions (a_i, n+b_i, 2n+c_i).
    """

    gamma: tuple
    s_vec: tuple


def make_game(n, clauses):
    """Validate and build an XorGame; clause order is preserved."""
    if n < 1:
        raise IndexOutOfRange(f"n must be positive, got {n}")
    if not clauses:
        raise IndexOutOfRange("a game needs at least one clause")
    out = []
    seen = set()
    for cl in clauses:
        a, b, c, s = cl
        for q in (a, b, c):
            if not 1 <= q <= n:
                raise IndexOutOfRange(f"question index {q} outside [1..{n}]")
        if s not in (0, 1):
            raise IndexOutOfRange(f"parity bit must be 0 or 1, got {s}")
        tup = (a, b, c, s)
        if tup in seen:
            raise DuplicateClause(f"clause {tup} appears twice")
        seen.add(tup)
        out.append(Clause(a, b, c, s))
    return XorGame(n=n, clauses=tuple(out))


def defining_system(game):
    """Build the m x 3n defining system of a game."""
    n = game.n
    rows = []
    s_vec = []
    for cl in game.clauses:
        row = [0] * (3 * n)
        row[cl.a - 1] = 1
        row[n + cl.b - 1] = 1
        row[2 * n + cl.c - 1] = 1
        rows.append(tuple(row))
        s_vec.append(cl.s)
    return DefiningSystem(gamma=tuple(rows), s_vec=tuple(s_vec))


def game_from_system(system):
    """Recover the game from its defining system (round-trip inverse)."""
    gamma = system.gamma
    n3 = len(gamma[0])
    n = n3 // 3
    clauses = []
    for row, s in zip(gamma, system.s_vec):
        ones = [j for j, v in enumerate(row) if v]
        a, b, c = ones[0] + 1, ones[1] - n + 1, ones[2] - 2 * n + 1
        clauses.append(Clause(a, b, c, s))
    return make_game(n, clauses)


def _capacity(n, dedup):
    cap = n * n * n
    if dedup is Dedup.FULL_TUPLE:
        cap *= 2
    return cap


def sample_clause_array(n, m, rng, dedup):
    """Sample m distinct clauses as an (m, 4) int64 array [a b c s].

    Rejection-samples uniform draws; near capacity it switches to a shuffled
    enumeration of the whole space so it always terminates.  Both routes give
    a uniform random distinct-clause sequence.  Deterministic given rng state.
    """
    cap = _capacity(n, dedup)
    if m > cap:
        raise ExhaustedSpace(
            f"m={m} exceeds capacity {cap} for n={n} dedup={dedup.value}"
        )
    full = dedup is Dedup.FULL_TUPLE
    if 2 * m > cap:
        codes = rng.permutation(cap)[:m]
        out = np.empty((m, 4), dtype=np.int64)
        if full:
            out[:, 3] = codes & 1
            codes >>= 1
        out[:, 2] = codes % n
        codes //= n
        out[:, 1] = codes % n
        out[:, 0] = codes // n
        out[:, :3] += 1
        if not full:
            out[:, 3] = rng.integers(0, 2, size=m)
        return out
    out = np.empty((m, 4), dtype=np.int64)
    seen = set()
    count = 0
    while count < m:
        batch = rng.integers(1, n + 1, size=(2 * (m - count), 3))
        sbits = rng.integers(0, 2, size=len(batch))
        for (a, b, c), s in zip(batch, sbits):
            key = ((a * n + b) * n + c) * 2 + (s if full else 0)
            if key in seen:
                continue
            seen.add(key)
            out[count, 0] = a
            out[count, 1] = b
            out[count, 2] = c
            out[count, 3] = s
            count += 1
            if count == m:
                break
    return out


def game_from_clause_array(n, arr):
    return XorGame(
        n=n,
        clauses=tuple(Clause(int(a), int(b), int(c), int(s)) for a, b, c, s in arr),
    )


def sampler_rng(seed, n, m, dedup, trial=0):
    """Counter-based RNG for one sampling task; pure function of arguments."""
    ss = np.random.SeedSequence(
        entropy=(int(seed), int(n), int(m), int(trial), _DEDUP_CODE[dedup])
    )
    return np.random.Generator(np.random.Philox(ss))


def sample_random_game(n, m, seed, dedup=Dedup.TRIPLE):
    """Sample a uniform random game with m distinct clauses.

    Deterministic function of (n, m, seed, dedup); identical across runs and
    thread counts.
    """
    if n < 1 or m < 1:
        raise IndexOutOfRange(f"need n >= 1 and m >= 1, got n={n} m={m}")
    rng = sampler_rng(seed, n, m, dedup)
    arr = sample_clause_array(n, m, rng, dedup)
    return game_from_clause_array(n, arr)


def format_game(game):
    """Serialize a game to the text file format (header `n m`, clause lines)."""
    lines = [f"{game.n} {game.m}"]
    for cl in game.clauses:
        lines.append(f"{cl.a} {cl.b} {cl.c} {cl.s}")
    return "\n".join(lines) + "\n"


def parse_game(text):
    """Parse the game file format; raises ParseError with a line number.

    The header is `n m` with an optional third field k (number of players);
    only k=3 is accepted.
    """
    lines = text.splitlines()
    header = None
    header_no = 0
    clause_lines = []
    for no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            header = line
            header_no = no
        else:
            clause_lines.append((no, line))
    if header is None:
        raise ParseError(1, "empty file, expected header `n m`")
    parts = header.split()
    if len(parts) not in (2, 3):
        raise ParseError(header_no, f"expected header `n m`, got {header!r}")
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise ParseError(header_no, f"non-integer header field in {header!r}")
    n, m = vals[0], vals[1]
    if len(vals) == 3 and vals[2] != 3:
        raise ParseError(header_no, f"only 3-player games supported, got k={vals[2]}")
    if n < 1 or m < 1:
        raise ParseError(header_no, f"need n >= 1 and m >= 1, got n={n} m={m}")
    if len(clause_lines) != m:
        raise ParseError(
            header_no, f"header declares {m} clauses, file has {len(clause_lines)}"
        )
    clauses = []
    for no, line in clause_lines:
        fields = line.split()
        if len(fields) != 4:
            raise ParseError(no, f"expected `a b c s`, got {line!r}")
        try:
            a, b, c, s = (int(f) for f in fields)
        except ValueError:
            raise ParseError(no, f"non-integer clause field in {line!r}")
        if s not in (0, 1):
            raise ParseError(no, f"parity bit must be 0 or 1, got {s}")
        for q in (a, b, c):
            if not 1 <= q <= n:
                raise ParseError(no, f"question index {q} outside [1..{n}]")
        clauses.append(Clause(a, b, c, s))
    try:
        return make_game(n, clauses)
    except DuplicateClause as exc:
        raise ParseError(header_no, str(exc))
