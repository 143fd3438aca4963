"""Q-perfect / C-perfect classification of 3XOR games.

Three independent routes decide the same two flags:

  * classify_hnf: row Hermite Normal Form of the augmented system (gamma|s).
    The rows whose gamma part vanishes carry integer residuals of s against
    the row lattice; the game is Q-perfect iff all residuals are even, and
    the staircase rows then yield a rational strategy by back-substitution.
  * classify_snf: Smith Normal Form of gamma; evenness conditions on
    omega_inv . s at the zero (for Q) and even (for C) invariants.
  * classify_dual: integer / GF(2) solvability of the dual refutation
    system; existence only, no strategies.

C-perfection is decided by GF(2) elimination on the original defining
system (equivalent to binary solvability of the staircase system; the
equivalence is asserted in tests).
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ClassifierDisagreement, NotQPerfect
from .games import defining_system
from .linalg import (
    IntMatrix,
    augment,
    hnf,
    integer_solvable,
    mat_vec,
    snf,
    solve_mod2,
    solve_triangular_rational,
)


class Method(Enum):
    HNF = "hnf"
    SNF = "snf"
    DUAL = "dual"


@dataclass(frozen=True)
class Classification:
    q_perfect: bool
    c_perfect: bool
    merp: tuple  # length-3n Fractions in [0,2), or None
    classical: tuple  # length-3n bits, or None
    method: Method

    @property
    def pseudotelepathy(self):
        return self.q_perfect and not self.c_perfect


@dataclass(frozen=True)
class HnfPartition:
    """Split of the augmented HNF H = (R b1; 0 b2).

    A row belongs to the b2 block iff it vanishes on all gamma columns, so
    its pivot (if any) sits in the appended s column.  At most the first b2
    entry is nonzero.
    """

    r: IntMatrix
    b1: tuple
    b2: tuple


def hnf_partition(gamma, s_vec):
    """Partition the HNF of (gamma | s_vec) into staircase and residual."""
    h = hnf(augment(gamma, list(s_vec))).h
    ncols = gamma.cols
    top = []
    b1 = []
    b2 = []
    for row in h.data:
        if any(row[:ncols]):
            top.append(row[:ncols])
            b1.append(row[ncols])
        else:
            b2.append(row[ncols])
    r = IntMatrix(top) if top else IntMatrix.zeros(0, ncols)
    return HnfPartition(r=r, b1=tuple(b1), b2=tuple(b2))


def _system_matrices(game):
    system = defining_system(game)
    return IntMatrix([list(r) for r in system.gamma]), list(system.s_vec)


def classify_hnf(game):
    """Classify via the Hermite Normal Form of the augmented system."""
    gamma, s_vec = _system_matrices(game)
    part = hnf_partition(gamma, s_vec)
    q_perfect = all(v % 2 == 0 for v in part.b2)
    merp = None
    if q_perfect:
        merp = tuple(solve_triangular_rational(part.r, list(part.b1)))
    classical = solve_mod2(gamma, s_vec)
    return Classification(
        q_perfect=q_perfect,
        c_perfect=classical is not None,
        merp=merp,
        classical=tuple(classical) if classical is not None else None,
        method=Method.HNF,
    )


def classify_snf(game):
    """Classify via the Smith Normal Form of gamma."""
    gamma, s_vec = _system_matrices(game)
    res = snf(gamma)
    t = mat_vec(res.omega_inv, s_vec)
    rank_bound = min(gamma.rows, gamma.cols)

    def invariant(i):
        return res.d[i, i] if i < rank_bound else 0

    q_perfect = all(
        t[i] % 2 == 0 for i in range(gamma.rows) if invariant(i) == 0
    )
    c_perfect = all(
        t[i] % 2 == 0 for i in range(gamma.rows) if invariant(i) % 2 == 0
    )
    merp = None
    if q_perfect:
        y = [Fraction(0)] * gamma.cols
        for i in range(min(rank_bound, gamma.cols)):
            di = invariant(i)
            if di != 0:
                y[i] = Fraction(t[i], di)
        z = [Fraction(0)] * gamma.cols
        for i in range(gamma.cols):
            z[i] = sum(res.psi_inv[i, j] * y[j] for j in range(gamma.cols))
        merp = tuple(v % 2 for v in z)
    classical = None
    if c_perfect:
        y = [0] * gamma.cols
        for i in range(min(rank_bound, gamma.cols)):
            di = invariant(i)
            if di % 2:
                y[i] = t[i] % 2
        classical = tuple(
            sum(res.psi_inv[i, j] * y[j] for j in range(gamma.cols)) % 2
            for i in range(gamma.cols)
        )
    return Classification(
        q_perfect=q_perfect,
        c_perfect=c_perfect,
        merp=merp,
        classical=classical,
        method=Method.SNF,
    )


def classify_dual(game):
    """Classify via the dual refutation system; decides existence only.

    A game fails to be Q-perfect iff the dual system M xi = b has an integer
    solution, and fails to be C-perfect iff it has one over Z2, where
    M = [[gamma^T, 0], [s^T, 2]] and b = (0, ..., 0, 1).
    """
    gamma, s_vec = _system_matrices(game)
    rows = [list(col) + [0] for col in zip(*gamma.data)]
    rows.append(list(s_vec) + [2])
    m = IntMatrix(rows)
    b = [0] * gamma.cols + [1]
    q_perfect = not integer_solvable(m, b)
    c_perfect = solve_mod2(m, b) is None
    return Classification(
        q_perfect=q_perfect,
        c_perfect=c_perfect,
        merp=None,
        classical=None,
        method=Method.DUAL,
    )


def unique_merp(gamma, s_vec):
    """Whether the system gamma . z = s (mod 2) has a unique rational
    solution mod 2: the staircase R must be square with determinant +-1.

    Raises NotQPerfect when the system has no rational solution at all.
    """
    part = hnf_partition(gamma, list(s_vec))
    if any(v % 2 for v in part.b2):
        raise NotQPerfect("system has an odd residual, no rational solution")
    if part.r.rows != part.r.cols:
        return False
    return all(part.r[i, i] == 1 for i in range(part.r.rows))


def cross_check(game):
    """Run all three classifiers; raise ClassifierDisagreement on any split.

    Returns the HNF result (the method that carries strategies).
    """
    results = {
        "hnf": classify_hnf(game),
        "snf": classify_snf(game),
        "dual": classify_dual(game),
    }
    verdicts = {
        name: (res.q_perfect, res.c_perfect) for name, res in results.items()
    }
    if len(set(verdicts.values())) != 1:
        raise ClassifierDisagreement(game, verdicts)
    return results["hnf"]
