"""Fast exact classification of game flags for the Monte Carlo engine.

Decides (q_perfect, c_perfect) for a clause array without constructing
normal forms, using fixed-width modular elimination whose conclusions are
certified exactly; undecidable instances (never seen in practice) fall back
to arbitrary-precision echelon reduction.  Agreement with classify_hnf is
asserted by tests over random corpora.

Why this is exact.  Let Gamma | s be the defining system, r2 the number of
pivots found by eliminating the gamma columns mod 2^64 with minimum
2-valuation pivoting and total pivot valuation E <= 31.  All elimination
coefficients are 2-adic integers, so stored entries agree with the true
transformed system mod 2^(64-E) and residual rows are s-values of 2-adic
integer combinations that annihilate gamma up to 2^(64-E):

  * If every residual is even, back-substitution through the staircase
    gives a rational solution with 2-valuation >= -E; any true residual row
    has gamma entries divisible by 2^(64-E), so its constraint holds mod 2
    because 64 - 2E >= 2.  Hence Q-perfect.
  * The r2 x r2 pivot minor has 2-valuation E < 64 - E, so it is a nonzero
    integer minor and rank(gamma) >= r2 over the rationals.
  * If additionally rank(gamma) <= r2, the residual rows are exact
    annihilators, so an odd residual certifies not-Q-perfect.  The bound
    rank <= r2 comes either from the GF(2) rank (rank mod 2 <= rational
    rank) matching r2, or from eliminations mod odd prime powers p^k: a
    pass with r_p <= r2 pivots and valuation sum E_p forces every
    (r2+1)-minor to be divisible by p^(k-E_p); once the accumulated moduli
    exceed the Hadamard bound 3^((r2+1)/2) (every gamma row holds three
    ones), all such minors vanish.
"""

import math

import numpy as np
from numba import njit, uint64

# Prime powers below 2^51 (so the float-assisted Barrett reduction is exact)
# used to certify the rational rank of gamma.
_ODD_PRIME_POWERS = (
    (3, 32),
    (5, 21),
    (7, 18),
    (11, 14),
    (13, 13),
    (17, 12),
    (19, 11),
    (23, 11),
    (29, 10),
    (31, 10),
    (37, 9),
    (41, 9),
    (43, 9),
    (47, 9),
)

_LOG2_3 = math.log2(3.0)
_TWO_ADIC_BUDGET = 31


@njit(cache=True)
def _gf2_rank_consistent(clauses, sbits, n):
    """GF(2) elimination of the packed system; returns (rank, consistent)."""
    m = clauses.shape[0]
    ncols = 3 * n
    nwords = (ncols + 1 + 63) // 64
    words = np.zeros((m, nwords), dtype=np.uint64)
    for i in range(m):
        for t in range(3):
            col = t * n + clauses[i, t] - 1
            words[i, col >> 6] ^= uint64(1) << uint64(col & 63)
        if sbits[i]:
            words[i, ncols >> 6] ^= uint64(1) << uint64(ncols & 63)
    rank = 0
    for col in range(ncols):
        w = col >> 6
        bit = uint64(col & 63)
        piv = -1
        for r in range(rank, m):
            if (words[r, w] >> bit) & uint64(1):
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(nwords):
                tmp = words[rank, j]
                words[rank, j] = words[piv, j]
                words[piv, j] = tmp
        for r in range(m):
            if r != rank and ((words[r, w] >> bit) & uint64(1)):
                for j in range(nwords):
                    words[r, j] ^= words[rank, j]
        rank += 1
        if rank == m:
            break
    sw = ncols >> 6
    sb = uint64(ncols & 63)
    consistent = True
    for r in range(rank, m):
        if (words[r, sw] >> sb) & uint64(1):
            consistent = False
            break
    return rank, consistent


@njit(cache=True, inline="always")
def _mulmod(a, b, mod, modinv):
    # a, b < mod < 2^51; float-assisted Barrett reduction, exact after the
    # correction loops (the float quotient can be off by a few).
    t = a * b
    q = uint64(np.float64(a) * np.float64(b) * modinv)
    r = t - q * mod
    while r >= (uint64(1) << uint64(63)):
        r += mod
    while r >= mod:
        r -= mod
    return r


@njit(cache=True)
def _padic_eliminate(h, ngamma, mod, p, modinv, maxval):
    """Eliminate the first ngamma columns of h over Z/p^k (mod = p^k, or 0
    for 2^64) with minimum-p-valuation pivoting.

    Returns (status, pivots, val_sum, odd_residuals): status 1 means the
    valuation budget was exceeded and nothing can be concluded.
    odd_residuals counts residual last-column entries not divisible by p
    (only meaningful for p = 2).
    """
    m, ncols = h.shape
    two64 = mod == uint64(0)
    row = 0
    vsum = 0
    for col in range(ngamma):
        if row >= m:
            break
        piv = -1
        pive = 64
        for r in range(row, m):
            v = h[r, col]
            if v != uint64(0):
                e = 0
                if two64:
                    while (v & uint64(1)) == uint64(0):
                        v >>= uint64(1)
                        e += 1
                else:
                    while v % p == uint64(0):
                        v //= p
                        e += 1
                if e < pive:
                    pive = e
                    piv = r
                    if e == 0:
                        break
        if piv < 0:
            continue
        vsum += pive
        if vsum > maxval:
            return 1, row, vsum, 0
        if piv != row:
            for j in range(ncols):
                tmp = h[row, j]
                h[row, j] = h[piv, j]
                h[piv, j] = tmp
        unit = h[row, col]
        if two64:
            unit >>= uint64(pive)
            inv = unit
            for _ in range(6):
                inv = inv * (uint64(2) - unit * inv)
        else:
            for _ in range(pive):
                unit //= p
            # unit inverse mod p^k by extended Euclid on signed words
            a0 = np.int64(mod)
            b0 = np.int64(unit)
            x0 = np.int64(0)
            x1 = np.int64(1)
            while b0 != 0:
                qq = a0 // b0
                a0, b0 = b0, a0 - qq * b0
                x0, x1 = x1, x0 - qq * x1
            if x0 < 0:
                x0 += np.int64(mod)
            inv = uint64(x0)
        for r in range(row + 1, m):
            v = h[r, col]
            if v == uint64(0):
                continue
            if two64:
                q = (v >> uint64(pive)) * inv
                for j in range(col, ncols):
                    h[r, j] = h[r, j] - q * h[row, j]
            else:
                vq = v
                for _ in range(pive):
                    vq //= p
                q = _mulmod(vq, inv, mod, modinv)
                for j in range(col, ncols):
                    t = _mulmod(q, h[row, j], mod, modinv)
                    hv = h[r, j]
                    if hv >= t:
                        h[r, j] = hv - t
                    else:
                        h[r, j] = hv + mod - t
        row += 1
    odd = 0
    for r in range(row, m):
        if h[r, ncols - 1] % (p if not two64 else uint64(2)) != uint64(0):
            odd += 1
    return 0, row, vsum, odd


def _dense_system(clauses, n):
    m = clauses.shape[0]
    h = np.zeros((m, 3 * n + 1), dtype=np.uint64)
    rows = np.arange(m)
    for t in range(3):
        h[rows, t * n + clauses[:, t] - 1] = 1
    h[:, 3 * n] = clauses[:, 3].astype(np.uint64)
    return h


def _bigint_q_flag(clauses, n):
    """Arbitrary-precision fallback: echelon-reduce (gamma | s) over Z and
    test all residual s-entries for evenness."""
    m = clauses.shape[0]
    rows = []
    for i in range(m):
        row = [0] * (3 * n + 1)
        for t in range(3):
            row[t * n + int(clauses[i, t]) - 1] = 1
        row[3 * n] = int(clauses[i, 3])
        rows.append(row)
    ncols = 3 * n
    top = 0
    for col in range(ncols):
        if top >= m:
            break
        while True:
            piv = -1
            best = 0
            for r in range(top, m):
                v = abs(rows[r][col])
                if v and (piv < 0 or v < best):
                    piv, best = r, v
            if piv < 0:
                break
            rows[top], rows[piv] = rows[piv], rows[top]
            pval = rows[top][col]
            clean = True
            for r in range(top + 1, m):
                v = rows[r][col]
                if v:
                    q = v // pval
                    rr, rs = rows[r], rows[top]
                    for j in range(col, ncols + 1):
                        rr[j] -= q * rs[j]
                    if rr[col]:
                        clean = False
            if clean:
                break
        if rows[top][col]:
            top += 1
    return all(rows[r][ncols] % 2 == 0 for r in range(top, m))


def classify_flags(clauses, n):
    """Exact (q_perfect, c_perfect) for an (m, 4) clause array."""
    clauses = np.ascontiguousarray(clauses, dtype=np.int64)
    m = clauses.shape[0]
    rank2, consistent = _gf2_rank_consistent(
        clauses[:, :3], clauses[:, 3], n
    )
    if consistent:
        return True, True
    h = _dense_system(clauses, n)
    status, r2, _, odd = _padic_eliminate(
        h, 3 * n, uint64(0), uint64(2), 0.0, _TWO_ADIC_BUDGET
    )
    if status == 0:
        if odd == 0:
            return True, False
        if rank2 == r2:
            return False, False
        # Certify rank(gamma) <= r2 via odd prime-power passes.
        need = _LOG2_3 * (r2 + 1) / 2.0
        acc = 0.0
        for p, k in _ODD_PRIME_POWERS:
            pk = p**k
            hp = _dense_system(clauses, n)
            st, rp, ep, _ = _padic_eliminate(
                hp, 3 * n, uint64(pk), uint64(p), 1.0 / pk, k - 2
            )
            if st == 0 and rp <= r2:
                acc += (k - ep) * math.log2(p)
                if acc > need:
                    return False, False
    return _bigint_q_flag(clauses, n), False
