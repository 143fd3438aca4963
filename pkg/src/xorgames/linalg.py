"""Exact integer and rational linear algebra.

Row-style Hermite Normal Form with a unimodular certificate, Smith Normal
Form with certificates on both sides, GF(2) elimination, and rational
staircase solves.  Everything here runs on arbitrary-precision Python ints
and Fractions; no floats anywhere (intermediate normal-form entries can grow
far past machine width).
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotStaircase


class IntMatrix:
    """Dense matrix of arbitrary-precision integers."""

    def __init__(self, data):
        self.data = [[int(v) for v in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.rows else 0
        for row in self.data:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged rows")

    @classmethod
    def identity(cls, k):
        return cls([[1 if i == j else 0 for j in range(k)] for i in range(k)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)])

    def copy(self):
        return IntMatrix(self.data)

    def column(self, j):
        return [row[j] for row in self.data]

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.data == other.data

    def __repr__(self):
        return f"IntMatrix({self.data!r})"


def mat_mul(a, b):
    if a.cols != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.cols} times {b.rows}x{b.cols}")
    bt = list(zip(*b.data)) if b.rows else []
    return IntMatrix(
        [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a.data]
    )


def mat_vec(a, v):
    if a.cols != len(v):
        raise DimensionMismatch(f"{a.rows}x{a.cols} times length-{len(v)}")
    return [sum(x * y for x, y in zip(row, v)) for row in a.data]


def transpose(a):
    return IntMatrix(list(zip(*a.data))) if a.rows else IntMatrix.zeros(0, 0)


def augment(a, v):
    if a.rows != len(v):
        raise DimensionMismatch("column length mismatch")
    return IntMatrix([row + [x] for row, x in zip(a.data, v)])


def determinant(a):
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise DimensionMismatch("determinant of non-square matrix")
    k = a.rows
    if k == 0:
        return 1
    m = [row[:] for row in a.data]
    sign = 1
    prev = 1
    for t in range(k - 1):
        if m[t][t] == 0:
            piv = next((r for r in range(t + 1, k) if m[r][t] != 0), None)
            if piv is None:
                return 0
            m[t], m[piv] = m[piv], m[t]
            sign = -sign
        for r in range(t + 1, k):
            for c in range(t + 1, k):
                m[r][c] = (m[r][c] * m[t][t] - m[r][t] * m[t][c]) // prev
            m[r][t] = 0
        prev = m[t][t]
    return sign * m[k - 1][k - 1]


@dataclass(frozen=True)
class HnfResult:
    """Row-style Hermite decomposition M = omega . h.

    omega is unimodular; h has its zero rows at the bottom, strictly
    increasing pivot columns, positive pivots, and entries above each pivot
    reduced into [0, pivot).
    """

    omega: IntMatrix
    h: IntMatrix


@dataclass(frozen=True)
class SnfResult:
    """Smith decomposition M = omega . d . psi with unimodular certificates.

    d is diagonal with nonnegative invariants d_1 | d_2 | ... ; omega_inv and
    psi_inv are the exact inverses, tracked during reduction because the
    classifiers consume them directly.
    """

    omega: IntMatrix
    d: IntMatrix
    psi: IntMatrix
    omega_inv: IntMatrix
    psi_inv: IntMatrix


def _row_sub(work, cert, target, source, q, cert_inv=None):
    # Row op r_target -= q * r_source on `work`; certificate keeps
    # M = cert * work, so cert absorbs the inverse op on columns, and
    # cert_inv (if tracked) takes the same row op as `work`.
    if q == 0:
        return
    wt, ws = work[target], work[source]
    for j in range(len(wt)):
        wt[j] -= q * ws[j]
    for row in cert:
        row[source] += q * row[target]
    if cert_inv is not None:
        it, isrc = cert_inv[target], cert_inv[source]
        for j in range(len(it)):
            it[j] -= q * isrc[j]


def _row_swap(work, cert, a, b, cert_inv=None):
    work[a], work[b] = work[b], work[a]
    for row in cert:
        row[a], row[b] = row[b], row[a]
    if cert_inv is not None:
        cert_inv[a], cert_inv[b] = cert_inv[b], cert_inv[a]


def _row_neg(work, cert, a, cert_inv=None):
    work[a] = [-v for v in work[a]]
    for row in cert:
        row[a] = -row[a]
    if cert_inv is not None:
        cert_inv[a] = [-v for v in cert_inv[a]]


def hnf(m):
    """Row Hermite Normal Form with unimodular certificate, M = omega . h."""
    work = [row[:] for row in m.data]
    omega = [row[:] for row in IntMatrix.identity(m.rows).data]
    row = 0
    for col in range(m.cols):
        if row >= m.rows:
            break
        while True:
            piv = -1
            best = 0
            for r in range(row, m.rows):
                v = abs(work[r][col])
                if v and (piv < 0 or v < best):
                    piv, best = r, v
            if piv < 0:
                break
            if piv != row:
                _row_swap(work, omega, row, piv)
            if work[row][col] < 0:
                _row_neg(work, omega, row)
            p = work[row][col]
            clean = True
            for r in range(row + 1, m.rows):
                v = work[r][col]
                if v:
                    _row_sub(work, omega, r, row, v // p)
                    if work[r][col]:
                        clean = False
            if clean:
                break
        if row < m.rows and work[row][col]:
            p = work[row][col]
            for r in range(row):
                _row_sub(work, omega, r, row, work[r][col] // p)
            row += 1
    return HnfResult(omega=IntMatrix(omega), h=IntMatrix(work))


def snf(m):
    """Smith Normal Form with certificates, M = omega . d . psi."""
    d1, d2 = m.rows, m.cols
    work = [row[:] for row in m.data]
    omega = [row[:] for row in IntMatrix.identity(d1).data]
    omega_inv = [row[:] for row in IntMatrix.identity(d1).data]
    psi = [row[:] for row in IntMatrix.identity(d2).data]
    psi_inv = [row[:] for row in IntMatrix.identity(d2).data]

    def col_sub(target, source, q):
        # Column op c_target -= q * c_source; psi absorbs the inverse op on
        # rows, psi_inv takes the same column op as `work`.
        if q == 0:
            return
        for row in work:
            row[target] -= q * row[source]
        ps, pt = psi[source], psi[target]
        for j in range(d2):
            ps[j] += q * pt[j]
        for row in psi_inv:
            row[target] -= q * row[source]

    def col_swap(a, b):
        for row in work:
            row[a], row[b] = row[b], row[a]
        psi[a], psi[b] = psi[b], psi[a]
        for row in psi_inv:
            row[a], row[b] = row[b], row[a]

    t = 0
    while t < min(d1, d2):
        piv = None
        best = 0
        for r in range(t, d1):
            for c in range(t, d2):
                v = abs(work[r][c])
                if v and (piv is None or v < best):
                    piv, best = (r, c), v
        if piv is None:
            break
        if piv[0] != t:
            _row_swap(work, omega, t, piv[0], omega_inv)
        if piv[1] != t:
            col_swap(t, piv[1])
        if work[t][t] < 0:
            _row_neg(work, omega, t, omega_inv)
        p = work[t][t]
        again = False
        for r in range(t + 1, d1):
            v = work[r][t]
            if v:
                _row_sub(work, omega, r, t, v // p, omega_inv)
                if work[r][t]:
                    again = True
        for c in range(t + 1, d2):
            v = work[t][c]
            if v:
                col_sub(c, t, v // p)
                if work[t][c]:
                    again = True
        if again:
            continue
        p = work[t][t]
        bad = None
        for r in range(t + 1, d1):
            for c in range(t + 1, d2):
                if work[r][c] % p:
                    bad = r
                    break
            if bad is not None:
                break
        if bad is not None:
            # Fold the offending row into row t so the next pivot pass
            # shrinks the invariant via gcd steps.
            _row_sub(work, omega, t, bad, -1, omega_inv)
            continue
        t += 1
    return SnfResult(
        omega=IntMatrix(omega),
        d=IntMatrix(work),
        psi=IntMatrix(psi),
        omega_inv=IntMatrix(omega_inv),
        psi_inv=IntMatrix(psi_inv),
    )


def solve_mod2(a, b):
    """Solve a . x = b (mod 2); returns a 0/1 list or None if inconsistent.

    Rows are packed into Python int bitsets with the right-hand side as the
    top bit, then eliminated.
    """
    rows = a.rows if isinstance(a, IntMatrix) else len(a)
    data = a.data if isinstance(a, IntMatrix) else a
    if len(b) != rows:
        raise DimensionMismatch(f"{rows} rows vs length-{len(b)} rhs")
    cols = len(data[0]) if rows else 0
    packed = []
    for row, rhs in zip(data, b):
        bits = 0
        for j, v in enumerate(row):
            if v & 1:
                bits |= 1 << j
        if rhs & 1:
            bits |= 1 << cols
        packed.append(bits)
    pivots = []
    rank = 0
    for col in range(cols):
        mask = 1 << col
        piv = next((r for r in range(rank, len(packed)) if packed[r] & mask), None)
        if piv is None:
            continue
        packed[rank], packed[piv] = packed[piv], packed[rank]
        for r in range(len(packed)):
            if r != rank and packed[r] & mask:
                packed[r] ^= packed[rank]
        pivots.append(col)
        rank += 1
    rhs_mask = 1 << cols
    for r in range(rank, len(packed)):
        if packed[r] & rhs_mask:
            return None
    x = [0] * cols
    for r, col in enumerate(pivots):
        if packed[r] & rhs_mask:
            x[col] = 1
    return x


def solve_triangular_rational(r, b):
    """Solve r . z = b exactly over the rationals for a staircase matrix.

    r must have a pivot in every row with strictly increasing pivot columns.
    Free variables are set to 0, then every entry is canonicalized into
    [0, 2) so solutions equal mod 2 compare equal.
    """
    if len(b) != r.rows:
        raise DimensionMismatch(f"{r.rows} rows vs length-{len(b)} rhs")
    pivots = []
    last = -1
    for row in r.data:
        col = next((j for j, v in enumerate(row) if v), None)
        if col is None or col <= last:
            raise NotStaircase("need one pivot per row, strictly increasing")
        pivots.append(col)
        last = col
    z = [Fraction(0)] * r.cols
    for i in range(r.rows - 1, -1, -1):
        col = pivots[i]
        acc = Fraction(b[i])
        for j in range(col + 1, r.cols):
            if r.data[i][j]:
                acc -= r.data[i][j] * z[j]
        z[col] = acc / r.data[i][col]
    return [v % 2 for v in z]


def integer_solvable(m, b):
    """Decide whether m . x = b has an integer solution, via SNF.

    With M = omega d psi, solvable iff each (omega_inv . b)_i is divisible
    by d_i, and zero wherever d_i = 0.
    """
    if len(b) != m.rows:
        raise DimensionMismatch(f"{m.rows} rows vs length-{len(b)} rhs")
    res = snf(m)
    t = mat_vec(res.omega_inv, list(b))
    for i, ti in enumerate(t):
        di = res.d[i, i] if i < min(m.rows, m.cols) else 0
        if di == 0:
            if ti != 0:
                return False
        elif ti % di:
            return False
    return True
