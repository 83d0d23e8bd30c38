"""Exact integer and GF(2) matrix kernels.

Everything here works on plain Python ints so intermediate values can grow
without overflow; numpy arrays are accepted at the boundary and converted.
The Smith normal form routine keeps the full transform pair (and the inverse
of the left transform) so that integer linear systems A x = b can be solved
exactly afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInconsistencyError


def _as_int_rows(matrix) -> list[list[int]]:
    """Copy ``matrix`` (numpy array or nested sequence) into int lists."""
    rows = []
    for row in matrix:
        out = []
        for x in row:
            v = int(x)
            if v != x:
                raise ValueError(f"non-integer entry {x!r}")
            out.append(v)
        rows.append(out)
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
    return rows


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@dataclass
class SmithDecomposition:
    """Result of ``smith_normal_form``: U @ A @ V == D.

    U and V are square unimodular (|det| = 1); D is diagonal with
    nonnegative entries, each dividing the next.  ``uinv`` is the exact
    inverse of U, kept so solvers can reconstruct solutions without a
    separate inversion pass.
    """

    U: list[list[int]]
    D: list[list[int]]
    V: list[list[int]]
    uinv: list[list[int]]

    @property
    def diagonal(self) -> list[int]:
        n = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(n)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d != 0]


def _min_abs_position(A, start: int) -> tuple[int, int] | None:
    """Smallest nonzero |entry| in A[start:, start:], rows scanned first."""
    best = None
    best_val = None
    for i in range(start, len(A)):
        row = A[i]
        for j in range(start, len(row)):
            v = row[j]
            if v != 0:
                a = -v if v < 0 else v
                if best_val is None or a < best_val:
                    best, best_val = (i, j), a
                    if a == 1:
                        return best
    return best


class _Reducer:
    """Shared row/column reduction driver.

    Tracking of the transform matrices is optional so homology rank
    computations can skip the (substantial) bookkeeping cost.
    """

    def __init__(self, matrix, track: bool):
        self.A = _as_int_rows(matrix)
        self.m = len(self.A)
        self.n = len(self.A[0]) if self.A else 0
        self.track = track
        if track:
            self.U = _identity(self.m)
            self.uinv = _identity(self.m)
            self.V = _identity(self.n)

    # Row operations mirror onto U (left transform); the inverse gets the
    # inverse column operation so U @ uinv stays the identity throughout.
    def swap_rows(self, i, j):
        if i == j:
            return
        self.A[i], self.A[j] = self.A[j], self.A[i]
        if self.track:
            self.U[i], self.U[j] = self.U[j], self.U[i]
            for row in self.uinv:
                row[i], row[j] = row[j], row[i]

    def add_row(self, dst, src, k):
        if k == 0:
            return
        a_dst, a_src = self.A[dst], self.A[src]
        for idx in range(self.n):
            a_dst[idx] += k * a_src[idx]
        if self.track:
            u_dst, u_src = self.U[dst], self.U[src]
            for idx in range(self.m):
                u_dst[idx] += k * u_src[idx]
            for row in self.uinv:
                row[src] -= k * row[dst]

    def negate_row(self, i):
        self.A[i] = [-x for x in self.A[i]]
        if self.track:
            self.U[i] = [-x for x in self.U[i]]
            for row in self.uinv:
                row[i] = -row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.A:
            row[i], row[j] = row[j], row[i]
        if self.track:
            for row in self.V:
                row[i], row[j] = row[j], row[i]

    def add_col(self, dst, src, k):
        if k == 0:
            return
        for row in self.A:
            row[dst] += k * row[src]
        if self.track:
            for row in self.V:
                row[dst] += k * row[src]

    def reduce(self) -> None:
        """Diagonalize A in place with the divisibility chain."""
        A = self.A
        s = 0
        limit = min(self.m, self.n)
        while s < limit:
            pos = _min_abs_position(A, s)
            if pos is None:
                break
            self.swap_rows(s, pos[0])
            self.swap_cols(s, pos[1])
            # Euclidean sweeps: clear column s and row s; every remainder
            # round strictly shrinks |pivot| so this terminates.
            while True:
                pivot = A[s][s]
                dirty = False
                for i in range(s + 1, self.m):
                    if A[i][s] != 0:
                        q = A[i][s] // pivot
                        self.add_row(i, s, -q)
                        if A[i][s] != 0:
                            dirty = True
                for j in range(s + 1, self.n):
                    if A[s][j] != 0:
                        q = A[s][j] // pivot
                        self.add_col(j, s, -q)
                        if A[s][j] != 0:
                            dirty = True
                if not dirty:
                    break
                pos = _min_abs_position(A, s)
                self.swap_rows(s, pos[0])
                self.swap_cols(s, pos[1])
            # Enforce divisibility: pivot must divide the whole tail block.
            pivot = A[s][s]
            offender = None
            for i in range(s + 1, self.m):
                row = A[i]
                for j in range(s + 1, self.n):
                    if row[j] % pivot != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is not None:
                self.add_row(s, offender, 1)
                continue
            if pivot < 0:
                self.negate_row(s)
            s += 1


def smith_normal_form(matrix) -> SmithDecomposition:
    """Smith normal form with transforms: U @ A @ V == D.

    Pivot selection takes the smallest nonzero absolute value in the
    working block, scanning rows before columns, which keeps entry growth
    modest on sparse incidence matrices.
    """
    red = _Reducer(matrix, track=True)
    red.reduce()
    return SmithDecomposition(U=red.U, D=red.A, V=red.V, uinv=red.uinv)


def smith_diagonal(matrix) -> list[int]:
    """Diagonal of the Smith form only (no transform tracking)."""
    red = _Reducer(matrix, track=False)
    red.reduce()
    n = min(red.m, red.n)
    return [red.A[i][i] for i in range(n)]


def integer_rank(matrix) -> int:
    return sum(1 for d in smith_diagonal(matrix) if d != 0)


def exact_determinant(matrix) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    A = _as_int_rows(matrix)
    n = len(A)
    if n == 0:
        return 1
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def matmul_int(A, B) -> list[list[int]]:
    """Exact product of two int-list matrices."""
    if not A:
        return []
    inner = len(B)
    width = len(B[0]) if B else 0
    out = []
    for row in A:
        if len(row) != inner:
            raise ValueError("shape mismatch")
        new = [0] * width
        for k, a in enumerate(row):
            if a == 0:
                continue
            brow = B[k]
            for j in range(width):
                b = brow[j]
                if b:
                    new[j] += a * b
        out.append(new)
    return out


def solve_integer(matrix, rhs: list[int]) -> list[int] | None:
    """One integer solution x of A x = b, or None when unsolvable.

    Uses the Smith decomposition: with U A V = D the system becomes
    D y = U b, solvable iff each pivot divides its target and the
    rank-excess entries of U b vanish.
    """
    snf = smith_normal_form(matrix)
    m = len(snf.U)
    n = len(snf.V)
    if len(rhs) != m:
        raise ValueError("rhs length mismatch")
    ub = [sum(snf.U[i][k] * rhs[k] for k in range(m)) for i in range(m)]
    diag = snf.diagonal
    y = [0] * n
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d != 0:
                return None
            if i < n:
                y[i] = ub[i] // d
    x = [sum(snf.V[i][k] * y[k] for k in range(n)) for i in range(n)]
    return x


def verify_decomposition(matrix, snf: SmithDecomposition) -> bool:
    """Check U A V == D and that U, V are unimodular."""
    A = _as_int_rows(matrix)
    lhs = matmul_int(matmul_int(snf.U, A), snf.V)
    if lhs != snf.D:
        return False
    if abs(exact_determinant(snf.U)) != 1:
        return False
    if abs(exact_determinant(snf.V)) != 1:
        return False
    ident = _identity(len(snf.U))
    return matmul_int(snf.U, snf.uinv) == ident


def require_consistent(snf: SmithDecomposition, matrix) -> None:
    if not verify_decomposition(matrix, snf):
        raise InternalInconsistencyError("Smith decomposition failed self-check")


# ---------------------------------------------------------------------------
# GF(2) kernels: rows are stored as Python ints used as bit masks.

def gf2_rows(matrix) -> list[int]:
    rows = []
    for row in matrix:
        bits = 0
        for j, x in enumerate(row):
            if int(x) & 1:
                bits |= 1 << j
        rows.append(bits)
    return rows


def gf2_rank(matrix) -> int:
    rows = [r for r in gf2_rows(matrix) if r]
    rank = 0
    while rows:
        pivot_row = min(rows, key=lambda r: r.bit_length())
        pivot_bit = pivot_row & -pivot_row
        rank += 1
        nxt = []
        for r in rows:
            if r is pivot_row:
                continue
            if r & pivot_bit:
                r ^= pivot_row
            if r:
                nxt.append(r)
        rows = nxt
    return rank


def gf2_solve(matrix, rhs) -> list[int] | None:
    """Solve A x = b over GF(2); returns a 0/1 list or None.

    ``matrix`` is m x n (any integer entries, reduced mod 2), ``rhs`` a
    length-m 0/1 sequence.
    """
    rows = gf2_rows(matrix)
    m = len(rows)
    n = max((len(r) for r in matrix), default=0) if matrix else 0
    work = [rows[i] | ((int(rhs[i]) & 1) << n) for i in range(m)]
    pivots: list[tuple[int, int]] = []
    for col in range(n):
        bit = 1 << col
        pivot_idx = None
        for i in range(len(pivots), m):
            if work[i] & bit:
                pivot_idx = i
                break
        if pivot_idx is None:
            continue
        work[len(pivots)], work[pivot_idx] = work[pivot_idx], work[len(pivots)]
        prow = work[len(pivots)]
        for i in range(m):
            if i != len(pivots) and work[i] & bit:
                work[i] ^= prow
        pivots.append((col, len(pivots)))
    for i in range(len(pivots), m):
        if work[i] >> n:
            return None
    x = [0] * n
    for col, row_idx in pivots:
        x[col] = (work[row_idx] >> n) & 1
    return x
