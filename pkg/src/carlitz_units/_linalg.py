"""Exact integer/rational linear algebra: xgcd, HNF, SNF, determinants.

Everything here works over Python ints (arbitrary precision) or Fractions;
numpy int64 is used as a fast path with explicit overflow guards.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_INT64_GUARD = 1 << 60


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class _RowHNF:
    """Incremental row-style Hermite normal form.

    Rows are inserted one at a time and reduced against the current pivot
    rows by exact gcd row operations.  Entries are kept small by immediate
    reduction, with numpy int64 vector ops guarded against overflow (rows
    fall back to Python-int lists when a combination could exceed int64).
    """

    def __init__(self, ncols: int):
        self.n = ncols
        self.pivot_rows: dict[int, object] = {}  # col -> row (np array or list)

    @staticmethod
    def _maxabs(row) -> int:
        if isinstance(row, np.ndarray):
            return int(np.abs(row).max(initial=0))
        return max((abs(x) for x in row), default=0)

    def _combine(self, a, row1, b, row2):
        # a*row1 + b*row2 with overflow-aware dispatch
        m = max(abs(a), 1) * self._maxabs(row1) + max(abs(b), 1) * self._maxabs(row2)
        if (
            isinstance(row1, np.ndarray)
            and isinstance(row2, np.ndarray)
            and m < _INT64_GUARD
        ):
            return a * row1 + b * row2
        l1 = row1.tolist() if isinstance(row1, np.ndarray) else row1
        l2 = row2.tolist() if isinstance(row2, np.ndarray) else row2
        return [a * x + b * y for x, y in zip(l1, l2)]

    def insert(self, row) -> None:
        if isinstance(row, np.ndarray):
            row = row.astype(np.int64) if self._maxabs(row) < _INT64_GUARD else row.tolist()
        else:
            m = max((abs(x) for x in row), default=0)
            row = np.asarray(row, dtype=np.int64) if m < _INT64_GUARD else list(row)
        for c in range(self.n):
            rc = int(row[c])
            if rc == 0:
                continue
            if c not in self.pivot_rows:
                if rc < 0:
                    row = self._combine(-1, row, 0, row)
                self.pivot_rows[c] = row
                return
            piv = self.pivot_rows[c]
            pc = int(piv[c])
            if rc % pc == 0:
                row = self._combine(1, row, -(rc // pc), piv)
            else:
                g, x, y = xgcd(pc, rc)
                new_piv = self._combine(x, piv, y, row)
                row = self._combine(-(rc // g), piv, pc // g, row)
                self.pivot_rows[c] = new_piv
        # fully reduced to zero: nothing to insert

    def contains(self, row) -> bool:
        """Membership test without mutating the accumulated lattice."""
        row = list(row)
        for c in range(self.n):
            if row[c] == 0:
                continue
            if c not in self.pivot_rows:
                return False
            piv = self.pivot_rows[c]
            pc = int(piv[c])
            if row[c] % pc != 0:
                return False
            q = row[c] // pc
            pl = piv.tolist() if isinstance(piv, np.ndarray) else piv
            row = [x - q * y for x, y in zip(row, pl)]
        return True

    def basis(self) -> list[list[int]]:
        """Echelon basis rows (sorted by pivot column), entries as ints."""
        rows = []
        for c in sorted(self.pivot_rows):
            r = self.pivot_rows[c]
            rows.append([int(x) for x in (r.tolist() if isinstance(r, np.ndarray) else r)])
        return rows

    def reduce_off_diagonal(self) -> None:
        """Normalize entries above each pivot into [0, pivot)."""
        cols = sorted(self.pivot_rows)
        for i, c in enumerate(cols):
            piv = self.pivot_rows[c]
            pl = piv.tolist() if isinstance(piv, np.ndarray) else list(piv)
            pc = pl[c]
            for c2 in cols[:i]:
                upper = self.pivot_rows[c2]
                ul = upper.tolist() if isinstance(upper, np.ndarray) else list(upper)
                q = ul[c] // pc
                if q:
                    self.pivot_rows[c2] = [x - q * y for x, y in zip(ul, pl)]


def hnf_basis(rows) -> list[list[int]]:
    """Row-echelon (HNF) basis of the integer lattice spanned by `rows`."""
    rows = list(rows)
    if not rows:
        return []
    h = _RowHNF(len(rows[0]))
    for r in rows:
        h.insert(r)
    h.reduce_off_diagonal()
    return h.basis()


def det_upper_triangular(basis: list[list[int]]) -> int:
    """Product of pivots of a full-rank echelon basis (0 if rank-deficient)."""
    if not basis:
        return 1
    n = len(basis[0])
    if len(basis) < n:
        return 0
    d = 1
    for i, row in enumerate(basis):
        piv = next((j for j, x in enumerate(row) if x != 0), None)
        if piv is None:
            return 0
        d *= row[piv]
    return abs(d)


def bareiss_det(mat: list[list[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    a = [list(map(int, row)) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = (akk * ai[j] - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def snf_diagonal(mat: list[list[int]]) -> list[int]:
    """Nonnegative diagonal of the Smith normal form of an integer matrix."""
    d, _, _ = snf_with_transform(mat, want_transforms=False)
    return d


def snf_with_transform(mat, want_transforms: bool = True):
    """Smith normal form D = U*A*V of an integer matrix A.

    Returns (diag, U, V) where diag is the list of diagonal entries
    d_1 | d_2 | ... (zeros last).  U, V are unimodular (None when
    want_transforms is False).
    """
    a = [list(map(int, row)) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if want_transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if want_transforms else None

    def row_op(i, j, u0, u1, v0, v1):
        # (row_i, row_j) <- (u0*row_i + u1*row_j, v0*row_i + v1*row_j)
        a[i], a[j] = (
            [u0 * x + u1 * y for x, y in zip(a[i], a[j])],
            [v0 * x + v1 * y for x, y in zip(a[i], a[j])],
        )
        if U is not None:
            U[i], U[j] = (
                [u0 * x + u1 * y for x, y in zip(U[i], U[j])],
                [v0 * x + v1 * y for x, y in zip(U[i], U[j])],
            )

    def col_op(i, j, u0, u1, v0, v1):
        for row in a:
            row[i], row[j] = u0 * row[i] + u1 * row[j], v0 * row[i] + v1 * row[j]
        if V is not None:
            for row in V:
                row[i], row[j] = u0 * row[i] + u1 * row[j], v0 * row[i] + v1 * row[j]

    t = 0
    while t < min(m, n):
        # move a nonzero pivot to (t, t)
        piv = next(
            ((i, j) for j in range(t, n) for i in range(t, m) if a[i][j] != 0), None
        )
        if piv is None:
            break
        i0, j0 = piv
        if i0 != t:
            row_op(t, i0, 0, 1, 1, 0)
        if j0 != t:
            col_op(t, j0, 0, 1, 1, 0)
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    g, x, y = xgcd(a[t][t], a[i][t])
                    p, q = a[t][t] // g, a[i][t] // g
                    row_op(t, i, x, y, -q, p)
                    dirty = True
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    g, x, y = xgcd(a[t][t], a[t][j])
                    p, q = a[t][t] // g, a[t][j] // g
                    col_op(t, j, x, y, -q, p)
                    dirty = True
            if not dirty:
                break
        t += 1

    # enforce divisibility chain
    k = min(m, n)
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if dj % di != 0 if di != 0 else dj != 0:
                # fold d_{i+1} into column i and redo the 2x2 block
                col_op(i, i + 1, 1, 1, 0, 1)
                g, x, y = xgcd(a[i][i], a[i + 1][i])
                p, q = a[i][i] // g, a[i + 1][i] // g
                row_op(i, i + 1, x, y, -q, p)
                # clear the off-diagonal fill-in
                if a[i][i + 1] != 0:
                    gg, xx, yy = xgcd(a[i][i], a[i][i + 1])
                    pp, qq = a[i][i] // gg, a[i][i + 1] // gg
                    col_op(i, i + 1, xx, yy, -qq, pp)
                changed = True
    diag = [abs(a[i][i]) for i in range(k)]
    if U is not None:
        # fix signs so that U*A*V has the nonnegative diagonal we report
        for i in range(k):
            if a[i][i] < 0:
                for j in range(m):
                    U[i][j] = -U[i][j]
    return diag, U, V


def invert_unimodular(u: list[list[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix (det = ±1)."""
    n = len(u)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(u)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    inv = [[x for x in row[n:]] for row in aug]
    out = [[int(x) for x in row] for row in inv]
    assert all(Fraction(out[i][j]) == inv[i][j] for i in range(n) for j in range(n))
    return out


def solve_fraction_system(a: list[list[Fraction]], b: list[Fraction]):
    """Solve a*x = b exactly; returns None when inconsistent.

    `a` is m x n with m >= n allowed; the system must determine x uniquely
    on the span (extra rows are consistency-checked).
    """
    m, n = len(a), len(a[0]) if a else 0
    rows = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(a, b)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if rows[i][n] != 0:
            return None
    if len(pivots) < n:
        return None  # underdetermined
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return x
