"""Exact integer matrix algebra.

Everything downstream (homology, kernels, inverse limits) reduces to Smith
normal form over the integers, so this module keeps the full transform data:
``smith_decomposition(m)`` returns U, D, V together with their integer
inverses, maintained incrementally so no unimodular matrix is ever inverted
after the fact.

Pivoting picks the nonzero entry of smallest absolute value and reduces by
gcd steps, which keeps intermediate entries small; all arithmetic is on
Python ints, so overflow is not a concern.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolation


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InvariantViolation("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise InvariantViolation(
                "entry count %d does not match %dx%d"
                % (len(self.entries), self.rows, self.cols)
            )
        for e in self.entries:
            if not isinstance(e, int):
                raise InvariantViolation("matrix entries must be integers", witness=e)

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != m:
                raise InvariantViolation("ragged rows")
        return cls(n, m, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def from_columns(cls, cols, rows=None):
        cols = [list(c) for c in cols]
        if rows is None:
            if not cols:
                raise InvariantViolation("row count needed for a matrix with no columns")
            rows = len(cols[0])
        for c in cols:
            if len(c) != rows:
                raise InvariantViolation("ragged columns")
        return cls(rows, len(cols), tuple(cols[j][i] for i in range(rows) for j in range(len(cols))))

    @classmethod
    def diagonal(cls, diag, rows=None, cols=None):
        diag = list(diag)
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        return cls(rows, cols, tuple(
            diag[i] if i == j and i < len(diag) else 0
            for i in range(rows) for j in range(cols)
        ))

    def entry(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self):
        return IntMatrix(self.cols, self.rows, tuple(
            self.entries[i * self.cols + j]
            for j in range(self.cols) for i in range(self.rows)
        ))

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise InvariantViolation("dimension mismatch in matrix product")
            a, b = self.to_rows(), other.to_rows()
            out = []
            for i in range(self.rows):
                ai = a[i]
                row = [0] * other.cols
                for k in range(self.cols):
                    x = ai[k]
                    if x:
                        bk = b[k]
                        for j in range(other.cols):
                            row[j] += x * bk[j]
                out.append(row)
            return IntMatrix.from_rows(out) if out else IntMatrix.zero(0, other.cols)
        return NotImplemented

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise InvariantViolation("dimension mismatch in matrix sum")
        return IntMatrix(self.rows, self.cols,
                         tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise InvariantViolation("dimension mismatch in matrix difference")
        return IntMatrix(self.rows, self.cols,
                         tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def scale(self, c):
        return IntMatrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def apply(self, vec):
        """Matrix-vector product as a list of ints."""
        vec = list(vec)
        if len(vec) != self.cols:
            raise InvariantViolation("vector length mismatch")
        return [sum(self.entry(i, j) * vec[j] for j in range(self.cols))
                for i in range(self.rows)]

    def is_zero(self):
        return all(x == 0 for x in self.entries)

    def is_identity(self):
        return self.rows == self.cols and all(
            self.entry(i, j) == (1 if i == j else 0)
            for i in range(self.rows) for j in range(self.cols)
        )

    def select_columns(self, indices):
        return IntMatrix(self.rows, len(indices), tuple(
            self.entry(i, j) for i in range(self.rows) for j in indices
        ))

    def select_rows(self, indices):
        return IntMatrix(len(indices), self.cols, tuple(
            self.entry(i, j) for i in indices for j in range(self.cols)
        ))


def hstack(a, b):
    if a.rows != b.rows:
        raise InvariantViolation("hstack row mismatch")
    rows = [a.row(i) + b.row(i) for i in range(a.rows)]
    if not rows:
        return IntMatrix.zero(0, a.cols + b.cols)
    return IntMatrix.from_rows(rows)


def vstack(a, b):
    if a.cols != b.cols:
        raise InvariantViolation("vstack column mismatch")
    return IntMatrix(a.rows + b.rows, a.cols, a.entries + b.entries)


def block_diagonal(blocks):
    blocks = list(blocks)
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r = c = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r + i][c + j] = b.entry(i, j)
        r += b.rows
        c += b.cols
    return IntMatrix.from_rows(out) if rows else IntMatrix.zero(0, cols)


@dataclass(frozen=True)
class SmithDecomposition:
    """U*m*V = D with U, V unimodular; inverses carried along."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix

    @property
    def diagonal(self):
        n = min(self.d.rows, self.d.cols)
        return [self.d.entry(i, i) for i in range(n)]

    @property
    def rank(self):
        return sum(1 for x in self.diagonal if x != 0)


class _Worker:
    """Mutable state for the SNF elimination."""

    def __init__(self, m):
        self.r, self.c = m.rows, m.cols
        self.d = m.to_rows()
        self.u = IntMatrix.identity(self.r).to_rows()
        self.uinv = IntMatrix.identity(self.r).to_rows()
        self.v = IntMatrix.identity(self.c).to_rows()
        self.vinv = IntMatrix.identity(self.c).to_rows()

    # Row op L applied on the left: u' = L u, uinv' = uinv L^-1.
    def swap_rows(self, i, j):
        if i == j:
            return
        self.d[i], self.d[j] = self.d[j], self.d[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]
        for row in self.uinv:
            row[i], row[j] = row[j], row[i]

    def add_row(self, i, j, k):
        # row i += k * row j
        if k == 0:
            return
        di, dj = self.d[i], self.d[j]
        for t in range(self.c):
            di[t] += k * dj[t]
        ui, uj = self.u[i], self.u[j]
        for t in range(self.r):
            ui[t] += k * uj[t]
        for row in self.uinv:
            row[j] -= k * row[i]

    def negate_row(self, i):
        self.d[i] = [-x for x in self.d[i]]
        self.u[i] = [-x for x in self.u[i]]
        for row in self.uinv:
            row[i] = -row[i]

    # Column op R applied on the right: v' = v R, vinv' = R^-1 vinv.
    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.d:
            row[i], row[j] = row[j], row[i]
        for row in self.v:
            row[i], row[j] = row[j], row[i]
        self.vinv[i], self.vinv[j] = self.vinv[j], self.vinv[i]

    def add_col(self, j, i, k):
        # col j += k * col i
        if k == 0:
            return
        for row in self.d:
            row[j] += k * row[i]
        for row in self.v:
            row[j] += k * row[i]
        vi, vj = self.vinv[i], self.vinv[j]
        for t in range(self.c):
            vi[t] -= k * vj[t]


def smith_decomposition(m):
    """Full SNF data for an integer matrix."""
    w = _Worker(m)
    r, c = w.r, w.c
    t = 0
    while True:
        # locate the smallest nonzero entry of the trailing block
        best = None
        for i in range(t, r):
            row = w.d[i]
            for j in range(t, c):
                x = row[j]
                if x != 0 and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        w.swap_rows(t, best[1])
        w.swap_cols(t, best[2])

        while True:
            # clear column t by gcd steps
            changed = True
            while changed:
                changed = False
                for i in range(t + 1, r):
                    if w.d[i][t]:
                        q = w.d[i][t] // w.d[t][t]
                        w.add_row(i, t, -q)
                        if w.d[i][t]:
                            w.swap_rows(t, i)
                            changed = True
            # clear row t by gcd steps
            changed = True
            while changed:
                changed = False
                for j in range(t + 1, c):
                    if w.d[t][j]:
                        q = w.d[t][j] // w.d[t][t]
                        w.add_col(j, t, -q)
                        if w.d[t][j]:
                            w.swap_cols(t, j)
                            changed = True
            if all(w.d[i][t] == 0 for i in range(t + 1, r)):
                # pivot must also divide the trailing block for the chain d1|d2|...
                pivot = w.d[t][t]
                bad = None
                for i in range(t + 1, r):
                    for j in range(t + 1, c):
                        if w.d[i][j] % pivot:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                w.add_row(t, bad, 1)
        if w.d[t][t] < 0:
            w.negate_row(t)
        t += 1
        if t >= min(r, c):
            # remaining block, if any, must still be processed for nonzero
            # entries outside the square range; it cannot exist since t hit
            # the smaller dimension and elimination cleared cross terms.
            break
    u = IntMatrix.from_rows(w.u) if r else IntMatrix.zero(0, 0)
    v = IntMatrix.from_rows(w.v) if c else IntMatrix.zero(0, 0)
    uinv = IntMatrix.from_rows(w.uinv) if r else IntMatrix.zero(0, 0)
    vinv = IntMatrix.from_rows(w.vinv) if c else IntMatrix.zero(0, 0)
    d = IntMatrix.from_rows(w.d) if r else IntMatrix.zero(0, c)
    return SmithDecomposition(u, d, v, uinv, vinv)


def smith_normal_form(m):
    """(U, D, V) with U*m*V = D diagonal, d_i | d_{i+1}, U and V unimodular."""
    s = smith_decomposition(m)
    return s.u, s.d, s.v


def kernel_basis(m):
    """Columns form a basis of the integer kernel lattice {x : m x = 0}."""
    s = smith_decomposition(m)
    return s.v.select_columns(list(range(s.rank, m.cols)))


def solve_int(m, b, decomposition=None):
    """One integer solution of m x = b, or None."""
    s = decomposition or smith_decomposition(m)
    y = s.u.apply(b)
    diag = s.diagonal
    z = [0] * m.cols
    for i in range(m.rows):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if y[i] != 0:
                return None
        else:
            if y[i] % di:
                return None
            z[i] = y[i] // di
    return s.v.apply(z)


def solve_mod(m, rels, b, decomposition=None):
    """One integer x with m x = b modulo the column span of rels, or None."""
    full = hstack(m, rels)
    x = solve_int(full, b, decomposition)
    if x is None:
        return None
    return x[:m.cols]


def in_column_span(m, b, decomposition=None):
    return solve_int(m, b, decomposition) is not None


def lattice_basis(gens):
    """Independent columns spanning the same lattice as the columns of gens.

    Signs are normalized so each basis column's first nonzero entry is
    positive.
    """
    s = smith_decomposition(gens)
    cols = []
    for i in range(s.rank):
        col = [s.d.entry(i, i) * s.u_inv.entry(r, i) for r in range(gens.rows)]
        for x in col:
            if x:
                if x < 0:
                    col = [-y for y in col]
                break
        cols.append(col)
    return IntMatrix.from_columns(cols, rows=gens.rows)


def solve_rational(rows, rhs):
    """Solve an exact rational linear system given as row lists.

    Returns one solution (list of Fractions) of A x = b or None when
    inconsistent; free variables are set to 0.
    """
    n = len(rows)
    m = len(rows[0]) if n else 0
    a = [[Fraction(x) for x in r] + [Fraction(v)] for r, v in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if a[i][m]:
            return None
    x = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        x[c] = a[i][m]
    return x
