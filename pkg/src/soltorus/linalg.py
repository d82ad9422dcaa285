"""Dense exact linear algebra over the scalar fields of the package.

Matrices are lists of row lists.  Entries may be ``Fraction``,
:class:`Cyclotomic` or :class:`SymbolicScalar`; mixed arithmetic is handled by
the scalar types.  Nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import Cyclotomic, SymbolicScalar, is_zero

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(x):
    return Fraction(x) if isinstance(x, int) else x


def zeros(rows: int, cols: int) -> list:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> list:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def shape(A) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def matmul(A, B) -> list:
    if not A:
        return []
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    if A and len(A[0]) != k:
        raise ValueError(f"shape mismatch {len(A)}x{len(A[0])} @ {k}x{m}")
    out = []
    for i in range(n):
        row = [ZERO] * m
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if is_zero(a):
                continue
            Bt = B[t]
            for j in range(m):
                b = Bt[j]
                if not is_zero(b):
                    row[j] = row[j] + a * b
        out.append(row)
    return out


def matvec(A, v) -> list:
    out = []
    for row in A:
        s = ZERO
        for a, x in zip(row, v):
            if not is_zero(a) and not is_zero(x):
                s = s + a * x
        out.append(s)
    return out


def mat_add(A, B) -> list:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B) -> list:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c) -> list:
    c = scalar(c)
    return [[c * a for a in row] for row in A]


def transpose(A) -> list:
    return [list(col) for col in zip(*A)] if A else []


def is_zero_matrix(A) -> bool:
    return all(is_zero(x) for row in A for x in row)


def mat_equal(A, B) -> bool:
    return shape(A) == shape(B) and all(is_zero(a - b) for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def commutator(A, B) -> list:
    return mat_sub(matmul(A, B), matmul(B, A))


def _pivot_cost(x) -> int:
    if isinstance(x, SymbolicScalar):
        return 0 if x.is_constant() else 1 + len(x.num.terms) + len(x.den.terms)
    return 0


def rref(A):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = [[scalar(x) for x in row] for row in A]
    rows, cols = shape(R)
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        cands = [i for i in range(r, rows) if not is_zero(R[i][c])]
        if not cands:
            continue
        p = min(cands, key=lambda i: _pivot_cost(R[i][c]))
        R[r], R[p] = R[p], R[r]
        inv = ONE / R[r][c]
        R[r] = [x * inv if not is_zero(x) else ZERO for x in R[r]]
        for i in range(rows):
            if i != r and not is_zero(R[i][c]):
                f = R[i][c]
                R[i] = [x - f * y if not is_zero(y) else x for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def nullspace(A, ncols: int | None = None) -> list:
    """Basis of {x : A x = 0} as a list of column vectors (lists)."""
    cols = ncols if ncols is not None else (len(A[0]) if A else 0)
    if not A:
        return [[ONE if i == j else ZERO for i in range(cols)] for j in range(cols)]
    R, pivots = rref(A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def solve(A, b):
    """One solution x of A x = b, or None if inconsistent."""
    rows, cols = shape(A)
    aug = [list(A[i]) + [scalar(b[i])] for i in range(rows)]
    R, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [ZERO] * cols
    for i, p in enumerate(pivots):
        x[p] = R[i][cols]
    return x


def inverse(A) -> list:
    n = len(A)
    aug = [list(A[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


class Subspace:
    """Growing subspace of a fixed ambient space kept in reduced echelon form."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list = []
        self.pivots: list = []

    def __len__(self):
        return len(self.rows)

    def is_full(self) -> bool:
        return len(self.rows) == self.dim

    def reduce(self, v) -> list:
        v = [scalar(x) for x in v]
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if not is_zero(c):
                v = [x - c * y if not is_zero(y) else x for x, y in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return all(is_zero(x) for x in self.reduce(v))

    def add(self, v) -> bool:
        """Insert v; return True if the subspace grew."""
        if self.is_full():
            return False
        w = self.reduce(v)
        nz = [i for i, x in enumerate(w) if not is_zero(x)]
        if not nz:
            return False
        p = min(nz, key=lambda i: (_pivot_cost(w[i]), i))
        inv = ONE / w[p]
        w = [x * inv if not is_zero(x) else ZERO for x in w]
        new_rows = []
        for row in self.rows:
            c = row[p]
            if not is_zero(c):
                row = [x - c * y if not is_zero(y) else x for x, y in zip(row, w)]
            new_rows.append(row)
        self.rows = new_rows + [w]
        self.pivots = self.pivots + [p]
        return True

    def basis(self) -> list:
        return [list(r) for r in self.rows]


def is_constant_scalar(x) -> bool:
    if isinstance(x, SymbolicScalar):
        return x.is_constant()
    return isinstance(x, (Fraction, Cyclotomic, int))
