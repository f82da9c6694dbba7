"""Exact dense linear algebra over Q or Q(t), plus a sparse solver over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ratfun import RationalFunction


@dataclass(frozen=True)
class FieldMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows * cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "FieldMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        flat = tuple(Fraction(x) if isinstance(x, int) else x for r in rows for x in r)
        return cls(len(rows), ncols, flat)

    @classmethod
    def identity(cls, n: int, one=Fraction(1)) -> "FieldMatrix":
        zero = one * 0
        return cls(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def map(self, fn) -> "FieldMatrix":
        return FieldMatrix(self.rows, self.cols, tuple(fn(x) for x in self.entries))

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.cols, self.rows,
                           tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            acc = None
            for j in range(self.cols):
                term = self[i, j] * vec[j]
                acc = term if acc is None else acc + term
            out.append(acc)
        return out

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = None
                for k in range(self.cols):
                    term = self[i, k] * other[k, j]
                    acc = term if acc is None else acc + term
                out.append(acc)
        return FieldMatrix(self.rows, other.cols, tuple(out))

    def trace(self):
        acc = None
        for i in range(min(self.rows, self.cols)):
            acc = self[i, i] if acc is None else acc + self[i, i]
        return acc


def _pivot_key(x):
    if isinstance(x, RationalFunction):
        return (x.total_degree, len(str(x)))
    # prefer the largest magnitude among exact rationals
    return (-abs(x),)


def _zero_like(x):
    return x * 0


def rref(rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form, in place on a copy.  Returns (rows, pivot columns)."""
    A = [list(r) for r in rows]
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        cand = [i for i in range(r, nrows) if A[i][c] != 0]
        if not cand:
            continue
        p = min(cand, key=lambda i: _pivot_key(A[i][c]))
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv if x != 0 else x for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                Ar = A[r]
                A[i] = [x - f * y if y != 0 else x for x, y in zip(A[i], Ar)]
        pivots.append(c)
        r += 1
    return A, pivots


def solve_linear(M: FieldMatrix, rhs: Sequence):
    """Solve ``M x = rhs`` exactly.

    Returns ``(solution, nullspace_basis)`` with free variables set to zero in
    the particular solution, or ``None`` when the system is inconsistent.
    Pivots prefer lowest total degree over Q(t) and largest magnitude over Q.
    """
    if len(rhs) != M.rows:
        raise ValueError(f"rhs has length {len(rhs)}, matrix has {M.rows} rows")
    if M.rows == 0:
        return [], []
    sample = next((x for x in M.entries if x != 0), M.entries[0] if M.entries else Fraction(0))
    zero = _zero_like(sample)
    one = zero + 1
    rhs = [Fraction(b) if isinstance(b, int) else b for b in rhs]
    A, pivots = rref([M.row(i) + [rhs[i]] for i in range(M.rows)])
    n = M.cols
    if pivots and pivots[-1] == n:
        return None
    for i in range(len(pivots), M.rows):
        if A[i][n] != 0:
            return None
    x = [zero] * n
    for i, c in enumerate(pivots):
        x[c] = A[i][n]
    pivot_set = set(pivots)
    null = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [zero] * n
        v[f] = one
        for i, c in enumerate(pivots):
            v[c] = -A[i][f]
        null.append(v)
    return x, null


def rank(M: FieldMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(rref(M.to_rows())[1])


def solve_sparse(rows: list[dict[int, Fraction]], rhs: list[Fraction], ncols: int):
    """Sparse exact elimination over Q.

    ``rows`` are dicts column -> coefficient.  Returns a particular solution
    (free variables zero) as a dict, or ``None`` if inconsistent.
    """
    work = [(dict(r), b) for r, b in zip(rows, rhs)]
    pivot_rows: list[tuple[int, dict, Fraction]] = []
    # column -> rows that still contain it
    remaining = [w for w in work]
    while remaining:
        # pick the sparsest row, then its sparsest column
        remaining.sort(key=lambda w: len(w[0]))
        row, b = remaining.pop(0)
        if not row:
            if b != 0:
                return None
            continue
        col = min(row, key=lambda c: (sum(1 for r, _ in remaining if c in r), c))
        inv = 1 / row[col]
        row = {c: v * inv for c, v in row.items()}
        b = b * inv
        nxt = []
        for r, rb in remaining:
            f = r.get(col)
            if f is None:
                nxt.append((r, rb))
                continue
            r = dict(r)
            for c, v in row.items():
                nv = r.get(c, 0) - f * v
                if nv == 0:
                    r.pop(c, None)
                else:
                    r[c] = nv
            nxt.append((r, rb - f * b))
        remaining = nxt
        pivot_rows.append((col, row, b))
    x: dict[int, Fraction] = {}
    for col, row, b in reversed(pivot_rows):
        s = b
        for c, v in row.items():
            if c != col:
                s -= v * x.get(c, 0)
        x[col] = s
    return x
