"""Sparse exact linear algebra over a :class:`~hhlab.exact.fields.Field`.

Matrices keep only nonzero entries, stored row-wise.  Elimination picks
pivots by column index first and row index second, and scales each pivot
row so its pivot is 1, so ranks, kernels and solutions are reproducible.
"""

from __future__ import annotations

from .fields import Field, Scalar


class SparseMatrix:
    def __init__(self, nrows: int, ncols: int, field: Field, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self.rows: dict[int, dict[int, Scalar]] = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (r, c), v in items:
                self.add_to(r, c, v)

    @classmethod
    def from_dense(cls, field: Field, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        A = cls(len(rows), ncols, field)
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(r):
                if v:
                    A.add_to(i, j, v)
        return A

    @classmethod
    def identity(cls, field: Field, n: int):
        return cls(n, n, field, {(i, i): field.one for i in range(n)})

    def add_to(self, r: int, c: int, v):
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(f"entry ({r}, {c}) outside {self.nrows}x{self.ncols}")
        v = self.field(v)
        row = self.rows.setdefault(r, {})
        new = row[c] + v if c in row else v
        if new:
            row[c] = new
        else:
            row.pop(c, None)
            if not row:
                del self.rows[r]

    def __getitem__(self, rc):
        r, c = rc
        return self.rows.get(r, {}).get(c, self.field.zero)

    @property
    def entries(self) -> dict:
        return {(r, c): v for r, row in self.rows.items() for c, v in row.items()}

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def transpose(self) -> "SparseMatrix":
        T = SparseMatrix(self.ncols, self.nrows, self.field)
        for r, row in self.rows.items():
            for c, v in row.items():
                T.rows.setdefault(c, {})[r] = v
        return T

    def to_dense(self):
        z = self.field.zero
        return [[self.rows.get(r, {}).get(c, z) for c in range(self.ncols)] for r in range(self.nrows)]

    def matvec(self, x):
        if len(x) != self.ncols:
            raise ValueError("dimension mismatch")
        z = self.field.zero
        out = [z] * self.nrows
        for r, row in self.rows.items():
            acc = z
            for c, v in row.items():
                if x[c]:
                    acc = acc + v * x[c]
            out[r] = acc
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.field != other.field:
            raise TypeError("mixed fields")
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        out = SparseMatrix(self.nrows, other.ncols, self.field)
        for r, row in self.rows.items():
            acc: dict[int, Scalar] = {}
            for k, v in row.items():
                for c, w in other.rows.get(k, {}).items():
                    acc[c] = acc[c] + v * w if c in acc else v * w
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out.rows[r] = acc
        return out

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.field) == (other.nrows, other.ncols, other.field) and self.rows == other.rows

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()}, {self.field})"


def _check_field(A: SparseMatrix):
    for row in A.rows.values():
        for v in row.values():
            if v.field != A.field:
                raise TypeError(f"mixed fields: {v.field} in a matrix over {A.field}")


def echelon(A: SparseMatrix, reduced: bool = True, extra=None):
    """Row-reduce A; return the pivot rows as a list of (pivot column, row dict).

    ``extra`` optionally appends one more column (index A.ncols) given as a
    dense list, which is how :func:`solve` augments the system.
    """
    _check_field(A)
    work: dict[int, dict[int, Scalar]] = {r: dict(row) for r, row in A.rows.items()}
    if extra is not None:
        for r, v in enumerate(extra):
            if v:
                work.setdefault(r, {})[A.ncols] = A.field(v)
    colrows: dict[int, set[int]] = {}
    for r, row in work.items():
        for c in row:
            colrows.setdefault(c, set()).add(r)
    pivots: list[tuple[int, dict]] = []
    for c in sorted(colrows):
        cands = colrows[c]
        if not cands:
            continue
        pr = min(cands)
        prow = work.pop(pr)
        for cc in prow:
            colrows[cc].discard(pr)
        inv = prow[c].inverse()
        if not inv.is_one():
            prow = {cc: v * inv for cc, v in prow.items()}
        for r in list(cands):
            row = work[r]
            f = row[c]
            for cc, v in prow.items():
                if cc in row:
                    nv = row[cc] - f * v
                    if nv:
                        row[cc] = nv
                    else:
                        del row[cc]
                        colrows[cc].discard(r)
                else:
                    row[cc] = -f * v
                    colrows.setdefault(cc, set()).add(r)
            if not row:
                del work[r]
        pivots.append((c, prow))
    if reduced:
        # back substitution, last pivot first
        for k in range(len(pivots) - 1, -1, -1):
            c, prow = pivots[k]
            for kk in range(k):
                c2, row = pivots[kk]
                f = row.get(c)
                if f:
                    for cc, v in prow.items():
                        nv = row.get(cc, None)
                        nv = -f * v if nv is None else nv - f * v
                        if nv:
                            row[cc] = nv
                        else:
                            row.pop(cc, None)
    return pivots


def rank(A: SparseMatrix) -> int:
    return len(echelon(A, reduced=False))


def kernel_basis(A: SparseMatrix) -> list[list[Scalar]]:
    """Basis of {v : A v = 0}, one dense vector per free column."""
    pivots = echelon(A, reduced=True)
    pivcols = {c for c, _ in pivots}
    F = A.field
    out = []
    for f in range(A.ncols):
        if f in pivcols:
            continue
        v = [F.zero] * A.ncols
        v[f] = F.one
        for c, row in pivots:
            x = row.get(f)
            if x:
                v[c] = -x
        out.append(v)
    return out


def solve(A: SparseMatrix, b):
    """A particular solution x of A x = b (free variables set to 0), or None."""
    if len(b) != A.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.nrows}")
    pivots = echelon(A, reduced=True, extra=list(b))
    F = A.field
    x = [F.zero] * A.ncols
    for c, row in pivots:
        if c == A.ncols:
            return None
        rhs = row.get(A.ncols)
        if rhs:
            x[c] = rhs
    return x


def row_space_basis(A: SparseMatrix) -> list[dict]:
    """Reduced echelon rows spanning the row space of A."""
    return [row for _, row in echelon(A, reduced=True)]


def span_rank(vectors, ncols: int, field: Field) -> int:
    """Rank of a list of sparse vectors given as dicts {index: Scalar}."""
    A = SparseMatrix(len(vectors), ncols, field)
    for r, v in enumerate(vectors):
        for c, x in v.items():
            if x:
                A.rows.setdefault(r, {})[c] = field(x)
    return rank(A)
