"""Exact linear algebra over F.

Vectors are tuples of RationalFunction (or any exact field element with
+, *, inverse()). Elimination is sparse: rows are dicts column -> value.
"""
from __future__ import annotations

from typing import Dict, List, Sequence


class InconsistentSystem(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def _zero_like(x):
    return x - x


class EchelonBasis:
    """Incremental reduced row echelon basis of a subspace of K^dim."""

    def __init__(self, dim: int, zero=None, one=None):
        self.dim = dim
        self.zero = zero
        self.one = one
        self.rows: Dict[int, Dict[int, object]] = {}  # pivot column -> reduced row

    def __len__(self):
        return len(self.rows)

    def copy(self):
        e = EchelonBasis(self.dim, self.zero, self.one)
        e.rows = {k: dict(v) for k, v in self.rows.items()}
        return e

    def reduce(self, v: Dict[int, object]) -> Dict[int, object]:
        v = dict(v)
        hits = [c for c in v if c in self.rows]
        for c in hits:
            a = v.get(c)
            if a is None:
                continue
            for k, x in self.rows[c].items():
                y = v[k] - a * x if k in v else -(a * x)
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return v

    def add(self, v: Dict[int, object]) -> bool:
        """Insert v; returns True when the span grew."""
        v = self.reduce(v)
        if not v:
            return False
        piv = min(v)
        inv = v[piv].inverse()
        v = {k: x * inv for k, x in v.items()}
        for row in self.rows.values():
            a = row.get(piv)
            if a is None:
                continue
            for k, x in v.items():
                y = row[k] - a * x if k in row else -(a * x)
                if y:
                    row[k] = y
                else:
                    row.pop(k, None)
        self.rows[piv] = v
        return True

    def contains(self, v: Dict[int, object]) -> bool:
        return not self.reduce(v)

    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def sorted_rows(self) -> List[Dict[int, object]]:
        return [self.rows[k] for k in sorted(self.rows)]


def to_sparse(v: Sequence) -> Dict[int, object]:
    return {i: x for i, x in enumerate(v) if x}


def to_dense(v: Dict[int, object], dim: int, zero) -> tuple:
    return tuple(v.get(i, zero) for i in range(dim))


class Matrix:
    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None, zero=None):
        self.rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not self.rows:
                raise DimensionMismatch("empty matrix needs an explicit column count")
            ncols = len(self.rows[0])
        if any(len(r) != ncols for r in self.rows):
            raise DimensionMismatch("ragged matrix")
        self.nrows = len(self.rows)
        self.ncols = ncols
        if zero is None:
            if self.nrows and ncols:
                zero = _zero_like(self.rows[0][0])
        self.zero = zero

    @property
    def dims(self):
        return (self.nrows, self.ncols)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.dims == other.dims and self.rows == other.rows

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                      ncols=self.nrows, zero=self.zero)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch("incompatible product")
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                s = self.zero
                for k in range(self.ncols):
                    if r[k]:
                        s = s + r[k] * other.rows[k][j]
                row.append(s)
            out.append(row)
        return Matrix(out, ncols=other.ncols, zero=self.zero)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise DimensionMismatch("vector length")
        out = []
        for r in self.rows:
            s = self.zero
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def _echelon(self) -> EchelonBasis:
        e = EchelonBasis(self.ncols)
        for r in self.rows:
            e.add(to_sparse(r))
        return e

    def rref(self) -> "Matrix":
        e = self._echelon()
        rows = [to_dense(r, self.ncols, self.zero) for r in e.sorted_rows()]
        rows += [(self.zero,) * self.ncols] * (self.nrows - len(rows))
        return Matrix(rows, ncols=self.ncols, zero=self.zero)

    def pivots(self) -> List[int]:
        return self._echelon().pivots()

    def rank(self) -> int:
        return len(self._echelon())

    def kernel_basis(self) -> List[tuple]:
        """Right kernel; one vector per free column, that column set to 1."""
        e = self._echelon()
        piv = set(e.rows)
        one = self.zero + 1 if self.zero is not None else 1
        basis = []
        for f in range(self.ncols):
            if f in piv:
                continue
            v = {f: one}
            for pc, row in e.rows.items():
                a = row.get(f)
                if a:
                    v[pc] = -a
            basis.append(to_dense(v, self.ncols, self.zero))
        return basis

    def solve(self, b: Sequence) -> tuple:
        if len(b) != self.nrows:
            raise DimensionMismatch("right-hand side length")
        n = self.ncols
        e = EchelonBasis(n + 1)
        for r, x in zip(self.rows, b):
            row = to_sparse(r)
            if x:
                row[n] = x
            e.add(row)
        if n in e.rows:
            raise InconsistentSystem("no solution")
        v = {pc: row[n] for pc, row in e.rows.items() if n in row}
        return to_dense(v, n, self.zero)


def rref(m: Matrix) -> Matrix:
    return m.rref()


def rank(m: Matrix) -> int:
    return m.rank()


def kernel_basis(m: Matrix) -> List[tuple]:
    return m.kernel_basis()


def solve(m: Matrix, b: Sequence) -> tuple:
    return m.solve(b)


def linear_algebra(m: Matrix, task: str, rhs=None):
    if task == "rref":
        return m.rref()
    if task == "rank":
        return m.rank()
    if task == "kernel_basis":
        return m.kernel_basis()
    if task == "solve":
        return m.solve(rhs)
    raise ValueError(f"unknown task {task}")


def identity(field, k: int) -> Matrix:
    z, o = field.zero(), field.one()
    return Matrix([[o if i == j else z for j in range(k)] for i in range(k)], ncols=k, zero=z)
