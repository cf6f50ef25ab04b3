"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`, matrices are tuples of row
tuples. Every subspace is stored in reduced row echelon form, which is unique,
so equal subspaces compare equal and serialize to identical bytes.

Elimination works on sparse rows (``dict`` column -> value) and keeps the
working set fully reduced at all times. The constraint systems produced by
the hom-space solvers are large but very sparse, and a fully reduced set only
ever carries entries in pivot and free columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_vector(values: Iterable) -> Vector:
    # Fraction(x) would copy values that are already Fractions; skip that
    return tuple(x if type(x) is Fraction else Fraction(x) for x in values)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(as_vector(r) for r in rows)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def identity(n: int) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence[Fraction]) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def combination(coeffs: Sequence, vectors: Sequence[Sequence[Fraction]], n: int) -> Vector:
    """Return ``sum(c * v)`` as a length-``n`` vector."""
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for k, x in enumerate(v):
            if x:
                out[k] += c * x
    return tuple(out)


def matvec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    nz = [(k, x) for k, x in enumerate(v) if x]
    return tuple(sum((row[k] * x for k, x in nz if row[k]), ZERO) for row in m)


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    ncols = len(b[0]) if b else 0
    # skip zeros on both sides; operator matrices here are mostly zero
    brows = [[(k, y) for k, y in enumerate(r) if y] for r in b]
    out = []
    for row in a:
        acc = [ZERO] * ncols
        for t, x in enumerate(row):
            if x:
                for k, y in brows[t]:
                    acc[k] += x * y
        out.append(tuple(acc))
    return tuple(out)


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return tuple(zip(*m))


def flatten(m: Sequence[Sequence[Fraction]]) -> Vector:
    return tuple(x for row in m for x in row)


def unflatten(v: Sequence[Fraction], rows: int, cols: int) -> Matrix:
    return tuple(tuple(v[r * cols:(r + 1) * cols]) for r in range(rows))


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Rows are sparse dicts normalized so the pivot entry is 1 and every pivot
    column is zero in all other rows. The pivot of each row is its leading
    column; inserting a residual whose leading column is ``q`` only touches
    rows with pivot below ``q``, so this property survives every insertion.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Return the normal form of ``vec`` modulo the current row space."""
        out = {c: Fraction(x) for c, x in vec.items() if x}
        hits = [c for c in out if c in self.rows]
        for c in hits:
            f = out.get(c)
            if not f:
                continue
            for k, x in self.rows[c].items():
                y = out.get(k, ZERO) - f * x
                if y:
                    out[k] = y
                else:
                    out.pop(k, None)
        return out

    def insert(self, vec: Mapping[int, Fraction]) -> bool:
        """Add ``vec`` to the row space; return True if the rank grew."""
        res = self.reduce(vec)
        if not res:
            return False
        q = min(res)
        inv = 1 / res[q]
        row = {k: x * inv for k, x in res.items()}
        for p, other in self.rows.items():
            f = other.get(q)
            if f:
                for k, x in row.items():
                    y = other.get(k, ZERO) - f * x
                    if y:
                        other[k] = y
                    else:
                        other.pop(k, None)
        self.rows[q] = row
        return True

    def insert_dense(self, vec: Sequence[Fraction]) -> bool:
        if len(vec) != self.ncols:
            raise DimensionMismatch(f"expected length {self.ncols}, got {len(vec)}")
        return self.insert({k: x for k, x in enumerate(vec) if x})

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def dense_rows(self) -> Matrix:
        out = []
        for p in self.pivots():
            row = [ZERO] * self.ncols
            for k, x in self.rows[p].items():
                row[k] = x
            out.append(tuple(row))
        return tuple(out)

    def kernel_basis(self) -> Matrix:
        """Basis of ``{x : row . x = 0 for every row}``, already in RREF order."""
        free = [c for c in range(self.ncols) if c not in self.rows]
        # column -> list of (pivot, coefficient) over rows carrying that column
        by_col: dict[int, list[tuple[int, Fraction]]] = {}
        for p, row in self.rows.items():
            for k, x in row.items():
                if k != p:
                    by_col.setdefault(k, []).append((p, x))
        basis = []
        for f in free:
            v = [ZERO] * self.ncols
            v[f] = ONE
            for p, x in by_col.get(f, ()):
                v[p] = -x
            basis.append(tuple(v))
        # Each kernel vector has its free coordinate as the only nonzero free
        # entry, but pivot entries may precede it; canonicalize.
        return Subspace.span(self.ncols, basis).basis


def rref(m: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form of ``m`` (zero rows kept at the bottom) and its pivots."""
    rows = as_matrix(m)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    ech = Echelon(ncols)
    for r in rows:
        ech.insert_dense(r)
    reduced = list(ech.dense_rows())
    reduced += [zeros(ncols)] * (len(rows) - len(reduced))
    return tuple(reduced), ech.pivots()


def rank(m: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(m, ncols)[1])


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> "Subspace":
    """Kernel ``{x : m x = 0}`` as a canonical subspace."""
    rows = as_matrix(m)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    ech = Echelon(ncols)
    for r in rows:
        ech.insert_dense(r)
    return Subspace(ncols, ech.kernel_basis())


def sparse_nullspace(equations: Iterable[Mapping[int, Fraction]], ncols: int) -> "Subspace":
    """Kernel of a system given as sparse rows ``{column: coefficient}``."""
    ech = Echelon(ncols)
    for eq in equations:
        ech.insert(eq)
    return Subspace(ncols, ech.kernel_basis())


def solve(m: Sequence[Sequence], b: Sequence) -> tuple[Vector, "Subspace"] | None:
    """Solve ``m x = b``.

    Returns ``None`` when ``b`` is outside the column space, otherwise a
    particular solution (free variables set to zero) and the full kernel.
    """
    rows = as_matrix(m)
    b = as_vector(b)
    if len(b) != len(rows):
        raise DimensionMismatch(f"right-hand side has length {len(b)}, matrix has {len(rows)} rows")
    ncols = len(rows[0]) if rows else 0
    ech = Echelon(ncols + 1)
    for r, y in zip(rows, b):
        ech.insert_dense(r + (y,))
    if ncols in ech.rows:
        return None
    x = [ZERO] * ncols
    for p, row in ech.rows.items():
        x[p] = row.get(ncols, ZERO)
    kernel = nullspace(rows, ncols)
    return tuple(x), kernel


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``Q^ambient_dim`` held as its canonical RREF basis."""

    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        ech = Echelon(ambient_dim)
        for v in vectors:
            ech.insert_dense(as_vector(v))
        return cls(ambient_dim, ech.dense_rows())

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, identity(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> list[int]:
        return [next(k for k, x in enumerate(row) if x) for row in self.basis]

    @cached_property
    def _rows(self) -> Echelon:
        # read-only view; never insert into it
        ech = Echelon(self.ambient_dim)
        for p, row in zip(self.pivots, self.basis):
            ech.rows[p] = {k: x for k, x in enumerate(row) if x}
        return ech

    def _echelon(self) -> Echelon:
        return self._rows

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def contains(self, v: Sequence) -> bool:
        v = as_vector(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        return not self._echelon().reduce({k: x for k, x in enumerate(v) if x})

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coordinates of ``v`` in ``basis``, or None if ``v`` is not in the subspace.

        With an RREF basis these are just the entries of ``v`` at the pivots.
        """
        v = as_vector(v)
        if not self.contains(v):
            return None
        return tuple(v[p] for p in self.pivots)

    def normal_form(self, v: Sequence) -> Vector:
        """Canonical representative of ``v`` modulo this subspace."""
        red = self._echelon().reduce({k: x for k, x in enumerate(as_vector(v)) if x})
        out = [ZERO] * self.ambient_dim
        for k, x in red.items():
            out[k] = x
        return tuple(out)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.ambient_dim, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        # x = sum a_i s_i = sum b_j o_j  <=>  [S^T | -O^T] (a, b) = 0
        k, n = self.dim, self.ambient_dim
        system = [
            tuple(s[r] for s in self.basis) + tuple(-o[r] for o in other.basis)
            for r in range(n)
        ]
        ker = nullspace(system, k + other.dim)
        return Subspace.span(n, (combination(c[:k], self.basis, n) for c in ker.basis))

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)


def sum_subspaces(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersection(b)


def member(v: Sequence, s: Subspace) -> bool:
    return s.contains(v)


def equal(a: Subspace, b: Subspace) -> bool:
    a._check(b)
    return a == b
