"""Finite-dimensional unital associative algebras over Q.

An algebra of dimension ``n`` is given by structure constants: ``table[i][j]``
is the coefficient vector of ``e_i * e_j``. Left and right multiplication
matrices follow the column convention used everywhere in the package:
column ``s`` of ``L(a)`` holds the coefficients of ``a * e_s``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .errors import AlgebraMismatch, BadUnit, NotAssociative, ShapeMismatch
from .linalg import Matrix, Subspace, Vector


class Algebra:
    """Validated structure-constant presentation of a unital associative algebra.

    Use :func:`make_algebra` to build one; the constructor trusts its input.
    """

    def __init__(self, table, unit: Vector, labels: Sequence[str], name: str | None = None):
        self.table: tuple[tuple[Vector, ...], ...] = table
        self.unit_coeffs = unit
        self.labels = tuple(labels)
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self):
        return f"Algebra({self.name or 'custom'}, dim={self.dim})"

    @cached_property
    def _sparse_table(self) -> tuple:
        return tuple(
            tuple(tuple((k, c) for k, c in enumerate(vec) if c) for vec in row) for row in self.table
        )

    def mul_coeffs(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        out = [linalg.ZERO] * self.dim
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self._sparse_table[i]
            for j, b in ys:
                ab = a * b
                for k, c in row[j]:
                    out[k] += ab * c
        return tuple(out)

    def element(self, coeffs) -> "Element":
        coeffs = linalg.as_vector(coeffs)
        if len(coeffs) != self.dim:
            raise ShapeMismatch(f"element has {len(coeffs)} coefficients, algebra has dimension {self.dim}")
        return Element(self, coeffs)

    def basis_element(self, i: int) -> "Element":
        return Element(self, linalg.unit_vector(self.dim, i))

    def basis(self) -> list["Element"]:
        return [self.basis_element(i) for i in range(self.dim)]

    @property
    def one(self) -> "Element":
        return Element(self, self.unit_coeffs)

    @property
    def zero(self) -> "Element":
        return Element(self, linalg.zeros(self.dim))

    def __getitem__(self, label: str) -> "Element":
        return self.basis_element(self.labels.index(label))

    def left_matrix(self, x: Sequence[Fraction]) -> Matrix:
        """Matrix of ``y -> x * y``."""
        cols = [self.mul_coeffs(x, linalg.unit_vector(self.dim, s)) for s in range(self.dim)]
        return linalg.transpose(cols)

    def right_matrix(self, x: Sequence[Fraction]) -> Matrix:
        """Matrix of ``y -> y * x``."""
        cols = [self.mul_coeffs(linalg.unit_vector(self.dim, s), x) for s in range(self.dim)]
        return linalg.transpose(cols)

    @cached_property
    def left_basis_matrices(self) -> tuple[Matrix, ...]:
        return tuple(self.left_matrix(linalg.unit_vector(self.dim, i)) for i in range(self.dim))

    @cached_property
    def right_basis_matrices(self) -> tuple[Matrix, ...]:
        return tuple(self.right_matrix(linalg.unit_vector(self.dim, i)) for i in range(self.dim))

    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i + 1, n))


class Element:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: Algebra, coeffs: Vector):
        self.algebra = algebra
        self.coeffs = coeffs

    def _same(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("elements belong to different algebras")

    def __add__(self, other):
        self._same(other)
        return Element(self.algebra, linalg.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._same(other)
        return Element(self.algebra, linalg.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return Element(self.algebra, linalg.scale(-1, self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Element(self.algebra, linalg.scale(other, self.coeffs))
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Element(self.algebra, linalg.scale(other, self.coeffs))
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, Element) and other.algebra is self.algebra and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*{lab}" for c, lab in zip(self.coeffs, self.algebra.labels) if c]
        return " + ".join(terms) or "0"


def mul(x: Element, y: Element) -> Element:
    x._same(y)
    return Element(x.algebra, x.algebra.mul_coeffs(x.coeffs, y.coeffs))


def commutator(x: Element, y: Element) -> Element:
    return mul(x, y) - mul(y, x)


def make_algebra(table, unit, labels: Sequence[str] | None = None, name: str | None = None) -> Algebra:
    """Validate structure constants and return an :class:`Algebra`.

    Associativity is checked on every basis triple and the unit law on every
    basis element; the first failure is reported.

    Raises:
        ShapeMismatch: ``table`` is not ``n x n x n`` or ``unit``/``labels`` have the wrong length.
        NotAssociative: with the first failing triple ``(i, j, k)``.
        BadUnit: with the first basis index where the unit law fails.
    """
    n = len(table)
    if n == 0:
        raise ShapeMismatch("algebra must have positive dimension")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise ShapeMismatch(f"table[{i}] has {len(row)} entries, expected {n}")
        entries = []
        for j, vec in enumerate(row):
            if len(vec) != n:
                raise ShapeMismatch(f"table[{i}][{j}] has {len(vec)} coefficients, expected {n}")
            entries.append(linalg.as_vector(vec))
        rows.append(tuple(entries))
    if unit is None:
        raise BadUnit(None, "no unit given; non-unital algebras are not supported")
    unit = linalg.as_vector(unit)
    if len(unit) != n:
        raise ShapeMismatch(f"unit has {len(unit)} coefficients, expected {n}")
    if labels is None:
        labels = [f"e{i}" for i in range(n)]
    if len(labels) != n:
        raise ShapeMismatch(f"{len(labels)} labels for dimension {n}")
    alg = Algebra(tuple(rows), unit, labels, name)

    for i in range(n):
        for j in range(n):
            eij = alg.table[i][j]
            for k in range(n):
                lhs = alg.mul_coeffs(eij, linalg.unit_vector(n, k))
                rhs = alg.mul_coeffs(linalg.unit_vector(n, i), alg.table[j][k])
                if lhs != rhs:
                    raise NotAssociative((i, j, k), lhs, rhs)
    for i in range(n):
        ei = linalg.unit_vector(n, i)
        if alg.mul_coeffs(unit, ei) != ei or alg.mul_coeffs(ei, unit) != ei:
            raise BadUnit(i)
    return alg


def center(alg: Algebra) -> Subspace:
    """The center ``{z : z e_i = e_i z for all i}`` as a canonical subspace of ``Q^n``."""
    cached = alg.__dict__.get("_center")
    if cached is None:
        cached = alg.__dict__["_center"] = _commutant(alg)
    return cached


def _commutant(alg: Algebra) -> Subspace:
    rows = []
    for left, right in zip(alg.left_basis_matrices, alg.right_basis_matrices):
        # z e_i - e_i z = (R(e_i) - L(e_i)) z
        rows.extend(linalg.sub(r, l) for r, l in zip(right, left))
    return linalg.nullspace(rows, alg.dim)


def center_elements(alg: Algebra) -> list[Element]:
    return [Element(alg, z) for z in center(alg).basis]


def is_central(x: Element) -> bool:
    return all(not commutator(x, e) for e in x.algebra.basis())
