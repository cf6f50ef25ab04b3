"""Derivations of an algebra and Z-submodules of Der(A).

A derivation is stored as an ``n x n`` matrix ``D`` with the column convention
``v(e_j) = sum_i D[i][j] e_i``. Flattened row-major, ``D[i][j]`` is variable
``i * n + j`` of the Leibniz system.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .algebra import Algebra, Element, center, mul
from .errors import AlgebraMismatch, NotADerivation, NotCentral, NotInModule, ShapeMismatch
from .linalg import Matrix, Subspace, Vector


class Derivation:
    """A linear endomorphism of an algebra (not necessarily Leibniz until checked)."""

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra: Algebra, matrix):
        matrix = linalg.as_matrix(matrix)
        n = algebra.dim
        if len(matrix) != n or any(len(r) != n for r in matrix):
            raise ShapeMismatch(f"derivation matrix must be {n}x{n}")
        self.algebra = algebra
        self.matrix: Matrix = matrix

    @classmethod
    def from_flat(cls, algebra: Algebra, flat: Sequence[Fraction]) -> "Derivation":
        return cls(algebra, linalg.unflatten(flat, algebra.dim, algebra.dim))

    @property
    def flat(self) -> Vector:
        return linalg.flatten(self.matrix)

    def apply(self, coeffs: Sequence[Fraction]) -> Vector:
        return linalg.matvec(self.matrix, coeffs)

    def __call__(self, x: Element) -> Element:
        if x.algebra is not self.algebra:
            raise AlgebraMismatch("derivation applied to an element of another algebra")
        return Element(self.algebra, self.apply(x.coeffs))

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.algebra, linalg.unflatten(linalg.add(self.flat, other.flat), self.algebra.dim, self.algebra.dim))

    def __rmul__(self, c) -> "Derivation":
        return Derivation(self.algebra, tuple(linalg.scale(c, r) for r in self.matrix))

    def __eq__(self, other):
        return isinstance(other, Derivation) and other.algebra is self.algebra and other.matrix == self.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"Derivation({[[str(x) for x in r] for r in self.matrix]})"


class VModule:
    """A Z-submodule V of Der(A), held as a canonical subspace of ``Q^(n*n)``."""

    def __init__(self, algebra: Algebra, subspace: Subspace):
        self.algebra = algebra
        self.subspace = subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @cached_property
    def basis(self) -> tuple[Derivation, ...]:
        return tuple(Derivation.from_flat(self.algebra, b) for b in self.subspace.basis)

    @cached_property
    def center(self) -> Subspace:
        return center(self.algebra)

    def coordinates(self, v: Derivation) -> Vector:
        """Coordinates of ``v`` over :attr:`basis`; raises NotInModule if ``v`` is outside V."""
        if v.algebra is not self.algebra:
            raise AlgebraMismatch("derivation belongs to another algebra")
        coords = self.subspace.coordinates(v.flat)
        if coords is None:
            raise NotInModule("derivation is not in the module V")
        return coords

    def combine(self, coords: Sequence[Fraction]) -> Derivation:
        n = self.algebra.dim
        return Derivation.from_flat(self.algebra, linalg.combination(coords, self.subspace.basis, n * n))

    def __contains__(self, v: Derivation) -> bool:
        return v.algebra is self.algebra and self.subspace.contains(v.flat)

    def __eq__(self, other):
        return isinstance(other, VModule) and other.algebra is self.algebra and other.subspace == self.subspace

    def __repr__(self):
        return f"VModule(dim={self.dim}, algebra={self.algebra!r})"


def leibniz_defect(alg: Algebra, m) -> tuple[tuple[Vector, ...], ...]:
    """``defect[i][j] = m(e_i e_j) - m(e_i) e_j - e_i m(e_j)``; all zero iff ``m`` is a derivation."""
    m = m.matrix if isinstance(m, Derivation) else linalg.as_matrix(m)
    n = alg.dim
    images = linalg.transpose(m)  # images[j] = m(e_j)
    out = []
    for i in range(n):
        ei = linalg.unit_vector(n, i)
        row = []
        for j in range(n):
            ej = linalg.unit_vector(n, j)
            lhs = linalg.matvec(m, alg.table[i][j])
            rhs = linalg.add(alg.mul_coeffs(images[i], ej), alg.mul_coeffs(ei, images[j]))
            row.append(linalg.sub(lhs, rhs))
        out.append(tuple(row))
    return tuple(out)


def first_defect(alg: Algebra, m) -> tuple[int, int] | None:
    defect = leibniz_defect(alg, m)
    for i, row in enumerate(defect):
        for j, d in enumerate(row):
            if any(d):
                return i, j
    return None


def is_derivation(alg: Algebra, m) -> bool:
    return first_defect(alg, m) is None


def leibniz_system(alg: Algebra) -> list[dict[int, Fraction]]:
    """Sparse rows of the Leibniz constraints in the ``n*n`` unknowns ``D[i][j]``."""
    n = alg.dim
    c = alg.table
    eqs = []
    for a in range(n):
        for b in range(n):
            for r in range(n):
                eq: dict[int, Fraction] = {}

                def acc(var, val):
                    y = eq.get(var, linalg.ZERO) + val
                    if y:
                        eq[var] = y
                    else:
                        eq.pop(var, None)

                # D(e_a e_b)_r
                for k, x in enumerate(c[a][b]):
                    if x:
                        acc(r * n + k, x)
                # -(D(e_a) e_b)_r
                for i in range(n):
                    x = c[i][b][r]
                    if x:
                        acc(i * n + a, -x)
                # -(e_a D(e_b))_r
                for i in range(n):
                    x = c[a][i][r]
                    if x:
                        acc(i * n + b, -x)
                if eq:
                    eqs.append(eq)
    return eqs


def derivations(alg: Algebra) -> VModule:
    """Der(A): the full solution space of the Leibniz system."""
    n = alg.dim
    return VModule(alg, linalg.sparse_nullspace(leibniz_system(alg), n * n))


def inner_derivation(a: Element) -> Derivation:
    """``ad_a : x -> a x - x a``."""
    alg = a.algebra
    left = alg.left_matrix(a.coeffs)
    right = alg.right_matrix(a.coeffs)
    return Derivation(alg, tuple(linalg.sub(l, r) for l, r in zip(left, right)))


def inner_derivations(alg: Algebra) -> VModule:
    n = alg.dim
    span = Subspace.span(n * n, (inner_derivation(e).flat for e in alg.basis()))
    return VModule(alg, span)


def z_action(z: Element, v: Derivation, check: bool = True) -> Derivation:
    """The derivation ``a -> z * v(a)`` for central ``z``.

    Raises:
        NotCentral: ``z`` is not in the center; ``z v`` would fail the Leibniz
            rule by the term ``-[a, z] v(b)``.
    """
    alg = v.algebra
    if z.algebra is not alg:
        raise AlgebraMismatch("scalar and derivation belong to different algebras")
    if check and not center(alg).contains(z.coeffs):
        raise NotCentral(f"{z!r} is not in the center")
    return Derivation(alg, linalg.matmul(alg.left_matrix(z.coeffs), v.matrix))


def left_product(s: Element, v: Derivation) -> Derivation:
    """``a -> s * v(a)`` for arbitrary ``s``; a derivation only when ``s`` is central."""
    return z_action(s, v, check=False)


def z_closure(alg: Algebra, generators: Iterable) -> VModule:
    """Smallest Z-submodule of Der(A) containing ``generators``.

    Raises:
        NotADerivation: a generator fails the Leibniz rule; ``index`` and
            ``pair`` locate the first failing generator and basis pair.
    """
    n = alg.dim
    gens = []
    for idx, g in enumerate(generators):
        m = g.matrix if isinstance(g, Derivation) else linalg.as_matrix(g)
        if len(m) != n or any(len(r) != n for r in m):
            raise ShapeMismatch(f"generator {idx} is not {n}x{n}")
        bad = first_defect(alg, m)
        if bad is not None:
            raise NotADerivation(
                f"generator {idx} violates the Leibniz rule on (e_{bad[0]}, e_{bad[1]})", index=idx, pair=bad
            )
        gens.append(linalg.flatten(m))

    zs = [alg.left_matrix(z) for z in center(alg).basis]
    span = Subspace.span(n * n, gens)
    for _ in range(n * n + 1):
        new = [
            linalg.flatten(linalg.matmul(lz, linalg.unflatten(b, n, n)))
            for lz in zs
            for b in span.basis
        ]
        grown = Subspace.span(n * n, span.basis + tuple(new))
        if grown.dim == span.dim:
            return VModule(alg, span)
        span = grown
    raise AssertionError("Z-closure did not stabilize")  # pragma: no cover


def is_z_closed(v: VModule) -> bool:
    alg = v.algebra
    n = alg.dim
    for z in v.center.basis:
        lz = alg.left_matrix(z)
        for b in v.basis:
            if not v.subspace.contains(linalg.flatten(linalg.matmul(lz, b.matrix))):
                return False
    return True


def commutator_defect_term(s: Element, v: Derivation) -> tuple[tuple[Vector, ...], ...]:
    """``-[e_i, s] v(e_j)`` on all basis pairs: the Leibniz defect of ``s v``."""
    alg = v.algebra
    out = []
    for ei in alg.basis():
        c = mul(ei, s) - mul(s, ei)
        out.append(tuple((-(c * v(ej))).coeffs for ej in alg.basis()))
    return tuple(out)
