"""Covectors: the bimodule V-dagger = hom_Z(V, A) and the Z-valued dual V* = hom_Z(V, Z).

A covector is stored by its values on the canonical basis ``u_1..u_m`` of V:
an ``n x m`` matrix whose column ``j`` holds the coefficients of ``w(u_j)``.
Flattened row-major, entry ``[r][j]`` is variable ``r * m + j``.

Both hom-spaces are computed as nullspaces inside the space of all Q-linear
maps V -> A. Q sits inside Z, so Z-linearity only adds constraints, one block
per pair (center basis element, V basis element).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .algebra import Algebra, Element
from .derivations import Derivation, VModule
from .errors import AlgebraMismatch, ConsistencyError, NotInModule
from .linalg import Matrix, Subspace, Vector


class Covector:
    """A Q-linear map V -> A given by its values on the V basis."""

    __slots__ = ("vmodule", "values")

    def __init__(self, vmodule: VModule, values):
        self.vmodule = vmodule
        self.values: Matrix = linalg.as_matrix(values)

    @classmethod
    def from_flat(cls, vmodule: VModule, flat: Sequence[Fraction]) -> "Covector":
        return cls(vmodule, linalg.unflatten(flat, vmodule.algebra.dim, vmodule.dim))

    @property
    def algebra(self) -> Algebra:
        return self.vmodule.algebra

    @property
    def flat(self) -> Vector:
        return linalg.flatten(self.values)

    def value(self, j: int) -> Element:
        """``w(u_j)`` for the ``j``-th V basis element."""
        return Element(self.algebra, tuple(row[j] for row in self.values))

    def __call__(self, v: Derivation) -> Element:
        return couple(self, v)

    def __add__(self, other: "Covector") -> "Covector":
        return Covector(self.vmodule, tuple(linalg.add(a, b) for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Covector") -> "Covector":
        return Covector(self.vmodule, tuple(linalg.sub(a, b) for a, b in zip(self.values, other.values)))

    def __rmul__(self, c) -> "Covector":
        return Covector(self.vmodule, tuple(linalg.scale(c, r) for r in self.values))

    def __eq__(self, other):
        return isinstance(other, Covector) and other.vmodule is self.vmodule and other.values == self.values

    def __hash__(self):
        return hash(self.values)

    def __bool__(self):
        return any(any(r) for r in self.values)

    def __repr__(self):
        return f"Covector({[[str(x) for x in r] for r in self.values]})"


class CovectorSpace:
    """A space of covectors, held as a canonical subspace of ``Q^(n*m)``.

    ``kind`` is ``"dagger"`` for hom_Z(V, A) and ``"star"`` for hom_Z(V, Z).
    """

    def __init__(self, vmodule: VModule, subspace: Subspace, kind: str = "dagger"):
        self.vmodule = vmodule
        self.subspace = subspace
        self.kind = kind

    @property
    def algebra(self) -> Algebra:
        return self.vmodule.algebra

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @cached_property
    def basis(self) -> tuple[Covector, ...]:
        return tuple(Covector.from_flat(self.vmodule, b) for b in self.subspace.basis)

    @cached_property
    def _pivots(self) -> list[int]:
        return self.subspace.pivots

    def coordinates(self, w: Covector, check: bool = True) -> Vector:
        """Coordinates of ``w`` over :attr:`basis`.

        The basis is in RREF, so these are the entries of ``w`` at the pivots;
        ``check`` additionally verifies membership.
        """
        flat = w.flat
        if check and not self.subspace.contains(flat):
            raise NotInModule("covector is not in this space")
        return tuple(flat[p] for p in self._pivots)

    def combine(self, coords: Sequence[Fraction]) -> Covector:
        n, m = self.algebra.dim, self.vmodule.dim
        return Covector.from_flat(self.vmodule, linalg.combination(coords, self.subspace.basis, n * m))

    def __contains__(self, w: Covector) -> bool:
        return w.vmodule is self.vmodule and self.subspace.contains(w.flat)

    def __repr__(self):
        return f"CovectorSpace({self.kind}, dim={self.dim})"


def _z_linearity_equations(alg: Algebra, v: VModule) -> list[dict[int, Fraction]]:
    """``w(z_k u_j) = z_k w(u_j)`` for every center basis ``z_k`` and V basis ``u_j``."""
    n, m = alg.dim, v.dim
    eqs = []
    for z in v.center.basis:
        lz = alg.left_matrix(z)
        for j, u in enumerate(v.basis):
            zu = Derivation(alg, linalg.matmul(lz, u.matrix))
            gamma = v.coordinates(zu)
            for r in range(n):
                eq: dict[int, Fraction] = {}
                for l, g in enumerate(gamma):
                    if g:
                        eq[r * m + l] = eq.get(r * m + l, linalg.ZERO) + g
                for s, x in enumerate(lz[r]):
                    if x:
                        eq[s * m + j] = eq.get(s * m + j, linalg.ZERO) - x
                eq = {k: x for k, x in eq.items() if x}
                if eq:
                    eqs.append(eq)
    return eqs


def _center_value_equations(alg: Algebra, v: VModule) -> list[dict[int, Fraction]]:
    """Every value ``w(u_j)`` commutes with every basis element of A."""
    n, m = alg.dim, v.dim
    eqs = []
    for left, right in zip(alg.left_basis_matrices, alg.right_basis_matrices):
        for r in range(n):
            coeffs = linalg.sub(right[r], left[r])
            if not any(coeffs):
                continue
            for j in range(m):
                eqs.append({s * m + j: x for s, x in enumerate(coeffs) if x})
    return eqs


def dual(alg: Algebra, v: VModule) -> CovectorSpace:
    """V-dagger = hom_Z(V, A)."""
    _same_algebra(alg, v)
    eqs = _z_linearity_equations(alg, v)
    return CovectorSpace(v, linalg.sparse_nullspace(eqs, alg.dim * v.dim), "dagger")


def star_dual(alg: Algebra, v: VModule) -> CovectorSpace:
    """V* = hom_Z(V, Z): covectors whose values all lie in the center."""
    _same_algebra(alg, v)
    eqs = _z_linearity_equations(alg, v) + _center_value_equations(alg, v)
    return CovectorSpace(v, linalg.sparse_nullspace(eqs, alg.dim * v.dim), "star")


def _same_algebra(alg: Algebra, v: VModule) -> None:
    if v.algebra is not alg:
        raise AlgebraMismatch("module V is over a different algebra")


def couple(w: Covector, v: Derivation) -> Element:
    """The pairing ``<w, v> = w(v)``; ``v`` must lie in V."""
    coords = w.vmodule.coordinates(v)
    alg = w.algebra
    return Element(alg, tuple(sum((c * x for c, x in zip(coords, row) if c and x), linalg.ZERO) for row in w.values))


def bimodule_act(a: Element, w: Covector, b: Element) -> Covector:
    """The covector ``v -> a * w(v) * b``."""
    alg = w.algebra
    if a.algebra is not alg or b.algebra is not alg:
        raise AlgebraMismatch("bimodule action by elements of another algebra")
    op = linalg.matmul(alg.left_matrix(a.coeffs), alg.right_matrix(b.coeffs))
    return Covector(w.vmodule, linalg.matmul(op, w.values))


def act_matrix(w: Covector, op: Matrix) -> Covector:
    """Apply an ``n x n`` operator on A to every value of ``w``."""
    return Covector(w.vmodule, linalg.matmul(op, w.values))


def differential(a: Element, v: VModule) -> Covector:
    """``da : u -> u(a)``."""
    if a.algebra is not v.algebra:
        raise AlgebraMismatch("element and module belong to different algebras")
    cols = [u.apply(a.coeffs) for u in v.basis]
    n = v.algebra.dim
    if not cols:
        return Covector(v, tuple(() for _ in range(n)))
    return Covector(v, linalg.transpose(cols))


def _kernel_of_pairing(v: VModule, covectors: Sequence[Covector]) -> Subspace:
    """``{u in V : w(u) = 0 for all w}`` as a subspace of derivation matrices."""
    n = v.algebra.dim
    rows = [row for w in covectors for row in w.values]
    coords = linalg.nullspace(rows, v.dim)
    return Subspace.span(n * n, (v.combine(c).flat for c in coords.basis))


def right_kernel(alg: Algebra, v: VModule, dagger: CovectorSpace | None = None) -> Subspace:
    """Vectors annihilated by every covector.

    Computed twice: against a basis of V-dagger, and against the differentials
    ``d e_1 .. d e_n`` alone. The two must agree.

    Raises:
        ConsistencyError: the two computations disagree.
    """
    _same_algebra(alg, v)
    if dagger is None:
        dagger = dual(alg, v)
    full = _kernel_of_pairing(v, dagger.basis)
    diffs = _kernel_of_pairing(v, [differential(e, v) for e in alg.basis()])
    if full != diffs:
        raise ConsistencyError("right kernel from V-dagger disagrees with the differentials-only pairing")
    return full


def right_kernel_via_differentials(alg: Algebra, v: VModule) -> Subspace:
    return _kernel_of_pairing(v, [differential(e, v) for e in alg.basis()])


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    checked: int
    counterexample: tuple | None = None


def leibniz_for_differentials(alg: Algebra, v: VModule) -> IdentityCheck:
    """Check ``d(e_i e_j) = d(e_i) e_j + e_i d(e_j)`` as covectors on all basis pairs."""
    _same_algebra(alg, v)
    one = alg.one
    basis = alg.basis()
    diffs = [differential(e, v) for e in basis]
    checked = 0
    for i, ei in enumerate(basis):
        for j, ej in enumerate(basis):
            lhs = differential(ei * ej, v)
            rhs = bimodule_act(one, diffs[i], ej) + bimodule_act(ei, diffs[j], one)
            checked += 1
            if lhs != rhs:
                return IdentityCheck(False, checked, (i, j))
    return IdentityCheck(True, checked)


def is_bimodule_closed(space: CovectorSpace) -> bool:
    alg = space.algebra
    for op in alg.left_basis_matrices + alg.right_basis_matrices:
        for w in space.basis:
            if act_matrix(w, op) not in space:
                return False
    return True


def z_linear(w: Covector) -> bool:
    """Check ``w(z_k u_j) = z_k w(u_j)`` on all center and V basis pairs."""
    v = w.vmodule
    alg = v.algebra
    for z in v.center.basis:
        ze = Element(alg, z)
        lz = alg.left_matrix(z)
        for j, u in enumerate(v.basis):
            zu = Derivation(alg, linalg.matmul(lz, u.matrix))
            if couple(w, zu) != ze * w.value(j):
                return False
    return True
