"""Second dual, canonical embedding, dual-basis certificates and ghosts.

An element ``w`` of the second dual is stored by its values on the canonical
basis ``phi_1..phi_p`` of V-dagger: an ``n x p`` matrix with column ``j`` the
coefficients of ``w(phi_j)``. Flattened row-major, ``[r][j]`` is variable
``r * p + j``.

Bimodule-homomorphism constraints are generated from ``w(e_i phi_j) = e_i w(phi_j)``
and ``w(phi_j e_k) = w(phi_j) e_k`` over basis elements only. Together these
give ``w(a phi b) = a w(phi) b`` for all ``a, b`` by bilinearity, so the full
set of triples never has to be enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .algebra import Algebra, Element, center
from .derivations import Derivation, VModule, z_action
from .duality import (
    Covector,
    CovectorSpace,
    act_matrix,
    couple,
    differential,
    dual,
    is_bimodule_closed,
    leibniz_for_differentials,
    right_kernel,
    star_dual,
)
from .errors import CoefficientNotCentral, ConsistencyError, LiftMismatch, NotInModule
from .linalg import Matrix, Subspace, Vector


class BidualElement:
    __slots__ = ("space", "values")

    def __init__(self, space: CovectorSpace, values):
        self.space = space
        self.values: Matrix = linalg.as_matrix(values)

    @classmethod
    def from_flat(cls, space: CovectorSpace, flat: Sequence[Fraction]) -> "BidualElement":
        return cls(space, linalg.unflatten(flat, space.algebra.dim, space.dim))

    @property
    def algebra(self) -> Algebra:
        return self.space.algebra

    @property
    def flat(self) -> Vector:
        return linalg.flatten(self.values)

    def __call__(self, w: Covector) -> Element:
        coords = self.space.coordinates(w)
        return Element(self.algebra, linalg.matvec(self.values, coords))

    def __eq__(self, other):
        return isinstance(other, BidualElement) and other.space is self.space and other.values == self.values

    def __hash__(self):
        return hash(self.values)

    def __bool__(self):
        return any(any(r) for r in self.values)

    def __repr__(self):
        return f"BidualElement({[[str(x) for x in r] for r in self.values]})"


class BidualSpace:
    """hom of A-bimodules from V-dagger to A, as a canonical subspace of ``Q^(n*p)``."""

    def __init__(self, covectors: CovectorSpace, subspace: Subspace):
        self.covectors = covectors
        self.subspace = subspace

    @property
    def algebra(self) -> Algebra:
        return self.covectors.algebra

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @cached_property
    def basis(self) -> tuple[BidualElement, ...]:
        return tuple(BidualElement.from_flat(self.covectors, b) for b in self.subspace.basis)

    def coordinates(self, w: BidualElement) -> Vector:
        coords = self.subspace.coordinates(w.flat)
        if coords is None:
            raise NotInModule("map is not a bimodule homomorphism into A")
        return coords

    def __contains__(self, w: BidualElement) -> bool:
        return w.space is self.covectors and self.subspace.contains(w.flat)

    def __repr__(self):
        return f"BidualSpace(dim={self.dim})"


def _action_coordinates(c: CovectorSpace) -> list[tuple[Matrix, list[Vector]]]:
    """For each basis operator (left or right multiplication by ``e_i``), the
    coordinates of the acted basis covectors in ``c``.

    Raises:
        ConsistencyError: ``c`` is not closed under the bimodule action.
    """
    alg = c.algebra
    out = []
    for op in alg.left_basis_matrices + alg.right_basis_matrices:
        coords = []
        for phi in c.basis:
            acted = act_matrix(phi, op)
            if not c.subspace.contains(acted.flat):
                raise ConsistencyError("covector space is not closed under the bimodule action")
            coords.append(c.coordinates(acted, check=False))
        out.append((op, coords))
    return out


def second_dual(alg: Algebra, c: CovectorSpace) -> BidualSpace:
    """All A-bimodule homomorphisms ``c -> A``."""
    n, p = alg.dim, c.dim
    eqs = []
    for op, coords in _action_coordinates(c):
        for j, gamma in enumerate(coords):
            # w(op phi_j) - op w(phi_j) = 0, row r
            for r in range(n):
                eq: dict[int, Fraction] = {}
                for l, g in enumerate(gamma):
                    if g:
                        eq[r * p + l] = g
                for s, x in enumerate(op[r]):
                    if x:
                        k = s * p + j
                        y = eq.get(k, linalg.ZERO) - x
                        if y:
                            eq[k] = y
                        else:
                            eq.pop(k)
                if eq:
                    eqs.append(eq)
    return BidualSpace(c, linalg.sparse_nullspace(eqs, n * p))


def is_homomorphism(w: BidualElement) -> bool:
    """Check ``w(e_i phi_j e_k) = e_i w(phi_j) e_k`` on every basis triple."""
    c = w.space
    alg = c.algebra
    for i, li in enumerate(alg.left_basis_matrices):
        for k, rk in enumerate(alg.right_basis_matrices):
            op = linalg.matmul(li, rk)
            for j, phi in enumerate(c.basis):
                lhs = w(act_matrix(phi, op))
                rhs = linalg.matvec(op, tuple(row[j] for row in w.values))
                if lhs.coeffs != rhs:
                    return False
    return True


def z_act_bidual(z: Sequence[Fraction], w: BidualElement) -> BidualElement:
    """``(z w)(phi) = z * w(phi)``."""
    return BidualElement(w.space, linalg.matmul(w.algebra.left_matrix(z), w.values))


def is_z_closed(b: BidualSpace) -> bool:
    """The second dual is a Z-module: ``z w`` stays a bimodule homomorphism."""
    for z in center(b.algebra).basis:
        for w in b.basis:
            if z_act_bidual(z, w) not in b:
                return False
    return True


def embed(v: Derivation, c: CovectorSpace) -> BidualElement:
    """The canonical image ``v^ : phi -> phi(v)``."""
    cols = [couple(phi, v).coeffs for phi in c.basis]
    n = c.algebra.dim
    if not cols:
        return BidualElement(c, tuple(() for _ in range(n)))
    return BidualElement(c, linalg.transpose(cols))


def embedding_matrix(vm: VModule, c: CovectorSpace, b: BidualSpace) -> Matrix:
    """Rows are the second-dual coordinates of the images of the V basis."""
    return tuple(b.coordinates(embed(u, c)) for u in vm.basis)


@dataclass(frozen=True)
class DualBasisCertificate:
    """Generators ``v_i`` of V and Z-valued cogenerators ``w^i`` with ``v = sum w^i(v) v_i``."""

    generators: tuple[Derivation, ...]
    cogenerators: tuple[Covector, ...]

    def check(self) -> bool:
        if not self.generators:
            return True
        m = len(self.generators)
        alg = self.generators[0].algebra
        z = center(alg)
        for w in self.cogenerators:
            if not all(z.contains(w.value(j).coeffs) for j in range(m)):
                return False
        for j, u in enumerate(self.generators):
            total = linalg.zeros(alg.dim ** 2)
            for w, g in zip(self.cogenerators, self.generators):
                total = linalg.add(total, z_action(w.value(j), g, check=False).flat)
            if total != u.flat:
                return False
        return True


def dual_basis_certificate(
    alg: Algebra, vm: VModule, star: CovectorSpace | None = None
) -> DualBasisCertificate | None:
    """Search for Z-valued cogenerators dual to the canonical V basis.

    The unknowns are the coordinates of each cogenerator in a basis of V*.
    The system is linear; by the dual-basis lemma it is solvable exactly when
    V is a finitely generated projective Z-module. Returns None otherwise.
    """
    if star is None:
        star = star_dual(alg, vm)
    n, m, s = alg.dim, vm.dim, star.dim
    if m == 0:
        return DualBasisCertificate((), ())
    # column (i, t): contribution of x[i][t] to  sum_i w^i(u_j) v_i  for every j
    columns = []
    for i, vi in enumerate(vm.basis):
        for psi in star.basis:
            col = []
            for j in range(m):
                col.extend(linalg.flatten(linalg.matmul(alg.left_matrix(psi.value(j).coeffs), vi.matrix)))
            columns.append(col)
    rhs = [x for u in vm.basis for x in u.flat]
    if not columns:
        return None
    system = linalg.transpose(columns)
    sol = linalg.solve(system, rhs)
    if sol is None:
        return None
    x, _ = sol
    cogens = tuple(star.combine(x[i * s:(i + 1) * s]) for i in range(m))
    cert = DualBasisCertificate(vm.basis, cogens)
    if not cert.check():
        raise ConsistencyError("dual-basis solve returned an invalid certificate")
    return cert


def dual_basis_expansion_holds(cert: DualBasisCertificate, c: CovectorSpace) -> bool:
    """``w(u_j) = sum_i w^i(u_j) w(u_i)`` for every covector ``w`` in the basis of ``c``."""
    alg = c.algebra
    for w in c.basis:
        for j in range(c.vmodule.dim):
            total = alg.zero
            for i, cog in enumerate(cert.cogenerators):
                total = total + cog.value(j) * w.value(i)
            if total != w.value(j):
                return False
    return True


def lift(w: BidualElement, cert: DualBasisCertificate, vm: VModule) -> Derivation:
    """Recover ``v`` with ``embed(v) = w`` as ``v = sum_i w(w^i) v_i``.

    Raises:
        CoefficientNotCentral: some ``w(w^i)`` is outside the center.
        LiftMismatch: the constructed derivation is outside V or its image is not ``w``.
    """
    alg = vm.algebra
    z = center(alg)
    n = alg.dim
    total = linalg.zeros(n * n)
    for cog, gen in zip(cert.cogenerators, cert.generators):
        coeff = w(cog)
        if not z.contains(coeff.coeffs):
            raise CoefficientNotCentral(f"coefficient {coeff!r} is not central")
        total = linalg.add(total, z_action(coeff, gen, check=False).flat)
    v = Derivation.from_flat(alg, total)
    if v not in vm:
        raise LiftMismatch("lifted map is not in V")
    if embed(v, w.space) != w:
        raise LiftMismatch("embedding of the lift differs from the given element")
    return v


def _closure(c: CovectorSpace, seeds: Sequence[Vector]) -> Subspace:
    """Smallest subspace of ``c`` containing ``seeds`` and stable under the bimodule action."""
    alg = c.algebra
    ambient = c.subspace.ambient_dim
    ops = alg.left_basis_matrices + alg.right_basis_matrices
    ech = linalg.Echelon(ambient)
    queue = [s for s in seeds if ech.insert_dense(s)]
    while queue:
        vec = queue.pop(0)
        w = Covector.from_flat(c.vmodule, vec)
        for op in ops:
            acted = act_matrix(w, op).flat
            if ech.insert_dense(acted):
                queue.append(acted)
    return Subspace(ambient, ech.dense_rows())


def _complement(space: Subspace, sub: Subspace) -> Subspace:
    """Canonical representatives of ``space / sub``: RREF of the normal forms of ``space``'s basis."""
    return Subspace.span(space.ambient_dim, (sub.normal_form(b) for b in space.basis))


def differential_closure(alg: Algebra, vm: VModule, c: CovectorSpace | None = None) -> Subspace:
    """The sub-bimodule of V-dagger generated by ``d e_1 .. d e_n``."""
    if c is None:
        c = dual(alg, vm)
    return _closure(c, [differential(e, vm).flat for e in alg.basis()])


def ghost_covectors(alg: Algebra, vm: VModule, c: CovectorSpace | None = None) -> tuple[int, list[Covector]]:
    """Covectors not in the sub-bimodule generated by differentials.

    Returns the codimension of that sub-bimodule in V-dagger and canonical
    representatives of the quotient.
    """
    if c is None:
        c = dual(alg, vm)
    closure = differential_closure(alg, vm, c)
    if not closure.issubspace(c.subspace):
        raise ConsistencyError("differentials generate covectors outside V-dagger")
    reps = _complement(c.subspace, closure)
    return c.dim - closure.dim, [Covector.from_flat(vm, r) for r in reps.basis]


def ghost_biduals(vm: VModule, c: CovectorSpace, b: BidualSpace) -> tuple[int, list[BidualElement]]:
    """Second-dual elements outside the image of V: cokernel dimension and representatives."""
    image = Subspace.span(b.subspace.ambient_dim, (embed(u, c).flat for u in vm.basis))
    reps = _complement(b.subspace, image)
    return b.dim - image.dim, [BidualElement.from_flat(c, r) for r in reps.basis]


CERTIFICATE_NOTE = (
    "V is finitely generated projective over Z iff the dual-basis system for a fixed "
    "generating set is solvable (dual-basis lemma); generating set = canonical Q-basis of V"
)


@dataclass
class ReflexivityReport:
    dim_algebra: int
    dim_center: int
    dim_v: int
    dim_v_star: int
    dim_v_dagger: int
    dim_v_bidual: int
    embedding_rank: int
    injective: bool
    reflexive: bool
    nondegenerate: bool
    leibniz_differentials: bool
    certificate: DualBasisCertificate | None
    ghost_covector_dim: int
    ghost_bidual_dim: int
    # computed objects, kept for serialization
    center: Subspace = field(repr=False, default=None)
    vmodule: VModule = field(repr=False, default=None)
    star: CovectorSpace = field(repr=False, default=None)
    dagger: CovectorSpace = field(repr=False, default=None)
    bidual: BidualSpace = field(repr=False, default=None)
    ghost_covector_reps: list = field(repr=False, default_factory=list)
    ghost_bidual_reps: list = field(repr=False, default_factory=list)

    @property
    def projective(self) -> bool:
        return self.certificate is not None

    @property
    def dims(self) -> tuple[int, ...]:
        return (self.dim_algebra, self.dim_center, self.dim_v, self.dim_v_star, self.dim_v_dagger, self.dim_v_bidual)


def reflexivity_report(alg: Algebra, vm: VModule) -> ReflexivityReport:
    """Run every computation on ``(alg, vm)`` and cross-check the results.

    Raises:
        ConsistencyError: the embedding is not injective, a certificate exists
            without reflexivity, or a lift round trip fails.
    """
    z = center(alg)
    star = star_dual(alg, vm)
    dagger = dual(alg, vm)
    if not is_bimodule_closed(dagger):
        raise ConsistencyError("V-dagger is not closed under the bimodule action")
    bid = second_dual(alg, dagger)
    emb = embedding_matrix(vm, dagger, bid)
    rank = linalg.rank(emb, bid.dim) if emb else 0
    injective = rank == vm.dim
    if not injective:
        raise ConsistencyError("canonical embedding V -> V-bidual is not injective")
    reflexive = injective and rank == bid.dim
    kernel = right_kernel(alg, vm, dagger)
    leib = leibniz_for_differentials(alg, vm)
    cert = dual_basis_certificate(alg, vm, star)
    if cert is not None:
        if not reflexive:
            raise ConsistencyError("certificate found but V is not reflexive")
        for w in bid.basis:
            lift(w, cert, vm)
    ghost_cov, cov_reps = ghost_covectors(alg, vm, dagger)
    ghost_bid, bid_reps = ghost_biduals(vm, dagger, bid)
    if cert is not None and ghost_bid:
        raise ConsistencyError("certificate found but the second dual has ghosts")
    return ReflexivityReport(
        dim_algebra=alg.dim,
        dim_center=z.dim,
        dim_v=vm.dim,
        dim_v_star=star.dim,
        dim_v_dagger=dagger.dim,
        dim_v_bidual=bid.dim,
        embedding_rank=rank,
        injective=injective,
        reflexive=reflexive,
        nondegenerate=kernel.dim == 0,
        leibniz_differentials=leib.holds,
        certificate=cert,
        ghost_covector_dim=ghost_cov,
        ghost_bidual_dim=ghost_bid,
        center=z,
        vmodule=vm,
        star=star,
        dagger=dagger,
        bidual=bid,
        ghost_covector_reps=cov_reps,
        ghost_bidual_reps=bid_reps,
    )
