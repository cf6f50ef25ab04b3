"""Independent brute-force oracles built on sympy.

Nothing here imports ncdiff. Algebras are rebuilt from concrete models
(sympy matrices, sympy quaternions, polynomial reduction, group tables) and
every hom-space is cut out with sympy's own linear algebra, using different
formulations than the package where possible:

* V-dagger: explicit symbolic unknowns and ``linear_eq_to_matrix``.
* second dual: constraints over full triples ``e_i phi e_k``.
* differential sub-bimodule: one-shot span of ``e_i (d e_l) e_k`` instead of
  a fixpoint iteration (A is unital, so that span is already the bimodule).
"""

from __future__ import annotations

import itertools

import sympy as sp
from sympy.polys.matrices import DomainMatrix


def _coords_in(basis_mats, m):
    """Coordinates of matrix ``m`` in a list of linearly independent matrices."""
    a = sp.Matrix.hstack(*[b.reshape(len(b), 1) for b in basis_mats])
    sol = a.solve_least_squares(m.reshape(len(m), 1)) if a.rows > a.cols else a.solve(m.reshape(len(m), 1))
    assert a * sol == m.reshape(len(m), 1)
    return list(sol)


def matrix_units(n, upper_only=False):
    pairs = [(i, j) for i in range(n) for j in range(n) if not upper_only or i <= j]
    mats = []
    for i, j in pairs:
        e = sp.zeros(n, n)
        e[i, j] = 1
        mats.append(e)
    table = [[_coords_in(mats, a * b) for b in mats] for a in mats]
    unit = _coords_in(mats, sp.eye(n))
    return table, unit


def quaternion_table():
    basis = [sp.Quaternion(1, 0, 0, 0), sp.Quaternion(0, 1, 0, 0), sp.Quaternion(0, 0, 1, 0), sp.Quaternion(0, 0, 0, 1)]
    def coords(q):
        return [q.a, q.b, q.c, q.d]
    table = [[coords(a * b) for b in basis] for a in basis]
    return table, [1, 0, 0, 0]


def dual_number_table():
    x = sp.Symbol("x")
    basis = [sp.Integer(1), x]
    def coords(p):
        p = sp.rem(sp.expand(p), x**2, x)
        poly = sp.Poly(p, x)
        return [poly.coeff_monomial(1), poly.coeff_monomial(x)]
    return [[coords(a * b) for b in basis] for a in basis], [1, 0]


def cyclic_table(n):
    table = [[[1 if k == (i + j) % n else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    return table, [1] + [0] * (n - 1)


def truncated_poly_table(k):
    x = sp.Symbol("x")
    basis = [x**i for i in range(k)]
    def coords(p):
        poly = sp.Poly(sp.rem(sp.expand(p), x**k, x), x)
        return [poly.coeff_monomial(x**i) for i in range(k)]
    return [[coords(a * b) for b in basis] for a in basis], [1] + [0] * (k - 1)


def square_zero_table():
    x, y = sp.symbols("x y")
    basis = [sp.Integer(1), x, y]
    def coords(p):
        poly = sp.Poly(sp.expand(p), x, y)
        # drop everything of total degree >= 2
        return [poly.coeff_monomial(1), poly.coeff_monomial(x), poly.coeff_monomial(y)]
    return [[coords(a * b) for b in basis] for a in basis], [1, 0, 0]


def exterior_table():
    subsets = [(), (0,), (1,), (0, 1)]
    def wedge(s, t):
        if set(s) & set(t):
            return 0, None
        seq = list(s) + list(t)
        inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
        return (-1) ** inversions, tuple(sorted(seq))
    table = []
    for s in subsets:
        row = []
        for t in subsets:
            sign, u = wedge(s, t)
            vec = [0] * 4
            if u is not None:
                vec[subsets.index(u)] = sign
            row.append(vec)
        table.append(row)
    return table, [1, 0, 0, 0]


def halved_quaternion_table():
    h = sp.Rational(1, 2)
    basis = [sp.Quaternion(1, 0, 0, 0), sp.Quaternion(0, h, 0, 0), sp.Quaternion(0, 0, h, 0), sp.Quaternion(0, 0, 0, h)]
    def coords(q):
        return [q.a, q.b / h, q.c / h, q.d / h]
    return [[coords(a * b) for b in basis] for a in basis], [1, 0, 0, 0]


FILE_MODELS = {
    "dual-numbers.json": dual_number_table,
    "truncated-x3.json": lambda: truncated_poly_table(3),
    "square-zero-2.json": square_zero_table,
    "exterior-2.json": exterior_table,
    "quaternions-halved.json": halved_quaternion_table,
}


def build(name, param):
    if name in FILE_MODELS:
        return FILE_MODELS[name]()
    if name == "matrix":
        return matrix_units(param)
    if name == "triangular":
        return matrix_units(param, upper_only=True)
    if name == "quaternions":
        return quaternion_table()
    if name == "dual-numbers":
        return dual_number_table()
    if name == "group-algebra-cyclic":
        return cyclic_table(param)
    raise KeyError(name)


class Model:
    """An algebra given by structure constants, with sympy-side helpers."""

    def __init__(self, table, unit):
        self.n = n = len(table)
        self.c = [[sp.Matrix(table[i][j]) for j in range(n)] for i in range(n)]
        self.unit = sp.Matrix(unit)

    def mul(self, x, y):
        out = sp.zeros(self.n, 1)
        for i in range(self.n):
            for j in range(self.n):
                if x[i] and y[j]:
                    out += x[i] * y[j] * self.c[i][j]
        return out

    def e(self, i):
        v = sp.zeros(self.n, 1)
        v[i] = 1
        return v

    def L(self, x):
        return sp.Matrix.hstack(*[self.mul(x, self.e(s)) for s in range(self.n)])

    def R(self, x):
        return sp.Matrix.hstack(*[self.mul(self.e(s), x) for s in range(self.n)])

    # -- center and derivations ------------------------------------------------

    def center(self):
        z = sp.Matrix(sp.symbols(f"z0:{self.n}"))
        eqs = []
        for i in range(self.n):
            eqs.extend(list(self.mul(z, self.e(i)) - self.mul(self.e(i), z)))
        a, _ = sp.linear_eq_to_matrix(eqs, list(z))
        return a.nullspace()

    def leibniz_nullspace(self):
        """Derivations as n x n matrices, from symbolic unknowns."""
        n = self.n
        syms = sp.symbols(f"d0:{n * n}")
        d = sp.Matrix(n, n, syms)
        eqs = []
        for i in range(n):
            for j in range(n):
                lhs = d * self.c[i][j]
                rhs = self.mul(d[:, i], self.e(j)) + self.mul(self.e(i), d[:, j])
                eqs.extend(list(lhs - rhs))
        a, _ = sp.linear_eq_to_matrix(eqs, list(syms))
        return [sp.Matrix(n, n, list(v)) for v in a.nullspace()]

    def inner_span(self):
        mats = [self.L(self.e(i)) - self.R(self.e(i)) for i in range(self.n)]
        return mats

    # -- duals ------------------------------------------------------------------

    def dagger(self, vbasis, star=False):
        """Basis of hom_Z(V, A) (or hom_Z(V, Z)) as lists of m column values."""
        n, m = self.n, len(vbasis)
        if m == 0:
            return []
        syms = sp.symbols(f"w0:{n * m}")
        w = sp.Matrix(n, m, syms)
        eqs = []
        vstack = sp.Matrix.hstack(*[v.reshape(n * n, 1) for v in vbasis])
        for z in self.center():
            for j, v in enumerate(vbasis):
                zv = (self.L(z) * v).reshape(n * n, 1)
                gamma = vstack.solve_least_squares(zv) if vstack.rows > vstack.cols else vstack.solve(zv)
                assert vstack * gamma == zv
                eqs.extend(list(w * gamma - self.L(z) * w[:, j]))
        if star:
            for i in range(n):
                for j in range(m):
                    eqs.extend(list((self.R(self.e(i)) - self.L(self.e(i))) * w[:, j]))
        eqs = [e for e in eqs if e != 0]
        if not eqs:
            sols = [sp.Matrix([1 if k == t else 0 for k in range(n * m)]) for t in range(n * m)]
        else:
            a, _ = sp.linear_eq_to_matrix(eqs, list(syms))
            sols = a.nullspace()
        return [sp.Matrix(n, m, list(s)) for s in sols]

    def differential(self, x, vbasis):
        return sp.Matrix.hstack(*[v * x for v in vbasis])

    def bidual_dim(self, cov):
        """dim of A-bimodule homs span(cov) -> A, constraints over full triples."""
        n, p = self.n, len(cov)
        if p == 0:
            return 0
        m = cov[0].cols
        basis = sp.Matrix.hstack(*[c.reshape(n * m, 1) for c in cov])
        dm_basis = DomainMatrix.from_Matrix(basis).convert_to(sp.QQ)
        rows = {}
        for i in range(n):
            for k in range(n):
                op = self.L(self.e(i)) * self.R(self.e(k))
                for j, phi in enumerate(cov):
                    acted = (op * phi).reshape(n * m, 1)
                    gamma = _solve_dm(dm_basis, acted)
                    # w(op phi_j) - op w(phi_j) = 0 ; unknown W[r, l] at r * p + l
                    for r in range(n):
                        row = {}
                        for l in range(p):
                            if gamma[l]:
                                row[r * p + l] = row.get(r * p + l, 0) + gamma[l]
                        for s in range(n):
                            if op[r, s]:
                                row[s * p + j] = row.get(s * p + j, 0) - op[r, s]
                        row = {c: sp.QQ.from_sympy(sp.nsimplify(x)) for c, x in row.items() if x != 0}
                        if row:
                            rows[len(rows)] = row
        if not rows:
            return n * p
        dm = DomainMatrix(rows, (len(rows), n * p), sp.QQ)
        return n * p - dm.rank()

    def differential_bimodule_dim(self, vbasis):
        """dim span{e_i (d e_l) e_k}."""
        n = self.n
        if not vbasis:
            return 0
        vecs = []
        for l in range(n):
            dl = self.differential(self.e(l), vbasis)
            for i, k in itertools.product(range(n), repeat=2):
                vecs.append(list(self.L(self.e(i)) * self.R(self.e(k)) * dl))
        return sp.Matrix(vecs).rank()

    def embedding_rank(self, vbasis, cov, bid_basis):
        """Rank of v -> (phi_j(v))_j inside the second dual."""
        if not vbasis or not cov:
            return 0
        rows = []
        for t in range(len(vbasis)):
            # phi_j(u_t) = column t of phi_j ; stacked as an n x p matrix
            vals = sp.Matrix.hstack(*[phi[:, t] for phi in cov])
            rows.append(list(vals))
        return sp.Matrix(rows).rank()

    def certificate_exists(self, vbasis):
        """Is there psi^i in V* with u_j = sum_i psi^i(u_j) u_i ?"""
        n, m = self.n, len(vbasis)
        if m == 0:
            return True
        star = self.dagger(vbasis, star=True)
        s = len(star)
        if s == 0:
            return False
        xs = sp.symbols(f"x0:{m * s}")
        eqs = []
        for j in range(m):
            total = sp.zeros(n, n)
            for i in range(m):
                for t in range(s):
                    total += xs[i * s + t] * self.L(star[t][:, j]) * vbasis[i]
            eqs.extend(list(total - vbasis[j]))
        a, b = sp.linear_eq_to_matrix(eqs, list(xs))
        aug = a.row_join(b)
        return a.rank() == aug.rank()


def _solve_dm(basis: DomainMatrix, target: sp.Matrix):
    """Coordinates of ``target`` in the column span of ``basis`` (exact)."""
    aug = basis.hstack(DomainMatrix.from_Matrix(target).convert_to(sp.QQ))
    rref, pivots = aug.rref()
    cols = basis.shape[1]
    assert cols not in pivots, "vector not in span"
    rr = rref.to_Matrix()
    sol = [sp.Integer(0)] * cols
    for r, pc in enumerate(pivots):
        sol[pc] = rr[r, cols]
    return sol


def snapshot(name, param):
    table, unit = build(name, param)
    mdl = Model(table, unit)
    z = mdl.center()
    der = mdl.leibniz_nullspace()
    inner_rank = sp.Matrix([list(x) for x in mdl.inner_span()]).rank()
    star = mdl.dagger(der, star=True)
    dag = mdl.dagger(der)
    bid = mdl.bidual_dim(dag)
    emb = mdl.embedding_rank(der, dag, None)
    closure = mdl.differential_bimodule_dim(der)
    return {
        "dims": [mdl.n, len(z), len(der), len(star), len(dag), bid],
        "inner_rank": inner_rank,
        "embedding_rank": emb,
        "certificate": mdl.certificate_exists(der),
        "ghost_covector_dim": len(dag) - closure,
        "ghost_bidual_dim": bid - emb,
    }
