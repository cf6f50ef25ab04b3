"""Bundled algebras.

Basis orderings (fixed, reports depend on them):

``matrix n``
    matrix units ``E_ij`` in row-major order, labels ``E11, E12, ..., Enn``.
``triangular n``
    upper-triangular matrix units ``E_ij`` (``i <= j``), row-major.
``dual-numbers``
    ``1, x`` with ``x^2 = 0``.
``group-algebra-cyclic n``
    ``1, g, g^2, ..., g^(n-1)`` with ``g^n = 1``.
``quaternions``
    ``1, i, j, k`` (Hamilton's quaternions over Q).
"""

from __future__ import annotations

from .algebra import Algebra, make_algebra
from .errors import BadParams, UnknownPreset

PRESETS = ("matrix", "dual-numbers", "triangular", "group-algebra-cyclic", "quaternions")

# (name, param) pairs exercised by the test corpus and acceptance suite
CORPUS = (
    ("matrix", 1),
    ("matrix", 2),
    ("matrix", 3),
    ("dual-numbers", None),
    ("triangular", 2),
    ("triangular", 3),
    ("group-algebra-cyclic", 2),
    ("group-algebra-cyclic", 3),
    ("quaternions", None),
)

MAX_PARAM = 12


def _label(i, j, n):
    return f"E{i}{j}" if n < 10 else f"E{i},{j}"


def _units(n, pairs):
    """Algebra spanned by the matrix units ``pairs`` (closed under products)."""
    index = {p: k for k, p in enumerate(pairs)}
    d = len(pairs)
    table = []
    for (i, j) in pairs:
        row = []
        for (k, l) in pairs:
            vec = [0] * d
            if j == k:
                vec[index[(i, l)]] = 1
            row.append(vec)
        table.append(row)
    unit = [0] * d
    for i in range(1, n + 1):
        unit[index[(i, i)]] = 1
    return table, unit, [_label(i, j, n) for i, j in pairs]


def matrix_algebra(n: int) -> Algebra:
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    table, unit, labels = _units(n, pairs)
    return make_algebra(table, unit, labels, name=f"matrix-{n}")


def triangular_algebra(n: int) -> Algebra:
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    table, unit, labels = _units(n, pairs)
    return make_algebra(table, unit, labels, name=f"triangular-{n}")


def dual_numbers() -> Algebra:
    table = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    return make_algebra(table, [1, 0], ["1", "x"], name="dual-numbers")


def cyclic_group_algebra(n: int) -> Algebra:
    table = [[[1 if k == (i + j) % n else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    labels = ["1", "g"] + [f"g^{k}" for k in range(2, n)]
    return make_algebra(table, [1] + [0] * (n - 1), labels[:n], name=f"group-algebra-cyclic-{n}")


def quaternions() -> Algebra:
    # products of 1, i, j, k as (sign, index)
    prod = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    table = []
    for a in range(4):
        row = []
        for b in range(4):
            sign, k = prod[(a, b)]
            vec = [0] * 4
            vec[k] = sign
            row.append(vec)
        table.append(row)
    return make_algebra(table, [1, 0, 0, 0], ["1", "i", "j", "k"], name="quaternions")


def preset(name: str, param: int | None = None) -> Algebra:
    """Build a bundled algebra by name.

    Raises:
        UnknownPreset: ``name`` is not one of :data:`PRESETS`.
        BadParams: missing, superfluous or out-of-range ``param``.
    """
    if name not in PRESETS:
        raise UnknownPreset(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    if name in ("dual-numbers", "quaternions"):
        if param is not None:
            raise BadParams(f"preset {name!r} takes no parameter")
        return dual_numbers() if name == "dual-numbers" else quaternions()
    if param is None:
        raise BadParams(f"preset {name!r} requires an integer parameter")
    if isinstance(param, bool) or not isinstance(param, int) or not 1 <= param <= MAX_PARAM:
        raise BadParams(f"parameter for {name!r} must be an integer in 1..{MAX_PARAM}, got {param!r}")
    if name == "matrix":
        return matrix_algebra(param)
    if name == "triangular":
        return triangular_algebra(param)
    return cyclic_group_algebra(param)


def corpus_name(name: str, param: int | None) -> str:
    return name if param is None else f"{name}-{param}"
