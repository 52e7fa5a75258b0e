"""Small algebras and modules used throughout the examples."""
from __future__ import annotations

from ..algcore import Algebra, Bimodule, ground
from ..exactla import Field, Mat


def _table_algebra(field: Field, n: int, product, unit: list, name: str) -> Algebra:
    table = [[product(i, j) for j in range(n)] for i in range(n)]
    return Algebra.from_table(field, table, unit, name)


def matrix_algebra(field: Field, n: int) -> Algebra:
    """M_n(k) with basis e_ij at index i*n + j."""

    def product(a, b):
        i, j = divmod(a, n)
        k, l = divmod(b, n)
        v = [0] * (n * n)
        if j == k:
            v[i * n + l] = 1
        return v

    unit = [1 if divmod(a, n)[0] == divmod(a, n)[1] else 0 for a in range(n * n)]
    return _table_algebra(field, n * n, product, unit, f"M{n}")


def upper_triangular(field: Field) -> Algebra:
    """Upper triangular 2x2 matrices, basis e11, e12, e22."""
    idx = {(0, 0): 0, (0, 1): 1, (1, 1): 2}
    inv = {v: k for k, v in idx.items()}

    def product(a, b):
        (i, j), (k, l) = inv[a], inv[b]
        v = [0, 0, 0]
        if j == k:
            v[idx[(i, l)]] = 1
        return v

    return _table_algebra(field, 3, product, [1, 0, 1], "T2")


def product_algebra(field: Field, n: int) -> Algebra:
    """k^n with orthogonal idempotents."""

    def product(i, j):
        return [1 if (i == j == t) else 0 for t in range(n)]

    return _table_algebra(field, n, product, [1] * n, f"k^{n}")


def truncated_polynomial(field: Field, n: int) -> Algebra:
    """k[x]/(x^n), basis 1, x, ..., x^(n-1)."""

    def product(i, j):
        return [1 if i + j == t else 0 for t in range(n)]

    return _table_algebra(field, n, product, [1] + [0] * (n - 1), f"k[x]/x^{n}")


def quadratic_extension(field: Field, d) -> Algebra:
    """k[s]/(s^2 - d), basis 1, s; a field when d is not a square."""
    d = field(d)

    def product(i, j):
        if i + j < 2:
            return [1 if i + j == t else 0 for t in range(2)]
        return [d, 0]

    return _table_algebra(field, 2, product, [1, 0], f"k(sqrt {field.fmt(d)})")


def cyclic_group_algebra(field: Field, n: int) -> Algebra:
    """k[Z/n] with basis g^0, ..., g^(n-1)."""

    def product(i, j):
        return [1 if (i + j) % n == t else 0 for t in range(n)]

    return _table_algebra(field, n, product, [1] + [0] * (n - 1), f"kZ/{n}")


def row_module(field: Field, n: int, mn: Algebra | None = None) -> Bimodule:
    """k^{1 x n} as a (k, M_n(k))-bimodule, right action by matrix product."""
    mn = mn or matrix_algebra(field, n)
    ract = []
    for a in range(n * n):
        i, j = divmod(a, n)
        # e_r . e_ij = delta_{ri} e_j
        ract.append(Mat.from_entries(field, n, n, {(j, i): 1}))
    return Bimodule(ground(field), mn, n, [Mat.identity(field, n)], ract, name=f"k^(1x{n})")


def column_module(field: Field, n: int, mn: Algebra | None = None) -> Bimodule:
    """k^{n x 1} as an (M_n(k), k)-bimodule."""
    mn = mn or matrix_algebra(field, n)
    lact = []
    for a in range(n * n):
        i, j = divmod(a, n)
        lact.append(Mat.from_entries(field, n, n, {(i, j): 1}))
    return Bimodule(mn, ground(field), n, lact, [Mat.identity(field, n)], name=f"k^({n}x1)")


def character_module(alg: Algebra, values: list, side: str, name: str = "") -> Bimodule:
    """A one-dimensional module on which b_i acts by ``values[i]``."""
    field = alg.field
    acts = [Mat.from_rows(field, [[v]]) for v in values]
    one = [Mat.identity(field, 1)]
    k = ground(field)
    if side == "right":
        return Bimodule(k, alg, 1, one, acts, name=name or "chi")
    return Bimodule(alg, k, 1, acts, one, name=name or "chi")
