"""Exact linear algebra over the rationals and prime fields.

Matrices are thin immutable wrappers around python-flint's ``fmpq_mat`` and
``nmod_mat``.  Every canonical basis (kernel, image, quotient) is read off a
reduced row echelon form, so repeated calls give bit-identical results.
"""
from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from fractions import Fraction

import flint


class Field:
    """The rationals (``p == 0``) or the prime field of order ``p``."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p < 0 or p == 1:
            raise ValueError(f"invalid characteristic {p}")
        if p and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def __call__(self, x) -> object:
        """Coerce ``x`` (int, Fraction, "num/den" string, or flint scalar)."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p == 0:
            if isinstance(x, flint.fmpq):
                return x
            if isinstance(x, Fraction):
                return flint.fmpq(x.numerator, x.denominator)
            if isinstance(x, (int, flint.fmpz)):
                return flint.fmpq(int(x))
            raise TypeError(f"cannot coerce {x!r} to {self!r}")
        if isinstance(x, flint.nmod):
            if x.modulus() != self.p:
                raise ValueError("modulus mismatch")
            return x
        if isinstance(x, flint.fmpq):
            x = Fraction(int(x.p), int(x.q))
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {self.p}")
            return flint.nmod(x.numerator * pow(x.denominator, -1, self.p), self.p)
        if isinstance(x, (int, flint.fmpz)):
            return flint.nmod(int(x), self.p)
        raise TypeError(f"cannot coerce {x!r} to {self!r}")

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def raw(self, rows: int, cols: int):
        if self.p == 0:
            return flint.fmpq_mat(rows, cols)
        return flint.nmod_mat(rows, cols, self.p)

    def raw_from_rows(self, rows: Sequence[Sequence], ncols: int):
        if not rows:
            return self.raw(0, ncols)
        if self.p == 0:
            return flint.fmpq_mat([[self(x) for x in r] for r in rows])
        return flint.nmod_mat([[int(self(x)) for x in r] for r in rows], self.p)

    def fmt(self, x) -> str:
        """Render a scalar the way manifests write it ("num/den" or an integer)."""
        if self.p == 0:
            return str(x)
        return str(int(x))


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Mat:
    """Immutable exact matrix.  Linear maps V -> W act on column vectors."""

    __slots__ = ("field", "raw")

    def __init__(self, field: Field, raw):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> Mat:
        return cls(field, field.raw(rows, cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> Mat:
        raw = field.raw(n, n)
        one = field.one
        for i in range(n):
            raw[i, i] = one
        return cls(field, raw)

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> Mat:
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, field.raw_from_rows(rows, ncols))

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int | None = None) -> Mat:
        cols = [list(c) for c in cols]
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        if not cols or nrows == 0:
            return cls.zeros(field, nrows, len(cols))
        return cls.from_rows(field, list(zip(*cols)), len(cols))

    @classmethod
    def from_entries(cls, field: Field, rows: int, cols: int, entries: dict) -> Mat:
        """Build from a sparse ``{(i, j): value}`` mapping."""
        raw = field.raw(rows, cols)
        for (i, j), v in entries.items():
            raw[i, j] = field(v)
        return cls(field, raw)

    @classmethod
    def vector(cls, field: Field, values: Sequence) -> Mat:
        return cls.from_columns(field, [values], len(values))

    @classmethod
    def unit(cls, field: Field, n: int, i: int) -> Mat:
        raw = field.raw(n, 1)
        raw[i, 0] = field.one
        return cls(field, raw)

    # shape and access -----------------------------------------------------
    @property
    def rows(self) -> int:
        return self.raw.nrows()

    @property
    def cols(self) -> int:
        return self.raw.ncols()

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.raw[i, j]

    def tolist(self) -> list[list]:
        if self.rows == 0:
            return []
        if self.cols == 0:
            return [[] for _ in range(self.rows)]
        return self.raw.tolist()

    def column(self, j: int) -> Mat:
        return self.select_columns([j])

    def select_columns(self, idx: Sequence[int]) -> Mat:
        raw = self.field.raw(self.rows, len(idx))
        src = self.raw
        for c, j in enumerate(idx):
            for i in range(self.rows):
                v = src[i, j]
                if v:
                    raw[i, c] = v
        return Mat(self.field, raw)

    def select_rows(self, idx: Sequence[int]) -> Mat:
        raw = self.field.raw(len(idx), self.cols)
        src = self.raw
        for r, i in enumerate(idx):
            for j in range(self.cols):
                v = src[i, j]
                if v:
                    raw[r, j] = v
        return Mat(self.field, raw)

    def nonzeros(self) -> list[tuple[int, int, object]]:
        out = []
        for i, row in enumerate(self.tolist()):
            for j, v in enumerate(row):
                if v:
                    out.append((i, j, v))
        return out

    def column_nonzeros(self) -> list[list[tuple[int, object]]]:
        """Per column, the list of ``(row, value)`` pairs with nonzero value."""
        cols: list[list[tuple[int, object]]] = [[] for _ in range(self.cols)]
        for i, row in enumerate(self.tolist()):
            for j, v in enumerate(row):
                if v:
                    cols[j].append((i, v))
        return cols

    def entries_str(self) -> list[list[str]]:
        return [[self.field.fmt(v) for v in row] for row in self.tolist()]

    # arithmetic -----------------------------------------------------------
    def _check(self, other: Mat):
        if not isinstance(other, Mat) or other.field != self.field:
            raise TypeError("field mismatch")

    def __matmul__(self, other: Mat) -> Mat:
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.cols == 0:
            return Mat.zeros(self.field, self.rows, other.cols)
        return Mat(self.field, self.raw * other.raw)

    def __add__(self, other: Mat) -> Mat:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Mat(self.field, self.raw + other.raw)

    def __sub__(self, other: Mat) -> Mat:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Mat(self.field, self.raw - other.raw)

    def __neg__(self) -> Mat:
        return Mat(self.field, -self.raw)

    def scale(self, s) -> Mat:
        s = self.field(s)
        return Mat(self.field, self.raw * s) if self.rows and self.cols else self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat) or other.field != self.field or other.shape != self.shape:
            return False
        if self.rows == 0 or self.cols == 0:
            return True
        return bool(self.raw == other.raw)

    __hash__ = None

    def __repr__(self):
        return f"Mat({self.field!r}, {self.entries_str()})"

    def transpose(self) -> Mat:
        if self.rows == 0 or self.cols == 0:
            return Mat.zeros(self.field, self.cols, self.rows)
        return Mat(self.field, self.raw.transpose())

    @property
    def T(self) -> Mat:
        return self.transpose()

    def is_zero(self) -> bool:
        return all(not v for row in self.tolist() for v in row)

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return int(self.raw.rank())

    def rref(self) -> tuple[Mat, list[int]]:
        """Reduced row echelon form (nonzero rows only) and pivot columns."""
        if self.rows == 0 or self.cols == 0:
            return Mat.zeros(self.field, 0, self.cols), []
        r, rank = self.raw.rref()
        rank = int(rank)
        rows = r.tolist()[:rank]
        pivots = []
        for row in rows:
            pivots.append(next(j for j, v in enumerate(row) if v))
        return Mat.from_rows(self.field, rows, self.cols), pivots


def hstack(field: Field, mats: Sequence[Mat], rows: int | None = None) -> Mat:
    if not mats:
        return Mat.zeros(field, rows or 0, 0)
    r = mats[0].rows
    if any(m.rows != r for m in mats):
        raise ValueError("hstack row mismatch")
    total = sum(m.cols for m in mats)
    raw = field.raw(r, total)
    off = 0
    for m in mats:
        for i, row in enumerate(m.tolist()):
            for j, v in enumerate(row):
                if v:
                    raw[i, off + j] = v
        off += m.cols
    return Mat(field, raw)


def vstack(field: Field, mats: Sequence[Mat], cols: int | None = None) -> Mat:
    if not mats:
        return Mat.zeros(field, 0, cols or 0)
    return hstack(field, [m.T for m in mats]).T


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product with left-index-major ordering: (i, k) -> i*b.rows + k."""
    a._check(b)
    field = a.field
    raw = field.raw(a.rows * b.rows, a.cols * b.cols)
    bn = b.nonzeros()
    for i, j, x in a.nonzeros():
        for k, l, y in bn:
            raw[i * b.rows + k, j * b.cols + l] = x * y
    return Mat(field, raw)


def direct_sum(field: Field, mats: Sequence[Mat]) -> Mat:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    raw = field.raw(rows, cols)
    r0 = c0 = 0
    for m in mats:
        for i, j, v in m.nonzeros():
            raw[r0 + i, c0 + j] = v
        r0 += m.rows
        c0 += m.cols
    return Mat(field, raw)


class Subspace:
    """A subspace of k^n, stored by a basis in reduced column echelon form.

    ``basis`` has the reduced row echelon rows of any spanning set as its
    columns, so ``pivots[i]`` is the coordinate where column ``i`` has its
    leading 1 and every other basis column vanishes.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: Mat, pivots: list[int]):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", list(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.cols

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and other.ambient_dim == self.ambient_dim
            and other.pivots == self.pivots
            and other.basis == self.basis
        )

    __hash__ = None

    def __repr__(self):
        return f"Subspace(ambient={self.ambient_dim}, dim={self.dim})"

    def contains(self, vectors: Mat) -> bool:
        """True iff every column of ``vectors`` lies in the subspace."""
        residual = vectors - self.basis @ vectors.select_rows(self.pivots)
        return residual.is_zero()

    def coordinates(self, vectors: Mat) -> Mat:
        """Coordinates of columns already known to lie in the subspace."""
        return vectors.select_rows(self.pivots)

    def element(self, i: int) -> Mat:
        return self.basis.column(i)


def span(field: Field, ambient_dim: int, vectors: Mat) -> Subspace:
    """Canonical subspace spanned by the columns of ``vectors``."""
    if vectors.rows != ambient_dim:
        raise ValueError("vector length does not match ambient dimension")
    echelon, pivots = vectors.T.rref()
    return Subspace(ambient_dim, echelon.T if echelon.rows else Mat.zeros(field, ambient_dim, 0), pivots)


def zero_subspace(field: Field, n: int) -> Subspace:
    return Subspace(n, Mat.zeros(field, n, 0), [])


def full_subspace(field: Field, n: int) -> Subspace:
    return Subspace(n, Mat.identity(field, n), list(range(n)))


def kernel(m: Mat) -> Subspace:
    field, n = m.field, m.cols
    echelon, pivots = m.rref()
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    if not free:
        return zero_subspace(field, n)
    rows = echelon.tolist()
    vecs = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][f]
        vecs.append(v)
    return span(field, n, Mat.from_columns(field, vecs, n))


def image(m: Mat) -> Subspace:
    return span(m.field, m.rows, m)


def solve(m: Mat, rhs: Mat) -> Mat | None:
    """Echelon particular solution of ``m @ X == rhs`` (free variables zero)."""
    if rhs.rows != m.rows:
        raise ValueError("rhs rows must match")
    field, n = m.field, m.cols
    aug = hstack(field, [m, rhs], m.rows)
    echelon, pivots = aug.rref()
    if any(p >= n for p in pivots):
        return None
    rows = echelon.tolist()
    raw = field.raw(n, rhs.cols)
    for r, pc in enumerate(pivots):
        for c in range(rhs.cols):
            v = rows[r][n + c]
            if v:
                raw[pc, c] = v
    return Mat(field, raw)


def quotient(ambient_dim: int, rel: Subspace) -> tuple[Mat, Mat]:
    """Projection onto k^n / rel and a coordinate section.

    Quotient coordinates are the non-pivot coordinates of ``rel``.  The
    section embeds them as those coordinates, so every quotient basis vector
    lifts to a single ambient basis vector.
    """
    if rel.ambient_dim != ambient_dim:
        raise ValueError("ambient dimension mismatch")
    field = rel.field
    pivots = rel.pivots
    pivot_set = set(pivots)
    keep = [j for j in range(ambient_dim) if j not in pivot_set]
    pos = {j: t for t, j in enumerate(keep)}
    proj = field.raw(len(keep), ambient_dim)
    sect = field.raw(ambient_dim, len(keep))
    for t, j in enumerate(keep):
        proj[t, j] = field.one
        sect[j, t] = field.one
    # v - sum_k v[p_k] r_k vanishes at pivots; keep its free coordinates
    for k, col in enumerate(rel.basis.column_nonzeros()):
        pk = pivots[k]
        for i, v in col:
            if i in pos:
                proj[pos[i], pk] = -v
    return Mat(field, proj), Mat(field, sect)


def is_bijective(m: Mat) -> bool:
    return m.rows == m.cols and m.rank() == m.rows


def is_injective(m: Mat) -> bool:
    return m.rank() == m.cols


def is_surjective(m: Mat) -> bool:
    return m.rank() == m.rows


def inverse(m: Mat) -> Mat:
    if not is_bijective(m):
        raise ValueError("matrix is not invertible")
    if m.rows == 0:
        return m
    return Mat(m.field, m.raw.inv())


def left_inverse(m: Mat) -> Mat | None:
    """Some X with X @ m == id, or None when m is not injective."""
    x = solve(m.T, Mat.identity(m.field, m.cols))
    return None if x is None else x.T


def linear_maps_solving(
    field: Field,
    src_dim: int,
    dst_dim: int,
    residual: Callable[[Mat], Sequence[Mat]],
) -> tuple[Mat | None, Subspace]:
    """Solve the affine system ``residual(X) == 0`` over dst_dim x src_dim matrices.

    ``residual`` must be affine in X.  Returns a particular solution (or None
    when infeasible) and the homogeneous solution space, whose vectors are
    row-major flattenings of X.
    """
    n = src_dim * dst_dim

    def flat(mats: Sequence[Mat]) -> list:
        out = []
        for r in mats:
            for row in r.tolist():
                out.extend(row)
        return out

    base = flat(residual(Mat.zeros(field, dst_dim, src_dim)))
    cols = []
    for k in range(n):
        e = Mat.from_entries(field, dst_dim, src_dim, {divmod(k, src_dim): 1})
        v = flat(residual(e))
        cols.append([a - b for a, b in zip(v, base)])
    m = len(base)
    system = Mat.from_columns(field, cols, m) if cols else Mat.zeros(field, m, 0)
    homogeneous = kernel(system)
    sol = solve(system, Mat.vector(field, [-b for b in base]) if m else Mat.zeros(field, 0, 1))
    particular = None
    if sol is not None:
        vals = [sol[k, 0] for k in range(n)]
        particular = unflatten(field, vals, dst_dim, src_dim)
    return particular, homogeneous


def unflatten(field: Field, values: Sequence, rows: int, cols: int) -> Mat:
    values = list(values)
    return Mat.from_rows(field, [values[i * cols:(i + 1) * cols] for i in range(rows)], cols)


def as_scalars(field: Field, values: Iterable) -> list:
    return [field(v) for v in values]
