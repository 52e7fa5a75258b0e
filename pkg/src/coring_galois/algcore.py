"""Finite-dimensional algebras, bimodules, bimodule maps and tensor products.

Conventions: an (A, B)-bimodule ``m`` stores ``lact[i]`` (the matrix of
``b_i . -`` for the basis b_i of A) and ``ract[j]`` (the matrix of ``- . b_j``).
k-tensor coordinates are ordered left-index-major, and the basis of
``m (x)_B n`` is the set of non-pivot coordinates of the relation span, so each
quotient basis vector is an elementary tensor ``e_i (x) e_j``.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cache, cached_property

from .exactla import (
    Field,
    Mat,
    Subspace,
    hstack,
    image,
    kernel,
    kron,
    quotient,
    solve,
    span,
    vstack,
)
from .report import Report


class AlgebraError(ValueError):
    pass


class NotDecidable(ValueError):
    """Raised when a predicate is outside the regime implemented here."""


class Algebra:
    """Unital algebra given by structure constants.

    ``mult`` is an n x n^2 matrix whose column ``i*n + j`` is b_i b_j.
    """

    def __init__(self, field: Field, mult: Mat, unit: Mat, name: str = ""):
        n = unit.rows
        if mult.shape != (n, n * n) or unit.shape != (n, 1):
            raise AlgebraError(f"structure constants have shape {mult.shape}, unit {unit.shape}")
        self.field = field
        self.dim = n
        self.mult = mult
        self.unit = unit
        self.name = name

    @classmethod
    def from_table(cls, field: Field, table: Sequence[Sequence[Sequence]], unit: Sequence, name: str = "") -> Algebra:
        """Build from ``table[i][j]`` = coordinates of b_i b_j."""
        n = len(unit)
        if len(table) != n or any(len(row) != n for row in table):
            raise AlgebraError("multiplication table must be n x n")
        cols = []
        for i in range(n):
            for j in range(n):
                if len(table[i][j]) != n:
                    raise AlgebraError(f"product b{i}*b{j} has {len(table[i][j])} coordinates, expected {n}")
                cols.append(table[i][j])
        return cls(field, Mat.from_columns(field, cols, n), Mat.vector(field, unit), name)

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, {self.field!r})"

    def same_as(self, other: Algebra) -> bool:
        return self is other or (
            self.field == other.field and self.dim == other.dim and self.mult == other.mult and self.unit == other.unit
        )

    def table(self) -> list[list[list]]:
        n = self.dim
        cols = self.mult.T.tolist()
        return [[cols[i * n + j] for j in range(n)] for i in range(n)]

    @cached_property
    def lmats(self) -> list[Mat]:
        n = self.dim
        return [self.mult.select_columns([i * n + j for j in range(n)]) for i in range(n)]

    @cached_property
    def rmats(self) -> list[Mat]:
        n = self.dim
        return [self.mult.select_columns([i * n + j for i in range(n)]) for j in range(n)]

    def mul(self, x: Mat, y: Mat) -> Mat:
        return self.mult @ kron(x, y)

    def basis(self, i: int) -> Mat:
        return Mat.unit(self.field, self.dim, i)

    @cached_property
    def regular(self) -> Bimodule:
        """A as an (A, A)-bimodule."""
        return Bimodule(self, self, self.dim, self.lmats, self.rmats, name=self.name or "A", check=False)

    @cached_property
    def right_regular(self) -> Bimodule:
        """A as a (k, A)-bimodule."""
        return self.regular.restrict_left()

    @cached_property
    def left_regular(self) -> Bimodule:
        """A as an (A, k)-bimodule."""
        return self.regular.restrict_right()

    def opposite(self) -> Algebra:
        n = self.dim
        cols = [self.mult.column(j * n + i) for i in range(n) for j in range(n)]
        return Algebra(self.field, hstack(self.field, cols, n), self.unit, name=f"{self.name}^op")

    def is_commutative(self) -> bool:
        return self.mult == self.opposite().mult


@cache
def ground(field: Field) -> Algebra:
    """The field itself as a one-dimensional algebra (shared per field)."""
    return Algebra(field, Mat.identity(field, 1), Mat.identity(field, 1), name="k")


def check_algebra(a: Algebra) -> Report:
    rep = Report(f"algebra {a.name}".strip())
    n, L = a.dim, a.lmats
    for i in range(n):
        for j in range(n):
            bij = a.mult.column(i * n + j)
            for l in range(n):
                lhs = a.mult @ kron(bij, a.basis(l))
                rhs = L[i] @ a.mult.column(j * n + l)
                if lhs != rhs:
                    rep.fail("associativity", f"triple ({i},{j},{l})", "(b_i b_j) b_l != b_i (b_j b_l)", lhs - rhs)
    for i in range(n):
        e = a.basis(i)
        if a.mul(a.unit, e) != e:
            rep.fail("left unit", f"basis {i}")
        if a.mul(e, a.unit) != e:
            rep.fail("right unit", f"basis {i}")
    rep.facts["dim"] = n
    return rep


def is_algebra_morphism(f: Mat, src: Algebra, dst: Algebra) -> Report:
    rep = Report("algebra morphism")
    if f.shape != (dst.dim, src.dim):
        rep.fail("shape", f"{f.shape}", f"expected {(dst.dim, src.dim)}")
        return rep
    if f @ src.unit != dst.unit:
        rep.fail("unit", "1", "f(1) != 1")
    n = src.dim
    for i in range(n):
        for j in range(n):
            lhs = f @ src.mult.column(i * n + j)
            rhs = dst.mul(f.column(i), f.column(j))
            if lhs != rhs:
                rep.fail("multiplicativity", f"pair ({i},{j})", "", lhs - rhs)
    return rep


class Bimodule:
    """A finite-dimensional (A, B)-bimodule given by action matrices."""

    def __init__(
        self,
        left: Algebra,
        right: Algebra,
        dim: int,
        lact: Sequence[Mat],
        ract: Sequence[Mat],
        name: str = "",
        check: bool = True,
    ):
        self.left_alg = left
        self.right_alg = right
        self.field = left.field
        self.dim = dim
        self.lact = list(lact)
        self.ract = list(ract)
        self.name = name
        if len(self.lact) != left.dim or len(self.ract) != right.dim:
            raise AlgebraError("one action matrix per algebra basis element is required")
        if any(m.shape != (dim, dim) for m in self.lact + self.ract):
            raise AlgebraError(f"action matrices must be {dim}x{dim}")
        if check:
            rep = self.check()
            if not rep.ok:
                f = rep.failures[0]
                raise AlgebraError(f"invalid bimodule {name}: {f.check} at {f.where}")

    def __repr__(self):
        return f"Bimodule({self.name or '?'}, dim={self.dim}, {self.left_alg.name}-{self.right_alg.name})"

    __hash__ = object.__hash__

    def check(self) -> Report:
        rep = Report(f"bimodule {self.name}".strip())
        A, B, d = self.left_alg, self.right_alg, self.dim
        one = Mat.identity(self.field, d)
        if self.left_action(A.unit) != one:
            rep.fail("left unit", "1_A")
        if self.right_action(B.unit) != one:
            rep.fail("right unit", "1_B")
        n = A.dim
        for i in range(n):
            for j in range(n):
                lhs = self.lact[i] @ self.lact[j]
                rhs = self.left_action(A.mult.column(i * n + j))
                if lhs != rhs:
                    rep.fail("left associativity", f"pair ({i},{j})", "", lhs - rhs)
        n = B.dim
        for i in range(n):
            for j in range(n):
                lhs = self.ract[j] @ self.ract[i]
                rhs = self.right_action(B.mult.column(i * n + j))
                if lhs != rhs:
                    rep.fail("right associativity", f"pair ({i},{j})", "", lhs - rhs)
        for i, L in enumerate(self.lact):
            for j, R in enumerate(self.ract):
                if L @ R != R @ L:
                    rep.fail("actions commute", f"pair ({i},{j})", "", L @ R - R @ L)
        return rep

    def left_action(self, x: Mat) -> Mat:
        out = Mat.zeros(self.field, self.dim, self.dim)
        for i in range(x.rows):
            c = x[i, 0]
            if c:
                out = out + self.lact[i].scale(c)
        return out

    def right_action(self, y: Mat) -> Mat:
        out = Mat.zeros(self.field, self.dim, self.dim)
        for j in range(y.rows):
            c = y[j, 0]
            if c:
                out = out + self.ract[j].scale(c)
        return out

    @cached_property
    def identity(self) -> BimoduleMap:
        return BimoduleMap(self, self, Mat.identity(self.field, self.dim), check=False)

    def restrict_left(self) -> Bimodule:
        """Forget the left action: the same space as a (k, B)-bimodule."""
        k = ground(self.field)
        return Bimodule(k, self.right_alg, self.dim, [Mat.identity(self.field, self.dim)], self.ract, self.name, check=False)

    def restrict_right(self) -> Bimodule:
        k = ground(self.field)
        return Bimodule(self.left_alg, k, self.dim, self.lact, [Mat.identity(self.field, self.dim)], self.name, check=False)

    def same_structure(self, other: Bimodule) -> bool:
        return (
            self.dim == other.dim
            and self.left_alg.same_as(other.left_alg)
            and self.right_alg.same_as(other.right_alg)
            and self.lact == other.lact
            and self.ract == other.ract
        )

    def element(self, i: int) -> Mat:
        return Mat.unit(self.field, self.dim, i)


def direct_sum(m: Bimodule, n: Bimodule, name: str = "") -> Bimodule:
    from .exactla import direct_sum as dsum

    if not (m.left_alg.same_as(n.left_alg) and m.right_alg.same_as(n.right_alg)):
        raise AlgebraError("direct sum needs matching algebras")
    f = m.field
    return Bimodule(
        m.left_alg,
        m.right_alg,
        m.dim + n.dim,
        [dsum(f, [a, b]) for a, b in zip(m.lact, n.lact)],
        [dsum(f, [a, b]) for a, b in zip(m.ract, n.ract)],
        name or f"{m.name}+{n.name}",
        check=False,
    )


def vector_space(field: Field, n: int, name: str = "") -> Bimodule:
    k = ground(field)
    one = [Mat.identity(field, n)]
    return Bimodule(k, k, n, one, one, name or f"k^{n}", check=False)


class BimoduleMap:
    """A matrix ``src -> dst`` commuting with both actions."""

    def __init__(self, src: Bimodule, dst: Bimodule, mat: Mat, check: bool = True):
        if mat.shape != (dst.dim, src.dim):
            raise AlgebraError(f"map matrix has shape {mat.shape}, expected {(dst.dim, src.dim)}")
        self.src = src
        self.dst = dst
        self.mat = mat
        if check:
            rep = self.check()
            if not rep.ok:
                f = rep.failures[0]
                raise AlgebraError(f"not a bimodule map: {f.check} at {f.where}")

    def __repr__(self):
        return f"BimoduleMap({self.src.name} -> {self.dst.name}, {self.mat.shape})"

    def check(self) -> Report:
        rep = Report("bimodule map")
        s, d = self.src, self.dst
        if not (s.left_alg.same_as(d.left_alg) and s.right_alg.same_as(d.right_alg)):
            rep.fail("algebras", "src/dst", "source and target live over different algebras")
            return rep
        for i, (a, b) in enumerate(zip(s.lact, d.lact)):
            if self.mat @ a != b @ self.mat:
                rep.fail("left linearity", f"algebra basis {i}", "", self.mat @ a - b @ self.mat)
        for j, (a, b) in enumerate(zip(s.ract, d.ract)):
            if self.mat @ a != b @ self.mat:
                rep.fail("right linearity", f"algebra basis {j}", "", self.mat @ a - b @ self.mat)
        return rep

    def __matmul__(self, other: BimoduleMap) -> BimoduleMap:
        if other.dst.dim != self.src.dim:
            raise AlgebraError(f"cannot compose {self} after {other}")
        return BimoduleMap(other.src, self.dst, self.mat @ other.mat, check=False)

    def __add__(self, other: BimoduleMap) -> BimoduleMap:
        return BimoduleMap(self.src, self.dst, self.mat + other.mat, check=False)

    def __sub__(self, other: BimoduleMap) -> BimoduleMap:
        return BimoduleMap(self.src, self.dst, self.mat - other.mat, check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, BimoduleMap) and self.mat == other.mat

    __hash__ = None

    def rank(self) -> int:
        return self.mat.rank()

    def is_bijective(self) -> bool:
        from .exactla import is_bijective

        return is_bijective(self.mat)


class TensorProduct(Bimodule):
    """``m (x)_B n`` as an (A, C)-bimodule, with its presentation data.

    ``proj``/``sect`` relate k-tensor coordinates (left-index-major) and
    quotient coordinates; ``pairs[t]`` is the elementary tensor ``(i, j)``
    representing quotient basis vector ``t``.
    """

    def __init__(self, m: Bimodule, n: Bimodule):
        if not m.right_alg.same_as(n.left_alg):
            raise AlgebraError(f"cannot tensor {m} with {n}: middle algebras differ")
        field = m.field
        B = m.right_alg
        dm, dn = m.dim, n.dim
        ambient = dm * dn
        raw = field.raw(dm * B.dim * dn, ambient)
        row = 0
        for b in range(B.dim):
            rcols = m.ract[b].column_nonzeros()
            lcols = n.lact[b].column_nonzeros()
            for i in range(dm):
                for j in range(dn):
                    acc: dict[int, object] = {}
                    for r, x in rcols[i]:
                        acc[r * dn + j] = acc.get(r * dn + j, field.zero) + x
                    for s, y in lcols[j]:
                        acc[i * dn + s] = acc.get(i * dn + s, field.zero) - y
                    for c, v in acc.items():
                        if v:
                            raw[row, c] = v
                    row += 1
        echelon, pivots = Mat(field, raw).rref()
        rel = Subspace(ambient, echelon.T if echelon.rows else Mat.zeros(field, ambient, 0), pivots)
        proj, sect = quotient(ambient, rel)
        self.field = field
        self.left = m
        self.right = n
        self.relations = rel
        self.proj = proj
        self.sect = sect
        self.ambient = ambient
        pivot_set = set(pivots)
        self.pairs = [divmod(c, dn) for c in range(ambient) if c not in pivot_set]
        dim = len(self.pairs)
        lact = [self._induced(L, Mat.identity(field, dn)) for L in m.lact]
        ract = [self._induced(Mat.identity(field, dm), R) for R in n.ract]
        super().__init__(m.left_alg, n.right_alg, dim, lact, ract, name=f"({m.name}*{n.name})", check=False)

    def _induced(self, f: Mat, g: Mat) -> Mat:
        return self.map_pairs(f, g, self)

    def map_pairs(self, f: Mat, g: Mat, dst: TensorProduct) -> Mat:
        """Matrix of ``f (x) g`` from this tensor into ``dst`` (no linearity check)."""
        field = self.field
        fc = f.column_nonzeros()
        gc = g.column_nonzeros()
        gr = g.rows
        k = field.raw(f.rows * gr, len(self.pairs))
        for t, (i, j) in enumerate(self.pairs):
            for r, x in fc[i]:
                for s, y in gc[j]:
                    k[r * gr + s, t] = x * y
        return dst.proj @ Mat(field, k)

    def elem(self, u: Mat, v: Mat) -> Mat:
        """The elementary tensor ``u (x) v`` in quotient coordinates."""
        return self.proj @ kron(u, v)

    def lift(self, x: Mat) -> Mat:
        return self.sect @ x


@cache
def tensor(m: Bimodule, n: Bimodule) -> TensorProduct:
    """``m (x)_B n``; memoised on object identity so composite shapes are shared."""
    return TensorProduct(m, n)


tensor_over = tensor


def tensor_map(f: BimoduleMap, g: BimoduleMap) -> BimoduleMap:
    src = tensor(f.src, g.src)
    dst = tensor(f.dst, g.dst)
    return BimoduleMap(src, dst, src.map_pairs(f.mat, g.mat, dst), check=False)


def whisker_left(m: Bimodule, g: BimoduleMap) -> BimoduleMap:
    return tensor_map(m.identity, g)


def whisker_right(f: BimoduleMap, n: Bimodule) -> BimoduleMap:
    return tensor_map(f, n.identity)


# canonical identifications ---------------------------------------------------

def _leaves(x: Bimodule) -> list[Bimodule]:
    if isinstance(x, TensorProduct):
        return _leaves(x.left) + _leaves(x.right)
    return [x]


def _leaf_indices(x: Bimodule, t: int) -> list[int]:
    if isinstance(x, TensorProduct):
        i, j = x.pairs[t]
        return _leaf_indices(x.left, i) + _leaf_indices(x.right, j)
    return [t]


def _element(x: Bimodule, idx: list[int]) -> Mat:
    if isinstance(x, TensorProduct):
        nl = len(_leaves(x.left))
        return x.elem(_element(x.left, idx[:nl]), _element(x.right, idx[nl:]))
    return Mat.unit(x.field, x.dim, idx[0])


def rebracket(src: Bimodule, dst: Bimodule) -> BimoduleMap:
    """The canonical isomorphism between two bracketings of the same factors."""
    ls, ld = _leaves(src), _leaves(dst)
    if len(ls) != len(ld) or any(a is not b for a, b in zip(ls, ld)):
        raise AlgebraError("rebracket needs identical factor sequences")
    if src is dst:
        return src.identity
    cols = [_element(dst, _leaf_indices(src, t)) for t in range(src.dim)]
    return BimoduleMap(src, dst, hstack(src.field, cols, dst.dim), check=False)


def assoc(m: Bimodule, n: Bimodule, p: Bimodule) -> BimoduleMap:
    """(m (x) n) (x) p -> m (x) (n (x) p)."""
    return rebracket(tensor(tensor(m, n), p), tensor(m, tensor(n, p)))


def assoc_inv(m: Bimodule, n: Bimodule, p: Bimodule) -> BimoduleMap:
    return rebracket(tensor(m, tensor(n, p)), tensor(tensor(m, n), p))


def lunit(m: Bimodule) -> BimoduleMap:
    """A (x)_A m -> m, a (x) x |-> a.x."""
    t = tensor(m.left_alg.regular, m)
    cols = [m.lact[i].column(j) for i, j in t.pairs]
    return BimoduleMap(t, m, hstack(m.field, cols, m.dim), check=False)


def lunit_inv(m: Bimodule) -> BimoduleMap:
    t = tensor(m.left_alg.regular, m)
    return BimoduleMap(m, t, t.proj @ kron(m.left_alg.unit, Mat.identity(m.field, m.dim)), check=False)


def runit(m: Bimodule) -> BimoduleMap:
    """m (x)_B B -> m, x (x) b |-> x.b."""
    t = tensor(m, m.right_alg.regular)
    cols = [m.ract[j].column(i) for i, j in t.pairs]
    return BimoduleMap(t, m, hstack(m.field, cols, m.dim), check=False)


def runit_inv(m: Bimodule) -> BimoduleMap:
    t = tensor(m, m.right_alg.regular)
    return BimoduleMap(m, t, t.proj @ kron(Mat.identity(m.field, m.dim), m.right_alg.unit), check=False)


def bilinear_map(t: TensorProduct, dst: Bimodule, value) -> BimoduleMap:
    """Map out of ``t`` defined on elementary basis tensors by ``value(i, j)``."""
    cols = [value(i, j) for i, j in t.pairs]
    return BimoduleMap(t, dst, hstack(t.field, cols, dst.dim), check=False)


# sub-bimodules and equalizers ------------------------------------------------

class SubBimodule(Bimodule):
    """A sub-bimodule presented by a subspace of its parent."""

    def __init__(self, parent: Bimodule, space: Subspace, name: str = ""):
        basis = space.basis
        lact, ract = [], []
        for L in parent.lact:
            img = L @ basis
            if not space.contains(img):
                raise AlgebraError("subspace is not stable under the left action")
            lact.append(space.coordinates(img))
        for R in parent.ract:
            img = R @ basis
            if not space.contains(img):
                raise AlgebraError("subspace is not stable under the right action")
            ract.append(space.coordinates(img))
        self.parent = parent
        self.space = space
        super().__init__(parent.left_alg, parent.right_alg, space.dim, lact, ract, name=name or f"sub({parent.name})", check=False)
        self.incl = BimoduleMap(self, parent, basis, check=False)

    def corestrict(self, f: BimoduleMap) -> BimoduleMap | None:
        """Factor ``f`` through the inclusion, or None if its image escapes."""
        if not self.space.contains(f.mat):
            return None
        return BimoduleMap(f.src, self, self.space.coordinates(f.mat), check=False)


def equalizer(f: BimoduleMap, g: BimoduleMap, name: str = "") -> SubBimodule:
    if f.src is not g.src and not f.src.same_structure(g.src):
        raise AlgebraError("equalizer of maps with different sources")
    return SubBimodule(f.src, kernel(f.mat - g.mat), name)


def factor_through(target: BimoduleMap, along: BimoduleMap) -> BimoduleMap | None:
    """Some X with ``along @ X == target`` (echelon particular solution)."""
    x = solve(along.mat, target.mat)
    if x is None:
        return None
    return BimoduleMap(target.src, along.src, x, check=False)


# hom spaces, duals, projectivity ---------------------------------------------

def _commuting_rows(field: Field, src_mats: Sequence[Mat], dst_mats: Sequence[Mat], ds: int, dd: int) -> list[Mat]:
    """Rows expressing X @ S == T @ X for X (dd x ds) flattened row-major."""
    out = []
    for S, T in zip(src_mats, dst_mats):
        out.append(kron(Mat.identity(field, dd), S.T) - kron(T, Mat.identity(field, ds)))
    return out


def hom_bimodule(m: Bimodule, n: Bimodule) -> Subspace:
    if not (m.left_alg.same_as(n.left_alg) and m.right_alg.same_as(n.right_alg)):
        raise AlgebraError("hom between bimodules over different algebras")
    rows = _commuting_rows(m.field, m.lact, n.lact, m.dim, n.dim)
    rows += _commuting_rows(m.field, m.ract, n.ract, m.dim, n.dim)
    system = vstack(m.field, rows, m.dim * n.dim)
    return kernel(system)


def unflatten_map(field: Field, vec: Mat, rows: int, cols: int) -> Mat:
    vals = [vec[k, 0] for k in range(rows * cols)]
    return Mat.from_rows(field, [vals[r * cols:(r + 1) * cols] for r in range(rows)], cols)


def flatten_map(x: Mat) -> Mat:
    return Mat.vector(x.field, [v for row in x.tolist() for v in row])


def hom_maps(space: Subspace, m: Bimodule, n: Bimodule) -> list[BimoduleMap]:
    return [BimoduleMap(m, n, unflatten_map(m.field, space.element(i), n.dim, m.dim), check=False) for i in range(space.dim)]


class DualModule(Bimodule):
    """Hom_A(s, A) for an (B, A)-bimodule s, as an (A, B)-bimodule.

    ``maps[k]`` is the (dim A x dim s) matrix of the k-th basis functional.
    """

    def __init__(self, s: Bimodule):
        A, field = s.right_alg, s.field
        rows = _commuting_rows(field, s.ract, A.rmats, s.dim, A.dim)
        space = kernel(vstack(field, rows, s.dim * A.dim))
        maps = [unflatten_map(field, space.element(k), A.dim, s.dim) for k in range(space.dim)]

        def coords(fmat: Mat) -> Mat:
            return space.coordinates(flatten_map(fmat))

        lact = [hstack(field, [coords(La @ f) for f in maps], space.dim) for La in A.lmats]
        ract = [hstack(field, [coords(f @ Lb) for f in maps], space.dim) for Lb in s.lact]
        self.base = s
        self.space = space
        self.maps = maps
        super().__init__(A, s.left_alg, space.dim, lact, ract, name=f"{s.name}*", check=False)

    def functional(self, coords: Mat) -> Mat:
        """The matrix Σ -> A of the functional with the given coordinates."""
        out = Mat.zeros(self.field, self.base.right_alg.dim, self.base.dim)
        for k in range(self.dim):
            c = coords[k, 0]
            if c:
                out = out + self.maps[k].scale(c)
        return out


def dual_module(s: Bimodule) -> DualModule:
    return DualModule(s)


@dataclass
class DualBasis:
    module: Bimodule
    dual: DualModule
    pairs: list[tuple[Mat, Mat]]

    def check(self) -> Report:
        rep = Report("dual basis")
        s = self.module
        total = Mat.zeros(s.field, s.dim, s.dim)
        for e, f in self.pairs:
            fmat = self.dual.functional(f)
            # column u: e . f(u)
            cols = [s.right_action(fmat.column(u)) @ e for u in range(s.dim)]
            total = total + hstack(s.field, cols, s.dim)
        rep.expect_equal("sum e_i f_i(u) = u", total, Mat.identity(s.field, s.dim), "basis vector")
        return rep

    def element(self) -> Mat:
        """sum_i e_i (x) f_i in s (x)_A s*."""
        t = tensor(self.module, self.dual)
        out = Mat.zeros(self.module.field, t.dim, 1)
        for e, f in self.pairs:
            out = out + t.elem(e, f)
        return out


def _rank_factor(t: Mat) -> list[tuple[Mat, Mat]]:
    """Write t = sum_r u_r v_r^T with as few terms as its rank."""
    echelon, pivots = t.rref()
    out = []
    for r, pc in enumerate(pivots):
        out.append((t.column(pc), echelon.select_rows([r]).T))
    return out


def dual_basis(s: Bimodule, dual: DualModule | None = None) -> DualBasis | None:
    """A dual basis for s as a right A-module, or None if s is not projective."""
    dual = dual or dual_module(s)
    field, n, m = s.field, s.dim, dual.dim
    # unknown T[s_, k]: sum_{s_,k} T[s_,k] e_s_ . f_k(u) = u for every u
    acts = [[s.right_action(dual.maps[k].column(u)) for u in range(n)] for k in range(m)]
    raw = field.raw(n * n, n * m)
    for u in range(n):
        for k in range(m):
            for r, c, v in acts[k][u].nonzeros():
                raw[u * n + r, c * m + k] = v
    rhs = Mat.vector(field, [1 if r == u else 0 for u in range(n) for r in range(n)])
    sol = solve(Mat(field, raw), rhs)
    if sol is None:
        return None
    t = Mat.from_rows(field, [[sol[si * m + k, 0] for k in range(m)] for si in range(n)], m)
    db = DualBasis(s, dual, _rank_factor(t))
    if not db.check().ok:
        raise AlgebraError("dual basis solver produced an unsound result")
    return db


def left_dual_basis(s: Bimodule) -> tuple[list[Mat], list[tuple[Mat, Mat]]] | None:
    """Left B-linear maps s -> B and pairs with sum_i f_i(u) . e_i = u, or None."""
    B, field = s.left_alg, s.field
    rows = _commuting_rows(field, s.lact, B.lmats, s.dim, B.dim)
    space = kernel(vstack(field, rows, s.dim * B.dim))
    maps = [unflatten_map(field, space.element(k), B.dim, s.dim) for k in range(space.dim)]
    n, m = s.dim, len(maps)
    acts = [[s.left_action(maps[k].column(u)) for u in range(n)] for k in range(m)]
    raw = field.raw(n * n, n * m)
    for u in range(n):
        for k in range(m):
            for r, c, v in acts[k][u].nonzeros():
                raw[u * n + r, c * m + k] = v
    rhs = Mat.vector(field, [1 if r == u else 0 for u in range(n) for r in range(n)])
    sol = solve(Mat(field, raw), rhs) if m else None
    if sol is None:
        return None
    pairs = []
    for si in range(n):
        for k in range(m):
            c = sol[si * m + k, 0]
            if c:
                pairs.append((s.element(si).scale(c), maps[k]))
    return maps, pairs


def trace_ideal(s: Bimodule, side: str = "left") -> Subspace:
    """Span of f(u) over module maps f into the acting algebra."""
    field = s.field
    if side == "left":
        alg = s.left_alg
        rows = _commuting_rows(field, s.lact, alg.lmats, s.dim, alg.dim)
    elif side == "right":
        alg = s.right_alg
        rows = _commuting_rows(field, s.ract, alg.rmats, s.dim, alg.dim)
    else:
        raise ValueError("side must be 'left' or 'right'")
    space = kernel(vstack(field, rows, s.dim * alg.dim))
    maps = [unflatten_map(field, space.element(k), alg.dim, s.dim) for k in range(space.dim)]
    return image(hstack(field, maps, alg.dim)) if maps else span(field, alg.dim, Mat.zeros(field, alg.dim, 0))


def is_generator(s: Bimodule, side: str = "left") -> bool:
    """Trace-ideal test for a finitely generated projective module."""
    if side == "left":
        if left_dual_basis(s) is None:
            raise NotDecidable("module is not projective on the left; generator test not implemented here")
        alg = s.left_alg
    else:
        if dual_basis(s) is None:
            raise NotDecidable("module is not projective on the right; generator test not implemented here")
        alg = s.right_alg
    return trace_ideal(s, side).dim == alg.dim
