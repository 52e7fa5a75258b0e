"""Dual quasi-bialgebras and comatrix corings over comodule quasi-algebras.

Comatrix corings are only built over group-graded H (a grouplike basis), where
an H-comodule is a graded vector space and the associator Φ multiplies a
homogeneous triple by the scalar φ(deg, deg, deg).
"""
from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field
from itertools import product as iproduct

from ..algcore import Algebra, Bimodule, BimoduleMap, assoc, tensor
from ..coring import Coring
from ..exactla import Field, Mat, hstack, kron, quotient, solve, span
from ..galois import AdjointPair
from ..report import Report


class QuasiError(ValueError):
    pass


@dataclass
class DualQuasiBialgebra:
    """(H, Δ, ε, ·, 1, φ) with φ and φ^-1 stored as flat n^3 lists (index (a*n+b)*n+c)."""

    field: Field
    dim: int
    comult: Mat
    counit: Mat
    mult: Mat
    unit: Mat
    phi: list
    phi_inv: list
    name: str = "H"

    def basis(self, i: int) -> Mat:
        return Mat.unit(self.field, self.dim, i)

    def prod(self, x: Mat, y: Mat) -> Mat:
        return self.mult @ kron(x, y)

    def eps(self, x: Mat):
        return (self.counit @ x)[0, 0]

    def phi_at(self, a: int, b: int, c: int, inverse: bool = False):
        table = self.phi_inv if inverse else self.phi
        return table[(a * self.dim + b) * self.dim + c]

    def form(self, x: Mat, y: Mat, z: Mat, inverse: bool = False):
        """φ (or φ^-1) evaluated trilinearly on vectors."""
        acc = self.field.zero
        for a, _, u in x.nonzeros():
            for b, _, v in y.nonzeros():
                for c, _, w in z.nonzeros():
                    acc += u * v * w * self.phi_at(a, b, c, inverse)
        return acc

    def cop(self, x: Mat, times: int = 1) -> list[tuple[list[Mat], object]]:
        """Iterated coproduct of x as (tensor factors, coefficient) terms."""
        terms = [([x], self.field.one)]
        for _ in range(times):
            nxt = []
            for factors, coeff in terms:
                last = factors[-1]
                for r, _, v in last.nonzeros():
                    col = self.comult.column(r)
                    for s, _, w in col.nonzeros():
                        i, j = divmod(s, self.dim)
                        nxt.append((factors[:-1] + [self.basis(i), self.basis(j)], coeff * v * w))
            terms = nxt
        return terms

    def group_table(self) -> list[list[int]] | None:
        """Product table if the basis is grouplike and closed under multiplication, else None."""
        n = self.dim
        for i in range(n):
            if self.comult.column(i) != kron(self.basis(i), self.basis(i)) or self.eps(self.basis(i)) != self.field.one:
                return None
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                v = self.prod(self.basis(i), self.basis(j))
                nz = v.nonzeros()
                if len(nz) != 1 or nz[0][2] != self.field.one:
                    return None
                row.append(nz[0][0])
            table.append(row)
        return table

    def identity_index(self) -> int:
        for i in range(self.dim):
            if self.unit == self.basis(i):
                return i
        raise QuasiError("unit is not a basis element")


def check_dual_quasi_bialgebra(h: DualQuasiBialgebra) -> Report:
    rep = Report(f"dual quasi-bialgebra {h.name}")
    n, f = h.dim, h.field
    if h.comult.shape != (n * n, n) or h.counit.shape != (1, n) or h.mult.shape != (n, n * n) or h.unit.shape != (n, 1):
        raise QuasiError("structure maps have inconsistent shapes")
    if len(h.phi) != n ** 3 or len(h.phi_inv) != n ** 3:
        raise QuasiError("φ and φ^-1 need n^3 values")
    i = Mat.identity(f, n)
    rep.expect_equal("coassociativity", kron(h.comult, i) @ h.comult, kron(i, h.comult) @ h.comult)
    rep.expect_equal("left counit", kron(h.counit, i) @ h.comult, i)
    rep.expect_equal("right counit", kron(i, h.counit) @ h.comult, i)
    one = h.unit
    rep.expect_equal("unit comultiplication", h.comult @ one, kron(one, one))
    if h.eps(one) != f.one:
        rep.fail("unit counit", "1", "ε(1) != 1")
    for a in range(n):
        x = h.basis(a)
        if h.prod(one, x) != x or h.prod(x, one) != x:
            rep.fail("unit", f"basis {a}", "1 is not a two-sided unit")
    for a, b in iproduct(range(n), repeat=2):
        x, y = h.basis(a), h.basis(b)
        xy = h.prod(x, y)
        lhs = h.comult @ xy
        rhs = Mat.zeros(f, n * n, 1)
        for (fx, cx) in h.cop(x):
            for (fy, cy) in h.cop(y):
                rhs = rhs + kron(h.prod(fx[0], fy[0]), h.prod(fx[1], fy[1])).scale(cx * cy)
        if lhs != rhs:
            rep.fail("multiplication is a coalgebra map", f"pair ({a},{b})", "", lhs - rhs)
        if h.eps(xy) != h.eps(x) * h.eps(y):
            rep.fail("counit multiplicative", f"pair ({a},{b})")
        # φ(a, 1, b) = ε(a) ε(b)
        if h.form(x, one, y) != h.eps(x) * h.eps(y):
            rep.fail("normalization φ(a,1,b)", f"pair ({a},{b})", f"value {f.fmt(h.form(x, one, y))}")
    for a, b, c in iproduct(range(n), repeat=3):
        x, y, z = h.basis(a), h.basis(b), h.basis(c)
        expect = h.eps(x) * h.eps(y) * h.eps(z)
        left = right = f.zero
        for (fx, cx) in h.cop(x):
            for (fy, cy) in h.cop(y):
                for (fz, cz) in h.cop(z):
                    k = cx * cy * cz
                    left += k * h.form(fx[0], fy[0], fz[0]) * h.form(fx[1], fy[1], fz[1], inverse=True)
                    right += k * h.form(fx[0], fy[0], fz[0], inverse=True) * h.form(fx[1], fy[1], fz[1])
        if left != expect or right != expect:
            rep.fail("convolution inverse", f"triple ({a},{b},{c})")
        lhs = Mat.zeros(f, n, 1)
        rhs = Mat.zeros(f, n, 1)
        for (fx, cx) in h.cop(x):
            for (fy, cy) in h.cop(y):
                for (fz, cz) in h.cop(z):
                    k = cx * cy * cz
                    lhs = lhs + h.prod(fx[0], h.prod(fy[0], fz[0])).scale(k * h.form(fx[1], fy[1], fz[1]))
                    rhs = rhs + h.prod(h.prod(fx[1], fy[1]), fz[1]).scale(k * h.form(fx[0], fy[0], fz[0]))
        if lhs != rhs:
            rep.fail("quasi-associativity", f"triple ({a},{b},{c})", "", lhs - rhs)
    count = 0
    for a, b, c, d in iproduct(range(n), repeat=4):
        x, y, z, w = h.basis(a), h.basis(b), h.basis(c), h.basis(d)
        lhs = rhs = f.zero
        for (fx, cx) in h.cop(x):
            for (fy, cy) in h.cop(y, 2):
                for (fz, cz) in h.cop(z, 2):
                    for (fw, cw) in h.cop(w):
                        lhs += cx * cy * cz * cw * (
                            h.form(fy[0], fz[0], fw[0])
                            * h.form(fx[0], h.prod(fy[1], fz[1]), fw[1])
                            * h.form(fx[1], fy[2], fz[2])
                        )
        for (fx, cx) in h.cop(x):
            for (fy, cy) in h.cop(y):
                for (fz, cz) in h.cop(z):
                    for (fw, cw) in h.cop(w):
                        rhs += cx * cy * cz * cw * (
                            h.form(fx[0], fy[0], h.prod(fz[0], fw[0])) * h.form(h.prod(fx[1], fy[1]), fz[1], fw[1])
                        )
        count += 1
        if lhs != rhs:
            rep.fail("3-cocycle", f"quadruple ({a},{b},{c},{d})", f"{f.fmt(lhs)} != {f.fmt(rhs)}")
    rep.facts["cocycle quadruples checked"] = count
    return rep


def group_quasi_bialgebra(field: Field, n: int, phi, phi_inv=None, name: str = "") -> DualQuasiBialgebra:
    """k[Z/n] with grouplike basis and φ(g^a, g^b, g^c) = phi(a, b, c)."""
    f = field
    comult = hstack(f, [kron(Mat.unit(f, n, g), Mat.unit(f, n, g)) for g in range(n)], n * n)
    mult = hstack(f, [Mat.unit(f, n, (a + b) % n) for a in range(n) for b in range(n)], n)
    values = [f(phi(a, b, c)) for a in range(n) for b in range(n) for c in range(n)]
    if phi_inv is None:
        inverse = [f.one / v if v else f.zero for v in values]
    else:
        inverse = [f(phi_inv(a, b, c)) for a in range(n) for b in range(n) for c in range(n)]
    return DualQuasiBialgebra(f, n, comult, Mat.from_rows(f, [[1] * n]), mult, Mat.unit(f, n, 0), values, inverse,
                              name=name or f"kZ/{n}")


def z2_sign_cocycle(field: Field) -> DualQuasiBialgebra:
    """k[Z/2] with φ(g^a, g^b, g^c) = (-1)^{abc}."""
    return group_quasi_bialgebra(field, 2, lambda a, b, c: -1 if a * b * c else 1, name="kZ/2 sign")


def trivial_quasi_bialgebra(field: Field, n: int = 1) -> DualQuasiBialgebra:
    return group_quasi_bialgebra(field, n, lambda a, b, c: 1, name=f"kZ/{n} trivial")


# graded data -----------------------------------------------------------------------

@dataclass
class GradedModule:
    """A graded space with left actions by one algebra and right actions by another.

    ``lact``/``ract`` hold one matrix per basis element of the acting algebra;
    ``degrees[i]`` is the grouplike index of basis vector i.
    """

    dim: int
    lact: list[Mat]
    ract: list[Mat]
    degrees: list[int]
    name: str = ""


@dataclass
class QuasiAlgebra:
    """An algebra in graded vector spaces, associative up to φ."""

    field: Field
    dim: int
    mult: Mat
    unit: Mat
    degrees: list[int]
    name: str = "B"

    def basis(self, i: int) -> Mat:
        return Mat.unit(self.field, self.dim, i)

    def mul(self, x: Mat, y: Mat) -> Mat:
        return self.mult @ kron(x, y)

    def lmat(self, i: int) -> Mat:
        return hstack(self.field, [self.mul(self.basis(i), self.basis(j)) for j in range(self.dim)], self.dim)

    def rmat(self, i: int) -> Mat:
        return hstack(self.field, [self.mul(self.basis(j), self.basis(i)) for j in range(self.dim)], self.dim)

    def left_regular(self, right_dim: int = 1) -> GradedModule:
        one = [Mat.identity(self.field, self.dim)] * right_dim
        return GradedModule(self.dim, [self.lmat(i) for i in range(self.dim)], one, list(self.degrees), self.name)

    def right_regular(self, left_dim: int = 1) -> GradedModule:
        one = [Mat.identity(self.field, self.dim)] * left_dim
        return GradedModule(self.dim, one, [self.rmat(i) for i in range(self.dim)], list(self.degrees), self.name)

    def as_algebra(self) -> Algebra:
        return Algebra(self.field, self.mult, self.unit, self.name)


@dataclass
class QuasiAdjointData:
    """(A, B, Σ, Σ', μ, η(1)) over a group-graded dual quasi-bialgebra H.

    ``mu`` is the dim A x (dim Σ' * dim Σ) matrix of μ on k-tensor coordinates
    and ``eta`` the vector η(1) in k-tensor coordinates of Σ (x) Σ'.
    """

    H: DualQuasiBialgebra
    A: Algebra
    B: QuasiAlgebra
    sigma: GradedModule
    sigma_prime: GradedModule
    mu: Mat
    eta: Mat
    name: str = ""
    _group: list[list[int]] = dc_field(default=None, repr=False)

    def __post_init__(self):
        table = self.H.group_table()
        if table is None:
            raise QuasiError("comatrix corings are built over a grouplike basis only")
        self._group = table

    def gmul(self, a: int, b: int) -> int:
        return self._group[a][b]

    def phi(self, a: int, b: int, c: int, inverse: bool = False):
        return self.H.phi_at(a, b, c, inverse)

    def to_adjoint_pair(self) -> AdjointPair:
        """The classical adjoint pair, available when every φ value is 1."""
        if any(v != self.H.field.one for v in self.H.phi):
            raise QuasiError("φ is not trivial")
        A, B = self.A, self.B.as_algebra()
        s, sp = self.sigma, self.sigma_prime
        q = Bimodule(B, A, s.dim, s.lact, s.ract, name="Σ")
        p = Bimodule(A, B, sp.dim, sp.lact, sp.ract, name="Σ'")
        pq = tensor(p, q)
        mu = BimoduleMap(pq, A.regular, hstack(A.field, [self.mu.column(i * q.dim + j) for i, j in pq.pairs], A.dim))
        qp = tensor(q, p)
        e = qp.proj @ self.eta
        eta = BimoduleMap(B.regular, qp, hstack(A.field, [L @ e for L in qp.lact], qp.dim))
        return AdjointPair(A, B, p, q, mu, eta)


def check_quasi_data(data: QuasiAdjointData) -> Report:
    rep = Report(f"quasi adjoint data {data.name}".strip())
    H, A, B, s, sp = data.H, data.A, data.B, data.sigma, data.sigma_prime
    f = A.field
    rep.merge(check_dual_quasi_bialgebra(H), "H ")
    e = H.identity_index()
    g = data.gmul
    phi = data.phi
    # B is an algebra in graded spaces
    for a, b in iproduct(range(B.dim), repeat=2):
        ab = B.mul(B.basis(a), B.basis(b))
        for r, _, _ in ab.nonzeros():
            if B.degrees[r] != g(B.degrees[a], B.degrees[b]):
                rep.fail("B grading", f"pair ({a},{b})")
    for a in range(B.dim):
        x = B.basis(a)
        if B.mul(B.unit, x) != x or B.mul(x, B.unit) != x:
            rep.fail("B unit", f"basis {a}")
    for a, b, c in iproduct(range(B.dim), repeat=3):
        x, y, z = B.basis(a), B.basis(b), B.basis(c)
        lhs = B.mul(B.mul(x, y), z)
        rhs = B.mul(x, B.mul(y, z)).scale(phi(B.degrees[a], B.degrees[b], B.degrees[c]))
        if lhs != rhs:
            rep.fail("B quasi-associativity", f"triple ({a},{b},{c})", "", lhs - rhs)
    # Σ: left B (twisted), right A (plain), graded
    for a, b, i in iproduct(range(B.dim), range(B.dim), range(s.dim)):
        u = Mat.unit(f, s.dim, i)
        ab = B.mul(B.basis(a), B.basis(b))
        lhs = _act(s.lact, ab) @ u
        rhs = (s.lact[a] @ (s.lact[b] @ u)).scale(phi(B.degrees[a], B.degrees[b], s.degrees[i]))
        if lhs != rhs:
            rep.fail("Σ left quasi-action", f"({a},{b}) on {i}", "", lhs - rhs)
    for a, b, i in iproduct(range(B.dim), range(B.dim), range(sp.dim)):
        u = Mat.unit(f, sp.dim, i)
        ab = B.mul(B.basis(a), B.basis(b))
        lhs = (sp.ract[b] @ (sp.ract[a] @ u))
        rhs = (_act(sp.ract, ab) @ u).scale(phi(sp.degrees[i], B.degrees[a], B.degrees[b]))
        if lhs != rhs:
            rep.fail("Σ' right quasi-action", f"{i} by ({a},{b})", "", lhs - rhs)
    for name, mod, nl, nr, ldeg, rdeg in (
        ("Σ", s, B.dim, A.dim, B.degrees, [e] * A.dim),
        ("Σ'", sp, A.dim, B.dim, [e] * A.dim, B.degrees),
    ):
        if _act(mod.lact, _unit_of(name, data, "left")) != Mat.identity(f, mod.dim):
            rep.fail(f"{name} unit", "left")
        if _act(mod.ract, _unit_of(name, data, "right")) != Mat.identity(f, mod.dim):
            rep.fail(f"{name} unit", "right")
        for a, b in iproduct(range(nl), range(nr)):
            if mod.lact[a] @ mod.ract[b] != mod.ract[b] @ mod.lact[a]:
                rep.fail(f"{name} actions commute", f"({a},{b})")
        for a in range(nl):
            _check_graded(rep, f"{name} left action", mod.lact[a], ldeg[a], mod.degrees, g, left=True)
        for b in range(nr):
            _check_graded(rep, f"{name} right action", mod.ract[b], rdeg[b], mod.degrees, g, left=False)
    for a, b in iproduct(range(A.dim), repeat=2):
        ab = A.mul(A.basis(a), A.basis(b))
        if _act(s.ract, ab) != s.ract[b] @ s.ract[a]:
            rep.fail("Σ right A-action", f"({a},{b})")
        if _act(sp.lact, ab) != sp.lact[a] @ sp.lact[b]:
            rep.fail("Σ' left A-action", f"({a},{b})")
    if not rep.ok:
        return rep
    ns, nsp = s.dim, sp.dim
    # μ: graded, A-bilinear, B-balanced up to φ
    for y, x in iproduct(range(nsp), range(ns)):
        v = data.mu.column(y * ns + x)
        if not v.is_zero() and g(sp.degrees[y], s.degrees[x]) != e:
            rep.fail("μ grading", f"({y},{x})")
        for a in range(A.dim):
            left = data.mu @ kron(sp.lact[a] @ Mat.unit(f, nsp, y), Mat.unit(f, ns, x))
            if left != A.lmats[a] @ v:
                rep.fail("μ left A-linear", f"({y},{x}) by {a}")
            right = data.mu @ kron(Mat.unit(f, nsp, y), s.ract[a] @ Mat.unit(f, ns, x))
            if right != A.rmats[a] @ v:
                rep.fail("μ right A-linear", f"({y},{x}) by {a}")
        for b in range(B.dim):
            lhs = data.mu @ kron(sp.ract[b] @ Mat.unit(f, nsp, y), Mat.unit(f, ns, x))
            rhs = (data.mu @ kron(Mat.unit(f, nsp, y), s.lact[b] @ Mat.unit(f, ns, x))).scale(
                phi(sp.degrees[y], B.degrees[b], s.degrees[x])
            )
            if lhs != rhs:
                rep.fail("μ B-balanced", f"({y},{b},{x})", "", lhs - rhs)
    # η(1): degree e and central for the twisted bimodule structure
    for r, _, _ in data.eta.nonzeros():
        i, j = divmod(r, nsp)
        if g(s.degrees[i], sp.degrees[j]) != e:
            rep.fail("η grading", f"term ({i},{j})")
    sas = _sigma_sigma_prime(data)
    for b in range(B.dim):
        left = Mat.zeros(f, ns * nsp, 1)
        right = Mat.zeros(f, ns * nsp, 1)
        for r, _, c in data.eta.nonzeros():
            i, j = divmod(r, nsp)
            ui, uj = Mat.unit(f, ns, i), Mat.unit(f, nsp, j)
            left = left + kron(s.lact[b] @ ui, uj).scale(c * phi(B.degrees[b], s.degrees[i], sp.degrees[j], True))
            right = right + kron(ui, sp.ract[b] @ uj).scale(c * phi(s.degrees[i], sp.degrees[j], B.degrees[b]))
        if sas.proj @ left != sas.proj @ right:
            rep.fail("η central", f"B basis {b}", "", sas.proj @ (left - right))
    # the two adjunction identities on basis vectors
    for x in range(ns):
        u = Mat.unit(f, ns, x)
        acc = Mat.zeros(f, ns, 1)
        for r, _, c in data.eta.nonzeros():
            i, j = divmod(r, nsp)
            val = data.mu @ kron(Mat.unit(f, nsp, j), u)
            coeff = c * phi(s.degrees[i], sp.degrees[j], s.degrees[x])
            acc = acc + (_act(s.ract, val) @ Mat.unit(f, ns, i)).scale(coeff)
        if acc != u:
            rep.fail("adjunction identity on Σ", f"basis {x}", "", acc - u)
    for y in range(nsp):
        u = Mat.unit(f, nsp, y)
        acc = Mat.zeros(f, nsp, 1)
        for r, _, c in data.eta.nonzeros():
            i, j = divmod(r, nsp)
            val = data.mu @ kron(u, Mat.unit(f, ns, i))
            coeff = c * phi(sp.degrees[y], s.degrees[i], sp.degrees[j], True)
            acc = acc + (_act(sp.lact, val) @ Mat.unit(f, nsp, j)).scale(coeff)
        if acc != u:
            rep.fail("adjunction identity on Σ'", f"basis {y}", "", acc - u)
    return rep


def _unit_of(name: str, data: QuasiAdjointData, side: str) -> Mat:
    if (name == "Σ") == (side == "left"):
        return data.B.unit
    return data.A.unit


def _act(mats: list[Mat], x: Mat) -> Mat:
    out = Mat.zeros(mats[0].field, mats[0].rows, mats[0].cols)
    for r, _, v in x.nonzeros():
        out = out + mats[r].scale(v)
    return out


def _check_graded(rep: Report, what: str, m: Mat, deg: int, degrees: list[int], g, left: bool):
    for r, c, _ in m.nonzeros():
        want = g(deg, degrees[c]) if left else g(degrees[c], deg)
        if degrees[r] != want:
            rep.fail(f"{what} grading", f"entry ({r},{c})")
            return


# twisted tensor products -------------------------------------------------------------

class GradedTensor(Bimodule):
    """Σ' (x)_B Σ: the k-tensor modulo y b (x) x = φ(y, b, x) y (x) b x.

    The basis, projection and section follow the same echelon conventions as
    ordinary tensor products, so untwisted inputs give identical coordinates.
    """

    def __init__(self, data: QuasiAdjointData, left: GradedModule, right: GradedModule, ract_alg, lact_alg, degrees_b):
        A, f = data.A, data.A.field
        nl, nr = left.dim, right.dim
        ambient = nl * nr
        vectors = []
        for b in range(len(degrees_b)):
            for y in range(nl):
                for x in range(nr):
                    uy, ux = Mat.unit(f, nl, y), Mat.unit(f, nr, x)
                    scale = data.phi(left.degrees[y], degrees_b[b], right.degrees[x])
                    v = kron(ract_alg[b] @ uy, ux) - kron(uy, lact_alg[b] @ ux).scale(scale)
                    if not v.is_zero():
                        vectors.append(v)
        rel = span(f, ambient, hstack(f, vectors, ambient) if vectors else Mat.zeros(f, ambient, 0))
        proj, sect = quotient(ambient, rel)
        self.field = f
        self.proj, self.sect, self.ambient = proj, sect, ambient
        pivots = set(rel.pivots)
        self.pairs = [divmod(c, nr) for c in range(ambient) if c not in pivots]
        self.degrees = [data.gmul(left.degrees[i], right.degrees[j]) for i, j in self.pairs]
        self.right_dim = nr
        lact = [proj @ kron(L, Mat.identity(f, nr)) @ sect for L in left.lact]
        ract = [proj @ kron(Mat.identity(f, nl), R) @ sect for R in right.ract]
        super().__init__(A, A, len(self.pairs), lact, ract, name=f"({left.name}*{right.name})", check=False)

    def elem(self, u: Mat, v: Mat) -> Mat:
        return self.proj @ kron(u, v)


def _sigma_sigma_prime(data: QuasiAdjointData):
    """Σ (x)_A Σ' with its ordinary A-relations, used to compare values of η."""
    s, sp, A = data.sigma, data.sigma_prime, data.A
    k = Algebra(A.field, Mat.identity(A.field, 1), Mat.identity(A.field, 1), "k")
    left = Bimodule(k, A, s.dim, [Mat.identity(A.field, s.dim)], s.ract, check=False)
    right = Bimodule(A, k, sp.dim, sp.lact, [Mat.identity(A.field, sp.dim)], check=False)
    return tensor(left, right)


@dataclass
class QuasiComatrix:
    coring: Coring
    second_formula: Mat
    degrees: list[int]
    nontrivial_factors: int


def quasi_comatrix_coring(data: QuasiAdjointData, check: bool = True) -> QuasiComatrix:
    """Σ' (x)_B Σ with counit μ; Δ by the first formula, the second checked against it."""
    if check:
        rep = check_quasi_data(data)
        if not rep.ok:
            fl = rep.failures[0]
            raise QuasiError(f"invalid quasi data: {fl.check} at {fl.where}")
    s, sp, B, A = data.sigma, data.sigma_prime, data.B, data.A
    f = A.field
    x = GradedTensor(data, sp, s, sp.ract, s.lact, B.degrees)
    cc = tensor(x, x)
    ns, nsp = s.dim, sp.dim
    first, second = [], []
    nontrivial = 0
    g = data.gmul
    for y, xi in x.pairs:
        dy, dx = sp.degrees[y], s.degrees[xi]
        v1 = Mat.zeros(f, cc.dim, 1)
        v2 = Mat.zeros(f, cc.dim, 1)
        for r, _, c in data.eta.nonzeros():
            i, j = divmod(r, nsp)
            de, df = s.degrees[i], sp.degrees[j]
            k1 = data.phi(g(dy, de), df, dx) * data.phi(dy, de, df, True)
            k2 = data.phi(dy, de, g(df, dx), True) * data.phi(de, df, dx)
            if k1 != f.one:
                nontrivial += 1
            term = cc.elem(x.elem(Mat.unit(f, nsp, y), Mat.unit(f, ns, i)), x.elem(Mat.unit(f, nsp, j), Mat.unit(f, ns, xi)))
            v1 = v1 + term.scale(c * k1)
            v2 = v2 + term.scale(c * k2)
        first.append(v1)
        second.append(v2)
    d1 = hstack(f, first, cc.dim)
    d2 = hstack(f, second, cc.dim)
    if d1 != d2:
        raise QuasiError("the two comultiplication formulas disagree; input is inconsistent")
    counit = hstack(f, [data.mu.column(y * ns + xi) for y, xi in x.pairs], A.dim)
    comult = BimoduleMap(x, cc, d1, check=False)
    eps = BimoduleMap(x, A.regular, counit, check=False)
    cor = Coring(A, x, comult, eps, name=data.name or "quasi comatrix")
    return QuasiComatrix(cor, d2, list(x.degrees), nontrivial)


def tensor_degrees(data: QuasiAdjointData, t, dm: list[int], dn: list[int]) -> list[int]:
    """Degrees on the quotient basis of m (x) n; every basis vector is a pure tensor."""
    return [data.gmul(dm[i], dn[j]) for i, j in t.pairs]


def triple_associator(data: QuasiAdjointData, m: Bimodule, dm: list[int], n: Bimodule, dn: list[int],
                      p: Bimodule, dp: list[int]) -> BimoduleMap:
    """Φ: (m (x) n) (x) p -> m (x) (n (x) p), rebracketing times φ of the three degrees."""
    mn = tensor(m, n)
    src = tensor(mn, p)
    diag = []
    for t, k in src.pairs:
        i, j = mn.pairs[t]
        diag.append(data.phi(dm[i], dn[j], dp[k]))
    scale = Mat.from_entries(m.field, src.dim, src.dim, {(r, r): v for r, v in enumerate(diag)})
    base = assoc(m, n, p)
    return BimoduleMap(src, base.dst, base.mat @ scale, check=False)


def associator(data: QuasiAdjointData, c: Coring, degrees: list[int]) -> BimoduleMap:
    """Φ on (c (x) c) (x) c."""
    x = c.carrier
    return triple_associator(data, x, degrees, x, degrees, x, degrees)


def check_quasi_coring(data: QuasiAdjointData, qc: QuasiComatrix) -> Report:
    """Coring axioms in graded bimodules: coassociativity holds after inserting Φ."""
    from ..algcore import lunit, runit, whisker_left, whisker_right

    c = qc.coring
    rep = Report(f"quasi coring {c.name}")
    rep.merge(c.comult.check(), "comultiplication ")
    rep.merge(c.counit.check(), "counit ")
    if not rep.ok:
        return rep
    x, d, e = c.carrier, c.comult, c.counit
    phi = associator(data, c, qc.degrees)
    lhs = phi @ whisker_right(d, x) @ d
    rhs = whisker_left(x, d) @ d
    rep.expect_equal("coassociativity up to Φ", lhs.mat, rhs.mat)
    rep.expect_equal("left counit", (lunit(x) @ whisker_right(e, x) @ d).mat, x.identity.mat)
    rep.expect_equal("right counit", (runit(x) @ whisker_left(x, e) @ d).mat, x.identity.mat)
    rep.expect_equal("second comultiplication formula", d.mat, qc.second_formula)
    rep.facts["dim"] = c.dim
    rep.facts["terms with nontrivial φ factor"] = qc.nontrivial_factors
    return rep


@dataclass
class QuasiComodule:
    """A graded right comodule over a quasi comatrix coring."""

    carrier: Bimodule
    degrees: list[int]
    coaction: BimoduleMap
    name: str = ""


def regular_quasi_comodule(qc: QuasiComatrix) -> QuasiComodule:
    c = qc.coring
    return QuasiComodule(c.carrier, list(qc.degrees), c.comult, name=f"regular {c.name}")


def cofree_quasi_comodule(data: QuasiAdjointData, qc: QuasiComatrix, m: Bimodule, degrees: list[int]) -> QuasiComodule:
    """m (x) c with coaction Φ^-1 (m (x) Δ); homogeneous of the given degrees on m."""
    from ..algcore import whisker_left
    from ..exactla import inverse

    c = qc.coring
    x = c.carrier
    phi = triple_associator(data, m, degrees, x, qc.degrees, x, qc.degrees)
    delta = whisker_left(m, c.comult)
    mx = tensor(m, x)
    rho = BimoduleMap(mx, phi.src, inverse(phi.mat) @ delta.mat, check=False)
    return QuasiComodule(mx, tensor_degrees(data, mx, degrees, qc.degrees), rho, name=f"{m.name} (x) {c.name}")


def check_quasi_comodule(data: QuasiAdjointData, qc: QuasiComatrix, m: QuasiComodule) -> Report:
    """Coassociativity up to Φ and the counit law for a graded comodule."""
    from ..algcore import runit, whisker_left, whisker_right

    c = qc.coring
    x, rho = c.carrier, m.coaction
    rep = Report(f"quasi comodule {m.name}".strip())
    rep.merge(rho.check(), "coaction ")
    if not rep.ok:
        return rep
    mdeg = tensor_degrees(data, rho.dst, m.degrees, qc.degrees)
    for col in range(m.carrier.dim):
        for r, _, _ in rho.mat.column(col).nonzeros():
            if mdeg[r] != m.degrees[col]:
                rep.fail("coaction homogeneous", f"basis element {col}", f"degree {m.degrees[col]} meets {mdeg[r]}")
                break
    phi = triple_associator(data, m.carrier, m.degrees, x, qc.degrees, x, qc.degrees)
    lhs = phi @ whisker_right(rho, x) @ rho
    rhs = whisker_left(m.carrier, c.comult) @ rho
    rep.expect_equal("coassociativity up to Φ", lhs.mat, rhs.mat)
    rep.expect_equal("counit", (runit(m.carrier) @ whisker_left(m.carrier, c.counit) @ rho).mat, m.carrier.identity.mat)
    rep.facts["dim"] = m.carrier.dim
    return rep


# constructors ---------------------------------------------------------------------

def internal_end(H: DualQuasiBialgebra, vdegrees: list[int]) -> QuasiAlgebra:
    """End(V) for graded V, with e_ij e_jk = c(i,j,k) e_ik and c a ±1 cochain.

    c is the first normalized sign cochain (lexicographic) making the product
    associative up to φ; one exists whenever φ is a coboundary on the degrees of V.
    """
    f = H.field
    table = H.group_table()
    if table is None:
        raise QuasiError("H must have a grouplike basis")
    inv = {}
    for a in range(H.dim):
        for b in range(H.dim):
            if table[a][b] == H.identity_index():
                inv[a] = b
    n = len(vdegrees)
    deg = lambda i, j: table[vdegrees[i]][inv[vdegrees[j]]]
    free = [(i, j, k) for i, j, k in iproduct(range(n), repeat=3) if i != j and j != k]
    for signs in iproduct((1, -1), repeat=len(free)):
        c = {t: 1 for t in iproduct(range(n), repeat=3)}
        c.update(dict(zip(free, signs)))
        if all(
            c[(i, j, k)] * c[(i, k, l)] == H.phi_at(deg(i, j), deg(j, k), deg(k, l)) * c[(j, k, l)] * c[(i, j, l)]
            for i, j, k, l in iproduct(range(n), repeat=4)
        ):
            break
    else:
        raise QuasiError("no sign cochain makes End(V) quasi-associative")
    m = n * n
    cols = []
    for a in range(m):
        i, j = divmod(a, n)
        for b in range(m):
            k, l = divmod(b, n)
            cols.append(Mat.unit(f, m, i * n + l).scale(f(c[(i, j, l)])) if j == k else Mat.zeros(f, m, 1))
    mult = hstack(f, cols, m)
    unit = Mat.vector(f, [1 if divmod(a, n)[0] == divmod(a, n)[1] else 0 for a in range(m)])
    degrees = [deg(*divmod(a, n)) for a in range(m)]
    return QuasiAlgebra(f, m, mult, unit, degrees, name=f"End(V{vdegrees})")


def self_dual_data(H: DualQuasiBialgebra, B: QuasiAlgebra, trace: list, name: str = "") -> QuasiAdjointData:
    """Σ = Σ' = B over A = k, μ(y (x) x) = τ(yx); η(1) solved from the adjunction identities."""
    f = H.field
    from ..algcore import ground

    A = ground(f)
    n = B.dim
    sigma = B.left_regular()
    sigma_prime = B.right_regular()
    tau = Mat.from_rows(f, [list(trace)])
    mu = hstack(f, [tau @ B.mul(B.basis(y), B.basis(x)) for y in range(n) for x in range(n)], 1)
    probe = QuasiAdjointData(H, A, B, sigma, sigma_prime, mu, Mat.zeros(f, n * n, 1), name)
    eta = _solve_eta(probe)
    if eta is None:
        raise QuasiError("no η(1) satisfies the adjunction identities for this pairing")
    return QuasiAdjointData(H, A, B, sigma, sigma_prime, mu, eta, name or f"Σ = {B.name}")


def _solve_eta(data: QuasiAdjointData) -> Mat | None:
    """Linear solve for η(1) of degree e from both adjunction identities (A = k)."""
    s, sp, H = data.sigma, data.sigma_prime, data.H
    f = H.field
    ns, nsp = s.dim, sp.dim
    e = H.identity_index()
    unknowns = [(i, j) for i in range(ns) for j in range(nsp) if data.gmul(s.degrees[i], sp.degrees[j]) == e]
    cols = []
    for i, j in unknowns:
        blocks = []
        for x in range(ns):
            val = (data.mu @ kron(Mat.unit(f, nsp, j), Mat.unit(f, ns, x)))[0, 0]
            blocks.append(Mat.unit(f, ns, i).scale(val * data.phi(s.degrees[i], sp.degrees[j], s.degrees[x])))
        for y in range(nsp):
            val = (data.mu @ kron(Mat.unit(f, nsp, y), Mat.unit(f, ns, i)))[0, 0]
            blocks.append(Mat.unit(f, nsp, j).scale(val * data.phi(sp.degrees[y], s.degrees[i], sp.degrees[j], True)))
        from ..exactla import vstack

        cols.append(vstack(f, blocks, 1))
    rows = ns * ns + nsp * nsp
    system = hstack(f, cols, rows)
    rhs_blocks = [Mat.unit(f, ns, x) for x in range(ns)] + [Mat.unit(f, nsp, y) for y in range(nsp)]
    from ..exactla import vstack

    rhs = vstack(f, rhs_blocks, 1)
    sol = solve(system, rhs)
    if sol is None:
        return None
    Mat.zeros(f, ns * nsp, 1)
    entries = {}
    for t, (i, j) in enumerate(unknowns):
        if sol[t, 0]:
            entries[(i * nsp + j, 0)] = sol[t, 0]
    return Mat.from_entries(f, ns * nsp, 1, entries)


def z2_quasi_example(field: Field) -> QuasiAdjointData:
    """Nontrivial φ = (-1)^{abc}: B = End(k ⊕ k[1]) graded, Σ = Σ' = B, trace pairing."""
    H = z2_sign_cocycle(field)
    B = internal_end(H, [0, 1])
    return self_dual_data(H, B, [1, 0, 0, 1], name="Z2 sign End(V)")


def trivial_quasi_example(field: Field) -> QuasiAdjointData:
    """B = A = Σ = Σ' = k with trivial φ."""
    H = trivial_quasi_bialgebra(field)
    B = QuasiAlgebra(field, 1, Mat.identity(field, 1), Mat.identity(field, 1), [0], name="k")
    return self_dual_data(H, B, [1], name="trivial")


def matrix_quasi_example(field: Field, n: int = 2) -> QuasiAdjointData:
    """Trivial φ, B = k, Σ = k^{1 x n} over A = M_n(k), Σ' = k^{n x 1}, μ the outer product."""
    from .algebras import column_module, matrix_algebra, row_module

    H = trivial_quasi_bialgebra(field)
    A = matrix_algebra(field, n)
    row = row_module(field, n, A)
    col = column_module(field, n, A)
    B = QuasiAlgebra(field, 1, Mat.identity(field, 1), Mat.identity(field, 1), [0], name="k")
    sigma = GradedModule(n, [Mat.identity(field, n)], row.ract, [0] * n, "row")
    sigma_prime = GradedModule(n, col.lact, [Mat.identity(field, n)], [0] * n, "col")
    mu = hstack(field, [A.basis(i * n + j) for i in range(n) for j in range(n)], A.dim)
    # e_1 (x) f_1 = e_i (x) f_i in Σ (x)_A Σ', so one term is the whole dual basis
    eta = Mat.from_entries(field, n * n, 1, {(0, 0): 1})
    return QuasiAdjointData(H, A, B, sigma, sigma_prime, mu, eta, name=f"row vectors over M{n}")
