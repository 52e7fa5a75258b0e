"""Corings A (x) H from a comodule algebra over a finite-dimensional bialgebra."""
from __future__ import annotations

from dataclasses import dataclass

from ..algcore import (
    Algebra,
    AlgebraError,
    Bimodule,
    BimoduleMap,
    check_algebra,
    ground,
    tensor,
)
from ..coring import Coring, grouplike_comodule
from ..exactla import Field, Mat, hstack, kernel, kron
from ..galois import GaloisContext, context_from_comodule, regular_adjoint_pair
from ..report import Report
from .algebras import cyclic_group_algebra, truncated_polynomial
from .extensions import RingExtension


@dataclass
class Bialgebra:
    """An algebra with comultiplication (n^2 x n, left-major) and counit (1 x n)."""

    alg: Algebra
    comult: Mat
    counit: Mat

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def field(self) -> Field:
        return self.alg.field

    def check(self) -> Report:
        rep = Report(f"bialgebra {self.alg.name}")
        rep.merge(check_algebra(self.alg))
        H, D, E = self.alg, self.comult, self.counit
        n, f = H.dim, self.field
        i = Mat.identity(f, n)
        rep.expect_equal("coassociativity", kron(D, i) @ D, kron(i, D) @ D)
        rep.expect_equal("left counit", kron(E, i) @ D, i)
        rep.expect_equal("right counit", kron(i, E) @ D, i)
        tensor_mult = _tensor_square_mult(H)
        for a in range(n):
            for b in range(n):
                ab = H.mul(H.basis(a), H.basis(b))
                lhs = D @ ab
                rhs = tensor_mult(D.column(a), D.column(b))
                if lhs != rhs:
                    rep.fail("comultiplication multiplicative", f"pair ({a},{b})", "", lhs - rhs)
                if E @ ab != (E @ H.basis(a)) @ (E @ H.basis(b)):
                    rep.fail("counit multiplicative", f"pair ({a},{b})")
        rep.expect_equal("unit grouplike", D @ H.unit, kron(H.unit, H.unit))
        return rep


def _tensor_square_mult(H: Algebra):
    """Componentwise product on H (x) H (left-major coordinates)."""
    n = H.dim

    def mult(x: Mat, y: Mat) -> Mat:
        out = Mat.zeros(H.field, n * n, 1)
        for r, _, u in x.nonzeros():
            for s, _, v in y.nonzeros():
                a1, a2 = divmod(r, n)
                b1, b2 = divmod(s, n)
                out = out + kron(H.mul(H.basis(a1), H.basis(b1)), H.mul(H.basis(a2), H.basis(b2))).scale(u * v)
        return out

    return mult


def group_bialgebra(field: Field, n: int) -> Bialgebra:
    """k[Z/n] with grouplike basis."""
    H = cyclic_group_algebra(field, n)
    cols = [kron(H.basis(g), H.basis(g)) for g in range(n)]
    return Bialgebra(H, hstack(field, cols, n * n), Mat.from_rows(field, [[1] * n]))


def trivial_bialgebra(field: Field) -> Bialgebra:
    k = ground(field)
    return Bialgebra(k, Mat.identity(field, 1), Mat.identity(field, 1))


def check_coaction(H: Bialgebra, A: Algebra, rho: Mat) -> Report:
    """ρ: A -> A (x) H coassociative, counital and multiplicative."""
    rep = Report("comodule algebra")
    f = A.field
    ia, ih = Mat.identity(f, A.dim), Mat.identity(f, H.dim)
    if rho.shape != (A.dim * H.dim, A.dim):
        rep.fail("shape", "rho", f"expected {(A.dim * H.dim, A.dim)}, got {rho.shape}")
        return rep
    rep.expect_equal("coassociativity", kron(rho, ih) @ rho, kron(ia, H.comult) @ rho)
    rep.expect_equal("counit", kron(ia, H.counit) @ rho, ia)
    rep.expect_equal("unit", rho @ A.unit, kron(A.unit, H.alg.unit))
    for a in range(A.dim):
        for b in range(A.dim):
            lhs = rho @ A.mul(A.basis(a), A.basis(b))
            rhs = _mixed_mult(A, H.alg, rho.column(a), rho.column(b))
            if lhs != rhs:
                rep.fail("multiplicativity", f"pair ({a},{b})", "", lhs - rhs)
    return rep


def _mixed_mult(A: Algebra, H: Algebra, x: Mat, y: Mat) -> Mat:
    n = H.dim
    out = Mat.zeros(A.field, A.dim * n, 1)
    for r, _, u in x.nonzeros():
        for s, _, v in y.nonzeros():
            a1, h1 = divmod(r, n)
            a2, h2 = divmod(s, n)
            out = out + kron(A.mul(A.basis(a1), A.basis(a2)), H.mul(H.basis(h1), H.basis(h2))).scale(u * v)
    return out


def coinvariants(H: Bialgebra, A: Algebra, rho: Mat) -> RingExtension:
    """B = {a : ρ(a) = a (x) 1} as an algebra with its inclusion into A."""
    f = A.field
    one_h = H.alg.unit
    embed = hstack(f, [kron(A.basis(a), one_h) for a in range(A.dim)], A.dim * H.dim)
    space = kernel(rho - embed)
    basis = space.basis
    m = space.dim
    table = []
    for s in range(m):
        row = []
        for t in range(m):
            prod = A.mul(basis.column(s), basis.column(t))
            if not space.contains(prod):
                raise AlgebraError("coinvariants are not closed under multiplication")
            row.append([r[0] for r in space.coordinates(prod).tolist()])
        table.append(row)
    if not space.contains(A.unit):
        raise AlgebraError("unit is not coinvariant")
    unit = [r[0] for r in space.coordinates(A.unit).tolist()]
    B = Algebra.from_table(f, table, unit, name=f"{A.name}^coH")
    return RingExtension(B, A, basis, name=f"{B.name}->{A.name}")


def hopf_comodule_algebra_coring(H: Bialgebra, A: Algebra, rho: Mat, name: str = "") -> tuple[Coring, GaloisContext]:
    """The A-coring A (x) H and the context Σ = A over B = A^coH, p = A."""
    rep = H.check().merge(check_coaction(H, A, rho))
    if not rep.ok:
        f = rep.failures[0]
        raise AlgebraError(f"invalid comodule algebra: {f.check} at {f.where}")
    f = A.field
    na, nh = A.dim, H.dim
    ih = Mat.identity(f, nh)
    lact = [kron(L, ih) for L in A.lmats]
    ract = []
    for k in range(na):
        col = rho.column(k)
        acc = Mat.zeros(f, na * nh, na * nh)
        for r, _, v in col.nonzeros():
            s, t = divmod(r, nh)
            acc = acc + kron(A.rmats[s], H.alg.rmats[t]).scale(v)
        ract.append(acc)
    x = Bimodule(A, A, na * nh, lact, ract, name=f"{A.name}(x){H.alg.name}")
    cc = tensor(x, x)
    cols, eps = [], []
    for a in range(na):
        for h in range(nh):
            dh = H.comult.column(h)
            v = Mat.zeros(f, cc.dim, 1)
            for r, _, c in dh.nonzeros():
                h1, h2 = divmod(r, nh)
                v = v + cc.elem(kron(A.basis(a), H.alg.basis(h1)), kron(A.unit, H.alg.basis(h2))).scale(c)
            cols.append(v)
            eps.append(A.basis(a).scale(H.counit[0, h]))
    comult = BimoduleMap(x, cc, hstack(f, cols, cc.dim), check=False)
    counit = BimoduleMap(x, A.regular, hstack(f, eps, na), check=False)
    C = Coring(A, x, comult, counit, name=name or f"{A.name}(x){H.alg.name}")
    ext = coinvariants(H, A, rho)
    g = kron(A.unit, H.alg.unit)
    sigma = grouplike_comodule(C, g, carrier=ext.A_BA)
    ctx = context_from_comodule(sigma, adj=regular_adjoint_pair(ext), name=f"Hopf {C.name}")
    ctx.extension = ext
    return C, ctx


def graded_coaction(A: Algebra, H: Bialgebra, degrees: list[int]) -> Mat:
    """ρ(a_i) = a_i (x) g^{deg i} for a Z/n-grading on the basis of A."""
    cols = [kron(A.basis(i), H.alg.basis(degrees[i] % H.dim)) for i in range(A.dim)]
    return hstack(A.field, cols, A.dim * H.dim)


def hopf_z2(field: Field) -> tuple[Coring, GaloisContext]:
    """A = k[x]/(x^2 - 1) graded by Z/2 with x odd; Galois over k when char != 2."""
    H = group_bialgebra(field, 2)
    A = cyclic_group_algebra(field, 2)
    return hopf_comodule_algebra_coring(H, A, graded_coaction(A, H, [0, 1]), name="Z2-graded k[x]/(x^2-1)")


def hopf_z2_degenerate(field: Field) -> tuple[Coring, GaloisContext]:
    """A = k[x]/(x^2), x odd: coinvariants k but can loses rank."""
    H = group_bialgebra(field, 2)
    A = truncated_polynomial(field, 2)
    return hopf_comodule_algebra_coring(H, A, graded_coaction(A, H, [0, 1]), name="Z2-graded k[x]/(x^2)")


def hopf_trivial(A: Algebra) -> tuple[Coring, GaloisContext]:
    H = trivial_bialgebra(A.field)
    return hopf_comodule_algebra_coring(H, A, graded_coaction(A, H, [0] * A.dim), name=f"{A.name}(x)k")
