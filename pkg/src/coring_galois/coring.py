"""Corings, comodules, cotensor products and the comonad-morphism calculus.

Every diagram is checked after inserting the canonical associativity and
unit identifications of algcore as explicit matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .algcore import (
    Algebra,
    Bimodule,
    BimoduleMap,
    SubBimodule,
    TensorProduct,
    assoc,
    assoc_inv,
    equalizer,
    kernel,
    lunit,
    lunit_inv,
    rebracket,
    runit,
    runit_inv,
    tensor,
    tensor_map,
    whisker_left,
    whisker_right,
)
from .exactla import Mat, Subspace, hstack, linear_maps_solving, solve
from .report import Report


class CoringError(ValueError):
    pass


class Coring:
    """An A-coring: a comonoid (c, comult, counit) in (A, A)-bimodules."""

    def __init__(self, algebra: Algebra, carrier: Bimodule, comult: BimoduleMap, counit: BimoduleMap, name: str = ""):
        if not (carrier.left_alg.same_as(algebra) and carrier.right_alg.same_as(algebra)):
            raise CoringError("carrier must be an (A, A)-bimodule")
        if comult.src is not carrier or comult.dst is not tensor(carrier, carrier):
            raise CoringError("comultiplication must map c -> c (x)_A c")
        if counit.src is not carrier or counit.dst is not algebra.regular:
            raise CoringError("counit must map c -> A")
        self.algebra = algebra
        self.carrier = carrier
        self.comult = comult
        self.counit = counit
        self.name = name

    def __repr__(self):
        return f"Coring({self.name or '?'}, dim={self.dim} over {self.algebra.name})"

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def field(self):
        return self.algebra.field

    @property
    def cc(self) -> TensorProduct:
        return tensor(self.carrier, self.carrier)

    @classmethod
    def from_lift(cls, algebra: Algebra, carrier: Bimodule, comult_lift: Mat, counit: Mat, name: str = "") -> Coring:
        """Build from Δ written in k-tensor coordinates of c ⊠ c (projected to c ⊗_A c)."""
        cc = tensor(carrier, carrier)
        if comult_lift.shape != (cc.ambient, carrier.dim):
            raise CoringError(f"comultiplication lift must be {cc.ambient}x{carrier.dim}")
        if counit.shape != (algebra.dim, carrier.dim):
            raise CoringError(f"counit must be {algebra.dim}x{carrier.dim}")
        comult = BimoduleMap(carrier, cc, cc.proj @ comult_lift, check=False)
        eps = BimoduleMap(carrier, algebra.regular, counit, check=False)
        return cls(algebra, carrier, comult, eps, name)

    def is_trivial(self) -> bool:
        return getattr(self, "_trivial", False)


def trivial_coring(a: Algebra) -> Coring:
    c = a.regular
    cor = Coring(a, c, runit_inv(c), c.identity, name=f"triv({a.name})")
    cor._trivial = True
    return cor


def check_coring(c: Coring) -> Report:
    rep = Report(f"coring {c.name}".strip())
    rep.facts["dim"] = c.dim
    rep.facts["base_dim"] = c.algebra.dim
    rep.merge(c.comult.check(), "comultiplication ")
    rep.merge(c.counit.check(), "counit ")
    if not rep.ok:
        return rep
    x, d, e = c.carrier, c.comult, c.counit
    lhs = assoc(x, x, x) @ whisker_right(d, x) @ d
    rhs = whisker_left(x, d) @ d
    rep.expect_equal("coassociativity", lhs.mat, rhs.mat)
    one = x.identity.mat
    rep.expect_equal("left counit", (lunit(x) @ whisker_right(e, x) @ d).mat, one)
    rep.expect_equal("right counit", (runit(x) @ whisker_left(x, e) @ d).mat, one)
    return rep


def check_coring_morphism(f: BimoduleMap, src: Coring, dst: Coring) -> Report:
    rep = Report("coring morphism")
    rep.merge(f.check())
    if not rep.ok:
        return rep
    lhs = dst.comult @ f
    rhs = tensor_map(f, f) @ src.comult
    rep.expect_equal("comultiplicativity", lhs.mat, rhs.mat)
    rep.expect_equal("counitality", (dst.counit @ f).mat, src.counit.mat)
    return rep


def grouplike_verify(c: Coring, g: Mat) -> bool:
    cc = c.cc
    return cc.elem(g, g) == c.comult.mat @ g and c.counit.mat @ g == c.algebra.unit


def grouplike_search(c: Coring, limit: int = 8) -> list[Mat]:
    """All grouplikes by enumeration; only over a prime field and dim(c) <= limit."""
    p = c.field.p
    if p == 0 or c.dim > limit:
        raise CoringError("grouplike search is only offered over F_p for small corings")
    found = []
    for coords in iproduct(range(p), repeat=c.dim):
        g = Mat.vector(c.field, list(coords))
        if grouplike_verify(c, g):
            found.append(g)
    return found


# comodules --------------------------------------------------------------------

class Comodule:
    """A right comodule; the carrier is an (Ω, A)-bimodule (Ω = k by default)."""

    def __init__(self, coring: Coring, carrier: Bimodule, coaction: BimoduleMap, name: str = ""):
        if coaction.src is not carrier or coaction.dst is not tensor(carrier, coring.carrier):
            raise CoringError("coaction must map m -> m (x)_A c")
        self.coring = coring
        self.carrier = carrier
        self.coaction = coaction
        self.name = name or carrier.name

    def __repr__(self):
        return f"Comodule({self.name}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @classmethod
    def from_lift(cls, coring: Coring, carrier: Bimodule, lift: Mat, name: str = "") -> Comodule:
        t = tensor(carrier, coring.carrier)
        if lift.shape != (t.ambient, carrier.dim):
            raise CoringError(f"coaction lift must be {t.ambient}x{carrier.dim}")
        return cls(coring, carrier, BimoduleMap(carrier, t, t.proj @ lift, check=False), name)


def check_comodule(m: Comodule) -> Report:
    rep = Report(f"comodule {m.name}".strip())
    rep.facts["dim"] = m.dim
    rep.merge(m.coaction.check(), "coaction ")
    if not rep.ok:
        return rep
    c, x, rho = m.coring, m.carrier, m.coaction
    lhs = assoc(x, c.carrier, c.carrier) @ whisker_right(rho, c.carrier) @ rho
    rhs = whisker_left(x, c.comult) @ rho
    rep.expect_equal("coassociativity", lhs.mat, rhs.mat)
    rep.expect_equal("counit", (runit(x) @ whisker_left(x, c.counit) @ rho).mat, x.identity.mat)
    return rep


def regular_comodule(c: Coring) -> Comodule:
    return Comodule(c, c.carrier, c.comult, name=c.name or "c")


def cofree_comodule(m: Bimodule, c: Coring) -> Comodule:
    """(m (x)_A c, m (x) Δ) for any (Ω, A)-bimodule m."""
    x = tensor(m, c.carrier)
    coact = assoc_inv(m, c.carrier, c.carrier) @ whisker_left(m, c.comult)
    return Comodule(c, x, coact, name=f"{m.name}*c")


def grouplike_comodule(c: Coring, g: Mat, carrier: Bimodule | None = None) -> Comodule:
    """A as a right comodule with a |-> 1 (x) g.a.

    ``carrier`` may supply A with an extra left action (e.g. by a subalgebra);
    its right action must be the regular one.
    """
    if not grouplike_verify(c, g):
        raise CoringError("element is not grouplike")
    A = c.algebra
    m = A.right_regular if carrier is None else carrier
    if m.dim != A.dim or m.ract != A.right_regular.ract:
        raise CoringError("carrier must be A with its regular right action")
    t = tensor(m, c.carrier)
    cols = []
    for i in range(A.dim):
        ga = c.carrier.right_action(A.basis(i)) @ g
        cols.append(t.elem(A.unit, ga))
    return Comodule(c, m, BimoduleMap(m, t, hstack(c.field, cols, t.dim), check=False), name="A_g")


class LeftComodule:
    """A left comodule; the carrier is an (A, Ω)-bimodule."""

    def __init__(self, coring: Coring, carrier: Bimodule, coaction: BimoduleMap, name: str = ""):
        if coaction.src is not carrier or coaction.dst is not tensor(coring.carrier, carrier):
            raise CoringError("left coaction must map n -> c (x)_A n")
        self.coring = coring
        self.carrier = carrier
        self.coaction = coaction
        self.name = name or carrier.name

    @property
    def dim(self) -> int:
        return self.carrier.dim


def check_left_comodule(n: LeftComodule) -> Report:
    rep = Report(f"left comodule {n.name}".strip())
    rep.merge(n.coaction.check(), "coaction ")
    if not rep.ok:
        return rep
    c, x, lam = n.coring, n.carrier, n.coaction
    lhs = assoc(c.carrier, c.carrier, x) @ whisker_right(c.comult, x) @ lam
    rhs = whisker_left(c.carrier, lam) @ lam
    rep.expect_equal("coassociativity", lhs.mat, rhs.mat)
    rep.expect_equal("counit", (lunit(x) @ whisker_right(c.counit, x) @ lam).mat, x.identity.mat)
    return rep


def regular_left_comodule(c: Coring) -> LeftComodule:
    return LeftComodule(c, c.carrier, c.comult, name=c.name or "c")


def cofree_left_comodule(n: Bimodule, c: Coring) -> LeftComodule:
    x = tensor(c.carrier, n)
    coact = assoc(c.carrier, c.carrier, n) @ whisker_right(c.comult, n)
    return LeftComodule(c, x, coact, name=f"c*{n.name}")


class Bicomodule:
    """A left D- and right C-comodule structure on a (B, A)-bimodule."""

    def __init__(self, left_coring: Coring, right_coring: Coring, carrier: Bimodule,
                 lcoact: BimoduleMap, rcoact: BimoduleMap, name: str = ""):
        if lcoact.src is not carrier or lcoact.dst is not tensor(left_coring.carrier, carrier):
            raise CoringError("left coaction must map m -> d (x)_B m")
        if rcoact.src is not carrier or rcoact.dst is not tensor(carrier, right_coring.carrier):
            raise CoringError("right coaction must map m -> m (x)_A c")
        self.left_coring = left_coring
        self.right_coring = right_coring
        self.carrier = carrier
        self.lcoact = lcoact
        self.rcoact = rcoact
        self.name = name or carrier.name

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def right(self) -> Comodule:
        return Comodule(self.right_coring, self.carrier, self.rcoact, self.name)

    def left(self) -> LeftComodule:
        return LeftComodule(self.left_coring, self.carrier, self.lcoact, self.name)


def check_bicomodule(b: Bicomodule) -> Report:
    rep = Report(f"bicomodule {b.name}".strip())
    rep.merge(check_comodule(b.right()), "right ")
    rep.merge(check_left_comodule(b.left()), "left ")
    if not rep.ok:
        return rep
    d, x, c = b.left_coring.carrier, b.carrier, b.right_coring.carrier
    lhs = assoc(d, x, c) @ whisker_right(b.lcoact, c) @ b.rcoact
    rhs = whisker_left(d, b.rcoact) @ b.lcoact
    rep.expect_equal("coactions commute", lhs.mat, rhs.mat)
    return rep


def regular_bicomodule(c: Coring) -> Bicomodule:
    return Bicomodule(c, c, c.carrier, c.comult, c.comult, name=c.name or "c")


def _linearity_residuals(x: Mat, src: Bimodule, dst: Bimodule) -> list[Mat]:
    out = [x @ a - b @ x for a, b in zip(src.lact, dst.lact)]
    out += [x @ a - b @ x for a, b in zip(src.ract, dst.ract)]
    return out


def comodule_homs(m: Comodule, n: Comodule) -> Subspace:
    """Bimodule maps m -> n commuting with the coactions (row-major flattened)."""
    if m.coring is not n.coring:
        raise CoringError("comodules over different corings")
    c = m.coring.carrier
    tm, tn = tensor(m.carrier, c), tensor(n.carrier, c)
    ic = Mat.identity(m.coring.field, c.dim)

    def residual(x: Mat) -> list[Mat]:
        out = _linearity_residuals(x, m.carrier, n.carrier)
        out.append(n.coaction.mat @ x - tm.map_pairs(x, ic, tn) @ m.coaction.mat)
        return out

    _, space = linear_maps_solving(m.coring.field, m.dim, n.dim, residual)
    return space


def is_comodule_map(f: BimoduleMap, m: Comodule, n: Comodule) -> bool:
    return f.check().ok and n.coaction @ f == tensor_map(f, m.coring.carrier.identity) @ m.coaction


# cotensor products and purity ---------------------------------------------------

@dataclass
class CotensorSpace:
    """m □ n: the equalizer of ρ (x) n and m (x) λ inside m (x)_A n."""

    left: Comodule
    right: LeftComodule
    ambient: TensorProduct
    sub: SubBimodule
    f: BimoduleMap
    g: BimoduleMap

    @property
    def dim(self) -> int:
        return self.sub.dim

    @property
    def subspace(self) -> Subspace:
        return self.sub.space

    @property
    def incl(self) -> BimoduleMap:
        return self.sub.incl


def cotensor(m: Comodule, n: LeftComodule) -> CotensorSpace:
    if m.coring is not n.coring:
        raise CoringError("cotensor over different corings")
    c = m.coring.carrier
    t = tensor(m.carrier, n.carrier)
    f = rebracket(tensor(tensor(m.carrier, c), n.carrier), tensor(m.carrier, tensor(c, n.carrier))) @ whisker_right(
        m.coaction, n.carrier
    )
    g = whisker_left(m.carrier, n.coaction)
    sub = equalizer(f, g, name=f"{m.name}[]{n.name}")
    return CotensorSpace(m, n, t, sub, f, g)


@dataclass
class PurityResult:
    pure: bool
    dim_tensored_equalizer: int
    rank_tensored_inclusion: int
    dim_kernel_of_tensored_pair: int

    def __bool__(self) -> bool:
        return self.pure

    def to_record(self) -> dict:
        return {
            "pure": self.pure,
            "dim_tensored_equalizer": self.dim_tensored_equalizer,
            "rank_tensored_inclusion": self.rank_tensored_inclusion,
            "dim_kernel_of_tensored_pair": self.dim_kernel_of_tensored_pair,
        }


def equalizer_purity(f: BimoduleMap, g: BimoduleMap, sub: SubBimodule, y: Bimodule, side: str = "left") -> PurityResult:
    """Does y (x) - (left) or - (x) y (right) keep the equalizer of (f, g) exact?"""
    if side == "left":
        te = tensor(y, sub)
        inc = whisker_left(y, sub.incl)
        pair = whisker_left(y, f).mat - whisker_left(y, g).mat
    elif side == "right":
        te = tensor(sub, y)
        inc = whisker_right(sub.incl, y)
        pair = whisker_right(f, y).mat - whisker_right(g, y).mat
    else:
        raise ValueError("side must be 'left' or 'right'")
    r = inc.rank()
    k = kernel(pair).dim
    return PurityResult(r == te.dim == k, te.dim, r, k)


def purity_probe(eq: CotensorSpace, y: Bimodule, side: str = "left") -> PurityResult:
    return equalizer_purity(eq.f, eq.g, eq.sub, y, side)


def induced_right_coaction(eq: CotensorSpace, rho_n: BimoduleMap, coring: Coring) -> Comodule | None:
    """Right coaction on m □ n from one on n, when the equalizer stays exact."""
    m, n, d = eq.left.carrier, eq.right.carrier, coring.carrier
    cand = rebracket(tensor(m, tensor(n, d)), tensor(tensor(m, n), d)) @ whisker_left(m, rho_n) @ eq.incl
    inc = whisker_right(eq.incl, d)
    if inc.rank() != inc.src.dim:
        return None
    x = solve(inc.mat, cand.mat)
    if x is None:
        return None
    return Comodule(coring, eq.sub, BimoduleMap(eq.sub, inc.src, x, check=False), name=eq.sub.name)


def counit_comparison(m: Comodule) -> tuple[BimoduleMap, BimoduleMap, CotensorSpace]:
    """The maps m -> m □ c (corestricted coaction) and back via (m (x) ε)."""
    cot = cotensor(m, regular_left_comodule(m.coring))
    to = cot.sub.corestrict(m.coaction)
    if to is None:
        raise CoringError("coaction does not land in m □ c")
    back = runit(m.carrier) @ whisker_left(m.carrier, m.coring.counit) @ cot.incl
    return to, back, cot


# comonad morphisms ----------------------------------------------------------------

class RightComonadMorphism:
    """(q, α) with α: d (x)_B q -> q (x)_A c."""

    def __init__(self, src: Coring, dst: Coring, q: Bimodule, alpha: BimoduleMap):
        if alpha.src is not tensor(src.carrier, q) or alpha.dst is not tensor(q, dst.carrier):
            raise CoringError("α must map d (x)_B q -> q (x)_A c")
        self.src = src
        self.dst = dst
        self.q = q
        self.alpha = alpha


def check_right_morphism(f: RightComonadMorphism) -> Report:
    rep = Report("right comonad morphism")
    rep.merge(f.alpha.check(), "alpha ")
    if not rep.ok:
        return rep
    d, c, q, a = f.src.carrier, f.dst.carrier, f.q, f.alpha
    lhs = whisker_left(q, f.dst.comult) @ a
    rhs = (
        assoc(q, c, c)
        @ whisker_right(a, c)
        @ assoc_inv(d, q, c)
        @ whisker_left(d, a)
        @ assoc(d, d, q)
        @ whisker_right(f.src.comult, q)
    )
    rep.expect_equal("comultiplication square", lhs.mat, rhs.mat)
    lhs = runit(q) @ whisker_left(q, f.dst.counit) @ a
    rhs = lunit(q) @ whisker_right(f.src.counit, q)
    rep.expect_equal("counit triangle", lhs.mat, rhs.mat)
    return rep


class LeftComonadMorphism:
    """(p, β) with β: p (x)_B d -> c (x)_A p."""

    def __init__(self, src: Coring, dst: Coring, p: Bimodule, beta: BimoduleMap):
        if beta.src is not tensor(p, src.carrier) or beta.dst is not tensor(dst.carrier, p):
            raise CoringError("β must map p (x)_B d -> c (x)_A p")
        self.src = src
        self.dst = dst
        self.p = p
        self.beta = beta


def check_left_morphism(f: LeftComonadMorphism) -> Report:
    rep = Report("left comonad morphism")
    rep.merge(f.beta.check(), "beta ")
    if not rep.ok:
        return rep
    d, c, p, b = f.src.carrier, f.dst.carrier, f.p, f.beta
    lhs = whisker_right(f.dst.comult, p) @ b
    rhs = (
        assoc_inv(c, c, p)
        @ whisker_left(c, b)
        @ assoc(c, p, d)
        @ whisker_right(b, d)
        @ assoc_inv(p, d, d)
        @ whisker_left(p, f.src.comult)
    )
    rep.expect_equal("comultiplication square", lhs.mat, rhs.mat)
    lhs = lunit(p) @ whisker_right(f.dst.counit, p) @ b
    rhs = runit(p) @ whisker_left(p, f.src.counit)
    rep.expect_equal("counit triangle", lhs.mat, rhs.mat)
    return rep


def identity_morphism(c: Coring) -> RightComonadMorphism:
    a = c.algebra.regular
    alpha = lunit_inv(c.carrier) @ runit(c.carrier)
    return RightComonadMorphism(c, c, a, BimoduleMap(tensor(c.carrier, a), tensor(a, c.carrier), alpha.mat, check=False))


def comodule_as_morphism(m: Comodule, b: Algebra | None = None) -> RightComonadMorphism:
    """A right comodule with a left B-action as a morphism from the trivial B-coring."""
    B = m.carrier.left_alg if b is None else b
    triv = trivial_coring(B)
    q = m.carrier
    alpha = m.coaction @ lunit(q)
    return RightComonadMorphism(triv, m.coring, q, BimoduleMap(tensor(B.regular, q), tensor(q, m.coring.carrier), alpha.mat, check=False))


def morphism_to_bicomodule(f: RightComonadMorphism, validate: bool = True) -> Bicomodule:
    if validate:
        rep = check_right_morphism(f)
        if not rep.ok:
            raise CoringError(f"invalid comonad morphism: {rep.failures[0].check}")
    d, c, q = f.src.carrier, f.dst.carrier, f.q
    x = tensor(d, q)
    split = assoc(d, d, q) @ whisker_right(f.src.comult, q)
    lam = split
    rho = rebracket(tensor(d, tensor(q, c)), tensor(x, c)) @ whisker_left(d, f.alpha) @ split
    return Bicomodule(f.src, f.dst, x, lam, rho, name=f"d*{q.name}")


def left_morphism_to_bicomodule(f: LeftComonadMorphism) -> Bicomodule:
    """The ℭ-𝔇 bicomodule p (x)_B d of a left comonad morphism (p, β)."""
    d, p = f.src.carrier, f.p
    x = tensor(p, d)
    rho = assoc_inv(p, d, d) @ whisker_left(p, f.src.comult)
    lam = rebracket(tensor(tensor(f.dst.carrier, p), d), tensor(f.dst.carrier, x)) @ whisker_right(f.beta, d) @ rho
    return Bicomodule(f.dst, f.src, x, lam, rho, name=f"{p.name}*d")


def bicomodule_to_morphism(b: Bicomodule) -> RightComonadMorphism:
    x = b.carrier
    d = b.left_coring.carrier
    if not isinstance(x, TensorProduct) or x.left is not d:
        raise CoringError("carrier is not presented as d (x)_B q")
    q, c = x.right, b.right_coring.carrier
    alpha = lunit(tensor(q, c)) @ whisker_right(b.left_coring.counit, tensor(q, c)) @ assoc(d, q, c) @ b.rcoact
    return RightComonadMorphism(b.left_coring, b.right_coring, q, alpha)


class TwoCellError(ValueError):
    pass


def _sigma_residual(f: RightComonadMorphism, g: RightComonadMorphism, sigma: BimoduleMap) -> tuple[BimoduleMap, BimoduleMap]:
    d, c, q = f.src.carrier, f.dst.carrier, f.q
    split = assoc(d, d, q) @ whisker_right(f.src.comult, q)
    lhs = g.alpha @ whisker_left(d, sigma) @ split
    rhs = whisker_right(sigma, c) @ rebracket(tensor(d, tensor(q, c)), tensor(tensor(d, q), c)) @ whisker_left(d, f.alpha) @ split
    return lhs, rhs


def two_cell_forms(f: RightComonadMorphism, g: RightComonadMorphism, cell: BimoduleMap, kind: str) -> dict[str, BimoduleMap]:
    """Given one of σ ('sigma'), σ̃ ('tilde') or σ̂ ('hat'), return all three."""
    if f.src is not g.src or f.dst is not g.dst:
        raise TwoCellError("2-cells need parallel comonad morphisms")
    d, _c, q, q2 = f.src.carrier, f.dst.carrier, f.q, g.q
    split = assoc(d, d, q) @ whisker_right(f.src.comult, q)
    if not cell.check().ok:
        raise TwoCellError("input is not a bimodule map")
    if kind == "sigma":
        sigma = cell
    elif kind == "hat":
        sigma = lunit(q2) @ whisker_right(f.src.counit, q2) @ cell
    elif kind == "tilde":
        sigma = runit(q2) @ whisker_left(q2, f.dst.counit) @ cell
    else:
        raise ValueError("kind must be 'sigma', 'tilde' or 'hat'")
    lhs, rhs = _sigma_residual(f, g, sigma)
    if lhs != rhs:
        raise TwoCellError("σ does not satisfy the 2-cell condition")
    tilde = rhs
    hat = whisker_left(d, sigma) @ split
    if kind == "tilde" and tilde != cell:
        raise TwoCellError("σ̃ is not determined by its counit projection")
    if kind == "hat" and hat != cell:
        raise TwoCellError("σ̂ is not determined by its counit projection")
    return {"sigma": sigma, "tilde": tilde, "hat": hat}


def is_bicomodule_map(h: BimoduleMap, m: Bicomodule, n: Bicomodule) -> bool:
    d, c = m.left_coring.carrier, m.right_coring.carrier
    return (
        n.lcoact @ h == whisker_left(d, h) @ m.lcoact
        and n.rcoact @ h == whisker_right(h, c) @ m.rcoact
    )


# adjoint-pair conversions -----------------------------------------------------------

def alpha_from_phi(adj, d: Coring, c: Coring, phi: BimoduleMap) -> BimoduleMap:
    p, q, dd = adj.p, adj.q, d.carrier
    x = tensor(dd, q)
    pdq = tensor(tensor(p, dd), q)
    step = whisker_right(adj.eta, x) @ lunit_inv(x)
    step = rebracket(tensor(tensor(q, p), x), tensor(q, pdq)) @ step
    return whisker_left(q, phi) @ step


def phi_from_alpha(adj, d: Coring, c: Coring, alpha: BimoduleMap) -> BimoduleMap:
    p, q, dd, cc = adj.p, adj.q, d.carrier, c.carrier
    pdq = tensor(tensor(p, dd), q)
    step = whisker_left(p, alpha) @ rebracket(pdq, tensor(p, tensor(dd, q)))
    step = whisker_right(adj.mu, cc) @ rebracket(tensor(p, tensor(q, cc)), tensor(tensor(p, q), cc)) @ step
    return lunit(cc) @ step


def beta_from_phi(adj, d: Coring, c: Coring, phi: BimoduleMap) -> BimoduleMap:
    p, q, dd = adj.p, adj.q, d.carrier
    x = tensor(p, dd)
    pdq = tensor(x, q)
    step = whisker_left(x, adj.eta) @ runit_inv(x)
    step = rebracket(tensor(x, tensor(q, p)), tensor(pdq, p)) @ step
    return whisker_right(phi, p) @ step


def phi_from_beta(adj, d: Coring, c: Coring, beta: BimoduleMap) -> BimoduleMap:
    p, q, cc = adj.p, adj.q, c.carrier
    step = assoc(cc, p, q) @ whisker_right(beta, q)
    return runit(cc) @ whisker_left(cc, adj.mu) @ step


def locdual_convert(adj, d: Coring, c: Coring, kind: str, value: BimoduleMap, comatrix: Coring | None = None) -> dict[str, BimoduleMap]:
    """Given one of φ, α or β for an adjoint pair, compute the other two."""
    rep = adj.check()
    if not rep.ok:
        raise CoringError(f"adjoint pair fails the triangle identities: {rep.failures[0].check}")
    if kind == "phi":
        if comatrix is not None:
            r = check_coring_morphism(value, comatrix, c)
            if not r.ok:
                raise CoringError(f"φ is not a coring morphism: {r.failures[0].check}")
        phi = value
    elif kind == "alpha":
        r = check_right_morphism(RightComonadMorphism(d, c, adj.q, value))
        if not r.ok:
            raise CoringError(f"α is not a comonad morphism: {r.failures[0].check}")
        phi = phi_from_alpha(adj, d, c, value)
    elif kind == "beta":
        r = check_left_morphism(LeftComonadMorphism(d, c, adj.p, value))
        if not r.ok:
            raise CoringError(f"β is not a comonad morphism: {r.failures[0].check}")
        phi = phi_from_beta(adj, d, c, value)
    else:
        raise ValueError("kind must be 'phi', 'alpha' or 'beta'")
    out = {
        "phi": phi,
        "alpha": value if kind == "alpha" else alpha_from_phi(adj, d, c, phi),
        "beta": value if kind == "beta" else beta_from_phi(adj, d, c, phi),
    }
    return out


# coseparability ---------------------------------------------------------------------

@dataclass
class Coseparability:
    gamma: BimoduleMap | None
    solution_dim: int

    def __bool__(self) -> bool:
        return self.gamma is not None


def coseparability(c: Coring) -> Coseparability:
    """Solve for a bicomodule map γ: c (x)_A c -> c with γ ∘ Δ = id."""
    x, cc, field = c.carrier, c.cc, c.field
    ccc_l = tensor(x, cc)
    ccc_r = tensor(cc, x)
    lam = assoc(x, x, x) @ whisker_right(c.comult, x)
    rho = assoc_inv(x, x, x) @ whisker_left(x, c.comult)
    ic = Mat.identity(field, x.dim)
    one = Mat.identity(field, x.dim)

    def residual(g: Mat) -> list[Mat]:
        out = _linearity_residuals(g, cc, x)
        dg = c.comult.mat @ g
        out.append(dg - ccc_l.map_pairs(ic, g, cc) @ lam.mat)
        out.append(dg - ccc_r.map_pairs(g, ic, cc) @ rho.mat)
        out.append(g @ c.comult.mat - one)
        return out

    sol, space = linear_maps_solving(field, cc.dim, x.dim, residual)
    if sol is None:
        return Coseparability(None, 0)
    return Coseparability(BimoduleMap(cc, x, sol, check=False), space.dim)


def cosplit_retraction(m: Comodule, gamma: BimoduleMap) -> BimoduleMap:
    """r_m = (m (x) ε)(m (x) γ)(ρ (x) c): m (x)_A c -> m, a left inverse of ρ."""
    c = m.coring
    x, cc = m.carrier, c.carrier
    step = assoc(x, cc, cc) @ whisker_right(m.coaction, cc)
    step = whisker_left(x, gamma) @ step
    return runit(x) @ whisker_left(x, c.counit) @ step


def check_retraction(m: Comodule, gamma: BimoduleMap) -> Report:
    rep = Report(f"retraction {m.name}")
    r = cosplit_retraction(m, gamma)
    rep.expect_equal("r o rho = id", (r @ m.coaction).mat, m.carrier.identity.mat)
    cof = cofree_comodule(m.carrier, m.coring)
    if not is_comodule_map(BimoduleMap(cof.carrier, m.carrier, r.mat, check=False), cof, m):
        rep.fail("colinearity", "r", "retraction is not a comodule map")
    return rep


def cofree_adjunction_check(n: Comodule, m: Bimodule) -> Report:
    """Hom^C(n, m (x) c) -> Hom_A(n, m), ψ |-> (m (x) ε) ψ, is bijective."""
    rep = Report("cofree adjunction")
    cof = cofree_comodule(m, n.coring)
    homs = comodule_homs(n, cof)
    from .algcore import flatten_map, hom_bimodule, unflatten_map

    target = hom_bimodule(n.carrier, m)
    back = runit(m) @ whisker_left(m, n.coring.counit)
    images = []
    for i in range(homs.dim):
        psi = unflatten_map(n.coring.field, homs.element(i), cof.dim, n.dim)
        images.append(flatten_map(back.mat @ psi))
    rep.facts["dim_comodule_homs"] = homs.dim
    rep.facts["dim_module_homs"] = target.dim
    if homs.dim != target.dim:
        rep.fail("dimension", "hom spaces", f"{homs.dim} != {target.dim}")
    elif images:
        rank = hstack(n.coring.field, images).rank()
        if rank != target.dim:
            rep.fail("injectivity", "ψ -> (m⊗ε)ψ", f"rank {rank} < {target.dim}")
    return rep
