"""Independent brute-force reference arithmetic for cross-checking the library.

Plain Python integers and Fractions, no flint and no library echelon forms.
Subspaces are compared by ranks of unions (or by enumerating every vector
over a tiny prime field), never by canonical bases.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product


class Arith:
    """Exact scalars: Fractions when p == 0, residues mod p otherwise."""

    def __init__(self, p: int = 0):
        self.p = p

    def conv(self, x):
        if self.p:
            return int(x) % self.p
        return Fraction(int(x.p), int(x.q)) if hasattr(x, "q") else Fraction(x)

    def norm(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)


def arith_of(mat) -> Arith:
    return Arith(mat.field.p)


def rows_of(mat, ar: Arith) -> list[list]:
    return [[ar.conv(v) for v in row] for row in mat.tolist()]


def columns_of(mat, ar: Arith) -> list[list]:
    rows = rows_of(mat, ar)
    return [[rows[i][j] for i in range(len(rows))] for j in range(mat.cols)]


def matmul(a: list[list], b: list[list], ar: Arith) -> list[list]:
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ar.zero] * n
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] = ar.norm(acc[j] + x * y)
        out.append(acc)
    return out


def apply(a: list[list], v: list, ar: Arith) -> list:
    return [ar.norm(sum((x * y for x, y in zip(row, v)), ar.zero)) for row in a]


def kron_vec(u: list, v: list, ar: Arith) -> list:
    return [ar.norm(x * y) for x in u for y in v]


def unit(n: int, i: int, ar: Arith) -> list:
    v = [ar.zero] * n
    v[i] = ar.one
    return v


def rank(vectors: list[list], ar: Arith) -> int:
    """Rank of a list of vectors by plain elimination on a private copy."""
    work = [list(v) for v in vectors if any(v)]
    r = 0
    if not work:
        return 0
    n = len(work[0])
    for col in range(n):
        piv = next((i for i in range(r, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = ar.inv(work[r][col])
        for i in range(len(work)):
            if i != r and work[i][col]:
                f = work[i][col] * inv
                work[i] = [ar.norm(x - f * y) for x, y in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def nullspace(rows: list[list], ncols: int, ar: Arith) -> list[list]:
    """Basis of {v : rows v = 0} by elimination on a private copy."""
    work = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = ar.inv(work[r][col])
        work[r] = [ar.norm(x * inv) for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [ar.norm(x - f * y) for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [ar.zero] * ncols
        v[fcol] = ar.one
        for i, pc in enumerate(pivots):
            v[pc] = ar.norm(-work[i][fcol])
        basis.append(v)
    return basis


def same_span(u: list[list], v: list[list], ar: Arith) -> bool:
    ru, rv = rank(u, ar), rank(v, ar)
    return ru == rv == rank(u + v, ar)


def enumerate_span(vectors: list[list], p: int, n: int) -> set[tuple]:
    """Every vector of the span over F_p, by closure under adding generators."""
    seen = {tuple([0] * n)}
    frontier = list(seen)
    gens = [tuple(x % p for x in v) for v in vectors]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = tuple((a + b) % p for a, b in zip(s, g))
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


def enumerate_kernel(rows: list[list], p: int, n: int) -> set[tuple]:
    """Every v in F_p^n with rows v = 0, by exhaustive search."""
    out = set()
    for v in product(range(p), repeat=n):
        if all(sum(a * b for a, b in zip(row, v)) % p == 0 for row in rows):
            out.add(v)
    return out


# brute-force constructions ---------------------------------------------------------

def tensor_relations(m, n, ar: Arith) -> list[list]:
    """All (u b) (x) v - u (x) (b v) over basis vectors u, v and basis elements b."""
    dm, dn = m.dim, n.dim
    gens = []
    for b in range(m.right_alg.dim):
        R = rows_of(m.ract[b], ar)
        L = rows_of(n.lact[b], ar)
        for i in range(dm):
            ui = [R[r][i] for r in range(dm)]
            for j in range(dn):
                vj = [L[r][j] for r in range(dn)]
                g = [ar.norm(x - y) for x, y in zip(kron_vec(ui, unit(dn, j, ar), ar), kron_vec(unit(dm, i, ar), vj, ar))]
                if any(g):
                    gens.append(g)
    return gens


def triple_relations(m, c, n, ar: Arith) -> list[list]:
    """Balancing relations in both slots of the k-tensor m (x) c (x) n."""
    dm, dc, dn = m.dim, c.dim, n.dim
    gens = []
    for a in range(c.left_alg.dim):
        Rm = rows_of(m.ract[a], ar)
        Lc = rows_of(c.lact[a], ar)
        Rc = rows_of(c.ract[a], ar)
        Ln = rows_of(n.lact[a], ar)
        for i in range(dm):
            for j in range(dc):
                for k in range(dn):
                    ei, ej, ek = unit(dm, i, ar), unit(dc, j, ar), unit(dn, k, ar)
                    col = lambda M, t, d: [M[r][t] for r in range(d)]
                    g1 = [ar.norm(x - y) for x, y in zip(
                        kron_vec(kron_vec(col(Rm, i, dm), ej, ar), ek, ar),
                        kron_vec(kron_vec(ei, col(Lc, j, dc), ar), ek, ar))]
                    g2 = [ar.norm(x - y) for x, y in zip(
                        kron_vec(kron_vec(ei, col(Rc, j, dc), ar), ek, ar),
                        kron_vec(kron_vec(ei, ej, ar), col(Ln, k, dn), ar))]
                    for g in (g1, g2):
                        if any(g):
                            gens.append(g)
    return gens


def cotensor_lift_space(m, n, ar: Arith) -> list[list]:
    """{v in k^{dm dn} : (ρ~ (x) n - m (x) λ~) v lies in the balancing relations}.

    ``m`` is a right comodule and ``n`` a left comodule; ρ~ and λ~ are the
    coactions lifted to k-tensor coordinates (they are input data).
    """
    c = m.coring.carrier
    mc = m.coaction.dst
    cn = n.coaction.dst
    rho = rows_of(mc.sect @ m.coaction.mat, ar)  # (dm dc) x dm
    lam = rows_of(cn.sect @ n.coaction.mat, ar)  # (dc dn) x dn
    dm, dc, dn = m.carrier.dim, c.dim, n.carrier.dim
    amb3 = dm * dc * dn
    cols = []
    for i in range(dm):
        ri = [rho[r][i] for r in range(dm * dc)]
        for k in range(dn):
            lk = [lam[r][k] for r in range(dc * dn)]
            left = kron_vec(ri, unit(dn, k, ar), ar)
            right = kron_vec(unit(dm, i, ar), lk, ar)
            cols.append([ar.norm(x - y) for x, y in zip(left, right)])
    rel3 = triple_relations(m.carrier, c, n.carrier, ar)
    # unknowns: coefficients on ambient basis (dm*dn) then on relation generators
    nvar = dm * dn + len(rel3)
    rows = []
    for r in range(amb3):
        rows.append([cols[v][r] for v in range(dm * dn)] + [ar.norm(-g[r]) for g in rel3])
    sol = nullspace(rows, nvar, ar)
    return [s[: dm * dn] for s in sol]


# cross-checks against library objects ---------------------------------------------

def check_tensor(t) -> list[str]:
    """Compare a library tensor product with the brute-force relation span."""
    ar = Arith(t.field.p)
    m, n = t.left, t.right
    amb = m.dim * n.dim
    problems = []
    gens = tensor_relations(m, n, ar)
    proj = rows_of(t.proj, ar)
    kern = nullspace(proj, amb, ar)
    if not same_span(gens, kern, ar):
        problems.append("kernel of proj differs from the relation span")
    if rank(proj, ar) + rank(gens, ar) != amb:
        problems.append("quotient dimension mismatch")
    ps = matmul(proj, rows_of(t.sect, ar), ar)
    if ps != [unit(t.dim, i, ar) for i in range(t.dim)]:
        problems.append("proj . sect is not the identity")
    # induced actions: proj (L (x) 1) = lact proj, checked on every ambient basis vector
    for side, mats_src, mats_dst in (("left", m.lact, t.lact), ("right", n.ract, t.ract)):
        for idx, (S, Q) in enumerate(zip(mats_src, mats_dst)):
            S_ = rows_of(S, ar)
            Q_ = rows_of(Q, ar)
            for i in range(m.dim):
                for j in range(n.dim):
                    if side == "left":
                        v = kron_vec([S_[r][i] for r in range(m.dim)], unit(n.dim, j, ar), ar)
                    else:
                        v = kron_vec(unit(m.dim, i, ar), [S_[r][j] for r in range(n.dim)], ar)
                    lhs = apply(proj, v, ar)
                    rhs = apply(Q_, apply(proj, unit(amb, i * n.dim + j, ar), ar), ar)
                    if lhs != rhs:
                        problems.append(f"{side} action {idx} not induced at ({i},{j})")
                        break
    return problems


def check_tensor_enumerated(t) -> list[str]:
    """Over a small prime field: enumerate the relation span and the kernel of proj."""
    p = t.field.p
    assert p
    ar = Arith(p)
    amb = t.left.dim * t.right.dim
    span_set = enumerate_span(tensor_relations(t.left, t.right, ar), p, amb)
    kern_set = enumerate_kernel(rows_of(t.proj, ar), p, amb)
    return [] if span_set == kern_set else [f"enumerated spans differ ({len(span_set)} vs {len(kern_set)})"]


def check_cotensor(cot) -> list[str]:
    """Library cotensor subspace, lifted to k-tensor coordinates, against the brute-force one."""
    t = cot.ambient
    ar = Arith(t.field.p)
    amb = t.left.dim * t.right.dim
    expected = cotensor_lift_space(cot.left, cot.right, ar)
    sub = rows_of(t.sect @ cot.subspace.basis, ar)
    lifted = [[sub[r][j] for r in range(amb)] for j in range(cot.dim)]
    lifted += tensor_relations(t.left, t.right, ar)
    problems = []
    if not same_span(expected, lifted, ar):
        problems.append(f"cotensor spans differ (oracle rank {rank(expected, ar)}, library rank {rank(lifted, ar)})")
    if rank(expected, ar) - rank(tensor_relations(t.left, t.right, ar), ar) != cot.dim:
        problems.append("cotensor dimension differs")
    return problems


def can_values(ctx) -> list[list]:
    """can on every k-tensor basis vector f_k (x) u of p (x) q: f_k(u_0) u_1, ambient coordinates."""
    from coring_galois.algcore import tensor

    ar = Arith(ctx.A.field.p)
    p, q, c = ctx.p, ctx.q, ctx.c
    pq = tensor(p, q)
    qc = ctx.sigma.coaction.dst
    mu_amb = matmul(rows_of(ctx.adj.mu.mat, ar), rows_of(pq.proj, ar), ar)
    rho = matmul(rows_of(qc.sect, ar), rows_of(ctx.sigma.coaction.mat, ar), ar)
    lact = [rows_of(L, ar) for L in c.lact]
    out = []
    for k in range(p.dim):
        for u in range(q.dim):
            val = [ar.zero] * c.dim
            for r in range(q.dim * c.dim):
                coeff = rho[r][u]
                if not coeff:
                    continue
                u0, c1 = divmod(r, c.dim)
                fu = [mu_amb[a][k * q.dim + u0] for a in range(ctx.A.dim)]
                for a, s in enumerate(fu):
                    if s:
                        for i in range(c.dim):
                            val[i] = ar.norm(val[i] + coeff * s * lact[a][i][c1])
            out.append(val)
    return out


def check_can(ctx, can) -> list[str]:
    """can.mat . proj equals the element formula on every ambient basis vector; ranks agree."""
    from coring_galois.algcore import tensor

    ar = Arith(ctx.A.field.p)
    pq = tensor(ctx.p, ctx.q)
    got = matmul(rows_of(can.mat, ar), rows_of(pq.proj, ar), ar)
    want_cols = can_values(ctx)
    want = [[want_cols[j][i] for j in range(len(want_cols))] for i in range(ctx.c.dim)]
    problems = []
    if got != want:
        problems.append("can differs from the element formula")
    if rank(want_cols, ar) != can.mat.rank():
        problems.append("can rank differs")
    return problems
