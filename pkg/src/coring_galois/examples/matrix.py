"""Matrix coalgebras, the row-vector comatrix context and a non-generator."""
from __future__ import annotations

from ..algcore import BimoduleMap, ground, runit_inv, tensor, vector_space
from ..coring import Comodule, Coring, LeftComodule, trivial_coring
from ..exactla import Field, Mat, hstack
from ..galois import (
    GaloisContext,
    comatrix_context,
    context_from_comodule,
    dual_adjoint_pair,
)
from .algebras import matrix_algebra, row_module, upper_triangular
from .extensions import right_ideal_module


def matrix_coalgebra(field: Field, n: int) -> Coring:
    """M_n(k)^c over k: Δ(e_ij) = Σ_t e_it (x) e_tj, ε(e_ij) = δ_ij."""
    k = ground(field)
    x = vector_space(field, n * n, f"M{n}c")
    cc = tensor(x, x)
    cols = []
    for a in range(n * n):
        i, j = divmod(a, n)
        v = Mat.zeros(field, cc.dim, 1)
        for t in range(n):
            v = v + cc.elem(Mat.unit(field, n * n, i * n + t), Mat.unit(field, n * n, t * n + j))
        cols.append(v)
    comult = BimoduleMap(x, cc, hstack(field, cols, cc.dim), check=False)
    counit = BimoduleMap(x, k.regular, Mat.from_rows(field, [[1 if divmod(a, n)[0] == divmod(a, n)[1] else 0 for a in range(n * n)]]), check=False)
    return Coring(k, x, comult, counit, name=f"M{n}(k)^c")


def vector_comodule(c: Coring, n: int) -> Comodule:
    """k^n over M_n(k)^c with ρ(v_j) = Σ_i v_i (x) e_ij."""
    field = c.field
    v = vector_space(field, n, f"k^{n}")
    t = tensor(v, c.carrier)
    cols = []
    for j in range(n):
        acc = Mat.zeros(field, t.dim, 1)
        for i in range(n):
            acc = acc + t.elem(Mat.unit(field, n, i), Mat.unit(field, n * n, i * n + j))
        cols.append(acc)
    return Comodule(c, v, BimoduleMap(v, t, hstack(field, cols, t.dim), check=False), name=f"k^{n}")


def covector_comodule(c: Coring, n: int) -> LeftComodule:
    """k^n as a left M_n(k)^c-comodule, λ(w_i) = Σ_j e_ij (x) w_j."""
    field = c.field
    w = vector_space(field, n, f"k^{n}*")
    t = tensor(c.carrier, w)
    cols = []
    for i in range(n):
        acc = Mat.zeros(field, t.dim, 1)
        for j in range(n):
            acc = acc + t.elem(Mat.unit(field, n * n, i * n + j), Mat.unit(field, n, j))
        cols.append(acc)
    return LeftComodule(c, w, BimoduleMap(w, t, hstack(field, cols, t.dim), check=False), name=f"k^{n}*")


def row_vector_context(field: Field, n: int = 2) -> GaloisContext:
    """Σ = k^{1 x n} over A = M_n(k), B = k; its comatrix coring is M_n(k) as an A-coring."""
    sigma = row_module(field, n, matrix_algebra(field, n))
    return comatrix_context(dual_adjoint_pair(sigma), name=f"row vectors over M{n}")


def non_generator_context(field: Field) -> GaloisContext:
    """Σ = e11 T over upper-triangular T, as a comodule over the trivial T-coring.

    Σ is projective but its trace ideal misses e22, so can is not onto.
    """
    T = upper_triangular(field)
    sigma = right_ideal_module(T, T.basis(0), name="e11T")
    triv = trivial_coring(T)
    com = Comodule(triv, sigma, runit_inv(sigma), name="e11T")
    return context_from_comodule(com, name="e11T over T2")
