"""Shipped example families: descent chains, Hopf comodule algebras, quasi comatrix corings."""
import pytest
from registry import dual_numbers_over_k, nonsplit_extension, q2, sqrt2_extension

from coring_galois.algcore import assoc, check_algebra, whisker_left, whisker_right
from coring_galois.coring import check_coring, check_coring_morphism, trivial_coring
from coring_galois.exactla import GF, QQ
from coring_galois.examples.algebras import (
    cyclic_group_algebra,
    matrix_algebra,
    truncated_polynomial,
)
from coring_galois.examples.extensions import (
    descent_report,
    identity_extension,
    sweedler_coring,
)
from coring_galois.examples.hopf import (
    check_coaction,
    coinvariants,
    graded_coaction,
    group_bialgebra,
    hopf_comodule_algebra_coring,
    hopf_trivial,
    hopf_z2,
    hopf_z2_degenerate,
)
from coring_galois.examples.quasi import (
    QuasiComodule,
    QuasiError,
    associator,
    check_dual_quasi_bialgebra,
    check_quasi_comodule,
    check_quasi_coring,
    check_quasi_data,
    cofree_quasi_comodule,
    group_quasi_bialgebra,
    matrix_quasi_example,
    quasi_comatrix_coring,
    regular_quasi_comodule,
    trivial_quasi_bialgebra,
    trivial_quasi_example,
    z2_quasi_example,
    z2_sign_cocycle,
)
from coring_galois.galois import (
    can_map,
    comatrix_context,
    comatrix_coring,
    dual_adjoint_pair,
    structure_report,
)

FIELDS = [QQ, GF(3), GF(5), GF(7)]
STAGE_KEYS = ("i", "ii", "iii", "iv")


def stages(rep):
    return {k: next(v for key, v in rep.facts.items() if key.startswith(f"({k})")) for k in STAGE_KEYS}


# Sweedler corings -----------------------------------------------------------------

def test_sweedler_of_identity_extension_is_the_trivial_coring():
    A = q2()
    c, _ = sweedler_coring(identity_extension(A))
    assert check_coring(c).ok
    assert c.dim == A.dim
    # the counit is an isomorphism onto A that respects the coring structures
    assert c.counit.rank() == A.dim
    assert check_coring_morphism(c.counit, c, trivial_coring(A)).ok


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_sweedler_grouplike_is_one_tensor_one(field):
    c, g = sweedler_coring(sqrt2_extension(field))
    x = c.carrier
    cc = c.comult.dst
    assert c.comult.mat @ g == cc.elem(g, g)
    assert c.counit.mat @ g == c.algebra.unit
    assert x.dim == c.algebra.dim ** 2


# descent ---------------------------------------------------------------------------

def test_descent_field_extension_holds_everywhere():
    rep = descent_report(sqrt2_extension())
    assert rep.ok
    assert stages(rep) == dict.fromkeys(STAGE_KEYS, True)
    assert rep.facts["first failing stage"] is None


def test_descent_identity_extension_holds():
    rep = descent_report(identity_extension(q2()))
    assert rep.ok and rep.facts["eta rank"] == 2


def test_descent_nonsplit_quotient_fails_at_the_first_stage():
    rep = descent_report(nonsplit_extension())
    held = stages(rep)
    assert not rep.ok
    assert held == dict.fromkeys(STAGE_KEYS, False)
    assert rep.facts["first failing stage"] == "i"
    assert {f.check for f in rep.failures} == {"(i)", "(ii)", "(iii)", "(iv)"}
    # the chain implications themselves are consistent
    assert not any(f.check == "chain" for f in rep.failures)


def test_descent_dual_numbers_is_effective():
    # free extension, hence faithfully flat: every stage holds
    rep = descent_report(dual_numbers_over_k())
    assert rep.ok


@pytest.mark.parametrize("field", [QQ, GF(3), GF(5)], ids=str)
def test_descent_verdicts_stable_over_fields(field):
    assert descent_report(nonsplit_extension(field)).facts["first failing stage"] == "i"
    assert descent_report(sqrt2_extension(field) if field != GF(3) else dual_numbers_over_k(field)).ok


def test_descent_chain_matches_structure_report():
    for ext in (sqrt2_extension(), nonsplit_extension(), dual_numbers_over_k()):
        rep = descent_report(ext)
        sr = structure_report(comatrix_context(dual_adjoint_pair(ext.A_BA)))
        assert stages(rep)["ii"] == sr.equivalence


# Hopf comodule algebras -----------------------------------------------------------

def test_trivial_bialgebra_gives_b_equal_a():
    A = truncated_polynomial(QQ, 2)
    c, ctx = hopf_trivial(A)
    assert ctx.extension.B.dim == A.dim
    assert c.dim == A.dim
    assert check_coring(c).ok
    assert can_map(ctx).rank() == A.dim


def test_hopf_z2_coinvariants_are_the_ground_field():
    c, ctx = hopf_z2(QQ)
    assert ctx.extension.B.dim == 1
    assert check_algebra(ctx.extension.B).ok
    assert c.dim == 4


@pytest.mark.parametrize("field", [*FIELDS, GF(2)], ids=str)
def test_hopf_z2_can_rank_is_field_independent(field):
    # x is a unit of odd degree, so the grading is strong even in characteristic 2
    _, ctx = hopf_z2(field)
    assert can_map(ctx).rank() == 4


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_degenerate_grading_loses_rank(field):
    _, ctx = hopf_z2_degenerate(field)
    assert ctx.extension.B.dim == 1
    assert can_map(ctx).rank() == 3


def test_invalid_coaction_is_rejected():
    H = group_bialgebra(QQ, 2)
    A = cyclic_group_algebra(QQ, 2)
    rho = graded_coaction(A, H, [1, 1])  # unit placed in odd degree
    assert not check_coaction(H, A, rho).ok
    with pytest.raises(ValueError):
        hopf_comodule_algebra_coring(H, A, rho)


def test_coinvariants_of_a_z2_grading_on_matrices():
    # M2 graded by checkerboard: the diagonal is even
    H = group_bialgebra(QQ, 2)
    A = matrix_algebra(QQ, 2)
    rho = graded_coaction(A, H, [0, 1, 1, 0])
    assert check_coaction(H, A, rho).ok
    ext = coinvariants(H, A, rho)
    assert ext.B.dim == 2
    c, ctx = hopf_comodule_algebra_coring(H, A, rho)
    assert check_coring(c).ok
    assert can_map(ctx).rank() == 8


# dual quasi-bialgebras --------------------------------------------------------------

@pytest.mark.parametrize("field", [QQ, GF(3), GF(5)], ids=str)
def test_sign_cocycle_is_valid(field):
    rep = check_dual_quasi_bialgebra(z2_sign_cocycle(field))
    assert rep.ok
    assert rep.facts["cocycle quadruples checked"] == 16


def test_trivial_phi_is_valid():
    rep = check_dual_quasi_bialgebra(trivial_quasi_bialgebra(QQ, 3))
    assert rep.ok and rep.facts["cocycle quadruples checked"] == 81


def test_bad_cocycle_is_located():
    bad = group_quasi_bialgebra(QQ, 2, lambda a, b, c: 2 if a * b * c else 1)
    rep = check_dual_quasi_bialgebra(bad)
    assert [(f.check, f.where) for f in rep.failures] == [("3-cocycle", "quadruple (1,1,1,1)")]


def test_mismatched_inverse_is_flagged():
    h = group_quasi_bialgebra(QQ, 2, lambda a, b, c: -1 if a * b * c else 1, phi_inv=lambda a, b, c: 1)
    rep = check_dual_quasi_bialgebra(h)
    assert any(f.check == "convolution inverse" and f.where == "triple (1,1,1)" for f in rep.failures)


def test_non_normalized_phi_is_flagged():
    h = group_quasi_bialgebra(QQ, 2, lambda a, b, c: -1 if (a, b, c) == (1, 0, 1) else 1)
    rep = check_dual_quasi_bialgebra(h)
    assert any(f.check.startswith("normalization") for f in rep.failures)


# quasi comatrix corings ------------------------------------------------------------

QUASI = {"trivial": trivial_quasi_example, "matrix": matrix_quasi_example, "Z2 sign": z2_quasi_example}


@pytest.mark.parametrize("name", QUASI)
@pytest.mark.parametrize("field", [QQ, GF(5)], ids=str)
def test_quasi_comatrix_axioms_and_formula_agreement(name, field):
    data = QUASI[name](field)
    assert check_quasi_data(data).ok
    qc = quasi_comatrix_coring(data)
    rep = check_quasi_coring(data, qc)
    assert rep.ok, rep.summary()
    assert qc.coring.comult.mat == qc.second_formula


@pytest.mark.parametrize("name", ["trivial", "matrix"])
def test_trivial_phi_reduces_to_comatrix_bit_for_bit(name):
    data = QUASI[name](QQ)
    qc = quasi_comatrix_coring(data)
    assert qc.nontrivial_factors == 0
    classical = comatrix_coring(data.to_adjoint_pair())
    assert qc.coring.carrier.dim == classical.carrier.dim
    assert qc.coring.comult.mat == classical.comult.mat
    assert qc.coring.counit.mat == classical.counit.mat


def test_sign_example_has_nontrivial_factors():
    data = z2_quasi_example(QQ)
    qc = quasi_comatrix_coring(data)
    assert qc.nontrivial_factors == 6
    assert qc.degrees == [0, 1, 1, 0]
    with pytest.raises(QuasiError):
        data.to_adjoint_pair()


def test_sign_example_is_not_strictly_coassociative():
    data = z2_quasi_example(QQ)
    c = quasi_comatrix_coring(data).coring
    x, d = c.carrier, c.comult
    plain = (whisker_right(d, x) @ d).mat
    strict = assoc(x, x, x).mat @ plain
    assert strict != (whisker_left(x, d) @ d).mat
    # inserting the associator repairs it
    assert (associator(data, c, quasi_comatrix_coring(data).degrees) @ whisker_right(d, x) @ d).mat == (
        whisker_left(x, d) @ d
    ).mat


def test_quasi_data_with_wrong_eta_is_rejected():
    data = z2_quasi_example(QQ)
    data.eta = data.eta.scale(2)
    assert not check_quasi_data(data).ok
    with pytest.raises(QuasiError):
        quasi_comatrix_coring(data)


# graded comodules over the quasi comatrix coring ------------------------------------

def test_regular_and_cofree_graded_comodules():
    from coring_galois.algcore import vector_space

    data = z2_quasi_example(QQ)
    qc = quasi_comatrix_coring(data)
    assert check_quasi_comodule(data, qc, regular_quasi_comodule(qc)).ok
    for degrees in ([0], [1], [0, 1], [1, 1]):
        v = vector_space(QQ, len(degrees), "V")
        m = cofree_quasi_comodule(data, qc, v, degrees)
        assert m.carrier.dim == 4 * len(degrees)
        assert check_quasi_comodule(data, qc, m).ok


def test_strict_rebracketing_is_not_a_graded_coaction_in_odd_degree():
    from coring_galois.algcore import BimoduleMap, assoc_inv, vector_space, whisker_left

    data = z2_quasi_example(QQ)
    qc = quasi_comatrix_coring(data)
    x = qc.coring.carrier
    for degree, expect in ((0, True), (1, False)):
        v = vector_space(QQ, 1, "V")
        m = cofree_quasi_comodule(data, qc, v, [degree])
        strict = assoc_inv(v, x, x) @ whisker_left(v, qc.coring.comult)
        bad = QuasiComodule(m.carrier, m.degrees, BimoduleMap(m.carrier, m.coaction.dst, strict.mat, check=False))
        rep = check_quasi_comodule(data, qc, bad)
        assert rep.ok is expect
        if not expect:
            assert rep.failures[0].check == "coassociativity up to Φ"
            assert rep.failures[0].where == "basis element 0"
