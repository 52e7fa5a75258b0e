import pytest
import registry

from coring_galois.algcore import lunit, tensor
from coring_galois.coring import (
    Comodule,
    check_comodule,
    check_coring,
    check_coring_morphism,
    trivial_coring,
)
from coring_galois.exactla import QQ, Mat
from coring_galois.examples.algebras import (
    character_module,
    matrix_algebra,
    quadratic_extension,
    truncated_polynomial,
)
from coring_galois.examples.extensions import scalar_extension, sweedler_coring
from coring_galois.galois import (
    ContextError,
    PullbackUndefined,
    adjunction_counit,
    adjunction_unit,
    can1_comparison,
    can_displayed,
    can_map,
    canbar_data,
    canbar_map,
    check_adjunction_triangles,
    comatrix_coring,
    context_from_comodule,
    coseparable_shortcuts,
    default_test_sets,
    dual_adjoint_pair,
    equalizerxq,
    identity_adjoint_pair,
    joyal_duality_check,
    nu_on_coring_is_can,
    pullback_apply,
    pullback_data,
    pushout_apply,
    regular_adjoint_pair,
    structure_report,
    zeta_on_coring_is_canbar,
)

CTX = registry.contexts(QQ)
NAMES = list(CTX)
POSITIVE = [n for n in NAMES if n not in ("hopf Z2 degenerate", "non-generator", "comatrix nonsplit")]


class TestComatrixCoring:
    def test_identity_pair_gives_the_trivial_coring(self):
        A = quadratic_extension(QQ, 2)
        c = comatrix_coring(identity_adjoint_pair(A))
        iso = lunit(A.regular)
        assert iso.is_bijective()
        assert check_coring_morphism(iso, c, trivial_coring(A)).ok

    def test_row_vectors_give_the_matrix_coring(self):
        M2 = matrix_algebra(QQ, 2)
        from coring_galois.examples.algebras import row_module

        adj = dual_adjoint_pair(row_module(QQ, 2, M2))
        c = comatrix_coring(adj)
        assert c.dim == 4 and check_coring(c).ok
        # ε is multiplication of a column by a row: onto M2
        assert c.counit.is_bijective()

    def test_regular_pair_reproduces_the_sweedler_coring(self):
        ext = registry.sqrt2_extension()
        sw, _ = sweedler_coring(ext)
        c = comatrix_coring(regular_adjoint_pair(ext))
        assert c.carrier is sw.carrier
        assert c.comult.mat == sw.comult.mat and c.counit.mat == sw.counit.mat

    def test_matrix_algebra_over_k(self):
        ext = scalar_extension(matrix_algebra(QQ, 2))
        sw, _ = sweedler_coring(ext)
        c = comatrix_coring(regular_adjoint_pair(ext))
        assert c.dim == 16 and c.comult.mat == sw.comult.mat

    def test_invalid_pair_rejected(self):
        adj = dual_adjoint_pair(registry.sqrt2_extension().A_BA)
        from coring_galois.algcore import BimoduleMap
        from coring_galois.galois import AdjointPair

        bad = AdjointPair(adj.A, adj.B, adj.p, adj.q, adj.mu, BimoduleMap(adj.eta.src, adj.eta.dst, adj.eta.mat.scale(QQ(2)), check=False))
        with pytest.raises(ContextError):
            comatrix_coring(bad)


class TestCan:
    def test_trivial_context_is_the_unit_iso(self):
        ctx = CTX["trivial Q(sqrt2)"]
        assert can_map(ctx).mat == lunit(ctx.A.regular).mat

    def test_sweedler_self_context_is_literally_the_identity(self):
        ctx = CTX["sweedler Q(sqrt2)"]
        assert can_map(ctx).mat == Mat.identity(QQ, 4)

    def test_hopf_z2_rank_four(self):
        can = can_map(CTX["hopf Z2"])
        assert can.rank() == 4 and can.is_bijective()

    def test_degenerate_rank_deficit(self):
        can = can_map(CTX["hopf Z2 degenerate"])
        assert can.rank() < 4 and not can.is_bijective()

    @pytest.mark.parametrize("name", NAMES)
    def test_derived_equals_displayed(self, name):
        ctx = CTX[name]
        assert can_map(ctx).mat == can_displayed(ctx).mat

    @pytest.mark.parametrize("name", NAMES)
    def test_can_is_a_coring_map(self, name):
        ctx = CTX[name]
        assert check_coring_morphism(can_map(ctx), ctx.comatrix, ctx.C).ok

    def test_hopf_element_formula(self):
        # can(a (x) a') = a a'_0 (x) a'_1 for the Z/2 grading, x odd
        ctx = CTX["hopf Z2"]
        A = ctx.A
        pq = tensor(ctx.p, ctx.q)
        can = can_map(ctx)
        deg = [0, 1]
        for t, (i, j) in enumerate(pq.pairs):
            prod = A.mul(A.basis(i), A.basis(j))
            from coring_galois.exactla import kron

            want = kron(prod, Mat.unit(QQ, 2, deg[j]))
            assert can.mat.column(t) == want


class TestCanbar:
    def test_trivial_is_identity(self):
        cb = canbar_map(CTX["trivial k"])
        assert cb.mat == Mat.identity(QQ, 1)

    def test_hopf_bijective(self):
        cb = canbar_map(CTX["hopf Z2"])
        assert cb.src.dim == cb.dst.dim and cb.is_bijective()

    def test_not_faithfully_flat_rank_deficit(self):
        cb = canbar_map(CTX["comatrix nonsplit"])
        assert cb.rank() < cb.src.dim and not cb.is_bijective()

    @pytest.mark.parametrize("name", NAMES)
    def test_residual_vanishes(self, name):
        assert canbar_data(CTX[name])[2].mat.is_zero()


class TestPushoutPullback:
    @pytest.mark.parametrize("name", NAMES)
    def test_pushouts_are_comodules(self, name):
        ctx = CTX[name]
        for x in default_test_sets(ctx)[0]:
            assert check_comodule(pushout_apply(ctx, x)).ok

    def test_pushout_of_base_is_sigma(self):
        ctx = CTX["hopf Z2"]
        b = default_test_sets(ctx)[0][0]
        qb = pushout_apply(ctx, b)
        iso = lunit(ctx.q)
        from coring_galois.algcore import whisker_right

        assert (whisker_right(iso, ctx.c) @ qb.coaction).mat == (ctx.sigma.coaction @ iso).mat

    def test_pushout_of_regular_is_the_bicomodule(self):
        ctx = CTX["row vectors M2"]
        d = default_test_sets(ctx)[0][1]
        assert pushout_apply(ctx, d).coaction.mat == ctx.dq.rcoact.mat

    def test_pullback_of_coring_is_p_tensor_d(self):
        ctx = CTX["hopf Z2"]
        from coring_galois.coring import regular_comodule

        pb = pullback_apply(ctx, regular_comodule(ctx.C))
        assert pb.dim == ctx.pd.carrier.dim

    def test_trivial_pullback_is_identity_up_to_dimension(self):
        ctx = CTX["trivial Q(sqrt2)"]
        for n in default_test_sets(ctx)[1]:
            assert pullback_apply(ctx, n).dim == n.dim

    def test_hopf_pullback_of_pushout_of_base(self):
        ctx = CTX["hopf Z2"]
        b = default_test_sets(ctx)[0][0]
        assert pullback_apply(ctx, pushout_apply(ctx, b)).dim == 1

    def test_pullback_rejects_foreign_comodules(self):
        ctx = CTX["hopf Z2"]
        with pytest.raises(ContextError):
            pullback_data(ctx, default_test_sets(ctx)[0][0])


class TestAdjunction:
    def test_trivial_unit_and_counit_are_identities(self):
        ctx = CTX["trivial k"]
        xs, ns, _ = default_test_sets(ctx)
        for x in xs:
            zeta, _ = adjunction_unit(ctx, x)
            assert zeta.is_bijective()
        for n in ns:
            nu, _ = adjunction_counit(ctx, n)
            assert nu.is_bijective()

    @pytest.mark.parametrize("name", NAMES)
    def test_zeta_d_is_canbar_and_nu_c_is_can(self, name):
        ctx = CTX[name]
        assert zeta_on_coring_is_canbar(ctx)
        assert nu_on_coring_is_can(ctx)

    @pytest.mark.parametrize("name", NAMES)
    def test_triangles(self, name):
        ctx = CTX[name]
        xs, ns, _ = default_test_sets(ctx)
        for x in xs:
            assert check_adjunction_triangles(ctx, x=x).ok
        for n in ns:
            try:
                rep = check_adjunction_triangles(ctx, n=n)
            except PullbackUndefined:
                continue
            assert rep.ok


class TestComparisonMaps:
    @pytest.mark.parametrize("name", NAMES)
    def test_can1(self, name):
        a, b, ok = can1_comparison(CTX[name])
        assert a == b and ok

    @pytest.mark.parametrize("name", NAMES)
    def test_equalizerxq(self, name):
        ctx = CTX[name]
        for x in default_test_sets(ctx)[0]:
            a, b, ok = equalizerxq(ctx, x)
            assert a == b and ok


class TestStructureReport:
    def test_trivial_all_pass(self):
        rep = structure_report(CTX["trivial k"])
        assert all(rep.verdicts.values()) and rep.equivalence

    def test_hopf_equivalence_on_default_tests(self):
        rep = structure_report(CTX["hopf Z2"])
        assert rep.can_rank == 4 and rep.can_bijective and rep.canbar_bijective
        assert all(rep.zeta_bijective.values()) and all(rep.nu_bijective.values())
        assert set(rep.zeta_bijective) == {"B", "d", "d*d"}
        assert rep.equivalence

    def test_non_generator(self):
        rep = structure_report(CTX["non-generator"])
        assert rep.generator is False and not rep.equivalence

    def test_non_projective_sigma_is_refused(self):
        B = truncated_polynomial(QQ, 2)
        s = character_module(B, [1, 0], "right")
        C = trivial_coring(B)
        from coring_galois.algcore import runit_inv

        sigma = Comodule(C, s, runit_inv(s))
        with pytest.raises(ContextError, match="dual basis"):
            context_from_comodule(sigma)

    @pytest.mark.parametrize("name", NAMES)
    def test_weak_structure_consistency(self, name):
        rep = structure_report(CTX[name])
        if rep.can_bijective and all(rep.pushout_preserves_eq.values()):
            assert all(rep.nu_bijective.values())
        if rep.nu_bijective.get("c"):
            assert rep.can_bijective

    @pytest.mark.parametrize("name", NAMES)
    def test_strong_structure_consistency(self, name):
        rep = structure_report(CTX[name])
        if rep.equivalence:
            assert all(rep.zeta_bijective.values()) and all(rep.nu_bijective.values())

    def test_record_is_scoped(self):
        rec = structure_report(CTX["hopf Z2"]).to_record()
        assert rec["scope"] == "on the supplied test set"


class TestShortcuts:
    def test_trivial_coring_meets_hypotheses(self):
        f = coseparable_shortcuts(CTX["trivial Q(sqrt2)"]).facts
        assert f["C coseparable"] and f["left coaction of p⊗d splits"] and f["splitting: equivalence"]

    def test_matrix_coring_equivalence(self):
        f = coseparable_shortcuts(CTX["row vectors M2"]).facts
        assert f["C coseparable"] and f["splitting: equivalence"]

    def test_dual_numbers_sweedler(self):
        # k -> k[x]/x^2 is free, so k-linear splittings exist and the shortcut applies
        from coring_galois.examples.extensions import sweedler_context

        ctx = sweedler_context(registry.dual_numbers_over_k())
        f = coseparable_shortcuts(ctx).facts
        assert f["C coseparable"] and f["left coaction of p⊗d splits"]
        assert f["splitting: equivalence"] == structure_report(ctx).equivalence is True

    @pytest.mark.parametrize("name", NAMES)
    def test_shortcut_agrees_with_the_full_report(self, name):
        ctx = CTX[name]
        short = coseparable_shortcuts(ctx).facts["splitting: equivalence"]
        if short is not None:
            assert short == structure_report(ctx).equivalence


class TestJoyal:
    def test_field_extension(self):
        rep = joyal_duality_check(CTX["sweedler Q(sqrt2)"])
        assert rep.ok and rep.facts["part (2) hypotheses"]

    def test_trivial(self):
        assert joyal_duality_check(CTX["trivial k"]).ok

    def test_non_split_descent(self):
        rep = joyal_duality_check(CTX["comatrix nonsplit"])
        assert not rep.ok and not rep.facts["H(eta) split epi of bimodules"]
