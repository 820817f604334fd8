from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from tpkit.exact import Poly, SeriesPrefix, exp_series, pole_power_series, series_product
from tpkit.tpcheck import tp_infty_finite_decide
from tpkit.genfun import ASWEParams, CoeffSeq, expand_aswe, expand_e1, lemma_l1_sequences, partial_theta
from tpkit.preserver import (
    EVIDENCE_ONLY,
    NOT_PRESERVER,
    PRESERVER,
    QuadSurd,
    conjecture_scan,
    critical_points,
    decide_finite_preserver,
    decide_meromorphic_preserver,
    h2n3_coefficient,
    hadamard,
    l1_battery,
    l1_battery_grid,
    lemma2_poly,
    lemma2_Q,
    partial_fractions_single_pole,
    s7_inequalities,
    tt2_witness,
    verify_h2n3,
    verify_partial_fractions,
)

from conftest import positive_rationals

F = Fraction
x = sympy.Symbol("x")


def sympy_real_rooted(coeffs):
    """Independent oracle: sympy counts real roots with multiplicity."""
    p = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x)
    return len(sympy.real_roots(p)) == p.degree()


def extracted_h_coefficient(n, Bs, beta, gamma, delta, index):
    """Coefficient of z^index in (A * F)(z) e^(-gamma beta z) (1 - delta beta z)^n by series arithmetic."""
    order = index + 1
    A = [F(0)] * order
    for j, B in enumerate(Bs):
        term = pole_power_series(beta, n - j, order)
        for i in range(order):
            A[i] += (-1) ** j * B * term[i]
    Fseries = series_product(exp_series(gamma, order), pole_power_series(delta, 1, order))
    AF = SeriesPrefix(tuple(a * f for a, f in zip(A, Fseries.coeffs)), order)
    back = series_product(AF, exp_series(-gamma * beta, order))
    back = series_product(back, SeriesPrefix.from_poly(Poly([1, -delta * beta]) ** n, order))
    return back[index]


class TestHadamard:
    def test_all_ones_is_identity(self):
        b = expand_aswe(ASWEParams(gamma=2, alphas=(1,)), 10)
        assert hadamard(CoeffSeq.user([1] * 10), b).coeffs == b.coeffs

    @given(positive_rationals(), positive_rationals())
    def test_geometric_rescales(self, C, beta):
        N = 10
        a = expand_aswe(ASWEParams(C=C, betas=(beta,)), N)
        b = expand_aswe(ASWEParams(gamma=1, betas=(F(1, 2),)), N)
        assert hadamard(a, b).coeffs == tuple(C * beta**k * b[k] for k in range(N))

    def test_counterexample_prefix(self):
        b = expand_aswe(ASWEParams(C=F(1, 2), betas=(1, F(1, 2))), 6)
        kb = hadamard(lemma_l1_sequences(2, 0, 0, 6)[1], b)
        assert kb.coeffs[:5] == (0, F(3, 4), F(7, 4), F(45, 16), F(31, 8))

    def test_exact_factor_does_not_truncate(self):
        image = hadamard(CoeffSeq.user([1, 2, 1], exact_tail=True), CoeffSeq.user([1] * 10))
        assert image.N == 10 and image.exact_tail
        assert image.coeffs[:4] == (1, 2, 1, 0)

    def test_commutative(self):
        a, b = expand_e1([4] * 6, 8), partial_theta(3, 8)
        assert hadamard(a, b).coeffs == hadamard(b, a).coeffs


class TestFiniteDecision:
    @pytest.mark.parametrize("coeffs", [[3], [1, 5], [0, 0, 2, 7]])
    def test_short_supports(self, coeffs):
        v = decide_finite_preserver(CoeffSeq.user(coeffs, exact_tail=True))
        assert v.decision == PRESERVER and v.basis == "trivial_short"

    def test_binomial(self):
        v = decide_finite_preserver(CoeffSeq.user([1, 2, 1], exact_tail=True))
        assert (v.decision, v.basis) == (PRESERVER, "statement1")

    def test_quadratic_with_complex_zeros(self):
        v = decide_finite_preserver(CoeffSeq.user([1, 1, 1], exact_tail=True))
        assert v.decision == NOT_PRESERVER

    def test_e1_cubic_is_a_preserver(self):
        # x + x^2/4 + x^3/64 = x (1 + x/8)^2: both cubics are real-rooted
        v = decide_finite_preserver(CoeffSeq.user([1, 1, F(1, 4), F(1, 64)], exact_tail=True))
        assert (v.decision, v.basis) == (PRESERVER, "theorem2")
        assert [d.name for d in v.details] == ["tail_from_0", "tail_from_1"]

    def test_failing_tail(self):
        v = decide_finite_preserver(CoeffSeq.user([1, 1, F(1, 4), F(1, 32)], exact_tail=True))
        assert v.decision == NOT_PRESERVER
        assert [d.report.all_real for d in v.details] == [False, False]

    def test_head_real_rooted_but_tail_not(self):
        # (1 + x)^3 is real-rooted, 3x + 3x^2 + x^3 is not
        coeffs = [1, 3, 3, 1]
        v = decide_finite_preserver(CoeffSeq.user(coeffs, exact_tail=True))
        assert sympy_real_rooted([F(c) for c in coeffs])
        assert not sympy_real_rooted([F(c) for c in [0, 3, 3, 1]])
        assert v.decision == NOT_PRESERVER
        assert [d.report.all_real for d in v.details] == [True, False]

    def test_quintic_support(self):
        v = decide_finite_preserver(CoeffSeq.user(expand_e1([5, 5, 5], 5).coeffs, exact_tail=True))
        assert (v.decision, v.basis) == (PRESERVER, "theorem3")
        assert len(v.details) == 3

    def test_binomial_quartic_is_not(self):
        v = decide_finite_preserver(CoeffSeq.user([1, 4, 6, 4, 1], exact_tail=True))
        assert (v.decision, v.basis) == (NOT_PRESERVER, "theorem3")

    def test_long_support_is_evidence(self):
        v = decide_finite_preserver(CoeffSeq.user([1, 5, 10, 10, 5, 1], exact_tail=True))
        assert (v.decision, v.basis) == (EVIDENCE_ONLY, "conjecture_scan")

    def test_interior_zero(self):
        assert decide_finite_preserver(CoeffSeq.user([1, 0, 1], exact_tail=True)).decision == NOT_PRESERVER

    def test_needs_exact_tail(self):
        with pytest.raises(ValueError):
            decide_finite_preserver(CoeffSeq.user([1, 2, 1]))

    @given(st.lists(st.builds(F, st.integers(1, 12), st.integers(1, 6)), min_size=3, max_size=5))
    def test_agrees_with_independent_root_counts(self, coeffs):
        L = len(coeffs)
        starts = [0] if L == 3 else range(L - 2)
        expected = all(sympy_real_rooted([F(0)] * j + coeffs[j:]) for j in starts)
        v = decide_finite_preserver(CoeffSeq.user(coeffs, exact_tail=True))
        assert (v.decision == PRESERVER) == expected


class TestMeromorphic:
    def test_simple_pole(self):
        assert decide_meromorphic_preserver(ASWEParams(C=2, betas=(F(1, 3),))).decision == PRESERVER

    @pytest.mark.parametrize(
        "params,clause",
        [
            (ASWEParams(betas=(F(1, 3), F(1, 3))), "single_simple_pole"),
            (ASWEParams(gamma=1, betas=(1,)), "no_exponential_factor"),
            (ASWEParams(alphas=(1,), betas=(1,)), "no_zeros"),
            (ASWEParams(q=1, betas=(1,)), "no_shift"),
            (ASWEParams(C=0, betas=(1,)), "C_positive"),
        ],
    )
    def test_rejections(self, params, clause):
        v = decide_meromorphic_preserver(params)
        assert v.decision == NOT_PRESERVER and clause in v.explanation

    def test_needs_a_pole(self):
        with pytest.raises(ValueError):
            decide_meromorphic_preserver(ASWEParams(gamma=1))


class TestPartialFractions:
    def test_constant(self):
        assert partial_fractions_single_pole(Poly([1]), 1, 3) == [1, 0, 0]

    def test_linear(self):
        assert partial_fractions_single_pole(Poly([1, 1]), 1, 3) == [2, 1, 0]

    def test_rejects_high_degree(self):
        with pytest.raises(ValueError):
            partial_fractions_single_pole(Poly([1, 1, 1]), 1, 2)

    @given(st.lists(positive_rationals(), min_size=1, max_size=4), positive_rationals(), st.integers(0, 2))
    def test_reconstruction(self, coeffs, beta, extra):
        P = Poly(coeffs)
        n = P.degree + 1 + extra
        res = verify_partial_fractions(P, beta, n)
        assert res["match"]
        # positive coefficients make every derivative positive at 1/beta
        assert all(B > 0 for B in res["B"][: P.degree + 1])


class TestLemma2:
    def test_k2_closed_form(self):
        b, g, d = F(2), F(3), F(5, 7)
        expected = Poly([0, g * b]) * Poly([1, -d * b]) + Poly([1, -d * b]) + Poly([0, d * b])
        assert lemma2_poly(2, b, g, d) == expected
        assert lemma2_poly(2, b, g, d)(0) == 1

    def test_k1_is_constant(self):
        assert lemma2_poly(1, F(2), F(3), F(1, 2)) == Poly([1])

    @given(st.integers(2, 5), positive_rationals(), positive_rationals(), positive_rationals())
    def test_identity_and_degree(self, k, beta, gamma, delta):
        res = lemma2_Q(k, beta, gamma, delta)
        assert res.Q.degree <= 2 * k - 2
        assert res.to_json()["match"] is True

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            lemma2_Q(2, 0, 1, 1)


class TestH2n3:
    def test_sign_for_large_gamma(self):
        h = h2n3_coefficient(3, 1, 1, 1, 100, F(1, 100))
        assert h == -100

    def test_vanishing_factor(self):
        # B0 gamma - B0 delta + B1 delta = 0
        B0, gamma, delta = F(1), F(1, 2), F(1)
        B1 = (B0 * delta - B0 * gamma) / delta
        assert h2n3_coefficient(3, B0, B1, 1, gamma, delta) == 0

    @pytest.mark.parametrize("n", [3, 5])
    @given(data=st.data())
    def test_closed_form_matches_series_extraction(self, n, data):
        Bs = data.draw(st.lists(positive_rationals(9, 5), min_size=n, max_size=n))
        beta, gamma, delta = (data.draw(positive_rationals(9, 5)) for _ in range(3))
        closed = h2n3_coefficient(n, Bs[0], Bs[1], beta, gamma, delta)
        assert closed == extracted_h_coefficient(n, Bs, beta, gamma, delta, 2 * n - 3)
        assert verify_h2n3(n, Bs, beta, gamma, delta)["match"]

    def test_frozen_n5_value(self):
        Bs = [1, 1, F(7, 3), 2, 5]
        assert extracted_h_coefficient(5, Bs, 1, 100, F(1, 100), 7) == h2n3_coefficient(5, 1, 1, 1, 100, F(1, 100))

    def test_rejects_even_n(self):
        with pytest.raises(ValueError):
            h2n3_coefficient(4, 1, 1, 1, 1, 1)


class TestSurds:
    @given(st.builds(F, st.integers(-30, 30), st.integers(1, 9)),
           st.builds(F, st.integers(-30, 30), st.integers(1, 9)),
           st.builds(F, st.integers(0, 30), st.integers(1, 9)))
    def test_sign_matches_high_precision(self, r, s, D):
        v = QuadSurd(r, s, D)
        exact = sympy.Rational(r.numerator, r.denominator) + sympy.Rational(s.numerator, s.denominator) * sympy.sqrt(
            sympy.Rational(D.numerator, D.denominator))
        assert v.sign() == sympy.sign(sympy.nsimplify(exact))

    def test_product(self):
        a = QuadSurd(1, 1, 2)
        assert (a * a).r == 3 and (a * a).s == 2

    def test_boundary_critical_points(self):
        al1, al2 = critical_points(4)
        assert al1.rational_value() == F(-2, 3)
        assert al2.rational_value() == -2
        assert (al1 / 4).rational_value() == F(-1, 6)


class TestTT2Witness:
    def test_boundary(self):
        w = tt2_witness(4, 4, 1, 1)
        assert w.all_flags

    def test_degenerate_q(self):
        # with q2 = q3 = 1 the shifted cubic coincides with F
        w = tt2_witness(10, 5, 1, 1)
        assert w.values["Fq_alpha2"] == w.values["F_alpha2"]
        assert w.values["Fq_alpha1_scaled"] == w.values["F_alpha1"]

    @given(
        st.builds(F, st.integers(1, 400), st.integers(1, 20)),
        st.builds(F, st.integers(0, 60), st.integers(1, 10)),
        st.builds(F, st.integers(0, 30), st.integers(1, 10)),
        st.builds(F, st.integers(0, 30), st.integers(1, 10)),
    )
    def test_flags_hold_when_preconditions_do(self, a, db, dq2, dq3):
        b, q2, q3 = 4 + db, 1 + dq2, 1 + dq3
        try:
            w = tt2_witness(a, b, q2, q3)
        except ValueError:
            return
        assert w.all_flags, w.flags

    @pytest.mark.parametrize("args", [(0, 5, 1, 1), (1, 3, 1, 1), (1, 4, 1, 1), (10, 5, F(1, 2), 1)])
    def test_preconditions(self, args):
        with pytest.raises(ValueError):
            tt2_witness(*args)


class TestS7:
    def test_binomial_cube(self):
        q2, q3, flags = s7_inequalities([1, 3, 3, 1])
        assert (q2, q3) == (3, 3) and all(flags)

    def test_e1(self):
        q2, q3, flags = s7_inequalities([1, 1, F(1, 4), F(1, 64)])
        assert (q2, q3) == (4, 4) and all(flags)

    def test_not_log_concave(self):
        q2, _, flags = s7_inequalities([1, 1, 2, 4])
        assert q2 == F(1, 2) and not flags[0]

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            s7_inequalities([1, 0, 1, 1])


class TestBatteries:
    def test_all_ones_passes(self):
        reports = l1_battery(CoeffSeq.user([1] * 16), m=3, R=10, C=10)
        assert [i for i, _ in reports] == list(range(1, 8))
        assert not any(r.violated for _, r in reports)

    def test_geometric_passes(self):
        a = expand_aswe(ASWEParams(betas=(F(1, 2),)), 16)
        assert not any(r.violated for _, r in l1_battery(a, m=3, R=10, C=10))

    def test_non_preserver_is_flagged(self):
        a = CoeffSeq.user([1, 1, 1], exact_tail=True)
        assert any(r.violated for _, r in l1_battery(a, m=3, R=8, C=8))

    def test_grid_names(self):
        names = [n for n, _ in l1_battery_grid(CoeffSeq.user([1, 2, 1], exact_tail=True), m=2, R=6, C=6)]
        assert len(names) == 12 and names[0] == "family1" and names[-1] == "family7[n=2]"


class TestConjectureScan:
    def test_e1_remainders(self):
        v = conjecture_scan(expand_e1([4] * 5, 7), 2, [2, 3, 4])
        assert v.decision == EVIDENCE_ONLY
        assert all(d.report["hutchinson"] for d in v.details)

    def test_ones_fail(self):
        v = conjecture_scan(CoeffSeq.user([1] * 10), 2, [2, 3])
        assert not any(d.report["real_rooted"] for d in v.details)

    def test_partial_theta(self):
        v = conjecture_scan(partial_theta(2, 8), 2, [2, 3])
        assert all(d.report["min_ratio"] == 4 for d in v.details)

    def test_short_prefix_is_skipped(self):
        v = conjecture_scan(CoeffSeq.user([1, 1, 1]), 1, [2])
        assert "skipped" in v.details[1].report


def test_delayed_step_image_exposes_a_failing_tail():
    # x + x^2/4 + x^3/32 has complex zeros, so the delayed-step image is not TP-infinity
    a = CoeffSeq.user([1, 1, F(1, 4), F(1, 32)], exact_tail=True)
    image = hadamard(a, lemma_l1_sequences(2, 0, 0, 16)[6])
    rep = tp_infty_finite_decide(image)
    assert rep.violated and rep.witness is not None and rep.witness.value < 0
    assert decide_finite_preserver(a).decision == NOT_PRESERVER
