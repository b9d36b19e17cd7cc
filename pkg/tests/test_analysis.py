import pytest
from hypothesis import given, strategies as st

from stategen import golden
from stategen.analysis import (
    CERTIFIED,
    INCONCLUSIVE,
    alternating_certificate,
    breadth_t,
    kv_breadth_bound,
    kv_degree_bound_check,
)
from stategen.laurent import LaurentPoly, ZERO, ZeroPolynomial, degree_bounds, parse, substitute_t
from stategen.recurrence import assemble, kv_pi

T = lambda s: parse(s, "t")  # noqa: E731


class TestBreadth:
    def test_trefoil(self):
        assert breadth_t(T(golden.RT0_JONES_T)) == 3

    def test_kv1(self):
        v = T(golden.KV1_JONES_T)
        assert (v.max_exp, v.min_exp) == (-4, -13)
        assert breadth_t(v) == 9

    def test_monomial(self):
        assert breadth_t(T("t^5")) == 0

    def test_zero(self):
        with pytest.raises(ZeroPolynomial):
            breadth_t(ZERO)

    @given(st.dictionaries(st.integers(-20, 20), st.integers(-9, 9), min_size=1).map(LaurentPoly).filter(bool),
           st.integers(-50, 50))
    def test_translation_invariant(self, v, k):
        assert breadth_t(v.shift(k)) == breadth_t(v)


class TestCertificate:
    def test_kv1(self):
        verdict = alternating_certificate(10, T(golden.KV1_JONES_T))
        assert verdict.certified and verdict.verdict == CERTIFIED
        assert (verdict.crossing_count, verdict.breadth_t) == (10, 9)

    def test_trefoil_is_inconclusive(self):
        verdict = alternating_certificate(3, T(golden.RT0_JONES_T))
        assert verdict.verdict == INCONCLUSIVE

    def test_unasserted_hypothesis(self):
        verdict = alternating_certificate(10, T(golden.KV1_JONES_T), connected_irreducible=False)
        assert verdict.verdict == INCONCLUSIVE

    def test_rendering(self):
        verdict = alternating_certificate(10, T(golden.KV1_JONES_T))
        assert verdict.summary() == "certified-non-alternating: breadth 9 < 10 crossings"
        assert verdict.as_dict() == {
            "crossing_count": 10,
            "breadth_t": 9,
            "verdict": CERTIFIED,
            "rationale": "breadth 9 < 10 crossings",
        }

    @given(st.integers(0, 40), st.integers(0, 40), st.integers(-10, 10))
    def test_verdict_depends_only_on_counts(self, count, br, shift):
        v = LaurentPoly({shift: 1, shift + br: -1}) if br else LaurentPoly({shift: 1})
        verdict = alternating_certificate(count, v)
        assert verdict.breadth_t == br
        assert verdict.certified == (br < count)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_kv_family(self, n):
        v = substitute_t(assemble(kv_pi(n)))
        assert breadth_t(v) <= kv_breadth_bound(n) < 4 * n + 6
        assert alternating_certificate(4 * n + 6, v).certified


class TestDegreeBounds:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_computed(self, n):
        r = kv_degree_bound_check(n)
        assert r.ok, r.violations
        assert (r.upper, r.lower) == (8 * n + 14, -4 * n - 10)
        assert r.entries

    def test_extremes_attained_at_n1(self):
        r = kv_degree_bound_check(1)
        assert max(h for _, h, _ in r.entries) == 22
        assert min(l for _, _, l in r.entries) == -14

    def test_printed_products(self):
        for text in golden.KV1_FOLDED.values():
            b = degree_bounds(parse(text))
            assert b.rho_h <= 22 and b.rho_l >= -14

    def test_n_at_least_one(self):
        with pytest.raises(ValueError):
            kv_degree_bound_check(0)
