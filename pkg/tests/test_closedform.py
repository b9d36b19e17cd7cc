import pytest
from hypothesis import given, settings, strategies as st

from stategen.bracket import jones, kauffman_jones
from stategen.closedform import (
    Discrepancy,
    describe,
    diff_polys,
    kv_jones_closed,
    rt_jones_closed,
    rtv_f_closed,
)
from stategen.families import gen_rt, gen_rt_virtual
from stategen.laurent import from_t, parse, substitute_t
from stategen.recurrence import assemble, kv_pi, rt_pi, rtv_pi

P = parse


class TestRT:
    def test_n0_printed_extrapolates(self):
        r = rt_jones_closed(0)
        assert r.agrees
        assert substitute_t(r.value) == P("t + t^3 - t^4", "t")

    def test_printed_disagrees_from_n1(self):
        for n in (1, 2, 5):
            r = rt_jones_closed(n)
            assert not r.agrees
            d = r.discrepancy
            assert d.triples == diff_polys(r.oracle, r.value)
            assert all(want != got for _, want, got in d.triples)

    def test_printed_fails_derivative_check(self):
        # V'(1) = 0 holds for every knot; the printed form breaks it at n = 1
        v = substitute_t(rt_jones_closed(1, check=False).value)
        assert sum(e * c for e, c in v.items()) != 0

    def test_corrected_matches_recurrence(self):
        for n in range(11):
            r = rt_jones_closed(n, corrected=True)
            assert r.agrees and r.value == assemble(rt_pi(n))

    @pytest.mark.parametrize("n", [1, 2])
    def test_corrected_matches_brute_force(self, n):
        assert rt_jones_closed(n, check=False, corrected=True).value == jones(gen_rt(n)).a_form

    def test_negative(self):
        with pytest.raises(ValueError):
            rt_jones_closed(-1)


class TestRTV:
    def test_printed_fails_at_n0(self):
        r = rtv_f_closed(0)
        assert not r.agrees
        assert r.oracle == P("A^-4 + A^-6 - A^-10")

    def test_corrected_matches_recurrence(self):
        for n in range(11):
            r = rtv_f_closed(n, corrected=True)
            assert r.agrees and r.value == assemble(rtv_pi(n))

    def test_corrected_matches_brute_force(self):
        assert rtv_f_closed(1, check=False, corrected=True).value == kauffman_jones(gen_rt_virtual(1))


class TestKV:
    def test_not_a_polynomial(self):
        r = kv_jones_closed(1)
        assert r.value is None
        assert r.discrepancy is not None
        assert r.discrepancy.residual is not None
        assert "does not reduce" in r.discrepancy.reason
        # every oracle term is listed as missing
        assert {e for e, _, _ in r.discrepancy.triples} == set(assemble(kv_pi(1)).terms())

    def test_oracle_attached(self):
        assert kv_jones_closed(2).oracle == assemble(kv_pi(2))

    def test_n_at_least_one(self):
        with pytest.raises(ValueError):
            kv_jones_closed(0)


class TestReporting:
    def test_diff(self):
        assert diff_polys(P("A^2 + 3"), P("A^2 + 2 - A^-1")) == ((0, 3, 2), (-1, 0, -1))

    def test_render_and_dict(self):
        d = Discrepancy(((4, 1, 0),))
        assert d.render().splitlines() == ["value differs from recurrence", "  A^4: expected 1, got 0"]
        assert d.as_dict() == {
            "reason": "value differs from recurrence",
            "terms": [{"exponent": 4, "expected": 1, "actual": 0}],
        }

    def test_describe(self):
        assert describe(rt_jones_closed(0)) == "rt:0 closed form = A^-4 + A^-12 - A^-16"
        assert "expected" in describe(rt_jones_closed(1))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 12))
def test_rt_value_is_in_t(n):
    v = rt_jones_closed(n, check=False).value
    assert from_t(substitute_t(v)) == v
