import pytest

from stategen.bracket import class_tables, enumerate_pi, jones
from stategen.diagram import Diagram, components, parse_diagram, serialize, validate, writhe
from stategen.families import (
    DescriptorError,
    FamilyError,
    FamilySpec,
    MarkedEdgeMissing,
    UnsupportedMarking,
    braid_closure,
    build,
    gen_kv,
    gen_mstring,
    gen_rt,
    gen_rt_virtual,
    genus,
    kv_base_check,
    load_shipped,
    parse_descriptor,
)
from stategen.recurrence import KV_STEP_AS_PRINTED, kv_pi, rt_pi, rtv_pi

L0 = load_shipped("l0.lnk")


class TestRT:
    @pytest.mark.parametrize("n", range(0, 11))
    def test_shape(self, n):
        d = gen_rt(n)
        assert len(d.classical) == 4 * n + 3 and not d.virtual
        assert validate(d) == []
        assert len(components(d)) == 1
        assert genus(d) == 0

    @pytest.mark.parametrize("n", range(0, 4))
    def test_writhe(self, n):
        assert writhe(gen_rt(n)) == 4 * n + 3

    def test_base_is_shipped_trefoil(self):
        assert gen_rt(0) == load_shipped("rt0.lnk")

    def test_negative_n(self):
        with pytest.raises(ValueError):
            gen_rt(-1)


class TestRTV:
    @pytest.mark.parametrize("n", range(0, 11))
    def test_shape(self, n):
        d = gen_rt_virtual(n)
        assert len(d.classical) == 4 * n + 2 and len(d.virtual) == 1
        assert validate(d) == []
        assert len(components(d)) == 1

    @pytest.mark.parametrize("n", range(0, 4))
    def test_writhe(self, n):
        assert writhe(gen_rt_virtual(n)) == 4 * n + 2

    def test_only_x3_is_virtual(self):
        d = gen_rt_virtual(2)
        assert list(d.virtual) == ["x3"]
        restored = d.with_kinds({"x3": "c"})
        assert restored.crossings == gen_rt(2).crossings and restored.edges == gen_rt(2).edges


class TestKV:
    def test_base_oracle(self):
        assert kv_base_check() == (True, "ok")

    @pytest.mark.parametrize("n", range(0, 11))
    def test_shape(self, n):
        d = gen_kv(n)
        assert len(d.classical) == 4 * n + 6
        assert validate(d) == []
        assert len(components(d)) == 1

    @pytest.mark.parametrize("n", range(0, 4))
    def test_writhe(self, n):
        assert writhe(gen_kv(n)) == -4 * n - 6


def _flat(tables):
    return {(lab, i): p for lab, row in tables.items() for i, p in row.items() if p}


class TestBruteAgainstRecursion:
    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_rt_classes(self, n):
        assert _flat(class_tables("RT", n, gen_rt(n))) == _flat(rt_pi(n).tables)

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_rtv_classes(self, n):
        assert _flat(class_tables("RTV", n, gen_rt_virtual(n))) == _flat(rtv_pi(n).tables)

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_kv_classes(self, n):
        assert _flat(class_tables("KV", n, gen_kv(n))) == _flat(kv_pi(n).tables)

    def test_printed_kv_step_is_off(self):
        # the step with the self-coefficients as printed drifts at n=2
        brute = _flat(class_tables("KV", 2, gen_kv(2)))
        assert _flat(kv_pi(2, step=KV_STEP_AS_PRINTED).tables) != brute


class TestMString:
    @pytest.mark.parametrize("fam", ["AL", "TL"])
    @pytest.mark.parametrize("m", [2, 3])
    @pytest.mark.parametrize("n", [1, 2])
    def test_on_l0(self, fam, m, n):
        d = gen_mstring(FamilySpec(fam, n, L0, m))
        assert validate(d) == []
        assert len(d.classical) == len(L0.classical) + 2 * n * m
        assert genus(d) == 0
        assert parse_diagram(serialize(d)) == d
        if len(d.classical) <= 16:
            assert enumerate_pi(d).state_count() == 2 ** len(d.classical)

    def test_n0_is_base(self):
        d = gen_mstring(FamilySpec("AL", 0, L0, 2))
        assert d.crossings == L0.crossings and d.edges == L0.edges

    def test_al_differs_from_tl(self):
        al = build(FamilySpec("AL", 1, L0, 2))
        tl = build(FamilySpec("TL", 1, L0, 2))
        assert enumerate_pi(al) != enumerate_pi(tl)

    def test_unknot_base(self):
        base = braid_closure([1, 2], 3)
        assert len(base.classical) == 2 and len(base.parallel) == 3
        d = gen_mstring(FamilySpec("AL", 1, base, 2))
        assert len(d.classical) == 6
        assert validate(d) == []
        assert jones(base).t_form == jones(load_shipped("unknot0.lnk")).t_form

    def test_too_few_marked_edges(self):
        with pytest.raises(MarkedEdgeMissing):
            gen_mstring(FamilySpec("AL", 1, braid_closure([1], 2), 2))

    def test_marked_edge_not_in_base(self):
        bogus = ((L0.parallel[0][0], L0.parallel[1][1]),) + L0.parallel[1:]
        with pytest.raises(MarkedEdgeMissing):
            gen_mstring(FamilySpec("AL", 1, L0, 3, bogus))

    def test_reversed_order_unsupported(self):
        flipped = Diagram(L0.crossings, L0.edges, L0.free_loops, L0.orientation_hints,
                          L0.name, tuple(reversed(L0.parallel)))
        with pytest.raises(UnsupportedMarking):
            gen_mstring(FamilySpec("AL", 1, flipped, 3))

    def test_needs_base(self):
        with pytest.raises(FamilyError):
            gen_mstring(FamilySpec("AL", 1, None, 2))

    def test_m_at_least_two(self):
        with pytest.raises(ValueError):
            FamilySpec("TL", 1, L0, 1)


class TestDescriptors:
    def test_simple(self):
        spec = parse_descriptor("rt:3")
        assert (spec.family, spec.n) == ("RT", 3)
        assert build(spec) == gen_rt(3)

    def test_shipped_base(self):
        spec = parse_descriptor("al:2:1:@l0.lnk")
        assert (spec.family, spec.m, spec.n) == ("AL", 2, 1)
        assert spec.base == L0

    def test_file_base(self, tmp_path):
        path = tmp_path / "base.lnk"
        path.write_text(serialize(L0))
        assert parse_descriptor(f"tl:3:2:{path}").base == L0

    @pytest.mark.parametrize("bad", ["rt", "rt:x", "zz:1", "al:2:1", "kv:-1", "rt:1:2"])
    def test_bad(self, bad):
        with pytest.raises(DescriptorError):
            parse_descriptor(bad)
