import pytest
from hypothesis import given, settings, strategies as st

from stategen.bracket import enumerate_pi
from stategen.diagram import (
    Crossing,
    Diagram,
    DiagramSyntaxError,
    DuplicateCrossing,
    SlotRef,
    UnknownCrossing,
    ValidationError,
    components,
    crossing_signs,
    load_diagram,
    parse_diagram,
    require_valid,
    serialize,
    validate,
    writhe,
)
from stategen.families import braid_closure, data_path, gen_kv, gen_rt, gen_rt_virtual, load_shipped
from stategen.laurent import parse

TREFOIL = data_path("rt0.lnk")


def test_parse_shipped_trefoil():
    d = load_diagram(TREFOIL)
    assert len(d.classical) == 3 and not d.virtual
    assert len(d.edges) == 6
    pi = enumerate_pi(d)
    assert pi.table == {1: parse("3*A"), 2: parse("3*A^-1 + A^3"), 3: parse("A^-3")}


def test_free_loop_only():
    d = parse_diagram("loops: 1")
    assert d.free_loops == 1 and not d.crossings
    assert len(components(d)) == 1


def test_two_free_loops():
    assert len(components(parse_diagram("loops: 2"))) == 2


def test_comments_and_header():
    d = parse_diagram("# a comment\nlink K  # trailing\ncrossing x1 c\nedge x1.0 x1.1\nedge x1.2 x1.3\n")
    assert d.name == "K"
    assert validate(d) == []


def test_double_slot_is_invalid():
    text = "crossing x1 c\nedge x1.0 x1.1\nedge x1.0 x1.2\nedge x1.3 x1.2"
    d = parse_diagram(text)
    report = validate(d)
    assert any("x1.0" in line for line in report)
    with pytest.raises(ValidationError):
        require_valid(d)


def test_uncovered_slot_reported():
    text = "crossing x1 c\ncrossing x2 c\nedge x1.0 x2.1\nedge x1.1 x2.0\nedge x1.2 x1.3\nedge x2.2 x2.1"
    report = validate(parse_diagram(text))
    assert any("x2.3" in line and "uncovered" in line for line in report)


def test_self_paired_slot_reported():
    text = "crossing x1 c\nedge x1.0 x1.0\nedge x1.1 x1.2\nedge x1.3 x1.2"
    report = validate(parse_diagram(text))
    assert any("x1.0" in line for line in report)


@pytest.mark.parametrize("text,exc,line", [
    ("crossing x1 q", DiagramSyntaxError, 1),
    ("crossing x1 c\ncrossing x1 c", DuplicateCrossing, 2),
    ("crossing x1 c\nedge x1.0 x2.0", UnknownCrossing, 2),
    ("crossing x1 c\nedge x1.4 x1.0", DiagramSyntaxError, 2),
    ("crossing x1 c\nfrobnicate", DiagramSyntaxError, 2),
])
def test_syntax_errors_name_the_line(text, exc, line):
    with pytest.raises(exc) as info:
        parse_diagram(text)
    assert f"line {line}" in str(info.value)


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        load_diagram("/nonexistent/missing.lnk")


class TestComponents:
    def test_trefoil_is_a_knot(self):
        assert len(components(load_diagram(TREFOIL))) == 1

    def test_virtual_pass_through(self):
        assert len(components(gen_rt_virtual(0))) == 1

    def test_hopf_link(self):
        assert len(components(braid_closure([1, 1], 2))) == 2

    def test_partition(self):
        d = gen_kv(1)
        seen = [s for comp in components(d).components for pair in comp for s in pair]
        assert sorted(seen) == sorted(SlotRef(c, k) for c in d.names for k in range(4))


class TestWrithe:
    def test_trefoil_calibration(self):
        assert writhe(load_diagram(TREFOIL)) == 3

    def test_rt1(self):
        assert writhe(gen_rt(1)) == 7

    def test_kv1(self):
        assert writhe(gen_kv(1)) == -10

    def test_virtual_crossing_ignored(self):
        d = gen_rt_virtual(0)
        assert "x3" not in crossing_signs(d)
        assert writhe(d) == 2

    def test_all_virtual_is_zero(self):
        d = load_diagram(TREFOIL)
        assert writhe(d.with_kinds({n: "v" for n in d.names})) == 0

    def test_mirror_negates(self):
        d = gen_rt(1)
        assert writhe(d.mirror()) == -writhe(d)

    def _reversed(self, d: Diagram, which=None) -> Diagram:
        partner = d.partner_map()
        starts = [comp[0][0] for comp in components(d).components]
        hints = [partner[s] if which is None or k in which else s for k, s in enumerate(starts)]
        return Diagram(d.crossings, d.edges, d.free_loops, tuple(hints), d.name, d.parallel)

    def test_reversing_a_knot(self):
        for d in (gen_rt(1), gen_kv(1)):
            assert writhe(self._reversed(d)) == writhe(d)

    def test_reversing_all_link_components(self):
        hopf = braid_closure([1, 1], 2)
        assert writhe(self._reversed(hopf)) == writhe(hopf)
        # reversing one component changes every mixed crossing
        assert writhe(self._reversed(hopf, which={0})) == -writhe(hopf)


class TestSerialize:
    def test_trefoil_round_trip(self):
        d = load_diagram(TREFOIL)
        assert parse_diagram(serialize(d)) == d

    def test_rt1_reparses_valid(self):
        d = parse_diagram(serialize(gen_rt(1)))
        assert validate(d) == []
        assert d == gen_rt(1)

    def test_free_loop_file(self):
        assert serialize(load_shipped("unknot0.lnk")).splitlines() == ["link U", "loops: 1"]

    def test_parallel_directive_survives(self):
        d = load_shipped("l0.lnk")
        assert parse_diagram(serialize(d)).parallel == d.parallel


@st.composite
def random_diagrams(draw):
    n = draw(st.integers(1, 6))
    names = [f"x{i}" for i in range(1, n + 1)]
    slots = [SlotRef(c, k) for c in names for k in range(4)]
    order = draw(st.permutations(slots))
    edges = [(order[2 * i], order[2 * i + 1]) for i in range(2 * n)]
    kinds = draw(st.lists(st.sampled_from("cv"), min_size=n, max_size=n))
    loops = draw(st.integers(0, 2))
    return Diagram.build([Crossing(c, k) for c, k in zip(names, kinds)], edges, loops)


@settings(max_examples=150, deadline=None)
@given(random_diagrams())
def test_random_diagram_properties(d):
    assert validate(d) == []
    assert parse_diagram(serialize(d)) == d
    comps = components(d)
    seen = [s for comp in comps.components for pair in comp for s in pair]
    assert len(seen) == len(set(seen)) == 4 * len(d.names)
    assert writhe(d.with_kinds({c: "v" for c in d.names})) == 0
