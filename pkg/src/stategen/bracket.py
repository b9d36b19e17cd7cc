"""Brute-force state sums: loop counts, p-tables, bracket, Jones and f-polynomial.

A state picks a marker (``A`` or ``A^-1``) at every classical crossing.  The
smoothing at slot level is:

* marker A pairs slots {0,3} and {1,2};
* marker A^-1 pairs slots {0,1} and {2,3};
* a virtual crossing passes straight through, pairing {0,2} and {1,3}.

Full enumeration runs in numpy batches.  For a batch of states the slot map
``x -> crossing_pair(edge_partner(x))`` is a permutation whose cycles come in
pairs (one per direction of travel around each loop), so the loop count is
half the cycle count.  Cycles are counted by pointer doubling on the minimum
label.  ``loop_count`` keeps a plain union-find path for single states, and
the two are cross-checked in the tests.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .diagram import Diagram, require_valid, writhe
from .laurent import (
    LaurentPoly,
    NotAPowerOfT,
    ZERO,
    loop_value,
    render,
    render_t,
    substitute_t,
)

__all__ = [
    "A_MARK",
    "AINV_MARK",
    "BracketError",
    "IncompleteState",
    "TooLarge",
    "VirtualCrossingPresent",
    "NotInFamily",
    "State",
    "StateMeasure",
    "PiVector",
    "JonesValue",
    "DEFAULT_CAP",
    "loop_count",
    "measure",
    "iter_states",
    "enumerate_pi",
    "enumerate_states",
    "bracket",
    "jones",
    "kauffman_jones",
    "classify_state",
    "child_pattern",
    "CHILD_PATTERNS",
    "Transition",
    "transitions",
    "class_tables",
    "report",
]

A_MARK = "A"
AINV_MARK = "A-"
DEFAULT_CAP = 30


class BracketError(Exception):
    pass


class IncompleteState(BracketError):
    pass


class TooLarge(BracketError):
    def __init__(self, count: int, cap: int):
        super().__init__(
            f"{count} classical crossings exceeds the enumeration cap {cap}; "
            "use the recurrence for family diagrams or raise --cap"
        )
        self.count = count
        self.cap = cap


class VirtualCrossingPresent(BracketError):
    pass


class NotInFamily(BracketError):
    pass


@dataclass(frozen=True)
class State:
    """Markers on the classical crossings, keyed by crossing name."""

    assignment: tuple[tuple[str, str], ...]

    @classmethod
    def of(cls, mapping: Mapping[str, str]) -> "State":
        for m in mapping.values():
            if m not in (A_MARK, AINV_MARK):
                raise ValueError(f"bad marker {m!r}")
        return cls(tuple(sorted(mapping.items())))

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignment)

    def __getitem__(self, name: str) -> str:
        return self.as_dict()[name]


@dataclass(frozen=True)
class StateMeasure:
    c: int
    b: int
    l: int

    @property
    def a(self) -> int:
        return self.c - self.b

    @property
    def weight(self) -> LaurentPoly:
        return LaurentPoly.monomial(self.a - self.b)


class PiVector:
    """Loop count -> p_i table; missing entries are zero."""

    __slots__ = ("table",)

    def __init__(self, table: Mapping[int, LaurentPoly] | None = None):
        self.table = {i: p for i, p in sorted((table or {}).items()) if p}

    def __getitem__(self, i: int) -> LaurentPoly:
        return self.table.get(i, ZERO)

    def __eq__(self, other):
        if isinstance(other, Mapping):
            other = PiVector(other)
        return isinstance(other, PiVector) and self.table == other.table

    def __add__(self, other: "PiVector") -> "PiVector":
        out = dict(self.table)
        for i, p in other.table.items():
            out[i] = out.get(i, ZERO) + p
        return PiVector(out)

    def __iter__(self):
        return iter(self.table.items())

    def __repr__(self):
        inner = ", ".join(f"{i}: {render(p)}" for i, p in self.table.items())
        return f"PiVector({{{inner}}})"

    def state_count(self) -> int:
        return sum(p.at_one() for p in self.table.values())

    def as_dict(self) -> dict:
        return {str(i): render(p) for i, p in self.table.items()}


# -- compilation --------------------------------------------------------------


class _Compiled:
    def __init__(self, d: Diagram):
        self.names = [c.name for c in d.crossings]
        index = {n: k for k, n in enumerate(self.names)}
        self.classical = [c.name for c in d.crossings if not c.is_virtual]
        self.virtual_index = [index[c.name] for c in d.crossings if c.is_virtual]
        self.classical_index = [index[n] for n in self.classical]
        n_slots = 4 * len(self.names)
        partner = np.full(n_slots, -1, dtype=np.int64)
        for a, b in d.edges:
            ia = 4 * index[a.crossing] + a.slot
            ib = 4 * index[b.crossing] + b.slot
            partner[ia] = ib
            partner[ib] = ia
        self.partner = partner
        self.n_slots = n_slots
        self.free_loops = d.free_loops


def _uf_find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def loop_count(d: Diagram, s: State | Mapping[str, str]) -> int:
    """Number of loops in the state graph of ``s`` (union-find over slots)."""
    marks = s.as_dict() if isinstance(s, State) else dict(s)
    comp = _Compiled(d)
    missing = [n for n in comp.classical if n not in marks]
    if missing:
        raise IncompleteState(f"no marker for crossing(s) {', '.join(missing)}")
    extra = [n for n in marks if n not in comp.classical]
    if extra:
        raise IncompleteState(f"marker given for non-classical crossing(s) {', '.join(extra)}")
    parent = list(range(comp.n_slots))

    def union(x: int, y: int) -> None:
        rx, ry = _uf_find(parent, x), _uf_find(parent, y)
        if rx != ry:
            parent[rx] = ry

    for x in range(comp.n_slots):
        union(x, int(comp.partner[x]))
    for k, name in enumerate(comp.names):
        base = 4 * k
        if k in comp.virtual_index:
            pairs = ((0, 2), (1, 3))
        elif marks[name] == A_MARK:
            pairs = ((0, 3), (1, 2))
        else:
            pairs = ((0, 1), (2, 3))
        for u, v in pairs:
            union(base + u, base + v)
    roots = {_uf_find(parent, x) for x in range(comp.n_slots)}
    return len(roots) + comp.free_loops


def measure(d: Diagram, s: State | Mapping[str, str]) -> StateMeasure:
    marks = s.as_dict() if isinstance(s, State) else dict(s)
    c = len(d.classical)
    b = sum(1 for m in marks.values() if m == AINV_MARK)
    return StateMeasure(c, b, loop_count(d, marks))


def iter_states(d: Diagram) -> Iterable[State]:
    """Binary counter over classical crossings sorted by name; bit set = A^-1."""
    names = list(d.classical)
    for code in range(1 << len(names)):
        yield State(tuple((n, AINV_MARK if code >> k & 1 else A_MARK) for k, n in enumerate(names)))


# -- batched enumeration --------------------------------------------------------


def _slot_tables(comp: _Compiled):
    n = comp.n_slots
    itype = np.int16 if n < (1 << 15) else np.int32
    slots = np.arange(n)
    local = slots % 4
    owner = slots // 4
    bitpos = np.full(len(comp.names), -1, dtype=np.int64)
    for k, idx in enumerate(comp.classical_index):
        bitpos[idx] = k
    slot_bit = bitpos[owner]
    is_virtual = slot_bit < 0
    # slot -> slot after the crossing split, for marker A and A^-1
    pair_a = np.where(is_virtual, owner * 4 + (local ^ 2), owner * 4 + (3 - local))
    pair_ainv = np.where(is_virtual, pair_a, owner * 4 + (local ^ 1))
    # follow the edge first, then the split at the far crossing
    far = comp.partner
    return (
        itype,
        slots.astype(itype),
        pair_a[far].astype(itype),
        pair_ainv[far].astype(itype),
        np.where(is_virtual, 0, slot_bit)[far],
        is_virtual[far],
    )


def _loops_batch(comp: _Compiled, codes: np.ndarray, tables=None) -> np.ndarray:
    n = comp.n_slots
    if n == 0:
        return np.full(codes.shape, comp.free_loops, dtype=np.int64)
    itype, slots, via_a, via_ainv, bit, virt = tables or _slot_tables(comp)
    bits = ((codes[:, None] >> bit[None, :]) & 1).astype(bool) & ~virt[None, :]
    perm = np.where(bits, via_ainv[None, :], via_a[None, :])
    label = np.broadcast_to(slots, perm.shape).copy()
    # After round r, label[x] is the minimum over 2^r steps from x.  A round
    # that changes nothing means every label already equals its cycle minimum.
    for _ in range(max(1, math.ceil(math.log2(n)) + 1)):
        nxt = np.minimum(label, np.take_along_axis(label, perm, axis=1))
        if np.array_equal(nxt, label):
            break
        label = nxt
        perm = np.take_along_axis(perm, perm, axis=1)
    cycles = (label == slots[None, :]).sum(axis=1)
    return cycles // 2 + comp.free_loops


def _popcount(codes: np.ndarray, width: int) -> np.ndarray:
    out = np.zeros(codes.shape, dtype=np.int64)
    for k in range(width):
        out += (codes >> k) & 1
    return out


_BATCH_SLOTS = 1 << 17  # slot entries per numpy batch; keeps the work arrays in cache


def _count_range(d: Diagram, start: int, stop: int) -> dict[tuple[int, int], int]:
    """Histogram of (loops, number of A^-1 markers) over state codes [start, stop)."""
    comp = _Compiled(d)
    c = len(comp.classical)
    tables = _slot_tables(comp) if comp.n_slots else None
    batch = max(1, _BATCH_SLOTS // max(1, comp.n_slots))
    hist: dict[tuple[int, int], int] = {}
    pos = start
    while pos < stop:
        end = min(stop, pos + batch)
        codes = np.arange(pos, end, dtype=np.int64)
        loops = _loops_batch(comp, codes, tables)
        b = _popcount(codes, c)
        key = loops * (c + 1) + b
        vals, counts = np.unique(key, return_counts=True)
        for v, k in zip(vals.tolist(), counts.tolist()):
            pair = (v // (c + 1), v % (c + 1))
            hist[pair] = hist.get(pair, 0) + k
        pos = end
    return hist


def _hist_to_pi(hist: Mapping[tuple[int, int], int], c: int) -> PiVector:
    table: dict[int, dict[int, int]] = {}
    for (loops, b), k in hist.items():
        row = table.setdefault(loops, {})
        row[c - 2 * b] = row.get(c - 2 * b, 0) + k
    return PiVector({i: LaurentPoly(row) for i, row in table.items()})


def _worker(args):
    text, start, stop = args
    from .diagram import parse_diagram

    return _count_range(parse_diagram(text), start, stop)


def enumerate_pi(d: Diagram, cap: int = DEFAULT_CAP, workers: int = 1) -> PiVector:
    """Exact p-table by visiting all 2^c states.

    With ``workers > 1`` the code range is split into contiguous chunks that
    are counted in separate processes and merged by addition, so the result
    does not depend on the split.
    """
    require_valid(d)
    c = len(d.classical)
    if c > cap:
        raise TooLarge(c, cap)
    total = 1 << c
    workers = max(1, int(workers))
    if workers == 1 or total < 4096:
        return _hist_to_pi(_count_range(d, 0, total), c)
    from .diagram import serialize

    text = serialize(d)
    bounds = [total * k // workers for k in range(workers + 1)]
    jobs = [(text, bounds[k], bounds[k + 1]) for k in range(workers) if bounds[k] < bounds[k + 1]]
    merged: dict[tuple[int, int], int] = {}
    with ProcessPoolExecutor(max_workers=min(workers, os.cpu_count() or 1)) as pool:
        for part in pool.map(_worker, jobs):
            for key, k in part.items():
                merged[key] = merged.get(key, 0) + k
    return _hist_to_pi(merged, c)


def enumerate_states(d: Diagram) -> list[tuple[State, int]]:
    """Every state with its loop count, in counter order (small diagrams)."""
    comp = _Compiled(d)
    c = len(comp.classical)
    codes = np.arange(1 << c, dtype=np.int64)
    loops = _loops_batch(comp, codes).tolist()
    return list(zip(iter_states(d), loops))


# -- invariants ----------------------------------------------------------------


def bracket(pi: PiVector | Mapping[int, LaurentPoly]) -> LaurentPoly:
    """``sum_i p_i (-A^2 - A^-2)^(i-1)``."""
    pi = pi if isinstance(pi, PiVector) else PiVector(pi)
    d = loop_value()
    acc = ZERO
    for i, p in pi:
        acc = acc + p * d ** (i - 1)
    return acc


def _normalize(br: LaurentPoly, w: int) -> LaurentPoly:
    sign = -1 if w % 2 else 1
    return br.shift(-3 * w) * sign


@dataclass(frozen=True)
class JonesValue:
    """Jones polynomial in A, with its t-form when every exponent is 4k."""

    a_form: LaurentPoly
    t_form: LaurentPoly | None

    @property
    def in_t(self) -> bool:
        return self.t_form is not None

    def render(self) -> str:
        if self.t_form is not None:
            return render_t(self.t_form)
        return render(self.a_form)


def jones(d: Diagram, cap: int = DEFAULT_CAP, workers: int = 1) -> JonesValue:
    if d.virtual:
        raise VirtualCrossingPresent(
            "diagram has virtual crossings; use the Kauffman-Jones polynomial instead"
        )
    v = kauffman_jones(d, cap=cap, workers=workers)
    try:
        return JonesValue(v, substitute_t(v))
    except NotAPowerOfT:
        return JonesValue(v, None)


def kauffman_jones(d: Diagram, cap: int = DEFAULT_CAP, workers: int = 1) -> LaurentPoly:
    return _normalize(bracket(enumerate_pi(d, cap=cap, workers=workers)), writhe(d))


# -- family classes ------------------------------------------------------------

# Markers on (y_{2k-1}, y_{2k}, z_{2k-1}, z_{2k}) for children s_1..s_16.
CHILD_PATTERNS: dict[int, tuple[str, str, str, str]] = {}
_neg_sets = [
    (), (0,), (1,), (2,), (3,), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
    (0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3), (0, 1, 2, 3),
]
for _j, _neg in enumerate(_neg_sets, start=1):
    CHILD_PATTERNS[_j] = tuple(AINV_MARK if k in _neg else A_MARK for k in range(4))


def child_pattern(marks: Mapping[str, str], k: int) -> int:
    """Index j of the block k pattern (y_{2k-1}, y_{2k}, z_{2k-1}, z_{2k})."""
    key = (marks[f"y{2*k-1}"], marks[f"y{2*k}"], marks[f"z{2*k-1}"], marks[f"z{2*k}"])
    for j, pat in CHILD_PATTERNS.items():
        if pat == key:
            return j
    raise AssertionError("unreachable")


def _family_names(family: str, n: int) -> set[str]:
    block = {f"y{i}" for i in range(1, 2 * n + 1)} | {f"z{i}" for i in range(1, 2 * n + 1)}
    if family == "RT":
        return {"x1", "x2", "x3"} | block
    if family == "RTV":
        return {"x1", "x2"} | block
    if family == "KV":
        return {f"x{i}" for i in range(1, 7)} | block
    raise NotInFamily(f"unknown family {family!r}")


def _last_rt_deviation(marks: Mapping[str, str], n: int) -> str | None:
    """Type of the last block (in order 1..n) that is not y=A,A and z=A^-1,A^-1."""
    last = None
    for k in range(1, n + 1):
        y = (marks[f"y{2*k-1}"], marks[f"y{2*k}"])
        z = (marks[f"z{2*k-1}"], marks[f"z{2*k}"])
        if z != (AINV_MARK, AINV_MARK):
            last = "z"
        elif y != (A_MARK, A_MARK):
            last = "y"
    return last


def _classify_rt(marks: Mapping[str, str], n: int, virtual: bool) -> str:
    last = _last_rt_deviation(marks, n)
    if last is None:
        odd = marks["x1"] == AINV_MARK
    else:
        odd = last == "y"
    upper = marks["x2"] == A_MARK and (virtual or marks["x3"] == A_MARK)
    if upper:
        return "I" if odd else "II"
    return "III" if odd else "IV"


def _kv_pairs(marks: Mapping[str, str], n: int) -> list[str]:
    """Non-default pairs in order y_1y_2, z_1z_2, y_3y_4, ...; default = A^-1,A^-1."""
    seq = []
    for k in range(1, n + 1):
        for letter in ("y", "z"):
            pair = (marks[f"{letter}{2*k-1}"], marks[f"{letter}{2*k}"])
            if pair != (AINV_MARK, AINV_MARK):
                seq.append(letter)
    return seq


def _classify_kv(marks: Mapping[str, str], n: int) -> tuple[int, str]:
    low = all(marks[f"x{i}"] == AINV_MARK for i in (1, 2, 3))
    high = all(marks[f"x{i}"] == AINV_MARK for i in (4, 5, 6))
    seq = _kv_pairs(marks, n)
    if low and high:
        if not seq:
            return (1, "I")
        first, last = seq[0], seq[-1]
        return (1, {("z", "z"): "II", ("y", "y"): "III", ("z", "y"): "IV", ("y", "z"): "V"}[first, last])
    if low:
        return (2, "I") if seq and seq[-1] == "y" else (2, "II")
    if seq:
        return (3, "I") if seq[-1] == "y" else (3, "II")
    return (3, "I") if high else (3, "II")


def classify_state(family: str, n: int, s: State | Mapping[str, str]):
    marks = s.as_dict() if isinstance(s, State) else dict(s)
    family = family.upper()
    expected = _family_names(family, n)
    if set(marks) != expected:
        raise NotInFamily(f"state does not match the crossings of {family.lower()}:{n}")
    if family == "KV":
        return _classify_kv(marks, n)
    return _classify_rt(marks, n, virtual=family == "RTV")


def class_tables(family: str, n: int, d: Diagram) -> dict:
    """Brute-force class-partitioned p-tables of a family diagram."""
    c = len(d.classical)
    out: dict = {}
    for state, loops in enumerate_states(d):
        label = classify_state(family, n, state)
        b = sum(1 for _, m in state.assignment if m == AINV_MARK)
        row = out.setdefault(label, {})
        row[loops] = row.get(loops, ZERO) + LaurentPoly.monomial(c - 2 * b)
    return out


@dataclass(frozen=True)
class Transition:
    parent: State
    j: int
    parent_class: str
    child_class: str
    delta: int  # child loops minus parent loops


def transitions(family: str, parent: Diagram, child: Diagram, n: int) -> list[Transition]:
    """Every (parent state, block pattern j) pair from ``family`` at n-1 to n.

    The child state copies the parent's markers and applies pattern j on
    block n.
    """
    out = []
    for ps in iter_states(parent):
        p_loops = loop_count(parent, ps)
        p_class = classify_state(family, n - 1, ps)
        base = ps.as_dict()
        for j, pat in CHILD_PATTERNS.items():
            marks = dict(base)
            names = (f"y{2*n-1}", f"y{2*n}", f"z{2*n-1}", f"z{2*n}")
            marks.update(zip(names, pat))
            cs = State.of(marks)
            out.append(Transition(
                ps, j, p_class, classify_state(family, n, cs), loop_count(child, cs) - p_loops,
            ))
    return out


def report(pi: PiVector, polys: Mapping[str, str]) -> str:
    """Machine-readable document for a p-table plus named polynomials."""
    return json.dumps({"p": pi.as_dict(), **polys}, indent=2, sort_keys=True)
