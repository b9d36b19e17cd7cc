"""Generators for the RT_n, RT'_n, KV_n and m-string diagram families.

RT_n and KV_n are built by surgery on a shipped base diagram.  Base edges are
named by their end types (``"x1"`` is an over end at x1, ``"x2-"`` an under
end), removed, and the slots they free are handed to the new edges in
listing order, so the base crossings keep their rotations.  New crossings
take their over ends at slots 0 and 2 in listing order; their under ends go
to slots 1 and 3, or 3 and 1 for the crossings in ``flip``.  The flip sets
were found by requiring a planar result (which leaves only a global mirror
choice) whose brute-force p-tables match the transfer recursions; that was
checked for RT up to n = 3 and KV up to n = 3.

AL/TL replace the leftmost marked edge e_0 by a serpentine strand that runs
across strings e_1..e_m in 2n rows (row 1 left to right, turning at the
right, then back, and so on) and ends where e_0 ended.  AL alternates over
and under in a checkerboard; in TL every crossing of a row has the same
over/under pattern for the strings.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .diagram import (
    Crossing,
    Diagram,
    DiagramError,
    SlotRef,
    load_diagram,
    require_valid,
    writhe,
)

__all__ = [
    "FamilyError",
    "BaseUnverified",
    "MarkedEdgeMissing",
    "UnsupportedMarking",
    "DescriptorError",
    "FamilySpec",
    "data_path",
    "load_shipped",
    "gen_rt",
    "gen_rt_virtual",
    "gen_kv",
    "gen_mstring",
    "braid_closure",
    "parse_descriptor",
    "build",
    "genus",
]


class FamilyError(DiagramError):
    pass


class BaseUnverified(FamilyError):
    pass


class MarkedEdgeMissing(FamilyError):
    pass


class UnsupportedMarking(FamilyError):
    pass


class DescriptorError(FamilyError):
    pass


def data_path(name: str) -> Path:
    return Path(str(resources.files("stategen") / "data" / name))


def load_shipped(name: str) -> Diagram:
    return load_diagram(data_path(name))


# -- typed-end surgery ---------------------------------------------------------


def _end(tok: str) -> tuple[str, int]:
    """``"x2-"`` -> (``"x2"``, 1) for under; ``"x2"`` -> (``"x2"``, 0) for over."""
    return (tok[:-1], 1) if tok.endswith("-") else (tok, 0)


def _typed(pairs: list[str]) -> list[tuple[tuple[str, int], tuple[str, int]]]:
    out = []
    for p in pairs:
        a, b = p.split()
        out.append((_end(a), _end(b)))
    return out


def surgery(base: Diagram, removed: list[str], added: list[str], flip: set[str], name: str) -> Diagram:
    edges = set(base.edges)
    freed: dict[tuple[str, int], list[SlotRef]] = {}
    for a, b in _typed(removed):
        want = sorted([a, b])
        hit = [
            e for e in edges
            if sorted([(e[0].crossing, e[0].slot % 2), (e[1].crossing, e[1].slot % 2)]) == want
        ]
        if len(hit) != 1:
            raise FamilyError(f"base edge {a}-{b} not found exactly once")
        edges.discard(hit[0])
        for s in hit[0]:
            freed.setdefault((s.crossing, s.slot % 2), []).append(s)
    old = set(base.names)
    new_ends: dict[str, tuple[list, list]] = {}
    pending = []
    for k, ends in enumerate(_typed(added)):
        refs: list = []
        for side, (n, kind) in enumerate(ends):
            if n in old:
                pool = freed.get((n, kind))
                if not pool:
                    raise FamilyError(f"no free {'under' if kind else 'over'} slot at {n}")
                refs.append(pool.pop(0))
            else:
                new_ends.setdefault(n, ([], []))[kind].append((k, side))
                refs.append(None)
        pending.append(refs)
    placed: dict[tuple[int, int], SlotRef] = {}
    for n, (over, under) in new_ends.items():
        if len(over) != 2 or len(under) != 2:
            raise FamilyError(f"new crossing {n} does not get two over and two under ends")
        placed[over[0]] = SlotRef(n, 0)
        placed[over[1]] = SlotRef(n, 2)
        lo, hi = (3, 1) if n in flip else (1, 3)
        placed[under[0]] = SlotRef(n, lo)
        placed[under[1]] = SlotRef(n, hi)
    left = [k for k, v in freed.items() if v]
    if left:
        raise FamilyError(f"freed slots left unused at {left}")
    for k, refs in enumerate(pending):
        a = refs[0] if refs[0] is not None else placed[(k, 0)]
        b = refs[1] if refs[1] is not None else placed[(k, 1)]
        edges.add((a, b))
    crossings = list(base.crossings) + [Crossing(n, "c") for n in new_ends]
    d = Diagram.build(crossings, edges, base.free_loops, (), name)
    require_valid(d)
    return d


# -- RT_n and RT'_n --------------------------------------------------------------


def _rt_added(n: int) -> list[str]:
    y = lambda i: "x2" if i == 2 * n + 1 else f"y{i}"
    z = lambda i: "x3" if i == 2 * n + 1 else f"z{i}"
    out = ["x1 y1-", "x1- y1", "x1- z1"]
    for k in range(1, n + 1):
        out += [
            f"y{2*k} y{2*k-1}-",
            f"y{2*k}- y{2*k-1}",
            f"z{2*k} z{2*k-1}-",
            f"z{2*k}- z{2*k-1}",
            f"y{2*k} z{2*k-1}-",
            f"z{2*k} {y(2*k+1)}-",
            f"y{2*k}- {y(2*k+1)}",
            f"z{2*k}- {z(2*k+1)}",
        ]
    return out


# The y chain subdivides (x1-, x2) and the z chain (x1-, x3); the order of the
# removed edges fixes which freed x1 under slot each chain inherits.
_RT_REMOVED = ["x1 x2-", "x1- x2", "x1- x3"]


def gen_rt(n: int) -> Diagram:
    if n < 0:
        raise ValueError("n must be nonnegative")
    base = load_shipped("rt0.lnk")
    if n == 0:
        return base
    flip = {f"z{2*k}" for k in range(1, n + 1)}
    return surgery(base, _RT_REMOVED, _rt_added(n), flip, f"RT_{n}")


def gen_rt_virtual(n: int) -> Diagram:
    return gen_rt(n).with_kinds({"x3": "v"}, name=f"RT'_{n}")


# -- KV_n ------------------------------------------------------------------------

_KV_REMOVED = ["x3- x6-", "x3 x2-", "x6 x4-"]


def _kv_added(n: int) -> list[str]:
    y = lambda i: "x3" if i == 2 * n + 1 else f"y{i}"
    z = lambda i: "x4" if i == 2 * n + 1 else f"z{i}"
    out = ["x2- y1", "x6- y1-", "x6 z1-"]
    for k in range(1, n + 1):
        out += [
            f"y{2*k-1}- y{2*k}",
            f"y{2*k-1} y{2*k}-",
            f"z{2*k-1}- z{2*k}",
            f"z{2*k-1} z{2*k}-",
            f"y{2*k}- {y(2*k+1)}",
            f"y{2*k} z{2*k-1}",
            f"z{2*k} {z(2*k+1)}-",
            f"z{2*k}- {y(2*k+1)}-",
        ]
    return out


def _kv_raw(n: int) -> Diagram:
    base = load_shipped("kv0.lnk")
    if n == 0:
        return base
    flip = {f"y{i}" for i in range(1, 2 * n + 1)} | {f"z{2*k}" for k in range(1, n + 1)}
    return surgery(base, _KV_REMOVED, _kv_added(n), flip, f"KV_{n}")


@functools.lru_cache(maxsize=1)
def kv_base_check() -> tuple[bool, str]:
    """Check the shipped KV_0 against its seeds and KV_1 against its Jones polynomial."""
    from .bracket import enumerate_pi, kauffman_jones
    from .golden import KV1_JONES_A
    from .laurent import parse
    from .recurrence import kv_pi

    base = load_shipped("kv0.lnk")
    if enumerate_pi(base).table != kv_pi(0).total():
        return False, "KV_0 p-table differs from the recursion seeds"
    if writhe(base) != -6:
        return False, f"KV_0 writhe is {writhe(base)}, expected -6"
    if kauffman_jones(_kv_raw(1)) != parse(KV1_JONES_A):
        return False, "Jones polynomial of the generated KV_1 differs from the reference value"
    return True, "ok"


def gen_kv(n: int) -> Diagram:
    if n < 0:
        raise ValueError("n must be nonnegative")
    ok, why = kv_base_check()
    if not ok:
        raise BaseUnverified(why)
    return _kv_raw(n)


# -- braid closures (base diagrams for the m-string constructions) ------------------


def braid_closure(word: list[int], strands: int, name: str = "closure", prefix: str = "c") -> Diagram:
    """Planar closure of a braid word (generator ``j`` > 0 crosses positions j, j+1).

    Strands run downward; a positive generator sends the over strand from the
    upper left to the lower right, a negative one from the upper right.  The
    closing arcs are marked as parallel edges, ordered so the first one can
    serve as e_0 of the m-string constructions.
    """
    top: dict[int, SlotRef] = {}
    dangling: dict[int, SlotRef] = {}
    edges = []
    crossings = []
    # compass slots: over strand on slots 0 and 2
    for k, g in enumerate(word, start=1):
        j = abs(g)
        if not 1 <= j < strands:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        c = f"{prefix}{k}"
        crossings.append(Crossing(c, "c"))
        if g > 0:
            nw, sw, se, ne = 0, 1, 2, 3
        else:
            ne, nw, sw, se = 0, 1, 2, 3
        for pos, slot in ((j, nw), (j + 1, ne)):
            ref = SlotRef(c, slot)
            if pos in dangling:
                edges.append((dangling[pos], ref))
            else:
                top[pos] = ref
        dangling[j] = SlotRef(c, sw)
        dangling[j + 1] = SlotRef(c, se)
    free = 0
    parallel = []
    for pos in range(1, strands + 1):
        if pos not in dangling:
            free += 1
            continue
        edges.append((dangling[pos], top[pos]))
        parallel.append((dangling[pos], top[pos]))
    # travelling an arc from the bottom of the braid back to the top, braid
    # position 1 lies leftmost
    return Diagram.build(crossings, edges, free, (), name, parallel)


# -- genus of the rotation system ---------------------------------------------------


def genus(d: Diagram) -> int:
    """Genus of the surface carried by the rotation system, summed over pieces."""
    partner = d.partner_map()
    seen: set[SlotRef] = set()
    faces = 0
    for start in partner:
        if start in seen:
            continue
        faces += 1
        x = start
        while x not in seen:
            seen.add(x)
            y = partner[x]
            x = SlotRef(y.crossing, (y.slot + 1) % 4)
    # connected pieces among crossings
    parent = {c: c for c in d.names}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in d.edges:
        parent[find(a.crossing)] = find(b.crossing)
    pieces = len({find(c) for c in d.names})
    v, e = len(d.names), len(d.edges)
    return (2 * pieces - v + e - faces) // 2


# -- m-string alternating and tangle links -------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    base: Diagram | None = None
    m: int = 0
    marked: tuple[tuple[SlotRef, SlotRef], ...] = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.family in ("AL", "TL") and self.m < 2:
            raise ValueError("m must be at least 2")


def _node(i: int, l: int) -> str:
    return f"x{i}_{l}"


def gen_mstring(spec: FamilySpec) -> Diagram:
    if spec.family not in ("AL", "TL"):
        raise FamilyError(f"gen_mstring needs AL or TL, got {spec.family}")
    base = spec.base
    if base is None:
        raise FamilyError("m-string constructions need a base diagram")
    require_valid(base)
    marked = spec.marked or base.parallel
    m, n = spec.m, spec.n
    if len(marked) < m + 1:
        raise MarkedEdgeMissing(f"base marks {len(marked)} parallel edges, need {m + 1}")
    marked = tuple(marked[: m + 1])
    edges = set(base.edges)
    for u, v in marked:
        key = (u, v) if u <= v else (v, u)
        if key not in edges:
            raise MarkedEdgeMissing(f"marked edge {u} {v} is not an edge of the base")
        edges.discard(key)
    if len({frozenset(e) for e in marked}) != len(marked):
        raise MarkedEdgeMissing("marked edges must be distinct")
    if n == 0:
        return Diagram.build(base.crossings, base.edges, base.free_loops, (), base.name)
    clash = {_node(i, l) for i in range(1, m + 1) for l in range(1, 2 * n + 1)} & set(base.names)
    if clash:
        raise FamilyError(f"base already uses crossing names {sorted(clash)}")

    r_over = marked[0][0].slot % 2 == 0
    crossings = list(base.crossings)
    port: dict[tuple[int, int], dict[str, SlotRef]] = {}
    for i in range(1, m + 1):
        for l in range(1, 2 * n + 1):
            name = _node(i, l)
            crossings.append(Crossing(name, "c"))
            if spec.family == "AL":
                string_over = r_over ^ (i % 2 == 0) ^ (l % 2 == 0)
            else:
                string_over = r_over ^ (l % 2 == 0)
            if string_over:
                order = ("N", "W", "S", "E")
            else:
                order = ("E", "N", "W", "S")
            port[i, l] = {d: SlotRef(name, k) for k, d in enumerate(order)}
    new = []
    for i in range(1, m + 1):
        u, v = marked[i]
        new.append((u, port[i, 1]["N"]))
        for l in range(1, 2 * n):
            new.append((port[i, l]["S"], port[i, l + 1]["N"]))
        new.append((port[i, 2 * n]["S"], v))
    u0, v0 = marked[0]
    new.append((u0, port[1, 1]["W"]))
    for l in range(1, 2 * n + 1):
        if l % 2:
            for i in range(1, m):
                new.append((port[i, l]["E"], port[i + 1, l]["W"]))
            new.append((port[m, l]["E"], port[m, l + 1]["E"]))
        else:
            for i in range(m, 1, -1):
                new.append((port[i, l]["W"], port[i - 1, l]["E"]))
            if l < 2 * n:
                new.append((port[1, l]["W"], port[1, l + 1]["W"]))
            else:
                new.append((port[1, l]["W"], v0))
    name = f"{spec.family}_{n}(m={m})"
    d = Diagram.build(crossings, list(edges) + new, base.free_loops, (), name)
    require_valid(d)
    if genus(d) > genus(base):
        raise UnsupportedMarking(
            "marked edges are not ordered left to right along their direction; "
            "only the leftmost-e_0 case is supported"
        )
    return d


# -- descriptors --------------------------------------------------------------------


def parse_descriptor(text: str) -> FamilySpec:
    """``rt:<n>``, ``rtv:<n>``, ``kv:<n>``, ``al:<m>:<n>:<file>``, ``tl:<m>:<n>:<file>``."""
    parts = text.split(":")
    fam = parts[0].lower()
    try:
        if fam in ("rt", "rtv", "kv") and len(parts) == 2:
            return FamilySpec(fam.upper(), int(parts[1]))
        if fam in ("al", "tl") and len(parts) >= 4:
            m, n = int(parts[1]), int(parts[2])
            path = ":".join(parts[3:])
            base = load_shipped(path[len("@"):]) if path.startswith("@") else load_diagram(path)
            return FamilySpec(fam.upper(), n, base, m)
    except ValueError as e:
        raise DescriptorError(f"bad family descriptor {text!r}: {e}") from None
    raise DescriptorError(f"bad family descriptor {text!r}")


def is_descriptor(text: str) -> bool:
    head = text.split(":", 1)[0].lower()
    return ":" in text and head in ("rt", "rtv", "kv", "al", "tl")


def build(spec: FamilySpec) -> Diagram:
    if spec.family == "RT":
        return gen_rt(spec.n)
    if spec.family == "RTV":
        return gen_rt_virtual(spec.n)
    if spec.family == "KV":
        return gen_kv(spec.n)
    return gen_mstring(spec)
