"""Embedding presentations of link and virtual-link diagrams.

A diagram is a set of crossings, each with four edge-ends ("slots") listed in
anticlockwise rotation order, together with the edges pairing slots.  Even
slots (0, 2) carry the over strand of a classical crossing and odd slots
(1, 3) the under strand; at a virtual crossing they are simply the two
transversal strands.  A strand entering a crossing at slot ``k`` leaves at
slot ``(k + 2) % 4``.

File grammar (one directive per line, ``#`` starts a comment)::

    link <name>
    crossing <name> <c|v>
    edge <name>.<slot> <name>.<slot>
    loops: <k>
    orient <name>.<slot>
    parallel <name>.<slot> <name>.<slot>

``parallel`` lines mark an ordered list of edges for the m-string
constructions; they are ignored by every invariant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

__all__ = [
    "Crossing",
    "SlotRef",
    "Diagram",
    "DiagramError",
    "DiagramSyntaxError",
    "DuplicateCrossing",
    "UnknownCrossing",
    "ValidationError",
    "StrandComponents",
    "parse_diagram",
    "load_diagram",
    "validate",
    "components",
    "writhe",
    "crossing_signs",
    "serialize",
]

CLASSICAL = "c"
VIRTUAL = "v"


class DiagramError(ValueError):
    pass


class DiagramSyntaxError(DiagramError):
    def __init__(self, line: int, token: str, message: str):
        super().__init__(f"line {line}: {message} ({token!r})")
        self.line = line
        self.token = token


class DuplicateCrossing(DiagramSyntaxError):
    pass


class UnknownCrossing(DiagramSyntaxError):
    pass


class ValidationError(DiagramError):
    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


@dataclass(frozen=True, order=True)
class Crossing:
    name: str
    kind: str = CLASSICAL

    @property
    def is_virtual(self) -> bool:
        return self.kind == VIRTUAL


class SlotRef(NamedTuple):
    crossing: str
    slot: int

    def __str__(self) -> str:
        return f"{self.crossing}.{self.slot}"


def _edge_key(a: SlotRef, b: SlotRef) -> tuple[SlotRef, SlotRef]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...]
    edges: frozenset[tuple[SlotRef, SlotRef]]
    free_loops: int = 0
    orientation_hints: tuple[SlotRef, ...] = ()
    name: str | None = None
    parallel: tuple[tuple[SlotRef, SlotRef], ...] = field(default=(), compare=False)

    @classmethod
    def build(
        cls,
        crossings: Iterable[Crossing | tuple[str, str]],
        edges: Iterable[tuple[SlotRef | tuple[str, int], SlotRef | tuple[str, int]]],
        free_loops: int = 0,
        orientation_hints: Iterable[SlotRef | tuple[str, int]] = (),
        name: str | None = None,
        parallel: Iterable[tuple[SlotRef | tuple[str, int], SlotRef | tuple[str, int]]] = (),
    ) -> "Diagram":
        cs = tuple(sorted(c if isinstance(c, Crossing) else Crossing(*c) for c in crossings))
        es = frozenset(_edge_key(SlotRef(*a), SlotRef(*b)) for a, b in edges)
        hints = tuple(SlotRef(*h) for h in orientation_hints)
        par = tuple((SlotRef(*a), SlotRef(*b)) for a, b in parallel)
        return cls(cs, es, free_loops, hints, name, par)

    # -- convenience ------------------------------------------------------

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.crossings]

    @property
    def classical(self) -> list[str]:
        return [c.name for c in self.crossings if not c.is_virtual]

    @property
    def virtual(self) -> list[str]:
        return [c.name for c in self.crossings if c.is_virtual]

    def kind(self, name: str) -> str:
        for c in self.crossings:
            if c.name == name:
                return c.kind
        raise KeyError(name)

    def partner_map(self) -> dict[SlotRef, SlotRef]:
        m: dict[SlotRef, SlotRef] = {}
        for a, b in self.edges:
            m[a] = b
            m[b] = a
        return m

    def with_kinds(self, kinds: dict[str, str], name: str | None = None) -> "Diagram":
        cs = tuple(Crossing(c.name, kinds.get(c.name, c.kind)) for c in self.crossings)
        return Diagram(cs, self.edges, self.free_loops, self.orientation_hints,
                       name if name is not None else self.name, self.parallel)

    def mirror(self, name: str | None = None) -> "Diagram":
        """Swap over and under at every classical crossing (rotate slots by one)."""
        virt = set(self.virtual)

        def move(r: SlotRef) -> SlotRef:
            return r if r.crossing in virt else SlotRef(r.crossing, (r.slot + 1) % 4)

        edges = frozenset(_edge_key(move(a), move(b)) for a, b in self.edges)
        hints = tuple(move(h) for h in self.orientation_hints)
        par = tuple((move(a), move(b)) for a, b in self.parallel)
        return Diagram(self.crossings, edges, self.free_loops, hints,
                       name if name is not None else self.name, par)


# -- parsing --------------------------------------------------------------

def _slot_token(tok: str, line: int) -> SlotRef:
    name, dot, slot = tok.rpartition(".")
    if not dot or not name or slot not in ("0", "1", "2", "3"):
        raise DiagramSyntaxError(line, tok, "expected <crossing>.<slot> with slot 0..3")
    return SlotRef(name, int(slot))


def parse_diagram(text: str) -> Diagram:
    name = None
    crossings: dict[str, Crossing] = {}
    edges: list[tuple[SlotRef, SlotRef, int]] = []
    hints: list[tuple[SlotRef, int]] = []
    parallel: list[tuple[SlotRef, SlotRef, int]] = []
    loops = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        if head == "link":
            if len(toks) != 2:
                raise DiagramSyntaxError(lineno, line, "expected 'link <name>'")
            name = toks[1]
        elif head == "crossing":
            if len(toks) != 3 or toks[2] not in (CLASSICAL, VIRTUAL):
                raise DiagramSyntaxError(lineno, line, "expected 'crossing <name> <c|v>'")
            if toks[1] in crossings:
                raise DuplicateCrossing(lineno, toks[1], "duplicate crossing")
            if "." in toks[1]:
                raise DiagramSyntaxError(lineno, toks[1], "crossing names may not contain '.'")
            crossings[toks[1]] = Crossing(toks[1], toks[2])
        elif head == "edge":
            if len(toks) != 3:
                raise DiagramSyntaxError(lineno, line, "expected 'edge <slot> <slot>'")
            edges.append((_slot_token(toks[1], lineno), _slot_token(toks[2], lineno), lineno))
        elif head in ("loops:", "loops"):
            if len(toks) != 2 or not toks[1].isdigit():
                raise DiagramSyntaxError(lineno, line, "expected 'loops: <k>'")
            loops = int(toks[1])
        elif head == "orient":
            if len(toks) != 2:
                raise DiagramSyntaxError(lineno, line, "expected 'orient <slot>'")
            hints.append((_slot_token(toks[1], lineno), lineno))
        elif head == "parallel":
            if len(toks) != 3:
                raise DiagramSyntaxError(lineno, line, "expected 'parallel <slot> <slot>'")
            parallel.append((_slot_token(toks[1], lineno), _slot_token(toks[2], lineno), lineno))
        else:
            raise DiagramSyntaxError(lineno, head, "unknown directive")
    for a, b, lineno in edges:
        for r in (a, b):
            if r.crossing not in crossings:
                raise UnknownCrossing(lineno, r.crossing, "edge references unknown crossing")
    for r, lineno in hints:
        if r.crossing not in crossings:
            raise UnknownCrossing(lineno, r.crossing, "orient references unknown crossing")
    for a, b, lineno in parallel:
        for r in (a, b):
            if r.crossing not in crossings:
                raise UnknownCrossing(lineno, r.crossing, "parallel references unknown crossing")
    d = Diagram(
        tuple(sorted(crossings.values())),
        frozenset(_edge_key(a, b) for a, b, _ in edges),
        loops,
        tuple(h for h, _ in hints),
        name,
        tuple((a, b) for a, b, _ in parallel),
    )
    # duplicated edge lines collapse in the frozenset; report them as reuse
    if len(d.edges) != len(edges):
        seen: set = set()
        for a, b, lineno in edges:
            k = _edge_key(a, b)
            if k in seen:
                raise DiagramSyntaxError(lineno, f"{a} {b}", "duplicate edge")
            seen.add(k)
    return d


def load_diagram(path) -> Diagram:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())


def validate(d: Diagram) -> list[str]:
    """Return a list of violations; empty means the diagram is well formed."""
    problems: list[str] = []
    if d.free_loops < 0:
        problems.append(f"negative free loop count {d.free_loops}")
    names = [c.name for c in d.crossings]
    if len(set(names)) != len(names):
        problems.append("duplicate crossing names")
    known = set(names)
    use: dict[SlotRef, int] = {}
    for a, b in sorted(d.edges):
        if a == b:
            problems.append(f"degenerate edge {a} {b} joins a slot to itself")
        for r in (a, b):
            if r.crossing not in known:
                problems.append(f"edge {a} {b} references unknown crossing {r.crossing}")
            if not 0 <= r.slot <= 3:
                problems.append(f"edge {a} {b} uses invalid slot {r.slot}")
            use[r] = use.get(r, 0) + (1 if a != b else 2)
    for n in names:
        for s in range(4):
            r = SlotRef(n, s)
            k = use.get(r, 0)
            if k == 0:
                problems.append(f"slot {r} is uncovered")
            elif k > 1:
                problems.append(f"slot {r} appears in {k} edges")
    for h in d.orientation_hints:
        if h.crossing not in known or not 0 <= h.slot <= 3:
            problems.append(f"orientation hint {h} is not a slot of the diagram")
    return problems


def require_valid(d: Diagram) -> None:
    problems = validate(d)
    if problems:
        raise ValidationError(problems)


# -- strands --------------------------------------------------------------

@dataclass(frozen=True)
class StrandComponents:
    """Strand cycles; each entry lists ``(exit slot, entry slot)`` pairs in order."""

    components: tuple[tuple[tuple[SlotRef, SlotRef], ...], ...]
    free_loops: int = 0

    def __len__(self) -> int:
        return len(self.components) + self.free_loops

    @property
    def count(self) -> int:
        return len(self)


def _trace(partner: dict[SlotRef, SlotRef], start: SlotRef) -> list[tuple[SlotRef, SlotRef]]:
    path = []
    out = start
    while True:
        inn = partner[out]
        path.append((out, inn))
        out = SlotRef(inn.crossing, (inn.slot + 2) % 4)
        if out == start:
            return path


def components(d: Diagram) -> StrandComponents:
    """Trace strands through every crossing (virtual ones included, unsmoothed).

    A component starts at an orientation hint if one lies on it, otherwise at
    its smallest unvisited slot, which is taken as an exit.
    """
    require_valid(d)
    partner = d.partner_map()
    visited: set[SlotRef] = set()
    comps = []
    starts = list(d.orientation_hints) + sorted(partner)
    for s in starts:
        if s in visited:
            continue
        path = _trace(partner, s)
        for out, inn in path:
            visited.add(out)
            visited.add(inn)
        comps.append(tuple(path))
    return StrandComponents(tuple(comps), d.free_loops)


def crossing_signs(d: Diagram) -> dict[str, int]:
    """Sign of every classical crossing under the traversal orientation.

    With the over strand leaving at slot ``s``, the sign is +1 when the under
    strand leaves at ``s + 1`` and -1 when it leaves at ``s - 1`` (mod 4).
    """
    comps = components(d)
    exits: dict[str, list[int]] = {}
    for comp in comps.components:
        for out, _ in comp:
            exits.setdefault(out.crossing, []).append(out.slot)
    virt = set(d.virtual)
    signs = {}
    for name, slots in exits.items():
        if name in virt:
            continue
        over = next(s for s in slots if s % 2 == 0)
        under = next(s for s in slots if s % 2 == 1)
        signs[name] = 1 if under == (over + 1) % 4 else -1
    return dict(sorted(signs.items()))


def writhe(d: Diagram) -> int:
    return sum(crossing_signs(d).values())


def serialize(d: Diagram) -> str:
    lines = []
    if d.name:
        lines.append(f"link {d.name}")
    for c in d.crossings:
        lines.append(f"crossing {c.name} {c.kind}")
    for a, b in sorted(d.edges):
        lines.append(f"edge {a} {b}")
    if d.free_loops:
        lines.append(f"loops: {d.free_loops}")
    for h in d.orientation_hints:
        lines.append(f"orient {h}")
    for a, b in d.parallel:
        lines.append(f"parallel {a} {b}")
    return "\n".join(lines) + "\n"
