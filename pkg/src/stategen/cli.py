"""Command-line front end.

    stategen bracket|jones|fpoly TARGET [--method brute|recur|closed|all]
    stategen gen TARGET [-o FILE]
    stategen certify TARGET
    stategen verify [TARGET]
    stategen bench FAMILY [--from N] [--to N]

TARGET is a diagram file or a family descriptor (``rt:2``, ``kv:1``,
``al:2:1:@l0.lnk``).  Exit codes: 0 success, 1 bad input, 2 a mismatch found
by a comparison, 3 a closed-form discrepancy report.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Callable

from . import analysis, closedform, golden, recurrence
from .bracket import (
    DEFAULT_CAP,
    BracketError,
    TooLarge,
    VirtualCrossingPresent,
    bracket,
    class_tables,
    enumerate_pi,
    transitions,
)
from .diagram import Diagram, DiagramError, load_diagram, serialize, writhe
from .families import (
    FamilySpec,
    build,
    is_descriptor,
    load_shipped,
    parse_descriptor,
)
from .laurent import (
    LaurentPoly,
    NotAPowerOfT,
    ParseError,
    parse,
    render,
    render_t,
    substitute_t,
)

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_DISCREPANCY = 0, 1, 2, 3

RECURSIONS = {"RT": recurrence.rt_pi, "RTV": recurrence.rtv_pi, "KV": recurrence.kv_pi}
CLOSED = {
    "RT": closedform.rt_jones_closed,
    "RTV": closedform.rtv_f_closed,
    "KV": closedform.kv_jones_closed,
}
# classical crossings only
CROSSINGS = {"RT": lambda n: 4 * n + 3, "RTV": lambda n: 4 * n + 2, "KV": lambda n: 4 * n + 6}


class UsageError(Exception):
    pass


# -- targets ---------------------------------------------------------------------


@dataclass
class Target:
    text: str
    spec: FamilySpec | None = None
    _diagram: Diagram | None = None

    @property
    def family(self) -> str | None:
        if self.spec is not None and self.spec.family in RECURSIONS:
            return self.spec.family
        return None

    @property
    def n(self) -> int:
        return self.spec.n if self.spec is not None else 0

    def diagram(self) -> Diagram:
        if self._diagram is None:
            self._diagram = build(self.spec) if self.spec is not None else load_diagram(self.text)
        return self._diagram

    def crossing_count(self) -> int:
        if self.family is not None:
            return CROSSINGS[self.family](self.n)
        return len(self.diagram().classical)

    def is_virtual(self) -> bool:
        if self.family is not None:
            return self.family == "RTV"
        return bool(self.diagram().virtual)

    def writhe(self) -> int:
        if self.family is not None:
            return recurrence.FAMILY_WRITHE[self.family](self.n)
        return writhe(self.diagram())

    def methods(self) -> list[str]:
        if not self.family:
            return ["brute"]
        if self.family == "KV" and self.n == 0:
            return ["brute", "recur"]  # the KV closed form starts at n = 1
        return ["brute", "recur", "closed"]


def resolve(text: str) -> Target:
    if is_descriptor(text):
        return Target(text, parse_descriptor(text))
    if text.startswith("@"):
        return Target(text, None, load_shipped(text[1:]))
    try:
        return Target(text, None, load_diagram(text))
    except FileNotFoundError:
        raise UsageError(f"{text}: file not found") from None
    except DiagramError as e:
        raise UsageError(f"{text}: {e}") from None


def _methods(target: Target, method: str | None) -> list[str]:
    have = target.methods()
    if method in (None, "auto"):
        return ["recur"] if target.family else ["brute"]
    if method == "all":
        return have
    if method not in have:
        raise UsageError(f"method {method} needs a rt, rtv or kv family descriptor")
    return [method]


# -- computing -------------------------------------------------------------------


@dataclass
class Outcome:
    method: str
    value: LaurentPoly | None = None  # normalized, in A
    bracket: LaurentPoly | None = None
    pi: dict | None = None
    skipped: str | None = None
    discrepancy: closedform.Discrepancy | None = None
    ms: float = 0.0


def _unnormalize(v: LaurentPoly, w: int) -> LaurentPoly:
    return v.shift(3 * w) * (-1 if w % 2 else 1)


def _normalize(br: LaurentPoly, w: int) -> LaurentPoly:
    return br.shift(-3 * w) * (-1 if w % 2 else 1)


def compute(
    target: Target, method: str, cap: int, workers: int, strict: bool = True, need_pi: bool = True
) -> Outcome:
    """One method's value.

    ``strict=False`` turns an over-cap brute force into a skip.  Without
    ``need_pi`` the recursion skips the p-table and folds loops as it goes.
    """
    t0 = time.perf_counter()
    out = Outcome(method)
    if method == "brute":
        c = target.crossing_count()
        if c > cap:
            if strict:
                raise TooLarge(c, cap)
            out.skipped = f"{c} crossings > cap {cap}"
            return out
        d = target.diagram()
        pi = enumerate_pi(d, cap=cap, workers=workers)
        out.pi = dict(pi.table)
        out.bracket = bracket(pi)
        out.value = _normalize(out.bracket, writhe(d))
    elif method == "recur" and not need_pi:
        out.bracket = recurrence.transfer_bracket(target.family, target.n)
        out.value = _normalize(out.bracket, target.writhe())
    elif method == "recur":
        cp = RECURSIONS[target.family](target.n)
        out.pi = cp.total()
        out.bracket = recurrence.assemble_bracket(cp)
        out.value = recurrence.assemble(cp)
    else:
        res = CLOSED[target.family](target.n)
        out.value = res.value
        out.discrepancy = res.discrepancy
        if res.value is not None:
            out.bracket = _unnormalize(res.value, target.writhe())
    out.ms = (time.perf_counter() - t0) * 1000
    return out


def _agree(outcomes: list[Outcome]) -> bool:
    vals = [o.value for o in outcomes if o.skipped is None]
    return all(v is not None and v == vals[0] for v in vals)


def _brute_recur_agree(outcomes: list[Outcome]) -> bool:
    return _agree([o for o in outcomes if o.method != "closed"])


def _t_or_a(v: LaurentPoly) -> str:
    try:
        return render_t(substitute_t(v))
    except NotAPowerOfT:
        return render(v)


# -- invariant subcommands -------------------------------------------------------


def _render_pi(pi: dict, indent: str) -> list[str]:
    return [f"{indent}p_{i} = {render(p)}" for i, p in sorted(pi.items()) if p]


def cmd_invariant(args, out) -> int:
    target = resolve(args.target)
    kind = args.command
    if kind == "jones" and target.is_virtual():
        raise VirtualCrossingPresent(
            f"{target.text}: diagram has virtual crossings; use fpoly for the Kauffman-Jones polynomial"
        )
    methods = _methods(target, args.method)
    outcomes = [
        compute(target, m, args.cap, args.workers, strict=len(methods) == 1,
                need_pi=kind == "bracket")
        for m in methods
    ]

    def show(o: Outcome) -> str | None:
        poly = o.bracket if kind == "bracket" else o.value
        if poly is None:
            return None
        return _t_or_a(poly) if kind == "jones" else render(poly)

    code = EXIT_OK
    if not _brute_recur_agree(outcomes):
        code = EXIT_MISMATCH
    elif any(o.discrepancy is not None for o in outcomes):
        code = EXIT_DISCREPANCY

    if args.format == "json":
        doc = {
            "command": kind,
            "target": target.text,
            "results": [],
            "agree": _agree(outcomes),
        }
        for o in outcomes:
            row: dict = {"method": o.method}
            if o.skipped:
                row["status"] = "skipped"
                row["reason"] = o.skipped
            else:
                row["status"] = "discrepancy" if o.discrepancy else "ok"
                row["value"] = show(o)
                if o.pi is not None:
                    row["p"] = {str(i): render(p) for i, p in sorted(o.pi.items()) if p}
                if o.discrepancy is not None:
                    row["discrepancy"] = o.discrepancy.as_dict()
            doc["results"].append(row)
        print(json.dumps(doc, indent=2, sort_keys=True), file=out)
        return code

    single = len(outcomes) == 1
    for o in outcomes:
        head = "" if single else f"{o.method}: "
        if o.skipped:
            print(f"{head}SKIPPED ({o.skipped})", file=out)
            continue
        text = show(o)
        if kind == "bracket" and o.pi is not None:
            if not single:
                print(f"{o.method}:", file=out)
            ind = "" if single else "  "
            for line in _render_pi(o.pi, ind):
                print(line, file=out)
            print(f"{ind}<L> = {text}", file=out)
        elif text is not None:
            print(f"{head}{text}", file=out)
        if o.discrepancy is not None:
            label = f"{target.text} closed form"
            print(f"{head}" + (f"{label} discrepancy" if text is None else "discrepancy"), file=out)
            for line in o.discrepancy.render().splitlines():
                print(f"  {line.strip()}", file=out)
    if code == EXIT_MISMATCH:
        print("methods disagree", file=out)
    return code


def cmd_gen(args, out) -> int:
    target = resolve(args.target)
    text = serialize(target.diagram())
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_certify(args, out) -> int:
    target = resolve(args.target)
    if target.is_virtual():
        raise VirtualCrossingPresent(f"{target.text}: certificate needs a classical diagram")
    method = _methods(target, args.method)[0]
    if method == "closed":
        raise UsageError("certify uses brute or recur")
    o = compute(target, method, args.cap, args.workers, need_pi=False)
    v = substitute_t(o.value)
    verdict = analysis.alternating_certificate(
        target.crossing_count(), v, connected_irreducible=not args.not_reduced
    )
    if args.format == "json":
        doc = {"target": target.text, "jones": render_t(v), **verdict.as_dict()}
        print(json.dumps(doc, indent=2, sort_keys=True), file=out)
    else:
        print(f"jones: {render_t(v)}", file=out)
        print(f"crossings: {verdict.crossing_count}", file=out)
        print(f"breadth: {verdict.breadth_t}", file=out)
        print(f"verdict: {verdict.verdict} ({verdict.rationale})", file=out)
    return EXIT_OK


# -- verification ----------------------------------------------------------------


@dataclass
class Check:
    name: str
    status: str  # ok | mismatch | discrepancy
    detail: list[str] = field(default_factory=list)


def _cmp(name: str, want: LaurentPoly | str, got: LaurentPoly | None, var: str | None = None) -> Check:
    if isinstance(want, str):
        want = parse(want, var)
    if got == want:
        return Check(name, "ok")
    shown = "none" if got is None else (render_t(got) if var == "t" else render(got))
    show_want = render_t(want) if var == "t" else render(want)
    return Check(name, "mismatch", [f"expected {show_want}", f"got      {shown}"])


def _cmp_table(name: str, want: dict, got: dict) -> Check:
    want = {k: parse(v) for k, v in want.items()}
    diffs = []
    for key in sorted(set(want) | set(got), key=repr):
        w, g = want.get(key), got.get(key)
        if w is not None and (g is None or g != w):
            diffs.append(f"{key}: expected {render(w)}, got {'0' if g is None else render(g)}")
        elif w is None and g:
            diffs.append(f"{key}: unexpected {render(g)}")
    return Check(name, "mismatch" if diffs else "ok", diffs)


def _flat(tables: dict) -> dict:
    return {(label, i): p for label, t in tables.items() for i, p in t.items() if p}


def checks_basics() -> list[Check]:
    o = enumerate_pi(load_shipped("unknot1.lnk"))
    rt0 = build(FamilySpec("RT", 0))
    pi = enumerate_pi(rt0)
    br = bracket(pi)
    v = _normalize(br, writhe(rt0))
    return [
        _cmp_table("unknot O p-table", golden.UNKNOT_O_PI, dict(o.table)),
        _cmp_table("rt:0 p-table", golden.RT0_PI, dict(pi.table)),
        _cmp("rt:0 bracket", golden.RT0_BRACKET, br),
        _cmp("rt:0 jones (t)", golden.RT0_JONES_T, substitute_t(v), "t"),
        _cmp("rt:0 jones (A)", golden.RT0_JONES_A, v),
        Check("rt:0 writhe", "ok" if writhe(rt0) == golden.RT0_WRITHE else "mismatch",
              [] if writhe(rt0) == golden.RT0_WRITHE else [f"got {writhe(rt0)}"]),
    ]


def checks_seeds() -> list[Check]:
    out = []
    for fam, want in (("RT", golden.RT_SEEDS), ("RTV", golden.RTV_SEEDS), ("KV", golden.KV_SEEDS)):
        d = build(FamilySpec(fam, 0))
        out.append(_cmp_table(f"{fam.lower()}:0 class seeds (brute force)", want, _flat(class_tables(fam, 0, d))))
        out.append(_cmp_table(f"{fam.lower()}:0 class seeds (recursion)", want, _flat(RECURSIONS[fam](0).tables)))
    return out


def checks_transitions() -> list[Check]:
    ts = transitions("RT", build(FamilySpec("RT", 0)), build(FamilySpec("RT", 1)), 1)
    bad = []
    for t in ts:
        want = golden.RT_TRANSITIONS[t.parent_class, t.j]
        if want != (t.child_class, t.delta):
            bad.append(f"{t.parent_class} s_{t.j}: expected {want}, got {(t.child_class, t.delta)}")
    return [Check(f"rt:0 -> rt:1 transitions ({len(ts)} pairs)", "mismatch" if bad else "ok", bad)]


def checks_kv1() -> list[Check]:
    kv = recurrence.kv_pi(1)
    flat = _flat(kv.tables)
    out = []
    for case, want in ((1, golden.KV1_CASE1), (2, golden.KV1_CASE2), (3, golden.KV1_CASE3)):
        got = {k: p for k, p in flat.items() if k[0][0] == case}
        out.append(_cmp_table(f"kv:1 class tables, case {case}", want, got))
    out.append(_cmp_table("kv:1 folded f_i", golden.KV1_FOLDED, recurrence.fold(kv.total())))
    out.append(_cmp("kv:1 bracket", golden.KV1_BRACKET, recurrence.assemble_bracket(kv)))
    v = recurrence.assemble(kv)
    out.append(_cmp("kv:1 jones (A)", golden.KV1_JONES_A, v))
    out.append(_cmp("kv:1 jones (t)", golden.KV1_JONES_T, substitute_t(v), "t"))
    return out


def checks_methods(target: Target, cap: int, workers: int) -> list[Check]:
    outcomes = [compute(target, m, cap, workers, strict=False) for m in target.methods()]
    by = {o.method: o for o in outcomes}
    out = []
    b, r, c = by.get("brute"), by.get("recur"), by.get("closed")
    if b is not None and r is not None:
        if b.skipped:
            out.append(Check(f"{target.text} brute = recursion", "ok", [f"brute SKIPPED ({b.skipped})"]))
        else:
            chk = _cmp(f"{target.text} brute = recursion", b.value, r.value)
            if chk.status == "ok" and b.pi != r.pi:
                chk = Check(chk.name, "mismatch", ["p-tables differ"])
            out.append(chk)
    if c is not None:
        if c.discrepancy is None:
            out.append(Check(f"{target.text} closed form = recursion", "ok"))
        else:
            out.append(Check(f"{target.text} closed form = recursion", "discrepancy",
                             [ln.strip() for ln in c.discrepancy.render().splitlines()]))
    return out


def checks_closed_range(family: str, hi: int) -> list[Check]:
    lo = 1
    bad = [n for n in range(lo, hi + 1) if not CLOSED[family](n).agrees]
    name = f"{family.lower()} closed form = recursion, n={lo}..{hi}"
    if not bad:
        return [Check(name, "ok")]
    return [Check(name, "discrepancy", [f"differs at n = {', '.join(map(str, bad))}"])]


def checks_bounds(hi: int) -> list[Check]:
    out = []
    for n in range(1, hi + 1):
        rep = analysis.kv_degree_bound_check(n)
        out.append(Check(f"kv:{n} degree bounds of f_i", "ok" if rep.ok else "mismatch",
                         [f"f_{i}: {msg}" for i, msg in rep.violations]))
    return out


def verify_checks(target_text: str | None, cap: int, workers: int) -> list[Check]:
    if target_text in (None, "all"):
        checks = checks_basics() + checks_seeds() + checks_transitions() + checks_kv1()
        for fam, hi in (("rt", 3), ("rtv", 2), ("kv", 2)):
            for n in range(hi + 1):
                checks += checks_methods(resolve(f"{fam}:{n}"), cap, workers)
        checks += checks_closed_range("RT", 10) + checks_closed_range("RTV", 10)
        checks += checks_bounds(5)
        return checks
    target = resolve(target_text)
    if target.family is None:
        raise UsageError("verify needs a rt, rtv or kv family descriptor, or 'all'")
    fam, n = target.family, target.n
    checks = []
    if n == 0:
        if fam == "RT":
            checks += checks_basics()
        checks += [c for c in checks_seeds() if c.name.startswith(f"{fam.lower()}:0")]
    if fam == "RT" and n == 1:
        checks += checks_transitions()
    if fam == "KV" and n == 1:
        checks += checks_kv1()
    if fam == "KV" and n >= 1:
        checks += [c for c in checks_bounds(n) if c.name.startswith(f"kv:{n} ")]
    checks += checks_methods(target, cap, workers)
    return checks


def cmd_verify(args, out) -> int:
    checks = verify_checks(args.target, args.cap, args.workers)
    code = EXIT_OK
    if any(c.status == "mismatch" for c in checks):
        code = EXIT_MISMATCH
    elif any(c.status == "discrepancy" for c in checks):
        code = EXIT_DISCREPANCY
    if args.format == "json":
        doc = {
            "target": args.target or "all",
            "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in checks],
            "exit": code,
        }
        print(json.dumps(doc, indent=2, sort_keys=True), file=out)
        return code
    for c in checks:
        print(f"{c.status:<12} {c.name}", file=out)
        for line in c.detail:
            print(f"             {line}", file=out)
    counts = {s: sum(c.status == s for c in checks) for s in ("ok", "mismatch", "discrepancy")}
    print(f"{len(checks)} checks: {counts['ok']} ok, {counts['mismatch']} mismatch, "
          f"{counts['discrepancy']} discrepancy", file=out)
    return code


# -- bench -----------------------------------------------------------------------


def bench_rows(family: str, lo: int, hi: int, cap: int, workers: int) -> list[dict]:
    rows = []
    for n in range(lo, hi + 1):
        target = resolve(f"{family}:{n}")
        if target.family is None:
            raise UsageError("bench takes rt, rtv or kv")
        if "closed" not in target.methods():
            continue
        outs = {
            m: compute(target, m, cap, workers, strict=False, need_pi=False)
            for m in target.methods()
        }
        rows.append({
            "n": n,
            "brute_ms": None if outs["brute"].skipped else outs["brute"].ms,
            "recur_ms": outs["recur"].ms,
            "closed_ms": outs["closed"].ms,
            "agree": _agree(list(outs.values())),
        })
    return rows


def cmd_bench(args, out) -> int:
    fam = args.family.split(":")[0].lower()
    rows = bench_rows(fam, args.lo, args.hi, args.cap, args.workers)
    print("n,brute_ms,recur_ms,closed_ms,agree", file=out)
    for r in rows:
        brute = "SKIPPED" if r["brute_ms"] is None else f"{r['brute_ms']:.3f}"
        print(f"{r['n']},{brute},{r['recur_ms']:.3f},{r['closed_ms']:.3f},"
              f"{'yes' if r['agree'] else 'no'}", file=out)
    return EXIT_OK


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=1, help="processes for brute force")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="largest classical crossing count brute force will attempt")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="stategen", description="Kauffman bracket and Jones polynomial tools.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (("bracket", "p-table and Kauffman bracket"),
                        ("jones", "Jones polynomial"),
                        ("fpoly", "Kauffman-Jones polynomial (virtual links)")):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("target")
        sp.add_argument("--method", choices=("brute", "recur", "closed", "all"))
    sp = sub.add_parser("gen", parents=[common], help="write a family diagram")
    sp.add_argument("target")
    sp.add_argument("-o", "--output")
    sp = sub.add_parser("certify", parents=[common], help="non-alternating certificate")
    sp.add_argument("target")
    sp.add_argument("--method", choices=("brute", "recur"))
    sp.add_argument("--not-reduced", action="store_true",
                    help="do not assume the presentation is connected and reduced")
    sp = sub.add_parser("verify", parents=[common], help="run the golden-value checks")
    sp.add_argument("target", nargs="?")
    sp = sub.add_parser("bench", parents=[common], help="time brute force, recursion and closed form")
    sp.add_argument("family", help="rt, rtv or kv")
    sp.add_argument("--from", dest="lo", type=int, default=0)
    sp.add_argument("--to", dest="hi", type=int, default=3)
    return p


COMMANDS: dict[str, Callable] = {
    "bracket": cmd_invariant,
    "jones": cmd_invariant,
    "fpoly": cmd_invariant,
    "gen": cmd_gen,
    "certify": cmd_certify,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, DiagramError, BracketError, ParseError, ValueError) as e:
        print(f"stategen: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as e:
        print(f"stategen: error: {e.filename}: file not found", file=sys.stderr)
        return EXIT_INPUT


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
