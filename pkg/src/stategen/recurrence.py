"""State-generating transfer recursions for the RT_n, KV_n and RT'_n families.

Each family partitions its states into classes; appending one more block of
four crossings maps a class p-table at ``n - 1`` to the class p-tables at
``n``.  A transition is a list of terms ``(source class, d, coefficient)``
read as ``coefficient * p_{i-d, source}(n-1)``; entries with loop index below
1 are zero.  One step touches every (class, loop index) entry a bounded
number of times, so ``n`` steps cost O(n^2) polynomial operations instead of
the 2^(4n+c) states of a direct enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping

from .laurent import LaurentPoly, ZERO, loop_value, pack, substitute_t, unpack, NotAPowerOfT

__all__ = [
    "ClassifiedPi",
    "FAMILY_WRITHE",
    "RT_SEEDS",
    "RTV_SEEDS",
    "KV_SEEDS",
    "RT_STEP",
    "RTV_STEP",
    "KV_STEP",
    "KV_STEP_AS_PRINTED",
    "rt_pi",
    "kv_pi",
    "rtv_pi",
    "evolve",
    "assemble",
    "assemble_bracket",
    "fold",
    "transfer_bracket",
    "transfer_jones",
]

Label = Hashable
Step = Mapping[Label, list[tuple[Label, int, LaurentPoly]]]


def _p(terms: dict[int, int]) -> LaurentPoly:
    return LaurentPoly(terms)


_1 = _p({0: 1})


@dataclass(frozen=True)
class ClassifiedPi:
    family: str
    n: int
    tables: dict  # label -> {loop index: LaurentPoly}

    def labels(self) -> list:
        return list(self.tables)

    def get(self, label, i: int) -> LaurentPoly:
        return self.tables.get(label, {}).get(i, ZERO)

    def total(self) -> dict[int, LaurentPoly]:
        out: dict[int, LaurentPoly] = {}
        for table in self.tables.values():
            for i, p in table.items():
                out[i] = out.get(i, ZERO) + p
        return {i: p for i, p in sorted(out.items()) if p}

    def state_count(self) -> int:
        return sum(p.at_one() for p in self.total().values())

    def entry_count(self) -> int:
        return sum(len(t) for t in self.tables.values())

    def as_dict(self) -> dict:
        from .laurent import render

        def key(label):
            return label if isinstance(label, str) else "-".join(str(x) for x in label)

        return {
            "family": self.family,
            "n": self.n,
            "classes": {
                key(lab): {str(i): render(p) for i, p in sorted(t.items())}
                for lab, t in self.tables.items()
            },
        }


def evolve(tables: dict, step: Step) -> dict:
    """Apply one transfer step to a ``{label: {i: poly}}`` table."""
    out: dict = {}
    for label, terms in step.items():
        acc: dict[int, LaurentPoly] = {}
        for src, d, coef in terms:
            for j, p in tables.get(src, {}).items():
                i = j + d
                if i < 1:
                    continue
                acc[i] = acc.get(i, ZERO) + coef * p
        out[label] = {i: p for i, p in sorted(acc.items()) if p}
    return out


# RT_n: classes I..IV ------------------------------------------------------

RT_SEEDS = {
    "I": {1: _p({1: 1})},
    "II": {2: _p({3: 1})},
    "III": {2: _p({-1: 2}), 3: _p({-3: 1})},
    "IV": {1: _p({1: 2}), 2: _p({-1: 1})},
}

RT_STEP: Step = {
    "I": [
        ("I", 0, _1),
        ("I", 1, _p({-2: 2})),
        ("I", 2, _p({-4: 1})),
        ("II", -1, _p({-2: 2})),
        ("II", 0, _p({-4: 1})),
    ],
    "II": [
        ("I", 1, _p({2: 2})),
        ("I", 2, _p({4: 1, 0: 4})),
        ("I", 3, _p({2: 2, -2: 2})),
        ("I", 4, _1),
        ("II", 0, _p({0: 5})),
        ("II", 1, _p({2: 4, -2: 2})),
        ("II", 2, _p({4: 1, 0: 1})),
    ],
    "III": [
        ("III", 0, _1),
        ("III", 1, _p({-2: 2})),
        ("III", 2, _p({-4: 1})),
        ("IV", 1, _p({-2: 2})),
        ("IV", 2, _p({-4: 1})),
    ],
    "IV": [
        ("III", -1, _p({2: 2})),
        ("III", 0, _p({4: 1, 0: 4})),
        ("III", 1, _p({2: 2, -2: 2})),
        ("III", 2, _1),
        ("IV", 0, _p({0: 5})),
        ("IV", 1, _p({2: 4, -2: 2})),
        ("IV", 2, _p({4: 1, 0: 1})),
    ],
}

# RT'_n: x_3 virtual; the I <-> II coupling is shifted by one loop ----------

RTV_SEEDS = {
    "I": {1: _1},
    "II": {1: _p({2: 1})},
    "III": {2: _p({-2: 1})},
    "IV": {1: _1},
}

RTV_STEP: Step = {
    "I": [
        ("I", 0, _1),
        ("I", 1, _p({-2: 2})),
        ("I", 2, _p({-4: 1})),
        ("II", 0, _p({-2: 2})),
        ("II", 1, _p({-4: 1})),
    ],
    "II": [
        ("I", 0, _p({2: 2})),
        ("I", 1, _p({4: 1, 0: 4})),
        ("I", 2, _p({2: 2, -2: 2})),
        ("I", 3, _1),
        ("II", 0, _p({0: 5})),
        ("II", 1, _p({2: 4, -2: 2})),
        ("II", 2, _p({4: 1, 0: 1})),
    ],
    "III": RT_STEP["III"],
    "IV": RT_STEP["IV"],
}

# KV_n: nine classes (case, subclass) ---------------------------------------

KV_SEEDS = {
    (1, "I"): {3: _p({-6: 1})},
    (1, "II"): {},
    (1, "III"): {},
    (1, "IV"): {},
    (1, "V"): {},
    (2, "I"): {},
    (2, "II"): {2: _p({-4: 3}), 3: _p({-2: 3}), 4: _1},
    (3, "I"): {2: _p({-4: 3}), 3: _p({-2: 3}), 4: _1},
    (3, "II"): {1: _p({-2: 9}), 2: _p({0: 18}), 3: _p({2: 15}), 4: _p({4: 6}), 5: _p({6: 1})},
}


def _kv_step(ii_self: LaurentPoly, iv_self: LaurentPoly) -> Step:
    return {
        (1, "I"): [((1, "I"), 0, _p({-4: 1}))],
        (1, "II"): [
            ((1, "I"), -1, _p({-2: 2})),
            ((1, "I"), 0, _1),
            ((1, "II"), 0, ii_self),
            ((1, "II"), 1, _p({2: 4, -2: 2})),
            ((1, "II"), 2, _p({4: 1, 0: 1})),
            ((1, "IV"), 1, _p({-2: 2})),
            ((1, "IV"), 2, _p({0: 5})),
            ((1, "IV"), 3, _p({2: 4})),
            ((1, "IV"), 4, _p({4: 1})),
        ],
        (1, "III"): [
            ((1, "I"), -1, _p({-2: 2})),
            ((1, "I"), 0, _1),
            ((1, "III"), 0, _p({-4: 1})),
            ((1, "III"), 1, _p({-2: 2})),
            ((1, "III"), 2, _1),
            ((1, "V"), 1, _p({-2: 2})),
            ((1, "V"), 2, _1),
        ],
        (1, "IV"): [
            ((1, "II"), -1, _p({-2: 2})),
            ((1, "II"), 0, _1),
            ((1, "IV"), 0, iv_self),
            ((1, "IV"), 1, _p({-2: 2})),
            ((1, "IV"), 2, _1),
        ],
        (1, "V"): [
            ((1, "I"), -2, _p({0: 4})),
            ((1, "I"), -1, _p({2: 4})),
            ((1, "I"), 0, _p({4: 1})),
            ((1, "III"), -1, _p({-2: 2})),
            ((1, "III"), 0, _p({0: 5})),
            ((1, "III"), 1, _p({2: 4})),
            ((1, "III"), 2, _p({4: 1})),
            ((1, "V"), 0, _p({0: 4, -4: 1})),
            ((1, "V"), 1, _p({2: 4, -2: 2})),
            ((1, "V"), 2, _p({4: 1, 0: 1})),
        ],
        (2, "I"): [
            ((2, "I"), 0, _p({-4: 1})),
            ((2, "I"), 1, _p({-2: 2})),
            ((2, "I"), 2, _1),
            ((2, "II"), -1, _p({-2: 2})),
            ((2, "II"), 0, _1),
        ],
        (2, "II"): [
            ((2, "I"), 1, _p({-2: 2})),
            ((2, "I"), 2, _p({0: 5})),
            ((2, "I"), 3, _p({2: 4})),
            ((2, "I"), 4, _p({4: 1})),
            ((2, "II"), 0, _p({0: 4, -4: 1})),
            ((2, "II"), 1, _p({2: 4, -2: 2})),
            ((2, "II"), 2, _p({4: 1, 0: 1})),
        ],
        (3, "I"): [
            ((3, "I"), 0, _p({-4: 1})),
            ((3, "I"), 1, _p({-2: 2})),
            ((3, "I"), 2, _1),
            ((3, "II"), 1, _p({-2: 2})),
            ((3, "II"), 2, _1),
        ],
        (3, "II"): [
            ((3, "I"), -1, _p({-2: 2})),
            ((3, "I"), 0, _p({0: 5})),
            ((3, "I"), 1, _p({2: 4})),
            ((3, "I"), 2, _p({4: 1})),
            ((3, "II"), 0, _p({0: 4, -4: 1})),
            ((3, "II"), 1, _p({2: 4, -2: 2})),
            ((3, "II"), 2, _p({4: 1, 0: 1})),
        ],
    }


# The printed self-coefficients of classes (1,II) and (1,IV) read A^4 where
# the default block (all A^-1) contributes A^-4; see KV_STEP.
KV_STEP_AS_PRINTED: Step = _kv_step(_p({4: 1, 0: 4}), _p({4: 1}))
KV_STEP: Step = _kv_step(_p({-4: 1, 0: 4}), _p({-4: 1}))

FAMILY_WRITHE = {
    "RT": lambda n: 4 * n + 3,
    "KV": lambda n: -4 * n - 6,
    "RTV": lambda n: 4 * n + 2,
}


def _run(family: str, seeds: dict, step: Step, n: int) -> ClassifiedPi:
    if n < 0:
        raise ValueError("n must be nonnegative")
    tables = {k: dict(v) for k, v in seeds.items()}
    for _ in range(n):
        tables = evolve(tables, step)
    return ClassifiedPi(family, n, tables)


def rt_pi(n: int) -> ClassifiedPi:
    return _run("RT", RT_SEEDS, RT_STEP, n)


def rtv_pi(n: int) -> ClassifiedPi:
    return _run("RTV", RTV_SEEDS, RTV_STEP, n)


def kv_pi(n: int, step: Step | None = None) -> ClassifiedPi:
    return _run("KV", KV_SEEDS, KV_STEP if step is None else step, n)


def fold(pi: Mapping[int, LaurentPoly]) -> dict[int, LaurentPoly]:
    """``f_i = p_i * (-A^2 - A^-2)^(i-1)`` for every nonzero ``p_i``."""
    d = loop_value()
    return {i: p * d ** (i - 1) for i, p in sorted(pi.items()) if p}


def assemble_bracket(cp: ClassifiedPi) -> LaurentPoly:
    # Horner in the loop value: p_1 + d (p_2 + d (p_3 + ...))
    total = cp.total()
    if not total:
        return ZERO
    d = loop_value()
    acc = ZERO
    for i in range(max(total), 0, -1):
        acc = acc * d + total.get(i, ZERO)
    return acc


def assemble(cp: ClassifiedPi) -> LaurentPoly:
    """``(-A)^(-3w) <L>`` with the family's writhe; returned in ``A``."""
    w = FAMILY_WRITHE[cp.family](cp.n)
    sign = -1 if (3 * w) % 2 else 1
    return assemble_bracket(cp).shift(-3 * w) * sign


def assemble_t(cp: ClassifiedPi) -> LaurentPoly | None:
    try:
        return substitute_t(assemble(cp))
    except NotAPowerOfT:
        return None


# -- bracket-only transfer ------------------------------------------------------
#
# When only the bracket is wanted the loop index can be folded in as it goes.
# With m_X the smallest loop index class X can ever reach, keep
#     C_X = sum_i p_{i,X} d^(i - m_X),   d = -A^2 - A^-2.
# A term (src, k, coef) then contributes coef * d^(k + m_src - m_tgt) * C_src,
# and the exponent is never negative because m_tgt <= m_src + k.  Grouping the
# terms by (target, source) leaves one multiplier per pair, and the bracket is
# sum_X d^(m_X - 1) C_X.  The C_X are carried as packed integers, so a step is
# a handful of big-integer products.

_INF = 1 << 30


def _lower_bounds(seeds: dict, step: Step) -> dict | None:
    seedmin = {lab: min((i for i, p in t.items() if p), default=_INF) for lab, t in seeds.items()}
    m = {lab: seedmin.get(lab, _INF) for lab in step}
    changed = True
    while changed:
        changed = False
        for tgt, terms in step.items():
            cand = min((m[src] + k for src, k, _ in terms if m[src] < _INF), default=_INF)
            new = min(m[tgt], cand)
            if new < 1:
                return None  # some entry could fall below one loop
            if new != m[tgt]:
                m[tgt], changed = new, True
    return m


def _norm1(p: LaurentPoly) -> int:
    return sum(abs(c) for _, c in p.items())


def _max_abs(p: LaurentPoly) -> int:
    return max(-p.min_exp, p.max_exp) if p else 0


def _transfer(seeds: dict, step: Step, n: int) -> LaurentPoly:
    m = _lower_bounds(seeds, step)
    if m is None:
        raise ValueError("recursion may truncate; use the full p-table")
    live = [lab for lab in step if m[lab] < _INF]
    d = loop_value()
    mult: dict = {}
    for tgt in live:
        for src, k, coef in step[tgt]:
            if m[src] < _INF:
                mult[tgt, src] = mult.get((tgt, src), ZERO) + coef * d ** (k + m[src] - m[tgt])
    c0 = {
        lab: sum((p * d ** (i - m[lab]) for i, p in seeds.get(lab, {}).items()), ZERO)
        for lab in live
    }
    out_w = {lab: d ** (m[lab] - 1) for lab in live}

    # coefficient and exponent bounds for the packing
    norms = {lab: _norm1(c0[lab]) for lab in live}
    top = max(norms.values(), default=1)
    for _ in range(n):
        norms = {
            tgt: sum(_norm1(mult[tgt, src]) * norms[src] for src in live if (tgt, src) in mult)
            for tgt in live
        }
        top = max(top, max(norms.values(), default=0))
    top = max(top, sum(_norm1(out_w[lab]) * norms[lab] for lab in live))
    width = 8 * ((top.bit_length() + 9) // 8)
    step_e = max((_max_abs(q) for q in mult.values()), default=0)
    offset = max((_max_abs(c) for c in c0.values()), default=0) + n * step_e
    offset += max(_max_abs(w) for w in out_w.values())

    packed_mult = {
        key: (pack(q, -q.min_exp, width), q.min_exp * width)
        for key, q in mult.items() if q
    }
    state = {lab: pack(c0[lab], offset, width) for lab in live}
    for _ in range(n):
        nxt = {}
        for tgt in live:
            acc = 0
            for src in live:
                pm = packed_mult.get((tgt, src))
                if pm is None or not state[src]:
                    continue
                y = state[src] * pm[0]
                acc += y << pm[1] if pm[1] >= 0 else y >> -pm[1]
            nxt[tgt] = acc
        state = nxt
    total = 0
    for lab in live:
        w = out_w[lab]
        y = state[lab] * pack(w, -w.min_exp, width)
        sh = w.min_exp * width
        total += y << sh if sh >= 0 else y >> -sh
    return unpack(total, offset, width)


_FAMILY_TABLES = {
    "RT": (RT_SEEDS, lambda: RT_STEP),
    "RTV": (RTV_SEEDS, lambda: RTV_STEP),
    "KV": (KV_SEEDS, lambda: KV_STEP),
}


def transfer_bracket(family: str, n: int) -> LaurentPoly:
    """The family bracket at ``n`` without materializing the p-table."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    seeds, step = _FAMILY_TABLES[family]
    return _transfer(seeds, step(), n)


def transfer_jones(family: str, n: int) -> LaurentPoly:
    """Writhe-normalized value in A, as :func:`assemble` but much faster."""
    w = FAMILY_WRITHE[family](n)
    return transfer_bracket(family, n).shift(-3 * w) * (-1 if w % 2 else 1)
