"""Reference values, stored as rendered polynomial strings.

Everything here was printed alongside the constructions; ``verify`` and the
test-suite compare computed results against these strings after parsing.
"""

UNKNOT_O_PI = {1: "A^-1", 2: "A"}

RT0_PI = {1: "3*A", 2: "A^3 + 3*A^-1", 3: "A^-3"}
RT0_BRACKET = "-A^5 - A^-3 + A^-7"
RT0_JONES_T = "t + t^3 - t^4"
RT0_JONES_A = "A^-4 + A^-12 - A^-16"
RT0_WRITHE = 3

RT_SEEDS = {
    ("I", 1): "A",
    ("II", 2): "A^3",
    ("III", 2): "2*A^-1",
    ("III", 3): "A^-3",
    ("IV", 1): "2*A",
    ("IV", 2): "A^-1",
}

RTV_SEEDS = {
    ("I", 1): "1",
    ("II", 1): "A^2",
    ("III", 2): "A^-2",
    ("IV", 1): "1",
}

KV_SEEDS = {
    ((1, "I"), 3): "A^-6",
    ((2, "II"), 2): "3*A^-4",
    ((2, "II"), 3): "3*A^-2",
    ((2, "II"), 4): "1",
    ((3, "I"), 2): "3*A^-4",
    ((3, "I"), 3): "3*A^-2",
    ((3, "I"), 4): "1",
    ((3, "II"), 1): "9*A^-2",
    ((3, "II"), 2): "18",
    ((3, "II"), 3): "15*A^2",
    ((3, "II"), 4): "6*A^4",
    ((3, "II"), 5): "A^6",
}

# class p-tables of KV_1, keyed by ((case, subclass), loops)
KV1_CASE1 = {
    ((1, "I"), 3): "A^-10",
    ((1, "III"), 2): "2*A^-8",
    ((1, "II"), 2): "2*A^-8",
    ((1, "III"), 3): "A^-6",
    ((1, "II"), 3): "A^-6",
    ((1, "V"), 1): "4*A^-6",
    ((1, "V"), 2): "4*A^-4",
    ((1, "V"), 3): "A^-2",
}

KV1_CASE2 = {
    ((2, "I"), 1): "6*A^-6",
    ((2, "I"), 2): "9*A^-4",
    ((2, "I"), 3): "5*A^-2",
    ((2, "I"), 4): "1",
    ((2, "II"), 2): "12*A^-4 + 3*A^-8",
    ((2, "II"), 3): "24*A^-2 + 9*A^-6",
    ((2, "II"), 4): "19 + 10*A^-4",
    ((2, "II"), 5): "7*A^2 + 5*A^-2",
    ((2, "II"), 6): "A^4 + 1",
}

KV1_CASE3 = {
    ((3, "I"), 2): "18*A^-4 + 3*A^-8",
    ((3, "I"), 3): "9*A^-6 + 45*A^-2",
    ((3, "I"), 4): "48 + 10*A^-4",
    ((3, "I"), 5): "27*A^2 + 5*A^-2",
    ((3, "I"), 6): "8*A^4 + 1",
    ((3, "I"), 7): "A^6",
    ((3, "II"), 1): "36*A^-2 + 15*A^-6",
    ((3, "II"), 2): "108 + 57*A^-4",
    ((3, "II"), 3): "141*A^2 + 89*A^-2",
    ((3, "II"), 4): "74 + 102*A^4",
    ((3, "II"), 5): "43*A^6 + 35*A^2",
    ((3, "II"), 6): "10*A^8 + 9*A^4",
    ((3, "II"), 7): "A^10 + A^6",
}

# f_i = p_i (-A^2 - A^-2)^(i-1) for KV_1
KV1_FOLDED = {
    1: "36*A^-2 + 25*A^-6",
    2: "-108*A^2 - 208*A^-2 - 110*A^-6 - 10*A^-10",
    3: "141*A^6 + 446*A^2 + 469*A^-2 + 205*A^-6 + 22*A^-10 + A^-14",
    4: "-102*A^10 - 448*A^6 - 752*A^2 - 588*A^-2 - 202*A^-6 - 20*A^-10",
    5: "43*A^14 + 241*A^10 + 337*A^6 + 626*A^2 + 379*A^-2 + 109*A^-6 + 10*A^-10",
    6: "-10*A^18 - 68*A^14 - 192*A^10 - 290*A^6 - 250*A^2 - 120*A^-2 - 28*A^-6 - 2*A^-10",
    7: "A^22 + 8*A^18 + 27*A^14 + 50*A^10 + 55*A^6 + 36*A^2 + 14*A^-2 + 2*A^-6",
}

KV1_BRACKET = "A^22 - 2*A^18 + 2*A^14 - 3*A^10 + 2*A^6 - 2*A^2 + A^-2 + A^-6 + A^-14"
KV1_JONES_A = "A^52 - 2*A^48 + 2*A^44 - 3*A^40 + 2*A^36 - 2*A^32 + A^28 + A^24 + A^16"
KV1_JONES_T = (
    "t^-13 - 2*t^-12 + 2*t^-11 - 3*t^-10 + 2*t^-9 - 2*t^-8 + t^-7 + t^-6 + t^-4"
)
KV1_WRITHE = -10
KV1_CROSSINGS = 10

RTV0_F = "A^-4 + A^-6 - A^-10"

# (parent class, child index j) -> (child class, loop change) for RT_0 -> RT_1
RT_TRANSITIONS: dict[tuple[str, int], tuple[str, int]] = {}


def _fill(parent: str, rows: list[tuple[str, int, list[int]]]) -> None:
    for child, delta, js in rows:
        for j in js:
            RT_TRANSITIONS[parent, j] = (child, delta)


_fill("I", [
    ("I", 0, [11]), ("I", 1, [14, 15]), ("I", 2, [16]),
    ("II", 1, [4, 5]), ("II", 2, [1, 7, 8, 9, 10]), ("II", 3, [2, 3, 12, 13]), ("II", 4, [6]),
])
_fill("II", [
    ("I", -1, [14, 15]), ("I", 0, [16]),
    ("II", 0, [7, 8, 9, 10, 11]), ("II", 1, [2, 3, 4, 5, 12, 13]), ("II", 2, [1, 6]),
])
_fill("III", [
    ("III", 0, [11]), ("III", 1, [14, 15]), ("III", 2, [16]),
    ("IV", -1, [4, 5]), ("IV", 0, [1, 7, 8, 9, 10]), ("IV", 1, [2, 3, 12, 13]), ("IV", 2, [6]),
])
_fill("IV", [
    ("III", 1, [14, 15]), ("III", 2, [16]),
    ("IV", 0, [7, 8, 9, 10, 11]), ("IV", 1, [2, 3, 4, 5, 12, 13]), ("IV", 2, [1, 6]),
])
