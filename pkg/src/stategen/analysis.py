"""Breadth, degree bounds for the KV family, and a non-alternating certificate.

For a connected, reduced alternating diagram with m crossings the breadth of
the Jones polynomial equals m (Kauffman, Murasugi, Thistlethwaite).  So a
knot presented with m crossings whose Jones polynomial has breadth below m
cannot be alternating, provided the presentation is connected and reduced.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .laurent import LaurentPoly, ZeroPolynomial, degree_bounds
from . import recurrence

__all__ = [
    "CERTIFIED",
    "INCONCLUSIVE",
    "AlternatingVerdict",
    "BoundReport",
    "breadth_t",
    "alternating_certificate",
    "kv_degree_bound_check",
    "kv_breadth_bound",
]

CERTIFIED = "certified-non-alternating"
INCONCLUSIVE = "inconclusive"


def breadth_t(v: LaurentPoly) -> int:
    """Highest minus lowest exponent of a polynomial in t."""
    if v.is_zero():
        raise ZeroPolynomial("breadth of the zero polynomial")
    return v.max_exp - v.min_exp


@dataclass(frozen=True)
class AlternatingVerdict:
    crossing_count: int
    breadth_t: int
    verdict: str
    rationale: str

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def summary(self) -> str:
        return f"{self.verdict}: {self.rationale}"

    def as_dict(self) -> dict:
        return {
            "crossing_count": self.crossing_count,
            "breadth_t": self.breadth_t,
            "verdict": self.verdict,
            "rationale": self.rationale,
        }


def alternating_certificate(
    crossing_count: int, v: LaurentPoly, connected_irreducible: bool = True
) -> AlternatingVerdict:
    """Certify non-alternation when breadth < crossing count.

    ``connected_irreducible`` is the caller's word that the presentation is
    connected and reduced; it is not checked here.
    """
    br = breadth_t(v)
    if not connected_irreducible:
        return AlternatingVerdict(
            crossing_count, br, INCONCLUSIVE,
            "presentation not asserted connected and reduced",
        )
    if br < crossing_count:
        return AlternatingVerdict(
            crossing_count, br, CERTIFIED,
            f"breadth {br} < {crossing_count} crossings",
        )
    return AlternatingVerdict(
        crossing_count, br, INCONCLUSIVE,
        f"breadth {br} >= {crossing_count} crossings; the test only works one way",
    )


def kv_breadth_bound(n: int) -> int:
    return 3 * n + 6


@dataclass(frozen=True)
class BoundReport:
    n: int
    upper: int  # allowed highest A-exponent of every f_i
    lower: int  # allowed lowest A-exponent
    entries: tuple[tuple[int, int, int], ...]  # (i, highest, lowest)
    violations: tuple[tuple[int, str], ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations


def kv_degree_bound_check(n: int) -> BoundReport:
    """Degree bounds 8n+14 and -4n-10 on every folded term f_i of KV_n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    upper, lower = 8 * n + 14, -4 * n - 10
    entries = []
    bad = []
    for i, f in recurrence.fold(recurrence.kv_pi(n).total()).items():
        if f.is_zero():
            continue
        b = degree_bounds(f)
        entries.append((i, b.rho_h, b.rho_l))
        if b.rho_h > upper:
            bad.append((i, f"highest exponent {b.rho_h} > {upper}"))
        if b.rho_l < lower:
            bad.append((i, f"lowest exponent {b.rho_l} < {lower}"))
    return BoundReport(n, upper, lower, tuple(entries), tuple(bad))
