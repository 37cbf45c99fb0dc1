"""Mackey-functor valued cohomology of a point with constant coefficients.

The answer depends only on the dimension of alpha and of its C_p and C_q
fixed points, through the case table in :data:`ROWS`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

from .abelian import FinAbGroup
from .mackey import ORBITS, PqMackey, named
from .reps import GroupPQ, Quadruple, invariants


class Row(NamedTuple):
    index: int
    functor: str
    condition: str
    test: Callable[[int, int, int], bool]


def _odd(d):
    return d % 2 == 1


def _even(d):
    return d % 2 == 0


SUM = "KpZmodP⊕KqZmodQ"

# Arguments are (|alpha|, |alpha^{C_p}|, |alpha^{C_q}|); parity is read off |alpha|.
ROWS: tuple[Row, ...] = (
    Row(1, "KpZmodP", "|a|<0, |a^Cp|>1, |a^Cq|<=1, odd",
        lambda d, fp, fq: d < 0 and fp > 1 and fq <= 1 and _odd(d)),
    Row(2, "KqZmodQ", "|a|<0, |a^Cp|<=1, |a^Cq|>1, odd",
        lambda d, fp, fq: d < 0 and fp <= 1 and fq > 1 and _odd(d)),
    Row(3, SUM, "|a|<0, |a^Cp|>1, |a^Cq|>1, odd",
        lambda d, fp, fq: d < 0 and fp > 1 and fq > 1 and _odd(d)),
    Row(4, SUM, "|a|>0, |a^Cp|<=0, |a^Cq|<=0, even",
        lambda d, fp, fq: d > 0 and fp <= 0 and fq <= 0 and _even(d)),
    Row(5, "KpZmodP", "|a|>0, |a^Cp|<=0, |a^Cq|>0, even",
        lambda d, fp, fq: d > 0 and fp <= 0 and fq > 0 and _even(d)),
    Row(6, "KqZmodQ", "|a|>0, |a^Cp|>0, |a^Cq|<=0, even",
        lambda d, fp, fq: d > 0 and fp > 0 and fq <= 0 and _even(d)),
    Row(7, "R_pq", "|a|=0, |a^Cp|<=0, |a^Cq|<=0",
        lambda d, fp, fq: d == 0 and fp <= 0 and fq <= 0),
    Row(8, "L_pq", "|a|=0, |a^Cp|>0, |a^Cq|>0",
        lambda d, fp, fq: d == 0 and fp > 0 and fq > 0),
    Row(9, "KpLp", "|a|=0, |a^Cp|>0, |a^Cq|<=0",
        lambda d, fp, fq: d == 0 and fp > 0 and fq <= 0),
    Row(10, "KqLq", "|a|=0, |a^Cp|<=0, |a^Cq|>0",
        lambda d, fp, fq: d == 0 and fp <= 0 and fq > 0),
)
FALLTHROUGH = 11


@dataclass(frozen=True)
class CohomologyAnswer:
    alpha: Quadruple
    functor_name: str
    functor: PqMackey
    row: int

    def group(self, orbit: str) -> FinAbGroup:
        return self.functor.group(orbit)

    def to_json(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "alpha_str": str(self.alpha),
            "functor_name": self.functor_name,
            "row": self.row,
            "functor": self.functor.to_json(),
        }


def matching_rows(alpha: Quadruple) -> list[int]:
    """Indices of every table row whose condition holds (for exclusivity checks)."""
    inv = invariants(alpha)
    return [r.index for r in ROWS if r.test(inv.dim, inv.fixed_p, inv.fixed_q)]


def point_cohomology(alpha: Quadruple, g: GroupPQ) -> CohomologyAnswer:
    alpha = Quadruple(*alpha)
    hits = matching_rows(alpha)
    if len(hits) > 1:  # pragma: no cover - guarded by tests
        raise AssertionError(f"rows {hits} overlap at {alpha}")
    if not hits:
        return CohomologyAnswer(alpha, "Zero", named("Zero", g), FALLTHROUGH)
    row = ROWS[hits[0] - 1]
    return CohomologyAnswer(alpha, row.functor, named(row.functor, g), row.index)


def group_at(alpha: Quadruple, orbit: str, g: GroupPQ) -> FinAbGroup:
    if orbit not in ORBITS:
        raise ValueError(f"unknown orbit {orbit!r}; expected one of {ORBITS}")
    return point_cohomology(alpha, g).group(orbit)


def ring_degree_to_alpha(m: int, n: int, l: int, a: int) -> Quadruple:
    """``m xi + n xi_p + l xi_q - 2a`` as a quadruple."""
    return Quadruple(-2 * a, m, n, l)
