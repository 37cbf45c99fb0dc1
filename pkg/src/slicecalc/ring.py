"""Positive-cone ring structure on the cohomology of a point.

The ring is presented as

    Z[a_xi, a_xip, a_xiq, u_xi, u_xip, u_xiq] /
        (pq a_xi, q a_xip, p a_xiq,
         u_xi a_xip - p u_xip a_xi, u_xi a_xiq - q u_xiq a_xi)

Elements are kept in a normal form: no monomial contains both a_xip and
a_xiq, u_xi never meets a_xip or a_xiq, and each coefficient is reduced
modulo the additive order of its monomial.
"""

from __future__ import annotations

import re
from collections import deque
from math import gcd
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from . import intlinalg as il
from .abelian import FinAbGroup
from .cohomology import group_at, ring_degree_to_alpha
from .reps import GroupPQ

GENERATORS = ("a_xi", "a_xip", "a_xiq", "u_xi", "u_xip", "u_xiq")
DISPLAY_ORDER = ("u_xi", "u_xip", "u_xiq", "a_xi", "a_xip", "a_xiq")


class Monomial(NamedTuple):
    a_xi: int = 0
    a_xip: int = 0
    a_xiq: int = 0
    u_xi: int = 0
    u_xip: int = 0
    u_xiq: int = 0

    def __mul__(self, other):  # type: ignore[override]
        return Monomial(*(x + y for x, y in zip(self, other)))

    def is_normal(self) -> bool:
        both_euler = self.a_xip > 0 and self.a_xiq > 0
        return not both_euler and (self.u_xi == 0 or (self.a_xip == 0 and self.a_xiq == 0))

    def __str__(self) -> str:
        return format_monomial(self)


ONE = Monomial()
GEN = {name: Monomial(*(int(i == k) for i in range(6))) for k, name in enumerate(GENERATORS)}


class RODegree(NamedTuple):
    """The degree ``m xi + n xi_p + l xi_q - 2a``."""

    m: int
    n: int
    l: int
    a: int

    def __add__(self, other):  # type: ignore[override]
        return RODegree(*(x + y for x, y in zip(self, other)))

    @property
    def dim(self) -> int:
        return 2 * (self.m + self.n + self.l - self.a)


def degree_of(mono: Monomial) -> RODegree:
    return RODegree(
        mono.a_xi + mono.u_xi,
        mono.a_xip + mono.u_xip,
        mono.a_xiq + mono.u_xiq,
        mono.u_xi + mono.u_xip + mono.u_xiq,
    )


def annihilator(mono: Monomial, g: GroupPQ) -> int:
    """Generator of the ideal of integers killing ``mono`` via the torsion relations."""
    out = 0
    if mono.a_xi:
        out = gcd(out, g.p * g.q)
    if mono.a_xip:
        out = gcd(out, g.q)
    if mono.a_xiq:
        out = gcd(out, g.p)
    return out


def torsion_order(mono: Monomial, g: GroupPQ) -> int:
    """Additive order of a normal monomial (0 for infinite order)."""
    if not mono.is_normal():
        raise ValueError(f"{format_monomial(mono)} is not in normal form")
    if mono.a_xip:
        return g.q
    if mono.a_xiq:
        return g.p
    if mono.a_xi:
        return g.p * g.q
    return 0


@dataclass(frozen=True)
class RingElement:
    terms: tuple[tuple[Monomial, int], ...] = field(default=())

    @classmethod
    def from_dict(cls, d: dict[Monomial, int]) -> "RingElement":
        return cls(tuple(sorted(((Monomial(*m), c) for m, c in d.items() if c),
                                key=_sort_key)))

    @classmethod
    def monomial(cls, mono: Monomial, coeff: int = 1) -> "RingElement":
        return cls.from_dict({mono: coeff})

    @classmethod
    def scalar(cls, k: int) -> "RingElement":
        return cls.from_dict({ONE: k})

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> RODegree | None:
        """Common degree of all terms; None for zero; raises if inhomogeneous."""
        degs = {degree_of(m) for m, _ in self.terms}
        if len(degs) > 1:
            raise ValueError(f"{self} is not homogeneous")
        return degs.pop() if degs else None

    def __str__(self) -> str:
        return format_element(self)


def _sort_key(item):
    mono = item[0]
    return tuple(-getattr(mono, name) for name in DISPLAY_ORDER)


def _rewrite_term(mono: Monomial, coeff: int, g: GroupPQ) -> tuple[Monomial, int]:
    """Apply R1 > R2 > R3 until none fires.  A zero coefficient means the term died."""
    while True:
        b1, b2, b3, a1, a2, a3 = mono
        if b2 and b3:
            return mono, 0
        if a1 and b2:
            mono = Monomial(b1 + 1, b2 - 1, b3, a1 - 1, a2 + 1, a3)
            coeff *= g.p
        elif a1 and b3:
            mono = Monomial(b1 + 1, b2, b3 - 1, a1 - 1, a2, a3 + 1)
            coeff *= g.q
        else:
            return mono, coeff


def normalize(e: RingElement | dict, g: GroupPQ) -> RingElement:
    items = e.items() if isinstance(e, dict) else e.terms
    acc: dict[Monomial, int] = {}
    for mono, coeff in items:
        mono, coeff = _rewrite_term(Monomial(*mono), coeff, g)
        if coeff:
            acc[mono] = acc.get(mono, 0) + coeff
    out = {}
    for mono, coeff in acc.items():
        order = torsion_order(mono, g)
        if order:
            coeff %= order
        if coeff:
            out[mono] = coeff
    return RingElement.from_dict(out)


def add(x: RingElement, y: RingElement, g: GroupPQ) -> RingElement:
    acc = x.as_dict()
    for mono, coeff in y.terms:
        acc[mono] = acc.get(mono, 0) + coeff
    return normalize(acc, g)


def negate(x: RingElement, g: GroupPQ) -> RingElement:
    return normalize({m: -c for m, c in x.terms}, g)


def multiply(x: RingElement, y: RingElement, g: GroupPQ) -> RingElement:
    acc: dict[Monomial, int] = {}
    for m1, c1 in x.terms:
        for m2, c2 in y.terms:
            m = m1 * m2
            acc[m] = acc.get(m, 0) + c1 * c2
    return normalize(acc, g)


def power(x: RingElement, k: int, g: GroupPQ) -> RingElement:
    if k < 0:
        raise ValueError("negative powers are not defined in the positive cone")
    out = RingElement.scalar(1)
    for _ in range(k):
        out = multiply(out, x, g)
    return out


# -- rewriting as a nondeterministic system (used to check confluence) ------

def rewrite_steps(mono: Monomial, coeff: int, g: GroupPQ) -> list[tuple[str, Monomial | None, int]]:
    """Every single rewrite applicable to the term ``coeff * mono``.

    Steps are R1 (kill), R2, R3 and T (reduce the coefficient modulo the
    annihilator).  A step yielding ``None`` means the term became zero.
    """
    if coeff == 0:
        return []
    b1, b2, b3, a1, a2, a3 = mono
    steps: list[tuple[str, Monomial | None, int]] = []
    if b2 and b3:
        steps.append(("R1", None, 0))
    if a1 and b2:
        steps.append(("R2", Monomial(b1 + 1, b2 - 1, b3, a1 - 1, a2 + 1, a3), coeff * g.p))
    if a1 and b3:
        steps.append(("R3", Monomial(b1 + 1, b2, b3 - 1, a1 - 1, a2, a3 + 1), coeff * g.q))
    ann = annihilator(mono, g)
    if ann and not 0 <= coeff < ann:
        reduced = coeff % ann
        steps.append(("T", mono if reduced else None, reduced))
    return steps


def all_normal_forms(mono: Monomial, coeff: int, g: GroupPQ) -> set[tuple[Monomial, int] | None]:
    """Irreducible results over every rule-application order (exhaustive search)."""
    start = (mono, coeff)
    seen = {start}
    queue = deque([start])
    finals: set[tuple[Monomial, int] | None] = set()
    while queue:
        m, c = queue.popleft()
        steps = rewrite_steps(m, c, g)
        if not steps:
            finals.add((m, c) if c else None)
            continue
        for _, nm, nc in steps:
            if nm is None or nc == 0:
                finals.add(None)
                continue
            state = (nm, nc)
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return finals


# -- graded pieces ---------------------------------------------------------

def monomials_of_degree(d: RODegree) -> Iterator[Monomial]:
    m, n, l, a = d
    if min(m, n, l, a) < 0:
        return
    for a1 in range(min(m, a) + 1):
        for a2 in range(min(n, a - a1) + 1):
            a3 = a - a1 - a2
            if a3 <= l:
                yield Monomial(m - a1, n - a2, l - a3, a1, a2, a3)


def basis_of_degree(d: RODegree, g: GroupPQ) -> list[tuple[Monomial, int]]:
    """Normal monomials of degree ``d`` paired with their additive orders."""
    d = RODegree(*d)
    return [(mono, torsion_order(mono, g))
            for mono in monomials_of_degree(d) if mono.is_normal()]


def group_of_degree(d: RODegree, g: GroupPQ) -> FinAbGroup:
    return FinAbGroup.from_orders([order for _, order in basis_of_degree(d, g)])


def closed_form_basis(d: RODegree) -> set[Monomial]:
    """The three generator families written out explicitly.

    The first family uses ``a_xi^(m - a + n + l)``, which is what the degree
    count forces.
    """
    m, n, l, a = d
    out = set()
    if a >= l + n and m >= a - (l + n):
        out.add(Monomial(m - a + n + l, 0, 0, a - n - l, n, l))
    if a >= l and n >= a - l:
        out.add(Monomial(m, n - a + l, 0, 0, a - l, l))
    if a >= n and l >= a - n:
        out.add(Monomial(m, 0, l - a + n, 0, n, a - n))
    return {mono for mono in out if min(mono) >= 0}


class OracleBoundError(ValueError):
    pass


def snf_oracle(d: RODegree, g: GroupPQ, max_monomials: int = 20000) -> FinAbGroup:
    """Graded piece computed from the full presentation by Smith normal form.

    Works on every monomial of degree ``d`` (normal or not) and imposes each
    defining relation multiplied by every monomial that lands in degree d.
    """
    monos = list(monomials_of_degree(RODegree(*d)))
    if len(monos) > max_monomials:
        raise OracleBoundError(f"{len(monos)} monomials in degree {tuple(d)} exceeds "
                               f"the bound {max_monomials}")
    index = {mono: i for i, mono in enumerate(monos)}
    rels: list[dict[int, int]] = []
    for mono, i in index.items():
        b1, b2, b3, a1, a2, a3 = mono
        if b1:
            rels.append({i: g.p * g.q})
        if b2:
            rels.append({i: g.q})
        if b3:
            rels.append({i: g.p})
        if a1 and b2:
            j = index[Monomial(b1 + 1, b2 - 1, b3, a1 - 1, a2 + 1, a3)]
            rels.append({i: 1, j: -g.p})
        if a1 and b3:
            j = index[Monomial(b1 + 1, b2, b3 - 1, a1 - 1, a2, a3 + 1)]
            rels.append({i: 1, j: -g.q})
    return FinAbGroup(tuple(il.invariant_factors(rels, len(monos))))


@dataclass(frozen=True)
class SweepRow:
    degree: RODegree
    ring: FinAbGroup
    oracle: FinAbGroup
    table: FinAbGroup

    @property
    def match(self) -> bool:
        return self.ring == self.oracle == self.table


@dataclass(frozen=True)
class SweepReport:
    g: GroupPQ
    rows: tuple[SweepRow, ...]

    @property
    def mismatches(self) -> list[SweepRow]:
        return [r for r in self.rows if not r.match]

    @property
    def all_match(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        if self.all_match:
            return f"all match ({len(self.rows)} degrees, {self.g})"
        n = len(self.mismatches)
        lines = [f"{n} mismatch{'' if n == 1 else 'es'} out of {len(self.rows)} degrees:"]
        for r in self.mismatches:
            lines.append(f"  {tuple(r.degree)}: ring {r.ring}, oracle {r.oracle}, table {r.table}")
        return "\n".join(lines)


def degree_box(max_m: int, max_n: int, max_l: int, max_a: int) -> Iterator[RODegree]:
    for m in range(max_m + 1):
        for n in range(max_n + 1):
            for l in range(max_l + 1):
                for a in range(max_a + 1):
                    yield RODegree(m, n, l, a)


def phi_sweep(degrees: Iterable[RODegree], g: GroupPQ) -> SweepReport:
    """Compare the presented ring, its SNF oracle and the additive table."""
    rows = []
    for d in degrees:
        d = RODegree(*d)
        rows.append(SweepRow(
            d,
            group_of_degree(d, g),
            snf_oracle(d, g),
            group_at(ring_degree_to_alpha(*d), "G/G", g),
        ))
    return SweepReport(g, tuple(rows))


# -- text form ----------------------------------------------------------------

def format_monomial(mono: Monomial) -> str:
    parts = []
    for name in DISPLAY_ORDER:
        e = getattr(mono, name)
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "·".join(parts) if parts else "1"


def format_element(x: RingElement) -> str:
    if x.is_zero():
        return "0"
    out = ""
    for k, (mono, coeff) in enumerate(x.terms):
        mag = abs(coeff)
        if mono == ONE:
            body = str(mag)
        elif mag == 1:
            body = format_monomial(mono)
        else:
            body = f"{mag}·{format_monomial(mono)}"
        if k == 0:
            out = ("-" if coeff < 0 else "") + body
        else:
            out += (" - " if coeff < 0 else " + ") + body
    return out


class RingSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


_RING_TOKEN = re.compile(r"\s*(?:(?P<gen>[au]_xi[pq]?)|(?P<int>\d+)|(?P<op>[-+*·^()]))")


def parse_ring(text: str, g: GroupPQ) -> RingElement:
    """Evaluate an expression like ``"u_xi * a_xip"`` or ``"3·u_xip·a_xi + a_xi^2"``."""
    toks = []
    pos = 0
    while text[pos:].strip():
        mt = _RING_TOKEN.match(text, pos)
        if not mt:
            bad = len(text) - len(text[pos:].lstrip())
            raise RingSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = mt.lastgroup
        toks.append((kind, mt.group(kind), mt.start(kind)))
        pos = mt.end()
    toks.append(("end", "", len(text)))
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        tok = toks[i]
        i += 1
        return tok

    def parse_sum() -> RingElement:
        kind, val, _ = peek()
        sign = 1
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        acc = parse_product()
        if sign < 0:
            acc = negate(acc, g)
        while peek()[0] == "op" and peek()[1] in "+-":
            _, op, _ = take()
            rhs = parse_product()
            acc = add(acc, rhs if op == "+" else negate(rhs, g), g)
        return acc

    def parse_product() -> RingElement:
        acc = parse_power()
        while peek()[0] == "op" and peek()[1] in "*·":
            take()
            acc = multiply(acc, parse_power(), g)
        return acc

    def parse_power() -> RingElement:
        base = parse_atom()
        while peek()[0] == "op" and peek()[1] == "^":
            take()
            kind, val, p = take()
            if kind != "int":
                raise RingSyntaxError("expected an integer exponent", p)
            base = power(base, int(val), g)
        return base

    def parse_atom() -> RingElement:
        kind, val, p = take()
        if kind == "int":
            return normalize(RingElement.scalar(int(val)), g)
        if kind == "gen":
            return RingElement.monomial(GEN[val])
        if kind == "op" and val == "(":
            inner = parse_sum()
            kind2, val2, p2 = take()
            if (kind2, val2) != ("op", ")"):
                raise RingSyntaxError("expected ')'", p2)
            return inner
        raise RingSyntaxError(f"expected a generator, integer or '(' but found {val or 'end'!r}", p)

    result = parse_sum()
    kind, val, p = peek()
    if kind != "end":
        raise RingSyntaxError(f"unexpected {val!r}", p)
    return result


def parse_degree(text: str) -> RODegree:
    """``"m,n,l,a"`` -> RODegree."""
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"degree must be four comma-separated integers m,n,l,a; got {text!r}")
    try:
        return RODegree(*(int(s) for s in parts))
    except ValueError:
        raise ValueError(f"degree must be four comma-separated integers m,n,l,a; got {text!r}") from None
