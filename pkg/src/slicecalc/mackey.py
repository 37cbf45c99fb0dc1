"""Mackey functors for C_p and C_pq as Lewis diagrams.

A C_pq-Mackey functor is stored by its values on the four orbits and the
restriction/transfer matrices along the four covering inclusions

    C_p < G,  C_q < G,  e < C_p,  e < C_q

in invariant-factor coordinates.  Weyl actions are taken to be trivial,
which holds for every functor built here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable

from . import intlinalg as il
from .abelian import (FinAbGroup, ZERO, Z, is_well_defined, kernel, induced_map,
                      maps_equal, normalize, reduce_map, transport)
from .intlinalg import IntMatrix
from .reps import GroupPQ

ORBITS = ("G/G", "G/Cp", "G/Cq", "G/e")
# (upper, lower) pairs; restriction goes upper -> lower.
EDGES = (("G/G", "G/Cp"), ("G/G", "G/Cq"), ("G/Cp", "G/e"), ("G/Cq", "G/e"))
NAMES = ("R_pq", "L_pq", "KpLp", "KqLq", "KpZmodP", "KqZmodQ")


def edge_key(edge: tuple[str, str]) -> str:
    upper, lower = edge
    return f"{lower}->{upper}"


def subgroup_order(orbit: str, g: GroupPQ) -> int:
    return {"G/G": g.order, "G/Cp": g.p, "G/Cq": g.q, "G/e": 1}[orbit]


def edge_index(edge: tuple[str, str], g: GroupPQ) -> int:
    upper, lower = edge
    return subgroup_order(upper, g) // subgroup_order(lower, g)


def subgroups_below(orbit: str) -> tuple[str, ...]:
    return {
        "G/G": ("G/G", "G/Cp", "G/Cq", "G/e"),
        "G/Cp": ("G/Cp", "G/e"),
        "G/Cq": ("G/Cq", "G/e"),
        "G/e": ("G/e",),
    }[orbit]


@dataclass(frozen=True)
class CpMackey:
    top: FinAbGroup
    bottom: FinAbGroup
    res: IntMatrix  # bottom.ngens x top.ngens
    tr: IntMatrix  # top.ngens x bottom.ngens
    prime: int
    name: str = ""


def _scalar(k: int, src: FinAbGroup, tgt: FinAbGroup) -> IntMatrix:
    if src.ngens and tgt.ngens:
        return reduce_map(((k,),), tgt)
    return il.zeros(tgt.ngens, src.ngens)


def base_cp(name: str, prime: int) -> CpMackey:
    """The C_p functors L, R and <Z/p> of the Lewis diagrams."""
    if name == "L":
        return CpMackey(Z, Z, ((prime,),), ((1,),), prime, "L")
    if name == "R":
        return CpMackey(Z, Z, ((1,),), ((prime,),), prime, "R")
    if name in ("ZmodP", "Zmod"):
        top = FinAbGroup((prime,))
        return CpMackey(top, ZERO, _scalar(0, top, ZERO), _scalar(0, ZERO, top),
                        prime, "ZmodP")
    raise ValueError(f"unknown C_p Mackey functor {name!r}")


@dataclass(frozen=True, eq=False)
class PqMackey:
    g: GroupPQ
    values: dict[str, FinAbGroup]
    res: dict[tuple[str, str], IntMatrix]
    tr: dict[tuple[str, str], IntMatrix]
    name: str = ""

    def __post_init__(self):
        for upper, lower in EDGES:
            src, tgt = self.values[upper], self.values[lower]
            r, t = self.res[(upper, lower)], self.tr[(upper, lower)]
            if len(r) != tgt.ngens or any(len(row) != src.ngens for row in r):
                raise ValueError(f"res {edge_key((upper, lower))} has wrong shape")
            if len(t) != src.ngens or any(len(row) != tgt.ngens for row in t):
                raise ValueError(f"tr {edge_key((upper, lower))} has wrong shape")

    def group(self, orbit: str) -> FinAbGroup:
        return self.values[orbit]

    def restriction(self, upper: str, lower: str) -> IntMatrix:
        """Composite restriction M(G/H) -> M(G/J) for J <= H."""
        if upper == lower:
            return il.identity(self.values[upper].ngens)
        if (upper, lower) in self.res:
            return self.res[(upper, lower)]
        if (upper, lower) == ("G/G", "G/e"):
            mid = self.values["G/Cp"]
            out = il.matmul(self.res[("G/Cp", "G/e")], self.res[("G/G", "G/Cp")],
                            mid.ngens, self.values["G/G"].ngens)
            return reduce_map(out, self.values["G/e"])
        raise ValueError(f"G/{lower[2:]} is not below G/{upper[2:]}")

    def __eq__(self, other):
        if not isinstance(other, PqMackey):
            return NotImplemented
        if self.g != other.g or self.values != other.values:
            return False
        return all(
            maps_equal(self.res[e], other.res[e], self.values[e[1]])
            and maps_equal(self.tr[e], other.tr[e], self.values[e[0]])
            for e in EDGES
        )

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "group": [self.g.p, self.g.q],
            "values": {o: self.values[o].to_list() for o in ORBITS},
            "res": {edge_key(e): [list(r) for r in self.res[e]] for e in EDGES},
            "tr": {edge_key(e): [list(r) for r in self.tr[e]] for e in EDGES},
        }

    def describe(self) -> str:
        return ", ".join(f"{o}: {self.values[o]}" for o in ORBITS)


def zero_functor(g: GroupPQ, name: str = "Zero") -> PqMackey:
    vals = {o: ZERO for o in ORBITS}
    return PqMackey(g, vals, {e: () for e in EDGES}, {e: () for e in EDGES}, name)


def _from_decomposition(g, orders, res, tr, name) -> PqMackey:
    """Build a functor from (possibly non-normalized) cyclic decompositions."""
    norm = {o: normalize(orders[o]) for o in ORBITS}
    vals = {o: norm[o][0] for o in ORBITS}
    new_res, new_tr = {}, {}
    for upper, lower in EDGES:
        gu, to_u, back_u = norm[upper]
        gl, to_l, back_l = norm[lower]
        nu, nl = len(orders[upper]), len(orders[lower])
        new_res[(upper, lower)] = transport(res[(upper, lower)], back_u, to_l,
                                            nu, nl, gu.ngens, gl)
        new_tr[(upper, lower)] = transport(tr[(upper, lower)], back_l, to_u,
                                           nl, nu, gl.ngens, gu)
    return PqMackey(g, vals, new_res, new_tr, name)


def tensor(mp: CpMackey, mq: CpMackey, g: GroupPQ, name: str = "") -> PqMackey:
    """The C_pq functor ``mp (x) mq`` through C_pq = C_p x C_q."""
    if mp.prime != g.p or mq.prime != g.q:
        raise ValueError(f"tensor needs a C_{g.p} and a C_{g.q} functor, "
                         f"got C_{mp.prime} and C_{mq.prime}")
    # orbit -> (C_p level, C_q level)
    levels = {
        "G/G": (mp.top, mq.top),
        "G/Cp": (mp.top, mq.bottom),
        "G/Cq": (mp.bottom, mq.top),
        "G/e": (mp.bottom, mq.bottom),
    }
    orders = {
        o: [gcd(x, y) for x in a.invariant_factors for y in b.invariant_factors]
        for o, (a, b) in levels.items()
    }
    ip_top, ip_bot = il.identity(mp.top.ngens), il.identity(mp.bottom.ngens)
    iq_top, iq_bot = il.identity(mq.top.ngens), il.identity(mq.bottom.ngens)
    pt, pb, qt, qb = mp.top.ngens, mp.bottom.ngens, mq.top.ngens, mq.bottom.ngens
    res = {
        ("G/G", "G/Cp"): il.kron(ip_top, mq.res, pt, qt),
        ("G/G", "G/Cq"): il.kron(mp.res, iq_top, pt, qt),
        ("G/Cp", "G/e"): il.kron(mp.res, iq_bot, pt, qb),
        ("G/Cq", "G/e"): il.kron(ip_bot, mq.res, pb, qt),
    }
    tr = {
        ("G/G", "G/Cp"): il.kron(ip_top, mq.tr, pt, qb),
        ("G/G", "G/Cq"): il.kron(mp.tr, iq_top, pb, qt),
        ("G/Cp", "G/e"): il.kron(mp.tr, iq_bot, pb, qb),
        ("G/Cq", "G/e"): il.kron(ip_bot, mq.tr, pb, qb),
    }
    label = name or f"{mp.name}⊗{mq.name}"
    return _from_decomposition(g, orders, res, tr, label)


_RECIPES = {
    "R_pq": ("R", "R"),
    "L_pq": ("L", "L"),
    "KpLp": ("L", "R"),
    "KqLq": ("R", "L"),
    "KpZmodP": ("ZmodP", "R"),
    "KqZmodQ": ("R", "ZmodP"),
}


@lru_cache(maxsize=None)
def named(name: str, g: GroupPQ) -> PqMackey:
    """One of the functors appearing in the cohomology of a point."""
    if name == "Zero":
        return zero_functor(g)
    if "⊕" in name:
        left, right = name.split("⊕")
        return direct_sum(named(left, g), named(right, g), name)
    try:
        cp_name, cq_name = _RECIPES[name]
    except KeyError:
        raise ValueError(f"unknown functor {name!r}; expected one of {NAMES}") from None
    return tensor(base_cp(cp_name, g.p), base_cp(cq_name, g.q), g, name)


def direct_sum(m1: PqMackey, m2: PqMackey, name: str = "") -> PqMackey:
    if m1.g != m2.g:
        raise ValueError("direct sum of functors for different groups")
    orders = {o: list(m1.values[o].invariant_factors + m2.values[o].invariant_factors)
              for o in ORBITS}
    res, tr = {}, {}
    for e in EDGES:
        u, l = e
        nu1, nl1 = m1.values[u].ngens, m1.values[l].ngens
        nu2, nl2 = m2.values[u].ngens, m2.values[l].ngens
        res[e] = il.block_diag(m1.res[e], m2.res[e], nu1, nu2)
        tr[e] = il.block_diag(m1.tr[e], m2.tr[e], nl1, nl2)
    return _from_decomposition(m1.g, orders, res, tr, name or f"{m1.name}⊕{m2.name}")


def _composite(m: PqMackey, a: IntMatrix, b: IntMatrix, inner: str, src: str, tgt: str):
    out = il.matmul(a, b, m.values[inner].ngens, m.values[src].ngens)
    return reduce_map(out, m.values[tgt])


def _scalar_map(m: PqMackey, orbit: str, k: int) -> IntMatrix:
    n = m.values[orbit].ngens
    return tuple(tuple(k if i == j else 0 for j in range(n)) for i in range(n))


def is_cohomological(m: PqMackey) -> bool:
    """tr o res is multiplication by the index on every covering edge."""
    for e in EDGES:
        upper, lower = e
        comp = _composite(m, m.tr[e], m.res[e], lower, upper, upper)
        if not maps_equal(comp, _scalar_map(m, upper, edge_index(e, m.g)), m.values[upper]):
            return False
    return True


def axiom_violations(m: PqMackey) -> list[str]:
    """Mackey-axiom failures (with trivial Weyl actions), as messages."""
    out = []
    v = m.values
    for e in EDGES:
        upper, lower = e
        if not is_well_defined(m.res[e], v[upper], v[lower]):
            out.append(f"res {edge_key(e)} is not well defined")
        if not is_well_defined(m.tr[e], v[lower], v[upper]):
            out.append(f"tr {edge_key(e)} is not well defined")
    if out:
        return out
    for e in EDGES:
        upper, lower = e
        comp = _composite(m, m.res[e], m.tr[e], upper, lower, lower)
        if not maps_equal(comp, _scalar_map(m, lower, edge_index(e, m.g)), v[lower]):
            out.append(f"res o tr on {lower} along {edge_key(e)} is not the index")
    via_p = _composite(m, m.res[("G/Cp", "G/e")], m.res[("G/G", "G/Cp")], "G/Cp", "G/G", "G/e")
    via_q = _composite(m, m.res[("G/Cq", "G/e")], m.res[("G/G", "G/Cq")], "G/Cq", "G/G", "G/e")
    if not maps_equal(via_p, via_q, v["G/e"]):
        out.append("restrictions G/G -> G/e through C_p and C_q disagree")
    via_p = _composite(m, m.tr[("G/G", "G/Cp")], m.tr[("G/Cp", "G/e")], "G/Cp", "G/e", "G/G")
    via_q = _composite(m, m.tr[("G/G", "G/Cq")], m.tr[("G/Cq", "G/e")], "G/Cq", "G/e", "G/G")
    if not maps_equal(via_p, via_q, v["G/G"]):
        out.append("transfers G/e -> G/G through C_p and C_q disagree")
    # double coset formula: res^G_{C_q} tr^G_{C_p} = tr^{C_q}_e res^{C_p}_e
    for a, b in (("G/Cp", "G/Cq"), ("G/Cq", "G/Cp")):
        lhs = _composite(m, m.res[("G/G", b)], m.tr[("G/G", a)], "G/G", a, b)
        rhs = _composite(m, m.tr[(b, "G/e")], m.res[(a, "G/e")], "G/e", a, b)
        if not maps_equal(lhs, rhs, v[b]):
            out.append(f"double coset formula fails from {a} to {b}")
    return out


def cohmac_check(m: PqMackey) -> bool:
    """For cohomological ``m`` vanishing at G/Cp and G/Cq: is it zero?"""
    if not is_cohomological(m):
        raise ValueError(f"{m.name or 'functor'} is not cohomological")
    if not (m.values["G/Cp"].is_zero() and m.values["G/Cq"].is_zero()):
        raise ValueError(f"{m.name or 'functor'} does not vanish at G/Cp and G/Cq")
    return m.values["G/G"].is_zero() and m.values["G/e"].is_zero()


def filtration(m: PqMackey, k: int | Fraction) -> PqMackey:
    """Sub-functor of elements restricting to zero on every J with |J| <= k.

    ``k`` may be rational; only the comparison ``|J| <= k`` matters.
    """
    if k < 0:
        raise ValueError("filtration index must be nonnegative")
    subs: dict[str, tuple[FinAbGroup, IntMatrix]] = {}
    for orbit in ORBITS:
        constraints = [
            (m.restriction(orbit, j), m.values[j])
            for j in subgroups_below(orbit)
            if subgroup_order(j, m.g) <= k
        ]
        subs[orbit] = kernel(m.values[orbit], constraints)
    vals = {o: subs[o][0] for o in ORBITS}
    res, tr = {}, {}
    for e in EDGES:
        upper, lower = e
        (gu, iu), (gl, ilow) = subs[upper], subs[lower]
        res[e] = induced_map(m.res[e], iu, gu, ilow, m.values[lower], gl,
                             m.values[upper].ngens)
        tr[e] = induced_map(m.tr[e], ilow, gl, iu, m.values[upper], gu,
                            m.values[lower].ngens)
    return PqMackey(m.g, vals, res, tr, f"F^{k} {m.name}".strip())


def orders_at(m: PqMackey) -> dict[str, tuple[int, ...]]:
    return {o: m.values[o].invariant_factors for o in ORBITS}


def all_named(g: GroupPQ) -> Iterable[PqMackey]:
    return (named(n, g) for n in NAMES)
