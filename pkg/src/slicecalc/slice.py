"""Slice towers of S^alpha smash HZ over C_pq.

Each restriction to C_p or C_q is tested against a window of admissible
fixed dimensions.  When a restriction sits too high, the tower climbs down
by u_{xi - xi^p} steps whose fibers are suspensions of HK_p<Z/p>; when it sits
too low the same happens below the spherical slice.  Steps at different
primes commute, so each prime is handled on its own and the cells are
merged by dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import NamedTuple, Union

from .mackey import named, orders_at, filtration
from .reps import GroupPQ, Quadruple, restrict, rho_shift

SLICE, GE, LE = "slice", "ge", "le"


def k_functor(prime: int, g: GroupPQ) -> str:
    return "KpZmodP" if g.index(prime) == "p" else "KqZmodQ"


def u_label(prime: int, g: GroupPQ) -> str:
    return "u_{xi-xi^p}" if g.index(prime) == "p" else "u_{xi-xi^q}"


class Spherical(NamedTuple):
    beta: Quadruple


class EM(NamedTuple):
    """Sigma^suspension HK_prime<Z/prime>."""

    prime: int
    suspension: int


class Wedge(NamedTuple):
    parts: tuple[EM, ...]


Content = Union[Spherical, EM, Wedge]


@dataclass(frozen=True)
class SliceCell:
    dim: int
    content: Content

    @property
    def kind(self) -> str:
        return {Spherical: "sphere", EM: "em", Wedge: "wedge"}[type(self.content)]

    def em_parts(self) -> tuple[EM, ...]:
        if isinstance(self.content, EM):
            return (self.content,)
        if isinstance(self.content, Wedge):
            return self.content.parts
        return ()

    def describe(self, g: GroupPQ) -> str:
        c = self.content
        if isinstance(c, Spherical):
            return f"S^({c.beta}) ∧ HZ"
        return " ∨ ".join(_em_text(e, g) for e in self.em_parts())

    def to_json(self, g: GroupPQ) -> dict:
        c = self.content
        if isinstance(c, Spherical):
            data: object = {"beta": list(c.beta), "beta_str": str(c.beta)}
        else:
            data = [{"prime": e.prime, "suspension": e.suspension,
                     "functor": k_functor(e.prime, g)} for e in self.em_parts()]
            if isinstance(c, EM):
                data = data[0]
        return {"dim": self.dim, "kind": self.kind, "data": data}


def _em_text(e: EM, g: GroupPQ) -> str:
    tag = "p" if g.index(e.prime) == "p" else "q"
    return f"Σ^{e.suspension} HK_{tag}<Z/{e.prime}>"


@dataclass(frozen=True)
class SliceTower:
    g: GroupPQ
    input: Quadruple
    rho_k: int
    case: tuple[str, str]
    shifts: tuple[int, int]
    beta: Quadruple
    cells: tuple[SliceCell, ...]
    edges: tuple[str, ...]
    lower_maps: tuple[tuple[str, int], ...] = ()
    violations: tuple[str, ...] = field(default=())

    @property
    def spherical(self) -> SliceCell:
        return next(c for c in self.cells if isinstance(c.content, Spherical))

    def em_cells(self) -> list[SliceCell]:
        return [c for c in self.cells if not isinstance(c.content, Spherical)]

    def to_json(self) -> dict:
        out = {
            "input": list(self.input),
            "input_str": str(self.input),
            "group": [self.g.p, self.g.q],
            "rho_k": self.rho_k,
            "case": list(self.case),
            "shifts": {"p": self.shifts[0], "q": self.shifts[1]},
            "beta": list(self.beta),
            "cells": [c.to_json(self.g) for c in self.cells],
            "edges": list(self.edges),
            "violations": list(self.violations),
        }
        out["lower_maps"] = [{"label": lab, "steps": n} for lab, n in self.lower_maps]
        return out


# -- windows and classification ---------------------------------------------

def window(D: int, prime: int, parity: int) -> frozenset[int]:
    """Fixed dimensions m, of the given parity, with D <= prime*m <= D + 3*prime.

    Negative D is accepted: the bounds are what a rho-shift carries them to.
    """
    lo = -(-D // prime)
    hi = (D + 3 * prime) // prime
    return frozenset(m for m in range(lo, hi + 1) if m % 2 == parity % 2)


def _tag(m: int, D: int, prime: int) -> str:
    if prime * m > D + 3 * prime:
        return GE
    if prime * m < D:
        return LE
    return SLICE


def classify(v: Quadruple, g: GroupPQ) -> tuple[str, str]:
    """``(tag at C_p, tag at C_q)``; ``ge`` means the restriction sits above the window."""
    v = Quadruple(*v)
    D = v.dim
    return tuple(_tag(restrict(v, prime, g).m, D, prime) for prime in (g.p, g.q))  # type: ignore[return-value]


def _shift(m: int, D: int, prime: int) -> int:
    tag = _tag(m, D, prime)
    if tag == GE:
        return -((D + 3 * prime - prime * m) // (2 * prime))
    if tag == LE:
        return (prime * m - D) // (2 * prime)
    return 0


def shifts(v: Quadruple, g: GroupPQ) -> tuple[int, int]:
    """Signed number of u_{xi-xi^prime} steps at each prime."""
    v = Quadruple(*v)
    return tuple(_shift(restrict(v, prime, g).m, v.dim, prime) for prime in (g.p, g.q))  # type: ignore[return-value]


def step_vector(prime: int, g: GroupPQ) -> Quadruple:
    return Quadruple(0, 1, -1, 0) if g.index(prime) == "p" else Quadruple(0, 1, 0, -1)


def spherical_slice(v: Quadruple, g: GroupPQ) -> Quadruple:
    s_p, s_q = shifts(v, g)
    return Quadruple(*v) + step_vector(g.p, g).scale(s_p) + step_vector(g.q, g).scale(s_q)


def validate_spherical(beta: Quadruple, g: GroupPQ) -> bool:
    beta = Quadruple(*beta)
    D = beta.dim
    return all(restrict(beta, prime, g).m in window(D, prime, D % 2) for prime in (g.p, g.q))


def cofiber_homotopy(v: Quadruple, prime: int, l: int, g: GroupPQ) -> list[tuple[int, str]]:
    """Nonzero homotopy of the cofiber of l steps of u_{xi-xi^prime}."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    f = restrict(Quadruple(*v), prime, g).m
    name = k_functor(prime, g)
    return [(f - 2 * i, name) for i in range(1, l + 1)]


def em_slice_dim(suspension: int, prime: int) -> int:
    return prime * suspension


@lru_cache(maxsize=None)
def _filtered_orders(name: str, g: GroupPQ, level: int):
    return tuple(sorted(orders_at(filtration(named(name, g), level)).items()))


def _filtered(name: str, g: GroupPQ, k: Fraction):
    # Only the largest subgroup order <= k matters.
    level = max(o for o in (0, 1, g.p, g.q, g.order) if o <= k)
    return _filtered_orders(name, g, level)


def em_slice_dim_from_filtration(n: int, prime: int, g: GroupPQ) -> int:
    """Slice dimension of Sigma^n HK<Z/prime>, read off the algebraic filtration.

    The homotopy filtration jumps at s where the Mackey filtration at
    (s+n-1)/n differs from the one at (s+n)/n; the slice then sits at s + n.
    An Eilenberg-MacLane spectrum (n = 0) is a 0-slice.
    """
    if n < 0:
        raise ValueError("suspension must be nonnegative")
    if n == 0:
        return 0
    name = k_functor(prime, g)
    for s in range(0, n * g.order + 1):
        if _filtered(name, g, Fraction(s + n - 1, n)) != _filtered(name, g, Fraction(s + n, n)):
            return s + n
    raise ArithmeticError(f"no filtration jump for {name}")  # pragma: no cover


# -- towers -------------------------------------------------------------------

def _merge(cells: list[tuple[int, EM]]) -> list[SliceCell]:
    by_dim: dict[int, list[EM]] = {}
    for d, e in cells:
        by_dim.setdefault(d, []).append(e)
    out = []
    for d in sorted(by_dim, reverse=True):
        parts = sorted(by_dim[d], key=lambda e: -e.prime)
        out.append(SliceCell(d, parts[0] if len(parts) == 1 else Wedge(tuple(parts))))
    return out


def build_tower(alpha: Quadruple, g: GroupPQ) -> SliceTower:
    alpha = Quadruple(*alpha)
    v, k = rho_shift(alpha, g)
    D = v.dim
    case = classify(v, g)
    s = shifts(v, g)
    beta = spherical_slice(v, g)
    upper: list[tuple[int, EM]] = []
    lower: list[tuple[int, EM]] = []
    lower_maps = []
    for prime, steps in zip((g.p, g.q), s):
        f = restrict(v, prime, g).m
        if steps > 0:
            upper += [(em_slice_dim(f - 2 * i - 1, prime), EM(prime, f - 2 * i - 1))
                      for i in range(1, steps + 1)]
        elif steps < 0:
            lower += [(em_slice_dim(f + 2 * i - 2, prime), EM(prime, f + 2 * i - 2))
                      for i in range(1, -steps + 1)]
            lower_maps.append((u_label(prime, g), -steps))

    violations = []
    for d, e in upper:
        if d <= D:
            violations.append(f"upper cell {e} at {d} is not above dim {D}")
    for d, e in lower:
        if d >= D:
            violations.append(f"lower cell {e} at {d} is not below dim {D}")
    if not validate_spherical(beta, g):
        violations.append(f"spherical slice {beta} fails the window test")

    # Undo the rho-shift: each rho lowers slice dims by |G| and EM suspensions
    # at a prime by the other prime.
    drop = k * g.order

    def unshift(d: int, e: EM) -> tuple[int, EM]:
        return d - drop, EM(e.prime, e.suspension - k * g.other(e.prime))

    ems = _merge([unshift(d, e) for d, e in upper + lower])
    beta_out = beta - g.rho.scale(k)
    sphere = SliceCell(D - drop, Spherical(beta_out))
    cells = sorted(ems + [sphere], key=lambda c: -c.dim)
    if sum(c.dim == sphere.dim for c in cells) > 1:
        violations.append(f"an EM cell collides with the spherical slice at {sphere.dim}")

    edge_cells = sorted(upper, key=lambda de: (-de[0], -de[1].prime))
    edges = tuple(u_label(e.prime, g) for _, e in edge_cells)
    return SliceTower(g, alpha, k, case, s, beta_out, tuple(cells), edges,
                      tuple(lower_maps), tuple(violations))


def spine(tower: SliceTower) -> list[Quadruple]:
    """Spherical stages from the (shifted) input down to beta, upper steps only."""
    g = tower.g
    v, k = rho_shift(tower.input, g)
    stages = [v]
    for edge in tower.edges:
        prime = g.p if edge == u_label(g.p, g) else g.q
        stages.append(stages[-1] + step_vector(prime, g))
    return [st - g.rho.scale(k) for st in stages]


def check_tower(tower: SliceTower) -> list[str]:
    """Structural invariants; returns a list of human-readable failures."""
    g = tower.g
    problems = list(tower.violations)
    spheres = [c for c in tower.cells if isinstance(c.content, Spherical)]
    if len(spheres) != 1:
        problems.append(f"{len(spheres)} spherical cells")
    elif spheres[0].dim != tower.input.dim:
        problems.append(f"spherical cell at {spheres[0].dim}, expected {tower.input.dim}")
    for c in tower.em_cells():
        for e in c.em_parts():
            if c.dim != em_slice_dim(e.suspension, e.prime):
                problems.append(f"{e} sits at {c.dim}, not {e.prime * e.suspension}")
            if not named(k_functor(e.prime, g), g).values["G/e"].is_zero():
                problems.append(f"{e} has nonzero underlying homotopy")
    dims = [c.dim for c in tower.cells]
    if dims != sorted(dims, reverse=True):
        problems.append("cells are not sorted by dimension")
    return problems


def shift_tower(tower: SliceTower, k: int) -> tuple[tuple[int, Content], ...]:
    """Cells of ``tower`` with dimensions and data moved by k copies of rho."""
    g = tower.g
    out = []
    for c in tower.cells:
        content = c.content
        if isinstance(content, Spherical):
            content = Spherical(content.beta + g.rho.scale(k))
        elif isinstance(content, EM):
            content = EM(content.prime, content.suspension + k * g.other(content.prime))
        else:
            content = Wedge(tuple(EM(e.prime, e.suspension + k * g.other(e.prime))
                                  for e in content.parts))
        out.append((c.dim + k * g.order, content))
    return tuple(out)


def rho_equivariant(alpha: Quadruple, g: GroupPQ, k: int = 1) -> bool:
    base = build_tower(alpha, g)
    moved = build_tower(Quadruple(*alpha) + g.rho.scale(k), g)
    return (shift_tower(base, k) == tuple((c.dim, c.content) for c in moved.cells)
            and base.edges == moved.edges)


@dataclass(frozen=True)
class TowerCheck:
    g: GroupPQ
    v: Quadruple
    tower: SliceTower
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


def tower_sweep(max_coeff: int, groups: list[GroupPQ], rho_k: int = 1) -> list[TowerCheck]:
    """Build and check the tower of every honest V with coefficients <= max_coeff."""
    out = []
    for g in groups:
        for v in product(range(max_coeff + 1), repeat=4):
            v = Quadruple(*v)
            tower = build_tower(v, g)
            problems = check_tower(tower)
            if not validate_spherical(tower.beta, g):
                problems.append(f"beta {tower.beta} fails the window test")
            if rho_k and not rho_equivariant(v, g, rho_k):
                problems.append(f"not equivariant under {rho_k}·rho")
            out.append(TowerCheck(g, v, tower, tuple(problems)))
    return out
