"""Finitely generated abelian groups in invariant-factor coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import intlinalg as il
from .intlinalg import IntMatrix


@dataclass(frozen=True)
class FinAbGroup:
    """``Z/d_1 + ... + Z/d_k + Z^r`` stored as ``(d_1, ..., d_k, 0, ..., 0)``.

    Torsion factors form a divisibility chain and no factor equals 1.  An
    element is an integer vector with one coordinate per factor.
    """

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(f) for f in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        if any(f < 0 or f == 1 for f in fs):
            raise ValueError(f"invalid invariant factors {fs}")
        torsion = [f for f in fs if f]
        if fs != tuple(torsion) + (0,) * (len(fs) - len(torsion)):
            raise ValueError(f"free factors must come last: {fs}")
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise ValueError(f"{fs} is not a divisibility chain")

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "FinAbGroup":
        """Normalize a direct sum of cyclic groups (0 = Z, 1 = trivial)."""
        rels = [{i: o} for i, o in enumerate(orders) if o]
        return cls(tuple(il.invariant_factors(rels, len(orders))))

    @classmethod
    def free(cls, rank: int = 1) -> "FinAbGroup":
        return cls((0,) * rank)

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors)

    @property
    def free_rank(self) -> int:
        return self.invariant_factors.count(0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(f for f in self.invariant_factors if f)

    def is_zero(self) -> bool:
        return not self.invariant_factors

    def order(self) -> int | None:
        """Cardinality, or None for infinite groups."""
        if self.free_rank:
            return None
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    def __add__(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup.from_orders(self.invariant_factors + other.invariant_factors)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " ⊕ ".join("Z" if f == 0 else f"Z/{f}" for f in self.invariant_factors)

    def to_list(self) -> list[int]:
        return list(self.invariant_factors)


ZERO = FinAbGroup()
Z = FinAbGroup((0,))


def reduce_map(m: IntMatrix, target: FinAbGroup) -> IntMatrix:
    return il.reduce_rows(m, target.invariant_factors)


def maps_equal(a: IntMatrix, b: IntMatrix, target: FinAbGroup) -> bool:
    return reduce_map(a, target) == reduce_map(b, target)


def is_well_defined(m: IntMatrix, source: FinAbGroup, target: FinAbGroup) -> bool:
    """Whether ``m`` sends every relation of ``source`` to zero in ``target``."""
    for j, f in enumerate(source.invariant_factors):
        if f == 0:
            continue
        for i, t in enumerate(target.invariant_factors):
            x = f * m[i][j]
            if (t == 0 and x != 0) or (t and x % t):
                return False
    return True


def normalize(orders: Sequence[int]) -> tuple[FinAbGroup, IntMatrix, IntMatrix]:
    """Change of coordinates from a cyclic decomposition to invariant factors.

    Returns ``(group, to, back)`` where ``to`` maps old coordinates to new
    ones and ``back`` maps new coordinates to old ones; both are
    isomorphisms modulo the respective relations.
    """
    k = len(orders)
    diag, u, _ = il.smith(tuple(tuple(o if i == j else 0 for j in range(k))
                                for i, o in enumerate(orders)), k, k)
    uinv = il.inverse_unimodular(u)
    keep = [i for i in range(k) if diag[i] != 1]
    group = FinAbGroup(tuple(diag[i] for i in keep))
    to = tuple(u[i] for i in keep)
    back = tuple(tuple(uinv[r][i] for i in keep) for r in range(k))
    return group, reduce_map(to, group), back


def transport(m: IntMatrix, src_back: IntMatrix, tgt_to: IntMatrix,
              src_old: int, tgt_old: int, src_new: int,
              target: FinAbGroup) -> IntMatrix:
    """Rewrite a map given in old coordinates into new coordinates."""
    inner = il.matmul(m, src_back, src_old, src_new)
    return reduce_map(il.matmul(tgt_to, inner, tgt_old, src_new), target)


def kernel(source: FinAbGroup,
           maps: Sequence[tuple[IntMatrix, FinAbGroup]]) -> tuple[FinAbGroup, IntMatrix]:
    """Common kernel of several maps out of ``source``.

    Returns the kernel as an abstract group together with its inclusion
    matrix (``source.ngens x kernel.ngens``).
    """
    n = source.ngens
    stacked: list[tuple[int, ...]] = []
    moduli: list[int] = []
    for m, tgt in maps:
        stacked.extend(m)
        moduli.extend(tgt.invariant_factors)
    if not stacked:
        return source, il.identity(n)
    rows = len(stacked)
    # x is in the kernel iff M x = D y for some y, D = diag(moduli).
    aug = tuple(
        tuple(stacked[i]) + tuple(moduli[i] if i == j else 0 for j in range(rows))
        for i in range(rows)
    )
    null = il.nullspace(aug, rows, n + rows)
    gens = [v[:n] for v in null]
    gens += [tuple(f if i == j else 0 for i in range(n))
             for j, f in enumerate(source.invariant_factors) if f]
    return subgroup(source, gens)


def subgroup(source: FinAbGroup, gens: Sequence[Sequence[int]]) -> tuple[FinAbGroup, IntMatrix]:
    """The subgroup of ``source`` generated by ``gens``, with its inclusion."""
    n = source.ngens
    rel_vectors = [tuple(f if i == j else 0 for i in range(n))
                   for j, f in enumerate(source.invariant_factors) if f]
    basis = il.lattice_basis(list(gens) + rel_vectors, n)
    r = len(basis)
    if r == 0:
        return ZERO, tuple(() for _ in range(n))
    bmat = tuple(tuple(vec[i] for vec in basis) for i in range(n))
    cols = []
    for rel in rel_vectors:
        c = il.solve(bmat, rel, n, r)
        if c is None:  # pragma: no cover - relations lie in the lattice by construction
            raise ArithmeticError("relation outside generated lattice")
        cols.append(c)
    t = len(cols)
    cmat = tuple(tuple(cols[j][i] for j in range(t)) for i in range(r))
    diag, u2, _ = il.smith(cmat, r, t)
    factors = [diag[i] if i < len(diag) else 0 for i in range(r)]
    u2inv = il.inverse_unimodular(u2)
    keep = [i for i in range(r) if factors[i] != 1]
    newbasis = il.matmul(bmat, u2inv, r, r)
    incl = tuple(tuple(newbasis[row][i] for i in keep) for row in range(n))
    group = FinAbGroup(tuple(factors[i] for i in keep))
    return group, reduce_map(incl, source)


def induced_map(m: IntMatrix, src_incl: IntMatrix, src_sub: FinAbGroup,
                tgt_incl: IntMatrix, tgt_full: FinAbGroup,
                tgt_sub: FinAbGroup, src_full_ngens: int) -> IntMatrix:
    """Restrict ``m`` to subgroups, assuming it carries one into the other."""
    k_src, k_tgt = src_sub.ngens, tgt_sub.ngens
    n_tgt = tgt_full.ngens
    img = il.matmul(m, src_incl, src_full_ngens, k_src)
    aug = tuple(
        tuple(tgt_incl[i]) + tuple(tgt_full.invariant_factors[i] if i == j else 0
                                   for j in range(n_tgt))
        for i in range(n_tgt)
    )
    cols = []
    for j in range(k_src):
        z = il.solve(aug, [img[i][j] for i in range(n_tgt)], n_tgt, k_tgt + n_tgt)
        if z is None:
            raise ValueError("map does not preserve the subgroups")
        cols.append(z[:k_tgt])
    out = tuple(tuple(cols[j][i] for j in range(k_src)) for i in range(k_tgt))
    return reduce_map(out, tgt_sub)
