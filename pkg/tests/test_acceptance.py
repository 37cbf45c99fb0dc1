"""The ten acceptance criteria.

Run ``pytest tests/test_acceptance.py`` (or this file directly); the terminal
summary prints one PASS/FAIL line per criterion.
"""

import random
import time
from itertools import product

import pytest

from slicecalc.cohomology import ROWS, matching_rows, point_cohomology
from slicecalc.reps import GroupPQ, Quadruple, invariants
from slicecalc.ring import (
    GEN,
    Monomial,
    RODegree,
    RingElement,
    all_normal_forms,
    multiply,
    normalize,
    phi_sweep,
)
from slicecalc.slice import (
    EM,
    Spherical,
    build_tower,
    em_slice_dim_from_filtration,
    shifts,
    tower_sweep,
    validate_spherical,
)

from conftest import GROUPS


def _el(name, coeff=1):
    return RingElement.monomial(GEN[name], coeff)


@pytest.mark.criterion(1)
@pytest.mark.parametrize("g", GROUPS, ids=str)
def test_torsion_relations(g):
    p, q = g.p, g.q
    assert normalize(_el("a_xi", p * q), g).is_zero()
    assert normalize(_el("a_xip", q), g).is_zero()
    assert normalize(_el("a_xiq", p), g).is_zero()
    # and nothing smaller kills them
    assert not normalize(_el("a_xi", p), g).is_zero()
    assert not normalize(_el("a_xip", p), g).is_zero()


@pytest.mark.criterion(2)
@pytest.mark.parametrize("g", GROUPS, ids=str)
def test_gold_relation(g):
    lhs_p = multiply(_el("u_xi"), _el("a_xip"), g)
    lhs_q = multiply(_el("u_xi"), _el("a_xiq"), g)
    assert lhs_p == RingElement.monomial(GEN["u_xip"] * GEN["a_xi"], g.p)
    assert lhs_q == RingElement.monomial(GEN["u_xiq"] * GEN["a_xi"], g.q)


@pytest.mark.criterion(3)
def test_phi_sweep_box():
    g = GroupPQ(3, 5)
    degrees = [RODegree(m, n, l, a) for m, n, l in product(range(7), repeat=3)
               for a in range(m + n + l + 4)]
    start = time.perf_counter()
    report = phi_sweep(degrees, g)
    elapsed = time.perf_counter() - start
    assert report.mismatches == [], report.summary()
    assert len(report.rows) == len(degrees)
    assert elapsed < 10, f"sweep took {elapsed:.1f}s"


@pytest.mark.criterion(4)
def test_confluence_random_monomials():
    rng = random.Random(20261018)
    start = time.perf_counter()
    for _ in range(1000):
        g = rng.choice(GROUPS)
        mono = Monomial(*(rng.randint(0, 8) for _ in range(6)))
        coeff = rng.randint(1, 3 * g.order)
        finals = all_normal_forms(mono, coeff, g)
        expected = normalize({mono: coeff}, g)
        as_element = {RingElement() if f is None else RingElement.monomial(*f) for f in finals}
        assert as_element == {expected}, (mono, coeff, finals)
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(5)
def test_tower_of_six():
    g = GroupPQ(3, 5)
    t = build_tower(Quadruple(6, 0, 0, 0), g)
    cells = [(c.dim, c.content) for c in t.cells]
    assert cells == [
        (15, EM(5, 3)),
        (9, EM(3, 3)),
        (6, Spherical(Quadruple(6, 2, -1, -1))),
    ]
    assert t.edges == ("u_{xi-xi^q}", "u_{xi-xi^p}")


@pytest.mark.criterion(6)
def test_upper_tower_eleven_xi_q():
    g = GroupPQ(3, 5)
    v = Quadruple(0, 0, 0, 11)
    assert shifts(v, g)[1] == 8
    t = build_tower(v, g)
    upper = [(c.dim, c.content) for c in t.cells if c.dim > 22]
    assert upper == [(5 * s, EM(5, s)) for s in (19, 17, 15, 13, 11, 9, 7, 5)]
    assert [c.dim for c in t.cells if c.dim > 22] == [95, 85, 75, 65, 55, 45, 35, 25]
    assert t.edges == ("u_{xi-xi^q}",) * 8


@pytest.mark.criterion(7)
def test_printed_bottom_slice_is_rejected():
    # See the decisions ledger: the printed 22-slice 7xi+xi_p+3xi_q fails
    # the C_3 window, while the computed one passes.
    g = GroupPQ(3, 5)
    assert validate_spherical(Quadruple(0, 7, 1, 3), g) is False
    beta = build_tower(Quadruple(0, 0, 0, 11), g).beta
    assert validate_spherical(beta, g) is True
    assert beta == Quadruple(0, 4, 4, 3)


@pytest.mark.criterion(8)
def test_em_slice_from_filtration():
    start = time.perf_counter()
    for prime in (3, 5, 7):
        g = GroupPQ(3, 5) if prime in (3, 5) else GroupPQ(3, 7)
        for n in range(21):
            assert em_slice_dim_from_filtration(n, prime, g) == n * prime
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(9)
@pytest.mark.parametrize("g", GROUPS, ids=str)
def test_table_exclusive_and_underlying(g):
    start = time.perf_counter()
    zero_at_e = {"KpZmodP", "KqZmodQ", "KpZmodP⊕KqZmodQ", "Zero"}
    for alpha in product(range(-10, 11), repeat=4):
        alpha = Quadruple(*alpha)
        hits = matching_rows(alpha)
        assert len(hits) <= 1, (alpha, hits)
        ans = point_cohomology(alpha, g)
        # nonequivariant H^*(S^0): Z in degree 0, zero elsewhere
        at_e = ans.group("G/e")
        if invariants(alpha).dim == 0:
            assert at_e.invariant_factors == (0,), alpha
            assert ans.functor_name not in zero_at_e
        else:
            assert at_e.is_zero(), alpha
    assert time.perf_counter() - start < 5.0
    assert len(ROWS) == 10


@pytest.mark.criterion(10)
def test_tower_sweep():
    start = time.perf_counter()
    checks = tower_sweep(5, GROUPS, rho_k=1)
    assert len(checks) == 3 * 6 ** 4
    failures = [(c.g, c.v, c.problems) for c in checks if not c.ok]
    assert failures == []
    for c in checks:
        spheres = [cell for cell in c.tower.cells if isinstance(cell.content, Spherical)]
        assert len(spheres) == 1 and spheres[0].dim == c.v.dim
        for cell in c.tower.em_cells():
            assert all(cell.dim == e.prime * e.suspension for e in cell.em_parts())
    assert time.perf_counter() - start < 30


if __name__ == "__main__":  # pragma: no cover
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
