import random

import pytest
from hypothesis import given, settings, strategies as st

from slicecalc.abelian import FinAbGroup, Z, ZERO
from slicecalc.ring import (
    GEN,
    ONE,
    Monomial,
    OracleBoundError,
    RODegree,
    RingElement,
    RingSyntaxError,
    all_normal_forms,
    basis_of_degree,
    closed_form_basis,
    degree_box,
    degree_of,
    group_of_degree,
    multiply,
    normalize,
    parse_degree,
    parse_ring,
    phi_sweep,
    rewrite_steps,
    snf_oracle,
    torsion_order,
)

from conftest import GROUPS

small = st.integers(0, 3)
monomials = st.builds(Monomial, small, small, small, small, small, small)


def mono(**kw):
    return Monomial(**kw)


def el(m, c=1):
    return RingElement.monomial(m, c)


@st.composite
def homogeneous(draw, g):
    """A normalized homogeneous element of a small random degree."""
    d = RODegree(*(draw(st.integers(0, 2)) for _ in range(3)), 0)
    d = d._replace(a=draw(st.integers(0, d.m + d.n + d.l)))
    basis = basis_of_degree(d, g)
    coeffs = draw(st.lists(st.integers(-20, 20), min_size=len(basis), max_size=len(basis)))
    return normalize({m: c for (m, _), c in zip(basis, coeffs)}, g)


def test_degree_of_examples():
    assert degree_of(GEN["u_xi"]) == RODegree(1, 0, 0, 1)
    assert degree_of(mono(a_xi=2, u_xiq=1)) == RODegree(2, 0, 1, 1)
    assert degree_of(ONE) == RODegree(0, 0, 0, 0)


def test_torsion_order_examples(g):
    assert torsion_order(GEN["a_xi"], g) == 15
    assert torsion_order(mono(a_xi=3, u_xip=1, a_xip=1), g) == 5
    assert torsion_order(mono(u_xi=5), g) == 0
    with pytest.raises(ValueError):
        torsion_order(mono(a_xip=1, a_xiq=1), g)


def test_normalize_examples(g):
    assert normalize(el(mono(u_xi=1, a_xip=1)), g) == el(mono(u_xip=1, a_xi=1), 3)
    assert normalize(el(GEN["a_xi"], 15), g).is_zero()
    assert normalize(el(mono(u_xi=1, a_xip=1, a_xiq=1)), g).is_zero()


def test_multiply_examples(g):
    a = el(GEN["a_xi"])
    assert multiply(a, a, g) == el(mono(a_xi=2))
    assert multiply(el(GEN["u_xi"]), el(GEN["a_xip"]), g) == el(mono(u_xip=1, a_xi=1), 3)
    x = normalize({mono(u_xi=2): 4, mono(a_xi=1, u_xi=1): 7}, g)
    assert multiply(RingElement.scalar(1), x, g) == x


def test_basis_examples(g):
    assert basis_of_degree(RODegree(1, 0, 0, 1), g) == [(GEN["u_xi"], 0)]
    assert set(basis_of_degree(RODegree(1, 1, 1, 1), g)) == {
        (mono(a_xi=1, a_xip=1, u_xiq=1), 5),
        (mono(a_xi=1, u_xip=1, a_xiq=1), 3),
    }
    assert basis_of_degree(RODegree(2, 0, 0, 3), g) == []


def test_group_of_degree_examples(g):
    assert group_of_degree(RODegree(1, 0, 0, 0), g) == FinAbGroup((15,))
    assert group_of_degree(RODegree(0, 1, 0, 0), g) == FinAbGroup((5,))
    assert group_of_degree(RODegree(1, 1, 1, 1), g) == FinAbGroup.from_orders([3, 5])


def test_snf_oracle_examples(g):
    assert snf_oracle(RODegree(1, 0, 0, 0), g) == FinAbGroup((15,))
    assert snf_oracle(RODegree(1, 1, 0, 1), g) == FinAbGroup((15,))
    assert snf_oracle(RODegree(0, 0, 0, 0), g) == Z
    assert snf_oracle(RODegree(2, 0, 0, 3), g) == ZERO


def test_snf_oracle_bound(g):
    with pytest.raises(OracleBoundError):
        snf_oracle(RODegree(5, 5, 5, 6), g, max_monomials=10)


def test_phi_sweep_small_box(g):
    report = phi_sweep(degree_box(3, 3, 3, 9), g)
    assert report.all_match and report.summary().startswith("all match")


def test_phi_sweep_contains_cyclic_pq(g):
    report = phi_sweep([RODegree(1, 1, 1, 1)], g)
    row = report.rows[0]
    assert row.match and row.ring == FinAbGroup((15,))


def test_phi_sweep_empty():
    assert phi_sweep([], GROUPS[0]).all_match


@pytest.mark.parametrize("h", GROUPS[1:], ids=str)
def test_phi_sweep_other_groups(h):
    assert phi_sweep(degree_box(2, 2, 2, 7), h).all_match


def test_zero_dimensional_degrees_have_one_free_generator(g):
    for d in degree_box(3, 3, 3, 0):
        d = d._replace(a=d.m + d.n + d.l)
        assert basis_of_degree(d, g) == [(Monomial(0, 0, 0, d.m, d.n, d.l), 0)]


def test_closed_forms_match_enumeration(g):
    for d in degree_box(4, 4, 4, 12):
        assert closed_form_basis(d) == {m for m, _ in basis_of_degree(d, g)}, d


def test_overlap_reduces_to_zero_along_every_path(g):
    m = mono(u_xi=1, a_xip=1, a_xiq=1)
    labels = {s[0] for s in rewrite_steps(m, 1, g)}
    assert {"R1", "R2", "R3"} <= labels
    assert all_normal_forms(m, 1, g) == {None}


@settings(max_examples=200, deadline=None)
@given(monomials, st.integers(-50, 50), st.sampled_from(GROUPS))
def test_random_strategy_walks_agree(m, c, g):
    rng = random.Random(hash((m, c)))
    target = normalize({m: c}, g)
    state = (m, c)
    while True:
        steps = rewrite_steps(*state, g)
        if not steps:
            break
        _, nm, nc = rng.choice(steps)
        if nm is None or nc == 0:
            state = None
            break
        state = (nm, nc)
    got = RingElement() if state is None or state[1] == 0 else RingElement.monomial(*state)
    assert got == target


@settings(max_examples=60, deadline=None)
@given(st.data(), st.sampled_from(GROUPS))
def test_commutative_associative(data, g):
    x, y, z = (data.draw(homogeneous(g)) for _ in range(3))
    assert multiply(x, y, g) == multiply(y, x, g)
    assert multiply(multiply(x, y, g), z, g) == multiply(x, multiply(y, z, g), g)


@settings(max_examples=60, deadline=None)
@given(st.data(), st.sampled_from(GROUPS))
def test_product_degree_is_additive(data, g):
    x, y = data.draw(homogeneous(g)), data.draw(homogeneous(g))
    prod = multiply(x, y, g)
    if not (x.is_zero() or y.is_zero() or prod.is_zero()):
        assert prod.degree() == x.degree() + y.degree()


@given(st.data(), st.sampled_from(GROUPS))
def test_normal_form_invariants(data, g):
    x = data.draw(homogeneous(g))
    for m, c in x.terms:
        assert m.is_normal()
        order = torsion_order(m, g)
        assert c != 0 and (order == 0 or 0 < c < order)


# -- parsing and formatting ----------------------------------------------------------

def test_cli_example(g):
    assert str(parse_ring("u_xi * a_xip", g)) == "3·u_xip·a_xi"


@pytest.mark.parametrize("text, expected", [
    ("a_xi^2", "a_xi^2"),
    ("15*a_xi", "0"),
    ("2 - 5", "-3"),
    ("(u_xi + a_xi)^2", "u_xi^2 + 2·u_xi·a_xi + a_xi^2"),
    ("u_xi·a_xiq", "5·u_xiq·a_xi"),
    ("-u_xip + 2*u_xip", "u_xip"),
])
def test_parse_and_format(g, text, expected):
    assert str(parse_ring(text, g)) == expected


@settings(max_examples=80, deadline=None)
@given(st.data(), st.sampled_from(GROUPS))
def test_round_trip(data, g):
    x = data.draw(homogeneous(g))
    assert parse_ring(str(x), g) == x


@pytest.mark.parametrize("text, pos", [
    ("u_xi **", 6),
    ("a_xy", 0),
    ("(a_xi", 5),
    ("a_xi^u_xi", 5),
    ("a_xi a_xi", 5),
])
def test_syntax_errors(g, text, pos):
    with pytest.raises(RingSyntaxError) as exc:
        parse_ring(text, g)
    assert exc.value.position == pos


def test_parse_degree():
    assert parse_degree("1, 2,3,4") == RODegree(1, 2, 3, 4)
    for bad in ("1,2,3", "a,b,c,d"):
        with pytest.raises(ValueError):
            parse_degree(bad)


def test_inhomogeneous_degree_raises(g):
    x = normalize({GEN["a_xi"]: 1, GEN["u_xi"]: 1}, g)
    with pytest.raises(ValueError):
        x.degree()
