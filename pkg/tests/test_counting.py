from fractions import Fraction
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from extremal_regular.counting import (
    CountPolynomial,
    bigraph_hom_count,
    hom_count,
    independence_polynomial,
    kdd_occupancy,
    matching_polynomial,
    neighbor_occupancy_distribution,
    occupancy_fraction,
    occupancy_lp_optimum,
    occupancy_lp_solution,
    perfect_matchings,
    potts_internal_energy,
    potts_polynomial,
)
from extremal_regular.graphcore import (
    Bigraph,
    H_WR,
    H_ind,
    add_loops,
    complete,
    complete_bipartite,
    copies,
    cycle,
    disjoint_union,
    double_cover,
    empty,
    exponentiate,
    looped_subgraph,
    path,
    petersen,
    tensor_product,
    two_loops,
    analyze,
)

from families import graphs_up_to
from oracles import brute_hom, brute_ind_poly, brute_independent_sets, brute_matching_poly, brute_potts_poly
from test_graphcore import loop_graphs, simple_graphs


# hom counts -----------------------------------------------------------------------


def test_hom_examples():
    assert hom_count(cycle(4), H_ind()) == 7
    assert hom_count(complete(4), complete(3)) == 0
    assert hom_count(cycle(4), H_WR()) == 35
    assert hom_count(cycle(6), two_loops()) == 2
    assert hom_count(disjoint_union([cycle(6), cycle(4)]), two_loops()) == 4
    assert hom_count(empty(0), H_WR()) == 1


@given(loop_graphs(5), loop_graphs(3))
def test_hom_matches_brute_force(g, h):
    assert hom_count(g, h) == brute_hom(g, h)


def test_hom_ind_equals_independent_sets_exhaustive():
    for g in graphs_up_to(7):
        assert hom_count(g, H_ind()) == independence_polynomial(g)(1)


@pytest.mark.slow
def test_hom_ind_equals_independent_sets_on_eight_vertices():
    from extremal_regular.enumeration import all_graphs

    for g in all_graphs(8):
        assert hom_count(g, H_ind()) == independence_polynomial(g)(1)


@given(simple_graphs(5), loop_graphs(3), loop_graphs(3))
def test_hom_product_identity(g, h1, h2):
    assert hom_count(g, tensor_product(h1, h2)) == hom_count(g, h1) * hom_count(g, h2)


@given(simple_graphs(4), simple_graphs(2), loop_graphs(3))
def test_hom_power_identity(g, g2, h):
    assert hom_count(tensor_product(g, g2), h) == hom_count(g, exponentiate(h, g2))


@given(simple_graphs(5), loop_graphs(4))
def test_hom_loop_identity(g, h):
    assert hom_count(add_loops(g), h) == hom_count(g, looped_subgraph(h))


def test_wr_ind_identity_exhaustive():
    for g in graphs_up_to(7):
        assert hom_count(g, H_WR()) == hom_count(double_cover(add_loops(g)), H_ind())


@given(simple_graphs(5), st.integers(1, 4), st.integers(2, 4))
def test_hom_into_disjoint_targets(g, k, d):
    if analyze(g).components == 1:
        assert hom_count(g, copies(complete(d), k)) == k * hom_count(g, complete(d))


def test_bigraph_hom_count():
    k11 = Bigraph.from_graph(complete_bipartite(1, 1), left=[0])
    for a, b in [(1, 1), (2, 3), (3, 2)]:
        target = Bigraph.from_graph(complete_bipartite(a, b), left=range(a))
        assert bigraph_hom_count(k11, target) == a * b
    c4 = Bigraph.from_graph(cycle(4), left=[0, 2])
    k23 = Bigraph.from_graph(complete_bipartite(2, 3), left=[0, 1])
    flipped = Bigraph.from_graph(cycle(4), left=[1, 3])
    assert bigraph_hom_count(c4, k23) + bigraph_hom_count(flipped, k23) == brute_hom(cycle(4), complete_bipartite(2, 3))
    lone = Bigraph.from_graph(empty(3), left=[0, 1])
    assert bigraph_hom_count(lone, k23) == 2**2 * 3


# polynomials ----------------------------------------------------------------------


def test_independence_examples():
    p = independence_polynomial(cycle(4))
    assert p.coeffs == (1, 4, 2) and p(1) == 7 and p.kind == "independence"
    for d in range(1, 7):
        assert independence_polynomial(complete_bipartite(d, d))(1) == 2 ** (d + 1) - 1
        assert independence_polynomial(complete(d + 1))(1) == d + 2
    assert independence_polynomial(empty(5)).coeffs == tuple(comb(5, k) for k in range(6))
    assert independence_polynomial(empty(0)).coeffs == (1,)
    assert independence_polynomial(copies(cycle(5), 2))(1) == 121


@given(simple_graphs(8))
def test_independence_matches_brute_force(g):
    assert list(independence_polynomial(g).coeffs) == brute_ind_poly(g)


def test_matching_examples():
    m = matching_polynomial(complete_bipartite(3, 3))
    assert m.coeffs == (1, 9, 18, 6) and m.kind == "matching"
    assert perfect_matchings(complete_bipartite(3, 3)) == 6
    assert matching_polynomial(path(3))(1) == 3
    for d in range(1, 6):
        assert perfect_matchings(complete_bipartite(d, d)) == factorial(d)
    assert perfect_matchings(cycle(5)) == 0
    assert matching_polynomial(empty(0)).coeffs == (1,)


@given(simple_graphs(7))
def test_matching_matches_brute_force(g):
    m = matching_polynomial(g)
    assert list(m.coeffs) == brute_matching_poly(g)
    assert perfect_matchings(g) == (m[g.n // 2] if g.n % 2 == 0 else 0)


def test_potts_examples():
    assert potts_polynomial(complete(2), 2).coeffs == (2, 2)
    assert potts_polynomial(cycle(4), 3)[0] == 18
    assert potts_polynomial(empty(0), 3).coeffs == (1,)


@given(simple_graphs(5), st.integers(1, 3))
def test_potts_matches_brute_force(g, q):
    z = potts_polynomial(g, q)
    assert list(z.coeffs) == brute_potts_poly(g, q)
    assert z(1) == q**g.n
    assert z[0] == hom_count(g, complete(q))


def test_polynomial_json_and_arithmetic():
    p = independence_polynomial(cycle(5))
    assert CountPolynomial.from_json(p.to_json()).coeffs == p.coeffs
    assert p.to_json() == '["1", "5", "5"]'
    assert (p * p).coeffs == independence_polynomial(copies(cycle(5), 2)).coeffs
    assert (p**3)(1) == 11**3
    assert CountPolynomial((1, 2, 0, 0)).coeffs == (1, 2)
    assert p.derivative().coeffs == (5, 10)


# observables ----------------------------------------------------------------------


def test_occupancy_examples():
    assert occupancy_fraction(complete_bipartite(3, 3), 1) == Fraction(4, 15)
    assert occupancy_fraction(cycle(5), 0) == 0
    assert occupancy_fraction(complete(4), 1) == Fraction(1, 5)
    with pytest.raises(ValueError):
        occupancy_fraction(empty(0), 1)


def test_occupancy_equals_expected_size_exhaustive():
    for g in graphs_up_to(7):
        if g.n == 0:
            continue
        for lam in (Fraction(1, 2), Fraction(1), Fraction(3)):
            sets = brute_independent_sets(g) if g.n <= 5 else None
            if sets is None:
                poly = independence_polynomial(g)
                num = sum(k * c * lam**k for k, c in enumerate(poly.coeffs))
                den = sum(c * lam**k for k, c in enumerate(poly.coeffs))
            else:
                num = sum(len(s) * lam ** len(s) for s in sets)
                den = sum(lam ** len(s) for s in sets)
            assert occupancy_fraction(g, lam) == num / (g.n * den)


def test_neighbor_distribution_k22_by_brute_force():
    g = cycle(4)
    dist = neighbor_occupancy_distribution(g, 1)
    sets = brute_independent_sets(g)
    assert len(sets) == 7
    expect = [Fraction(0)] * 3
    for s in sets:
        for v in range(4):
            expect[sum(1 for w in g.neighbors(v) if w in s)] += Fraction(1, 4 * 7)
    assert dist == expect


@given(simple_graphs(7), st.fractions(min_value=0, max_value=5, max_denominator=7))
def test_neighbor_distribution_identities(g, lam):
    if g.n == 0:
        return
    p = neighbor_occupancy_distribution(g, lam)
    assert sum(p) == 1
    d = analyze(g).regular_degree
    if d:
        assert lam / (1 + lam) * p[0] == Fraction(1, d) * sum(k * pk for k, pk in enumerate(p))
        for k in range(1, d + 1):
            assert (d - k + 1) * lam * p[k - 1] >= k * p[k]


def test_potts_energy_examples():
    g = cycle(4)
    assert potts_internal_energy(g, 3, 1) == Fraction(g.m, 3 * g.n)
    # brute force over 3^4 colourings
    z = brute_potts_poly(g, 3)
    assert potts_internal_energy(g, 3, 1) == Fraction(sum(j * c for j, c in enumerate(z)), 4 * 81)
    assert potts_internal_energy(complete(2), 2, Fraction(1, 2)) == Fraction(1, 6)
    assert potts_internal_energy(petersen(), 3, Fraction(1, 1000)) < Fraction(1, 100)
    with pytest.raises(ValueError):
        potts_internal_energy(g, 3, 0)


def test_occupancy_lp_examples():
    assert occupancy_lp_optimum(3, 1) == Fraction(8, 15)
    assert occupancy_lp_optimum(1, 1) == Fraction(2, 3)
    assert neighbor_occupancy_distribution(complete(2), 1)[0] == Fraction(2, 3)
    for d in (2, 3, 4):
        for lam in (Fraction(1, 2), 1, 2):
            assert Fraction(lam) / (1 + lam) * occupancy_lp_optimum(d, lam) == occupancy_fraction(
                complete_bipartite(d, d), lam
            )
            assert kdd_occupancy(d, lam) == occupancy_fraction(complete_bipartite(d, d), lam)


@pytest.mark.parametrize("d", range(1, 7))
@pytest.mark.parametrize("lam", [Fraction(1, 3), Fraction(1), Fraction(5, 2)])
def test_occupancy_lp_against_scipy(d, lam):
    sol = occupancy_lp_solution(d, lam)
    assert sum(sol) == 1
    assert lam / (1 + lam) * sol[0] == Fraction(1, d) * sum(k * p for k, p in enumerate(sol))
    assert all((d - k + 1) * lam * sol[k - 1] >= k * sol[k] for k in range(1, d + 1))
    lf = float(lam)
    c = np.zeros(d + 1)
    c[0] = -1.0
    a_eq = np.array([[1.0] * (d + 1), [lf / (1 + lf)] + [-k / d for k in range(1, d + 1)]])
    a_eq[1, 0] = lf / (1 + lf)
    b_eq = np.array([1.0, 0.0])
    a_ub = np.zeros((d, d + 1))
    for k in range(1, d + 1):
        a_ub[k - 1, k - 1] = -(d - k + 1) * lf
        a_ub[k - 1, k] = k
    res = linprog(c, A_ub=a_ub, b_ub=np.zeros(d), A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * (d + 1))
    assert res.status == 0
    assert abs(-res.fun - float(sol[0])) < 1e-9
