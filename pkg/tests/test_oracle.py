"""Exact linearity oracle and the seeded Monte Carlo estimator."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from linhyp.errors import CapExceededError, ValidationError
from linhyp.hypergraph import Hypergraph, is_linear
from linhyp.oracle import exact_linearity_polynomial, monte_carlo
from linhyp.polynomial import Polynomial


def independent_scan(n, r):
    """Second, independently coded subset scan (itertools + is_linear)."""
    edges = list(combinations(range(1, n + 1), r))
    one_minus = Polynomial({0: 1, 1: -1})
    total = Polynomial.zero()
    for mask in range(1 << len(edges)):
        sub = tuple(edges[i] for i in range(len(edges)) if mask >> i & 1)
        if is_linear(Hypergraph(n=n, r=r, edges=sub)):
            e = len(sub)
            total = total + Polynomial({e: 1}) * one_minus ** (len(edges) - e)
    return total


class TestExactOracle:
    def test_n3_always_linear(self):
        assert exact_linearity_polynomial(3, 3) == Polynomial.one()

    def test_n4_closed_form(self):
        one_minus = Polynomial({0: 1, 1: -1})
        expect = one_minus**4 + Polynomial({1: 4}) * one_minus**3
        assert exact_linearity_polynomial(4, 3) == expect
        assert exact_linearity_polynomial(4, 3)(Fraction(1, 2)) == Fraction(5, 16)

    def test_n5_matches_independent_scan(self):
        poly = exact_linearity_polynomial(5, 3)
        scan = independent_scan(5, 3)
        assert poly == scan
        assert poly(Fraction(1, 2)) == Fraction(26, 1024)

    def test_random_rational_evaluations_match_scan(self):
        poly = exact_linearity_polynomial(5, 3)
        scan = independent_scan(5, 3)
        rnd = random.Random(17)
        for _ in range(20):
            q = Fraction(rnd.randint(1, 999), 1000)
            assert poly(q) == scan(q)

    def test_r4_host(self):
        poly = exact_linearity_polynomial(5, 4)
        scan = independent_scan(5, 4)
        assert poly == scan

    def test_probabilities_are_probabilities(self):
        poly = exact_linearity_polynomial(5, 3)
        for q in (Fraction(1, 100), Fraction(1, 2), Fraction(99, 100)):
            assert 0 < poly(q) <= 1

    def test_state_cap(self):
        with pytest.raises(CapExceededError):
            exact_linearity_polynomial(7, 3)  # C(7,3) = 35 edges

    def test_validation(self):
        with pytest.raises(ValidationError):
            exact_linearity_polynomial(2, 3)


class TestMonteCarlo:
    def test_always_linear_instance(self):
        rep = monte_carlo(3, 3, Fraction(1, 2), trials=500, seed=1)
        assert rep.hits == rep.trials == 500
        assert rep.estimate == 1.0

    def test_determinism(self):
        a = monte_carlo(5, 3, Fraction(1, 10), trials=4000, seed=42)
        b = monte_carlo(5, 3, Fraction(1, 10), trials=4000, seed=42)
        assert a == b

    def test_worker_independence(self):
        base = monte_carlo(5, 3, Fraction(1, 10), trials=4000, seed=9)
        for w in (4, 8):
            assert monte_carlo(5, 3, Fraction(1, 10), trials=4000, seed=9, workers=w) == base

    def test_seed_changes_stream(self):
        a = monte_carlo(5, 3, Fraction(1, 10), trials=4000, seed=1)
        b = monte_carlo(5, 3, Fraction(1, 10), trials=4000, seed=2)
        assert a.hits != b.hits

    def test_agrees_with_exact_n4(self):
        exact = float(exact_linearity_polynomial(4, 3)(Fraction(1, 2)))
        rep = monte_carlo(4, 3, Fraction(1, 2), trials=1_000_000, seed=7)
        assert abs(rep.estimate - exact) <= 5 * rep.std_error

    def test_agrees_with_exact_n5_sparse(self):
        exact = float(exact_linearity_polynomial(5, 3)(Fraction(1, 10)))
        rep = monte_carlo(5, 3, Fraction(1, 10), trials=1_000_000, seed=11)
        assert abs(rep.estimate - exact) <= 5 * rep.std_error

    def test_report_fields(self):
        rep = monte_carlo(4, 3, Fraction(1, 4), trials=100, seed=3)
        data = rep.to_json()
        assert data["rng_name"] == "philox4x64"
        assert data["seed"] == 3
        assert data["p_num"] == 1 and data["p_den"] == 4
        assert 0 <= data["hits"] <= data["trials"]

    def test_validation(self):
        with pytest.raises(ValidationError):
            monte_carlo(4, 3, Fraction(0), trials=10, seed=0)
        with pytest.raises(ValidationError):
            monte_carlo(4, 3, Fraction(3, 2), trials=10, seed=0)
        with pytest.raises(ValidationError):
            monte_carlo(4, 3, Fraction(1, 2), trials=0, seed=0)
