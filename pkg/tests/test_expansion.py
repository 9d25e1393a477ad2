"""Expansion terms, symbolic series, and the consistency identities.

The per-order values asserted here were computed two independent ways
before being frozen: by the partition-lattice cumulant identity (the
truncated expansion through order k equals the alternating cumulant sum
through size k-1) and by direct brute-force enumeration of polymers and
their partitions on the small instances.
"""

from fractions import Fraction

import pytest

from linhyp.combinat import set_partitions
from linhyp.dependency import dependency_graph_for, polymers_up_to
from linhyp.errors import CapExceededError, ValidationError
from linhyp.expansion import (
    TruncatedSeries,
    cumulant_sum,
    expansion_term,
    hard_core_polynomial,
    inclusion_exclusion_polynomial,
    independent_truncated_series,
    interpolated_series_grouped,
    log_taylor_truncated,
    moment_sum,
    per_n_power_sums,
    structural_series_grouped,
    symbolic_series,
    truncated_expansion,
)
from linhyp.graphcalc import SimpleGraph, ursell
from linhyp.moments import joint_moment
from linhyp.oracle import exact_linearity_polynomial
from linhyp.polynomial import Polynomial, SeriesTerm, evaluate_series


def brute_force_term(d, order):
    """Independent oracle: enumerate copy sets of the exact size directly,
    keep the connected ones, partition them into connected blocks, and
    weigh by hand."""
    from itertools import combinations

    total = Polynomial.zero()
    for members in combinations(range(len(d)), order):
        if not d.is_connected(members):
            continue
        for part in set_partitions(members):
            if not all(d.is_connected(b) for b in part):
                continue
            blocks = [tuple(b) for b in part]
            phi = _phi_brute(d, blocks)
            power = sum(joint_moment(b, d.copies).degree() for b in blocks)
            total = total + Polynomial({power: phi * (-1) ** order})
    return total


def _phi_brute(d, blocks):
    if len(blocks) == 1:
        return Fraction(1)
    edges = []
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if any(d.adj_masks[a] >> b & 1 for a in blocks[i] for b in blocks[j]):
                edges.append((i + 1, j + 1))
    return ursell(SimpleGraph.from_edges(len(blocks), edges))


class TestExpansionTerms:
    def test_order1_n6(self):
        d = dependency_graph_for(6, 3)
        assert expansion_term(d, 1) == Polynomial({2: -90})

    def test_order1_is_minus_singleton_moments(self):
        d = dependency_graph_for(5, 3)
        expect = Polynomial.zero()
        for i in range(len(d)):
            expect = expect - joint_moment([i], d.copies)
        assert expansion_term(d, 1) == expect

    def test_order2_n6(self):
        # size-2 polymers contribute +p^3 each; the same index pairs split
        # into two adjacent singletons contribute -p^4 each.  720 of each.
        d = dependency_graph_for(6, 3)
        assert expansion_term(d, 2) == Polynomial({3: 720, 4: -720})

    def test_orders_match_bruteforce_n4(self):
        d = dependency_graph_for(4, 3)
        for order in (1, 2, 3, 4):
            assert expansion_term(d, order) == brute_force_term(d, order)

    def test_orders_match_bruteforce_n5(self):
        d = dependency_graph_for(5, 3)
        for order in (1, 2):
            assert expansion_term(d, order) == brute_force_term(d, order)

    def test_truncation_sums_orders(self):
        d = dependency_graph_for(5, 3)
        assert truncated_expansion(d, 2) == expansion_term(d, 1)
        assert truncated_expansion(d, 4) == (
            expansion_term(d, 1) + expansion_term(d, 2) + expansion_term(d, 3)
        )

    def test_worker_counts_agree(self):
        d = dependency_graph_for(6, 3)
        base = truncated_expansion(d, 4, workers=1)
        assert truncated_expansion(d, 4, workers=4) == base
        assert truncated_expansion(d, 4, workers=8) == base

    def test_cap_reports_partial_order(self):
        d = dependency_graph_for(6, 3)
        with pytest.raises(CapExceededError) as err:
            truncated_expansion(d, 4, cap=100)
        assert err.value.context["partial_order"] >= 2
        assert err.value.context["completed_orders"] == [1]

    def test_validation(self):
        d = dependency_graph_for(4, 3)
        with pytest.raises(ValidationError):
            expansion_term(d, 0)
        with pytest.raises(ValidationError):
            truncated_expansion(d, 1)


class TestCumulantClusterIdentity:
    @pytest.mark.parametrize("n", [4, 5])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_identity(self, n, k):
        d = dependency_graph_for(n, 3)
        assert truncated_expansion(d, k + 1) == cumulant_sum(d, k)

    def test_base_case(self):
        d = dependency_graph_for(5, 3)
        assert cumulant_sum(d, 1) == Polynomial({2: -30})


class TestMomentSum:
    def test_singletons(self):
        d = dependency_graph_for(6, 3)
        assert moment_sum(d, 1) == Polynomial({2: 90})

    def test_size2_n5_matches_pair_scan(self):
        d = dependency_graph_for(5, 3)
        expect = Polynomial.zero()
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d.adj_masks[i] >> j & 1:
                    expect = expect + joint_moment([i, j], d.copies)
        assert moment_sum(d, 2) == expect

    def test_matches_polymer_stream(self):
        d = dependency_graph_for(5, 3)
        expect = Polynomial.zero()
        for p in polymers_up_to(d, 3):
            if len(p) == 3:
                expect = expect + joint_moment(p.members, d.copies)
        assert moment_sum(d, 3) == expect


class TestSymbolicSeries:
    def test_p2_only(self):
        terms = symbolic_series(max_p_power=2)
        assert terms == [SeriesTerm(coeff=Fraction(-1, 4), n_falling=4, p_power=2)]

    def test_p3_terms(self):
        terms = {(t.n_falling, t.p_power): t.coeff for t in symbolic_series(max_p_power=3)}
        assert terms[(5, 3)] == Fraction(3, 4) - Fraction(1, 12)
        assert terms[(4, 3)] == Fraction(1, 2) - Fraction(1, 6)

    def test_strategies_agree_small(self):
        for b in (2, 3):
            assert structural_series_grouped(b) == interpolated_series_grouped(b)

    def test_grouped_matches_per_n_evaluation(self):
        # evaluating the structural series at a concrete n reproduces the
        # exact per-n power sums, for every (power, size) group
        grouped = structural_series_grouped(3)
        for n in (5, 6, 7):
            per_n = per_n_power_sums(n, 3)
            from linhyp.polynomial import falling_factorial

            expect: dict = {}
            for (a, b, s), c in grouped.items():
                v = c * falling_factorial(n, a)
                if v:
                    expect[(b, s)] = expect.get((b, s), Fraction(0)) + v
            expect = {k: v for k, v in expect.items() if v != 0}
            assert per_n == expect

    def test_symbolic_consistent_with_exact_orders(self):
        # the series restricted to one cluster size, evaluated at n=6,
        # agrees with the exact order term up to the power truncation
        d = dependency_graph_for(6, 3)
        grouped = structural_series_grouped(4)
        series = TruncatedSeries(
            per_order={i: expansion_term(d, i) for i in (1, 2, 3)},
            symbolic={
                s: [
                    SeriesTerm(coeff=c, n_falling=a, p_power=b)
                    for (a, b, ss), c in sorted(grouped.items())
                    if ss == s
                ]
                for s in (1, 2, 3)
            },
            symbolic_max_p_power=4,
        )
        assert series.check_consistency(6)

    def test_validation(self):
        with pytest.raises(ValidationError):
            symbolic_series(max_p_power=1)
        with pytest.raises(ValidationError):
            symbolic_series(max_p_power=4, r=4)


class TestUntruncatedForms:
    @pytest.mark.parametrize("n", [4, 5])
    def test_all_three_forms_equal(self, n):
        oracle = exact_linearity_polynomial(n, 3)
        assert inclusion_exclusion_polynomial(n, 3) == oracle
        assert hard_core_polynomial(n, 3) == oracle

    def test_hard_core_cap(self):
        with pytest.raises(CapExceededError):
            hard_core_polynomial(6, 3)


class TestIndependentReduction:
    @pytest.mark.parametrize("order", [1, 2, 3, 4, 5])
    def test_matches_log_series(self, order):
        assert independent_truncated_series(order) == log_taylor_truncated(order)

    def test_sum_over_indicators(self):
        # additivity over independent indicators, at exact rational means
        qs = [Fraction(1, 3), Fraction(1, 5), Fraction(1, 7)]
        series = independent_truncated_series(5)
        taylor = log_taylor_truncated(5)
        assert sum(series(q) for q in qs) == sum(taylor(q) for q in qs)


class TestSeriesEvaluation:
    def test_series_at_n6_matches_budgeted_sum(self):
        terms = symbolic_series(max_p_power=3)
        at6 = evaluate_series(terms, 6)
        per_n = per_n_power_sums(6, 3)
        expect = Polynomial.zero()
        for (b, _s), c in per_n.items():
            expect = expect + Polynomial({b: c})
        assert at6 == expect
