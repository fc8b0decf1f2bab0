from fractions import Fraction

import pytest

from conftest import random_instance, t1
from qkbp import (Budget, InvalidNodeSetError, QkpInstance, cost,
                  crossing_utility, objective, s_excess_weights,
                  weighted_out_degrees)


def all_subsets(n):
    for bits in range(1 << n):
        yield frozenset(i for i in range(n) if (bits >> i) & 1)


class TestObjectiveAndCost:
    def test_objective_full_set(self):
        assert objective(t1(), {0, 1}) == 13

    def test_objective_empty(self):
        assert objective(t1(), frozenset()) == 0

    def test_objective_singleton_excludes_arc(self):
        assert objective(t1(), {0}) == 3

    def test_cost_examples(self):
        inst = t1()
        assert cost(inst, {0, 1}) == 5
        assert cost(inst, frozenset()) == 0
        assert cost(inst, {1}) == 3

    def test_invalid_set_rejected(self):
        with pytest.raises(InvalidNodeSetError):
            objective(t1(), {0, 5})
        with pytest.raises(InvalidNodeSetError):
            cost(t1(), {-1})

    def test_additive_under_disjoint_union(self):
        a = random_instance(1, n_lo=4, n_hi=6)
        b = random_instance(2, n_lo=3, n_hi=5)
        merged = QkpInstance(
            n=a.n + b.n, costs=a.costs + b.costs,
            singleton_utilities=a.singleton_utilities + b.singleton_utilities,
            arcs=a.arcs + tuple((i + a.n, j + a.n, u) for i, j, u in b.arcs))
        sa = frozenset([0, 1, a.n - 1])
        sb = frozenset([0, b.n - 1])
        merged_set = sa | frozenset(i + a.n for i in sb)
        assert objective(merged, merged_set) == objective(a, sa) + objective(b, sb)
        assert cost(merged, merged_set) == cost(a, sa) + cost(b, sb)


class TestDegreesAndWeights:
    def test_t1_degrees(self):
        assert weighted_out_degrees(t1()) == (10, 0)

    def test_arcless_degrees(self):
        inst = QkpInstance(n=3, costs=(1, 1, 1), singleton_utilities=(1, 2, 3), arcs=())
        assert weighted_out_degrees(inst) == (0, 0, 0)

    def test_path_degrees(self):
        inst = QkpInstance(n=3, costs=(1, 1, 1), singleton_utilities=(0, 0, 0),
                           arcs=((0, 1, 5), (1, 2, 7)))
        assert weighted_out_degrees(inst) == (5, 7, 0)

    def test_s_excess_weights_examples(self):
        inst = t1()
        assert s_excess_weights(inst, 0) == [13, 0]
        assert s_excess_weights(inst, 1) == [11, -3]
        assert s_excess_weights(inst, Fraction(13, 2)) == [0, Fraction(-39, 2)]

    def test_degree_identity(self):
        # d+(S) = C(S,S) + C(S, S-bar) for every subset
        for seed in range(8):
            inst = random_instance(seed, n_lo=3, n_hi=9)
            d = weighted_out_degrees(inst)
            for s in all_subsets(inst.n):
                inside = sum(u for i, j, u in inst.arcs if i in s and j in s)
                assert sum(d[i] for i in s) == inside + crossing_utility(inst, s)

    def test_relaxation_equivalence(self):
        # C(S,S) + U(S) - lambda q(S) = sum_{i in S} w_i - C(S, S-bar)
        for seed in range(8):
            inst = random_instance(seed + 50, n_lo=3, n_hi=8)
            for lam in (Fraction(0), Fraction(1, 3), Fraction(5, 2)):
                w = s_excess_weights(inst, lam)
                for s in all_subsets(inst.n):
                    lhs = objective(inst, s) - lam * cost(inst, s)
                    rhs = sum(w[i] for i in s) - crossing_utility(inst, s)
                    assert lhs == rhs


class TestConstruction:
    def test_arcs_canonicalized(self):
        inst = QkpInstance(n=3, costs=(1, 1, 1), singleton_utilities=(0, 0, 0),
                           arcs=((2, 0, 4),))
        assert inst.arcs == ((0, 2, 4),)

    def test_zero_utility_arcs_dropped(self):
        inst = QkpInstance(n=2, costs=(1, 1), singleton_utilities=(0, 0),
                           arcs=((0, 1, 0),))
        assert inst.m == 0

    def test_duplicate_arc_rejected(self):
        with pytest.raises(ValueError):
            QkpInstance(n=2, costs=(1, 1), singleton_utilities=(0, 0),
                        arcs=((0, 1, 2), (1, 0, 3)))

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            QkpInstance(n=2, costs=(1, 1), singleton_utilities=(0, 0),
                        arcs=((1, 1, 2),))

    def test_negative_utility_rejected(self):
        with pytest.raises(ValueError):
            QkpInstance(n=2, costs=(1, 1), singleton_utilities=(0, 0),
                        arcs=((0, 1, -2),))

    def test_negative_cost_rejected(self):
        with pytest.raises(ValueError):
            QkpInstance(n=1, costs=(-1,), singleton_utilities=(0,), arcs=())

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            QkpInstance(n=2, costs=(1,), singleton_utilities=(0, 0), arcs=())

    def test_density(self):
        assert t1().density == Fraction(1)
        inst = QkpInstance(n=4, costs=(1,) * 4, singleton_utilities=(0,) * 4,
                           arcs=((0, 1, 1), (2, 3, 1)))
        assert inst.density == Fraction(2, 6)


class TestBudget:
    def test_from_fraction_floor(self):
        b = Budget.from_fraction(Fraction("0.025"), 1000)
        assert b.value == 25 and b.gamma == Fraction(1, 40)
        assert Budget.from_fraction(Fraction(1, 3), 10).value == 3

    def test_gamma_range(self):
        with pytest.raises(ValueError):
            Budget.from_fraction(Fraction(0), 10)
        with pytest.raises(ValueError):
            Budget.from_fraction(Fraction(1), 10)

    def test_negative_value_rejected(self):
        with pytest.raises(ValueError):
            Budget(value=-1)
