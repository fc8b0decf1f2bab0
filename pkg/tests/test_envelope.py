import json
from fractions import Fraction

import pytest

from conftest import random_instance, t1
from qkbp import (DegenerateInstanceError, ParameterError, QkpInstance,
                  brute_force, build_envelope, cost, envelope_sets_json,
                  envelope_to_csv, lambda_grid, lambda_upper_bound, objective,
                  upper_bound_at)
from qkbp.baselines import SubsetEnumeration


class TestLambdaUpperBound:
    def test_t1(self):
        assert lambda_upper_bound(t1()) == Fraction(13, 2)

    def test_single_node(self):
        inst = QkpInstance(n=1, costs=(1,), singleton_utilities=(5,), arcs=())
        assert lambda_upper_bound(inst) == 5

    def test_clamped_at_zero(self):
        inst = QkpInstance(n=2, costs=(1, 2), singleton_utilities=(-3, -1), arcs=())
        assert lambda_upper_bound(inst) == 0
        env = build_envelope(inst, p=8)
        assert len(env.breakpoints) == 1
        assert env.breakpoints[0].budget == 0

    def test_all_zero_costs_degenerate(self):
        inst = QkpInstance(n=2, costs=(0, 0), singleton_utilities=(1, 1), arcs=())
        with pytest.raises(DegenerateInstanceError):
            lambda_upper_bound(inst)


class TestLambdaGrid:
    def test_three_steps(self):
        assert lambda_grid(Fraction(13, 2), 3) == [
            Fraction(13, 2), Fraction(13, 3), Fraction(13, 6), Fraction(0)]

    def test_collapsed(self):
        assert lambda_grid(0, 7) == [Fraction(0)]

    def test_two_steps(self):
        assert lambda_grid(1, 2) == [Fraction(1), Fraction(1, 2), Fraction(0)]

    def test_doubling_refines_in_place(self):
        ub = Fraction(13, 2)
        for p in (2, 5, 16):
            assert set(lambda_grid(ub, p)) <= set(lambda_grid(ub, 2 * p))

    def test_small_p_rejected(self):
        with pytest.raises(ParameterError):
            lambda_grid(1, 1)


class TestBuildEnvelope:
    def test_t1(self):
        env = build_envelope(t1(), p=1600)
        bps = env.breakpoints
        assert len(bps) == 2
        assert (bps[0].set, bps[0].budget, bps[0].utility) == (frozenset(), 0, 0)
        assert (bps[1].set, bps[1].budget, bps[1].utility) == ({0, 1}, 5, 13)
        assert abs(float(bps[1].lam) - 2.6) < 0.01

    def test_arcless_two_breakpoints(self):
        inst = QkpInstance(n=2, costs=(1, 1), singleton_utilities=(4, 1), arcs=())
        env = build_envelope(inst, p=64)
        got = [(bp.budget, bp.utility, bp.set) for bp in env.breakpoints]
        assert got == [(0, 0, frozenset()), (1, 4, {0}), (2, 5, {0, 1})]

    def test_all_negative_singletons(self):
        inst = QkpInstance(n=3, costs=(1, 1, 1),
                           singleton_utilities=(-1, -2, -3), arcs=())
        env = build_envelope(inst, p=16)
        assert len(env.breakpoints) == 1

    def test_zero_cost_profitable_nodes_everywhere(self):
        inst = QkpInstance(n=3, costs=(0, 2, 3), singleton_utilities=(7, 4, 9),
                           arcs=((0, 1, 5),))
        env = build_envelope(inst, p=64)
        assert env.breakpoints[0].budget == 0
        for bp in env.breakpoints:
            assert 0 in bp.set
        assert env.breakpoints[0].utility == 7

    def test_invariants_on_random_instances(self):
        for seed in range(15):
            inst = random_instance(seed + 200, n_lo=3, n_hi=14)
            env = build_envelope(inst, p=128)
            env.validate()
            assert len(env.breakpoints) <= inst.n + 1
            for bp in env.breakpoints:
                assert bp.budget == cost(inst, bp.set)
                assert bp.utility == objective(inst, bp.set)

    def test_breakpoints_are_optimal(self):
        for seed in range(10):
            inst = random_instance(seed + 220, n_lo=4, n_hi=12)
            env = build_envelope(inst, p=256)
            enum = SubsetEnumeration(inst)
            for bp in env.breakpoints:
                assert enum.best_for_budget(bp.budget).objective == bp.utility

    def test_first_breakpoint_ratio_property(self):
        # the first positive breakpoint maximizes utility/budget among all
        # subsets no larger than its budget -- checked only when the grid is
        # fine enough that doubling p leaves the first breakpoint unchanged
        for seed in range(8):
            inst = random_instance(seed + 240, n_lo=4, n_hi=10)
            env = build_envelope(inst, p=256)
            env2 = build_envelope(inst, p=512)
            if len(env.breakpoints) < 2:
                continue
            first = env.breakpoints[1]
            if env2.breakpoints[1].set != first.set:
                continue
            ratio = Fraction(first.utility, first.budget)
            for bits in range(1, 1 << inst.n):
                s = frozenset(i for i in range(inst.n) if (bits >> i) & 1)
                c = cost(inst, s)
                if 0 < c <= first.budget:
                    assert Fraction(objective(inst, s), c) <= ratio


class TestUpperBound:
    def test_breakpoint_hit(self):
        env = build_envelope(t1(), p=1600)
        assert upper_bound_at(env, 5) == 13

    def test_interpolation(self):
        env = build_envelope(t1(), p=1600)
        assert upper_bound_at(env, Fraction(5, 2)) == Fraction(13, 2)

    def test_origin(self):
        env = build_envelope(t1(), p=1600)
        assert upper_bound_at(env, 0) == 0

    def test_constant_beyond_last(self):
        env = build_envelope(t1(), p=1600)
        assert upper_bound_at(env, 1000) == 13

    def test_negative_budget_rejected(self):
        env = build_envelope(t1(), p=16)
        with pytest.raises(ParameterError):
            upper_bound_at(env, -1)

    def test_dominates_brute_force(self):
        for seed in range(6):
            inst = random_instance(seed + 260, n_lo=3, n_hi=9)
            env = build_envelope(inst, p=256)
            for budget in range(inst.total_cost + 2):
                best = brute_force(inst, budget)
                assert upper_bound_at(env, budget) >= best.objective


class TestExports:
    def test_csv_rows(self):
        env = build_envelope(t1(), p=1600)
        lines = envelope_to_csv(env).strip().split("\n")
        assert lines[0] == "lambda,budget,utility,set_size"
        assert len(lines) == 3  # header + origin + (5, 13)
        assert lines[2].endswith(",5,13,2")

    def test_json_sidecar(self):
        env = build_envelope(t1(), p=1600)
        data = json.loads(envelope_sets_json(env))
        assert data["instance"] == "t1"
        assert data["breakpoints"][-1]["set"] == [0, 1]
        assert data["breakpoints"][-1]["budget"] == 5
