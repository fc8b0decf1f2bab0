import math

import pytest

from qkbp import (GeneratorSpec, ParameterError, gen_dispersion, gen_large,
                  gen_standard, gen_teamformation, generate)
from qkbp.generators import jaccard_utility


def binomial_4sigma(m, pairs, prob):
    mean = pairs * prob
    sigma = math.sqrt(pairs * prob * (1 - prob))
    return abs(m - mean) <= 4 * sigma


class TestStandard:
    def test_ranges_and_budget(self):
        inst, budget = gen_standard(100, 25.0, seed=7)
        assert all(1 <= q <= 50 for q in inst.costs)
        assert all(u == 0 or 1 <= u <= 100 for u in inst.singleton_utilities)
        assert all(1 <= u <= 100 for _, _, u in inst.arcs)
        assert 50 <= budget.value <= inst.total_cost

    def test_density_concentration(self):
        inst, _ = gen_standard(100, 25.0, seed=3)
        assert binomial_4sigma(inst.m, 100 * 99 // 2, 0.25)

    def test_complete_graph(self):
        inst, _ = gen_standard(30, 100.0, seed=1)
        assert inst.m == 30 * 29 // 2
        assert all(u > 0 for u in inst.singleton_utilities)

    def test_determinism(self):
        a, ba = gen_standard(50, 50.0, seed=11)
        b, bb = gen_standard(50, 50.0, seed=11)
        assert a.costs == b.costs and a.arcs == b.arcs
        assert a.singleton_utilities == b.singleton_utilities
        assert ba.value == bb.value

    def test_tiny_total_cost_warns(self):
        with pytest.warns(UserWarning):
            inst, budget = gen_standard(2, 100.0, seed=3)  # total cost 46
        assert 1 <= budget.value <= inst.total_cost

    def test_n_guard(self):
        with pytest.raises(ParameterError):
            gen_standard(1, 50.0, seed=0)


class TestLarge:
    def test_budgets_floor(self):
        gammas = ["1/40", "1/20", "1/10", "1/4", "1/2", "3/4"]
        inst, budgets = gen_large(200, 25.0, gammas, seed=5)
        total = inst.total_cost
        from fractions import Fraction
        expect = [int(Fraction(g) * total) for g in gammas]
        assert [b.value for b in budgets] == expect
        assert [b.value for b in budgets] == sorted(b.value for b in budgets)

    def test_density_concentration(self):
        inst, _ = gen_large(500, 5.0, ["1/2"], seed=2)
        assert binomial_4sigma(inst.m, 500 * 499 // 2, 0.05)


class TestDispersion:
    def test_no_singletons(self):
        for strategy in ("geo", "wgeo", "expo", "ran"):
            inst, _ = gen_dispersion(60, 50.0, strategy, ["1/2"], seed=4)
            assert inst.singleton_utilities == (0,) * 60
            assert all(1 <= q <= 100 for q in inst.costs)
            assert all(u >= 1 for _, _, u in inst.arcs)

    def test_ran_range(self):
        inst, _ = gen_dispersion(80, 50.0, "ran", ["1/2"], seed=6)
        assert all(1 <= u <= 100 for _, _, u in inst.arcs)

    def test_geo_diagonal_bound(self):
        inst, _ = gen_dispersion(120, 100.0, "geo", ["1/2"], seed=8)
        assert all(u <= 142 for _, _, u in inst.arcs)

    def test_wgeo_bound(self):
        inst, _ = gen_dispersion(120, 100.0, "wgeo", ["1/2"], seed=8)
        bound = round(100 * math.sqrt(2) * 100)
        assert all(u <= bound for _, _, u in inst.arcs)

    def test_unknown_strategy(self):
        with pytest.raises(ParameterError):
            gen_dispersion(10, 50.0, "polar", ["1/2"], seed=0)


class TestTeamFormation:
    def test_structure(self):
        inst, budgets = gen_teamformation(60, 500, ["1/10", "1/2"], seed=9)
        assert inst.singleton_utilities == (0,) * 60
        assert all(1 <= q <= 10 for q in inst.costs)
        assert all(1 <= u <= 1000 for _, _, u in inst.arcs)
        assert len(budgets) == 2

    def test_jaccard_utility(self):
        assert jaccard_utility(0.0) == 0
        assert jaccard_utility(1.0) == 1000
        assert jaccard_utility(0.0001) == 1  # positive similarity keeps the arc
        assert jaccard_utility(0.5) == 500

    def test_identical_project_sets_max_utility(self):
        # with one project total, every expert shares it: all Jaccards are 1
        inst, _ = gen_teamformation(5, 1, ["1/2"], seed=0)
        assert inst.m == 5 * 4 // 2
        assert all(u == 1000 for _, _, u in inst.arcs)

    def test_determinism(self):
        a, _ = gen_teamformation(40, 1000, ["1/2"], seed=3)
        b, _ = gen_teamformation(40, 1000, ["1/2"], seed=3)
        assert a.arcs == b.arcs and a.costs == b.costs

    def test_density_window_matches_published_corpus(self):
        inst, _ = gen_teamformation(1000, 30000, ["1/2"], seed=0)
        assert 0.10 <= float(inst.density) <= 0.16


class TestDispatcher:
    def test_families(self):
        spec = GeneratorSpec(family="standard", n=20, density=50.0, seed=1)
        inst, budget = generate(spec)
        assert inst.n == 20
        spec = GeneratorSpec(family="dispersion", n=20, density=50.0,
                             strategy="ran", gammas=("1/2",), seed=1)
        inst, budgets = generate(spec)
        assert len(budgets) == 1

    def test_teamformation_default_projects(self):
        spec = GeneratorSpec(family="teamformation2", n=30, gammas=("1/2",), seed=1)
        inst, _ = generate(spec)
        assert inst.n == 30

    def test_unknown_family(self):
        with pytest.raises(ParameterError):
            generate(GeneratorSpec(family="mystery", n=5, seed=0))

    def test_as_dict(self):
        spec = GeneratorSpec(family="large", n=10, density=25.0,
                             gammas=("1/4",), seed=2)
        d = spec.as_dict()
        assert d["family"] == "large" and d["gammas"] == ["1/4"]
