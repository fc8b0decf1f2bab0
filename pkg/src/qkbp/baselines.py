"""Reference algorithms: exhaustive oracles and simple greedy baselines.

The oracles enumerate every subset with vectorized bit arithmetic; they are
deliberately free of pruning so results are trivially auditable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import ParameterError
from .instance import QkpInstance, cost, objective
from .solver import SolveResult, greedy_left

_BRUTE_LIMIT = 24
_S_EXCESS_LIMIT = 20
_CHUNK = 1 << 20


@dataclass(frozen=True)
class OracleResult:
    objective: int
    set: frozenset
    subsets_enumerated: int


class SubsetEnumeration:
    """Objective and cost of every subset, evaluated in chunks.

    Reused across budget queries so a single enumeration pass serves many
    breakpoints of the same instance.
    """

    def __init__(self, inst: QkpInstance):
        if inst.n > _BRUTE_LIMIT:
            raise ParameterError(f"refusing to enumerate n={inst.n} > {_BRUTE_LIMIT}")
        self.inst = inst
        n = inst.n
        total = 1 << n
        self.obj = np.zeros(total, dtype=np.int64)
        self.cost = np.zeros(total, dtype=np.int64)
        for lo in range(0, total, _CHUNK):
            hi = min(lo + _CHUNK, total)
            masks = np.arange(lo, hi, dtype=np.int64)
            bits = [((masks >> i) & 1).astype(np.int64) for i in range(n)]
            o = np.zeros(hi - lo, dtype=np.int64)
            c = np.zeros(hi - lo, dtype=np.int64)
            for i in range(n):
                o += inst.singleton_utilities[i] * bits[i]
                c += inst.costs[i] * bits[i]
            for i, j, u in inst.arcs:
                o += u * (bits[i] & bits[j])
            self.obj[lo:hi] = o
            self.cost[lo:hi] = c

    def best_for_budget(self, budget: int) -> OracleResult:
        feas = self.cost <= int(budget)
        best = int(self.obj[feas].max())
        winners = np.nonzero(feas & (self.obj == best))[0]
        sets = [frozenset(i for i in range(self.inst.n) if (int(w) >> i) & 1)
                for w in winners]
        pick = min(sets, key=lambda s: tuple(sorted(s)))
        return OracleResult(objective=best, set=pick,
                            subsets_enumerated=len(self.obj))

    def s_excess_best(self, lam):
        """Exact maximizer of objective - lambda*cost; maximal set on ties."""
        lam = Fraction(lam)
        vals = self.obj * lam.denominator - self.cost * lam.numerator
        best = int(vals.max())
        winners = np.nonzero(vals == best)[0]
        union = 0
        for w in winners:
            union |= int(w)
        assert int(vals[union]) == best, "maximizers not closed under union"
        sset = frozenset(i for i in range(self.inst.n) if (union >> i) & 1)
        return Fraction(best, lam.denominator), sset


def brute_force(inst: QkpInstance, budget: int) -> OracleResult:
    """Exact optimum by full enumeration; n is guarded at 24."""
    return SubsetEnumeration(inst).best_for_budget(budget)


def brute_force_s_excess(inst: QkpInstance, lam):
    """Exact s-excess optimum (value, maximal set); n is guarded at 20."""
    if inst.n > _S_EXCESS_LIMIT:
        raise ParameterError(f"refusing to enumerate n={inst.n} > {_S_EXCESS_LIMIT}")
    return SubsetEnumeration(inst).s_excess_best(lam)


def rg_heuristic(inst: QkpInstance, budget: int,
                 time_limit: Optional[float] = None) -> SolveResult:
    """Relative greedy: greedy-left restarted from every fitting seed node.

    The time limit is checked before each restart; on expiry the best
    solution found so far is returned with timed_out set.
    """
    budget = int(budget)
    start = time.perf_counter()
    best_set = frozenset()
    best_obj = 0
    timed_out = False
    for i in range(inst.n):
        if inst.costs[i] > budget:
            continue
        if time_limit is not None and time.perf_counter() - start > time_limit:
            timed_out = True
            break
        s = greedy_left(inst, frozenset([i]), budget)
        o = objective(inst, s)
        if o > best_obj:
            best_obj, best_set = o, s
    return SolveResult(set=best_set, objective=best_obj, cost=cost(inst, best_set),
                       method_tag="rg", upper_bound=Fraction(best_obj),
                       repair_seconds=time.perf_counter() - start,
                       timed_out=timed_out)


def weight_sort_greedy(inst: QkpInstance, budget: int) -> SolveResult:
    """Include nodes in non-decreasing cost order while they fit."""
    budget = int(budget)
    t0 = time.perf_counter()
    sel = set()
    used = 0
    for i in sorted(range(inst.n), key=lambda i: (inst.costs[i], i)):
        if used + inst.costs[i] <= budget:
            sel.add(i)
            used += inst.costs[i]
    s = frozenset(sel)
    o = objective(inst, s)
    return SolveResult(set=s, objective=o, cost=used, method_tag="weight-sort",
                       upper_bound=Fraction(o),
                       repair_seconds=time.perf_counter() - t0)
