"""Breakpoints heuristic: envelope lookup plus greedy repair between breakpoints.

For a budget hitting a breakpoint the breakpoint set is returned as-is
(it is optimal for its own budget).  For budgets strictly between two
breakpoints the solution is the better of greedy-left from the lower
breakpoint set and greedy-right from the upper one.  Multiple budgets that
share a bracket reuse one recorded greedy trajectory.

Greedy ratios are compared exactly: each candidate's marginal utility per
unit cost is ranked via integer keys marginal * (L / q) where L is a common
multiple of all node costs, which orders identically to the exact rationals.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .envelope import Envelope, upper_bound_at
from .errors import MismatchError, ParameterError
from .instance import QkpInstance, cost, objective


@dataclass(frozen=True)
class SolveResult:
    set: frozenset
    objective: int
    cost: int
    method_tag: str         # breakpoint-exact | greedy-left | greedy-right | below-first-breakpoint
    upper_bound: Fraction
    sweep_seconds: float = 0.0
    repair_seconds: float = 0.0
    timed_out: bool = False


def _ratio_scale(inst: QkpInstance) -> int:
    return math.lcm(*(q for q in inst.costs if q > 0)) if any(inst.costs) else 1


class _GreedyLeft:
    """Incremental greedy-add state seeded from a start set.

    Candidates with nonpositive marginal utility are skipped; zero-cost
    candidates are added outright as soon as their marginal turns positive.
    Ties break toward the lower node index.
    """

    def __init__(self, inst: QkpInstance, start_set, budget: int):
        self.inst = inst
        self.sel = set(start_set)
        self.budget = budget
        self.cur_cost = cost(inst, self.sel)
        if self.cur_cost > budget:
            raise ParameterError("greedy-left start set exceeds the budget")
        self.cur_obj = objective(inst, self.sel)
        self.scale = _ratio_scale(inst)
        adj = inst.adjacency
        self.marg = {}
        for i in range(inst.n):
            if i not in self.sel:
                self.marg[i] = inst.singleton_utilities[i] + sum(
                    u for j, u in adj[i].items() if j in self.sel)
        self.dead = set()  # nodes that no longer fit; cost only grows
        self.free = sorted(i for i in self.marg if inst.costs[i] == 0)
        self.heap = []
        for i, mg in self.marg.items():
            if inst.costs[i] > 0:
                heapq.heappush(self.heap, (-mg * (self.scale // inst.costs[i]), i, mg))
        self.trace = []  # (node, cumulative cost, cumulative objective)

    def _absorb_free(self):
        again = bool(self.free)
        while again:
            again = False
            for i in self.free:
                if i not in self.sel and self.marg[i] > 0:
                    self._add(i)
                    again = True
                    break

    def _add(self, i):
        self.sel.add(i)
        self.cur_cost += self.inst.costs[i]
        self.cur_obj += self.marg.pop(i)
        self.trace.append((i, self.cur_cost, self.cur_obj))
        for j, u in self.inst.adjacency[i].items():
            if j in self.marg:
                self.marg[j] += u
                if self.inst.costs[j] > 0 and j not in self.dead:
                    heapq.heappush(self.heap, (
                        -self.marg[j] * (self.scale // self.inst.costs[j]), j, self.marg[j]))

    def run(self):
        self._absorb_free()
        while self.heap:
            negkey, i, mg = self.heap[0]
            if i in self.sel or i in self.dead or mg != self.marg.get(i):
                heapq.heappop(self.heap)
                continue
            if mg <= 0:
                break  # true maximum ratio is nonpositive; nothing can improve
            if self.cur_cost + self.inst.costs[i] > self.budget:
                heapq.heappop(self.heap)
                self.dead.add(i)
                continue
            heapq.heappop(self.heap)
            self._add(i)
            self._absorb_free()
        return frozenset(self.sel)


def greedy_left(inst: QkpInstance, start_set, budget: int):
    """Add nodes by maximum marginal-utility-to-cost ratio while they fit."""
    return _GreedyLeft(inst, start_set, int(budget)).run()


class _GreedyRight:
    """Removal trajectory from a start set: drop the member whose pairwise
    utility per unit cost inside the set is smallest, until the cost target
    is met.  Zero-cost members are never removed."""

    def __init__(self, inst: QkpInstance, start_set):
        self.inst = inst
        self.sel = set(start_set)
        self.cur_cost = cost(inst, self.sel)
        self.cur_obj = objective(inst, self.sel)
        self.scale = _ratio_scale(inst)
        adj = inst.adjacency
        self.inner = {i: sum(u for j, u in adj[i].items() if j in self.sel)
                      for i in self.sel}
        self.heap = []
        for i in self.sel:
            if inst.costs[i] > 0:
                heapq.heappush(self.heap, (
                    self.inner[i] * (self.scale // inst.costs[i]), i, self.inner[i]))
        self.trace = []  # (node, cost after removal, objective after removal)

    def remove_one(self) -> bool:
        while self.heap:
            key, i, snap = self.heap[0]
            if i not in self.sel or snap != self.inner[i]:
                heapq.heappop(self.heap)
                continue
            heapq.heappop(self.heap)
            self.sel.remove(i)
            self.cur_cost -= self.inst.costs[i]
            self.cur_obj -= self.inner.pop(i) + self.inst.singleton_utilities[i]
            for j, u in self.inst.adjacency[i].items():
                if j in self.inner:
                    self.inner[j] -= u
                    if self.inst.costs[j] > 0:
                        heapq.heappush(self.heap, (
                            self.inner[j] * (self.scale // self.inst.costs[j]),
                            j, self.inner[j]))
            self.trace.append((i, self.cur_cost, self.cur_obj))
            return True
        return False

    def run_to(self, budget: int):
        while self.cur_cost > budget:
            if not self.remove_one():
                break
        return frozenset(self.sel)


def greedy_right(inst: QkpInstance, start_set, budget: int):
    """Remove lowest-|delta| members until the budget is met, then top up."""
    budget = int(budget)
    gr = _GreedyRight(inst, start_set)
    reduced = gr.run_to(budget)
    if cost(inst, reduced) < budget:
        return greedy_left(inst, reduced, budget)
    return reduced


def _below_first(inst: QkpInstance, origin_set, budget: int):
    """Seeded greedy-left for budgets under the first positive breakpoint.

    Two seeds are tried: the fitting node of maximum weighted degree
    d_i + u_ii (the degree signal that drives the relaxation) and the
    fitting node of maximum singleton utility (the better single-node
    answer when the budget holds little else).  The higher-objective
    greedy-left result wins; ties keep the weighted-degree seed.
    """
    d = inst.out_degrees
    start = set(origin_set)
    base = cost(inst, start)
    seed_deg = None
    seed_single = None
    for i in range(inst.n):
        if i in start or inst.costs[i] == 0:
            continue
        if base + inst.costs[i] <= budget:
            w = d[i] + inst.singleton_utilities[i]
            if seed_deg is None or w > seed_deg[0]:
                seed_deg = (w, i)
            u = inst.singleton_utilities[i]
            if seed_single is None or u > seed_single[0]:
                seed_single = (u, i)
    if seed_deg is None:
        return greedy_left(inst, start, budget)
    best = greedy_left(inst, start | {seed_deg[1]}, budget)
    if seed_single is not None and seed_single[1] != seed_deg[1]:
        alt = greedy_left(inst, start | {seed_single[1]}, budget)
        if objective(inst, alt) > objective(inst, best):
            best = alt
    return best


def solve(inst: QkpInstance, env: Envelope, budgets) -> list:
    """Solve the instance for each budget using the prebuilt envelope.

    Budgets may be ints or Budget objects; results come back in input order.
    """
    if env.instance_name != inst.name or env.n != inst.n:
        raise MismatchError("envelope was built for a different instance")
    values = [b.value if hasattr(b, "value") else int(b) for b in budgets]
    if any(b < 0 for b in values):
        raise ParameterError("budgets must be nonnegative")

    bps = env.breakpoints
    bp_budgets = [bp.budget for bp in bps]
    results: dict = {}
    order = sorted(set(values))

    # group budgets by bracket so greedy trajectories are recorded once
    brackets: dict = {}
    for b in order:
        if b in bp_budgets:
            continue
        lo = max(k for k in range(len(bps)) if bp_budgets[k] < b)
        brackets.setdefault(lo, []).append(b)

    for b in order:
        if b in bp_budgets:
            bp = bps[bp_budgets.index(b)]
            results[b] = (bp.set, "breakpoint-exact", 0.0)

    for lo, group in brackets.items():
        t0 = time.perf_counter()
        bmax = max(group)
        if lo == 0 and len(bps) > 1:
            # below the first positive breakpoint: seeded greedy-left,
            # cross-checked against removal from the first breakpoint set
            right = _GreedyRight(inst, bps[1].set)
            right.run_to(min(group))
            for b in group:
                s = _below_first(inst, bps[0].set, b)
                best = (objective(inst, s), s)
                rset = set(bps[1].set)
                rcost, robj = bps[1].budget, bps[1].utility
                for node, ccost, cobj in right.trace:
                    if rcost <= b:
                        break
                    rset.discard(node)
                    rcost, robj = ccost, cobj
                if rcost <= b:
                    if rcost < b:
                        rset = set(greedy_left(inst, rset, b))
                        robj = objective(inst, rset)
                    if robj > best[0]:
                        best = (robj, frozenset(rset))
                results[b] = (best[1], "below-first-breakpoint",
                              time.perf_counter() - t0)
            continue
        gl = _GreedyLeft(inst, bps[lo].set, bmax)
        gl.run()
        left_trace = gl.trace
        right = None
        if lo + 1 < len(bps):
            right = _GreedyRight(inst, bps[lo + 1].set)
            right.run_to(min(group))
        for b in group:
            lset = set(bps[lo].set)
            lcost, lobj = bps[lo].budget, bps[lo].utility
            for node, ccost, cobj in left_trace:
                if ccost > b:
                    break
                lset.add(node)
                lcost, lobj = ccost, cobj
            if lcost < b:
                # resuming from the shared prefix replays exactly what a
                # fresh greedy-left run at this budget would do next
                lset = set(greedy_left(inst, lset, b))
                lobj = objective(inst, lset)
            best = (lobj, frozenset(lset), "greedy-left")
            if right is not None:
                rset = set(bps[lo + 1].set)
                rcost, robj = bps[lo + 1].budget, bps[lo + 1].utility
                for node, ccost, cobj in right.trace:
                    if rcost <= b:
                        break
                    rset.discard(node)
                    rcost, robj = ccost, cobj
                if rcost <= b:
                    if rcost < b:
                        rset = set(greedy_left(inst, rset, b))
                        robj = objective(inst, rset)
                    if robj > best[0]:
                        best = (robj, frozenset(rset), "greedy-right")
            results[b] = (best[1], best[2], time.perf_counter() - t0)

    # a solution for a smaller budget stays feasible at a larger one, so
    # carrying the running best forward keeps objectives monotone in budget
    carry = None
    for b in order:
        sset, tag, rt = results[b]
        obj = objective(inst, sset)
        if carry is not None and carry[0] > obj:
            results[b] = (carry[1], carry[2], rt)
            obj = carry[0]
        if carry is None or obj > carry[0]:
            carry = (obj, results[b][0], results[b][1])

    out = []
    for b in values:
        sset, tag, rt = results[b]
        out.append(SolveResult(
            set=sset, objective=objective(inst, sset), cost=cost(inst, sset),
            method_tag=tag, upper_bound=upper_bound_at(env, b),
            sweep_seconds=env.sweep_seconds, repair_seconds=rt))
    return out


def solve_budgets(inst: QkpInstance, budgets, p: int = 1600):
    """Convenience wrapper: build the envelope once, then solve all budgets."""
    from .envelope import build_envelope
    env = build_envelope(inst, p)
    return env, solve(inst, env, budgets)
