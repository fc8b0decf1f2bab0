"""Concave envelope of relaxation optima over all budgets.

The envelope is built by sweeping a grid of lambda values through the
compact min-cut network.  Each lambda where the maximal source set changes
yields a candidate breakpoint (budget, utility); candidates that exact
arithmetic proves dominated (grid tie artifacts) are discarded so that the
retained breakpoints have strictly increasing budgets and utilities and
strictly decreasing slopes.
"""

from __future__ import annotations

import csv
import io as _io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import flownet
from .errors import DegenerateInstanceError, InternalInvariantError, ParameterError
from .instance import QkpInstance, cost, objective

DEFAULT_GRID_SIZE = 1600


@dataclass(frozen=True)
class Breakpoint:
    lam: Optional[Fraction]     # grid lambda where the set first appeared
    set: frozenset
    budget: int
    utility: int


@dataclass(frozen=True)
class Envelope:
    breakpoints: tuple          # ordered by strictly increasing budget
    ub_lambda: Fraction
    grid_size: int
    instance_name: str
    n: int
    sweep_seconds: float = 0.0

    def validate(self) -> None:
        bps = self.breakpoints
        if not bps or bps[0].budget != 0:
            raise InternalInvariantError("envelope must start at budget 0")
        if len(bps) > self.n + 1:
            raise InternalInvariantError("more than n+1 breakpoints")
        prev_slope = None
        for lo, hi in zip(bps, bps[1:]):
            if not (hi.budget > lo.budget and hi.utility > lo.utility):
                raise InternalInvariantError("budgets/utilities not strictly increasing")
            if not lo.set < hi.set:
                raise InternalInvariantError("breakpoint sets not strictly nested")
            slope = Fraction(hi.utility - lo.utility, hi.budget - lo.budget)
            if prev_slope is not None and slope >= prev_slope:
                raise InternalInvariantError("slopes not strictly decreasing")
            prev_slope = slope


def lambda_upper_bound(inst: QkpInstance) -> Fraction:
    """Smallest grid anchor: max over q_i > 0 of (d_i + u_ii) / q_i, clamped at 0."""
    d = inst.out_degrees
    ratios = [Fraction(d[i] + inst.singleton_utilities[i], inst.costs[i])
              for i in range(inst.n) if inst.costs[i] > 0]
    if not ratios:
        raise DegenerateInstanceError("all node costs are zero; budget constraint vacuous")
    return max(max(ratios), Fraction(0))


def lambda_grid(ub, p: int):
    """Grid of p equidistant steps from ub down to 0 (p+1 values, both
    endpoints included).  The values are the multiples of ub/p, so doubling
    p yields a strict superset of the grid: refinement is monotone and can
    only add breakpoints, never lose one.
    """
    ub = Fraction(ub)
    if p < 2:
        raise ParameterError("grid size p must be at least 2")
    if ub < 0:
        raise ParameterError("ub must be nonnegative")
    if ub == 0:
        return [Fraction(0)]
    return [ub * Fraction(p - k, p) for k in range(p + 1)]


def _zero_cost_anchor_set(inst: QkpInstance, net) -> frozenset:
    """Source set at a lambda large enough that no positive-cost node can pay off."""
    d = inst.out_degrees
    total_u = sum(u for _, _, u in inst.arcs) + sum(abs(u) for u in inst.singleton_utilities)
    lam_safe = Fraction(max(d[i] + inst.singleton_utilities[i] for i in range(inst.n))
                        + total_u + 1)
    return flownet.min_cut(net, max(lam_safe, Fraction(1))).source_set


def _prune_inert_nodes(inst: QkpInstance, sset: frozenset) -> frozenset:
    """Drop positive-cost members that contribute nothing to the set.

    At the lambda=0 endpoint the maximal source set ties in every node whose
    weight is zero, including isolated nodes with no singleton utility and no
    arc into the set.  Those inflate the budget without raising the utility
    and can never appear in an earlier (lambda > 0) breakpoint set, so
    removing them keeps nesting intact and makes the endpoint canonical.
    """
    adj = inst.adjacency
    keep = frozenset(
        i for i in sset
        if inst.costs[i] == 0 or inst.singleton_utilities[i] != 0
        or any(j in sset for j in adj[i]))
    return keep


def build_envelope(inst: QkpInstance, p: int = DEFAULT_GRID_SIZE) -> Envelope:
    """Run the lambda sweep once and assemble the concave envelope."""
    t0 = time.perf_counter()
    ub = lambda_upper_bound(inst)
    grid = lambda_grid(ub, p) if ub > 0 else [Fraction(0)]
    net = flownet.build_qkp2_network(inst)
    swept = [(lam, _prune_inert_nodes(inst, s))
             for lam, s in flownet.parametric_sweep(net, grid)]

    candidates = []
    first_lam, first_set = swept[0]
    if cost(inst, first_set) > 0:
        # origin: zero-cost profitable nodes only, found at an off-grid lambda
        origin_set = _zero_cost_anchor_set(inst, net)
        candidates.append((None, origin_set))
    for lam, sset in swept:
        candidates.append((lam, sset))

    pts = []
    for lam, sset in candidates:
        pts.append(Breakpoint(lam=lam, set=sset,
                              budget=cost(inst, sset), utility=objective(inst, sset)))

    hull = []
    for pt in pts:
        if hull and pt.budget == hull[-1].budget:
            if pt.utility <= hull[-1].utility:
                continue
            hull.pop()
        if hull and pt.utility <= hull[-1].utility:
            continue  # dominated by a cheaper set
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            # drop b if it lies on or below segment a -> pt (exact cross product)
            lhs = (b.utility - a.utility) * (pt.budget - a.budget)
            rhs = (pt.utility - a.utility) * (b.budget - a.budget)
            if lhs <= rhs:
                hull.pop()
            else:
                break
        hull.append(pt)

    if not hull or hull[0].budget != 0:
        hull.insert(0, Breakpoint(lam=None, set=frozenset(), budget=0, utility=0))

    env = Envelope(breakpoints=tuple(hull), ub_lambda=ub, grid_size=p,
                   instance_name=inst.name, n=inst.n,
                   sweep_seconds=time.perf_counter() - t0)
    env.validate()
    return env


def upper_bound_at(env: Envelope, budget) -> Fraction:
    """Piecewise-linear envelope value at the given budget (constant beyond)."""
    b = Fraction(budget)
    if b < 0:
        raise ParameterError("budget must be nonnegative")
    bps = env.breakpoints
    if b >= bps[-1].budget:
        return Fraction(bps[-1].utility)
    for lo, hi in zip(bps, bps[1:]):
        if lo.budget <= b <= hi.budget:
            return lo.utility + Fraction(hi.utility - lo.utility,
                                         hi.budget - lo.budget) * (b - lo.budget)
    raise InternalInvariantError("budget fell outside envelope segments")


def envelope_to_csv(env: Envelope) -> str:
    """CSV rows lambda,budget,utility,set_size for plotting."""
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lambda", "budget", "utility", "set_size"])
    for bp in env.breakpoints:
        w.writerow(["" if bp.lam is None else str(bp.lam),
                    bp.budget, bp.utility, len(bp.set)])
    return buf.getvalue()


def envelope_sets_json(env: Envelope) -> str:
    """JSON sidecar with the full breakpoint sets."""
    data = {
        "instance": env.instance_name,
        "grid_size": env.grid_size,
        "ub_lambda": str(env.ub_lambda),
        "breakpoints": [
            {"lambda": None if bp.lam is None else str(bp.lam),
             "budget": bp.budget, "utility": bp.utility,
             "set": sorted(bp.set)}
            for bp in env.breakpoints
        ],
    }
    return json.dumps(data, indent=2)
