"""Minimum-cut networks for the relaxed quadratic knapsack problem.

Two constructions are provided.  The compact one ("QKP2") places the
problem's nodes directly in the network with parametric source/sink
capacities max(a_i - b_i*lambda, 0) / max(b_i*lambda - a_i, 0) where
a_i = d_i + u_ii and b_i = q_i.  The bipartite one ("QKP1") adds one
interior node per arc and is kept as a cross-check oracle.

All cut computations use exact integer arithmetic: rational lambdas are
scaled to a common denominator before the solver runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _maxflow
from .errors import ContractViolationError, InternalInvariantError
from .instance import QkpInstance

_INT64_GUARD = 1 << 61

# counts parametric_sweep invocations; tests assert sweep reuse through it
_sweep_count = 0


def sweep_count() -> int:
    return _sweep_count


def reset_sweep_count() -> None:
    global _sweep_count
    _sweep_count = 0


@dataclass(frozen=True)
class FlowNetwork:
    """s,t network with fixed interior arcs and affine parametric terminals.

    Source capacity of interior node i at lambda is max(a_i - b_i*lambda, 0)
    and sink capacity is max(b_i*lambda - a_i, 0).
    """

    node_count: int
    interior_arcs: tuple        # (from, to, capacity) with int capacities
    source_a: tuple             # a_i, ints
    source_b: tuple             # b_i, nonnegative ints
    formulation_tag: str        # "QKP2" or "QKP1"
    node_offset: int = 0        # first interior index carrying original nodes


@dataclass(frozen=True)
class CutSolution:
    source_set: frozenset       # interior node indices on the source side
    cut_value: Fraction
    max_flow_value: Fraction


def build_qkp2_network(inst: QkpInstance) -> FlowNetwork:
    """Compact network: one interior node per problem node, one arc per arc."""
    d = inst.out_degrees
    a = tuple(d[i] + inst.singleton_utilities[i] for i in range(inst.n))
    return FlowNetwork(
        node_count=inst.n,
        interior_arcs=tuple(inst.arcs),
        source_a=a,
        source_b=tuple(inst.costs),
        formulation_tag="QKP2",
    )


def build_qkp1_network(inst: QkpInstance, lam) -> FlowNetwork:
    """Bipartite network with one "edge node" per arc (cross-check oracle).

    The unsaturable bound standing in for infinite capacity depends on the
    lambda the network will be solved at, so lambda is fixed here.
    """
    lam = Fraction(lam)
    if lam < 0:
        raise ContractViolationError("lambda must be nonnegative")
    inf_cap = (sum(u for _, _, u in inst.arcs)
               + sum(abs(u) for u in inst.singleton_utilities)
               + math.ceil(lam * sum(inst.costs)) + 1)
    m = inst.m
    arcs = []
    a = []
    b = []
    for k, (i, j, u) in enumerate(inst.arcs):
        arcs.append((k, m + i, inf_cap))
        arcs.append((k, m + j, inf_cap))
        a.append(u)
        b.append(0)
    for i in range(inst.n):
        a.append(inst.singleton_utilities[i])
        b.append(inst.costs[i])
    return FlowNetwork(
        node_count=m + inst.n,
        interior_arcs=tuple(arcs),
        source_a=tuple(a),
        source_b=tuple(b),
        formulation_tag="QKP1",
        node_offset=m,
    )


def source_capacity(net: FlowNetwork, lam, i: int) -> Fraction:
    w = net.source_a[i] - Fraction(lam) * net.source_b[i]
    return max(w, Fraction(0))


def sink_capacity(net: FlowNetwork, lam, i: int) -> Fraction:
    w = net.source_a[i] - Fraction(lam) * net.source_b[i]
    return max(-w, Fraction(0))


def _scaled_inputs(net: FlowNetwork, lams):
    den = math.lcm(*(lam.denominator for lam in lams))
    lam_nums = np.array([int(lam * den) for lam in lams], dtype=np.int64)
    a_scaled = np.array([ai * den for ai in net.source_a], dtype=np.int64)
    b = np.array(net.source_b, dtype=np.int64)
    arcs = [(u, v, c * den) for u, v, c in net.interior_arcs]
    bound = sum(abs(x) for x in net.source_a) * den
    bound += max((abs(int(x)) for x in lam_nums), default=0) * sum(net.source_b)
    bound += sum(c for _, _, c in arcs)
    if bound >= _INT64_GUARD:
        raise ContractViolationError("scaled capacities exceed the 64-bit budget")
    return den, lam_nums, a_scaled, b, arcs


def _run(net: FlowNetwork, lams):
    lams = [Fraction(l) for l in lams]
    if not lams:
        raise ContractViolationError("empty lambda sequence")
    if any(l < 0 for l in lams):
        raise ContractViolationError("lambdas must be nonnegative")
    if any(l1 <= l2 for l1, l2 in zip(lams, lams[1:])):
        raise ContractViolationError("lambda sequence must be strictly decreasing")
    den, lam_nums, a_scaled, b, arcs = _scaled_inputs(net, lams)
    n = net.node_count
    adj_start, adj_list, ent_to, af, at, ac = _maxflow.build_arc_arrays(n, arcs)
    cap = len(lams) if len(lams) < n + 2 else n + 2
    flags = np.zeros((cap, n), dtype=np.uint8)
    idx = np.zeros(cap, dtype=np.int64)
    cuts = np.zeros(cap, dtype=np.int64)
    flows = np.zeros(cap, dtype=np.int64)
    nch = _maxflow.run_parametric(n, adj_start, adj_list, ent_to, af, at, ac,
                                  a_scaled, b, lam_nums, flags, idx, cuts, flows)
    if nch == -1:
        raise ContractViolationError("parametric capacities are not monotone")
    if nch < 0:
        raise InternalInvariantError("nestedness violated inside the solver")
    out = []
    for c in range(nch):
        if cuts[c] != flows[c]:
            raise InternalInvariantError(
                f"cut/flow duality broken: cut={cuts[c]} flow={flows[c]}")
        sset = frozenset(int(i) for i in np.nonzero(flags[c])[0])
        out.append((lams[idx[c]], sset, Fraction(int(cuts[c]), den)))
    return out


def min_cut(net: FlowNetwork, lam) -> CutSolution:
    """Exact minimum s,t-cut at a single lambda; maximal source set on ties."""
    results = _run(net, [Fraction(lam)])
    lam_out, sset, value = results[0]
    return CutSolution(source_set=sset, cut_value=value, max_flow_value=value)


def parametric_sweep(net: FlowNetwork, lambdas):
    """Solve along a strictly decreasing lambda sequence with warm starts.

    Returns [(lambda, source_set)] for the first lambda and for every lambda
    at which the maximal-source-set minimum cut changed; consecutive sets are
    strictly nested increasing.
    """
    global _sweep_count
    _sweep_count += 1
    return [(lam, sset) for lam, sset, _ in _run(net, lambdas)]


def cut_capacity(net: FlowNetwork, lam, source_set) -> Fraction:
    """Capacity of the cut ({s} U S, {t} U rest) at lambda, exact."""
    lam = Fraction(lam)
    s = frozenset(source_set)
    total = Fraction(0)
    for i in range(net.node_count):
        total += sink_capacity(net, lam, i) if i in s else source_capacity(net, lam, i)
    for u, v, c in net.interior_arcs:
        if u in s and v not in s:
            total += c
    return total


def dump_dimacs(net: FlowNetwork, lam) -> str:
    """DIMACS max-flow text of the network at lambda, capacities pre-scaled
    to integers (scale recorded in a comment line)."""
    lam = Fraction(lam)
    den, lam_nums, a_scaled, b, arcs = _scaled_inputs(net, [lam])
    n = net.node_count
    s, t = n + 1, n + 2
    lines = [f"c {net.formulation_tag} network at lambda={lam} (capacities x{den})",
             f"p max {n + 2} {len(arcs) + 2 * n}"]
    lines.append(f"n {s} s")
    lines.append(f"n {t} t")
    for i in range(n):
        w = int(a_scaled[i]) - int(b[i]) * int(lam_nums[0])
        lines.append(f"a {s} {i + 1} {max(w, 0)}")
        lines.append(f"a {i + 1} {t} {max(-w, 0)}")
    for u, v, c in arcs:
        lines.append(f"a {u + 1} {v + 1} {c}")
    return "\n".join(lines) + "\n"
