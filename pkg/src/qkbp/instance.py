"""Quadratic knapsack problem data and formulation-level quantities.

An instance is a directed graph on nodes 0..n-1 with positive pairwise
utilities on arcs (i, j), i < j, integer singleton utilities (any sign)
and nonnegative integer node costs.  A solution is a subset of nodes;
its value is the sum of singleton utilities plus the pairwise utilities
of arcs with both endpoints selected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional

from .errors import InvalidNodeSetError

NodeSet = frozenset  # set of node indices in [0, n)


@dataclass(eq=False)
class QkpInstance:
    """Immutable-by-convention problem data. Do not mutate after construction.

    Arcs are canonicalized to i < j on construction; zero-utility arcs are
    dropped; duplicate pairs and self-loops are rejected.
    """

    n: int
    costs: tuple
    singleton_utilities: tuple
    arcs: tuple
    name: str = "unnamed"

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        self.costs = tuple(int(q) for q in self.costs)
        self.singleton_utilities = tuple(int(u) for u in self.singleton_utilities)
        if len(self.costs) != self.n or len(self.singleton_utilities) != self.n:
            raise ValueError("costs and singleton_utilities must have length n")
        if any(q < 0 for q in self.costs):
            raise ValueError("node costs must be nonnegative")
        seen = set()
        canon = []
        for i, j, u in self.arcs:
            i, j, u = int(i), int(j), int(u)
            if i == j:
                raise ValueError(f"self-loop arc on node {i}")
            if i > j:
                i, j = j, i
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"arc ({i},{j}) out of range")
            if u < 0:
                raise ValueError(f"negative pairwise utility on arc ({i},{j})")
            if u == 0:
                continue  # no-op in every formula
            if (i, j) in seen:
                raise ValueError(f"duplicate arc ({i},{j})")
            seen.add((i, j))
            canon.append((i, j, u))
        self.arcs = tuple(canon)

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def density(self) -> Fraction:
        pairs = self.n * (self.n - 1) // 2
        return Fraction(self.m, pairs) if pairs else Fraction(0)

    @property
    def total_cost(self) -> int:
        return sum(self.costs)

    @cached_property
    def adjacency(self) -> list:
        """Undirected neighbor map: adjacency[i][j] = u_ij for every arc {i,j}."""
        adj = [dict() for _ in range(self.n)]
        for i, j, u in self.arcs:
            adj[i][j] = u
            adj[j][i] = u
        return adj

    @cached_property
    def out_degrees(self) -> tuple:
        return weighted_out_degrees(self)

    def check_set(self, s: Iterable) -> frozenset:
        s = frozenset(s)
        if any(not (0 <= int(i) < self.n) for i in s):
            raise InvalidNodeSetError(f"node set {sorted(s)} not valid for n={self.n}")
        return s


@dataclass(frozen=True)
class Budget:
    """A budget value, optionally derived as floor(gamma * total node cost)."""

    value: int
    gamma: Optional[Fraction] = None

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("budget must be nonnegative")

    @classmethod
    def from_fraction(cls, gamma, total_cost: int) -> "Budget":
        gamma = Fraction(gamma)
        if not 0 < gamma < 1:
            raise ValueError("gamma must lie in (0, 1)")
        return cls(value=int(gamma * total_cost), gamma=gamma)


def objective(inst: QkpInstance, s) -> int:
    """Total utility of set s: pairwise utilities inside s plus singletons."""
    s = inst.check_set(s)
    val = sum(inst.singleton_utilities[i] for i in s)
    val += sum(u for i, j, u in inst.arcs if i in s and j in s)
    return val


def cost(inst: QkpInstance, s) -> int:
    """Total node cost of set s."""
    s = inst.check_set(s)
    return sum(inst.costs[i] for i in s)


def weighted_out_degrees(inst: QkpInstance) -> tuple:
    """Per-node sum of utilities on outgoing arcs (i, j), i < j."""
    d = [0] * inst.n
    for i, _j, u in inst.arcs:
        d[i] += u
    return tuple(d)


def s_excess_weights(inst: QkpInstance, lam) -> list:
    """Node weights d_i + u_ii - lambda * q_i as exact rationals."""
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    d = inst.out_degrees
    return [d[i] + inst.singleton_utilities[i] - lam * inst.costs[i] for i in range(inst.n)]


def crossing_utility(inst: QkpInstance, s) -> int:
    """C(S, S-bar): utilities of arcs leaving s (tail in s, head outside)."""
    s = inst.check_set(s)
    return sum(u for i, j, u in inst.arcs if i in s and j not in s)
