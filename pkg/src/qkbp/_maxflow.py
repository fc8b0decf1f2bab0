"""Warm-started push-relabel kernel for monotone parametric min-cut sweeps.

All capacities are int64 (callers scale rationals to a common denominator).
Source-adjacent capacities must be non-decreasing and sink-adjacent
capacities non-increasing over the lambda sequence; under that monotonicity
the preflow and the labels remain valid across steps, so the whole sweep
costs about as much as a single max-flow plus the reporting.

The reported source set is the maximal one: the complement of the nodes
that can still reach the sink in the residual graph.
"""

import numpy as np
from numba import njit


def build_arc_arrays(n, arcs):
    """CSR adjacency over 2m residual entries (forward at 2k, reverse at 2k+1)."""
    m = len(arcs)
    af = np.empty(m, dtype=np.int64)
    at = np.empty(m, dtype=np.int64)
    ac = np.empty(m, dtype=np.int64)
    for k, (u, v, c) in enumerate(arcs):
        af[k], at[k], ac[k] = u, v, c
    ent_to = np.empty(2 * m, dtype=np.int64)
    ent_to[0::2] = at
    ent_to[1::2] = af
    deg = np.zeros(n + 1, dtype=np.int64)
    for k in range(m):
        deg[af[k] + 1] += 1
        deg[at[k] + 1] += 1
    adj_start = np.cumsum(deg)
    fill = adj_start[:-1].copy()
    adj_list = np.empty(2 * m, dtype=np.int64)
    for k in range(m):
        adj_list[fill[af[k]]] = 2 * k
        fill[af[k]] += 1
        adj_list[fill[at[k]]] = 2 * k + 1
        fill[at[k]] += 1
    return adj_start, adj_list, ent_to, af, at, ac


@njit(cache=True)
def run_parametric(n, adj_start, adj_list, ent_to, af, at, ac,
                   a_scaled, b, lam_nums,
                   flags_out, idx_out, cut_out, flow_out):
    """Run the sweep; returns the number of recorded set changes, or <0 on error.

    -1: source-capacity monotonicity violated, -2: nestedness violated.
    """
    m = af.shape[0]
    nlam = lam_nums.shape[0]
    ncut = n + 2

    res = np.empty(2 * m, dtype=np.int64)
    for k in range(m):
        res[2 * k] = ac[k]
        res[2 * k + 1] = 0

    d = np.zeros(n, dtype=np.int64)
    e = np.zeros(n, dtype=np.int64)
    scap = np.zeros(n, dtype=np.int64)
    sflow = np.zeros(n, dtype=np.int64)
    tcap = np.zeros(n, dtype=np.int64)
    tflow = np.zeros(n, dtype=np.int64)
    cur = adj_start[:n].copy()
    cnt = np.zeros(ncut + 1, dtype=np.int64)
    cnt[0] = n
    queue = np.empty(n + 1, dtype=np.int64)
    inq = np.zeros(n, dtype=np.uint8)
    in_s = np.zeros(n, dtype=np.uint8)
    in_t_flag = np.zeros(n, dtype=np.uint8)
    stack = np.empty(n, dtype=np.int64)
    nchanges = 0

    for kk in range(nlam):
        lam = lam_nums[kk]
        activity = kk == 0
        qh = 0
        qt = 0
        for i in range(n):
            w = a_scaled[i] - b[i] * lam
            ns = w if w > 0 else 0
            nt = -w if w < 0 else 0
            if ns < scap[i]:
                return -1
            old_rt = tcap[i] - tflow[i]
            if ns > sflow[i]:
                e[i] += ns - sflow[i]
                sflow[i] = ns
            scap[i] = ns
            if tflow[i] > nt:
                e[i] += tflow[i] - nt
                tflow[i] = nt
            tcap[i] = nt
            if old_rt > 0 and tcap[i] - tflow[i] == 0:
                activity = True
            if e[i] > 0 and d[i] < ncut and inq[i] == 0:
                inq[i] = 1
                queue[qt] = i
                qt = (qt + 1) % (n + 1)
                activity = True

        # FIFO discharge
        while qh != qt:
            i = queue[qh]
            qh = (qh + 1) % (n + 1)
            inq[i] = 0
            while e[i] > 0 and d[i] < ncut:
                if d[i] == 1:
                    rt = tcap[i] - tflow[i]
                    if rt > 0:
                        delta = e[i] if e[i] < rt else rt
                        tflow[i] += delta
                        e[i] -= delta
                        if e[i] == 0:
                            break
                end = adj_start[i + 1]
                while cur[i] < end:
                    eid = adj_list[cur[i]]
                    if res[eid] > 0:
                        v = ent_to[eid]
                        if d[i] == d[v] + 1:
                            delta = e[i] if e[i] < res[eid] else res[eid]
                            res[eid] -= delta
                            res[eid ^ 1] += delta
                            e[i] -= delta
                            e[v] += delta
                            if inq[v] == 0 and d[v] < ncut:
                                inq[v] = 1
                                queue[qt] = v
                                qt = (qt + 1) % (n + 1)
                            if res[eid] == 0:
                                cur[i] += 1
                            if e[i] == 0:
                                break
                        else:
                            cur[i] += 1
                    else:
                        cur[i] += 1
                if e[i] == 0:
                    break
                # relabel
                oldd = d[i]
                newd = ncut
                if tcap[i] - tflow[i] > 0:
                    newd = 1
                for p in range(adj_start[i], end):
                    eid = adj_list[p]
                    if res[eid] > 0:
                        v = ent_to[eid]
                        if d[v] + 1 < newd:
                            newd = d[v] + 1
                cnt[oldd] -= 1
                d[i] = newd
                cnt[newd] += 1
                cur[i] = adj_start[i]
                activity = True
                if cnt[oldd] == 0 and 0 < oldd < ncut:
                    for j in range(n):
                        if oldd < d[j] < ncut:
                            cnt[d[j]] -= 1
                            d[j] = ncut
                            cnt[ncut] += 1

        if not activity:
            continue

        # maximal source set: complement of nodes that can reach t
        for i in range(n):
            in_t_flag[i] = 0
        top = 0
        for i in range(n):
            if tcap[i] - tflow[i] > 0:
                in_t_flag[i] = 1
                stack[top] = i
                top += 1
        while top > 0:
            top -= 1
            v = stack[top]
            for p in range(adj_start[v], adj_start[v + 1]):
                eid = adj_list[p]
                u = ent_to[eid]
                if in_t_flag[u] == 0 and res[eid ^ 1] > 0:
                    in_t_flag[u] = 1
                    stack[top] = u
                    top += 1

        changed = kk == 0
        for i in range(n):
            new_s = 1 if in_t_flag[i] == 0 else 0
            if new_s != in_s[i]:
                if new_s == 0:
                    return -2  # a node left the source set: nestedness broken
                changed = True
        if not changed:
            continue
        for i in range(n):
            in_s[i] = 1 if in_t_flag[i] == 0 else 0

        flow_val = np.int64(0)
        for i in range(n):
            flow_val += tflow[i]
        cut_val = np.int64(0)
        for i in range(n):
            if in_s[i] == 0:
                cut_val += scap[i]
            else:
                cut_val += tcap[i]
        for k in range(m):
            if in_s[af[k]] == 1 and in_s[at[k]] == 0:
                cut_val += ac[k]

        idx_out[nchanges] = kk
        cut_out[nchanges] = cut_val
        flow_out[nchanges] = flow_val
        for i in range(n):
            flags_out[nchanges, i] = in_s[i]
        nchanges += 1

    return nchanges
