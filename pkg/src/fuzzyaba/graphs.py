"""Small graph routines: reachability, accepting SCCs and lasso witnesses."""

from __future__ import annotations

from collections import deque

import networkx as nx


def explore(roots, successors):
    """Breadth-first exploration.

    ``successors(node)`` yields ``(label, target)`` pairs.  Returns the
    discovery order, the edge lists and a BFS parent map ``node -> (label, parent)``.
    """
    order, edges, parent = [], {}, {}
    seen = set()
    queue = deque()
    for r in roots:
        if r not in seen:
            seen.add(r)
            parent[r] = None
            queue.append(r)
    while queue:
        node = queue.popleft()
        order.append(node)
        out = list(successors(node))
        edges[node] = out
        for label, t in out:
            if t not in seen:
                seen.add(t)
                parent[t] = (label, node)
                queue.append(t)
    return order, edges, parent


def nontrivial_sccs(order, edges):
    """SCCs that contain a cycle, each as a set, listed in discovery order."""
    g = nx.DiGraph()
    g.add_nodes_from(order)
    g.add_edges_from((n, t) for n in order for _, t in edges[n])
    rank = {n: i for i, n in enumerate(order)}
    out = []
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1 or any(g.has_edge(n, n) for n in comp):
            out.append(comp)
    out.sort(key=lambda c: min(rank[n] for n in c))
    return out


def has_accepting_cycle(roots, successors, is_final) -> bool:
    order, edges, _ = explore(roots, successors)
    return any(any(is_final(n) for n in comp) for comp in nontrivial_sccs(order, edges))


def _path_within(start, goal_test, edges, allowed):
    """Shortest nonempty label path from ``start`` to a node passing ``goal_test``."""
    queue = deque()
    back = {}
    for label, t in edges[start]:
        if t in allowed and t not in back:
            back[t] = (label, None)
            queue.append(t)
    while queue:
        node = queue.popleft()
        if goal_test(node):
            labels = []
            cur = node
            while cur is not None:
                label, prev = back[cur]
                labels.append(label)
                cur = prev
            return labels[::-1], node
        for label, t in edges[node]:
            if t in allowed and t not in back:
                back[t] = (label, node)
                queue.append(t)
    return None


def accepting_lasso(roots, successors, marks):
    """Find a lasso through a cycle that meets every acceptance set.

    ``marks(node)`` returns a tuple of booleans, one per acceptance set.
    Returns ``(stem_labels, cycle_labels)`` or ``None``.
    """
    order, edges, parent = explore(roots, successors)
    depth = {}
    for n in order:
        p = parent[n]
        depth[n] = 0 if p is None else depth[p[1]] + 1
    best = None
    for comp in nontrivial_sccs(order, edges):
        flags = [marks(n) for n in comp]
        if not flags or not all(any(f[i] for f in flags) for i in range(len(flags[0]))):
            continue
        entry = min(comp, key=lambda n: depth[n])
        stem = []
        cur = entry
        while parent[cur] is not None:
            label, cur = parent[cur]
            stem.append(label)
        stem.reverse()
        cycle = []
        here = entry
        for i in range(len(marks(entry))):
            if marks(here)[i]:
                continue
            labels, here = _path_within(here, lambda n, i=i: marks(n)[i], edges, comp)
            cycle.extend(labels)
        back = _path_within(here, lambda n: n == entry, edges, comp)
        cycle.extend(back[0])
        cand = (stem, cycle)
        if best is None or len(stem) + len(cycle) < len(best[0]) + len(best[1]):
            best = cand
    return best
