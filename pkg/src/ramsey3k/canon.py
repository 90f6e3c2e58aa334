"""Canonical labelling by partition refinement and individualization.

The canonical form of a graph is the graph6 encoding of a canonically
relabelled copy, so equal forms mean isomorphic graphs (at equal order) and
the form doubles as a stable sort key for graph stores.

The search refines an equitable partition, branches on the first smallest
non-singleton cell, and keeps the lexicographically smallest relabelled
adjacency vector over all leaves.  Two prunings keep symmetric inputs cheap:
candidates that are twins of an already-explored sibling are skipped, and
automorphisms discovered from equal-key leaves are replayed to skip orbit
mates (only generators fixing the current individualization prefix are
used, which keeps the pruning exact).
"""

from __future__ import annotations

from .graphs import Graph, encode_graph6

_MAX_GENERATORS = 60


def _refine(adj, cells):
    """Equitable refinement: split cells by neighbor counts until stable."""
    cells = [list(c) for c in cells]
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        split = False
        for ci in range(len(cells)):
            cell = cells[ci]
            if len(cell) == 1:
                continue
            groups = {}
            for v in cell:
                row = adj[v]
                sig = 0
                for m in masks:
                    sig = sig << 7 | (row & m).bit_count()
                bucket = groups.get(sig)
                if bucket is None:
                    groups[sig] = [v]
                else:
                    bucket.append(v)
            if len(groups) > 1:
                parts = [groups[s] for s in sorted(groups)]
                cells[ci:ci + 1] = parts
                split = True
                break
        if not split:
            return cells


def _leaf_key(adj, verts):
    pos = [0] * len(adj)
    for i, v in enumerate(verts):
        pos[v] = i
    key = []
    for v in verts:
        m = adj[v]
        row = 0
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            row |= 1 << pos[u]
        key.append(row)
    return tuple(key)


def _orbit_reaches(gens, fixed, v, tried):
    """True if some product of prefix-fixing generators maps v into tried."""
    useful = [s for s in gens if all(s[x] == x for x in fixed)]
    if not useful:
        return False
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for s in useful:
            y = s[x]
            if y not in seen:
                if y in tried:
                    return True
                seen.add(y)
                stack.append(y)
    return False


def canonical_labeling(g: Graph) -> tuple:
    """Permutation p with p[old] = new position, minimizing the relabelled
    adjacency vector."""
    return _canonical_search(g)[0]


def canonical_with_automorphisms(g: Graph) -> tuple:
    """(labelling, automorphism generators) -- the generators are the
    equal-key leaf permutations discovered during the search; they generate
    a (not necessarily full) subgroup of Aut(g)."""
    return _canonical_search(g)


def _canonical_search(g: Graph) -> tuple:
    n = g.n
    if n == 0:
        return (), []
    adj = g.adj
    by_degree = {}
    for v in range(n):
        by_degree.setdefault(adj[v].bit_count(), []).append(v)
    initial = [by_degree[d] for d in sorted(by_degree)]

    best = {"key": None, "verts": None}
    gens = []

    def descend(cells, fixed):
        cells = _refine(adj, cells)
        target = -1
        target_len = n + 1
        for i, c in enumerate(cells):
            if 1 < len(c) < target_len:
                target = i
                target_len = len(c)
        if target < 0:
            verts = [c[0] for c in cells]
            key = _leaf_key(adj, verts)
            if best["key"] is None or key < best["key"]:
                best["key"] = key
                best["verts"] = verts
            elif key == best["key"] and len(gens) < _MAX_GENERATORS:
                sigma = [0] * n
                for bv, lv in zip(best["verts"], verts):
                    sigma[bv] = lv
                sigma = tuple(sigma)
                if any(sigma[v] != v for v in range(n)) and sigma not in gens:
                    gens.append(sigma)
            return
        cell = sorted(cells[target])
        tried = set()
        for v in cell:
            if tried:
                vrow = adj[v]
                twin = next(
                    (u for u in tried
                     if vrow & ~(1 << u) == (adj[u] & ~(1 << v))), None)
                if twin is not None:
                    # record the twin swap: an automorphism in its own right
                    if len(gens) < _MAX_GENERATORS:
                        sigma = list(range(n))
                        sigma[v], sigma[twin] = twin, v
                        sigma = tuple(sigma)
                        if sigma not in gens:
                            gens.append(sigma)
                    tried.add(v)
                    continue
                if _orbit_reaches(gens, fixed, v, tried):
                    tried.add(v)
                    continue
            sub = (
                cells[:target]
                + [[v], [u for u in cells[target] if u != v]]
                + cells[target + 1:]
            )
            descend(sub, fixed + (v,))
            tried.add(v)

    descend(initial, ())
    perm = [0] * n
    for i, v in enumerate(best["verts"]):
        perm[v] = i
    return tuple(perm), gens


def canonical_graph(g: Graph) -> Graph:
    return g.permuted(canonical_labeling(g))


def canonical_form(g: Graph) -> str:
    """Canonical graph6 line: equal exactly for isomorphic graphs."""
    return encode_graph6(canonical_graph(g))
