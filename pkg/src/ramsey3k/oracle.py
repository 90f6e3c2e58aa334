"""Independent ground-truth generators and the consistency-test battery.

Everything here is deliberately simple and slow: graphs are grown one
vertex at a time with canonical deduplication at every level, and the
verification battery re-derives properties with direct checks rather than
through the extension engine it is meant to audit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .canon import canonical_form
from .graphs import (
    CapacityError,
    Graph,
    _alpha,
    alpha_at_least,
    local_subgraph,
    validate_member,
)
from .extend import is_maximal_triangle_free
from .indepcache import independent_sets

ORACLE_CAP = 12


@dataclass
class EnumerationReport:
    k: int
    n: int
    e_max: Optional[int]
    counts: dict           # edge count -> number of graphs
    forms: list            # canonical forms, sorted

    def total(self) -> int:
        return sum(self.counts.values())


def brute_force_graphs(n: int, k: int, e_max: Optional[int] = None) -> dict:
    """Every (3,k;n,<=e_max)-graph up to isomorphism, {form: Graph}.

    Grown by vertex augmentation: the new vertex's neighborhood must be an
    independent set of order < k, and triangle-freeness, the independence
    bound, and the edge cap all survive vertex deletion, so pruning with
    them keeps the enumeration complete.
    """
    if n > ORACLE_CAP:
        raise CapacityError(f"oracle capped at order {ORACLE_CAP}, asked {n}")
    if k < 2:
        raise ValueError("need k >= 2")
    cap = e_max if e_max is not None else n * (n - 1) // 2
    level = {canonical_form(Graph.empty(0)): Graph.empty(0)}
    for _ in range(n):
        nxt: dict = {}
        for g in level.values():
            m = g.n
            # the new vertex's neighborhood is independent and of order
            # at most k-1 (its degree is capped by the independence bound)
            for s in independent_sets(g, 0, min(k - 1, m)):
                if g.edge_count() + s.bit_count() > cap:
                    continue
                child = _attach(g, s)
                if _alpha(child.adj, (1 << child.n) - 1, k)[0] >= k:
                    continue
                form = canonical_form(child)
                if form not in nxt:
                    nxt[form] = child
        level = nxt
    return level


def _attach(g: Graph, neighborhood: int) -> Graph:
    adj = list(g.adj)
    v = g.n
    adj.append(neighborhood)
    m = neighborhood
    while m:
        w = (m & -m).bit_length() - 1
        m &= m - 1
        adj[w] |= 1 << v
    return Graph._make(g.n + 1, tuple(adj))


def enumeration_report(n: int, k: int, e_max: Optional[int] = None) -> EnumerationReport:
    store = brute_force_graphs(n, k, e_max)
    counts: dict = {}
    for g in store.values():
        e = g.edge_count()
        counts[e] = counts.get(e, 0) + 1
    return EnumerationReport(k, n, e_max, counts, sorted(store))


def min_edge_count(n: int, k: int, probe_cap: Optional[int] = None) -> Optional[int]:
    """Exact e(3,k,n) for oracle-sized n: smallest edge count with a member,
    or None when the class is empty."""
    cap = probe_cap if probe_cap is not None else max(0, (k - 1) * n // 2)
    store = brute_force_graphs(n, k, cap)
    if not store:
        return None
    return min(g.edge_count() for g in store.values())


def naive_mtf_set(n: int, k: int) -> dict:
    """All maximal triangle-free (3,k;n)-graphs, by filtering the oracle."""
    store = brute_force_graphs(n, k, None)
    return {f: g for f, g in store.items() if is_maximal_triangle_free(g)}


def verify_minimality(g: Graph, k: int) -> bool:
    """True when deleting any edge creates an independent set of order k.

    An independent k-set born from deleting edge {a,b} must contain both a
    and b, so it reduces to a (k-2)-set avoiding both neighborhoods.
    """
    validate_member(g, k)
    full = (1 << g.n) - 1
    for (a, b) in g.edges():
        rest = full & ~(g.adj[a] | g.adj[b])
        sub = g.induced(rest)
        if not alpha_at_least(sub, k - 2):
            return False
    return True


def add_edge_closure_check(
    base: Iterable[Graph],
    f: int,
    k: int,
    reference_forms: set,
    n: Optional[int] = None,
) -> bool:
    """Adding up to f edges to base members must stay inside the reference
    set (whenever the result is still a class member)."""
    seen: set = set()
    frontier = []
    for g in base:
        if n is not None and g.n != n:
            raise ValueError(f"store mismatch: graph of order {g.n}, box has {n}")
        form = canonical_form(g)
        if form not in seen:
            seen.add(form)
            frontier.append((g, 0))
    while frontier:
        g, depth = frontier.pop()
        if depth == f:
            continue
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if g.adj[u] >> v & 1 or g.adj[u] & g.adj[v]:
                    continue  # edge present, or addition would close a triangle
                h = g.add_edge(u, v)
                form = canonical_form(h)
                if form in seen:
                    continue
                seen.add(form)
                if form not in reference_forms:
                    return False
                frontier.append((h, depth + 1))
    return True


def gv_consistency_check(
    parents: Iterable[Graph],
    k_parent: int,
    reference_forms: set,
    ref_n: int,
    ref_e_max: Optional[int] = None,
) -> bool:
    """Every local subgraph of every parent landing in the reference box
    must already be known there."""
    for g in parents:
        for v in range(g.n):
            h = local_subgraph(g, v)
            if h.n != ref_n:
                continue
            if ref_e_max is not None and h.edge_count() > ref_e_max:
                continue
            if canonical_form(h) not in reference_forms:
                return False
    return True
