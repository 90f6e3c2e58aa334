"""Generation engines: neighborhood gluing, minimum-degree reconstruction,
and edge-removal closure from maximal triangle-free inputs.

The gluing engine takes a (3,k)-member H and attaches a new vertex v of
degree d: each neighbor u_i of v is joined to an independent set S_i of H.
The expanded graph is triangle-free by construction (the S_i are
independent and the u_i are pairwise non-adjacent), so the search is only
about keeping the independence number below k+1 while meeting the edge and
degree windows.  Four prunings cut the recursion:

  * pair test      -- candidate S against each assigned S_j: if the rest of
                      H still holds an independent set of order k-1, the
                      pair already forces an independent (k+1)-set;
  * forbidden      -- vertices whose degree reached the output cap reject
                      every set containing them;
  * ascending      -- sets are assigned in non-decreasing (order, mask)
                      position, which both removes permuted duplicates and
                      makes small sets fail early;
  * edge bound     -- e(H) + d + sum|S_j| + |S|*(d-i) already exceeding the
                      edge cap kills the branch.

Disabling any of them must not change the output set; the test suite holds
the engine to that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .canon import canonical_form, canonical_with_automorphisms
from .graphs import (
    CapacityError,
    ClassParams,
    Graph,
    _alpha,
    validate_member,
)
from .indepcache import (
    DEFAULT_TABLE_CAP,
    IndependenceTable,
    build_independence_table,
    build_pair_table,
    independent_sets,
)


@dataclass(frozen=True)
class StructuralRule:
    """Every vertex of subject_degree has exactly required_count neighbors
    of neighbor_degree."""

    subject_degree: int
    neighbor_degree: int
    required_count: int

    def __post_init__(self):
        for d in (self.subject_degree, self.neighbor_degree):
            if not 0 <= d <= 15:
                raise ValueError(f"degree {d} outside 0..15")
        if self.required_count < 0:
            raise ValueError("negative count")

    def holds(self, g: Graph) -> bool:
        degs = [row.bit_count() for row in g.adj]
        for v in range(g.n):
            if degs[v] != self.subject_degree:
                continue
            count = 0
            m = g.adj[v]
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                if degs[u] == self.neighbor_degree:
                    count += 1
            if count != self.required_count:
                return False
        return True


@dataclass(frozen=True)
class ExtensionTask:
    """One gluing unit: extend (3,k)-members by a degree-d hub vertex."""

    k: int                      # input class bound; the target class is k+1
    d: int                      # degree of the new hub vertex
    e_max: int                  # edge cap for outputs
    d_min: int = 0              # minimum degree of outputs
    delta_max: Optional[int] = None   # maximum degree; None means k
    regular: bool = False       # force d-regular outputs
    pair_table: Optional[tuple] = None    # (s, t) pair-table activation
    filters: tuple = ()         # structural rules outputs must satisfy
    prune_pair: bool = True
    prune_forbidden: bool = True
    prune_ascending: bool = True
    prune_edge_bound: bool = True
    prune_weak_forbidden: bool = False  # usually too weak to pay for itself
    prune_automorphic: bool = True      # skip non-minimal orbit prefixes
    prune_union: bool = True            # full-union independence bound
    indep_mode: str = "auto"    # auto | table | lazy
    table_cap: int = DEFAULT_TABLE_CAP

    def __post_init__(self):
        cap = self.k if self.delta_max is None else self.delta_max
        if not self.d_min <= cap <= self.k:
            raise ValueError(
                f"need d_min <= delta_max <= k, got {self.d_min}, {cap}, {self.k}")
        if self.d < 0 or self.e_max < 0:
            raise ValueError("negative degree or edge cap")

    @property
    def degree_cap(self) -> int:
        return self.k if self.delta_max is None else self.delta_max

    def target(self, m: int) -> ClassParams:
        return ClassParams(self.k + 1, m + self.d + 1, self.e_max)


def _use_table(task: ExtensionTask, m: int) -> bool:
    if task.indep_mode == "table":
        return True
    if task.indep_mode == "lazy":
        return False
    # the table only answers orders k-1 .. k+1-d, useless below d = 2
    return task.d >= 2 and m <= min(task.table_cap, 24)


def glue_extend(H: Graph, task: ExtensionTask, check_input: bool = True) -> dict:
    """All (3,k+1; m+d+1, <=e_max)-graphs with a degree-d hub whose local
    subgraph is H, up to isomorphism, as {canonical form: Graph}."""
    k = task.k
    d = task.d
    if check_input:
        validate_member(H, k)
    m = H.n
    n_out = m + d + 1
    if n_out > 64:
        raise CapacityError(f"output order {n_out} exceeds 64")
    out: dict = {}
    cap = task.degree_cap
    if d < task.d_min or d > cap:
        return out
    if task.regular and d != cap:
        raise ValueError("regular tasks need delta_max == d")
    e_h = H.edge_count()
    budget = task.e_max - e_h - d
    if budget < 0:
        return out

    if d == 0:
        _accept(H, (), task, out, None, [row.bit_count() for row in H.adj], e_h)
        return out

    lo = max(0, task.d_min - 1)
    hi = min(k - 1, cap - 1, budget)
    if task.regular:
        lo = hi = d - 1
        if hi > budget or hi < 0:
            return out
    if hi < lo:
        return out
    sets = independent_sets(H, lo, hi)
    if not sets:
        return out
    orders = [s.bit_count() for s in sets]

    table = None
    ptable = None
    if _use_table(task, m):
        table = build_independence_table(H, k, max(d, 2), task.table_cap)
        if task.pair_table and task.pair_table[1] == k - 1:
            ptable = build_pair_table(H, task.pair_table[0], k - 1)

    adj = H.adj
    full = (1 << m) - 1
    deg0 = [row.bit_count() for row in adj]

    def alpha_ge(mask: int, r: int) -> bool:
        if table is not None and table.band_low <= r <= table.band_high:
            return table.cells[mask] >= r
        return _alpha(adj, mask, r)[0] >= r

    # automorphisms of H collapse assignment multisets into orbits; only the
    # lexicographically smallest index sequence of each orbit is explored
    aut_gens: list = []
    if task.prune_automorphic:
        aut_gens = canonical_with_automorphisms(H)[1]
    set_index = {mask: i for i, mask in enumerate(sets)}
    image_cache: dict = {}

    def image_index(gi: int, idx: int) -> int:
        key = gi * nsets + idx
        cached = image_cache.get(key)
        if cached is None:
            sigma = aut_gens[gi]
            mask = sets[idx]
            img = 0
            while mask:
                w = (mask & -mask).bit_length() - 1
                mask &= mask - 1
                img |= 1 << sigma[w]
            cached = set_index[img]
            image_cache[key] = cached
        return cached

    def prefix_minimal(prefix: tuple) -> bool:
        """No generator product maps the prefix to a smaller index tuple."""
        if not aut_gens:
            return True
        seen = {prefix}
        queue = [prefix]
        while queue and len(seen) < 200:
            p = queue.pop()
            for gi in range(len(aut_gens)):
                img = tuple(sorted(image_index(gi, idx) for idx in p))
                if img < prefix:
                    return False
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
        return True

    # pairwise compatibility of sets, computed once per (unordered) pair:
    # a pair is dead when the rest of H still holds a (k-1)-independent set
    pair_cache: dict = {}

    def pair_ok(a: int, b: int) -> bool:
        key = (a, b) if a <= b else (b, a)
        v = pair_cache.get(key)
        if v is None:
            sa, sb = sets[a], sets[b]
            if ptable is not None and sa in ptable.index and sb in ptable.index:
                v = not ptable.entry(sa, sb)
            else:
                v = not alpha_ge(full & ~(sa | sb), k - 1)
            pair_cache[key] = v
        return v

    assigned: list = []

    def descend(eligible: list, prefix: tuple, union: int, degs: list,
                forbidden: int, size_sum: int):
        i = len(assigned)
        if i == d:
            _accept(H, assigned, task, out, table, degs, e_h + d + size_sum)
            return
        remaining = d - i
        for pos, idx in enumerate(eligible):
            s = sets[idx]
            sz = orders[idx]
            if task.prune_edge_bound:
                low_order = sz if task.prune_ascending else lo
                if e_h + d + size_sum + sz + low_order * (remaining - 1) > task.e_max:
                    if task.prune_ascending:
                        break  # eligible is (order, mask)-sorted: no smaller set follows
                    continue
            new_union = union | s
            if task.prune_union and i >= 1:
                # an independent (k-i)-set outside all assigned sets joins
                # the i+1 hub neighbors into an independent (k+1)-set
                if alpha_ge(full & ~new_union, k - i):
                    continue
            new_degs = degs[:]
            mm = s
            dead = False
            new_forbidden = forbidden
            while mm:
                w = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                nd = new_degs[w] + 1
                if nd > cap:
                    dead = True
                    break
                new_degs[w] = nd
                if nd == cap:
                    new_forbidden |= 1 << w
            if dead:
                continue
            new_prefix = tuple(sorted(prefix + (idx,)))
            if not prefix_minimal(new_prefix):
                continue
            if task.prune_weak_forbidden and new_forbidden:
                if _alpha(adj, new_forbidden, k + 1 - (remaining - 1))[0] >= \
                        k + 1 - (remaining - 1):
                    continue
            # the next neighbor may reuse this set, so the child list keeps
            # the current position when assigning in ascending order
            base_list = eligible[pos:] if task.prune_ascending else eligible
            child = []
            for idx2 in base_list:
                if task.prune_forbidden and sets[idx2] & new_forbidden:
                    continue
                if task.prune_pair and not pair_ok(idx, idx2):
                    continue
                child.append(idx2)
            if remaining > 1 and not child:
                continue  # no eligible sets left for the other neighbors
            assigned.append(s)
            descend(child, new_prefix, new_union, new_degs, new_forbidden,
                    size_sum + sz)
            assigned.pop()

    nsets = len(sets)
    forb0 = _initial_forbidden(deg0, cap)
    root = [idx for idx in range(nsets)
            if not (task.prune_forbidden and sets[idx] & forb0)]
    descend(root, (), 0, deg0, forb0, 0)
    return out


def _initial_forbidden(degs, cap: int) -> int:
    forb = 0
    for w, dg in enumerate(degs):
        if dg >= cap:
            forb |= 1 << w
    return forb


def _assemble(H: Graph, assigned) -> Graph:
    m = H.n
    d = len(assigned)
    v = m + d
    adj = list(H.adj) + [0] * (d + 1)
    for j, s in enumerate(assigned):
        u = m + j
        adj[u] = s | 1 << v
        adj[v] |= 1 << u
        mm = s
        while mm:
            w = (mm & -mm).bit_length() - 1
            mm &= mm - 1
            adj[w] |= 1 << u
    return Graph._make(m + d + 1, tuple(adj))


def _accept(H: Graph, assigned, task: ExtensionTask, out: dict,
            table: Optional[IndependenceTable], h_degs: list,
            e_total: int) -> None:
    """Leaf test: degree window, edge cap, independence bound, filters."""
    k = task.k
    cap = task.degree_cap
    if e_total > task.e_max:
        return
    for w in range(H.n):
        dw = h_degs[w]
        if dw < task.d_min or dw > cap:
            return
        if task.regular and dw != task.d:
            return
    if len(assigned) <= 1:
        # alpha(G) = 1 + max(alpha(H), alpha(H - S)) <= 1 + alpha(H) <= k
        g = _assemble(H, assigned)
    elif table is not None:
        if not _alpha_ok_by_table(H, assigned, task, table):
            return
        g = _assemble(H, assigned)
    else:
        g = _assemble(H, assigned)
        if _alpha(g.adj, (1 << g.n) - 1, k + 1)[0] >= k + 1:
            return
    for rule in task.filters:
        if not rule.holds(g):
            return
    out.setdefault(canonical_form(g), g)


def _alpha_ok_by_table(H, assigned, task, table) -> bool:
    """alpha(G) <= k via subset lookups: an independent (k+1)-set would
    need |T| hub neighbors plus a (k+1-|T|)-set avoiding their S_j."""
    k = task.k
    d = len(assigned)
    full = (1 << H.n) - 1
    lo_t = 2 if not task.prune_pair else 3  # pairs already vetted during descent
    # enumerate unions over subsets of assigned sets, sizes lo_t..d
    masks = [0]
    sizes = [0]
    for j, s in enumerate(assigned):
        cur_len = len(masks)
        for x in range(cur_len):
            masks.append(masks[x] | s)
            sizes.append(sizes[x] + 1)
    for mask, t in zip(masks, sizes):
        if t < lo_t:
            continue
        r = k + 1 - t
        if r <= 0:
            return False
        if table.cells[full & ~mask] >= r:
            return False
    return True


def min_degree_extend(
    target: ClassParams,
    d_min_assumed: int,
    inputs: Iterable[Graph],
    inputs_complete: bool = True,
    e_max: Optional[int] = None,
    **task_options,
) -> tuple:
    """All target-class graphs with minimum degree exactly d_min_assumed.

    ``inputs`` must contain every (3, k-1; n-d-1, <= e_max - d^2)-graph; a
    minimum-degree-d vertex has neighbors of degree >= d, so its local
    subgraph loses at least d^2 edges.  Returns ({form: graph}, complete)
    where complete is False when the caller could not vouch for the input
    store.
    """
    d = d_min_assumed
    k_in = target.k - 1
    cap = target.e if e_max is None else e_max
    hard_degree_cap = task_options.get("delta_max") or k_in
    if d > hard_degree_cap:
        return {}, inputs_complete
    task = ExtensionTask(k=k_in, d=d, e_max=cap, d_min=d, **task_options)
    out: dict = {}
    for h in inputs:
        if h.n != target.n - d - 1:
            raise ValueError(
                f"input order {h.n} incompatible with target n={target.n}, d={d}")
        for form, g in glue_extend(h, task).items():
            out.setdefault(form, g)
    return out, inputs_complete


# ---------------------------------------------------------------------------
# Maximal triangle-free inputs and edge removal
# ---------------------------------------------------------------------------

def is_maximal_triangle_free(g: Graph) -> bool:
    """No edge can be added without creating a triangle."""
    adj = g.adj
    for v in range(g.n):
        for u in range(v + 1, g.n):
            if not adj[v] >> u & 1 and not adj[v] & adj[u]:
                return False
    return True


def edge_removal_closure(
    mtf_graphs: Iterable[Graph],
    k: int,
    e_floor: Optional[int] = None,
    check_input: bool = True,
) -> dict:
    """Downward closure of the inputs under single-edge deletion inside the
    (3,k) class, keeping edge counts >= e_floor; {canonical form: Graph}.

    Complete input sets of maximal triangle-free members make the result
    the complete class at that order.
    """
    floor = 0 if e_floor is None else e_floor
    seen: dict = {}
    frontier = []
    for g in mtf_graphs:
        if check_input:
            validate_member(g, k)
            if not is_maximal_triangle_free(g):
                raise ValueError("input graph is not maximal triangle-free")
        if g.edge_count() < floor:
            continue
        form = canonical_form(g)
        if form not in seen:
            seen[form] = g
            frontier.append(g)
    while frontier:
        g = frontier.pop()
        if g.edge_count() - 1 < floor:
            continue
        for (u, v) in list(g.edges()):
            h = g.remove_edge(u, v)
            if _alpha(h.adj, (1 << h.n) - 1, k)[0] >= k:
                continue
            form = canonical_form(h)
            if form not in seen:
                seen[form] = h
                frontier.append(h)
    return seen


def structural_filter(graphs: Iterable[Graph], rules: Iterable[StructuralRule]) -> list:
    rules = list(rules)
    return [g for g in graphs if all(rule.holds(g) for rule in rules)]
