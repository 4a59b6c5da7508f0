"""Odd-hole search and the brute-force perfectness oracle.

A graph is perfect iff neither it nor its complement has an induced odd
cycle of length at least five.  The searcher grows induced paths depth
first with incremental bitset masks: candidates for extending the tip are
its neighbors, minus neighbors of earlier path vertices, minus the path
itself.

By default searches are anchored at each start vertex in increasing
order and restricted to larger vertices, which loses nothing: every
cycle is met at its smallest vertex, and branches through smaller
vertices can never close first.  Callers who know vertex symmetries
(Cayley graphs) may instead pass explicit anchor pairs: ordered edges
(v1, v2) such that every hole, if any exists, has an automorphic image
starting v1, v2.  Tie-breaking is smallest-index-first throughout, so
certificates are reproducible.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

from .graph import Graph
from .ring import SizeCapExceeded

ORACLE_CAP = 300

_DEADLINE_STRIDE = 4096


class SearchTimeout(RuntimeError):
    """The wall-clock budget expired before the search finished."""


@dataclass(frozen=True)
class HoleReport:
    """Either a found odd hole or a certificate of exhaustion.

    hole is a vertex tuple inducing a chordless odd cycle (in the stated
    graph: in_complement says which), or None when the search found
    nothing; exhaustive means the absence claim covers every possible
    length in the graph, not just max_length.
    """

    hole: tuple[int, ...] | None
    in_complement: bool = False
    max_length: int = 0
    exhaustive: bool = False

    @property
    def found(self) -> bool:
        return self.hole is not None


def is_bipartite(g: Graph):
    """(True, 2-coloring) or (False, odd closed walk certificate)."""
    n = g.n
    color = [-1] * n
    parent = [-1] * n
    for root in range(n):
        if color[root] != -1:
            continue
        color[root] = 0
        parent[root] = root
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                cu = color[u]
                for v in g.neighbors(u):
                    if color[v] == -1:
                        color[v] = cu ^ 1
                        parent[v] = u
                        nxt.append(v)
                    elif color[v] == cu:
                        walk_u = [u]
                        while walk_u[-1] != root:
                            walk_u.append(parent[walk_u[-1]])
                        walk_v = [v]
                        while walk_v[-1] != root:
                            walk_v.append(parent[walk_v[-1]])
                        # root .. u, then v .. (child of root); odd length
                        walk = list(reversed(walk_u)) + walk_v[:-1]
                        return False, walk
            frontier = nxt
    return True, color


class _Budget:
    """Occasional wall-clock check for the long searches."""

    __slots__ = ("deadline", "ticks")

    def __init__(self, deadline):
        self.deadline = deadline
        self.ticks = 0

    def tick(self):
        self.ticks += 1
        if (
            self.deadline is not None
            and self.ticks % _DEADLINE_STRIDE == 0
            and time.monotonic() > self.deadline
        ):
            raise SearchTimeout


def _seeds(g: Graph, anchor_pairs):
    """Initial DFS states: (path, pmask, cands, avoid, adj0, allowed).

    Default mode anchors every vertex and confines the search to larger
    indices; pair mode seeds the given ordered edges with no index
    restriction (the caller's symmetry argument replaces it).
    """
    adj = g.adj
    if anchor_pairs is None:
        for s in range(g.n):
            allowed = -1 << (s + 1)
            cands = adj[s] & allowed
            if cands:
                yield [s], 1 << s, cands, 0, adj[s], allowed
    else:
        for a, b in anchor_pairs:
            if not adj[a] >> b & 1:
                continue
            pmask = (1 << a) | (1 << b)
            cands = adj[b] & ~adj[a] & ~pmask
            if cands:
                yield [a, b], pmask, cands, adj[b], adj[a], -1


def _induced_cycle_search(
    g: Graph, k: int, budget: _Budget, anchor_pairs=None, hook=None
):
    """First induced k-cycle in seed/candidate order, if any.

    Returns (cycle or None, reached) where reached records whether any
    induced path on k-1 vertices was met; when False, no induced cycle of
    length >= k exists at all (every such cycle contains one reachable
    from some seed).  hook, when given, prunes extension candidates by a
    caller-supplied symmetry argument; closures are never filtered, so any
    hole surviving the hook still closes.
    """
    adj = g.adj
    reached = False
    for seed_path, seed_pmask, seed_cands, seed_avoid, adj0, allowed in _seeds(
        g, anchor_pairs
    ):
        if len(seed_path) + 1 > k - 1:
            continue
        notadj0 = ~adj0
        path = list(seed_path)
        pmask = seed_pmask
        cand_stack = [seed_cands]
        avoid_stack = [seed_avoid]
        while cand_stack:
            cands = cand_stack[-1]
            if not cands:
                cand_stack.pop()
                avoid_stack.pop()
                pmask ^= 1 << path.pop()
                continue
            v = cands & -cands
            cand_stack[-1] = cands ^ v
            vi = v.bit_length() - 1
            budget.tick()
            avoid = avoid_stack[-1]
            t = len(path)
            if t + 2 == k:
                reached = True
                closing = adj[vi] & adj0 & ~avoid & ~(pmask | v) & allowed
                if closing:
                    w = closing & -closing
                    return path + [vi, w.bit_length() - 1], True
            else:
                grow = adj[vi] & notadj0 & ~avoid & ~pmask & allowed
                if grow and hook is not None:
                    path.append(vi)
                    grow = hook(path, grow)
                    path.pop()
                if grow:
                    path.append(vi)
                    pmask |= v
                    cand_stack.append(grow)
                    avoid_stack.append(avoid | adj[vi])
    return None, reached


def _odd_hole_scan(
    g: Graph, max_length: int, budget: _Budget, anchor_pairs=None, hook=None
):
    """One pass over the induced-path tree, closing at every odd length.

    Returns some odd hole of length 5..max_length, or None; finds one iff
    one exists.  The certificate is not length-minimal, so callers wanting
    the canonical report rerun the per-length search.
    """
    adj = g.adj
    maxlen = min(max_length, g.n)
    if maxlen < 5:
        return None
    for seed_path, seed_pmask, seed_cands, seed_avoid, adj0, allowed in _seeds(
        g, anchor_pairs
    ):
        notadj0 = ~adj0
        path = list(seed_path)
        pmask = seed_pmask
        cand_stack = [seed_cands]
        avoid_stack = [seed_avoid]
        while cand_stack:
            cands = cand_stack[-1]
            if not cands:
                cand_stack.pop()
                avoid_stack.pop()
                pmask ^= 1 << path.pop()
                continue
            v = cands & -cands
            cand_stack[-1] = cands ^ v
            vi = v.bit_length() - 1
            budget.tick()
            avoid = avoid_stack[-1]
            t = len(path)
            if t & 1 and t >= 3:  # cycle length t + 2 is odd and >= 5
                closing = adj[vi] & adj0 & ~avoid & ~(pmask | v) & allowed
                if closing:
                    w = closing & -closing
                    return path + [vi, w.bit_length() - 1]
            if t + 2 < maxlen:
                grow = adj[vi] & notadj0 & ~avoid & ~pmask & allowed
                if grow and hook is not None:
                    path.append(vi)
                    grow = hook(path, grow)
                    path.pop()
                if grow:
                    path.append(vi)
                    pmask |= v
                    cand_stack.append(grow)
                    avoid_stack.append(avoid | adj[vi])
    return None


def find_induced_cycle(g: Graph, k: int, deadline=None):
    """First induced cycle on exactly k vertices, or None."""
    if k < 4:
        raise ValueError("induced cycle length must be at least 4")
    if k > g.n:
        return None
    cycle, _ = _induced_cycle_search(g, k, _Budget(deadline))
    return cycle


def _odd_bound(n: int) -> int:
    return max(5, n if n % 2 else n - 1)


def find_odd_hole(
    g: Graph,
    max_length: int | None = None,
    deadline=None,
    anchor_pairs=None,
    hook=None,
) -> HoleReport:
    """Scan lengths 5, 7, ... up to max_length for an induced odd cycle.

    A single pass over the induced-path tree decides existence; when a
    hole exists, the per-length search then reruns ascending so the
    reported hole sits at the smallest odd length that has one.
    """
    if max_length is None:
        max_length = _odd_bound(g.n)
    if max_length < 5 or max_length % 2 == 0:
        raise ValueError("max_length must be odd and at least 5")
    budget = _Budget(deadline)
    some = _odd_hole_scan(g, max_length, budget, anchor_pairs, hook)
    if some is None:
        return HoleReport(None, max_length=max_length, exhaustive=max_length >= g.n)
    for k in range(5, min(max_length, g.n) + 1, 2):
        cycle, reached = _induced_cycle_search(g, k, budget, anchor_pairs, hook)
        if cycle is not None:
            return HoleReport(tuple(cycle), max_length=k)
        if not reached:
            break
    raise AssertionError("odd-hole scan and per-length search disagree")


def clique_number(g: Graph, node_budget: int = 200_000):
    """Exact clique number by branch and bound, or None past the budget.

    Greedy-coloring bound with largest-color-first branching; exactness
    matters because callers use omega(complement) = independence number
    to cap possible hole lengths.
    """
    n, adj = g.n, g.adj
    if n == 0:
        return 0
    best = 0
    nodes = 0

    def color_order(cand: int):
        # greedy coloring: returns [(vertex, color)] in increasing color
        order = []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                order.append((v, color))
                avail &= ~adj[v]
                avail ^= low
                rest ^= low
        return order

    def expand(cand: int, size: int):
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise SearchTimeout
        order = color_order(cand)
        for v, color in reversed(order):
            if size + color <= best:
                return
            if size + 1 > best:
                best = size + 1
            nxt = cand & adj[v]
            if nxt:
                expand(nxt, size + 1)
            cand ^= 1 << v

    try:
        expand((1 << n) - 1, 0)
    except SearchTimeout:
        return None
    return best


@dataclass(frozen=True)
class OracleResult:
    """Perfectness verdict with search certificates.

    perfect is None only when a time budget expired; that outcome must be
    handled explicitly by callers, never read as a verdict.
    """

    perfect: bool | None
    graph_report: HoleReport | None
    complement_report: HoleReport | None
    elapsed: float

    @property
    def hole(self) -> HoleReport | None:
        for rep in (self.graph_report, self.complement_report):
            if rep is not None and rep.found:
                return rep
        return None

    @property
    def timed_out(self) -> bool:
        return self.perfect is None


def _search_one_side(g: Graph, alpha, deadline, pairs, hook) -> HoleReport:
    """Exhaustive odd-hole report for one side of the oracle.

    An induced odd cycle of length k carries (k-1)/2 pairwise nonadjacent
    vertices, so when the independence number alpha is known the search
    is capped at 2*alpha + 1 and still counts as exhaustive.
    """
    bound = _odd_bound(g.n)
    if alpha is not None:
        if 2 * alpha + 1 < 5:
            return HoleReport(None, max_length=bound, exhaustive=True)
        bound = min(bound, 2 * alpha + 1)
    rep = find_odd_hole(g, bound, deadline, pairs, hook)
    if not rep.found and not rep.exhaustive and alpha is not None:
        rep = replace(rep, exhaustive=True)
    return rep


def is_perfect_oracle(
    g: Graph,
    max_vertices: int = ORACLE_CAP,
    time_budget: float | None = None,
    anchor_pairs=None,
    complement_anchor_pairs=None,
    hook=None,
) -> OracleResult:
    """Brute-force strong-perfect-graph check of g and its complement.

    Graphs above max_vertices are rejected unless a time budget is given,
    in which case the answer may be unknown (perfect=None).  Bipartite
    sides are skipped: they cannot hold an odd closed walk at all.  The
    anchor-pair and hook arguments forward symmetry knowledge to the two
    searches; the hook applies to both since value symmetries of a graph
    are value symmetries of its complement.
    """
    if g.n > max_vertices and time_budget is None:
        raise SizeCapExceeded(
            f"oracle capped at {max_vertices} vertices; pass a time budget to override"
        )
    t0 = time.monotonic()
    deadline = t0 + time_budget if time_budget is not None else None
    co = g.complement()
    try:
        bip, _ = is_bipartite(g)
        if bip:
            g_rep = HoleReport(None, max_length=_odd_bound(g.n), exhaustive=True)
        else:
            g_rep = _search_one_side(g, clique_number(co), deadline, anchor_pairs, hook)
        if g_rep.found:
            return OracleResult(False, g_rep, None, time.monotonic() - t0)
        bip_co, _ = is_bipartite(co)
        if bip_co:
            co_rep = HoleReport(None, True, max_length=_odd_bound(g.n), exhaustive=True)
        else:
            co_rep = replace(
                _search_one_side(
                    co, clique_number(g), deadline, complement_anchor_pairs, hook
                ),
                in_complement=True,
            )
        if co_rep.found:
            return OracleResult(False, g_rep, co_rep, time.monotonic() - t0)
        return OracleResult(True, g_rep, co_rep, time.monotonic() - t0)
    except SearchTimeout:
        return OracleResult(None, None, None, time.monotonic() - t0)


def ring_perfect_oracle(
    spec,
    g: Graph | None = None,
    max_vertices: int = ORACLE_CAP,
    time_budget: float | None = None,
) -> OracleResult:
    """is_perfect_oracle specialized to a ring's unitary Cayley graph.

    Forwards the Cayley anchor pairs (translation and unit-scaling
    automorphisms) and, for pure field products, the per-coordinate value
    symmetry hook.  The search itself stays the same brute force.
    """
    from .graph import build_unitary_cayley, cayley_symmetry_pairs, field_value_symmetry_hook

    if g is None:
        g = build_unitary_cayley(spec, max_size=max(max_vertices, spec.size))
    graph_pairs, co_pairs = cayley_symmetry_pairs(spec, max_size=max(max_vertices, spec.size))
    hook = field_value_symmetry_hook(spec)
    return is_perfect_oracle(
        g,
        max_vertices=max_vertices,
        time_budget=time_budget,
        anchor_pairs=graph_pairs,
        complement_anchor_pairs=co_pairs,
        hook=hook,
    )


def closed_walk_of_length(g: Graph, k: int, start: int):
    """A closed walk of length k through start, or None.

    Even k alternates any incident edge; odd k takes a shortest odd
    closed walk found by parity BFS and pads it with back-and-forth
    steps.  Odd walks exist iff start's component is non-bipartite.
    """
    if k < 3:
        raise ValueError("walk length must be at least 3")
    if not 0 <= start < g.n:
        raise ValueError(f"vertex {start} out of range")
    if k % 2 == 0:
        row = g.adj[start]
        if not row:
            return None
        u = (row & -row).bit_length() - 1
        return [start, u] * (k // 2)
    # parity BFS over states (vertex, parity)
    n = g.n
    dist = [-1] * (2 * n)
    prev = [-1] * (2 * n)
    src = start * 2
    dist[src] = 0
    frontier = [src]
    target = src + 1
    while frontier and dist[target] == -1:
        nxt = []
        for state in frontier:
            u, par = divmod(state, 2)
            for v in g.neighbors(u):
                ns = v * 2 + (par ^ 1)
                if dist[ns] == -1:
                    dist[ns] = dist[state] + 1
                    prev[ns] = state
                    nxt.append(ns)
        frontier = nxt
    if dist[target] == -1:
        return None
    m = dist[target]
    if m > k:
        return None
    states = [target]
    while states[-1] != src:
        states.append(prev[states[-1]])
    states.reverse()
    walk = [s // 2 for s in states[:-1]]  # drop the final return to start
    pad = (k - m) // 2
    return [walk[0], walk[1]] * pad + walk


def is_closed_walk(g: Graph, seq) -> bool:
    """Consecutive adjacency plus the closing edge; repeats allowed."""
    if len(seq) < 3:
        return False
    for a, b in zip(seq, seq[1:]):
        if not g.has_edge(a, b):
            return False
    return g.has_edge(seq[-1], seq[0])


def is_induced_odd_hole(g: Graph, verts) -> bool:
    """Independent certificate check, separate from the searcher.

    Verifies distinctness, odd length >= 5, consecutive adjacency with the
    closing edge, and the absence of chords, by direct pairwise testing.
    """
    verts = list(verts)
    k = len(verts)
    if k < 5 or k % 2 == 0:
        return False
    if len(set(verts)) != k:
        return False
    if not all(0 <= v < g.n for v in verts):
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j - i == 1 or (i == 0 and j == k - 1)
            if g.has_edge(verts[i], verts[j]) != consecutive:
                return False
    return True
