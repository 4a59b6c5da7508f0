"""Dense simple graphs with bitset adjacency rows.

Vertices are 0..n-1; row i is a Python int whose bit j is set iff i ~ j.
Includes the unitary Cayley builder (vertices in ring enumeration order)
and the tensor / wreath constructions that mirror ring products.
"""

from __future__ import annotations

from .ring import (
    DEFAULT_RING_CAP,
    FieldAtom,
    RingSpec,
    SizeCapExceeded,
    render_element,
)

ISO_CAP = 64


class Graph:
    """Undirected simple graph; adjacency must stay symmetric and loop-free.

    Equality compares vertex count and adjacency only, not labels.
    """

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, adj=None, labels=None):
        self.n = n
        self.adj = list(adj) if adj is not None else [0] * n
        self.labels = labels

    @classmethod
    def from_edges(cls, n: int, edges) -> Graph:
        g = cls(n)
        for i, j in edges:
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"bad edge ({i}, {j})")
            g.adj[i] |= 1 << j
            g.adj[j] |= 1 << i
        return g

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << i) for i in range(n)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def neighbors(self, i: int) -> list[int]:
        row = self.adj[i]
        out = []
        while row:
            low = row & -row
            out.append(low.bit_length() - 1)
            row ^= low
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Graph) and self.n == other.n and self.adj == other.adj
        )

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count()})"

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        adj = [(~row & full) & ~(1 << i) for i, row in enumerate(self.adj)]
        return Graph(self.n, adj, self.labels)

    def induced_subgraph(self, verts) -> Graph:
        verts = list(verts)
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertex in selection")
        for v in verts:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} out of range")
        m = len(verts)
        adj = [0] * m
        for a in range(m):
            row = self.adj[verts[a]]
            for b in range(a + 1, m):
                if row >> verts[b] & 1:
                    adj[a] |= 1 << b
                    adj[b] |= 1 << a
        labels = (
            tuple(self.labels[v] for v in verts) if self.labels is not None else None
        )
        return Graph(m, adj, labels)

    # -- text formats --------------------------------------------------------

    def export(self, fmt: str) -> str:
        if fmt == "edgelist":
            return self.to_edgelist()
        if fmt == "dot":
            return self.to_dot()
        raise ValueError(f"unknown format {fmt!r}")

    def to_edgelist(self) -> str:
        lines = [f"{self.n} {self.edge_count()}"]
        for i in range(self.n):
            row = self.adj[i] >> (i + 1) << (i + 1)
            while row:
                low = row & -row
                lines.append(f"{i} {low.bit_length() - 1}")
                row ^= low
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        lines = ["graph G {"]
        for i in range(self.n):
            if self.labels is not None:
                label = render_element(self.labels[i]).replace('"', r"\"")
                lines.append(f'  {i} [label="{label}"];')
            else:
                lines.append(f"  {i};")
        for i in range(self.n):
            row = self.adj[i] >> (i + 1) << (i + 1)
            while row:
                low = row & -row
                lines.append(f"  {i} -- {low.bit_length() - 1};")
                row ^= low
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist_text(cls, text: str) -> Graph:
        rows = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
        if not rows:
            raise ValueError("empty edgelist")
        head = rows[0].split()
        if len(head) != 2:
            raise ValueError("edgelist header must be 'n m'")
        n, m = int(head[0]), int(head[1])
        edges = []
        for ln in rows[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"bad edge line {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
        if len(edges) != m:
            raise ValueError(f"header says {m} edges, found {len(edges)}")
        return cls.from_edges(n, edges)


def build_unitary_cayley(spec: RingSpec, max_size: int = DEFAULT_RING_CAP) -> Graph:
    """Graph on the ring's elements with a ~ b iff a - b is a unit.

    Vertex i carries the i-th enumerated element as its label.  Rows are
    built by translating the unit set with pure index arithmetic, so the
    graph is regular of degree unit_count by construction.
    """
    n = spec.size
    if n > max_size:
        raise SizeCapExceeded(f"ring has {n} elements, above the cap of {max_size}")
    elements = spec.elements(max_size)
    units = [i for i, e in enumerate(elements) if e.is_unit()]
    add = spec.index_adder()
    adj = []
    for i in range(n):
        row = 0
        for u in units:
            j = add(i, u)
            if j != i:
                row |= 1 << j
        adj.append(row)
    return Graph(n, adj, labels=tuple(elements))


def cayley_symmetry_pairs(spec: RingSpec, max_size: int = DEFAULT_RING_CAP):
    """Anchor pairs for hole searches in the ring graph and its complement.

    Translations x -> x + c and unit scalings x -> u * x are graph
    automorphisms (both preserve whether differences are units), so any
    induced cycle maps to one whose first vertex is 0 and whose second is
    a fixed representative of its edge-difference's orbit under left unit
    multiplication.  Returns (pairs for the graph, pairs for the
    complement), each a list of ordered vertex-index pairs.
    """
    elements = spec.elements(max_size)
    index = {e: i for i, e in enumerate(elements)}
    unit_idx = [i for i, e in enumerate(elements) if e.is_unit()]
    unit_set = set(unit_idx)
    unit_elems = [elements[i] for i in unit_idx]

    def orbit_reps(conn):
        reps = []
        seen = set()
        for i in conn:
            if i in seen:
                continue
            reps.append(i)
            ei = elements[i]
            for u in unit_elems:
                seen.add(index[u * ei])
        return reps

    graph_pairs = [(0, r) for r in orbit_reps(unit_idx)]
    co_conn = [i for i in range(len(elements)) if i != 0 and i not in unit_set]
    co_pairs = [(0, r) for r in orbit_reps(co_conn)]
    return graph_pairs, co_pairs


def field_value_symmetry_hook(spec: RingSpec):
    """Candidate filter from per-coordinate value symmetry, or None.

    When every factor is a field, adjacency only tests coordinatewise
    equality of differences with zero, so permuting the values of any one
    coordinate is a graph automorphism (of the graph and its complement).
    Search paths may then be restricted to canonical value labels: a new
    vertex may reuse coordinate values seen on the path or take the single
    smallest unused one.  Only sound combined with explicit anchor pairs.
    """
    factors = spec.factors
    if not factors or not all(isinstance(a, FieldAtom) for a in factors):
        return None
    sizes = [a.size for a in factors]
    n = spec.size
    coords = []
    for v in range(n):
        rest = v
        cs = []
        for s in reversed(sizes):
            cs.append(rest % s)
            rest //= s
        coords.append(tuple(reversed(cs)))
    m = len(sizes)

    def hook(path, cands: int) -> int:
        used = [set() for _ in range(m)]
        for v in path:
            cv = coords[v]
            for c in range(m):
                used[c].add(cv[c])
        fresh = []
        for c in range(m):
            uc = used[c]
            fresh.append(next((x for x in range(sizes[c]) if x not in uc), -1))
        out = 0
        w = cands
        while w:
            low = w & -w
            w ^= low
            cv = coords[low.bit_length() - 1]
            for c in range(m):
                val = cv[c]
                if val not in used[c] and val != fresh[c]:
                    break
            else:
                out |= low
        return out

    return hook


def tensor_product(graphs) -> Graph:
    """Vertices are tuples; adjacent iff adjacent in every coordinate.

    Vertex order is mixed-radix with the last factor fastest, matching
    ring enumeration for product specs.
    """
    graphs = list(graphs)
    if not graphs:
        raise ValueError("tensor product needs at least one factor")
    n = 1
    for g in graphs:
        n *= g.n
    coords = []
    for v in range(n):
        rest = v
        cs = []
        for g in reversed(graphs):
            cs.append(rest % g.n)
            rest //= g.n
        coords.append(tuple(reversed(cs)))
    adj = [0] * n
    for i in range(n):
        ci = coords[i]
        for j in range(i + 1, n):
            cj = coords[j]
            if all(g.adj[a] >> b & 1 for g, a, b in zip(graphs, ci, cj)):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(n, adj)


def wreath_with_empty(g: Graph, bag: int) -> Graph:
    """Blow each vertex up into an independent bag of the given size.

    (u, i) ~ (v, j) iff u ~ v; vertex (u, i) gets index u * bag + i.
    """
    if bag < 1:
        raise ValueError("bag size must be at least 1")
    n = g.n * bag
    mask = (1 << bag) - 1
    adj = []
    for u in range(g.n):
        row = g.adj[u]
        expanded = 0
        while row:
            low = row & -row
            expanded |= mask << ((low.bit_length() - 1) * bag)
            row ^= low
        adj.extend([expanded] * bag)
    return Graph(n, adj)


def _signatures(g: Graph) -> list[tuple]:
    degs = g.degrees()
    return [
        (degs[u], tuple(sorted(degs[v] for v in g.neighbors(u))))
        for u in range(g.n)
    ]


def is_isomorphic(g: Graph, h: Graph, max_vertices: int = ISO_CAP):
    """Explicit isomorphism g -> h as a vertex list, or None.

    Backtracking over degree- and neighbor-degree-compatible assignments;
    intended for small verification graphs only, hence the cap.
    """
    if g.n > max_vertices or h.n > max_vertices:
        raise SizeCapExceeded(
            f"isomorphism search capped at {max_vertices} vertices"
        )
    if g.n != h.n or g.edge_count() != h.edge_count():
        return None
    sig_g = _signatures(g)
    sig_h = _signatures(h)
    if sorted(sig_g) != sorted(sig_h):
        return None
    pool: dict[tuple, list[int]] = {}
    for v in range(h.n):
        pool.setdefault(sig_h[v], []).append(v)
    order = sorted(range(g.n), key=lambda u: (len(pool[sig_g[u]]), u))
    mapping = [-1] * g.n
    used = [False] * h.n

    def consistent(u: int, v: int) -> bool:
        row_u = g.adj[u]
        row_v = h.adj[v]
        for w in range(g.n):
            mw = mapping[w]
            if mw >= 0 and (row_u >> w & 1) != (row_v >> mw & 1):
                return False
        return True

    def backtrack(k: int) -> bool:
        if k == g.n:
            return True
        u = order[k]
        for v in pool[sig_g[u]]:
            if not used[v] and consistent(u, v):
                mapping[u] = v
                used[v] = True
                if backtrack(k + 1):
                    return True
                mapping[u] = -1
                used[v] = False
        return False

    return mapping if backtrack(0) else None
