"""Immutable weighted graphs with bitmask adjacency.

Vertices are dense integers 0..n-1.  Adjacency is kept as one Python int
bitmask per vertex, which makes neighborhood algebra (unions, differences,
independence tests) single bit operations at desk scale.
"""

from collections.abc import Iterable, Iterator

# Total weight must stay below this bound so that any sum computed by the
# solvers fits a 64-bit signed integer.
MAX_TOTAL_WEIGHT = 2**63 - 1

VertexSet = frozenset[int]


class GraphError(ValueError):
    """Raised for malformed graph construction or out-of-range vertices."""


def bits(mask: int) -> Iterator[int]:
    """Iterate the set bits of *mask* in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """A finite simple undirected graph with nonnegative integer vertex weights.

    Instances are immutable; every "deletion" produces a fresh induced
    subgraph together with an index map, so graph values can be shared,
    memoized, and read concurrently without coordination.
    """

    __slots__ = ("n", "weights", "adj", "_full")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], weights: Iterable[int] | None = None):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        ws = tuple(weights) if weights is not None else (1,) * n
        if len(ws) != n:
            raise GraphError(f"expected {n} weights, got {len(ws)}")
        for v, w in enumerate(ws):
            if not isinstance(w, int) or isinstance(w, bool) or w < 0:
                raise GraphError(f"weight of vertex {v} must be a nonnegative integer, got {w!r}")
        if sum(ws) > MAX_TOTAL_WEIGHT:
            raise GraphError("total weight exceeds the 64-bit arithmetic bound")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n) or not (0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.weights = ws
        self.adj = tuple(adj)
        self._full = (1 << n) - 1

    # -- basic queries ----------------------------------------------------

    def _check(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def adjacent(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        self._check(v)
        return self.adj[v].bit_count()

    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> VertexSet:
        self._check(v)
        return frozenset(bits(self.adj[v]))

    def closed_neighborhood(self, v: int) -> VertexSet:
        self._check(v)
        return frozenset(bits(self.adj[v] | 1 << v))

    def anti_neighborhood(self, v: int) -> VertexSet:
        """All vertices outside the closed neighborhood of *v*."""
        self._check(v)
        return frozenset(bits(self._full & ~(self.adj[v] | 1 << v)))

    def neighborhood_of_set(self, S: Iterable[int]) -> VertexSet:
        """N(S): vertices outside S adjacent to at least one member of S."""
        sm = self._mask_checked(S)
        m = 0
        for v in bits(sm):
            m |= self.adj[v]
        return frozenset(bits(m & ~sm))

    def weight_of(self, S: Iterable[int]) -> int:
        return sum(self.weights[v] for v in S)

    # -- set predicates ----------------------------------------------------

    def _mask_checked(self, S: Iterable[int]) -> int:
        m = 0
        for v in S:
            self._check(v)
            m |= 1 << v
        return m

    def is_clique(self, S: Iterable[int]) -> bool:
        sm = self._mask_checked(S)
        for v in bits(sm):
            if sm & ~(self.adj[v] | 1 << v):
                return False
        return True

    def is_independent(self, S: Iterable[int]) -> bool:
        sm = self._mask_checked(S)
        for v in bits(sm):
            if self.adj[v] & sm:
                return False
        return True

    # -- derived graphs ----------------------------------------------------

    def induced(self, S: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on S, reindexed densely.

        Returns the new graph and the index map as a tuple ``old_of`` where
        ``old_of[new] == old``; the inverse map is ``{old: new}`` over its
        enumeration.
        """
        sm = self._mask_checked(S)
        old_of = tuple(bits(sm))
        new_of = {old: new for new, old in enumerate(old_of)}
        edges = [
            (new_of[u], new_of[v])
            for u in old_of
            for v in bits(self.adj[u] & sm)
            if u < v
        ]
        return Graph(len(old_of), edges, tuple(self.weights[v] for v in old_of)), old_of

    def complement(self) -> "Graph":
        edges = [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if not self.adj[u] >> v & 1
        ]
        return Graph(self.n, edges, self.weights)

    def with_weights(self, weights: Iterable[int]) -> "Graph":
        return Graph(self.n, self.edges(), tuple(weights))

    # -- connectivity --------------------------------------------------------

    def component_masks(self, within: int | None = None) -> list[int]:
        """Connected components as bitmasks, ordered by smallest member."""
        remaining = self._full if within is None else within
        comps = []
        while remaining:
            seed = remaining & -remaining
            comp = seed
            frontier = seed
            while frontier:
                grown = 0
                for v in bits(frontier):
                    grown |= self.adj[v]
                frontier = grown & remaining & ~comp
                comp |= frontier
            comps.append(comp)
            remaining &= ~comp
        return comps

    def components(self) -> list[VertexSet]:
        return [frozenset(bits(m)) for m in self.component_masks()]

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.component_masks()) == 1

    # -- dunder ----------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj and self.weights == other.weights

    def __hash__(self) -> int:
        return hash((self.n, self.adj, self.weights))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()})"


def build_graph(n: int, edges: Iterable[tuple[int, int]], weights: Iterable[int] | None = None) -> Graph:
    """Construct a graph, collapsing duplicate edge pairs."""
    return Graph(n, edges, weights)
