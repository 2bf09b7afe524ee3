"""Modular decomposition and clique-separator decomposition.

Both algorithms aim for clarity over asymptotics: module closures run in
roughly O(n^3) per tree level, and clique-cutset search follows the
minimal-triangulation route with an exhaustive fallback that grounds it in
tests.
"""

from dataclasses import dataclass

from .graph import Graph, GraphError, VertexSet, bits, mask_of

LEAF = "leaf"
PARALLEL = "parallel"
SERIES = "series"
PRIME = "prime"


@dataclass(frozen=True)
class MDNode:
    """Modular decomposition tree node.

    Children partition the node's vertex set and each child set is a module
    of the whole graph.  Prime nodes carry the quotient graph over their
    children (weights taken from each child's smallest vertex).
    """

    kind: str
    vertices: VertexSet
    children: tuple["MDNode", ...] = ()
    quotient: Graph | None = None

    def leaves(self) -> list[int]:
        if self.kind == LEAF:
            return [min(self.vertices)]
        out: list[int] = []
        for c in self.children:
            out.extend(c.leaves())
        return out


@dataclass(frozen=True)
class AtomNode:
    """Clique-cutset decomposition tree node.

    Internal nodes carry the separating clique and two children; leaves are
    atoms (induced subgraphs without clique cutsets).
    """

    vertices: VertexSet
    separator: VertexSet | None = None
    children: tuple["AtomNode", "AtomNode"] | tuple[()] = ()

    @property
    def is_leaf(self) -> bool:
        return self.separator is None

    def leaves(self) -> list["AtomNode"]:
        if self.is_leaf:
            return [self]
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return out

    def internal_count(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + sum(c.internal_count() for c in self.children)


# ---------------------------------------------------------------------------
# Modules
# ---------------------------------------------------------------------------


def _module_closure(g: Graph, seed_mask: int) -> int:
    """Smallest module containing the seed set.

    Grows the set by absorbing every splitter (an outside vertex with both a
    neighbor and a non-neighbor inside) until none remains.
    """
    m = seed_mask
    size = m.bit_count()
    full = (1 << g.n) - 1
    changed = True
    while changed:
        changed = False
        absorb = 0
        outside = full & ~m
        for z in bits(outside):
            inside = (g.adj[z] & m).bit_count()
            if 0 < inside < size:
                absorb |= 1 << z
        if absorb:
            m |= absorb
            size = m.bit_count()
            changed = True
    return m


def find_nontrivial_module(g: Graph) -> VertexSet | None:
    """Some module M with 1 < |M| < n, or None when only trivial ones exist.

    Scans seed pairs in ascending order and returns the closure of the first
    pair whose closure stays proper, so the answer is deterministic.
    """
    full = (1 << g.n) - 1
    for u in range(g.n):
        for v in range(u + 1, g.n):
            m = _module_closure(g, 1 << u | 1 << v)
            if m != full:
                return frozenset(bits(m))
    return None


def is_prime(g: Graph) -> bool:
    """True iff the graph has only trivial modules (and at least 3 vertices)."""
    if g.n <= 2:
        return False
    return find_nontrivial_module(g) is None


def _maximal_module_partition(g: Graph) -> list[int]:
    """Children of a prime root: maximal proper modules, as masks.

    Assumes the graph and its complement are connected, in which case the
    maximal proper modules are pairwise disjoint and the relation
    "closure({u,v}) is proper" groups vertices into them.
    """
    full = (1 << g.n) - 1
    blocks: list[int] = []
    unassigned = full
    while unassigned:
        v = (unassigned & -unassigned).bit_length() - 1
        block = 1 << v
        rest = unassigned & ~block
        for u in bits(rest):
            m = _module_closure(g, 1 << v | 1 << u)
            if m != full:
                block |= m
        blocks.append(block)
        unassigned &= ~block
    return blocks


def modular_decomposition(g: Graph, within: int | None = None) -> MDNode:
    """Modular decomposition tree with singleton leaves.

    With *within* set (a vertex bitmask), decomposes that induced part while
    keeping the host graph's vertex numbering in the tree.
    """
    mask = (1 << g.n) - 1 if within is None else within
    if mask == 0:
        raise GraphError("modular decomposition needs at least one vertex")
    return _md_rec(g, mask)


def _md_rec(g: Graph, mask: int) -> MDNode:
    verts = frozenset(bits(mask))
    if mask.bit_count() == 1:
        return MDNode(LEAF, verts)
    comps = g.component_masks(within=mask)
    if len(comps) > 1:
        return MDNode(PARALLEL, verts, tuple(_md_rec(g, c) for c in comps))
    co_comps = _co_component_masks(g, mask)
    if len(co_comps) > 1:
        return MDNode(SERIES, verts, tuple(_md_rec(g, c) for c in co_comps))
    sub, old_of = g.induced(verts)
    blocks_local = _maximal_module_partition(sub)
    blocks = sorted(mask_of(old_of[v] for v in bits(b)) for b in blocks_local)
    children = tuple(_md_rec(g, b) for b in blocks)
    reps = [min(bits(b)) for b in blocks]
    qedges = [
        (i, j)
        for i in range(len(reps))
        for j in range(i + 1, len(reps))
        if g.adjacent(reps[i], reps[j])
    ]
    quotient = Graph(len(reps), qedges, tuple(g.weights[r] for r in reps))
    return MDNode(PRIME, verts, children, quotient)


def _co_component_masks(g: Graph, mask: int) -> list[int]:
    """Connected components of the complement, restricted to mask."""
    remaining = mask
    comps = []
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            grown = 0
            for v in bits(frontier):
                grown |= mask & ~g.adj[v] & ~(1 << v)
            frontier = grown & remaining & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    return comps


def validate_md_tree(g: Graph, node: MDNode) -> None:
    """Assert the defining invariants of every node; raises on violation."""
    if node.kind == LEAF:
        if len(node.vertices) != 1:
            raise AssertionError("leaf must hold exactly one vertex")
        return
    union: set[int] = set()
    for c in node.children:
        if union & c.vertices:
            raise AssertionError("children overlap")
        union |= c.vertices
        if not _is_module(g, c.vertices):
            raise AssertionError(f"child {sorted(c.vertices)} is not a module")
    if union != set(node.vertices):
        raise AssertionError("children do not partition the node")
    kids = [mask_of(c.vertices) for c in node.children]
    for i in range(len(kids)):
        for j in range(i + 1, len(kids)):
            cross = _cross_edges(g, kids[i], kids[j])
            complete = kids[i].bit_count() * kids[j].bit_count()
            if node.kind == PARALLEL and cross != 0:
                raise AssertionError("parallel children joined by an edge")
            if node.kind == SERIES and cross != complete:
                raise AssertionError("series children not completely joined")
    if node.kind == PRIME:
        if node.quotient is None or not is_prime(node.quotient):
            raise AssertionError("prime node quotient is not prime")
    for c in node.children:
        validate_md_tree(g, c)


def _is_module(g: Graph, s: VertexSet) -> bool:
    m = mask_of(s)
    size = len(s)
    for z in range(g.n):
        if m >> z & 1:
            continue
        inside = (g.adj[z] & m).bit_count()
        if 0 < inside < size:
            return False
    return True


def _cross_edges(g: Graph, a: int, b: int) -> int:
    return sum((g.adj[v] & b).bit_count() for v in bits(a))


# ---------------------------------------------------------------------------
# Clique cutsets
# ---------------------------------------------------------------------------


def _mcs_m(g: Graph) -> tuple[list[int], list[int], list[int]]:
    """Minimal triangulation via maximum cardinality search with fill.

    Returns the elimination order (first entry eliminated first), the
    per-vertex elimination numbers (higher = selected earlier), and the
    triangulated adjacency masks (original plus fill edges).
    """
    n = g.n
    fill_adj = list(g.adj)
    weight = [0] * n
    number = [0] * n  # assigned n..1; 0 means unnumbered
    infinity = n + 1
    for slot in range(n, 0, -1):
        v = max(
            (u for u in range(n) if number[u] == 0),
            key=lambda u: (weight[u], -u),
        )
        number[v] = slot
        # u joins S when some u..v path through unnumbered vertices keeps
        # every interior weight below weight[u]; dist[] holds the minimax
        # interior weight of such paths from v.
        unnumbered = [u for u in range(n) if number[u] == 0]
        dist = {u: infinity for u in unnumbered}
        for u in unnumbered:
            if g.adj[v] >> u & 1:
                dist[u] = -1
        settled: set[int] = set()
        while True:
            candidates = [u for u in unnumbered if u not in settled and dist[u] < infinity]
            if not candidates:
                break
            x = min(candidates, key=lambda u: (dist[u], u))
            settled.add(x)
            through = max(dist[x], weight[x])
            for y in bits(g.adj[x]):
                if number[y] == 0 and y not in settled and through < dist[y]:
                    dist[y] = through
        for u in unnumbered:
            if dist[u] < weight[u] or dist[u] == -1:
                weight[u] += 1
                if not (g.adj[v] >> u & 1):
                    fill_adj[v] |= 1 << u
                    fill_adj[u] |= 1 << v
    order = sorted(range(n), key=lambda u: number[u])
    return order, number, fill_adj


def find_clique_cutset(g: Graph, exhaustive: bool = False) -> tuple[VertexSet, VertexSet] | None:
    """A clique whose removal disconnects the graph, plus one component side.

    None means the graph is an atom.  The default search walks a minimal
    elimination ordering and tests each vertex's later fill-neighborhood;
    every returned cutset is verified to separate, and the exhaustive mode
    (all clique subsets, desk scale) exists to cross-check completeness.
    The returned side is the smallest component of the remainder.
    """
    if g.n == 0:
        raise GraphError("empty graph has no cutset structure")
    if not g.is_connected():
        raise GraphError("clique cutset search needs a connected graph; split by components first")
    if exhaustive:
        return _cutset_exhaustive(g)
    order, number, fill_adj = _mcs_m(g)
    full = (1 << g.n) - 1
    for x in order:
        later = mask_of(u for u in bits(fill_adj[x]) if number[u] > number[x])
        if later == 0:
            continue
        if not g.is_clique(bits(later)):
            continue
        rest = full & ~later
        comps = g.component_masks(within=rest)
        if len(comps) > 1:
            return frozenset(bits(later)), _smallest_component(comps)
    return None


def _cutset_exhaustive(g: Graph) -> tuple[VertexSet, VertexSet] | None:
    full = (1 << g.n) - 1
    candidates = []
    for q in range(1, full):
        if not g.is_clique(bits(q)):
            continue
        comps = g.component_masks(within=full & ~q)
        if len(comps) > 1:
            candidates.append((q.bit_count(), q))
    if not candidates:
        return None
    _, q = min(candidates)
    comps = g.component_masks(within=full & ~q)
    return frozenset(bits(q)), _smallest_component(comps)


def _smallest_component(comps: list[int]) -> VertexSet:
    best = min(comps, key=lambda c: (c.bit_count(), c))
    return frozenset(bits(best))


def clique_cutset_decompose(g: Graph, exhaustive: bool = False) -> AtomNode:
    """Binary decomposition tree whose leaves are atoms.

    Splits off the smallest component side first, which bounds the tree
    depth and keeps traces deterministic.
    """
    if not g.is_connected():
        raise GraphError("decomposition needs a connected graph; split by components first")
    return _atom_rec(g, frozenset(range(g.n)), exhaustive)


def _atom_rec(g: Graph, verts: VertexSet, exhaustive: bool) -> AtomNode:
    sub, old_of = g.induced(verts)
    found = find_clique_cutset(sub, exhaustive=exhaustive)
    if found is None:
        return AtomNode(verts)
    q_local, side_local = found
    q = frozenset(old_of[v] for v in q_local)
    side = frozenset(old_of[v] for v in side_local)
    near = _atom_rec(g, side | q, exhaustive)
    far = _atom_rec(g, verts - side, exhaustive)
    return AtomNode(verts, q, (near, far))


# ---------------------------------------------------------------------------
# Text rendering (CLI `decompose`)
# ---------------------------------------------------------------------------


def format_md_tree(node: MDNode, indent: int = 0) -> str:
    """Indented one-node-per-line rendering with 1-based vertex ids."""
    ids = " ".join(str(v + 1) for v in sorted(node.vertices))
    line = f"{'  ' * indent}{node.kind} [{ids}] []"
    parts = [line]
    for c in node.children:
        parts.append(format_md_tree(c, indent + 1))
    return "\n".join(parts)


def format_atom_tree(node: AtomNode, indent: int = 0) -> str:
    """Indented one-node-per-line rendering with 1-based vertex ids."""
    ids = " ".join(str(v + 1) for v in sorted(node.vertices))
    if node.is_leaf:
        parts = [f"{'  ' * indent}atom [{ids}] []"]
    else:
        sep = " ".join(str(v + 1) for v in sorted(node.separator))
        parts = [f"{'  ' * indent}cut [{ids}] [{sep}]"]
        for c in node.children:
            parts.append(format_atom_tree(c, indent + 1))
    return "\n".join(parts)


def validate_atom_tree(g: Graph, node: AtomNode, exhaustive_leaf_limit: int = 12) -> None:
    """Assert separator/atom invariants; raises on violation.

    Leaves of at most *exhaustive_leaf_limit* vertices are re-checked for
    cutset freeness by brute-force clique enumeration.
    """
    covered: set[int] = set()
    edge_covered: set[tuple[int, int]] = set()
    for leaf in node.leaves():
        covered |= leaf.vertices
        sub, old_of = g.induced(leaf.vertices)
        for u, v in sub.edges():
            edge_covered.add((min(old_of[u], old_of[v]), max(old_of[u], old_of[v])))
        if sub.n <= exhaustive_leaf_limit:
            if _cutset_exhaustive(sub) is not None:
                raise AssertionError(f"leaf {sorted(leaf.vertices)} admits a clique cutset")
    if covered != set(node.vertices):
        raise AssertionError("leaves do not cover the root vertex set")
    root_sub, root_old = g.induced(node.vertices)
    for u, v in root_sub.edges():
        key = (min(root_old[u], root_old[v]), max(root_old[u], root_old[v]))
        if key not in edge_covered:
            raise AssertionError(f"edge {key} lies in no leaf")
    _validate_atom_internal(g, node)


def _validate_atom_internal(g: Graph, node: AtomNode) -> None:
    if node.is_leaf:
        return
    if not g.is_clique(node.separator):
        raise AssertionError("separator label is not a clique")
    near, far = node.children
    a = near.vertices - node.separator
    b = far.vertices - node.separator
    if not a or not b:
        raise AssertionError("separator does not split the node")
    if near.vertices | far.vertices != node.vertices:
        raise AssertionError("children do not cover the node")
    for u in a:
        for v in b:
            if g.adjacent(u, v):
                raise AssertionError("separator label fails to separate its children")
    for c in node.children:
        _validate_atom_internal(g, c)
