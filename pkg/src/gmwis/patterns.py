"""Named small graphs and certificate-producing induced-subgraph detection.

The catalog ships every special graph the solver and the verification suites
reason about.  Entries carry a provenance tag:

* ``paper-exact``          -- the defining edge list comes verbatim from the
                              published source of these graph classes;
* ``figure-reconstructed`` -- the source defines the graph only by a figure,
                              and the edge list here is a reconstruction
                              (treat detector hits involving these as
                              hypotheses, not ground truth);
* ``user-supplied``        -- registered at runtime from a pattern file.

Patterns are data, not code: reconstructed entries can be corrected through
the pattern-file format without touching the library.
"""

import re
from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, bits

PAPER_EXACT = "paper-exact"
FIGURE_RECONSTRUCTED = "figure-reconstructed"
USER_SUPPLIED = "user-supplied"
PROVENANCE_TAGS = (PAPER_EXACT, FIGURE_RECONSTRUCTED, USER_SUPPLIED)

Embedding = tuple[int, ...]


class PatternUnknownError(KeyError):
    """Requested name is not in the catalog."""


class PatternUnavailableError(KeyError):
    """Name is a reserved slot whose edge list must be user-supplied."""


@dataclass(frozen=True)
class PatternDef:
    """A named small graph given by an explicit edge list."""

    name: str
    n: int
    edges: tuple[tuple[int, int], ...]
    provenance: str = USER_SUPPLIED

    def __post_init__(self):
        if self.provenance not in PROVENANCE_TAGS:
            raise ValueError(f"unknown provenance tag {self.provenance!r}")
        seen = set()
        for u, v in self.edges:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"pattern {self.name}: bad edge ({u},{v})")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"pattern {self.name}: duplicate edge ({u},{v})")
            seen.add(key)

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


def build_sijk(i: int, j: int, k: int) -> PatternDef:
    """Tree of three paths of lengths i, j, k glued at a common center.

    Length-0 branches are omitted, so e.g. (0,1,2) is the 4-vertex path and
    (1,1,1) is the claw.  All lengths zero is rejected (a single vertex is
    not a usable pattern).
    """
    if min(i, j, k) < 0:
        raise ValueError("branch lengths must be nonnegative")
    if i + j + k < 1:
        raise ValueError("at least one branch must have positive length")
    edges = []
    nxt = 1
    for length in (i, j, k):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    lengths = sorted((i, j, k))
    name = "S{},{},{}".format(*lengths)
    return PatternDef(name, i + j + k + 1, tuple(edges), PAPER_EXACT)


def _path(k: int) -> tuple[tuple[int, int], ...]:
    return tuple((v, v + 1) for v in range(k - 1))


def _cycle(k: int) -> tuple[tuple[int, int], ...]:
    return _path(k) + ((k - 1, 0),)


def _make_path(k: int) -> PatternDef:
    if k < 1:
        raise ValueError("path needs at least one vertex")
    return PatternDef(f"P{k}", k, _path(k), PAPER_EXACT)


def _make_cycle(k: int) -> PatternDef:
    if k < 3:
        raise ValueError("cycle needs at least three vertices")
    return PatternDef(f"C{k}", k, _cycle(k), PAPER_EXACT)


def _make_apple(k: int) -> PatternDef:
    # C_k plus a vertex with exactly one neighbor on the cycle (k >= 4).
    if k < 4:
        raise ValueError("apple needs a cycle of length at least four")
    return PatternDef(f"{k}-apple", k + 1, _cycle(k) + ((0, k),), PAPER_EXACT)


_FIXED = {
    p.name: p
    for p in (
        build_sijk(1, 1, 1),
        build_sijk(1, 1, 2),
        build_sijk(1, 2, 2),
        build_sijk(1, 1, 3),
        # Complement of the chair; equivalently a diamond with a pendant
        # vertex attached at one of its degree-2 vertices.
        PatternDef(
            "co-chair", 5, ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4)), PAPER_EXACT
        ),
        # K4 minus one edge.
        PatternDef("diamond", 4, ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2)), PAPER_EXACT),
        # P4 (0-1-2-3) plus a vertex adjacent to all of it.
        PatternDef(
            "gem", 5, ((0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)), PAPER_EXACT
        ),
        # C5 plus a false twin of vertex 1 (an adjacent twin would create a
        # diamond, which the statements using this graph exclude).
        PatternDef(
            "twin-C5", 6, _cycle(5) + ((5, 0), (5, 2)), FIGURE_RECONSTRUCTED
        ),
        # C5 plus a vertex seeing three cycle vertices, two of them adjacent.
        PatternDef(
            "C5*", 6, _cycle(5) + ((5, 0), (5, 2), (5, 3)), FIGURE_RECONSTRUCTED
        ),
        # Diamond 0-1-2-3 (missing 1-3), a vertex 4 seeing both degree-2
        # corners, and a pendant 5 on it.
        PatternDef(
            "H*",
            6,
            ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 4), (3, 4), (4, 5)),
            FIGURE_RECONSTRUCTED,
        ),
    )
}

_ALIASES = {"claw": "S1,1,1", "chair": "S1,1,2", "fork": "S1,1,2"}

# Reserved slots: their edge lists are not derivable from the published text
# alone and must be supplied through a pattern file.
_RESERVED_SLOTS = tuple(f"H{i}" for i in range(1, 9))

_SIJK_RE = re.compile(r"^S(\d+),(\d+),(\d+)$", re.IGNORECASE)
_PATH_RE = re.compile(r"^P(\d+)$", re.IGNORECASE)
_CYCLE_RE = re.compile(r"^C(\d+)$", re.IGNORECASE)
_APPLE_RE = re.compile(r"^(\d+)-apple$", re.IGNORECASE)

#: Concrete default entries, used when a caller wants "the whole catalog".
SHIPPED_NAMES = (
    "P3", "P4", "P5", "P6", "P7",
    "C3", "C4", "C5", "C6", "C7",
    "claw", "chair", "S1,2,2", "S1,1,3",
    "co-chair", "diamond", "gem",
    "4-apple", "5-apple", "6-apple",
    "twin-C5", "C5*", "H*",
)


class Catalog:
    """Mutable registry of patterns over the fixed default entries."""

    def __init__(self):
        self._user: dict[str, PatternDef] = {}

    def register(self, pdef: PatternDef, replace: bool = False) -> None:
        key = self._normalize(pdef.name)
        if not replace and (key in self._user or key in _FIXED):
            raise ValueError(f"pattern {pdef.name!r} already registered")
        if not pdef.graph().is_connected():
            raise ValueError(f"pattern {pdef.name!r} must be connected")
        self._user[key] = pdef

    def clear_user_patterns(self) -> None:
        """Drop runtime registrations, keeping the fixed entries."""
        self._user.clear()

    @staticmethod
    def _normalize(name: str) -> str:
        low = name.strip()
        for known in list(_FIXED) + list(_RESERVED_SLOTS) + list(_ALIASES):
            if low.lower() == known.lower():
                return _ALIASES.get(known, known)
        m = _SIJK_RE.match(low)
        if m:
            lengths = sorted(int(g) for g in m.groups())
            return "S{},{},{}".format(*lengths)
        for rx, fmt in ((_PATH_RE, "P{}"), (_CYCLE_RE, "C{}"), (_APPLE_RE, "{}-apple")):
            m = rx.match(low)
            if m:
                return fmt.format(int(m.group(1)))
        return low

    def get(self, name: str) -> PatternDef:
        key = self._normalize(name)
        if key in self._user:
            return self._user[key]
        if key in _FIXED:
            return _FIXED[key]
        m = _SIJK_RE.match(key)
        if m:
            i, j, k = (int(g) for g in m.groups())
            return build_sijk(i, j, k)
        m = _PATH_RE.match(key)
        if m:
            return _make_path(int(m.group(1)))
        m = _CYCLE_RE.match(key)
        if m:
            return _make_cycle(int(m.group(1)))
        m = _APPLE_RE.match(key)
        if m:
            return _make_apple(int(m.group(1)))
        if key in _RESERVED_SLOTS:
            raise PatternUnavailableError(
                f"pattern {key} is a user-supplied slot with no shipped edge list; "
                "register it from a pattern file"
            )
        raise PatternUnknownError(
            f"unknown pattern {name!r}; available: {', '.join(self.names())} "
            "plus the families P<k>, C<k>, <k>-apple, S<i>,<j>,<k>"
        )

    def names(self) -> list[str]:
        return sorted(set(SHIPPED_NAMES) | set(self._user), key=str.lower)

    def shipped(self) -> list[PatternDef]:
        return [self.get(name) for name in SHIPPED_NAMES]


_DEFAULT_CATALOG = Catalog()


def default_catalog() -> Catalog:
    """The process-wide catalog; user patterns registered here are visible
    to every lookup that goes through :func:`catalog`."""
    return _DEFAULT_CATALOG


def catalog(name: str) -> PatternDef:
    """Look up a pattern in the default catalog."""
    return _DEFAULT_CATALOG.get(name)


# ---------------------------------------------------------------------------
# Induced-subgraph detection
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _search_plan(pdef: PatternDef):
    """Vertex order and adjacency constraints for the backtracking search.

    Orders pattern vertices so each one (component starts aside) has as many
    already-placed neighbors as possible, which tightens candidate masks
    early.  Returns, per position, the pattern vertex, its degree, and its
    (position, adjacent?) relations to all earlier positions.
    """
    g = pdef.graph()
    degs = [g.degree(v) for v in range(g.n)]
    placed: list[int] = []
    remaining = set(range(g.n))
    while remaining:
        best = max(
            remaining,
            key=lambda v: (sum(1 for u in placed if g.adjacent(u, v)), degs[v], -v),
        )
        placed.append(best)
        remaining.remove(best)
    plan = []
    for pos, v in enumerate(placed):
        rels = tuple((j, g.adjacent(placed[j], v)) for j in range(pos))
        plan.append((v, degs[v], rels))
    return tuple(plan)


def find_induced(pdef: PatternDef, host: Graph, anchor: int | None = None) -> Embedding | None:
    """Find an injective map whose image induces exactly the pattern.

    The search is exhaustive backtracking over host vertices in ascending
    order, so absence is a certificate and the returned embedding is
    deterministic.  With *anchor* set, only embeddings covering that host
    vertex are considered.
    """
    if pdef.n > host.n:
        return None
    if anchor is None:
        return _search(pdef, host, None, None)
    for pos in range(pdef.n):
        emb = _search(pdef, host, pos, anchor)
        if emb is not None:
            return emb
    return None


def _search(pdef: PatternDef, host: Graph, anchor_pos: int | None, anchor: int | None) -> Embedding | None:
    plan = _search_plan(pdef)
    n = host.n
    full = (1 << n) - 1
    hadj = host.adj
    hdeg = [a.bit_count() for a in hadj]
    image = [0] * pdef.n  # host vertex per plan position
    used = 0

    def extend(pos: int) -> bool:
        nonlocal used
        if pos == pdef.n:
            return True
        _, pdeg, rels = plan[pos]
        cand = full & ~used
        for j, adjacent in rels:
            cand &= hadj[image[j]] if adjacent else ~hadj[image[j]]
        if pos == anchor_pos:
            cand &= 1 << anchor
        for h in bits(cand):
            if hdeg[h] < pdeg:
                continue
            image[pos] = h
            used |= 1 << h
            if extend(pos + 1):
                return True
            used &= ~(1 << h)
        return False

    if extend(0):
        out = [0] * pdef.n
        for pos, (pvertex, _, _) in enumerate(plan):
            out[pvertex] = image[pos]
        return tuple(out)
    return None


def is_free(host: Graph, patterns: list[PatternDef]) -> tuple[bool, tuple[PatternDef, Embedding] | None]:
    """True iff no pattern embeds induced; otherwise the first witness.

    Patterns are tried in list order and the first hit wins, so failures are
    reproducible.
    """
    for pdef in patterns:
        emb = find_induced(pdef, host)
        if emb is not None:
            return False, (pdef, emb)
    return True, None


#: Patterns whose exclusion defines the solver's input class.
INPUT_CLASS_NAMES = ("S1,2,2", "S1,1,3", "co-chair")


def class_patterns(level: int | None = 0) -> list[PatternDef]:
    """Forbidden patterns of each solver layer's hereditary class.

    Levels 0..2 stack exclusions onto the input class; levels 3..5 stack
    onto the diamond-free variant. ``None`` means no restriction.
    """
    if level is None:
        return []
    names = {
        0: INPUT_CLASS_NAMES,
        1: INPUT_CLASS_NAMES + ("H*",),
        2: INPUT_CLASS_NAMES + ("H*", "gem"),
        3: ("S1,2,2", "S1,1,3", "diamond"),
        4: ("S1,2,2", "S1,1,3", "diamond", "5-apple"),
        5: ("S1,2,2", "S1,1,3", "diamond", "5-apple", "C5*"),
    }
    if level not in names:
        raise ValueError(f"level must be 0..5 or None, got {level}")
    return [catalog(name) for name in names[level]]


def recognize_input_class(host: Graph) -> tuple[bool, tuple[PatternDef, Embedding] | None]:
    """Membership test for the solver's input class, with witness on failure."""
    return is_free(host, class_patterns(0))


def find_shortest_odd_hole(host: Graph) -> tuple[int, Embedding] | None:
    """Smallest induced odd cycle of length >= 5, as (length, embedding).

    Exhaustive ascending-length search; exponential in the worst case and
    intended for desk-scale graphs only.
    """
    k = 5
    while k <= host.n:
        emb = find_induced(catalog(f"C{k}"), host)
        if emb is not None:
            return k, emb
        k += 2
    return None


def has_odd_hole(host: Graph) -> bool:
    return find_shortest_odd_hole(host) is not None


# ---------------------------------------------------------------------------
# Canonical forms (small graphs)
# ---------------------------------------------------------------------------


def _stable_colors(n: int, adj: tuple[int, ...], colors: tuple[int, ...]) -> tuple[int, ...]:
    ncolors = len(set(colors))
    while ncolors < n:
        sigs = []
        for v in range(n):
            around = sorted(colors[u] for u in bits(adj[v]))
            sigs.append((colors[v], tuple(around)))
        ranking = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        refined = tuple(ranking[s] for s in sigs)
        if len(ranking) == ncolors:
            return refined
        colors = refined
        ncolors = len(ranking)
    return colors


def _encode(n: int, adj: tuple[int, ...], order: list[int]) -> int:
    pos = {v: i for i, v in enumerate(order)}
    code = 0
    bit = 0
    for i in range(n):
        ai = adj[order[i]]
        for j in range(i + 1, n):
            if ai >> order[j] & 1:
                code |= 1 << bit
            bit += 1
    return code


def _canon_code(n: int, adj: tuple[int, ...]) -> int:
    if n == 0:
        return 0
    best: int | None = None

    def descend(colors: tuple[int, ...]) -> None:
        nonlocal best
        colors = _stable_colors(n, adj, colors)
        classes: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            classes.setdefault(c, []).append(v)
        target = None
        for c in sorted(classes):
            cell = classes[c]
            if len(cell) > 1 and (target is None or len(cell) < len(target)):
                target = cell
        if target is None:
            order = sorted(range(n), key=lambda v: colors[v])
            code = _encode(n, adj, order)
            if best is None or code < best:
                best = code
            return
        marker = n + 1
        for v in target:
            branched = list(colors)
            branched[v] = marker
            descend(tuple(branched))

    descend((0,) * n)
    assert best is not None
    return best


def canonical_form(g: Graph) -> tuple[int, int]:
    """Isomorphism-invariant key (n, canonical adjacency code).

    Individualization-refinement search; exponential worst case, meant for
    graphs of around ten vertices or fewer.
    """
    return g.n, _canon_code(g.n, g.adj)


def are_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.num_edges() != b.num_edges():
        return False
    if sorted(x.bit_count() for x in a.adj) != sorted(x.bit_count() for x in b.adj):
        return False
    return canonical_form(a) == canonical_form(b)
