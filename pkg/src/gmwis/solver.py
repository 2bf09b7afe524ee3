"""Exact maximum-weight-independent-set solving.

The module provides two self-contained exact solvers (an enumeration oracle
and a branch-and-bound), the three recombination rules they are composed
with (neighborhood branching, modular decomposition, clique-cutset
decomposition), and the six-layer chain that solves the target hereditary
class by walking those reductions down to pluggable base solvers.

All layers are exact for arbitrary inputs; the class structure governs only
where the reductions make progress, never correctness.  Results are
deterministic: ties are broken by whichever branch a fixed ascending order
explores first.
"""

from collections.abc import Callable
from dataclasses import dataclass, field

from .graph import Graph, VertexSet, bits, mask_of
from . import decomposition as dec
from .patterns import (
    Embedding,
    PatternDef,
    catalog,
    find_induced,
    recognize_input_class,
)

TraceStep = tuple[int, str, int]

ENUMERATE_LIMIT = 24
MEMO_LIMIT = 1 << 18


class SizeLimitError(ValueError):
    """Enumeration refused: the instance is too large for the oracle."""


class ClassRejection(Exception):
    """Input rejected: it is not in the solver's hereditary class."""

    def __init__(self, pattern: PatternDef, embedding: Embedding):
        self.pattern = pattern
        self.embedding = embedding
        ids = ",".join(str(v) for v in sorted(embedding))
        super().__init__(f"input contains an induced {pattern.name} on vertices {{{ids}}}")


@dataclass(frozen=True)
class SolveResult:
    """Optimal weight, one optimal independent set, and a step trace.

    Trace entries are (depth, rule, sub-instance size) with depths relative
    to this result's own computation.  Diagnostics are non-fatal structure
    warnings collected in strict mode.
    """

    weight: int
    vertices: VertexSet
    trace: tuple[TraceStep, ...] = ()
    diagnostics: tuple[str, ...] = ()


Solver = Callable[[Graph], SolveResult]


@dataclass
class BaseSolverRegistry:
    """Pluggable base solvers for the terminal classes of the layer chain.

    The shipped default for every slot is the exact branch-and-bound; the
    two optional slots exist so that dedicated polynomial algorithms for
    claw-free and (odd-hole, diamond)-free inputs can be swapped in without
    touching the chain.
    """

    exact: Solver = None  # type: ignore[assignment]
    claw_free: Solver | None = None
    odd_hole_diamond_free: Solver | None = None

    def __post_init__(self):
        if self.exact is None:
            self.exact = mwis_exact

    def resolve(self, name: str) -> Solver:
        if name == "exact":
            return self.exact
        if name == "claw_free":
            return self.claw_free or self.exact
        if name == "odd_hole_diamond_free":
            return self.odd_hole_diamond_free or self.exact
        raise KeyError(f"unknown base solver {name!r}")


@dataclass(frozen=True)
class SolveConfig:
    require_class: bool = False
    strict: bool = False
    registry: BaseSolverRegistry = field(default_factory=BaseSolverRegistry)


def _verify(g: Graph, result: SolveResult) -> SolveResult:
    if not g.is_independent(result.vertices):
        raise AssertionError("solver returned a dependent set")
    if g.weight_of(result.vertices) != result.weight:
        raise AssertionError("solver returned an inconsistent weight")
    return result


# ---------------------------------------------------------------------------
# Ground-truth oracle
# ---------------------------------------------------------------------------


def mwis_enumerate(g: Graph, limit: int = ENUMERATE_LIMIT) -> SolveResult:
    """Exact optimum by explicit enumeration of independent sets.

    Ties go to the lexicographically smallest optimal set.  Refuses graphs
    beyond *limit* vertices; this is the ground-truth oracle, kept free of
    the decomposition machinery it validates.
    """
    if g.n > limit:
        raise SizeLimitError(f"enumeration limited to {limit} vertices, got {g.n}")
    adj = g.adj
    weights = g.weights
    best_w = 0
    best: tuple[int, ...] = ()
    chosen: list[int] = []

    def visit(avail: int, w: int) -> None:
        nonlocal best_w, best
        if avail == 0:
            if w > best_w or (w == best_w and tuple(chosen) < best):
                best_w = w
                best = tuple(chosen)
            return
        v = (avail & -avail).bit_length() - 1
        chosen.append(v)
        visit(avail & ~(adj[v] | 1 << v), w + weights[v])
        chosen.pop()
        visit(avail & ~(1 << v), w)

    visit((1 << g.n) - 1, 0)
    result = SolveResult(best_w, frozenset(best), ((0, "enumerate", g.n),))
    return _verify(g, result)


# ---------------------------------------------------------------------------
# Default exact base solver
# ---------------------------------------------------------------------------


def mwis_exact(g: Graph) -> SolveResult:
    """Exact optimum via branch-and-bound on a maximum-degree vertex.

    Include/exclude branching with component splitting and memoization on
    vertex subsets of the input; include wins ties, so results are
    deterministic.
    """
    adj = g.adj
    weights = g.weights
    memo: dict[int, tuple[int, int]] = {}

    def rec(mask: int) -> tuple[int, int]:
        if mask == 0:
            return 0, 0
        hit = memo.get(mask)
        if hit is not None:
            return hit
        comps = g.component_masks(within=mask)
        if len(comps) > 1:
            w = 0
            s = 0
            for comp in comps:
                cw, cs = rec(comp)
                w += cw
                s |= cs
        else:
            v = -1
            vdeg = -1
            for u in bits(mask):
                d = (adj[u] & mask).bit_count()
                if d > vdeg:
                    v, vdeg = u, d
            in_w, in_s = rec(mask & ~(adj[v] | 1 << v))
            in_w += weights[v]
            in_s |= 1 << v
            out_w, out_s = rec(mask & ~(1 << v))
            if out_w > in_w:
                w, s = out_w, out_s
            else:
                w, s = in_w, in_s
        if len(memo) >= MEMO_LIMIT:
            memo.clear()
        memo[mask] = (w, s)
        return w, s

    w, s = rec((1 << g.n) - 1)
    return _verify(g, SolveResult(w, frozenset(bits(s)), ((0, "exact", g.n),)))


# ---------------------------------------------------------------------------
# Recombination rules
# ---------------------------------------------------------------------------


def _shift(trace: tuple[TraceStep, ...], by: int = 1) -> tuple[TraceStep, ...]:
    return tuple((d + by, rule, size) for d, rule, size in trace)


def solve_nearly(g: Graph, base: Solver) -> SolveResult:
    """Branch on every vertex choice: best of w(v) + base on the rest.

    For each vertex v the base solver handles the graph left after deleting
    v's closed neighborhood; the empty graph solves to weight 0.
    """
    if g.n == 0:
        return SolveResult(0, frozenset())
    best: SolveResult | None = None
    diags: list[str] = []
    for v in range(g.n):
        sub, old_of = g.induced(g.anti_neighborhood(v))
        r = base(sub)
        diags.extend(r.diagnostics)
        cand_w = g.weights[v] + r.weight
        if best is None or cand_w > best.weight:
            verts = frozenset(old_of[u] for u in r.vertices) | {v}
            best = SolveResult(
                cand_w, verts, ((0, "nearly", g.n),) + _shift(r.trace), tuple(diags)
            )
    assert best is not None
    return _verify(g, SolveResult(best.weight, best.vertices, best.trace, tuple(diags)))


def solve_by_modular(g: Graph, prime_solver: Solver) -> SolveResult:
    """Bottom-up recombination over the modular decomposition tree.

    Leaves take their vertex, parallel nodes sum their children, series
    nodes take the best child, and each prime node hands *prime_solver* its
    quotient graph reweighted with the children's optimal weights.
    """
    if g.n == 0:
        return SolveResult(0, frozenset())
    tree = dec.modular_decomposition(g)
    w, s, trace, diags = _md_combine(g, tree, prime_solver)
    return _verify(g, SolveResult(w, frozenset(bits(s)), trace, diags))


def _md_combine(
    g: Graph, node: dec.MDNode, prime_solver: Solver
) -> tuple[int, int, tuple[TraceStep, ...], tuple[str, ...]]:
    if node.kind == dec.LEAF:
        v = min(node.vertices)
        return g.weights[v], 1 << v, (), ()
    results = [_md_combine(g, c, prime_solver) for c in node.children]
    if node.kind == dec.PARALLEL:
        w = sum(r[0] for r in results)
        s = 0
        trace: tuple[TraceStep, ...] = ()
        diags: tuple[str, ...] = ()
        for r in results:
            s |= r[1]
            trace += r[2]
            diags += r[3]
        return w, s, trace, diags
    if node.kind == dec.SERIES:
        best = results[0]
        for r in results[1:]:
            if r[0] > best[0]:
                best = r
        return best
    # prime: re-weight the quotient with child optima and expand the answer
    quotient = node.quotient.with_weights(tuple(r[0] for r in results))
    qr = prime_solver(quotient)
    w = qr.weight
    s = 0
    trace: tuple[TraceStep, ...] = ((0, "prime", quotient.n),) + _shift(qr.trace)
    diags: tuple[str, ...] = qr.diagnostics
    for i in qr.vertices:
        s |= results[i][1]
        trace += results[i][2]
        diags += results[i][3]
    if w != sum(g.weights[v] for v in bits(s)):
        raise AssertionError("prime recombination produced an inconsistent weight")
    return w, s, trace, diags


def solve_by_atoms(g: Graph, atom_solver: Solver) -> SolveResult:
    """Recombination over clique cutsets, branching on the cut clique.

    With a cutset Q splitting off side A from remainder B, the optimum
    either avoids Q (solve both sides without Q) or takes exactly one
    vertex c of Q (solve both sides without N[c]).  Cutset-free graphs go
    to *atom_solver*.  Disconnected inputs are summed over components.
    """
    if g.n == 0:
        return SolveResult(0, frozenset())
    memo: dict[int, tuple[int, int]] = {}

    def rec(mask: int, depth: int) -> tuple[int, int, tuple[TraceStep, ...], tuple[str, ...]]:
        if mask == 0:
            return 0, 0, (), ()
        hit = memo.get(mask)
        if hit is not None:
            return hit[0], hit[1], ((depth, "memo", mask.bit_count()),), ()
        comps = g.component_masks(within=mask)
        if len(comps) > 1:
            w, s = 0, 0
            trace: tuple[TraceStep, ...] = ()
            diags: tuple[str, ...] = ()
            for comp in comps:
                cw, cs, ct, cd = rec(comp, depth)
                w += cw
                s |= cs
                trace += ct
                diags += cd
            out = (w, s, trace, diags)
        else:
            out = _split(mask, depth)
        if len(memo) >= MEMO_LIMIT:
            memo.clear()
        memo[mask] = (out[0], out[1])
        return out

    def _split(mask: int, depth: int):
        sub, old_of = g.induced(frozenset(bits(mask)))
        found = dec.find_clique_cutset(sub)
        if found is None:
            r = atom_solver(sub)
            s = mask_of(old_of[u] for u in r.vertices)
            return r.weight, s, ((depth, "atom", sub.n),) + _shift(r.trace, depth + 1), r.diagnostics
        q_local, side_local = found
        q_mask = mask_of(old_of[v] for v in q_local)
        side_mask = mask_of(old_of[v] for v in side_local)
        a_mask = side_mask | q_mask
        b_mask = mask & ~side_mask
        trace: tuple[TraceStep, ...] = ((depth, "cutset", q_mask.bit_count()),)
        aw, as_, at, ad = rec(a_mask & ~q_mask, depth + 1)
        bw, bs, bt, bd = rec(b_mask & ~q_mask, depth + 1)
        best = (aw + bw, as_ | bs, trace + at + bt, ad + bd)
        for c in bits(q_mask):
            closed = (g.adj[c] | 1 << c)
            cw1, cs1, ct1, cd1 = rec(a_mask & ~closed, depth + 1)
            cw2, cs2, ct2, cd2 = rec(b_mask & ~closed, depth + 1)
            cand_w = g.weights[c] + cw1 + cw2
            if cand_w > best[0]:
                best = (cand_w, cs1 | cs2 | 1 << c, trace + ct1 + ct2, cd1 + cd2)
        return best

    w, s, trace, diags = rec((1 << g.n) - 1, 0)
    return _verify(g, SolveResult(w, frozenset(bits(s)), trace, diags))


# ---------------------------------------------------------------------------
# The layer chain
# ---------------------------------------------------------------------------

#: Pattern excluded on top of the previous class by each nearly-reduction.
_NEARLY_ADDS = {0: "H*", 1: "gem", 3: "5-apple", 4: "C5*"}


class _Chain:
    """One top-level solve: root graph, shared memo, strict diagnostics.

    Sub-instances are vertex masks of the root, so results are memoized by
    subset regardless of which layer requested them (every layer is exact).
    Quotient graphs are new weighted graphs and get a nested chain.
    """

    def __init__(self, g: Graph, registry: BaseSolverRegistry, strict: bool):
        self.g = g
        self.registry = registry
        self.strict = strict
        self.memo: dict[int, tuple[int, int]] = {}
        self.diagnostics: list[str] = []

    def layer(self, mask: int, level: int) -> tuple[int, int, tuple[TraceStep, ...]]:
        if mask == 0:
            return 0, 0, ()
        hit = self.memo.get(mask)
        if hit is not None:
            return hit[0], hit[1], ((0, "memo", mask.bit_count()),)
        size = mask.bit_count()
        head: tuple[TraceStep, ...] = ((0, f"layer{level}", size),)
        if level in (0, 1, 2, 5):
            tree = dec.modular_decomposition(self.g, within=mask)
            w, s, t = self._combine(tree, level)
            out = (w, s, head + _shift(t))
        elif level == 3:
            w, s = 0, 0
            t: tuple[TraceStep, ...] = ()
            for comp in self.g.component_masks(within=mask):
                cw, cs, ct = self.atoms(comp, level)
                w += cw
                s |= cs
                t += _shift(ct)
            out = (w, s, head + t)
        elif level == 4:
            # Components first: the nearly guarantee holds per component.
            w, s = 0, 0
            t: tuple[TraceStep, ...] = ()
            for comp in self.g.component_masks(within=mask):
                cw, cs, ct = self.nearly(comp, 5)
                w += cw
                s |= cs
                t += _shift(ct)
            out = (w, s, head + t)
        else:
            raise ValueError(f"level must be 0..5, got {level}")
        if len(self.memo) >= MEMO_LIMIT:
            self.memo.clear()
        self.memo[mask] = (out[0], out[1])
        return out

    def _combine(self, node: dec.MDNode, level: int) -> tuple[int, int, tuple[TraceStep, ...]]:
        if node.kind == dec.LEAF:
            v = min(node.vertices)
            return self.g.weights[v], 1 << v, ()
        results = [self._combine(c, level) for c in node.children]
        if node.kind == dec.PARALLEL:
            w = sum(r[0] for r in results)
            s = 0
            t: tuple[TraceStep, ...] = ()
            for r in results:
                s |= r[1]
                t += r[2]
            return w, s, t
        if node.kind == dec.SERIES:
            best = results[0]
            for r in results[1:]:
                if r[0] > best[0]:
                    best = r
            return best
        # prime node
        if all(c.kind == dec.LEAF for c in node.children):
            pm = mask_of(node.vertices)
            w, s, t = self.prime_part(pm, level)
            return w, s, ((0, "prime", len(node.vertices)),) + _shift(t)
        quotient = node.quotient.with_weights(tuple(r[0] for r in results))
        nested = _Chain(quotient, self.registry, self.strict)
        qw, qs, qt = nested.prime_part((1 << quotient.n) - 1, level)
        self.diagnostics.extend(nested.diagnostics)
        w = qw
        s = 0
        t = ((0, "prime", quotient.n),) + _shift(qt)
        for i in bits(qs):
            s |= results[i][1]
            t += results[i][2]
        return w, s, t

    def prime_part(self, mask: int, level: int) -> tuple[int, int, tuple[TraceStep, ...]]:
        """Dispatch a prime part according to its layer's reduction."""
        if level in (0, 1):
            return self.atoms(mask, level)
        if level == 2:
            if self.strict:
                self._check_free(mask, "diamond", "prime part at layer 2")
            return self.layer(mask, 3)
        if level == 5:
            return self.dispatch_base(mask)
        raise AssertionError(f"no prime-part rule at level {level}")

    def atoms(self, mask: int, level: int) -> tuple[int, int, tuple[TraceStep, ...]]:
        """Clique-cutset recursion whose atoms go to the next nearly step."""
        if mask == 0:
            return 0, 0, ()
        hit = self.memo.get(mask)
        if hit is not None:
            return hit[0], hit[1], ((0, "memo", mask.bit_count()),)
        comps = self.g.component_masks(within=mask)
        if len(comps) > 1:
            w, s = 0, 0
            t: tuple[TraceStep, ...] = ()
            for comp in comps:
                cw, cs, ct = self.atoms(comp, level)
                w += cw
                s |= cs
                t += ct
            out = (w, s, t)
        else:
            sub, old_of = self.g.induced(frozenset(bits(mask)))
            found = dec.find_clique_cutset(sub)
            if found is None:
                w, s, t = self.nearly(mask, level + 1)
                out = (w, s, ((0, "atom", mask.bit_count()),) + _shift(t))
            else:
                q_local, side_local = found
                q_mask = mask_of(old_of[v] for v in q_local)
                side_mask = mask_of(old_of[v] for v in side_local)
                a_mask = side_mask | q_mask
                b_mask = mask & ~side_mask
                head: tuple[TraceStep, ...] = ((0, "cutset", q_mask.bit_count()),)
                aw, as_, at = self.atoms(a_mask & ~q_mask, level)
                bw, bs, bt = self.atoms(b_mask & ~q_mask, level)
                best = (aw + bw, as_ | bs, head + _shift(at) + _shift(bt))
                for c in bits(q_mask):
                    closed = self.g.adj[c] | 1 << c
                    w1, s1, t1 = self.atoms(a_mask & ~closed, level)
                    w2, s2, t2 = self.atoms(b_mask & ~closed, level)
                    cand = self.g.weights[c] + w1 + w2
                    if cand > best[0]:
                        best = (cand, s1 | s2 | 1 << c, head + _shift(t1) + _shift(t2))
                out = best
        if len(self.memo) >= MEMO_LIMIT:
            self.memo.clear()
        self.memo[mask] = (out[0], out[1])
        return out

    def nearly(self, mask: int, next_level: int) -> tuple[int, int, tuple[TraceStep, ...]]:
        if mask == 0:
            return 0, 0, ()
        added = _NEARLY_ADDS.get(next_level - 1)
        best: tuple[int, int, tuple[TraceStep, ...]] | None = None
        for v in bits(mask):
            sub = mask & ~(self.g.adj[v] | 1 << v)
            if self.strict and added is not None:
                self._check_free(sub, added, f"anti-neighborhood of a vertex before layer {next_level}")
            w, s, t = self.layer(sub, next_level)
            cand = self.g.weights[v] + w
            if best is None or cand > best[0]:
                best = (cand, s | 1 << v, ((0, "nearly", mask.bit_count()),) + _shift(t))
        assert best is not None
        return best

    def dispatch_base(self, mask: int) -> tuple[int, int, tuple[TraceStep, ...]]:
        sub, old_of = self.g.induced(frozenset(bits(mask)))
        # A claw certifies the absence of odd holes for prime in-class parts,
        # so a claw-free test alone picks the right terminal solver.
        if find_induced(catalog("claw"), sub) is None:
            rule, solver = "claw-free-base", self.registry.resolve("claw_free")
        else:
            rule, solver = "odd-hole-diamond-free-base", self.registry.resolve("odd_hole_diamond_free")
        r = solver(sub)
        _verify(sub, r)
        s = mask_of(old_of[u] for u in r.vertices)
        return r.weight, s, ((0, rule, sub.n),) + _shift(r.trace)

    def _check_free(self, mask: int, pattern_name: str, where: str) -> None:
        sub, old_of = self.g.induced(frozenset(bits(mask)))
        emb = find_induced(catalog(pattern_name), sub)
        if emb is not None:
            ids = ",".join(str(old_of[u]) for u in sorted(emb))
            self.diagnostics.append(
                f"structure violation: {where} contains an induced {pattern_name} "
                f"(sub-instance size {sub.n}, vertices {{{ids}}})"
            )


def solve_layer(
    g: Graph,
    level: int,
    registry: BaseSolverRegistry | None = None,
    strict: bool = False,
) -> SolveResult:
    """Solve via the reduction chain entered at the given layer (0..5)."""
    if not 0 <= level <= 5:
        raise ValueError(f"level must be 0..5, got {level}")
    chain = _Chain(g, registry or BaseSolverRegistry(), strict)
    w, s, t = chain.layer((1 << g.n) - 1, level)
    result = SolveResult(w, frozenset(bits(s)), t, tuple(chain.diagnostics))
    return _verify(g, result)


def solve(g: Graph, config: SolveConfig | None = None) -> SolveResult:
    """Top-level entry: optional class gate, then the full layer chain.

    With ``require_class`` the input is first checked for membership in the
    solver's hereditary class and rejected with a witness if it fails; the
    answer itself is exact either way.
    """
    config = config or SolveConfig()
    if config.require_class:
        ok, witness = recognize_input_class(g)
        if not ok:
            pdef, emb = witness
            raise ClassRejection(pdef, emb)
    return solve_layer(g, 0, config.registry, config.strict)
