"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as they
complete.  Every tolerance here is exact equality; the only numeric budget
is the wall-clock bound on the top-level equivalence sweep.
"""

import random
import time
from collections import Counter
from itertools import combinations

from gmwis import (
    Graph,
    clique_cutset_decompose,
    find_induced,
    mwis_enumerate,
    mwis_exact,
    solve,
    solve_by_atoms,
    solve_by_modular,
    solve_layer,
    solve_nearly,
)
from gmwis.decomposition import modular_decomposition, validate_atom_tree, validate_md_tree
from gmwis.lab import random_graph, run_suite
from gmwis.patterns import SHIPPED_NAMES, catalog
from gmwis.toolkit import GenSpec, format_graph, generate

from oracles import adj_sets, isomorphic


def _report(name: str, ok: bool, detail: str = "") -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_criterion_1_top_level_oracle_equivalence():
    start = time.perf_counter()
    mismatches = 0
    for seed in range(500):
        g = generate(GenSpec(n=14, level=0, seed=seed, density=0.35))
        assert g.n <= 14
        if solve(g).weight != mwis_enumerate(g).weight:
            mismatches += 1
    elapsed = time.perf_counter() - start
    _report(
        "criterion 1 (solve == oracle on 500 class instances, n<=14)",
        mismatches == 0 and elapsed < 600,
        f"mismatches={mismatches} elapsed={elapsed:.1f}s (budget 600s)",
    )


def test_criterion_2_per_layer_oracle_equivalence():
    mismatches = []
    for level in range(1, 6):
        for seed in range(200):
            g = generate(GenSpec(n=14, level=level, seed=10_000 * level + seed, density=0.3))
            if solve_layer(g, level).weight != mwis_enumerate(g).weight:
                mismatches.append((level, seed))
    _report(
        "criterion 2 (solve_layer == oracle, 200 instances per layer 1..5)",
        not mismatches,
        f"mismatches={mismatches[:5]} count={len(mismatches)}",
    )


def test_criterion_3_recombination_on_arbitrary_graphs():
    rng = random.Random(424242)
    bad = Counter()
    for _ in range(500):
        n = rng.randint(1, 12)
        g = random_graph(rng, n, rng.choice([0.15, 0.3, 0.5, 0.7]))
        g = g.with_weights([rng.randint(0, 100) for _ in range(n)])
        want = mwis_enumerate(g).weight
        if solve_by_modular(g, mwis_exact).weight != want:
            bad["modular"] += 1
        if solve_by_atoms(g, mwis_exact).weight != want:
            bad["atoms"] += 1
        if solve_nearly(g, mwis_enumerate).weight != want:
            bad["nearly"] += 1
    _report(
        "criterion 3 (modular/atoms/nearly recombination == oracle on 500 random graphs)",
        not bad,
        f"disagreements={dict(bad)}",
    )


def _naive_hits(g: Graph, patterns) -> dict[str, bool]:
    """Subset-enumeration detector: for each pattern, scan all |P|-subsets."""
    adj = adj_sets(g.n, g.edges())
    masks = [0] * g.n
    for u, v in g.edges():
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    by_size: dict[int, list] = {}
    for p in patterns:
        pedges = list(p.edges)
        pdegs = sorted(len(s) for s in adj_sets(p.n, pedges))
        by_size.setdefault(p.n, []).append((p.name, pedges, pdegs))
    hits = {p.name: False for p in patterns}
    for size, plist in by_size.items():
        if size > g.n:
            continue
        open_names = [t for t in plist]
        for subset in combinations(range(g.n), size):
            smask = 0
            for v in subset:
                smask |= 1 << v
            degs = sorted((masks[v] & smask).bit_count() for v in subset)
            pos = {v: i for i, v in enumerate(subset)}
            sub_edges = None
            for name, pedges, pdegs in open_names:
                if hits[name] or degs != pdegs:
                    continue
                if sub_edges is None:
                    sub_edges = [
                        (pos[u], pos[v])
                        for u in subset
                        for v in adj[u]
                        if v in subset and u < v
                    ]
                if isomorphic(size, sub_edges, size, pedges):
                    hits[name] = True
            if all(hits[name] for name, _, _ in open_names):
                break
    return hits


def test_criterion_4_detector_equivalence():
    patterns = [catalog(name) for name in SHIPPED_NAMES]
    rng = random.Random(77)
    disagreements = []
    for i in range(1000):
        n = rng.randint(1, 10)
        g = random_graph(rng, n, rng.choice([0.15, 0.3, 0.5, 0.7, 0.85]))
        naive = _naive_hits(g, patterns)
        for p in patterns:
            fast = find_induced(p, g) is not None
            if fast != naive[p.name]:
                disagreements.append((i, p.name, fast, naive[p.name]))
    _report(
        "criterion 4 (detector == naive subset enumeration, 23 patterns x 1000 graphs)",
        not disagreements,
        f"disagreements={disagreements[:5]} count={len(disagreements)}",
    )


def test_criterion_5_structural_suites_clean():
    failures = []
    for suite_id in ("lemma2", "lemma3", "thm3", "thm3_claim1", "thm5", "thm7", "thm9", "thm11"):
        rep = run_suite(suite_id, samples=300, seed=20240, max_n=12)
        ok = rep.status == "ok" and rep.verified >= 300 and not rep.violations
        if rep.violations:
            # violations must at least carry self-verifying evidence
            ok = ok and all(v.reverify() for v in rep.violations)
        if not ok:
            failures.append((suite_id, rep.status, rep.verified, len(rep.violations)))
    _report(
        "criterion 5 (eight structural suites, >=300 samples each, zero violations)",
        not failures,
        f"failures={failures}",
    )


def test_criterion_6_decomposition_validity():
    rng = random.Random(1337)
    errors = []
    for i in range(500):
        n = rng.randint(1, 12)
        g = random_graph(rng, n, rng.choice([0.2, 0.35, 0.5, 0.7]))
        try:
            validate_md_tree(g, modular_decomposition(g))
            for comp in g.components():
                sub, _ = g.induced(comp)
                validate_atom_tree(sub, clique_cutset_decompose(sub), exhaustive_leaf_limit=12)
        except AssertionError as exc:
            errors.append((i, str(exc)))
    _report(
        "criterion 6 (tree invariants + brute-force atom leaves on 500 random graphs)",
        not errors,
        f"errors={errors[:3]} count={len(errors)}",
    )


def test_criterion_7_determinism():
    problems = []

    spec = GenSpec(n=13, level=0, seed=321, density=0.4)
    if format_graph(generate(spec)) != format_graph(generate(spec)):
        problems.append("generated graph bytes differ")

    g = generate(GenSpec(n=13, level=0, seed=31415, density=0.35))
    r1, r2 = solve(g), solve(g)
    if (r1.weight, sorted(r1.vertices), r1.trace) != (r2.weight, sorted(r2.vertices), r2.trace):
        problems.append("solver output or trace differs")

    a = run_suite("thm7", samples=40, seed=5, max_n=11)
    b = run_suite("thm7", samples=40, seed=5, max_n=11)
    if a.to_text() != b.to_text():
        problems.append("suite report text differs")

    _report(
        "criterion 7 (byte-identical reruns: generation, solve+trace, suite reports)",
        not problems,
        f"problems={problems}",
    )
