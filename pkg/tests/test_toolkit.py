import pytest

from gmwis import (
    GenSpec,
    GenerationError,
    ParseError,
    build_graph,
    catalog,
    generate,
    named_graph,
    read_graph,
    recognize_input_class,
    write_graph,
)
from gmwis.patterns import Catalog, class_patterns, is_free
from gmwis.toolkit import format_graph, parse_graph, parse_patterns


class TestGraphFiles:
    def test_k2_file_shape(self):
        text = format_graph(build_graph(2, [(0, 1)], [5, 7]))
        assert text == "p gmwis 2 1\nn 1 5\nn 2 7\ne 1 2\n"

    def test_round_trip_identity(self, tmp_path):
        g = named_graph("C5").with_weights([3, 1, 4, 1, 5])
        path = tmp_path / "c5.g"
        write_graph(g, path)
        assert read_graph(path) == g

    def test_round_trip_byte_stable(self, tmp_path):
        g = named_graph("gem")
        first = format_graph(g)
        again = format_graph(parse_graph(first))
        assert first == again

    def test_comments_ignored(self):
        g = parse_graph("c hello\np gmwis 1 0\nc mid\nn 1 9\n")
        assert g.n == 1 and g.weights == (9,)

    def test_self_loop_line_number(self):
        text = "p gmwis 3 1\nn 1 0\nn 2 0\nn 3 0\ne 3 3\n"
        with pytest.raises(ParseError, match="line 5: self-loop"):
            parse_graph(text)

    def test_unordered_edge_rejected(self):
        with pytest.raises(ParseError, match="u < v"):
            parse_graph("p gmwis 2 1\nn 1 0\nn 2 0\ne 2 1\n")

    def test_duplicate_edge_rejected(self):
        with pytest.raises(ParseError, match="duplicate edge"):
            parse_graph("p gmwis 2 2\nn 1 0\nn 2 0\ne 1 2\ne 1 2\n")

    def test_header_count_mismatch(self):
        with pytest.raises(ParseError, match="announces 2 edges"):
            parse_graph("p gmwis 2 2\nn 1 0\nn 2 0\ne 1 2\n")

    def test_missing_weight_lines(self):
        with pytest.raises(ParseError, match=r"missing weight lines for vertices \[2\]"):
            parse_graph("p gmwis 2 0\nn 1 4\n")

    def test_missing_header(self):
        with pytest.raises(ParseError, match="before header"):
            parse_graph("n 1 4\n")
        with pytest.raises(ParseError, match="missing 'p gmwis' header"):
            parse_graph("c just a comment\n")

    def test_unknown_record(self):
        with pytest.raises(ParseError, match="line 2: unknown record"):
            parse_graph("p gmwis 1 0\nx what\nn 1 1\n")


class TestPatternFiles:
    def test_parse_two_patterns(self):
        text = (
            "pattern tri 3\ne 1 2\ne 2 3\ne 1 3\n"
            "pattern H1 4\nprovenance user-supplied\ne 1 2\ne 2 3\ne 3 4\n"
        )
        pdefs = parse_patterns(text)
        assert [p.name for p in pdefs] == ["tri", "H1"]
        assert pdefs[0].provenance == "user-supplied"
        assert pdefs[1].n == 4

    def test_registration_fills_h_slot(self):
        cat = Catalog()
        (pdef,) = parse_patterns("pattern H1 3\ne 1 2\ne 2 3\n")
        cat.register(pdef)
        assert cat.get("H1").n == 3

    def test_bad_provenance(self):
        with pytest.raises(ParseError, match="provenance"):
            parse_patterns("pattern x 2\nprovenance mystery\ne 1 2\n")

    def test_edge_out_of_range(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_patterns("pattern x 2\ne 1 5\n")

    def test_empty_file(self):
        with pytest.raises(ParseError, match="no patterns"):
            parse_patterns("c nothing here\n")


class TestGeneration:
    def test_deterministic(self):
        spec = GenSpec(n=12, level=0, seed=99, density=0.35)
        a, b = generate(spec), generate(spec)
        assert a == b

    def test_respects_class_per_level(self):
        for level in range(6):
            g = generate(GenSpec(n=11, level=level, seed=5 + level))
            assert is_free(g, class_patterns(level))[0]

    def test_level_zero_passes_recognizer(self):
        g = generate(GenSpec(n=12, level=0, seed=1))
        assert recognize_input_class(g)[0]

    def test_unrestricted_level(self):
        g = generate(GenSpec(n=9, level=None, seed=3, density=0.5))
        assert g.n == 9

    def test_empty(self):
        g = generate(GenSpec(n=0, level=None, seed=0))
        assert g.n == 0

    def test_weights_in_default_range(self):
        g = generate(GenSpec(n=12, level=0, seed=17))
        assert all(0 <= w <= 100 for w in g.weights)

    def test_budget_exhaustion_is_explicit(self):
        # no prime graph on two vertices exists, so this can never succeed
        with pytest.raises(GenerationError, match="could not hit"):
            generate(GenSpec(n=2, level=None, seed=0, prime=True, repair_budget=5))

    def test_prime_connected_flags(self):
        from gmwis import is_prime

        g = generate(GenSpec(n=10, level=0, seed=2, prime=True, connected=True))
        assert is_prime(g) and g.is_connected()


class TestNamedGraphs:
    def test_unit_weights(self):
        g = named_graph("co-chair")
        assert g.weights == (1,) * 5

    def test_matches_catalog_edges(self):
        for name in ("claw", "diamond", "C5*", "H*"):
            g = named_graph(name)
            assert sorted(g.edges()) == sorted(
                (min(e), max(e)) for e in catalog(name).edges
            )
