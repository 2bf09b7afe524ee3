import pytest

from gmwis.cli import main
from gmwis.toolkit import write_graph
from gmwis import build_sijk, default_catalog, named_graph


@pytest.fixture(autouse=True)
def _fresh_catalog():
    yield
    default_catalog().clear_user_patterns()


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def put(tmp_path, name, graph):
    path = tmp_path / name
    write_graph(graph, path)
    return str(path)


class TestSolveCommand:
    def test_unit_c5(self, capsys, tmp_path):
        path = put(tmp_path, "c5.g", named_graph("C5"))
        code, out, _ = run(capsys, "solve", path)
        assert code == 0
        assert out.splitlines()[0] == "weight 2"
        assert out.splitlines()[1].startswith("set ")

    def test_trace_lines(self, capsys, tmp_path):
        path = put(tmp_path, "c5.g", named_graph("C5"))
        code, out, _ = run(capsys, "solve", path, "--trace")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("trace 0 layer0 5")
        assert any(l.startswith("weight ") for l in lines)

    def test_require_class_rejection(self, capsys, tmp_path):
        path = put(tmp_path, "s122.g", build_sijk(1, 2, 2).graph())
        code, out, err = run(capsys, "solve", path, "--require-class")
        assert code == 3
        assert out.startswith("witness S1,2,2 ")
        assert "rejected" in err

    def test_strict_clean_instance(self, capsys, tmp_path):
        path = put(tmp_path, "c5.g", named_graph("C5"))
        code, out, err = run(capsys, "solve", path, "--strict")
        assert code == 0 and err == ""

    def test_repeat_runs_byte_identical(self, capsys, tmp_path):
        path = put(tmp_path, "g.g", named_graph("gem"))
        _, out1, _ = run(capsys, "solve", path, "--trace")
        _, out2, _ = run(capsys, "solve", path, "--trace")
        assert out1 == out2


class TestOracleCommand:
    def test_matches_solve(self, capsys, tmp_path):
        code1, out_gen, _ = run(
            capsys, "gen", "--level", "0", "--n", "12", "--seed", "8", "--out", "-"
        )
        assert code1 == 0
        path = tmp_path / "gen.g"
        path.write_text(out_gen, encoding="utf-8")
        _, out_solve, _ = run(capsys, "solve", str(path))
        _, out_oracle, _ = run(capsys, "oracle", str(path))
        assert out_solve.splitlines()[0] == out_oracle.splitlines()[0]

    def test_matches_solve_up_to_sixteen_vertices(self, capsys, tmp_path):
        for seed in (1, 2, 3):
            path = tmp_path / f"g{seed}.g"
            run(capsys, "gen", "--level", "0", "--n", "16", "--seed", str(seed), "--out", str(path))
            _, out_solve, _ = run(capsys, "solve", str(path))
            _, out_oracle, _ = run(capsys, "oracle", str(path))
            assert out_solve.splitlines()[0] == out_oracle.splitlines()[0]


class TestRecognizeCommand:
    def test_in_class(self, capsys, tmp_path):
        path = put(tmp_path, "c5.g", named_graph("C5"))
        code, out, _ = run(capsys, "recognize", path)
        assert code == 0 and out.strip() == "in-class"

    def test_witness_and_exit_one(self, capsys, tmp_path):
        path = put(tmp_path, "s122.g", build_sijk(1, 2, 2).graph())
        code, out, _ = run(capsys, "recognize", path)
        assert code == 1
        assert out.startswith("witness S1,2,2 ")
        ids = [int(t) for t in out.split()[2:]]
        assert len(ids) == 6 and all(1 <= i <= 6 for i in ids)


class TestDetectCommand:
    def test_found(self, capsys, tmp_path):
        path = put(tmp_path, "gem.g", named_graph("gem"))
        code, out, _ = run(capsys, "detect", "diamond", path)
        assert code == 0 and out.startswith("found ")

    def test_absent(self, capsys, tmp_path):
        path = put(tmp_path, "c5.g", named_graph("C5"))
        code, out, _ = run(capsys, "detect", "claw", path)
        assert code == 0 and out.strip() == "absent"

    def test_unknown_pattern_usage_error(self, capsys, tmp_path):
        path = put(tmp_path, "c5.g", named_graph("C5"))
        code, _, err = run(capsys, "detect", "whatzit", path)
        assert code == 2 and "unknown pattern" in err

    def test_user_pattern_file(self, capsys, tmp_path):
        pfile = tmp_path / "pats.txt"
        pfile.write_text("pattern H1 3\ne 1 2\ne 2 3\n", encoding="utf-8")
        path = put(tmp_path, "p4.g", named_graph("P4"))
        code, out, _ = run(capsys, "detect", "H1", path, "--patterns", str(pfile))
        assert code == 0 and out.startswith("found ")


class TestDecomposeCommand:
    def test_modular(self, capsys, tmp_path):
        path = put(tmp_path, "p4.g", named_graph("P4"))
        code, out, _ = run(capsys, "decompose", path, "--mode", "modular")
        assert code == 0 and out.startswith("prime [1 2 3 4]")

    def test_atoms(self, capsys, tmp_path):
        path = put(tmp_path, "p3.g", named_graph("P3"))
        code, out, _ = run(capsys, "decompose", path, "--mode", "atoms")
        assert code == 0 and "cut [1 2 3] [2]" in out

    def test_atoms_disconnected_is_input_error(self, capsys, tmp_path):
        from gmwis import build_graph

        path = put(tmp_path, "dd.g", build_graph(4, [(0, 1), (2, 3)]))
        code, _, err = run(capsys, "decompose", path, "--mode", "atoms")
        assert code == 2 and "connected" in err


class TestGenCommand:
    def test_writes_parseable_file(self, capsys, tmp_path):
        out_path = tmp_path / "x.g"
        code, _, _ = run(
            capsys, "gen", "--level", "0", "--n", "10", "--seed", "3",
            "--out", str(out_path),
        )
        assert code == 0
        from gmwis import read_graph, recognize_input_class

        g = read_graph(out_path)
        assert recognize_input_class(g)[0]

    def test_deterministic_bytes(self, capsys, tmp_path):
        a, b = tmp_path / "a.g", tmp_path / "b.g"
        for out_path in (a, b):
            run(capsys, "gen", "--level", "2", "--n", "11", "--seed", "5", "--out", str(out_path))
        assert a.read_bytes() == b.read_bytes()

    def test_impossible_spec_fails_with_one(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "gen", "--level", "any", "--n", "2", "--prime",
            "--budget", "3", "--out", str(tmp_path / "no.g"),
        )
        assert code == 1 and "could not hit" in err


class TestVerifyCommand:
    def test_report_and_figures(self, capsys, tmp_path):
        out_dir = tmp_path / "rep"
        code, out, err = run(
            capsys, "verify", "--suite", "thm5", "--n", "10", "--samples", "15",
            "--seed", "4", "--out", str(out_dir),
        )
        assert code == 0
        assert "suite thm5" in out and "violations 0" in out
        assert (out_dir / "thm5.report.txt").exists()
        assert (out_dir / "thm5.samples.png").exists()
        assert "runtime" in err

    def test_report_text_deterministic(self, capsys):
        _, out1, _ = run(capsys, "verify", "--suite", "lemma3", "--samples", "10", "--seed", "2")
        _, out2, _ = run(capsys, "verify", "--suite", "lemma3", "--samples", "10", "--seed", "2")
        assert out1 == out2

    def test_lemma1_skip(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "lemma1", "--samples", "5", "--seed", "0")
        assert code == 0 and "status skipped" in out


class TestErrorPaths:
    def test_malformed_file_is_exit_two(self, capsys, tmp_path):
        bad = tmp_path / "bad.g"
        bad.write_text("p gmwis 2 1\nn 1 0\nn 2 0\ne 2 2\n", encoding="utf-8")
        code, _, err = run(capsys, "solve", str(bad))
        assert code == 2 and "self-loop" in err

    def test_missing_file_is_exit_two(self, capsys):
        code, _, err = run(capsys, "solve", "/nonexistent/nope.g")
        assert code == 2

    def test_oracle_size_guard(self, capsys, tmp_path):
        from gmwis import build_graph

        path = put(tmp_path, "big.g", build_graph(30, []))
        code, _, err = run(capsys, "oracle", str(path))
        assert code == 2 and "enumeration limited" in err
