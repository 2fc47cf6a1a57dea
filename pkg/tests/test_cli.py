import json

import pytest

from grassdense.cli import (
    EXIT_DENSE, EXIT_SPARSE, EXIT_UNKNOWN, EXIT_USAGE, RULE_LABELS, main,
)
from grassdense import rules


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    path = tmp_path / "verdicts.jsonl"
    monkeypatch.setenv("GRASSDENSE_CACHE", str(path))
    return path


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDecide:
    def test_dense_exit0(self, capsys):
        code, out, _ = run(capsys, "decide", "1,2,2;5")
        assert code == EXIT_DENSE
        assert out.startswith("DENSE")

    def test_sparse_exit1(self, capsys):
        code, out, _ = run(capsys, "decide", "1,1,2,2;3")
        assert code == EXIT_SPARSE
        assert out.startswith("SPARSE")

    def test_unknown_exit2(self, capsys):
        code, out, _ = run(capsys, "decide", "1,1,1,1,5;6",
                           "--budget", "1", "--oracle", "off")
        assert code == EXIT_UNKNOWN
        assert out.startswith("UNKNOWN")

    def test_exponent_syntax_accepted(self, capsys):
        code, out, _ = run(capsys, "decide", "(1^2,2;5)")
        assert code == EXIT_DENSE

    def test_bad_vector_exit3(self, capsys):
        code, _, err = run(capsys, "decide", "5;2")
        assert code == EXIT_USAGE
        assert "error" in err

    def test_json_record_shape(self, capsys):
        code, out, _ = run(capsys, "decide", "1,1,2,2;3", "--json")
        rec = json.loads(out)
        assert rec["status"] == "Sparse"
        assert rec["vector"] == {"dims": [1, 1, 2, 2], "n": 3}
        assert rec["method"] == "engine"
        assert rec["trivially_sparse"] is False
        assert rec["oracle"] is None
        assert rec["key"]["canonical"] == "(1^2,2^2;3)"
        assert rec["trace"], "certificate trace should be recorded"
        for step in rec["trace"]:
            assert set(step) == {"rule", "direction", "params", "from", "to"}

    def test_trace_uses_labels_not_ids(self, capsys):
        _, out, _ = run(capsys, "decide", "1,2,2;5", "--trace")
        assert any(label in out for label in RULE_LABELS.values())
        # raw wire ids stay out of human output
        assert rules.EXCESS_L1 not in out

    def test_oracle_force_attaches_report(self, capsys):
        code, out, _ = run(capsys, "decide", "1,2,2;5", "--json",
                           "--oracle", "force", "--samples", "2")
        rec = json.loads(out)
        assert code == EXIT_DENSE
        assert rec["method"] == "engine+oracle"
        assert rec["oracle"]["class"] == "CertifiedDense"
        assert rec["oracle"]["stab_dim"] == rec["oracle"]["expected"] == 8

    def test_oracle_auto_resolves_unknown(self, capsys):
        code, out, _ = run(capsys, "decide", "1,1,1,1,5;6",
                           "--budget", "1", "--json")
        rec = json.loads(out)
        assert code == EXIT_DENSE
        assert rec["method"] == "oracle"
        assert rec["oracle"]["class"] == "CertifiedDense"


class TestCache:
    def test_round_trip(self, capsys, isolated_cache):
        run(capsys, "decide", "1,2,2;5", "--json")
        assert isolated_cache.exists()
        code, out, _ = run(capsys, "decide", "2,2,1;5")  # same canonical form
        assert code == EXIT_DENSE
        assert "(cached)" in out
        # one appended record, keyed by canonical form + decision knobs
        lines = isolated_cache.read_text().splitlines()
        assert len(lines) == 1
        key = json.loads(lines[0])["key"]
        assert key == {"canonical": "(1,2^2;5)", "oracle": "auto", "seed": 0,
                       "samples": 3, "budget": 50000}

    def test_different_knobs_miss(self, capsys, isolated_cache):
        run(capsys, "decide", "1,2,2;5")
        _, out, _ = run(capsys, "decide", "1,2,2;5", "--seed", "1")
        assert "(cached)" not in out
        assert len(isolated_cache.read_text().splitlines()) == 2

    def test_no_cache_flag(self, capsys, isolated_cache):
        run(capsys, "decide", "1,2,2;5", "--no-cache")
        assert not isolated_cache.exists()

    def test_corrupt_line_skipped_with_warning(self, capsys, isolated_cache):
        run(capsys, "decide", "1,2,2;5")
        text = isolated_cache.read_text()
        isolated_cache.write_text("{not json\n" + text)
        code, out, err = run(capsys, "decide", "1,2,2;5")
        assert code == EXIT_DENSE
        assert "(cached)" in out
        assert "corrupt cache line 1" in err

    def test_cached_trace_replays(self, capsys):
        run(capsys, "decide", "1,2,2;5")
        _, out, _ = run(capsys, "decide", "1,2,2;5", "--trace")
        assert "(cached)" in out
        assert any(label in out for label in RULE_LABELS.values())


class TestOtherCommands:
    def test_verify_small_sweep(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-n", "4", "--samples", "1")
        assert code == EXIT_DENSE
        assert "0 unknown" in out
        assert "0 disagreements" in out

    def test_classify_text(self, capsys):
        code, out, _ = run(capsys, "classify", "--size", "2")
        assert code == EXIT_DENSE
        assert "(2^4;5)" in out

    def test_classify_json_matches_golden(self, capsys):
        code, out, _ = run(capsys, "classify", "--size", "2", "--json")
        with open("golden/size2_classification.json") as fh:
            assert json.loads(out) == json.load(fh)

    def test_enumerate(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--max-n", "3", "--max-len", "3",
                           "--max-size", "2")
        assert code == EXIT_DENSE
        assert len(out.splitlines()) == 12

    def test_enumerate_json(self, capsys):
        _, out, _ = run(capsys, "enumerate", "--max-n", "2", "--max-len", "2", "--json")
        assert json.loads(out) == [{"dims": [1], "n": 2}, {"dims": [1, 1], "n": 2}]

    def test_family(self, capsys):
        code, out, _ = run(capsys, "family", "fibonacci", "--base", "1,1,1;2", "-k", "2")
        assert code == EXIT_DENSE
        assert out.splitlines() == ["(1^3,2;3)", "(1^3,2,3;5)", "(1^3,2,3,5;8)"]

    def test_family_bad_base_exit3(self, capsys):
        code, _, err = run(capsys, "family", "repeat", "--base", "1,1;3", "-k", "2")
        assert code == EXIT_USAGE

    def test_missing_subcommand_exit3(self, capsys):
        assert run(capsys, )[0] == EXIT_USAGE

    def test_unknown_flag_exit3(self, capsys):
        assert run(capsys, "decide", "1;2", "--bogus")[0] == EXIT_USAGE


def test_console_script_installed():
    import shutil
    import subprocess
    exe = shutil.which("grassdense")
    assert exe is not None
    p = subprocess.run([exe, "decide", "1,1,2,2;3"], capture_output=True, text=True,
                       env={"PATH": "/usr/bin:/usr/local/bin",
                            "GRASSDENSE_CACHE": "/tmp/_gd_cli_test_cache.jsonl"})
    assert p.returncode == EXIT_SPARSE
