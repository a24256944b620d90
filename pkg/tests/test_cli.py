"""End-to-end tests for the command line interface."""

import json
import subprocess
import sys

import pytest

from flowcomm.cli import run
from helpers import string_leaves_only

A_JSON = "[[2,1],[1,1]]"
A_SEMI = "2,1;1,1"
F7 = "[[0,1],[-1,7]]"
F47 = "[[0,1],[-1,47]]"
GENUS2 = "[[7,12],[4,7]]"
# trace 2 above a semiprime of two nine-digit-plus primes: out of reach
# for the default trial division, so a starved rho budget must exit 3
HARD_TRACE = str(10000019 * 10000079 + 2)


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestParsing:
    def test_matrix_syntaxes_agree(self, capsys):
        code_a, doc_a = run_json(capsys, ["canon", A_JSON])
        code_b, doc_b = run_json(capsys, ["canon", A_SEMI])
        assert code_a == code_b == 0
        assert doc_a == doc_b

    def test_malformed_matrix(self, capsys):
        for bad in ("[[2,1],[1]]", "2,1;1", "2,1,1,1", "[[2,1],[1,x]]", "[2,1,1,1]"):
            assert run(["canon", bad]) == 2
            err = capsys.readouterr().err
            assert "error:" in err

    def test_non_hyperbolic_input(self, capsys):
        assert run(["canon", "[[1,1],[0,1]]"]) == 2
        assert run(["equiv", A_JSON, "[[1,0],[0,1]]"]) == 2
        capsys.readouterr()

    def test_unknown_verb_and_flag(self, capsys):
        assert run(["frobnicate", A_JSON]) == 2
        assert run(["canon", A_JSON, "--frobnicate"]) == 2
        capsys.readouterr()

    def test_help_exits_zero(self, capsys):
        assert run(["--help"]) == 0
        assert "flowcomm" in capsys.readouterr().out


class TestEquiv:
    def test_positive(self, capsys):
        code, doc = run_json(capsys, ["equiv", GENUS2, "[[11,8],[4,3]]"])
        assert code == 0
        assert doc["equivalent"] is True
        assert doc["conjugator"] is not None
        assert doc["canonical_a"] == doc["canonical_b"] == [["2", "1"], ["2", "1"]]

    def test_negative(self, capsys):
        code, doc = run_json(capsys, ["equiv", "[[3,1],[2,1]]", "[[3,2],[1,1]]"])
        assert code == 1
        assert doc["equivalent"] is False
        assert doc["conjugator"] is None

    def test_quiet(self, capsys):
        assert run(["equiv", "--quiet", GENUS2, "[[11,8],[4,3]]"]) == 0
        assert capsys.readouterr().out == ""


class TestCanon:
    def test_word(self, capsys):
        code, doc = run_json(capsys, ["canon", GENUS2])
        assert code == 0
        assert doc["canonical_word"] == [["2", "1"], ["2", "1"]]
        assert doc["display"] == "R^2 L^1 R^2 L^1"


class TestCommensurable:
    def test_positive(self, capsys):
        code, doc = run_json(capsys, ["commensurable", A_JSON, F7])
        assert code == 0
        assert doc["commensurable"] is True
        assert doc["minimal_exponents"] == ["2", "1"]
        assert doc["squarefree_a"] == doc["squarefree_b"] == "5"
        assert doc["certificate"]["intertwiner_det"] == "3"

    def test_negative(self, capsys):
        code, doc = run_json(capsys, ["commensurable", A_JSON, GENUS2])
        assert code == 1
        assert doc["commensurable"] is False
        assert doc["certificate"] is None

    def test_negative_trace_input(self, capsys):
        code, doc = run_json(capsys, ["commensurable", "[[-2,-1],[-1,-1]]", F7])
        assert code == 0
        assert doc["squared_a"] is True

    def test_step_limit_exits_three(self, capsys):
        assert run(["commensurable", A_JSON, F47, "--max-steps", "2"]) == 3
        assert "limit:" in capsys.readouterr().err

    def test_factor_limit_exits_three(self, capsys):
        argv = [
            "commensurable",
            A_JSON,
            f"[[0,1],[-1,{HARD_TRACE}]]",
            "--factor-effort",
            "1",
        ]
        assert run(argv) == 3
        assert "limit:" in capsys.readouterr().err


class TestCoverAndVerify:
    def test_round_trip(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        assert run(["cover", A_JSON, F7, "-o", str(path)]) == 0
        assert run(["verify", str(path)]) == 0
        assert capsys.readouterr().out.strip().endswith("verified")

    def test_emitted_document_is_decimal_strings(self, capsys):
        code = run(["cover", A_JSON, F7])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert string_leaves_only(doc)

    def test_negative_pair_exits_one(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        assert run(["cover", A_JSON, GENUS2, "-o", str(path)]) == 1
        assert not path.exists()
        assert "not commensurable" in capsys.readouterr().err

    def test_tampered_document_rejected(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        assert run(["cover", A_JSON, F7, "-o", str(path)]) == 0
        doc = json.loads(path.read_text())
        doc["intertwiner_det"] = "4"
        path.write_text(json.dumps(doc))
        assert run(["verify", str(path)]) == 1
        out = capsys.readouterr().out
        assert "rejected: intertwiner_det_matches" in out

    def test_malformed_document_exits_two(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        path.write_text("{broken")
        assert run(["verify", str(path)]) == 2
        path.write_text('{"format_version": "1", "kind": "mystery"}')
        assert run(["verify", str(path)]) == 2
        capsys.readouterr()

    def test_missing_file_exits_two(self, capsys, tmp_path):
        assert run(["verify", str(tmp_path / "absent.json")]) == 2
        capsys.readouterr()

    def test_byte_identical_reruns(self, capsys):
        assert run(["cover", A_JSON, F7]) == 0
        first = capsys.readouterr().out
        assert run(["cover", A_JSON, F7]) == 0
        assert capsys.readouterr().out == first


class TestChain:
    def test_surface_to_orbifold(self, capsys, tmp_path):
        path = tmp_path / "chain.json"
        assert run(["chain", "surface:g=2", "orbifold:2,3,18", "-o", str(path)]) == 0
        assert run(["verify", str(path)]) == 0
        capsys.readouterr()

    def test_model_syntaxes(self, capsys, tmp_path):
        path = tmp_path / "chain.json"
        for model_a in ("surface:g=3", "surface:3"):
            assert run(["chain", model_a, f"suspension:{A_JSON}", "-o", str(path)]) == 0
            assert run(["verify", str(path)]) == 0
        capsys.readouterr()

    def test_suspension_pair(self, capsys):
        assert run(["chain", f"suspension:{A_SEMI}", f"suspension:{F7}"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["kind"] == "chain-certificate"
        assert len(doc["links"]) == 1

    def test_malformed_model(self, capsys):
        for bad in ("surface:g=1", "orbifold:2,4,9", "orbifold:2,3", "disk:3", "surface:"):
            assert run(["chain", bad, "orbifold:2,3,9"]) == 2
        capsys.readouterr()

    def test_tampered_chain_rejected(self, capsys, tmp_path):
        path = tmp_path / "chain.json"
        assert run(["chain", "surface:g=2", "orbifold:2,3,18", "-o", str(path)]) == 0
        doc = json.loads(path.read_text())
        doc["links"][0]["evidence"]["tag"] = "BIRKHOFF_SECTION_23N"
        path.write_text(json.dumps(doc))
        assert run(["verify", str(path)]) == 1
        assert "almost_equivalence_whitelist" in capsys.readouterr().out

    def test_byte_identical_reruns(self, capsys):
        assert run(["chain", "surface:g=2", "surface:g=3"]) == 0
        first = capsys.readouterr().out
        assert run(["chain", "surface:g=2", "surface:g=3"]) == 0
        assert capsys.readouterr().out == first


class TestTraceSeq:
    def test_values(self, capsys):
        assert run(["trace-seq", A_JSON, "5"]) == 0
        out = capsys.readouterr().out
        assert out.split() == ["3", "7", "18", "47", "123"]

    def test_bad_count(self, capsys):
        assert run(["trace-seq", A_JSON, "0"]) == 2
        capsys.readouterr()


class TestConsoleScript:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "flowcomm.cli", "canon", A_JSON],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "canonical_word" in proc.stdout

    def test_installed_script(self):
        from shutil import which

        script = which("flowcomm")
        if script is None:
            pytest.skip("console script not on PATH")
        proc = subprocess.run(
            [script, "equiv", A_JSON, GENUS2], capture_output=True, text=True
        )
        assert proc.returncode == 1
