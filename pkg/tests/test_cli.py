"""Command-line behavior: golden JSON, human output, exit codes."""

from __future__ import annotations

import json

import pytest

from tildeiso.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--json", *argv)
    assert err == ""
    return code, json.loads(out)


class TestDist:
    def test_basic(self, capsys):
        code, payload = run_json(capsys, "dist", "110111", "101101")
        assert code == 0
        assert payload == {"hamming": 3, "tilde": 2, "u": "110111", "v": "101101"}

    def test_show_transforms(self, capsys):
        code, payload = run_json(capsys, "dist", "101", "010", "--show-transforms")
        assert code == 0
        assert payload["tilde"] == 2
        assert payload["transformations"] == ["R1,S2", "S1,R3", "S2,R1", "R3,S1"]

    def test_zero_distance(self, capsys):
        code, payload = run_json(capsys, "dist", "1", "1")
        assert code == 0
        assert payload["tilde"] == 0

    def test_human_output(self, capsys):
        code, out, err = run(capsys, "dist", "110111", "101101")
        assert code == 0
        assert "tilde distance:   2" in out
        assert "hamming distance: 3" in out

    def test_unequal_lengths_usage_error(self, capsys):
        code, out, err = run(capsys, "dist", "10", "1")
        assert code == 1
        assert "equal length" in err

    def test_invalid_word(self, capsys):
        code, out, err = run(capsys, "dist", "10", "1x")
        assert code == 2
        assert "invalid word" in err


class TestTransforms:
    def test_golden(self, capsys):
        code, payload = run_json(capsys, "transforms", "110111", "101101")
        assert code == 0
        assert payload == {
            "count": 2,
            "distance": 2,
            "transformations": ["S2,R5", "R5,S2"],
            "truncated": False,
            "u": "110111",
            "v": "101101",
        }


class TestOverlaps:
    def test_golden_1010(self, capsys):
        code, payload = run_json(capsys, "overlaps", "1010")
        assert code == 0
        assert payload == [
            {
                "condition_tilde": None,
                "geometry": None,
                "hamming_q": 1,
                "length": 1,
                "q": 1,
                "shift": 3,
                "transformations": ["R1"],
            },
            {
                "condition_tilde": None,
                "geometry": None,
                "hamming_q": 0,
                "length": 2,
                "q": 0,
                "shift": 2,
                "transformations": [""],
            },
            {
                "condition_tilde": False,
                "geometry": "adjacent",
                "hamming_q": 3,
                "length": 3,
                "q": 2,
                "shift": 1,
                "transformations": ["R1,S2", "S1,R3", "S2,R1", "R3,S1"],
            },
        ]

    def test_q_filter(self, capsys):
        code, payload = run_json(capsys, "overlaps", "1010", "--q", "2")
        assert code == 0
        assert [rec["length"] for rec in payload] == [3]


class TestClassify:
    def test_golden_1010(self, capsys):
        code, payload = run_json(capsys, "classify", "1010")
        assert code == 0
        assert payload == {
            "anomalies": [],
            "cases": [
                {
                    "case": "C3",
                    "confirmed": True,
                    "length": 3,
                    "shift": 1,
                    "symmetry": "row-exchange",
                }
            ],
            "ham_isometric": True,
            "tilde_isometric": False,
            "witness": {
                "construction": "alpha_beta_swap",
                "u": "10110",
                "v": "11000",
            },
            "word": "1010",
        }

    def test_isometric_word(self, capsys):
        code, payload = run_json(capsys, "classify", "111000")
        assert code == 0
        assert payload["tilde_isometric"] is True
        assert payload["ham_isometric"] is False
        assert payload["cases"] == []
        assert payload["witness"] is None

    def test_single_letter(self, capsys):
        code, payload = run_json(capsys, "classify", "0")
        assert code == 0
        assert payload["tilde_isometric"] is True


class TestWitnessVerify:
    def test_witness_golden(self, capsys):
        code, payload = run_json(capsys, "witness", "1100")
        assert code == 0
        assert payload == {
            "anomalies": [],
            "tilde_isometric": False,
            "verified": "confirmed",
            "witness": {
                "construction": "alpha_psi",
                "u": "110100",
                "v": "101010",
            },
            "word": "1100",
        }

    def test_witness_none_for_isometric(self, capsys):
        code, payload = run_json(capsys, "witness", "111000")
        assert code == 0
        assert payload["witness"] is None
        assert payload["verified"] is None

    def test_verify_confirmed(self, capsys):
        code, payload = run_json(capsys, "verify", "1010", "11000", "10110")
        assert code == 0
        assert payload["status"] == "confirmed"
        assert payload["certificate"] is None

    def test_verify_refuted_with_certificate(self, capsys):
        code, payload = run_json(
            capsys, "verify", "100011", "100101011", "100010011"
        )
        assert code == 0
        assert payload["status"] == "refuted"
        assert payload["certificate"] == "R4,S5"

    def test_verify_unequal_lengths(self, capsys):
        code, out, err = run(capsys, "verify", "10", "110", "1010")
        assert code == 1


class TestEnumerate:
    def test_golden_len3(self, capsys):
        code, payload = run_json(capsys, "enumerate", "--len", "3")
        assert code == 0
        assert payload["counts"] == {"isometric": 6, "non-isometric": 2}
        verdicts = {w["word"]: w["tilde_isometric"] for w in payload["words"]}
        assert verdicts["010"] is False
        assert verdicts["101"] is False
        assert verdicts["111"] is True

    def test_filter_non_isometric(self, capsys):
        code, payload = run_json(
            capsys, "enumerate", "--len", "4", "--filter", "non-isometric"
        )
        assert code == 0
        found = {w["word"] for w in payload["words"]}
        assert {"1010", "0101", "1100"} <= found
        assert all(not w["tilde_isometric"] for w in payload["words"])

    def test_len1_both_isometric(self, capsys):
        code, payload = run_json(capsys, "enumerate", "--len", "1")
        assert code == 0
        assert payload["counts"] == {"isometric": 2, "non-isometric": 0}

    def test_canonical_representatives(self, capsys):
        code, payload = run_json(capsys, "enumerate", "--len", "3", "--canonical")
        assert code == 0
        full = run_json(capsys, "enumerate", "--len", "3")[1]
        assert len(payload["words"]) < len(full["words"])
        # orbit heads are lexicographically least, so 101's orbit shows as 010
        found = {w["word"] for w in payload["words"]}
        assert "010" in found
        assert "101" not in found

    def test_out_of_range_len(self, capsys):
        assert run(capsys, "enumerate", "--len", "0")[0] == 1
        assert run(capsys, "enumerate", "--len", "17")[0] == 1

    def test_complement_invariance_of_counts(self, capsys):
        base = run_json(capsys, "enumerate", "--len", "5")[1]
        verdicts = {w["word"]: w["tilde_isometric"] for w in base["words"]}
        for text, verdict in verdicts.items():
            comp = text.translate(str.maketrans("01", "10"))
            assert verdicts[comp] == verdict


class TestOracleCmd:
    def test_golden_collecting(self, capsys):
        code, payload = run_json(capsys, "oracle", "1010", "--max-len", "5")
        assert code == 0
        assert payload == {
            "max_len": 5,
            "methods": [[4, "bfs"], [5, "bfs"]],
            "minimal_pairs": [
                ["01100", "10010"],
                ["10010", "11100"],
                ["10110", "11000"],
                ["10110", "11001"],
            ],
            "verdict": "violation",
            "violation": {
                "full_distance": 2,
                "m": 5,
                "restricted_distance": 3,
                "u": "01100",
                "v": "10010",
            },
            "word": "1010",
        }

    def test_first_violation_skips_pair_collection(self, capsys):
        code, payload = run_json(
            capsys, "oracle", "1010", "--max-len", "5", "--first-violation"
        )
        assert code == 0
        assert payload["minimal_pairs"] is None
        assert payload["violation"]["m"] == 5

    def test_clean_verdict(self, capsys):
        code, payload = run_json(capsys, "oracle", "111000", "--max-len", "10")
        assert code == 0
        assert payload["verdict"] == "no-violation-up-to-bound"
        assert payload["violation"] is None

    def test_bound_over_cap_is_usage_error(self, capsys):
        code, out, err = run(capsys, "oracle", "1010101010101", "--max-len", "33")
        assert code == 1
        assert "oracle cap" in err

    def test_threads_byte_identical(self, capsys):
        one = run(capsys, "--json", "oracle", "1010", "--max-len", "5")
        four = run(capsys, "--json", "--threads", "4", "oracle", "1010", "--max-len", "5")
        assert one == four


class TestCubeCmd:
    def test_edgelist_stdout(self, capsys):
        code, out, err = run(capsys, "cube", "--len", "2")
        assert code == 0
        assert out == "00 01\n00 10\n01 10\n01 11\n10 11\n"

    def test_dot_statements(self, capsys):
        code, out, err = run(capsys, "cube", "--len", "2", "--format", "dot")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "graph cube {"
        assert sum(1 for l in lines if "--" in l) == 5

    def test_json_with_avoid(self, capsys):
        code, out, err = run(
            capsys, "cube", "--len", "3", "--avoid", "11", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["nodes"] == ["000", "001", "010", "100", "101"]

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "g.edges"
        code, out, err = run(capsys, "cube", "--len", "1", "--out", str(target))
        assert code == 0
        assert target.read_bytes() == b"0 1\n"

    def test_over_cap_usage_error(self, capsys):
        code, out, err = run(capsys, "cube", "--len", "23")
        assert code == 1


class TestCompare:
    @pytest.mark.parametrize(
        "word,tilde,ham",
        [("111000", True, False), ("1010", False, True), ("11", True, True)],
    )
    def test_table(self, capsys, word, tilde, ham):
        code, payload = run_json(capsys, "compare", word)
        assert code == 0
        assert payload["tilde_isometric"] is tilde
        assert payload["ham_isometric"] is ham
        assert payload["agreement"] is (tilde == ham)


class TestGlobalBehavior:
    def test_no_subcommand_is_usage_error(self, capsys):
        code, out, err = run(capsys)
        assert code == 1

    def test_unknown_subcommand_is_usage_error(self, capsys):
        code, out, err = run(capsys, "nosuch")
        assert code == 1

    def test_quiet_suppresses_stdout(self, capsys):
        code, out, err = run(capsys, "--quiet", "classify", "1010")
        assert code == 0
        assert out == ""
        code, out, err = run(capsys, "--quiet", "--json", "dist", "1", "1")
        assert code == 0
        assert out == ""

    def test_json_deterministic_repeat(self, capsys):
        first = run(capsys, "--json", "classify", "10010110")
        second = run(capsys, "--json", "classify", "10010110")
        assert first == second

    def test_global_flags_parse_after_subcommand(self, capsys):
        code, out, err = run(capsys, "dist", "10", "01", "--json")
        assert code == 0
        assert json.loads(out) == {"hamming": 2, "tilde": 1, "u": "10", "v": "01"}
        # trailing flags extend leading ones instead of resetting them
        code, out, err = run(capsys, "--json", "classify", "0", "--quiet")
        assert code == 0
        assert out == ""
        code, out, err = run(capsys, "oracle", "1010", "--max-len", "5", "--threads", "2")
        assert code == 0
        assert "violation" in out
