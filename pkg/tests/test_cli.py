import json

import pytest

import lowdeg
from plugins.common import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, __version__, config, logger
from plugins.core import inner_product_bent, linear_fn

BENT4_TABLE = "0001000100011110"


@pytest.fixture(autouse=True)
def drop_log_sinks():
    yield
    logger.remove()


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = lowdeg.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv: str) -> dict:
    code, out, err = run(capsys, *argv, "--json")
    assert code == EXIT_OK, err
    return json.loads(out)


# ========== 基本命令 ==========

def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == EXIT_OK
    assert out.strip() == f"lowdeg {__version__}"


def test_gen_bent_prints_truth_table(capsys):
    code, out, _ = run(capsys, "gen", "bent", "--n", "4")
    assert code == EXIT_OK
    assert out == f"n=4\n{BENT4_TABLE}\n"


def test_gen_save_then_spectrum(capsys, tmp_path):
    path = str(tmp_path / "bent.tt")
    payload = run_json(capsys, "gen", "bent", "--n", "4", "--save", path)
    assert payload["saved"] == path and "table" not in payload
    spectrum = run_json(capsys, "spectrum", "--fn", path)
    assert spectrum["n"] == 4
    assert spectrum["parseval"] == pytest.approx(1.0)
    assert spectrum["max_abs"] == pytest.approx(0.25)
    assert spectrum["affine_distance"] == pytest.approx(3 / 8)
    assert [c["alpha"] for c in spectrum["coefficients"]] == list(range(16))


def test_spectrum_top_and_nonzero(capsys, write_function):
    path = write_function(linear_fn([1, 0, 1], b=1))
    payload = run_json(capsys, "spectrum", "--fn", path, "--nonzero")
    assert payload["coefficients"] == [{"alpha": 5, "bits": "101", "coeff": -1.0}]
    code, _, err = run(capsys, "spectrum", "--fn", path, "--top", "0")
    assert code == EXIT_INPUT
    assert "--top must be >= 1" in err


def test_gowers_exact_from_polynomial(capsys):
    payload = run_json(capsys, "gowers", "--poly", "x1*x2+x3", "--n", "4", "--d", "3")
    assert payload["raw"] == pytest.approx(1.0)
    assert payload["value"] == pytest.approx(1.0)


def test_gowers_profile(capsys, write_function):
    path = write_function(inner_product_bent(4))
    payload = run_json(capsys, "gowers", "--fn", path, "--profile", "2")
    assert [entry["d"] for entry in payload["profile"]] == [1, 2]
    assert payload["profile"][1]["norm"] == pytest.approx(0.5)


def test_rm2_distance_of_bent(capsys, write_function):
    payload = run_json(capsys, "rm2", "distance", "--fn", write_function(inner_product_bent(4)))
    assert payload["distance"] == 0.0
    assert payload["correlation"] == pytest.approx(1.0)


def test_decode_writes_polynomial(capsys, tmp_path):
    poly_path = str(tmp_path / "g.quad")
    payload = run_json(capsys, "decode", "--poly", "x1*x3+x2*x4+x1", "--n", "5",
                       "--poly-out", poly_path)
    assert payload["correlation"] == pytest.approx(1.0)
    assert (tmp_path / "g.quad").exists()


def test_hom_agree(capsys, write_text):
    path = write_text("phi.map", "0\n0\n0\n1\n")
    payload = run_json(capsys, "hom", "agree", "--domain", "2^2", "--codomain", "2^1", "--map", path)
    assert payload["agreement"] == pytest.approx(10 / 16)
    assert payload["homomorphism"] is False


def test_hom_correct_needs_psi_for_shift(capsys, write_text):
    path = write_text("phi.map", "0\n0\n0\n1\n")
    code, _, err = run(capsys, "hom", "correct", "--domain", "2^2", "--codomain", "2^1",
                       "--map", path, "--h", "1")
    assert code == EXIT_INPUT
    assert "--h needs --psi" in err


# ========== 退出码 ==========

def test_missing_file_is_input_error(capsys, tmp_path):
    code, out, err = run(capsys, "spectrum", "--fn", str(tmp_path / "missing.tt"))
    assert code == EXIT_INPUT
    assert out == ""
    assert "no such file" in err


def test_malformed_input_is_input_error(capsys, write_text):
    code, _, err = run(capsys, "spectrum", "--fn", write_text("bad.tt", "n=2\n0102\n"))
    assert code == EXIT_INPUT
    assert err.startswith("error:")


def test_poly_without_n(capsys):
    code, _, err = run(capsys, "gowers", "--poly", "x1*x2")
    assert code == EXIT_INPUT
    assert "--poly needs --n" in err


def test_usage_errors_exit_with_input_code(capsys):
    assert run(capsys, "no-such-command")[0] == EXIT_INPUT
    assert run(capsys, "test", "blr")[0] == EXIT_INPUT
    assert run(capsys, "--threads", "0", "status")[0] == EXIT_INPUT
    assert run(capsys, "--log-level", "LOUD", "status")[0] == EXIT_INPUT


def test_budget_exceeded(capsys, write_function):
    config.gowers_budget = 1000
    code, out, err = run(capsys, "gowers", "--fn", write_function(inner_product_bent(8)), "--d", "3")
    assert code == EXIT_BUDGET
    assert out == ""
    assert "gowers_budget exceeded" in err


def test_bound_too_large(capsys, write_function):
    config.bound_max_n = 4
    path = write_function(inner_product_bent(6))
    code, _, err = run(capsys, "test", "blr", "--fn", path, "--with-bound")
    assert code == EXIT_INPUT
    assert "exceeds bound_max_n=4" in err


# ========== 随机测试与运行记录 ==========

def test_blr_report_with_exact_and_bound(capsys, write_function):
    path = write_function(inner_product_bent(4))
    payload = run_json(capsys, "test", "blr", "--fn", path, "--seed", "3", "--trials", "20000",
                       "--exact", "--with-bound")
    assert payload["test"] == "blr"
    assert payload["trials"] == 20000 and payload["seed"] == 3
    assert payload["exact_acceptance"] == pytest.approx(0.53125)
    assert payload["theoretical_bound"] == pytest.approx(0.5 + 0.5)
    assert abs(payload["acceptance"] - 0.53125) <= 5 * payload["stderr"]


def test_hypergraph_file_input(capsys, write_function, write_text):
    fn = write_function(linear_fn([1, 1, 0, 1]))
    hg = write_text("k3.hg", "t=3\n1 2\n2 3\n1 3\n")
    payload = run_json(capsys, "test", "graph", "--fn", fn, "--hg", hg, "--trials", "500")
    assert payload["acceptance"] == 1.0
    assert payload["queries_per_trial"] == 6


def test_output_is_identical_across_thread_counts(capsys, write_function):
    config.block_size = 1000
    path = write_function(inner_product_bent(6))
    outputs = []
    for threads in ("1", "8"):
        code, out, _ = run(capsys, "--threads", threads, "test", "hypergraph-quad", "--fn", path,
                           "--complete", "4", "3", "--seed", "5", "--trials", "5000")
        assert code == EXIT_OK
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_run_record(capsys, write_function, tmp_path):
    path = write_function(inner_product_bent(4))
    record_path = tmp_path / "run.json"
    payload = run_json(capsys, "test", "akklr", "--fn", path, "--k", "2", "--seed", "9",
                       "--trials", "1000", "--out", str(record_path))
    record = json.loads(record_path.read_text(encoding="utf-8"))
    assert record["command"] == "test akklr"
    assert record["seed"] == 9
    assert record["version"] == __version__
    assert record["result"] == payload
    assert list(record["inputs"]) == [path]
    assert len(record["inputs"][path]) == 64
    assert record["wall_time"] >= 0
    assert "platform" in record["environment"]


# ========== 帮助与状态 ==========

def test_help_lists_commands(capsys):
    code, out, _ = run(capsys, "help")
    assert code == EXIT_OK
    for command in ("spectrum", "gowers", "test blr", "rm2 dicho", "decode", "hom correct", "status"):
        assert command in out


def test_help_for_one_action(capsys):
    code, out, _ = run(capsys, "help", "test", "blr")
    assert code == EXIT_OK
    assert "Usage: lowdeg test blr" in out
    assert "truth-table file" in out
    code, _, err = run(capsys, "help", "test", "nothing")
    assert code == EXIT_INPUT
    assert "Command not found: test nothing" in err


def test_disabled_feature(capsys, write_text):
    config.hom_enabled = False
    code, out, _ = run(capsys, "help")
    assert code == EXIT_OK
    assert "hom agree" not in out
    code, _, err = run(capsys, "help", "hom")
    assert code == EXIT_INPUT
    assert "Feature is currently disabled: hom" in err
    path = write_text("phi.map", "0\n1\n")
    code, _, err = run(capsys, "hom", "agree", "--domain", "2^1", "--codomain", "2^1", "--map", path)
    assert code == EXIT_INPUT
    assert "feature 'hom' is disabled" in err
    status = run_json(capsys, "status")
    assert status["feature.hom"] is False
    assert status["feature.gowers"] is True


def test_status_reports_budgets(capsys):
    config.threads = 2
    payload = run_json(capsys, "status")
    assert payload["version"] == __version__
    assert payload["commands"] >= 20
    assert payload["budget.max_exact_n"] == config.max_exact_n
    assert payload["budget.gowers_budget"] == config.gowers_budget
    assert payload["env.threads"] == 2


def test_gen_linear_rejects_bad_bits(capsys):
    code, _, err = run(capsys, "gen", "linear", "--a", "012")
    assert code == EXIT_INPUT
    assert "--a must be a non-empty 0/1 string, got '012'" in err
    assert run(capsys, "gen", "linear", "--a", "101", "--b", "1")[1] == "n=3\n10100101\n"
