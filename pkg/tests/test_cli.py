import io
import json

import pytest

from optistop.cli import main
from optistop.distributions import Uniform
from optistop.noisy_selection import NoisyModel
from optistop.planner import CostModel, optimal_sample_size
from optistop.sequential_advisor import SessionState, advise, record_observation


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPlan:
    def test_pick_one_verdict(self, capsys):
        code, out, _ = run(
            capsys, "plan", "--mu", "0", "--a", "1", "--b", "0", "--c", "0.6",
            "--n-max", "30",
        )
        assert code == 0
        body = json.loads(out)
        assert body["n_star"] == 1
        assert body["rationale"] == "PickOneNoMeasure"

    def test_byte_identical_to_library(self, capsys):
        code, out, _ = run(
            capsys, "plan", "--dist", "uniform01", "--c", "0.06", "--n-max", "40"
        )
        assert code == 0
        direct = optimal_sample_size(Uniform(0, 1), CostModel(0.06), n_max=40)
        assert out == direct.to_json() + "\n"

    def test_divergent_exit_code(self, capsys):
        code, out, err = run(
            capsys, "plan", "--dist", '{"family":"pareto","alpha":0.5}', "--c", "1",
            "--n-max", "10",
        )
        assert code == 4
        assert out == ""
        assert "divergent" in err

    def test_validation_exit_code(self, capsys):
        code, _, err = run(
            capsys, "plan", "--mu", "0", "--a", "-1", "--b", "0", "--c", "0.1"
        )
        assert code == 3
        assert "worth_spread" in err

    def test_usage_error_exit_code(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["plan", "--c", "0.1"])  # neither --dist nor model flags
        assert exc.value.code == 2


class TestRankits:
    def test_csv(self, capsys):
        code, out, _ = run(
            capsys, "rankits", "--dist", "uniform01", "--max-n", "4", "--csv"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n,K_n,k_n"
        assert lines[1].startswith("1,0.5,")
        assert lines[4] == "4,0.8,0.05"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "rankits", "--dist", "std_normal", "--max-n", "3")
        body = json.loads(out)
        assert code == 0
        assert body["rows"][2][0] == 3
        assert body["rows"][2][1] == pytest.approx(0.8462843753216344, abs=1e-9)

    def test_unknown_dist(self, capsys):
        code, _, err = run(capsys, "rankits", "--dist", "cauchy", "--max-n", "3")
        assert code == 3
        assert "cauchy" in err


class TestAdvise:
    def _run_with_stdin(self, capsys, monkeypatch, text, *argv):
        monkeypatch.setattr("sys.stdin", io.StringIO(text))
        return run(capsys, *argv)

    def test_loop_matches_library(self, capsys, monkeypatch):
        values = [12.0, 15.0, 11.0]
        code, out, _ = self._run_with_stdin(
            capsys,
            monkeypatch,
            "\n".join(str(v) for v in values) + "\n",
            "advise", "--mu", "10", "--a", "3", "--b", "4", "--c", "0.1",
        )
        assert code == 0
        lines = [json.loads(line) for line in out.splitlines()]
        assert len(lines) == 3
        state = SessionState(
            model=NoisyModel(worth_mean=10, worth_spread=3, error_spread=4),
            cost=CostModel(0.1),
        )
        for value, got in zip(values, lines):
            state = record_observation(state, value)
            assert got == advise(state).to_dict()
        assert all(line["recommendation"] == "sample_more" for line in lines)

    def test_terminates_on_stop(self, capsys, monkeypatch):
        code, out, _ = self._run_with_stdin(
            capsys,
            monkeypatch,
            "40\n41\n42\n",
            "advise", "--mu", "10", "--a", "3", "--b", "4", "--c", "0.1",
        )
        assert code == 0
        lines = [json.loads(line) for line in out.splitlines()]
        assert len(lines) == 1  # first measurement is so good the loop stops
        assert lines[0]["recommendation"] == "stop"

    def test_skips_garbage_and_quits(self, capsys, monkeypatch):
        code, out, err = self._run_with_stdin(
            capsys,
            monkeypatch,
            "not-a-number\n12\nquit\n",
            "advise", "--mu", "10", "--a", "3", "--b", "4", "--c", "0.1",
        )
        assert code == 0
        assert len(out.splitlines()) == 1
        assert "not a number" in err

    def test_curve_table(self, capsys):
        code, out, _ = run(
            capsys, "advise", "--mu", "0", "--a", "1", "--b", "0", "--c", "0.1",
            "--curve",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "z,v_plus"
        table = {row.split(",")[0]: float(row.split(",")[1]) for row in lines[1:]}
        assert table["0"] == pytest.approx(0.3989422804, abs=1e-9)
        assert table["-4"] == pytest.approx(4.0, abs=0.01)
        values = [float(row.split(",")[1]) for row in lines[1:]]
        assert values == sorted(values, reverse=True)


class TestSimulate:
    def test_selection(self, capsys):
        code, out, _ = run(
            capsys, "simulate", "selection", "--a", "3", "--b", "4", "--n", "5",
            "--trials", "10000", "--seed", "42",
        )
        assert code == 0
        body = json.loads(out)
        assert body["trials"] == 10000 and body["seed"] == 42

    def test_selection_million_trials_hits_target(self, capsys):
        code, out, _ = run(
            capsys, "simulate", "selection", "--a", "3", "--b", "4", "--n", "10",
            "--trials", "1000000", "--seed", "42", "--workers", "4",
        )
        assert code == 0
        body = json.loads(out)
        assert abs(body["mean"] - 2.7697549155) < 3 * body["std_error"]

    def test_expected_max(self, capsys):
        code, out, _ = run(
            capsys, "simulate", "expected-max", "--dist", "uniform01", "--n", "4",
            "--trials", "50000", "--seed", "7",
        )
        body = json.loads(out)
        assert abs(body["mean"] - 0.8) < 3 * body["std_error"]

    def test_policy_lookahead(self, capsys):
        code, out, _ = run(
            capsys, "simulate", "policy", "--mu", "1", "--a", "1", "--b", "0",
            "--c", "5", "--lookahead-max", "10", "--trials", "20000", "--seed", "3",
        )
        body = json.loads(out)
        assert abs(body["mean"] - 1.0) < 3 * body["std_error"]

    def test_divergent_warning_flags(self, capsys):
        code, out, _ = run(
            capsys, "simulate", "expected-max", "--dist",
            '{"family":"pareto","alpha":0.5}', "--n", "3",
            "--trials", "10000", "--seed", "1",
        )
        assert code == 0
        assert "divergent_mean" in json.loads(out)["flags"]


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "optistop", "rankits", "--dist", "uniform01",
         "--max-n", "2", "--csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1].startswith("2,")
