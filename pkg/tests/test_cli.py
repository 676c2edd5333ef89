import json

import pytest

from ksub.cli import main
from ksub.core import Instance
from ksub.io import instance_to_json, load_instance, save_instance
from ksub.oracles import TabularOracle


@pytest.fixture
def w_instance_path(tmp_path, oracle_w, inst_w):
    path = tmp_path / "w.json"
    save_instance(str(path), inst_w, oracle_w)
    return str(path)


@pytest.fixture
def supermodular_path(tmp_path, supermodular_tabular):
    inst = Instance(2, 1, {1: 1, 2: 1}, 2)
    path = tmp_path / "super.json"
    save_instance(str(path), inst, supermodular_tabular)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestSolve:
    def test_knapsack_with_opt(self, capsys, w_instance_path):
        code, out = run(capsys, "solve", w_instance_path, "--algorithm", "knapsack-greedy",
                        "--with-opt")
        assert code == 0
        report = json.loads(out)
        assert report["value"] == 3.0
        assert report["optimum"] == 3.0
        assert report["ratio"] == 1.0

    def test_exact(self, capsys, w_instance_path):
        code, out = run(capsys, "solve", w_instance_path, "--algorithm", "exact")
        assert code == 0
        assert json.loads(out)["value"] == 3.0

    def test_zero_oracle_ratio_undefined(self, capsys, tmp_path):
        inst = Instance(2, 2, {1: 1, 2: 1}, 2)
        zero = TabularOracle(2, 2, [0.0] * 9)
        path = tmp_path / "zero.json"
        save_instance(str(path), inst, zero)
        code, out = run(capsys, "solve", str(path), "--algorithm", "knapsack_greedy",
                        "--with-opt")
        assert code == 0
        report = json.loads(out)
        assert report["value"] == 0.0
        assert report["ratio"] is None

    def test_output_file(self, capsys, tmp_path, w_instance_path):
        out_path = tmp_path / "report.json"
        code, _ = run(capsys, "solve", w_instance_path, "--algorithm", "exact",
                      "--output", str(out_path))
        assert code == 0
        assert json.loads(out_path.read_text())["value"] == 3.0

    def test_malformed_json_exit_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"k": 2,\n  "items": [oops]\n}')
        code = main(["solve", str(bad), "--algorithm", "exact"])
        err = capsys.readouterr().err
        assert code == 2
        assert "line 2" in err

    def test_missing_file_exit_2(self, capsys, tmp_path):
        assert main(["solve", str(tmp_path / "nope.json"), "--algorithm", "exact"]) == 2

    def test_cap_exceeded_exit_3(self, capsys, w_instance_path, monkeypatch):
        monkeypatch.setenv("KSUB_EVAL_CAP", "4")
        code = main(["solve", w_instance_path, "--algorithm", "knapsack_greedy",
                     "--with-opt"])
        assert code == 3


class TestGenerate:
    def test_deterministic(self, tmp_path, capsys):
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        for p in (p1, p2):
            assert main(["generate", "--seed", "7", "--n", "5", "--k", "2",
                         "--output", str(p)]) == 0
        capsys.readouterr()
        assert p1.read_bytes() == p2.read_bytes()

    def test_generated_instance_validates(self, tmp_path, capsys):
        p = tmp_path / "g.json"
        assert main(["generate", "--seed", "1", "--n", "5", "--k", "2",
                     "--family", "separable_sum", "--output", str(p)]) == 0
        capsys.readouterr()
        assert main(["validate", str(p), "--mode", "monotone"]) == 0
        capsys.readouterr()
        assert main(["validate", str(p), "--mode", "orthant"]) == 0
        capsys.readouterr()

    def test_round_trip_matches_in_memory(self, tmp_path, capsys):
        from ksub.algorithms import knapsack_greedy
        from ksub.gen import generate_instance

        p = tmp_path / "rt.json"
        assert main(["generate", "--seed", "42", "--n", "6", "--k", "2",
                     "--output", str(p)]) == 0
        capsys.readouterr()
        inst, oracle = load_instance(str(p))
        mem_inst, mem_oracle = generate_instance(42, 6, 2)
        assert instance_to_json(inst, oracle) == instance_to_json(mem_inst, mem_oracle)
        r_file = knapsack_greedy(oracle, inst)
        r_mem = knapsack_greedy(mem_oracle, mem_inst)
        assert (r_file.solution, r_file.value, r_file.evaluations) == (
            r_mem.solution, r_mem.value, r_mem.evaluations)

    def test_bad_params_exit_2(self, capsys):
        assert main(["generate", "--seed", "1", "--n", "0", "--k", "2"]) == 2
        assert main(["generate", "--seed", "1", "--n", "3", "--k", "2",
                     "--budget-fraction", "1.5"]) == 2


class TestValidate:
    def test_coverage_passes(self, capsys, w_instance_path):
        code, out = run(capsys, "validate", w_instance_path, "--mode", "orthant")
        assert code == 0
        assert json.loads(out)["passed"] is True

    def test_supermodular_lattice_fails_with_witness(self, capsys, supermodular_path):
        code, out = run(capsys, "validate", supermodular_path, "--mode", "lattice")
        assert code == 1
        verdict = json.loads(out)
        w = verdict["witness"]
        assert w["lhs"] == 2.0 and w["rhs"] == 3.0

    def test_monotone_on_zero(self, capsys, tmp_path):
        inst = Instance(2, 2, {1: 1, 2: 1}, 2)
        zero = TabularOracle(2, 2, [0.0] * 9)
        path = tmp_path / "z.json"
        save_instance(str(path), inst, zero)
        assert main(["validate", str(path), "--mode", "monotone"]) == 0
        capsys.readouterr()

    def test_cap_exit_3(self, capsys, w_instance_path, monkeypatch):
        monkeypatch.setenv("KSUB_EVAL_CAP", "4")
        assert main(["validate", w_instance_path, "--mode", "lattice"]) == 3


class TestCheck:
    def test_wolsey(self, capsys):
        code, out = run(capsys, "check", "--checker", "wolsey", "--seed", "1",
                        "--trials", "200")
        assert code == 0
        assert json.loads(out)["passed"] == 200

    def test_lemma1_random(self, capsys):
        code, out = run(capsys, "check", "--checker", "lemma1", "--seed", "2",
                        "--trials", "100")
        assert code == 0

    def test_lemma1_on_supermodular_fixture(self, capsys, supermodular_path):
        code, out = run(capsys, "check", "--checker", "lemma1",
                        "--instance", supermodular_path)
        assert code == 1
        summary = json.loads(out)
        assert summary["failed"] > 0
        assert summary["first_failure"] is not None

    def test_eq2_small(self, capsys):
        code, out = run(capsys, "check", "--checker", "eq2", "--seed", "3",
                        "--trials", "10")
        assert code == 0
        assert json.loads(out)["passed"] == 10

    def test_bad_trials(self, capsys):
        assert main(["check", "--checker", "wolsey", "--trials", "0"]) == 2


class TestBench:
    def test_deterministic_csv(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["bench", "--seed", "5", "--count", "4", "--n-range", "4:5",
                "--k-range", "2:2"]
        assert main(argv + ["--output", str(a)]) == 0
        capsys.readouterr()
        assert main(argv + ["--output", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_row_count_and_columns(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        assert main(["bench", "--seed", "1", "--count", "3", "--n-range", "4:4",
                     "--k-range", "2:2", "--output", str(out)]) == 0
        capsys.readouterr()
        lines = out.read_text().splitlines()
        assert lines[0].startswith("instance,algorithm,n,k,budget,value,optimum,ratio,")
        data = [l for l in lines[1:] if not l.startswith("#")]
        assert len(data) == 3
        assert lines[-1].startswith("# summary:")

    def test_bad_range(self, capsys):
        assert main(["bench", "--seed", "1", "--count", "1", "--n-range", "8:4"]) == 2
