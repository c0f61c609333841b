import json

import pytest

from slicemoments.cli import dispatch, load_dataset
from slicemoments.errors import InvalidParameterError


class TestLoadDataset:
    def test_header_skip(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("x\n1\n2\n3\n")
        ds = load_dataset(str(path), column=0)
        assert list(ds.values) == [1.0, 2.0, 3.0]
        assert ds.skipped == 1

    def test_column_select(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("1,9\n2,8\n")
        assert list(load_dataset(str(path), column=1).values) == [9.0, 8.0]

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(InvalidParameterError):
            load_dataset(str(path))

    def test_missing_file(self):
        with pytest.raises(InvalidParameterError):
            load_dataset("/does/not/exist.csv")

    def test_column_out_of_range(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("1,2\n")
        with pytest.raises(InvalidParameterError):
            load_dataset(str(path), column=5)


def _json(argv):
    status, text = dispatch(argv)
    assert status == 0, text
    return json.loads(text)


class TestDispatch:
    def test_population_normal_mad(self):
        env = _json(
            ["population", "--dist", "normal:0,1", "--system", "mad",
             "--orders", "4", "--deterministic"]
        )
        assert env["command"] == "population"
        assert env["results"]["gamma4"] == pytest.approx(-0.823, abs=1e-3)
        assert env["discrepancies"] == []
        assert "timestamp" not in env["metadata"]

    def test_population_cauchy_mad_errors(self):
        status, text = dispatch(
            ["population", "--dist", "cauchy:0,1", "--system", "mad", "--orders", "4"]
        )
        assert status == 1
        assert "mean" in text

    def test_population_discrepancy_surfaced(self):
        env = _json(["population", "--dist", "exp:1", "--system", "mad", "--orders", "2"])
        assert len(env["discrepancies"]) == 1
        assert "delta2" in env["discrepancies"][0]["quantity"]
        env = _json(["population", "--dist", "uniform:0,1", "--system", "medad",
                     "--orders", "4"])
        assert any("phi4" in d["quantity"] for d in env["discrepancies"])

    def test_moments_cross_module(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("1\n2\n3\n4\n5\n")
        env = _json(["moments", "--input", str(path),
                     "--systems", "mad,medad,l,classical", "--orders", "4"])
        assert env["results"]["mad"]["delta2"] == pytest.approx(1.2)
        assert env["results"]["medad"]["phi2"] == pytest.approx(1.0)
        assert env["results"]["l"]["lambda2"] == pytest.approx(1.0)
        assert env["results"]["classical"]["mean"] == pytest.approx(3.0)

    def test_usage_error(self):
        status, text = dispatch(["population", "--dist", "normal:0,1"])
        assert status == 2
        assert "usage" in text.lower()

    def test_deterministic_repeat_identical(self, tmp_path):
        argv = ["simulate", "--dist", "cauchy:0,1", "--n", "25", "--reps", "20",
                "--seed", "4", "--estimators", "medad,quantile", "--deterministic"]
        assert dispatch(argv) == dispatch(argv)

    def test_simulate_csv_and_config_file(self, tmp_path):
        cfg = tmp_path / "sim.cfg"
        cfg.write_text("dist=cauchy:0,1\nn=25\nreps=10\nseed=3\nestimators=medad\n")
        out = tmp_path / "r.csv"
        status, text = dispatch(["simulate", "--config", str(cfg),
                                 "--format", "csv", "--out", str(out)])
        assert status == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "estimator,parameter,n,bias,mse,B,seed"
        assert len(lines) == 3  # header + theta + s

    def test_sampdist_csv(self, tmp_path):
        out = tmp_path / "t.csv"
        status, _ = dispatch(["sampdist", "--dist", "t:3", "--n", "30", "--reps", "5",
                              "--seed", "1", "--format", "csv", "--out", str(out)])
        assert status == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "rep,gamma3,gamma4,psi3,psi4,tau3,tau4,g1,g2"
        assert len(lines) == 6

    def test_influence_and_breakdown(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("\n".join(str(v) for v in range(1, 41)))
        env = _json(["influence", "--input", str(path), "--stat", "psi3",
                     "--zmin", "-10", "--zmax", "10", "--grid", "5"])
        assert len(env["results"]["rows"]) == 5
        env = _json(["breakdown", "--input", str(path), "--order", "2"])
        assert env["results"]["analytic_fraction"] == 0.25
        assert env["results"]["first_diverged"] == 10
