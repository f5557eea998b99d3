import json
import math

import numpy as np
import pytest

from supportline import PValueSample, sl_reject, bh_reject, adaptive_sl_reject
from supportline.cli import main

FIVE = "0.01\n0.02\n0.30\n0.50\n0.90\n"


@pytest.fixture()
def pfile(tmp_path):
    def write(content, name="p.txt"):
        path = tmp_path / name
        path.write_text(content)
        return str(path)

    return write


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestReject:
    def test_sl_report(self, pfile, capsys):
        code, out, err = run_cli(capsys, "reject", pfile(FIVE), "--method", "sl", "--q", "0.2")
        assert code == 0 and err == ""
        report = json.loads(out)
        assert report["method"] == "sl"
        assert report["m"] == 5
        assert report["R"] == 2
        assert report["tau"] == 0.02
        assert report["rejected_indices"] == [1, 2]

    def test_bh_report(self, pfile, capsys):
        code, out, _ = run_cli(capsys, "reject", pfile(FIVE), "--method", "bh", "--q", "0.2")
        assert code == 0
        report = json.loads(out)
        assert report["R"] == 2
        assert report["tau"] == pytest.approx(0.08)

    def test_adaptive_report_fields(self, pfile, capsys):
        content = "0.01\n0.02\n0.6\n0.8\n"
        code, out, _ = run_cli(
            capsys, "reject", pfile(content), "--method", "adaptive-sl", "--q", "0.2"
        )
        assert code == 0
        report = json.loads(out)
        assert report["zeta"] == 0.5
        assert report["pi0_hat"] == 1.5
        assert report["R"] == 2

    def test_round_trip_matches_library(self, pfile, capsys):
        rng = np.random.default_rng(8)
        values = rng.random(40) ** 1.7
        content = "\n".join(format(v, ".17g") for v in values) + "\n"
        path = pfile(content)
        sample = PValueSample(values)
        for method, fn in (("sl", sl_reject), ("bh", bh_reject)):
            code, out, _ = run_cli(capsys, "reject", path, "--method", method, "--q", "0.3")
            assert code == 0
            report = json.loads(out)
            expected = fn(sample, 0.3)
            assert report["R"] == expected.rejection_count
            assert report["tau"] == expected.threshold
            assert report["rejected_indices"] == sorted(expected.rejected_indices)
        code, out, _ = run_cli(capsys, "reject", path, "--method", "adaptive-sl",
                               "--q", "0.3", "--zeta", "0.6")
        expected = adaptive_sl_reject(sample, 0.3, 0.6)
        report = json.loads(out)
        assert report["R"] == expected.rejection_count
        assert report["pi0_hat"] == expected.pi0_estimate

    def test_csv_input_with_header(self, pfile, capsys):
        code, out, _ = run_cli(capsys, "reject", pfile("p\n0.01\n0.5\n"), "--q", "0.2")
        assert code == 0
        assert json.loads(out)["m"] == 2

    def test_comments_ignored(self, pfile, capsys):
        code, out, _ = run_cli(capsys, "reject", pfile("# header\n0.01\n# mid\n0.5\n"), "--q", "0.2")
        assert code == 0
        assert json.loads(out)["m"] == 2

    def test_empty_file_error(self, pfile, capsys):
        code, _, err = run_cli(capsys, "reject", pfile(""), "--q", "0.2")
        assert code == 1
        assert err.strip() == "error: empty sample"

    def test_malformed_number_error(self, pfile, capsys):
        code, _, err = run_cli(capsys, "reject", pfile("0.1\nabc\n"), "--q", "0.2")
        assert code == 1
        assert "malformed number" in err

    def test_out_of_range_error(self, pfile, capsys):
        code, _, err = run_cli(capsys, "reject", pfile("0.1\n1.5\n"), "--q", "0.2")
        assert code == 1
        assert "outside [0, 1]" in err

    def test_bad_level_error(self, pfile, capsys):
        code, _, err = run_cli(capsys, "reject", pfile(FIVE), "--q", "1.5")
        assert code == 1
        assert "outside (0, 1]" in err

    def test_unreadable_file_error(self, capsys):
        code, _, err = run_cli(capsys, "reject", "/nonexistent/nowhere.txt", "--q", "0.2")
        assert code == 1
        assert "cannot read input file" in err


class TestLfdr:
    def test_hand_example(self, pfile, capsys):
        code, out, _ = run_cli(capsys, "lfdr", pfile("0.2\n0.4\n"), "--pi0", "1")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "index,p,f_hat,lfdr_hat"
        rows = [ln.split(",") for ln in lines[1:]]
        assert [r[0] for r in rows] == ["1", "2"]
        assert [float(r[2]) for r in rows] == [2.5, 2.5]
        assert [float(r[3]) for r in rows] == [0.4, 0.4]

    def test_single_one(self, pfile, capsys):
        code, out, _ = run_cli(capsys, "lfdr", pfile("1.0\n"))
        rows = [ln.split(",") for ln in out.strip().splitlines()[1:]]
        assert float(rows[0][2]) == 1.0
        assert float(rows[0][3]) == 1.0

    def test_storey_scaling(self, pfile, capsys):
        path = pfile("0.1\n0.2\n0.6\n0.8\n")
        code, out_storey, _ = run_cli(capsys, "lfdr", path, "--pi0", "storey:0.5")
        code2, out_unit, _ = run_cli(capsys, "lfdr", path, "--pi0", "1")
        assert code == code2 == 0
        for ln_s, ln_u in zip(out_storey.splitlines()[1:], out_unit.splitlines()[1:]):
            lf_s, lf_u = float(ln_s.split(",")[3]), float(ln_u.split(",")[3])
            if math.isinf(lf_u):
                assert math.isinf(lf_s)
            else:
                assert lf_s == pytest.approx(1.5 * lf_u, rel=1e-12)

    def test_density_positive_at_observations(self, pfile, capsys):
        # the shape-constrained MLE never vanishes at an observed value
        # (zero density there would zero out the likelihood), so the table
        # contains no inf entries
        code, out, _ = run_cli(capsys, "lfdr", pfile("0.1\n0.2\n0.9\n0.4\n"))
        assert code == 0
        for ln in out.strip().splitlines()[1:]:
            f_hat, lf = float(ln.split(",")[2]), float(ln.split(",")[3])
            assert f_hat > 0.0 and math.isfinite(lf)

    def test_bad_pi0(self, pfile, capsys):
        code, _, err = run_cli(capsys, "lfdr", pfile("0.5\n"), "--pi0", "2.0")
        assert code == 1 and "outside (0, 1]" in err
        code, _, err = run_cli(capsys, "lfdr", pfile("0.5\n"), "--pi0", "storey:x")
        assert code == 1 and "malformed storey" in err


SCENARIO = """
# tiny scenario
name = tiny
model = bh64
m = 32
reps = 64
seed = 7
q_grid = 0.1, 0.2
procedures = sl, bh
zeta = 0.5
lambda = 4
"""


class TestSimulate:
    def test_scenario_file_csv(self, pfile, capsys, tmp_path):
        path = pfile(SCENARIO, name="tiny.scenario")
        out_path = tmp_path / "agg.csv"
        code, _, err = run_cli(capsys, "simulate", "--scenario", path, "--out", str(out_path))
        assert code == 0, err
        text = out_path.read_text()
        lines = text.splitlines()
        assert lines[0].startswith("# scenario=tiny model=bh64 m=32")
        assert lines[1] == "scenario,procedure,q,metric,mean,se,q25,q50,q75,n_reps,seed"
        assert any(ln.startswith("tiny,sl,0.1") for ln in lines)

    def test_byte_stability(self, pfile, capsys, tmp_path):
        path = pfile(SCENARIO, name="tiny.scenario")
        texts = []
        for i in range(2):
            out_path = tmp_path / f"agg{i}.csv"
            code, _, _ = run_cli(capsys, "simulate", "--scenario", path, "--out", str(out_path))
            assert code == 0
            texts.append(out_path.read_bytes())
        assert texts[0] == texts[1]

    def test_lehmann_model_value_with_comma(self, pfile, capsys, tmp_path):
        scenario = (
            "model = lehmann(0.8,0.5)\nm = 16\nreps = 20\nseed = 5\n"
            "q_grid = 0.2\nprocedures = sl\n"
        )
        path = pfile(scenario, name="lm.scenario")
        out_path = tmp_path / "lm.csv"
        code, _, err = run_cli(capsys, "simulate", "--scenario", path, "--out", str(out_path))
        assert code == 0, err
        assert "model=lehmann(0.8,0.5)" in out_path.read_text().splitlines()[0]

    def test_unknown_key_enumerated(self, pfile, capsys):
        path = pfile("model = bh64\nbogus = 3\n", name="bad.scenario")
        code, _, err = run_cli(capsys, "simulate", "--scenario", path)
        assert code == 1
        assert "unknown key 'bogus'" in err
        assert "q_grid" in err  # valid keys listed

    def test_missing_keys(self, pfile, capsys):
        path = pfile("model = bh64\n", name="missing.scenario")
        code, _, err = run_cli(capsys, "simulate", "--scenario", path)
        assert code == 1
        assert "missing keys" in err

    def test_unknown_preset(self, capsys):
        code, _, err = run_cli(capsys, "simulate", "--preset", "fig99")
        assert code == 1
        assert "unknown preset" in err
        assert "fig3" in err

    def test_preset_path(self, capsys, tmp_path, monkeypatch):
        import supportline.simulation as sim

        tiny = sim.ScenarioConfig(
            name="tiny-preset", model="bh64", m=16, replications=50, seed=3,
            q_grid=(0.2,), procedures=("sl",),
        )
        monkeypatch.setattr(sim, "scenario_presets", lambda: {"tiny": (tiny,)})
        out_path = tmp_path / "preset.csv"
        code, _, err = run_cli(capsys, "simulate", "--preset", "tiny", "--out", str(out_path))
        assert code == 0, err
        lines = out_path.read_text().splitlines()
        assert lines[0].startswith("# scenario=tiny-preset")
        assert any(ln.startswith("tiny-preset,sl,0.2") for ln in lines)

    def test_multi_config_preset_single_header(self, capsys, tmp_path, monkeypatch):
        import supportline.simulation as sim

        configs = tuple(
            sim.ScenarioConfig(
                name=f"sweep-m{m}", model="bh64", m=m, replications=30, seed=3,
                q_grid=(0.2,), procedures=("sl",),
            )
            for m in (8, 16)
        )
        monkeypatch.setattr(sim, "scenario_presets", lambda: {"sweep": configs})
        out_path = tmp_path / "sweep.csv"
        code, _, err = run_cli(capsys, "simulate", "--preset", "sweep", "--out", str(out_path))
        assert code == 0, err
        lines = out_path.read_text().splitlines()
        comments = [ln for ln in lines if ln.startswith("#")]
        headers = [ln for ln in lines if ln.startswith("scenario,")]
        assert len(comments) == 2 and len(headers) == 1
        assert any(ln.startswith("sweep-m8,") for ln in lines)
        assert any(ln.startswith("sweep-m16,") for ln in lines)

    def test_requires_exactly_one_source(self, capsys):
        code, _, err = run_cli(capsys, "simulate")
        assert code == 1
        assert "exactly one" in err

    def test_outdir_env(self, pfile, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("SUPPORTLINE_OUTDIR", str(tmp_path))
        path = pfile(SCENARIO, name="tiny.scenario")
        code, _, _ = run_cli(capsys, "simulate", "--scenario", path, "--out", "env.csv")
        assert code == 0
        assert (tmp_path / "env.csv").exists()


class TestPredict:
    def test_worked_example_manual_mode(self, capsys):
        code, out, _ = run_cli(
            capsys, "predict", "--fprime", "-50", "--q", "0.2", "--pi0", "1.0",
            "--m", "1000,64000",
        )
        assert code == 0
        rows = json.loads(out)["rows"]
        assert abs(rows[0]["lfdr_p95"] - 0.24) < 1e-12
        assert abs(rows[1]["lfdr_p95"] - 0.21) < 1e-12

    def test_model_mode_fields(self, capsys):
        code, out, _ = run_cli(
            capsys, "predict", "--model", "bh64", "--q", "0.2", "--m", "1024",
        )
        assert code == 0
        row = json.loads(out)["rows"][0]
        for key in ("t_q", "threshold_scale", "lfdr_center", "lfdr_relative_scale",
                    "regret_prediction"):
            assert key in row
        assert row["lfdr_center"] == pytest.approx(0.15)

    def test_regret_ratio_across_m(self, capsys):
        code, out, _ = run_cli(
            capsys, "predict", "--model", "bh64", "--m", "2048,16384", "--format", "csv",
        )
        assert code == 0
        lines = out.strip().splitlines()
        header = lines[0].split(",")
        i = header.index("regret_prediction")
        r1 = float(lines[1].split(",")[i])
        r2 = float(lines[2].split(",")[i])
        assert r1 / r2 == pytest.approx(4.0, rel=1e-9)

    def test_global_null_limit_row(self, capsys):
        code, out, _ = run_cli(
            capsys, "predict", "--model", "lehmann(1.0,0.5)", "--q", "0.05",
            "--alpha", "0.2", "--m", "10000",
        )
        assert code == 0
        row = json.loads(out)["rows"][0]
        # lambda = 1/alpha - 1 = 4: the series value frozen from the oracle
        assert row["global_null_m_regret"] == pytest.approx(0.216066481994, abs=1e-9)
        assert "threshold_scale" not in row
        code, out, _ = run_cli(
            capsys, "predict", "--fprime", "-50", "--q", "0.05", "--m", "10000",
        )
        assert code == 0

    def test_bad_args(self, capsys):
        code, _, err = run_cli(capsys, "predict", "--m", "100")
        assert code == 1 and "either --model or --fprime" in err
        code, _, err = run_cli(capsys, "predict", "--fprime", "50", "--q", "0.2", "--m", "10")
        assert code == 1 and "negative" in err
        code, _, err = run_cli(capsys, "predict", "--fprime", "-50", "--m", "10")
        assert code == 1 and "--q is required" in err
