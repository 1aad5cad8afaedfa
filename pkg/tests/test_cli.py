import csv
import json

import numpy as np
import pytest

from maxprod.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestKernelInfo:
    def test_fejer_beta_two_satisfies_chi1(self, capsys):
        code, out, _ = run(capsys, "kernel-info", "--kernel", "fejer",
                           "--beta", "2")
        assert code == 0
        assert "chi1 (beta=2): satisfied" in out
        assert "verdict (interval): admissible" in out

    def test_bspline3_bounded_fails_chi2(self, capsys):
        code, out, _ = run(capsys, "kernel-info", "--kernel", "bspline:3",
                           "--domain", "bounded")
        assert code == 0
        assert "chi2: FAILS" in out
        assert "chi2': satisfied" in out
        assert "NOT admissible" in out

    def test_vallee_poussin_constant(self, capsys):
        code, out, _ = run(capsys, "kernel-info", "--kernel",
                           "vallee-poussin", "--domain", "bounded", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["a_chi_bounded"] == pytest.approx(0.1048, abs=1e-3)

    def test_unknown_kernel_exit_2(self, capsys):
        code, _, err = run(capsys, "kernel-info", "--kernel", "gaussian")
        assert code == 2
        assert "unknown kernel" in err


class TestReconstruct:
    def test_constant_columns_match(self, capsys, tmp_path):
        out_path = tmp_path / "rec.csv"
        code, _, _ = run(capsys, "reconstruct", "--kernel", "fejer",
                         "--signal", "constant:1", "--n", "16",
                         "--grid", "40", "--out", str(out_path))
        assert code == 0
        with open(out_path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["x", "f", "K_n_f"]
        assert len(rows) == 41
        for _, fv, kv in rows[1:]:
            assert float(fv) == float(kv)

    def test_rerun_is_byte_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, "reconstruct", "--kernel", "vallee-poussin", "--signal",
            "step", "--n", "32", "--out", str(a))
        run(capsys, "reconstruct", "--kernel", "vallee-poussin", "--signal",
            "step", "--n", "32", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_inadmissible_kernel_exit_3(self, capsys, tmp_path):
        code, _, err = run(capsys, "reconstruct", "--kernel", "bspline:3",
                           "--signal", "ramp", "--out",
                           str(tmp_path / "x.csv"))
        assert code == 3
        assert "inadmissible" in err

    def test_empty_index_set_exit_4(self, capsys, tmp_path):
        code, _, err = run(capsys, "reconstruct", "--kernel", "fejer",
                           "--signal", "ramp", "--domain", "interval:0,0.4",
                           "--n", "2", "--out", str(tmp_path / "x.csv"))
        assert code == 4
        assert "no lattice cells" in err

    def test_csv_signal_ingestion(self, capsys, tmp_path):
        data = tmp_path / "sig.csv"
        data.write_text("0,1\n0.5,1\n1,1\n")
        out_path = tmp_path / "rec.csv"
        code, _, _ = run(capsys, "reconstruct", "--kernel", "fejer",
                         "--csv", str(data), "--n", "8", "--grid", "16",
                         "--out", str(out_path))
        assert code == 0
        with open(out_path, newline="") as fh:
            rows = list(csv.reader(fh))[1:]
        np.testing.assert_allclose([float(r[2]) for r in rows], 1.0,
                                   atol=1e-12)


class TestConverge:
    def test_constant_zero_columns(self, capsys, tmp_path):
        out = tmp_path / "rep"
        code, _, _ = run(capsys, "converge", "--kernel", "fejer", "--phi",
                         "power:2", "--signal", "constant:1", "--scales",
                         "4,8,16", "--out", str(out))
        assert code == 0
        payload = json.loads((tmp_path / "rep.json").read_text())
        assert payload["sup_errors"] == [0.0, 0.0, 0.0]
        assert payload["modular_errors"] == [0.0, 0.0, 0.0]

    def test_step_modular_decreasing(self, capsys, tmp_path):
        out = tmp_path / "rep"
        code, _, _ = run(capsys, "converge", "--kernel", "fejer", "--phi",
                         "power:2", "--signal", "step", "--scales",
                         "8,16,32,64", "--out", str(out))
        assert code == 0
        with open(tmp_path / "rep.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["n", "sup_error", "modular_error",
                           "luxemburg_error"]
        mods = [float(r[2]) for r in rows[1:]]
        assert all(a > b for a, b in zip(mods, mods[1:]))

    def test_missing_output_dir_exit_5(self, capsys, tmp_path):
        code, _, err = run(capsys, "converge", "--kernel", "fejer",
                           "--signal", "ramp", "--scales", "8,16", "--out",
                           str(tmp_path / "missing" / "rep"))
        assert code == 5

    def test_byte_identical_reruns(self, capsys, tmp_path):
        argv = ["converge", "--kernel", "fejer", "--phi", "power:2",
                "--signal", "step", "--scales", "8,16,32", "--seed", "42"]
        run(capsys, *argv, "--out", str(tmp_path / "one"))
        run(capsys, *argv, "--out", str(tmp_path / "two"))
        assert (tmp_path / "one.json").read_bytes() == \
            (tmp_path / "two.json").read_bytes()
        assert (tmp_path / "one.csv").read_bytes() == \
            (tmp_path / "two.csv").read_bytes()


class TestVerify:
    def test_zero_draws_trivially_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "--draws", "0")
        assert code == 0
        assert "nothing to verify" in out

    def test_small_campaign_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--draws", "8", "--seed", "42")
        assert code == 0
        assert "operator-algebra/monotonicity" in out
        assert "modular-inequality" in out
        assert "FAIL" not in out

    def test_inadmissible_kernel_exit_3(self, capsys):
        code, _, err = run(capsys, "verify", "--kernel", "bspline:3",
                           "--draws", "4")
        assert code == 3
        assert "campaign skipped" in err

    def test_unknown_signal_exit_2(self, capsys, tmp_path):
        code, _, _ = run(capsys, "reconstruct", "--kernel", "fejer",
                         "--signal", "mystery", "--out",
                         str(tmp_path / "x.csv"))
        assert code == 2
