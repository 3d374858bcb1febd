import math

import pytest

from asymq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPmfCommand:
    def test_exact_golden(self, capsys):
        code, out, _ = run(capsys, "pmf", "--n", "2", "--m", "1", "--k", "1", "--l", "1")
        assert code == 0
        assert out == "x,p_num,p_den,p_float\n0,1,2,0.5\n1,1,2,0.5\n"

    def test_point_mass(self, capsys):
        code, out, _ = run(capsys, "pmf", "--n", "5", "--m", "2", "--k", "0", "--l", "0")
        assert code == 0
        assert out == "x,p_num,p_den,p_float\n0,1,1,1\n"

    def test_invalid_params_exit_2(self, capsys):
        code, _, err = run(capsys, "pmf", "--n", "2", "--m", "2", "--k", "1", "--l", "0")
        assert code == 2
        assert "l >= m + k - n" in err

    def test_size_cap_exit_3(self, capsys):
        code, _, err = run(capsys, "pmf", "--n", "400", "--m", "200", "--k", "3", "--l", "1")
        assert code == 3
        assert "cap" in err

    def test_env_override_lifts_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("ASYMQ_MAX_N", "500")
        code, out, _ = run(capsys, "pmf", "--n", "400", "--m", "200", "--k", "3", "--l", "1")
        assert code == 0
        assert out.startswith("x,p_num,p_den,p_float\n")

    def test_float_mode(self, capsys):
        code, out, _ = run(capsys, "pmf", "--n", "400", "--m", "200", "--k", "3", "--l", "1", "--float")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,p_float"
        total = sum(float(line.split(",")[1]) for line in lines[1:])
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "pmf.csv"
        code, out, _ = run(capsys, "pmf", "--n", "2", "--m", "1", "--k", "1", "--l", "1",
                           "--out", str(path))
        assert code == 0 and out == ""
        assert path.read_text() == "x,p_num,p_den,p_float\n0,1,2,0.5\n1,1,2,0.5\n"


class TestScalarCommands:
    def test_entropy(self, capsys):
        code, out, _ = run(capsys, "entropy", "--n", "2", "--m", "1", "--k", "1", "--l", "1",
                           "--base", "2")
        assert code == 0
        assert out.splitlines()[1] == "2,1,1,1,1"

    def test_decohered(self, capsys):
        code, out, _ = run(capsys, "decohered", "--n", "4", "--m", "2", "--k", "2", "--l", "1")
        assert code == 0
        value = float(out.splitlines()[1].split(",")[-1])
        assert value == pytest.approx(math.log(3), rel=1e-11)

    def test_entropy_beyond_exact_cap(self, capsys):
        # general (k != l) tuples above the cap fall back to the float chain
        code, out, _ = run(capsys, "entropy", "--n", "400", "--m", "150", "--k", "3", "--l", "1")
        assert code == 0
        assert float(out.splitlines()[1].split(",")[-1]) > 0


class TestScans:
    def test_type1_scan(self, capsys):
        code, out, _ = run(capsys, "type1-scan", "--xi", "0.5", "--k", "2", "--l", "1",
                           "--n-list", "100", "200")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,max_abs_diff,n_max_abs_diff"
        assert len(lines) == 3

    def test_type2_scan(self, capsys):
        code, out, _ = run(capsys, "type2-scan", "--beta", "0.25", "--delta", "0.25",
                           "--xi", "0.5", "--n-list", "1000")
        assert code == 0
        header, row = out.strip().splitlines()
        assert header == "n,mu,sigma2,entropy_leading,decohered_approx,rate_gap"
        fields = row.split(",")
        assert float(fields[1]) == pytest.approx(0.25)

    def test_clt_check(self, capsys):
        code, out, _ = run(capsys, "clt-check", "--alpha", "0.2", "--xi", "0.5",
                           "--n-list", "200", "400")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,sup_cdf_dist,mean_err,var_err,tail_log_slope"
        assert lines[1].endswith(",")  # first row has no slope
        assert len(lines) == 3

    def test_clt_check_bad_ratios(self, capsys):
        code, _, err = run(capsys, "clt-check", "--alpha", "0.2", "--xi", "0.5",
                           "--n-list", "123")
        assert code == 2


class TestFigures:
    def test_fig1(self, capsys):
        code, out, _ = run(capsys, "fig1", "--n-list", "100", "200", "--xi", "0.5",
                           "--k", "2", "--l", "1")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,S_exact_over_logn,a_over_logn,u"
        assert len(lines) == 3

    def test_fig1_degenerate_rejected(self, capsys):
        code, _, _ = run(capsys, "fig1", "--n-list", "100", "--k", "0", "--l", "0")
        assert code == 2

    def test_fig2_endpoints(self, capsys):
        code, out, _ = run(capsys, "fig2", "--xi", "0.3", "--steps", "11")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "kappa,h_mu,kappa_h_xi"
        first = lines[1].split(",")
        last = lines[-1].split(",")
        assert first[0] == "0" and float(first[1]) == 0.0
        assert last[0] == "1"
        assert float(last[1]) == pytest.approx(float(last[2]), abs=1e-12)
        for line in lines[1:]:
            _, green, blue = (float(v) for v in line.split(","))
            assert green >= blue - 1e-12

    def test_jobs_determinism(self, capsys):
        _, seq, _ = run(capsys, "fig2", "--xi", "0.3", "--steps", "21")
        _, par, _ = run(capsys, "fig2", "--xi", "0.3", "--steps", "21", "--jobs", "2")
        assert seq == par

    def test_repeat_determinism(self, capsys):
        _, a, _ = run(capsys, "pmf", "--n", "6", "--m", "3", "--k", "2", "--l", "1")
        _, b, _ = run(capsys, "pmf", "--n", "6", "--m", "3", "--k", "2", "--l", "1")
        assert a == b


class TestBoundsAndActivation:
    def test_logm_bounds(self, capsys):
        code, out, _ = run(capsys, "logm-bounds", "--n", "4", "--m", "2", "--k", "2", "--l", "1",
                           "--eps", "0.5", "--delta1", "0.05", "--delta2", "0.05")
        assert code == 0
        header, row = out.strip().splitlines()
        assert header == "eps,delta1,delta2,lower,upper"
        fields = [float(v) for v in row.split(",")]
        assert fields[3] <= math.log(3) <= fields[4]

    def test_activation_single(self, capsys):
        code, out, _ = run(capsys, "activation-antisym", "--n", "2", "--d", "2")
        assert code == 0
        header, row = out.strip().splitlines()
        assert header == "d,value_bits,value_nats"
        d, bits, nats = row.split(",")
        assert d == "2"
        assert float(nats) == pytest.approx(math.log(10), rel=1e-11)
        assert float(bits) == pytest.approx(math.log2(10), rel=1e-11)

    def test_activation_scan(self, capsys):
        code, out, _ = run(capsys, "activation-antisym", "--n", "2", "--scan")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[1].split(",")[0] == "2"
        values = [float(line.split(",")[2]) for line in lines[1:]]
        assert all(a >= b for a, b in zip(values, values[1:]))


class TestVerifyCommand:
    def test_unknown_suite_exit_2(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "bogus")
        assert code == 2
        assert "usage" in err or "invalid choice" in err

    def test_activation_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "activation")
        assert code == 0
        assert "PASS" in out and "FAIL" not in out

    def test_all_suites_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "all")
        assert code == 0
        assert "FAIL" not in out
        assert out.strip().splitlines()[-1].endswith("checks passed")

    def test_unknown_command_exit_2(self, capsys):
        code, _, _ = run(capsys, "no-such-command")
        assert code == 2
