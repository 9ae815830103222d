import json

import pytest

from smallsys.cli import main
from smallsys.lorentz import block_g1, block_g2, serialize_isometry


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestVerify:
    def test_default_instance_passes(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        code, out, _ = run(["--json", str(path), "verify"], capsys)
        assert code == 0
        assert "verdict: PASS" in out
        data = json.loads(path.read_text())
        assert data["schema"] == 1
        assert data["verdict"] == "PASS"
        byname = {c["name"]: c for c in data["checks"]}
        assert byname["product_nonintegral"]["status"] == "PASS"
        assert byname["lambda2_nonintegral"]["status"] == "PASS"
        assert byname["lambda1_integral"]["status"] == "PASS"
        assert all(c["claim"] for c in data["checks"])

    def test_square_parameter_is_input_error(self, capsys):
        code, _, err = run(["verify", "--a", "2"], capsys)
        assert code == 2
        assert "square in k" in err

    def test_higher_dimension_passes(self, capsys):
        code, out, _ = run(["--quiet", "verify", "--n", "5"], capsys)
        assert code == 0

    def test_nondefault_a_passes(self, capsys):
        code, out, _ = run(["verify", "--a", "17"], capsys)
        assert code == 0
        assert "SKIP" in out          # the denominator-7 check is instance-specific

    def test_reproducible_json(self, capsys, tmp_path):
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        run(["--quiet", "--json", str(p1), "verify"], capsys)
        run(["--quiet", "--json", str(p2), "verify"], capsys)
        assert p1.read_bytes() == p2.read_bytes()


class TestSearch:
    def test_success(self, capsys, tmp_path):
        path = tmp_path / "s.json"
        code, out, _ = run(["--json", str(path), "search", "--epsilon", "0.25"], capsys)
        assert code == 0
        data = json.loads(path.read_text())
        check = data["checks"][0]
        assert check["exact_values"]["t"] == "7"
        assert check["numeric_values"]["length"].startswith("0.2414219215")

    def test_failure_exit_code(self, capsys):
        code, out, _ = run(["search", "--epsilon", "1e-9", "--height-bound", "3"],
                           capsys)
        assert code == 1
        assert "FAIL" in out

    def test_bad_epsilon(self, capsys):
        code, _, err = run(["search", "--epsilon", "-1"], capsys)
        assert code == 2


class TestMahler:
    def test_degree_four(self, capsys, tmp_path):
        path = tmp_path / "m.json"
        code, _, _ = run(["--quiet", "--json", str(path), "mahler", "--D", "4"], capsys)
        assert code == 0
        data = json.loads(path.read_text())
        check = data["checks"][0]
        assert check["exact_values"]["witness"] == "[-1, -1, 0, 1]"
        assert check["numeric_values"]["measure"].startswith("1.32471795")

    def test_bad_degree(self, capsys):
        code, _, _ = run(["mahler", "--D", "0"], capsys)
        assert code == 2


class TestBracelets:
    def test_length_eight(self, capsys, tmp_path):
        path = tmp_path / "b.json"
        code, _, _ = run(["--quiet", "--json", str(path), "bracelets",
                          "--length", "8"], capsys)
        assert code == 0
        data = json.loads(path.read_text())
        assert data["checks"][0]["exact_values"]["count"] == "8"

    def test_selection(self, capsys):
        code, out, _ = run(["bracelets", "--m", "2"], capsys)
        assert code == 0
        assert "1122, 1212" in out

    def test_requires_one_mode(self, capsys):
        code, _, _ = run(["bracelets"], capsys)
        assert code == 2
        code, _, _ = run(["bracelets", "--length", "4", "--m", "2"], capsys)
        assert code == 2


class TestCongruence:
    def test_g1_membership(self, capsys, tmp_path):
        mat = tmp_path / "g1.mat"
        mat.write_text(serialize_isometry(block_g1().to_isometry()))
        code, out, _ = run(["congruence", str(mat), "--level", "0+1*rt2"], capsys)
        assert code == 0
        assert "member = True" in out
        code, out, _ = run(["congruence", str(mat), "--level", "7"], capsys)
        assert code == 0
        assert "member = False" in out

    def test_nonintegral_matrix_skips_membership(self, capsys, tmp_path):
        mat = tmp_path / "g2.mat"
        mat.write_text(serialize_isometry(block_g2().to_isometry()))
        code, out, _ = run(["congruence", str(mat), "--level", "2"], capsys)
        assert code == 1          # integral_entries check fails
        assert "SKIP" in out

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(["congruence", str(tmp_path / "none.mat"),
                            "--level", "2"], capsys)
        assert code == 2


class TestMinpolyAndBudget:
    def test_minpoly_lambda1(self, capsys, tmp_path):
        path = tmp_path / "mp.json"
        code, _, _ = run(["--quiet", "--json", str(path), "minpoly",
                          "--trace", "6+4*rt2", "--norm", "1"], capsys)
        assert code == 0
        data = json.loads(path.read_text())
        check = data["checks"][0]
        assert check["exact_values"]["minpoly"] == "[1, -12, 6, -12, 1]"
        assert check["exact_values"]["algebraic_integer"] == "True"

    def test_minpoly_invalid(self, capsys):
        code, _, _ = run(["minpoly", "--trace", "0", "--norm", "1"], capsys)
        assert code == 2          # negative discriminant

    def test_budget(self, capsys, tmp_path):
        path = tmp_path / "bud.json"
        code, _, _ = run(["--quiet", "--json", str(path), "budget",
                          "--m", "3", "--D", "4"], capsys)
        assert code == 0
        data = json.loads(path.read_text())
        vals = data["checks"][0]["numeric_values"]
        assert vals["epsilon"].startswith("0.03514994")
        assert vals["systole_gap"].startswith("0.28119957")
