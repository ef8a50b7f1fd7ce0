import json

import pytest
from app.cli import main, parse_conductor
from app.errors import InputValidationError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCli:
    """Test cases for the command-line surface"""

    def test_coeffs_json(self, capsys):
        code, out, _ = run(capsys, "coeffs", "--case", "selfdual", "--N", "4", "--k", "4")
        assert code == 0
        assert out == '{"shifts":{"0":1,"2":-2,"4":1}}\n'

    def test_coeffs_text(self, capsys):
        code, out, _ = run(
            capsys, "coeffs", "--case", "conj_split", "--N", "2", "--k", "2", "--format", "text"
        )
        assert code == 0
        assert out.splitlines() == ["a_2(2, 0) = 1", "a_2(2, 1) = -2", "a_2(2, 2) = 1"]

    def test_oldforms_text(self, capsys):
        code, out, _ = run(
            capsys, "oldforms", "--case", "selfdual", "--N", "4", "--k", "1", "--format", "text"
        )
        assert code == 0
        assert out == "trace 0\n"

    def test_oldforms_brute_force(self, capsys):
        code, out, _ = run(
            capsys, "oldforms", "--case", "selfdual", "--N", "4", "--k", "2", "--brute-force"
        )
        assert code == 0
        assert json.loads(out) == {"dimension": 10, "trace": 2, "fixed_points": 2}

    def test_epsilon_transfer(self, capsys):
        code, out, _ = run(capsys, "epsilon", "--N", "4", "--conductor", "v3=2")
        assert code == 0
        assert out == '{"transfer":-2}\n'

    def test_epsilon_transfer_vanishes(self, capsys):
        code, out, _ = run(capsys, "epsilon", "--N", "4", "--conductor", "v3=3")
        assert code == 0
        assert json.loads(out) == {"transfer": 0}

    def test_epsilon_needs_inputs(self, capsys):
        code, out, err = run(capsys, "epsilon", "--N", "4")
        assert code == 2
        assert out == ""
        assert err.startswith("error: ")

    def test_epsilon_scenario(self, capsys, fixtures_dir):
        path = fixtures_dir / "scenarios" / "conjugate_conjectural.json"
        code, out, _ = run(capsys, "epsilon", "--scenario", str(path))
        assert code == 0
        data = json.loads(out)
        assert data["lambda"]["sign"] == -1
        assert data["lambda"]["conjectural"] is True
        assert data["positivity"]["holds"] is True

    def test_localfield_j(self, capsys):
        code, out, _ = run(capsys, "localfield", "--preset", "q3sqrt3", "--op", "j")
        assert code == 0
        assert out == '"1"\n'

    def test_localfield_inconclusive(self, capsys):
        code, _, err = run(capsys, "localfield", "--preset", "q2i", "--op", "j", "--m", "1")
        assert code == 3
        assert "error:" in err

    def test_localfield_unknown_preset(self, capsys):
        code, _, err = run(capsys, "localfield", "--preset", "q7x")
        assert code == 2
        assert "unknown preset" in err

    def test_localfield_witness(self, capsys):
        code, out, _ = run(
            capsys,
            "localfield",
            "--preset",
            "q3sqrt3",
            "--m",
            "1",
            "--op",
            "witness",
            "--N",
            "3",
            "--y",
            "1",
            "0",
        )
        assert code == 0
        data = json.loads(out)
        assert data["found"] is True
        assert data["predicted"] is True

    def test_dims(self, capsys):
        code, out, _ = run(
            capsys, "dims", "--family", "Sp", "--size", "4", "--exponents", "3,1,0,-1,-3"
        )
        assert code == 0
        assert json.loads(out) == {
            "group": "Sp_4",
            "dimension": "4",
            "m_norm": "1",
            "positive_roots": 4,
            "group_dimension": 10,
            "rank": 2,
        }

    def test_dims_singular(self, capsys):
        code, _, err = run(
            capsys, "dims", "--family", "SO_odd", "--size", "5", "--exponents", "1/2,1/2,-1/2,-1/2"
        )
        assert code == 2
        assert "singular" in err

    def test_predict_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "predict", "--scenario", str(tmp_path / "absent.json"))
        assert code == 2
        assert "cannot read scenario" in err

    def test_predict_invalid_scenario(self, capsys, tmp_path):
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps({"case": "self_dual", "N": 4, "conductor": {"v9": 2}}))
        code, _, err = run(capsys, "predict", "--scenario", str(path))
        assert code == 2
        assert "undeclared places: v9" in err

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as info:
            main(["transmogrify"])
        assert info.value.code == 2


class TestParseConductor:
    def test_parse(self):
        c = parse_conductor("v3=2, v5=3/2")
        assert str(c) == "v3^2*v5^3/2"

    def test_missing_separator(self):
        with pytest.raises(InputValidationError):
            parse_conductor("v3:2")
