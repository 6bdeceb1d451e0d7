import json

import pytest

from zarembapi.calculations.ensemble import Ensemble
from zarembapi.cli import main
from zarembapi.config import RunConfig, load_config_file
from zarembapi.core import Alphabet
from zarembapi.exceptions import ConfigError
from zarembapi.reports import to_json


def run_json(capsys, *argv):
    code = main([*argv, "--json", "--no-progress"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_census_command(capsys):
    code, document = run_json(capsys, "census", "--alphabet", "1,2", "--N", "10,100")
    assert code == 0
    assert document["command"] == "census"
    rows = document["results"]["rows"]
    assert rows[0] == {"N": 10, "count": 8, "ratio": 0.8}
    assert [r["N"] for r in rows] == [10, 100]


def test_census_with_oracle(capsys):
    code, document = run_json(capsys, "census", "--alphabet", "1,3", "--N", "50,300", "--oracle")
    assert code == 0
    assert document["results"]["oracle_agrees"] == {"50": True, "300": True}


def test_output_is_deterministic(capsys):
    main(["census", "--alphabet", "1,2", "--N", "100", "--json", "--no-progress"])
    first = capsys.readouterr().out
    main(["census", "--alphabet", "1,2", "--N", "100", "--json", "--no-progress"])
    assert capsys.readouterr().out == first


def test_thresholds_command(capsys):
    code, document = run_json(capsys, "thresholds")
    assert code == 0
    ceilings = document["results"]["ceilings"]
    assert ceilings["combined"] == pytest.approx(0.125 - 6e-4)
    assert document["results"]["kloosterman_nu"]["closed_form"] == pytest.approx(4.41547594742265)


def test_dimension_command(capsys):
    code, document = run_json(capsys, "dimension", "--alphabet", "1,2", "--depth", "8")
    assert code == 0
    bracket = document["results"]["bracket"]
    assert bracket["lower"] <= 0.53128 <= bracket["upper"]
    assert document["results"]["verdicts"] == {"t1": "FAIL", "t2": "FAIL", "t3": "FAIL"}


def test_ensemble_command_writes_members(capsys, tmp_path):
    code, document = run_json(capsys, "ensemble", "--alphabet", "1,2", "--N", "10000", "--out", str(tmp_path))
    assert code == 0
    assert document["results"]["factorization"]["reconstructed_all"] is True
    lines = (tmp_path / "members.txt").read_text().splitlines()
    assert lines[0].startswith("# zarembapi ")
    assert json.loads(lines[0][len("# zarembapi ") :])["config"]["horizons"] == [10000]
    assert len(lines) == document["results"]["ensemble"]["size"] + 1
    loaded = Ensemble.from_lines(Alphabet((1, 2)), 10000, 2.0, lines)
    assert len(loaded) == document["results"]["ensemble"]["size"]
    assert (tmp_path / "ensemble.json").is_file()
    assert (tmp_path / "ensemble.csv").read_text().startswith("# zarembapi ")


def test_spectrum_command(capsys):
    code, document = run_json(capsys, "spectrum", "--alphabet", "1,2", "--N", "100,1000", "--theta", "0.25")
    assert code == 0
    entry = document["results"]["horizons"]["1000"]
    assert entry["quadrature"]["value"] == pytest.approx(entry["l2"]["l2"], rel=5e-3)
    assert entry["theta"]["farey"]["q"] == 4
    assert entry["arcs"]["holds"] is True
    assert entry["lipschitz"]["T"] == 64 * 4
    assert 0.0 < entry["lipschitz"]["max_ratio"] <= 1.0


def test_spectrum_command_uses_lattice_parameter(capsys):
    code, document = run_json(capsys, "spectrum", "--alphabet", "1,2", "--N", "1000", "--T", "128", "--grid", "4")
    assert code == 0
    entry = document["results"]["horizons"]["1000"]
    assert entry["lipschitz"]["T"] == 128
    assert entry["arcs"]["grid"] == 8


def test_census_witness_file_has_header(capsys, tmp_path):
    code = main(["census", "--alphabet", "1,3", "--N", "200", "--witnesses", "--out", str(tmp_path), "--no-progress"])
    capsys.readouterr()
    assert code == 0
    lines = (tmp_path / "witnesses.txt").read_text().splitlines()
    assert lines[0].startswith("# zarembapi ")
    assert json.loads(lines[0][len("# zarembapi ") :])["version"]
    assert lines[1] == "1: 1"


def test_regions_command(capsys):
    code, document = run_json(capsys, "regions", "--alphabet", "1,2", "--N", "4000", "--gamma", "0.1", "--grid", "4")
    assert code == 0
    assert document["results"]["partition"]["OUTSIDE"] == 0
    assert document["results"]["mass"]["total"] > 0


def test_invalid_configuration_exit_code(capsys):
    assert main(["census", "--alphabet", "1", "--N", "10"]) == 2
    assert main(["census", "--N", "100,10"]) == 2
    assert main(["thresholds", "--eps0", "0.5"]) == 2
    assert main(["census", "--config", "does-not-exist.cfg"]) == 2


def test_config_file_is_overridden_by_flags(capsys, tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# census run\nalphabet = 1,2\nN = 10\n")
    code, document = run_json(capsys, "census", "--config", str(path), "--N", "100")
    assert code == 0
    assert document["config"]["horizons"] == [100]
    assert document["config"]["alphabet"] == "1,2"


def test_config_aliases_and_errors(tmp_path):
    config = RunConfig.fit(N="10,20", Q0=5, C=3)
    assert config.horizons == [10, 20]
    assert config.q0_override == 5.0
    assert config.window_ratio == 3.0
    assert config.lattice_T(10**6) == 64 * 7
    with pytest.raises(ConfigError):
        RunConfig.fit(colour="blue")
    with pytest.raises(ConfigError):
        RunConfig.fit(nu=2.5)
    bad = tmp_path / "bad.cfg"
    bad.write_text("alphabet 1,2\n")
    with pytest.raises(ConfigError):
        load_config_file(bad)


def test_float_formatting():
    text = to_json({"x": 0.1, "n": 3, "flag": True, "missing": float("nan")})
    assert '"x": 0.10000000000000001' in text
    assert json.loads(text) == {"flag": True, "missing": None, "n": 3, "x": 0.1}


@pytest.mark.slow
def test_verify_command(capsys):
    code, document = run_json(capsys, "verify")
    assert code == 0
    assert all(entry["passed"] for entry in document["results"].values())
