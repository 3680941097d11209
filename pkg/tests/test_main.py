"""Tests for the negshannon command line."""

import json
import math

import pytest
from typer.testing import CliRunner

from negshannon import __version__
from negshannon.main import app
from negshannon.probtab import (
    JointDistribution,
    dumps_distribution,
    ghz_type,
    loads_distribution,
    write_distribution,
)

runner = CliRunner()


@pytest.fixture
def dist_file(tmp_path):
    """Write a distribution to a temporary file and return its path."""
    def write(P: JointDistribution) -> str:
        path = tmp_path / f"dist{len(list(tmp_path.iterdir()))}.json"
        write_distribution(P, path)
        return str(path)
    return write


def test_version():
    """Test the version command."""
    result = runner.invoke(app, ["version"])
    assert result.exit_code == 0
    assert __version__ in result.stdout


def test_generate_fig1():
    """Test generating a family to stdout."""
    result = runner.invoke(app, ["generate", "fig1"])
    assert result.exit_code == 0
    doc = json.loads(result.stdout)
    assert doc["variables"] == ["X", "Y", "Z"]
    assert len(doc["entries"]) == 4


def test_generate_with_params_and_kind(tmp_path):
    """Test a w4 family written to a file."""
    out = tmp_path / "w4.json"
    result = runner.invoke(
        app, ["generate", "w4", "-p", "0.1,0.2,0.3,0.4", "--kind", "EE0c", "-o", str(out)]
    )
    assert result.exit_code == 0
    P = loads_distribution(out.read_text())
    assert P.prob((1, 1, 0)) == pytest.approx(0.4)


def test_generate_wrong_param_count():
    """Test that a wrong parameter count exits with 2."""
    result = runner.invoke(app, ["generate", "w_type", "-p", "0.5"])
    assert result.exit_code == 2


def test_generate_unknown_family():
    """Test that an unknown family is a usage error."""
    result = runner.invoke(app, ["generate", "fig99"])
    assert result.exit_code == 2


def test_info_from_file(dist_file, fig1):
    """Test the information report of fig1."""
    result = runner.invoke(app, ["info", "--in", dist_file(fig1)])
    assert result.exit_code == 0
    doc = json.loads(result.stdout)
    assert doc["tripartite_information"] == pytest.approx(-1.0)
    assert doc["case"] == "CaseOne"


def test_info_from_stdin(w_symmetric):
    """Test reading the distribution from standard input."""
    result = runner.invoke(app, ["info"], input=dumps_distribution(w_symmetric))
    assert result.exit_code == 0
    assert json.loads(result.stdout)["tripartite_information"] == pytest.approx(-0.415037, abs=1e-6)


def test_bad_sum_exits_with_two(tmp_path):
    """Test that a file summing to 0.5 is rejected."""
    path = tmp_path / "half.json"
    path.write_text(
        '{"variables": ["X"], "cardinalities": [2], "entries": [{"outcome": [0], "p": 0.5}]}'
    )
    result = runner.invoke(app, ["info", "--in", str(path)])
    assert result.exit_code == 2


def test_missing_file_exits_with_two(tmp_path):
    """Test that an unreadable file is an input error."""
    result = runner.invoke(app, ["info", "--in", str(tmp_path / "missing.json")])
    assert result.exit_code == 2


def test_witness_exit_codes(dist_file, fig1):
    """Test exit 0 for fig1 and exit 1 for an excluded GHZ-type input."""
    result = runner.invoke(app, ["witness", "--in", dist_file(fig1)])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["verdicts"]["triangle"] == "compatible-not-excluded"

    result = runner.invoke(app, ["witness", "--in", dist_file(ghz_type(0.5))])
    assert result.exit_code == 1
    assert "slack20" in json.loads(result.stdout)["excluded_by"]["triangle"]


def test_bayes(dist_file, fig1):
    """Test the DAG of fig1 under the default ordering."""
    result = runner.invoke(app, ["bayes", "--in", dist_file(fig1), "--order", "X,Y,Z"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["edges"] == [["X", "Z"], ["Y", "Z"]]


def test_bayes_bad_ordering(dist_file, fig1):
    """Test that an ordering naming unknown variables exits with 2."""
    result = runner.invoke(app, ["bayes", "--in", dist_file(fig1), "--order", "X,Y,W"])
    assert result.exit_code == 2


def test_inflate(dist_file, w_symmetric, uniform3):
    """Test a certificate for W and an inconclusive uniform input."""
    result = runner.invoke(app, ["inflate", "--in", dist_file(w_symmetric)])
    assert result.exit_code == 0
    doc = json.loads(result.stdout)
    assert doc["verdict"] == "incompatible"
    assert doc["forced_event"] == {"X": 0, "Y": 0, "Z": 0}

    result = runner.invoke(
        app, ["inflate", "--in", dist_file(uniform3), "--independence", "sources"]
    )
    assert result.exit_code == 1
    assert json.loads(result.stdout)["verdict"] == "inconclusive"


def test_chain_realize(dist_file, fig1):
    """Test the chain plan of fig1 and the rejection of GHZ."""
    result = runner.invoke(app, ["chain-realize", "--in", dist_file(fig1)])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["round_trip_error"] <= 1e-12

    result = runner.invoke(app, ["chain-realize", "--in", dist_file(ghz_type(0.5))])
    assert result.exit_code == 2


def test_quantum_canonical():
    """Test computational statistics of an E4 state."""
    result = runner.invoke(app, ["quantum", "canonical", "E4", "-p", "0.6,0.8"])
    assert result.exit_code == 0
    assert loads_distribution(result.stdout).allclose(ghz_type(0.36))


def test_quantum_star():
    """Test the star network output shape."""
    angle = str(math.pi / 4)
    result = runner.invoke(app, ["quantum", "star", "-p", ",".join([angle] * 3)])
    assert result.exit_code == 0
    assert loads_distribution(result.stdout).cards == (2, 2, 2, 8)


def test_quantum_chain_then_network(dist_file, tmp_path, fig1):
    """Test that a realized chain spec simulates back to the input."""
    spec_path = tmp_path / "spec.json"
    result = runner.invoke(app, ["quantum", "chain", "--in", dist_file(fig1), "-o", str(spec_path)])
    assert result.exit_code == 0

    result = runner.invoke(app, ["quantum", "network", "--in", str(spec_path)])
    assert result.exit_code == 0
    assert loads_distribution(result.stdout).allclose(fig1)


def test_quantum_network_bad_document(tmp_path):
    """Test that an invalid spec document exits with 2."""
    path = tmp_path / "spec.json"
    path.write_text('{"sources": []}')
    result = runner.invoke(app, ["quantum", "network", "--in", str(path)])
    assert result.exit_code == 2


def test_optimize_channels(dist_file, w_symmetric):
    """Test the channel search command."""
    result = runner.invoke(
        app,
        ["optimize", "channels", "--in", dist_file(w_symmetric), "-d", "min", "--restarts", "1"],
    )
    assert result.exit_code == 0
    doc = json.loads(result.stdout)
    assert doc["direction"] == "min"
    assert len(doc["trace"]) == 1


def test_optimize_imin_reports_delta():
    """Test that the balanced E4 search reports Delta = 1."""
    half = str(math.sqrt(0.5))
    result = runner.invoke(
        app, ["optimize", "imin", "E4", "-p", f"{half},{half}", "--restarts", "1"]
    )
    assert result.exit_code == 0
    assert json.loads(result.stdout)["delta"] == pytest.approx(1.0, abs=1e-9)


def test_optimize_bad_restarts(dist_file, fig1):
    """Test that a non-positive restart count exits with 2."""
    result = runner.invoke(
        app, ["optimize", "channels", "--in", dist_file(fig1), "--restarts", "0"]
    )
    assert result.exit_code == 2


def test_scan_mixture():
    """Test the information sign threshold from the command line."""
    result = runner.invoke(app, ["scan", "mixture", "--kind", "info_sign"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["threshold"] == pytest.approx(0.746, abs=0.005)


def test_examples_selection():
    """Test running a subset of the example checks."""
    result = runner.invoke(app, ["examples", "--items", "1,3,12"])
    assert result.exit_code == 0
    doc = json.loads(result.stdout)
    assert [c["item"] for c in doc["checks"]] == [1, 3, 12]
    assert doc["failed"] == 0


def test_examples_rejects_bad_items():
    """Test that fractional or unknown item numbers exit with 2."""
    for items in ["1.7", "99", "0,1"]:
        result = runner.invoke(app, ["examples", "--items", items])
        assert result.exit_code == 2, items
