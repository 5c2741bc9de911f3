# tests/test_cli.py

import json

import pytest
from click.testing import CliRunner

from homfin import __version__
from homfin.main import cli


@pytest.fixture
def run(config_dir, data_dir):
    """Invokes the CLI against the isolated config; `{data}` expands to the data directory."""
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, [a.format(data=data_dir) for a in args])

    return invoke


def report_of(result) -> dict:
    return json.loads(result.stdout)


def test_version():
    result = CliRunner().invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


# -----------------------------------------------------------------------------
# resolve
# -----------------------------------------------------------------------------

def test_resolve_polynomial_ring(run):
    result = run("resolve", "{data}/poly2.alg", "-D", "6", "-n", "3", "--format", "json")
    assert result.exit_code == 0, result.output
    report = report_of(result)
    assert report["status"] == "certified"
    assert report["data"]["ranks"] == [1, 2, 1, 0]
    assert report["data"]["betti"] == [[0, 0, 1], [1, 1, 2], [2, 2, 1]]
    assert all(check["success"] for check in report["checks"])


def test_resolve_uses_config_defaults(run):
    result = run("resolve", "{data}/free2.alg", "--format", "json")
    assert result.exit_code == 0, result.output
    report = report_of(result)
    assert report["config"]["degree_bound"] == 6
    assert report["config"]["hom_bound"] == 3
    assert report["data"]["ranks"] == [1, 2, 0, 0]


def test_resolve_exterior_algebra_is_inconclusive(run):
    result = run("resolve", "{data}/exterior2.alg", "-D", "4", "-n", "4", "--format", "json")
    assert result.exit_code == 2, result.output
    assert report_of(result)["data"]["verdict"] == "INCONCLUSIVE"


def test_resolve_group_table(run):
    result = run("resolve", "{data}/c2.mon", "-n", "4", "--format", "json")
    assert result.exit_code == 0, result.output
    report = report_of(result)
    assert report["data"]["ranks"] == [1, 1, 1, 1, 1]
    assert report["data"]["field"] == "GF(2)"


def test_resolve_right_side_of_group_uses_the_involution(run):
    result = run("resolve", "{data}/c3.mon", "--side", "right", "-n", "2", "--format", "json")
    assert result.exit_code == 0, result.output
    assert report_of(result)["data"]["via"] == "involution"


def test_resolve_table_output(run):
    result = run("resolve", "{data}/poly2.alg", "-D", "4", "-n", "2")
    assert result.exit_code == 0, result.output
    assert "resolve: CERTIFIED" in result.output
    assert "Betti numbers" in result.output


def test_resolve_csv_output(run):
    result = run("resolve", "{data}/poly1.alg", "-D", "4", "-n", "2", "--format", "csv")
    assert result.exit_code == 0, result.output
    assert result.stdout.splitlines()[0] == "section,row,column,value"


def test_invalid_degree_bound_is_rejected(run):
    result = run("resolve", "{data}/poly2.alg", "--degree-bound", "1")
    assert result.exit_code == 1
    assert "✖ FAIL" in result.output


def test_invalid_field_is_rejected(run):
    result = run("resolve", "{data}/poly2.alg", "--field", "GF(6)")
    assert result.exit_code == 1


@pytest.mark.slow
@pytest.mark.parametrize("side, ranks", [("weak-bi", [1, 4, 6, 4, 1]), ("bi", [1, 2, 1])])
def test_resolve_bimodule_sides(run, side, ranks):
    result = run("resolve", "{data}/poly2.alg", "--side", side, "-D", "4", "-n", "2", "--format", "json")
    assert result.exit_code == 0, result.output
    assert report_of(result)["data"]["ranks"] == ranks


# -----------------------------------------------------------------------------
# group-bires
# -----------------------------------------------------------------------------

def test_group_bires(run):
    result = run("group-bires", "{data}/c2.mon", "-n", "3", "--format", "json")
    assert result.exit_code == 0, result.output
    report = report_of(result)
    assert report["data"]["ranks"] == [1, 1, 1, 1]
    assert report["data"]["contracted_ranks"] == [1, 1, 1, 1]


def test_group_bires_rejects_monoids(run):
    result = run("group-bires", "{data}/semilattice.mon")
    assert result.exit_code == 1
    assert "✖ FAIL" in result.output
    assert "inverses" in result.output


# -----------------------------------------------------------------------------
# retract
# -----------------------------------------------------------------------------

def test_retract(run):
    result = run("retract", "{data}/poly2_to_poly1.ret", "-D", "4", "-n", "2", "--format", "json")
    assert result.exit_code == 0, result.output
    report = report_of(result)
    assert report["data"]["input_verdict"] == "CERTIFIED-UP-TO-D"
    assert report["data"]["verdict"] == "CERTIFIED-UP-TO-D"
    assert report["data"]["augmented"] is True


def test_retract_with_broken_section(run):
    result = run("retract", "{data}/broken_section.ret", "-D", "4", "-n", "2")
    assert result.exit_code == 1
    assert "✖ FAIL" in result.output


def test_missing_input_file(run):
    result = run("retract", "{data}/no_such_file.ret")
    assert result.exit_code == 2


# -----------------------------------------------------------------------------
# verify
# -----------------------------------------------------------------------------

def test_verify_single_fixture(run):
    result = run("verify", "--fixture", "lemma3", "--seed", "11")
    assert result.exit_code == 0, result.output
    assert "✔ OK" in result.output
    assert "[lemma3]" in result.output
    assert "seed=11" in result.output


# -----------------------------------------------------------------------------
# settings
# -----------------------------------------------------------------------------

def test_settings_path(run, config_dir):
    result = run("settings", "path")
    assert result.exit_code == 0
    assert result.stdout.strip() == str(config_dir / "config.toml")


def test_settings_view(run):
    result = run("settings", "view")
    assert result.exit_code == 0
    assert "[engine]" in result.output
    assert "degree_bound = 6" in result.output


def test_settings_set(run, config_dir):
    result = run("settings", "set", "engine", "hom_bound", "5")
    assert result.exit_code == 0, result.output
    assert "hom_bound = 5" in (config_dir / "config.toml").read_text(encoding="utf-8")


def test_settings_set_unknown_key(run):
    result = run("settings", "set", "engine", "colour", "blue")
    assert result.exit_code == 1
    assert "Unknown key" in result.output
