import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))
import json
import pytest
from click.testing import CliRunner

from fockcrystal.cli import cli
from fockcrystal.domain.models.canonical import CanonicalElement
from fockcrystal.domain.models.crystal import CrystalGraphDocument, EnumerationDocument
from fockcrystal.domain.models.partition import Bipartition
from fockcrystal.domain.models.symbol import Symbol
from fockcrystal.services.export import graph_from_document


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def test_enumerate(runner):
    result = runner.invoke(cli, ["enumerate", "--e", "4", "--charge", "0,1", "--n", "12"])
    assert result.exit_code == 0
    assert "[8|4]" in result.stdout.splitlines()
    assert result.stderr.startswith("count: ")


def test_enumerate_rank_zero(runner):
    result = runner.invoke(cli, ["enumerate", "--e", "2", "--charge", "0,0", "--n", "0"])
    assert result.exit_code == 0
    assert result.stdout == "[-|-]\n"
    assert result.stderr == "count: 1\n"


def test_enumerate_with_flotw_check(runner):
    result = runner.invoke(cli, ["enumerate", "--e", "3", "--charge", "0,2", "--n", "4", "--flotw", "--format", "json"])
    assert result.exit_code == 0
    document = EnumerationDocument.model_validate_json(result.stdout)
    assert document.flotw_agrees is True
    assert document.count == len(document.bipartitions)


def test_enumerate_is_deterministic(runner):
    args = ["enumerate", "--e", "3", "--order", "1,2-", "--n", "5", "--format", "json"]
    assert runner.invoke(cli, args).stdout == runner.invoke(cli, args).stdout


def test_map_worked_examples(runner):
    result = runner.invoke(cli, ["map", "--e", "4", "--from", "0,1", "--to", "0,5", "[8|4]"])
    assert result.exit_code == 0
    assert result.stdout == "[5|7]\n"
    result = runner.invoke(cli, ["map", "--e", "4", "--from", "0,1", "--to", "0,9", "--oracle", "[8|4]"])
    assert result.stdout == "[4|7,1]\n"


def test_map_reads_stdin(runner):
    result = runner.invoke(cli, ["map", "--e", "4", "--from", "0,1", "--to", "1,4"], input="[8|4]\n\n[5|7]\n")
    assert result.exit_code == 0
    assert result.stdout == "[4|8]\n[7|5]\n"


def test_map_json(runner):
    result = runner.invoke(cli, ["map", "--e", "4", "--from", "0,1", "--to", "0,9", "--format", "json", "[8|4]"])
    payload = json.loads(result.stdout)
    assert payload[0]["image"] == "[4|7,1]"
    assert payload[0]["steps"] == ["upsilon", "upsilon"]


def test_map_to_kleshchev_order(runner):
    result = runner.invoke(cli, ["map", "--e", "4", "--from", "0,1", "--to", "0,1-", "--oracle", "[8|4]"])
    assert result.exit_code == 0


def test_plan(runner):
    result = runner.invoke(cli, ["plan", "--e", "4", "--from", "0,1", "--to", "0,1-", "--n", "12"])
    assert result.exit_code == 0
    assert json.loads(result.stdout) == [{"op": "upsilon"}] * 3 + [{"op": "stabilize", "variant": "minus"}]


def test_symbol(runner):
    result = runner.invoke(cli, ["symbol", "--charge", "0,2", "--m", "4", "[2,2,1|3,2]"])
    assert result.exit_code == 0
    assert result.stdout == "0 1 2 3 6 8\n0 2 4 5\n"


def test_symbol_pairs_and_json(runner):
    result = runner.invoke(cli, ["symbol", "--charge", "0,2", "--pairs", "[2,2,1|3,2]"])
    assert result.stdout.splitlines()[-1] == "pairs: (5,1) (4,3)"
    result = runner.invoke(cli, ["symbol", "--charge", "0,2", "--format", "json", "[2,2,1|3,2]"])
    assert Symbol.model_validate_json(result.stdout).top == (8, 6, 3, 2, 1, 0)


def test_canonical(runner):
    result = runner.invoke(cli, ["canonical", "--charge", "0,1", "[8|4]"])
    assert result.exit_code == 0
    assert result.stdout == "b = [8|4] + v·[5|7]\n"
    result = runner.invoke(cli, ["canonical", "--charge", "0,1", "--format", "json", "[8|4]"])
    element = CanonicalElement.model_validate_json(result.stdout)
    assert element.terms[-1].bipartition == Bipartition.parse("[5|7]")


def test_basic_set(runner):
    result = runner.invoke(cli, ["basic-set", "--a", "1", "--b", "1", "--l", "4"])
    assert result.exit_code == 0
    assert result.stdout == "e=4 d=3 p=-1 charge=-1,0\n"


def test_basic_set_listing(runner):
    result = runner.invoke(cli, ["basic-set", "--a", "1", "--b", "1", "--l", "4", "--n", "1"])
    assert result.stdout.splitlines()[1:] == ["[-|1]", "[1|-]"]
    assert result.stderr == "count: 2\n"


def test_basic_set_diagnostic(runner):
    result = runner.invoke(cli, ["basic-set", "--a", "2", "--b", "1", "--l", "4"])
    assert result.exit_code == 3
    assert result.stderr.startswith("error: ")


def test_graph(runner):
    result = runner.invoke(cli, ["graph", "--e", "2", "--charge", "0,0", "--max-rank", "1", "--dot"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0].startswith("digraph")
    assert sum(1 for line in lines if "->" in line) == 1
    assert sum(1 for line in lines if '[label="[' in line) == 2
    result = runner.invoke(cli, ["graph", "--e", "2", "--charge", "0,0", "--max-rank", "2"])
    document = CrystalGraphDocument.model_validate_json(result.stdout)
    assert [len(level) for level in document.levels] == [1, 1, 2]
    adjacency = graph_from_document(document)
    assert sorted(str(b) for b in adjacency[Bipartition.parse("[1|-]")]) == ["[1|1]", "[2|-]"]
    assert '"from"' in result.stdout


@pytest.mark.parametrize("args", [
    ["map", "--e", "4", "--from", "0,1", "--to", "0,5", "[1,2|-]"],
    ["enumerate", "--e", "1", "--charge", "0,0", "--n", "2"],
    ["enumerate", "--e", "3", "--charge", "0,x", "--n", "2"],
    ["map", "--e", "4", "--from", "0,1-", "--to", "0,5", "[8|4]"],
])
def test_argument_errors(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


@pytest.mark.parametrize("args", [
    ["map", "--e", "4", "--from", "0,1", "--to", "0,2", "[8|4]"],
    ["map", "--e", "2", "--from", "0,0", "--to", "0,2", "[1,1|-]"],
    ["symbol", "--charge", "0,0", "--pairs", "[-|1]"],
    ["canonical", "--charge", "0,0", "[-|1]"],
])
def test_domain_errors(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 3
    assert result.stderr.startswith("error: ")


def test_verify(runner):
    result = runner.invoke(cli, ["verify", "all", "--e", "2", "--n", "0..2", "--samples", "20"])
    assert result.exit_code == 0, result.stdout
    assert "main: PASS" in result.stdout


def test_verify_budget(runner):
    result = runner.invoke(cli, ["verify", "flotw", "--e", "2..3", "--n", "0..4", "--budget", "5"])
    assert result.exit_code == 3
