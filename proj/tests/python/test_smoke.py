import json
import math
import os
import subprocess

import pytest

import tmslab

GOLDEN = (1 + math.sqrt(5)) / 2


def test_catalog():
    names = [name for name, _, _ in tmslab.list_models()]
    for expected in ("golden_mean", "iceberg(M)", "three_spin_ising"):
        assert any(n.startswith(expected.split("(")[0]) for n in names)


def test_model_roundtrip():
    m = tmslab.model("golden_mean", 2)
    assert m["dimension"] == 2
    assert m["alphabet"] == ["0", "1"]


def test_parry_golden_mean():
    mu = tmslab.parry("golden_mean")
    assert abs(mu["lambda"] - GOLDEN) < 1e-12
    assert abs(mu["entropy"] - math.log(GOLDEN)) < 1e-12
    for row in mu["P"]:
        assert abs(sum(row) - 1) < 1e-12
    assert tmslab.uniform_specification_check("golden_mean", 8) < 1e-12


def test_gibbs_markov_conformal():
    mu = tmslab.gibbs_markov("three_symbol", [0.3, -0.2, 1.0])
    assert abs(sum(mu["p"]) - 1) < 1e-12
    assert tmslab.conformality_check_1d("three_symbol", [0.3, -0.2, 1.0], 6) < 1e-10


def test_counts_and_frontier():
    assert tmslab.count_patterns("golden_mean", 2, window=1) == 63
    assert tmslab.frontier_sizes(2, l1=6) == (41, 44)


def test_maltese_and_mho():
    ok, safe = tmslab.check_maltese("iceberg(1)")
    assert ok and safe == ["0"]
    assert tmslab.check_maltese("checkerboard")[0] is False
    rep = tmslab.check_mho("iceberg(1)", window=2, samples=20, seed=3)
    assert rep["verdict"] == "holds_on_sample"
    # On [-1, 1]^2 a center with neighbors of both signs is frozen at 0.
    assert tmslab.check_mho("iceberg(1)", window=1, samples=20, seed=3)["verdict"] == "counterexample"


def test_driver_sample_deterministic():
    a = tmslab.driver_sample("sturmian:0.3", 1000, 5)
    assert a == tmslab.driver_sample("sturmian:0.3", 1000, 5)
    assert set(a) <= {-1, 1}
    assert abs(a.count(-1) / 1000 - 0.3) < 0.01


def test_schema_errors_are_value_errors():
    with pytest.raises(ValueError):
        tmslab.driver_sample("sturmian:2", 10, 1)
    with pytest.raises(ValueError):
        tmslab.parry("no_such_model")


def test_cli_in_process():
    out = tmslab.cli("frontier", "--dim", 2, "--l1", 6)
    assert out["result"]["interior"]["size"] == 41
    code, _, err = tmslab.run_cli(["gibbs", "--model", "iceberg(1)"])
    assert code == 2 and err


@pytest.mark.skipif("TMS_CLI" not in os.environ, reason="TMS_CLI not set")
def test_cli_binary_matches_module():
    args = ["parry", "--model", "golden_mean"]
    proc = subprocess.run([os.environ["TMS_CLI"], *args], capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout) == tmslab.cli(*args)


def test_models_match_the_file_schema():
    jsonschema = pytest.importorskip("jsonschema")
    path = os.path.join(os.path.dirname(__file__), "..", "..", "schema", "model.schema.json")
    with open(path) as f:
        schema = json.load(f)
    for name in ("golden_mean", "iceberg(2)", "beach(1,1,2)", "three_spin_ising", "cycle(4)"):
        jsonschema.validate(tmslab.model(name), schema)
