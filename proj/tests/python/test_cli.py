"""End-to-end CLI tests: exit codes, golden replay of manifests, byte-stable
outputs."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("LUBA_CLI")
DATA = os.environ.get("LUBA_DATA_DIR")

pytestmark = pytest.mark.skipif(
    not CLI or not os.path.exists(CLI), reason="LUBA_CLI not set"
)


def run(*args, check=True):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise AssertionError(f"{args} failed ({proc.returncode}): {proc.stderr or proc.stdout}")
    return proc


def test_eq_two_bidder_stdout_and_exit_codes():
    proc = run("eq", "two-bidder", "--v", "4", "--c", "1")
    assert "N = 2" in proc.stdout
    for needle in ("0.333333", "0.500000", "0.166667"):
        assert needle in proc.stdout

    degenerate = run("eq", "two-bidder", "--v", "2", "--c", "1", check=False)
    assert degenerate.returncode == 1

    usage = run("eq", "two-bidder", check=False)
    assert usage.returncode == 2


def test_eq_noneq():
    proc = run("eq", "noneq", "--k", "3", "--v", "100", "--c", "2")
    assert "2.020408" in proc.stdout
    assert "2.250000" in proc.stdout
    assert "no monotone symmetric equilibrium" in proc.stdout


def test_eq_verify(tmp_path):
    profile = [
        [{"set": [1], "p": 1.0}],
        [{"set": [1, 2], "p": 0.5}, {"set": [], "p": 0.5}],
    ]
    path = tmp_path / "profile.json"
    path.write_text(json.dumps(profile))
    proc = run("eq", "verify", "--profile", str(path), "--v", "4", "--c", "1",
               "--max-bid", "5", "--max-set", "5")
    assert "equilibrium within eps" in proc.stdout

    bad = [[{"set": [1], "p": 1.0}], [{"set": [1], "p": 1.0}]]
    path.write_text(json.dumps(bad))
    proc = run("eq", "verify", "--profile", str(path), "--v", "4", "--c", "1", check=False)
    assert proc.returncode == 1
    assert "NOT an equilibrium" in proc.stdout


def test_gen_backtest_round_trip_and_manifest_replay(tmp_path):
    out1 = tmp_path / "a" / "records.jsonl"
    out2 = tmp_path / "b" / "records.jsonl"
    out1.parent.mkdir()
    out2.parent.mkdir()

    args = ["gen", "synthetic", "--n", "20", "--v", "500", "--c", "0.5",
            "--alpha", "2", "--seed", "42"]
    run(*args, "--out", str(out1))
    manifest = json.loads((tmp_path / "a" / "records.jsonl.manifest.json").read_text())
    assert manifest["command"] == "gen synthetic"
    assert manifest["seed"] == 42
    assert manifest["tool_version"]

    # replaying the manifest's parameters reproduces the output byte for byte
    replay = ["gen", "synthetic",
              "--n", manifest["parameters"]["n"],
              "--v", manifest["parameters"]["v"],
              "--c", manifest["parameters"]["c"],
              "--alpha", manifest["parameters"]["alpha"],
              "--seed", manifest["parameters"]["seed"],
              "--out", str(out2)]
    run(*replay)
    assert out1.read_bytes() == out2.read_bytes()

    # grid over the generated records, twice, byte-identical + digested input
    grid1 = tmp_path / "grid1.csv"
    grid2 = tmp_path / "grid2.csv"
    run("backtest", "grid", "--records", str(out1), "--x-grid", "0.1:0.5:0.1",
        "--y-grid", "0.2:0.6:0.1", "--out", str(grid1))
    run("backtest", "grid", "--records", str(out1), "--x-grid", "0.1:0.5:0.1",
        "--y-grid", "0.2:0.6:0.1", "--out", str(grid2))
    assert grid1.read_bytes() == grid2.read_bytes()
    assert grid1.read_text().splitlines()[0] == "x_pct,y_pct,performance,wins,auctions"

    grid_manifest = json.loads((tmp_path / "grid1.csv.manifest.json").read_text())
    assert grid_manifest["input_digests"][0]["digest"].startswith("fnv1a64:")

    # fees-only denominator never lowers the ratio (smaller or equal spend)
    fees = tmp_path / "grid_fees.csv"
    run("backtest", "grid", "--records", str(out1), "--x-grid", "0.1:0.5:0.1",
        "--y-grid", "0.2:0.6:0.1", "--denominator", "fees", "--out", str(fees))
    assert fees.read_text().splitlines()[0] == "x_pct,y_pct,performance,wins,auctions"

    proc = run("backtest", "stats", "--records", str(out1), "--cdf", "--z")
    assert "seller_profit_eur mean" in proc.stdout
    assert "ratio_pct,cum_fraction" in proc.stdout
    assert "fraction_below_2pct" in proc.stdout
    assert "z_quantile_0.95" in proc.stdout

    proc = run("backtest", "stats", "--records", str(out1), "--hist", "1:5")
    assert "integer_cents,count" in proc.stdout

    proc = run("backtest", "inject", "--records", str(out1), "--x", "0", "--y", "2",
               "--per-auction")
    assert "auctions = 20" in proc.stdout
    assert "auction_id,won,winning_bid_after_cents,fee_eur,price_eur" in proc.stdout


def test_gen_with_block_and_eq_out(tmp_path):
    out = tmp_path / "blocked.jsonl"
    run("gen", "synthetic", "--n", "3", "--v", "500", "--c", "0.5", "--alpha", "2",
        "--block", "0.1,0.9", "--seed", "5", "--out", str(out))
    for line in out.read_text().splitlines():
        counts = dict(map(tuple, json.loads(line)["counts"]))
        assert all(counts.get(j, 0) >= 1 for j in range(50, 451))

    table = tmp_path / "eq.csv"
    run("eq", "two-bidder", "--v", "10", "--c", "1", "--out", str(table))
    lines = table.read_text().splitlines()
    assert lines[0] == "prefix_len,probability"
    assert len(lines) == 8  # header + empty set + prefixes 1..6
    assert (tmp_path / "eq.csv.manifest.json").exists()


def test_sim_behavioral(tmp_path):
    out = tmp_path / "report.csv"
    proc = run("sim", "behavioral", "--v", "500", "--c", "0.5", "--gamma", "4",
               "--trials", "200", "--seed", "3", "--out", str(out))
    assert "win_rate" in proc.stdout
    lines = out.read_text().splitlines()
    assert lines[0] == "key,value"
    assert any(line.startswith("depth,126") for line in lines)
    assert (tmp_path / "report.csv.manifest.json").exists()

    bad = run("sim", "behavioral", "--v", "500", "--c", "0.5", "--trials", "10", check=False)
    assert bad.returncode == 1  # neither --gamma nor --optimize

    proc = run("sim", "behavioral", "--v", "500", "--c", "0.5", "--optimize",
               "--trials", "50", "--seed", "2")
    assert "gamma* =" in proc.stdout
    assert "foc residual" in proc.stdout


def test_dyn_run(tmp_path):
    agents = [
        {"kind": "noisy_poisson", "alpha": 2.0},
        {"kind": "block", "x_pct": 0.0, "y_pct": 1.0},
    ]
    spec = tmp_path / "agents.json"
    spec.write_text(json.dumps(agents))
    out1 = tmp_path / "t1.jsonl"
    out2 = tmp_path / "t2.jsonl"
    for out in (out1, out2):
        proc = run("dyn", "run", "--agents", str(spec), "--v", "50", "--c", "0.5",
                   "--horizon", "6", "--seed", "9", "--out", str(out))
        assert "events =" in proc.stdout
    assert out1.read_bytes() == out2.read_bytes()

    lines = out1.read_text().splitlines()
    assert all(json.loads(line) for line in lines)
    footer = json.loads(lines[-1])
    assert "outcome" in footer
    assert "agent_money_cents" in footer
