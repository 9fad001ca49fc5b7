#!/usr/bin/env python3
"""End-to-end checks of the erw command-line tool and its JSON schemas.

Usage: cli_test.py <path-to-erw> <schemas-dir>
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

CLI = sys.argv[1]
SCHEMAS = Path(sys.argv[2])
failures = []


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def run_json(schema_name, *args):
    res = run(*args)
    check(res.returncode == 0, f"{' '.join(args)} exits 0 (stderr: {res.stderr.strip()[:200]})")
    doc = json.loads(res.stdout)
    try:
        jsonschema.validate(doc, schema(schema_name))
        check(True, f"{args[0]} output validates against {schema_name}")
    except jsonschema.ValidationError as e:
        check(False, f"{args[0]} output validates against {schema_name}: {e.message}")
    manifest = json.loads(res.stderr.strip().splitlines()[-1])
    jsonschema.validate(manifest, schema("manifest"))
    return doc


# speed
doc = run_json("speed", "speed", "--p0", "0.8", "--p1", "0.9")
check(doc["v_star"] == 0.75 and doc["v_star_exact"] == "3/4", "speed (0.8,0.9) = 0.75")
doc = run_json("speed", "speed", "--p0", "0.8", "--p1", "0.8")
check(abs(doc["v_star"] - 0.6) < 1e-15 and doc["v_star_exact"] == "3/5", "speed (0.8,0.8) = 0.6")
res = run("speed", "--p0", "0.4", "--p1", "0.9")
check(res.returncode == 2 and "1/2" in res.stderr, "speed p0 = 0.4 exits 2 naming the invariant")
check(run("speed", "--p0", "abc", "--p1", "0.9").returncode == 2, "malformed number exits 2")
check(run("speed", "--bogus").returncode == 2, "unknown flag exits 2")
doc = run_json("speed", "speed", "--p0", "0.8", "--p1", "0.9", "--both", "--steps", "20000", "--replicas", "4")
check("z_score" in doc and "mc" in doc, "speed --both reports MC and z-score")

# delta / classify
doc = run_json("delta", "delta", "--M", "3", "--p", "0.85")
check(doc["delta"] == "21/10", "delta(3, 0.85) = 21/10")
doc = run_json("delta", "delta", "--cookies", ",".join(["697/1100"] * 11))
check(doc["delta"] == "147/50", "delta(11, 697/1100) = 147/50")
doc = run_json("classify", "classify", "--M", "3", "--p", "0.85")
check(doc["class"] == "transient_right_positive_speed", "classify (3, 0.85)")
doc = run_json("classify", "classify", "--cookies", "0.75,0.75")
check(doc["class"] == "recurrent_zero_speed", "classify delta = 1 is recurrent")

# series and generating function
doc = run_json("series_result", "pi", "--p0", "0.8", "--p1", "0.9", "--which", "0", "--tol", "1e-10")
check(doc["method"] == "product_A2" and doc["tail_bound"] < 1e-10, "pi --which 0")
doc = run_json("pi1", "pi", "--p0", "0.8", "--p1", "0.9", "--which", "1", "--tol", "1e-12")
check(doc["variant_a"]["converged"] is False and doc["variant_b"]["tail_bound"] < 1e-10, "pi --which 1 variants")
doc = run_json("pgf", "pgf", "--p0", "0.8", "--p1", "0.9", "--s", "0,1", "--derivative")
check(doc["evaluations"][1]["value"] == 1.0, "pgf G(1) = 1")
check(abs(doc["derivative_at_one"] - 1 / 6) < 1e-4, "pgf G'(1) near 1/6")

# simulation-backed commands, small sizes
doc = run_json("coupling", "coupling", "--M", "1", "--p", "0.9", "--p0", "0.8", "--paths", "50", "--steps", "2000")
check(doc["violations"] == 0 and doc["N"] == 4, "coupling has no violations")
doc = run_json("uz", "uz", "--n", "0", "--p0", "0.8", "--p1", "0.9", "--samples", "200")
check(doc["marginal_tv"] == [0.0], "uz --n 0 gives TV 0")
doc = run_json("decomp", "decomp", "--p0", "0.8", "--p1", "0.9", "--k", "3", "--samples", "20000",
               "--threshold", "0.05")
check(doc["conventions"][0]["convention"] == "A_M+(k-M)", "decomp lists conventions")
doc = run_json("stationary", "stationary", "--p0", "0.8", "--p1", "0.9", "--steps", "100000")
check(abs(doc["mean"] - 1 / 6) < 0.02, "stationary mean near 1/6")
doc = run_json("simulate", "simulate", "--p0", "0.8", "--p1", "0.9", "--steps", "50", "--format", "json")
check(len(doc["positions"]) == 51, "simulate json has steps + 1 positions")

# reproduce
for target in ["corollary45", "prop46", "order-counterexample"]:
    doc = run_json("reproduce", "reproduce", target)
    check(doc["all_match"], f"reproduce {target} matches")
doc = run_json("reproduce", "reproduce", "theorem43-decay", "--steps", "100000", "--replicas", "10")
check(doc["all_match"], "reproduce theorem43-decay matches")

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    # figure3 CSV
    out = tmp / "fig.csv"
    res = run("figure3", "--out", str(out))
    check(res.returncode == 0, "figure3 exits 0")
    lines = out.read_text().splitlines()
    check(lines[0] == "p0,p1,v_star" and len(lines) == 298, "figure3 writes header + 297 rows")
    p0, p1, v = map(float, lines[1].split(","))
    check(abs(v - (2 * p0 - 1) / (2 * p0 - 1 + 2 * (1 - p1))) < 1e-15, "figure3 row matches closed form")
    manifest = json.loads((tmp / "fig.csv.manifest.json").read_text())
    jsonschema.validate(manifest, schema("manifest"))
    check(manifest["command"] == "figure3", "manifest names the command")
    res = run("figure3", "--format", "json")
    jsonschema.validate(json.loads(res.stdout), schema("figure3"))
    check(run("figure3", "--out", str(tmp / "missing" / "x.csv")).returncode == 3, "unwritable path exits 3")

    # replay reproduces byte-identically
    first = tmp / "speed.json"
    res = run("--seed", "7", "speed", "--p0", "0.7", "--p1", "0.8", "--mc", "--steps", "10000", "--replicas", "4",
              "--out", str(first))
    check(res.returncode == 0, "speed --mc with --out exits 0")
    second = tmp / "speed_replay.json"
    res = run("replay", str(tmp / "speed.json.manifest.json"), "--to", str(second))
    check(res.returncode == 0, "replay exits 0")
    check(first.read_bytes() == second.read_bytes(), "replayed output is byte-identical")
    res = run("--seed", "7", "--threads", "3", "speed", "--p0", "0.7", "--p1", "0.8", "--mc", "--steps", "10000",
              "--replicas", "4")
    check(json.loads(res.stdout) == json.loads(first.read_text()), "thread count does not change results")

    # csv of a non-tabular command
    res = run("speed", "--p0", "0.8", "--p1", "0.9", "--format", "csv")
    check(res.stdout.splitlines()[0] == "key,value" and "v_star,0.75" in res.stdout, "speed csv key,value rows")

if failures:
    print(f"{len(failures)} check(s) failed")
    sys.exit(1)
print("all CLI checks passed")
