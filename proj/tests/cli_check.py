"""Runs the modred CLI over the fixtures and validates every JSON report."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

cli, schema_path, fx = sys.argv[1], sys.argv[2], sys.argv[3]
with open(schema_path) as f:
    validator = jsonschema.Draft202012Validator(json.load(f))


def fixture(name):
    return os.path.join(fx, name)


# (arguments, expected exit code, expected error kind or None)
cases = [
    (["bounds", "--which", "theorem1", "--m", "2", "--s", "3", "--d", "2", "--h", "1"], 0, None),
    (["bounds", "--which", "uml", "--eps", "0.5", "--L", "2"], 0, None),
    (["bounds", "--which", "cycle", "--kind", "poly", "--d", "2", "--m", "1", "--k", "2", "--h", "0"], 1, "input"),
    (["iterate", "--system", fixture("dyn_inverse.sys"), "--k", "2"], 0, None),
    (["orbit", "--system", fixture("dyn_square.sys"), "--start", "2", "--p", "5"], 0, None),
    (["orbit", "--system", fixture("dyn_inverse.sys"), "--start", "0"], 0, None),
    (["periodic", "--system", fixture("dyn_square.sys"), "--k", "2", "--p", "5"], 0, None),
    (["--budget", "10", "periodic", "--system", fixture("dyn_inverse.sys"), "--k", "2", "--p", "5"], 2, "budget"),
    (["badprimes", "--system", fixture("sys_t0_x2p1_xm2.sys"), "--pmax", "100"], 0, None),
    (["eliminant", "--system", fixture("sys_x2m1.sys")], 0, None),
    (["eliminant", "--system", fixture("dyn_inverse.sys")], 1, "input"),
    (["nullsatz", "--system", fixture("sys_circle_hyperbola.sys")], 0, None),
    (["visits", "--system", fixture("dyn_square.sys"), "--variety", fixture("var_point_1d.sys"),
      "--p", "5", "--start", "2", "--N", "5"], 0, None),
    (["intersect", "--system", fixture("dyn_square.sys"), "--system2", fixture("dyn_quadratic_c.sys"),
      "--p", "7", "--u", "3", "--v", "3", "--N", "10"], 0, None),
    (["gaplemma", "--indices", fixture("gaps_sample.idx")], 0, None),
    (["escape", "--system", fixture("dyn_square.sys"), "--variety", fixture("var_zero_1d.sys"), "--kmax", "2"], 0, None),
    (["uml", "--system", fixture("dyn_affine.sys"), "--variety", fixture("var_zero_1d.sys"), "--pmax", "30"], 0, None),
    (["gen", "triangular", "--m", "2"], 0, None),
    (["gen", "monomial-escape", "--s", "1"], 0, None),
    (["periodic", "--system", fixture("missing.sys"), "--k", "1", "--p", "5"], 1, "input"),
]

failures = 0


def check(cond, what):
    global failures
    if not cond:
        failures += 1
        print("FAIL", what)


for args, code, kind in cases:
    proc = subprocess.run([cli, "--json", *args], capture_output=True, text=True)
    label = " ".join(args)
    check(proc.returncode == code, f"{label}: exit {proc.returncode}, wanted {code}")
    try:
        report = json.loads(proc.stdout)
    except json.JSONDecodeError:
        check(False, f"{label}: stdout is not JSON")
        continue
    errors = sorted(validator.iter_errors(report), key=str)
    check(not errors, f"{label}: schema: {errors[0].message if errors else ''}")
    if kind is None:
        check("error" not in report and report["result"] is not None, f"{label}: unexpected error")
    else:
        check(report.get("error", {}).get("kind") == kind, f"{label}: wanted error kind {kind}")

# text mode and --out
proc = subprocess.run([cli, "periodic", "--system", fixture("dyn_square.sys"), "--k", "2", "--p", "5"],
                      capture_output=True, text=True)
check(proc.returncode == 0 and proc.stdout.startswith("periodic"), "text mode output")
with tempfile.TemporaryDirectory() as tmp:
    out = os.path.join(tmp, "r.json")
    proc = subprocess.run([cli, "--json", "--out", out, "gaplemma", "--indices", fixture("gaps_sample.idx")],
                          capture_output=True, text=True)
    check(proc.returncode == 0 and os.path.exists(out), "--out writes the report")
    if os.path.exists(out):
        with open(out) as f:
            check(not list(validator.iter_errors(json.load(f))), "--out report matches the schema")

# usage errors exit 1
check(subprocess.run([cli], capture_output=True).returncode == 1, "missing subcommand exits 1")
check(subprocess.run([cli, "periodic", "--bogus"], capture_output=True).returncode == 1, "unknown flag exits 1")

print(f"{len(cases)} commands checked, {failures} failures")
sys.exit(1 if failures else 0)
