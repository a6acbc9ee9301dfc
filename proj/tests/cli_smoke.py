"""Smoke tests for the renyi-sharp executable: python3 cli_smoke.py <binary>."""

import csv
import io
import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
failures = []


def run(*args, env=None):
    p = subprocess.run([BIN, *args], capture_output=True, text=True, env=env)
    return p.returncode, p.stdout, p.stderr


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def check(name, cond, info=""):
    print(("ok   " if cond else "FAIL ") + name + (f"  [{info}]" if info and not cond else ""))
    if not cond:
        failures.append(name)


# Entangled family at alpha 3/2 against the reference table.
reference = {
    "1e-05": (0.001979612414616, 0.064948649461560),
    "0.000965195713735": (0.039306255352663, 0.327500956788360),
    "0.012223047153898": (0.190081968858065, 0.670575651286053),
    "0.093160276581255": (0.576168429788131, 0.949099672925276),
    "0.199526231496888": (0.801956430936513, 0.993528519561780),
}
code, out, err = run("state-div", "--epsilon", ",".join(reference), "--alpha", "1.5", "--bits", "10")
check("state-div family exit 0", code == 0, err)
for r in rows(out):
    sand, sharp = reference[r["epsilon"]]
    check(f"family row {r['epsilon']}",
          abs(float(r["D_sharp_hi"]) - sharp) <= 1e-2
          and abs(float(r["D_sandwiched"]) - sand) <= 1e-6
          and abs(float(r["D_geometric"]) - 1.0) <= 1e-8
          and r["status"] == "Optimal", str(r))

with tempfile.TemporaryDirectory() as tmp:
    def write(name, obj):
        path = os.path.join(tmp, name)
        with open(path, "w") as f:
            f.write(obj if isinstance(obj, str) else json.dumps(obj))
        return path

    def diag(vals):
        n = len(vals)
        return {"dim": n, "entries": [[vals[i], 0.0] if i == j else [0.0, 0.0]
                                      for i in range(n) for j in range(n)]}

    r2 = write("r2.json", diag([0.3, 0.7]))
    r3 = write("r3.json", diag([0.2, 0.3, 0.5]))
    bad = write("bad.json", '{"dim": 2,\n "entries": [[1,0] [0,0]]}\n')

    code, out, _ = run("state-div", "--rho", r2, "--sigma", r2, "--alphas", "1.5,2")
    ok = code == 0 and all(abs(float(r[k])) < 1e-6 for r in rows(out)
                           for k in ("D_sharp_lo", "D_sharp_hi", "D_sandwiched", "D_geometric", "D_max"))
    check("rho = sigma gives zeros", ok, out)

    code, _, err = run("state-div", "--rho", r2, "--sigma", r3)
    check("dimension mismatch exits 1", code == 1 and "DimensionMismatch" in err, err)

    code, _, err = run("state-div", "--rho", bad, "--sigma", r2)
    check("parse error carries line:col", code == 1 and "bad.json:2:" in err, err)

    code, _, _ = run("state-div", "--rho", r2, "--sigma", r2, "--alpha", "1.0000001")
    check("alpha too close to 1 exits 1", code == 1)
    code, _, _ = run("state-div", "--rho", r2, "--sigma", r2, "--bits", "15")
    check("bits out of range exits 1", code == 1)
    code, _, _ = run("state-div", "--rho", r2, "--sigma", r2, "--tol", "1e-3")
    check("tol out of range exits 1", code == 1)

    code, out, _ = run("state-div", "--rho", r2, "--sigma", r2, "--json")
    check("json mirror", code == 0 and json.loads(out)[0]["status"] == "Optimal", out)

    out_path = os.path.join(tmp, "o.csv")
    code, _, _ = run("state-div", "--rho", r2, "--sigma", r2, "--out", out_path)
    check("--out writes file", code == 0 and open(out_path).read().startswith("alpha,"))

code, out, err = run("capacity", "--channel", "ad", "--gammas", "0,0.5,1", "--alphas", "1.1:2.0:0.1")
expect = [1.0, 0.548461571846658, 0.0]
vals = [float(r["bound"]) for r in rows(out)]
check("capacity reference rows", code == 0 and len(vals) == 3
      and all(abs(a - b) <= 1e-2 for a, b in zip(vals, expect)), out + err)

code, out, _ = run("hierarchy", "--channel", "ad:0.3", "--reference", "ad:0.3", "--m", "1", "--alpha", "2")
check("hierarchy N = M gives upper 0", code == 0 and abs(float(rows(out)[0]["upper"])) < 1e-6, out)

code, out, _ = run("discrim", "--channel", "ad:0.3", "--reference", "depol:0.5", "--r", "0,0.1", "--alpha", "2")
check("discrim below the bound gives zero exponent",
      code == 0 and all(float(r["exponent"]) == 0.0 for r in rows(out)), out)

code, out, _ = run("rate-bound", "--channel", "ad:0.3", "--epsilon", "0.5", "--n", "10", "--alpha", "2")
check("rate-bound row", code == 0 and rows(out)[0]["status"] == "Optimal", out)

code, _, err = run("hierarchy", "--channel", "identity:2", "--reference", "depol:1", "--m", "2",
                   "--alpha", "2", "--size-budget", "100")
check("size budget exits 3", code == 3 and "SizeBudget" in err, err)

a = run("selftest", "--suite", "ordering", "--seed", "7")
b = run("selftest", "--suite", "ordering", "--seed", "7")
report = json.loads(a[1])
check("selftest filter runs one suite", a[0] == 0 and [s["name"] for s in report["suites"]] == ["ordering"], a[1])
check("selftest deterministic", a[1] == b[1])

code, _, _ = run("selftest", "--suite", "nope")
check("unknown suite exits 1", code == 1)

env = dict(os.environ, RENYI_SHARP_LOG="info")
code, _, err = run("selftest", "--suite", "pinching", env=env)
check("log level from environment", code == 0 and "running suite pinching" in err, err)

sys.exit(1 if failures else 0)
