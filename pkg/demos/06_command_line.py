"""
The command line
================

The same pipeline is available as ``awgraph`` (or ``python3 -m awgraph``).
Each report is one JSON document per line; the exit code summarizes the
outcome (0 ok, 1 input, 2 not distance-regular, 3 not Q-polynomial,
4 not q-Racah, 5 non-thin, 6 residual failure).
"""

import io
import json

from awgraph.cli import run

for argv in (
    ["spectrum", "--family", "crown", "--size", "5"],
    ["modules", "--family", "cycle", "--size", "6", "--vertex", "2"],
    ["analyze", "--family", "hypercube", "--size", "4"],
):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    print("$ awgraph", " ".join(argv), f"  -> exit {code}")
    for line in out.getvalue().splitlines():
        report = json.loads(line)
        print("  status:", report["status"], " keys:", ", ".join(list(report)[:8]), "...")
    if err.getvalue():
        print("  stderr:", err.getvalue().strip().splitlines()[0])

# text rendering of the full analysis
out = io.StringIO()
run(["analyze", "--family", "cycle", "--size", "6", "--format", "text"], out, io.StringIO())
print(out.getvalue())
