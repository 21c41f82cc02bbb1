#!/usr/bin/env python3
"""Run every subcommand with --format json and validate against the shipped schema."""
import json
import subprocess
import sys

import jsonschema

RUNS = [
    ["propagator", "--n-sites", "8", "--p", "1", "--q", "4", "--mode", "both"],
    ["evolve", "--n-qubits", "4", "--steps", "3", "--potential", "cosine"],
    ["trajectory", "--n-qubits", "4", "--steps", "3"],
    ["phase-map", "--source", "propagator", "--n-qubits", "3", "--k-max", "4"],
    ["gauss-sum", "--q", "3", "--p", "2"],
    ["theta", "--xi", "0.25"],
    ["qubit", "--mode", "lightcone", "--tau", "2", "--dj-max", "4"],
    ["qubit", "--mode", "direct", "--n-sites", "16", "--tau", "0.5", "--dj-max", "2"],
]


def main() -> int:
    exe, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in RUNS:
        proc = subprocess.run([exe, "--format", "json", *args], capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        doc = json.loads(proc.stdout)
        errors = list(validator.iter_errors(doc))
        widths = {len(r) for r in doc["rows"]}
        if errors or widths - {len(doc["columns"])}:
            print(f"FAIL {' '.join(args)}: {errors[:1] or 'ragged rows'}")
            failures += 1
        else:
            print(f"ok   {' '.join(args)} ({len(doc['rows'])} rows)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
