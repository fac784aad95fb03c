#!/usr/bin/env python3
"""Regenerate goldens/*.out from goldens/manifest.json using a built expfield binary."""
import argparse
import json
import pathlib
import subprocess
import sys

root = pathlib.Path(__file__).resolve().parent.parent
parser = argparse.ArgumentParser()
parser.add_argument("--binary", default=str(root / "build" / "tools" / "expfield"))
parser.add_argument("--check", action="store_true", help="compare instead of writing")
parser.add_argument("--schema", action="store_true", help="also validate JSON reports against schemas/report.schema.json")
opts = parser.parse_args()

validator = None
if opts.schema:
    import jsonschema

    schema = json.loads((root / "schemas" / "report.schema.json").read_text())
    validator = jsonschema.Draft202012Validator(schema)

manifest = json.loads((root / "goldens" / "manifest.json").read_text())
stale = 0
for entry in manifest:
    run = subprocess.run([opts.binary, *entry["args"]], cwd=root, capture_output=True, text=True)
    if run.returncode != entry["exit"]:
        print(f"{entry['name']}: exit {run.returncode}, manifest says {entry['exit']}", file=sys.stderr)
        stale += 1
    if validator is not None and run.stdout.startswith("{"):
        for error in validator.iter_errors(json.loads(run.stdout)):
            print(f"{entry['name']}: schema: {error.message}", file=sys.stderr)
            stale += 1
    path = root / "goldens" / f"{entry['name']}.out"
    if opts.check:
        if not path.exists() or path.read_text() != run.stdout:
            print(f"{entry['name']}: differs", file=sys.stderr)
            stale += 1
    else:
        path.write_text(run.stdout)
sys.exit(1 if stale else 0)
