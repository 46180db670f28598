#!/usr/bin/env python3
"""Runs every CLI subcommand and validates its JSON output against the
shipped schema files."""
import json
import pathlib
import subprocess
import sys

import jsonschema

ROOT = pathlib.Path(__file__).resolve().parent.parent
CLI = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "build" / "graphsw")
ER = str(ROOT / "configs" / "er-small.cfg")
CM = str(ROOT / "configs" / "cm-small.cfg")


def run(*args):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, check=True)
    return proc.stdout


def schema(name):
    with open(ROOT / "schemas" / f"{name}.schema.json") as fh:
        return json.load(fh)


def validate(name, doc):
    jsonschema.validate(doc, schema(name))
    print(f"ok: {name}")


def main():
    validate("sample", json.loads(run("sample", "--config", ER, "--n", "6", "--seed", "1")))
    validate("sample", json.loads(run("sample", "--config", CM, "--n", "8", "--seed", "1")))
    validate("entropy", json.loads(run("entropy", "--config", ER)))
    validate("entropy", json.loads(run("entropy", "--config", CM)))
    validate(
        "rate-region",
        json.loads(run("rate-region", "--config", ER, "--tuple", "0.4,0.8,0.4,0.8")),
    )
    validate(
        "lwc-dist",
        json.loads(run("lwc-dist", "--config", ER, "--n", "50", "--depth", "1", "--seed", "1")),
    )
    lines = run(
        "codec-sim", "--config", ER, "--n", "5", "--tuple", "0,1.0,0,1.0", "--trials", "5",
        "--seed", "2",
    ).strip().splitlines()
    assert len(lines) == 6, f"expected 5 trial lines + summary, got {len(lines)}"
    sim_schema = schema("codec-sim")
    for line in lines:
        jsonschema.validate(json.loads(line), sim_schema)
    print("ok: codec-sim")
    validate("verify", json.loads(run("verify", "--suite", "all")))
    print("all schema validations passed")


if __name__ == "__main__":
    main()
