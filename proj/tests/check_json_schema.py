"""Validate kmut JSON reports against the report schema.

usage: check_json_schema.py KMUT_BINARY SCRIPTS_DIR
"""

import json
import pathlib
import subprocess
import sys

import jsonschema

SCHEMA = {
    "type": "object",
    "required": ["suite", "results", "summary"],
    "properties": {
        "suite": {"type": "string"},
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "status", "expected", "actual", "ref"],
                "properties": {
                    "id": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "error"]},
                    "expected": {"type": ["number", "null"]},
                    "actual": {"type": ["number", "null"]},
                    "ref": {"type": "string"},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["pass", "fail", "error"],
            "properties": {
                "pass": {"type": "integer"},
                "fail": {"type": "integer"},
                "error": {"type": "integer"},
            },
        },
    },
}


def report(binary, *args):
    proc = subprocess.run([binary, *args, "--json"], capture_output=True, text=True, check=False)
    if proc.returncode not in (0, 1):
        raise SystemExit(f"{args}: exit {proc.returncode}\n{proc.stderr}")
    return proc.stdout


def main():
    binary, scripts = sys.argv[1], pathlib.Path(sys.argv[2])
    runs = [("verify",)] + [("run", str(p)) for p in sorted(scripts.glob("*.kmut"))]
    for args in runs:
        first = report(binary, *args)
        if report(binary, *args) != first:
            raise SystemExit(f"{args}: JSON output differs between runs")
        jsonschema.validate(json.loads(first), SCHEMA)
        print("ok", " ".join(args))


if __name__ == "__main__":
    main()
