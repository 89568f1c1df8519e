#!/usr/bin/env python3
# Copyright 2026 fnkit Contributors
# SPDX-License-Identifier: Apache-2.0
"""Checks the fixture corpus against emitted schemas with jsonschema.

Usage: check_corpus.py <fnkit binary> <corpus dir>

For each model kind the schema comes from `fnkit schema --kind <kind>`.
valid/ must conform, invalid/ must not, semantic_invalid/ must conform
(those defects are beyond what the schema can express). Also checks the
built-in validator's exit status for every file, and that each kind has
at least 20 valid and 20 invalid files. Prints one line per mismatch and a
summary; exits 1 on any mismatch.
"""

import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator

MIN_FILES = 20


def main():
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    fnkit, corpus = sys.argv[1], pathlib.Path(sys.argv[2])
    mismatches = 0
    totals = {}
    for kind in ("function", "integration"):
        schema = json.loads(subprocess.run([fnkit, "schema", "--kind", kind], check=True,
                                           capture_output=True, text=True).stdout)
        Draft202012Validator.check_schema(schema)
        validator = Draft202012Validator(schema)
        for label, schema_ok, builtin_ok in (("valid", True, True), ("invalid", False, False),
                                             ("semantic_invalid", True, False)):
            files = sorted((corpus / kind / label).glob("*.json"))
            totals[(kind, label)] = len(files)
            for f in files:
                doc = json.loads(f.read_text())
                got_schema = validator.is_valid(doc)
                rc = subprocess.run([fnkit, "validate", "--kind", kind, str(f)], capture_output=True).returncode
                got_builtin = rc == 0
                if rc not in (0, 1):
                    print(f"{f}: validator exit {rc}")
                    mismatches += 1
                if got_schema != schema_ok:
                    print(f"{f}: schema says {'valid' if got_schema else 'invalid'}, labelled {label}")
                    mismatches += 1
                if got_builtin != builtin_ok:
                    print(f"{f}: built-in says {'valid' if got_builtin else 'invalid'}, labelled {label}")
                    mismatches += 1
    for (kind, label), n in totals.items():
        print(f"{kind} {label}: {n} files")
    for kind in ("function", "integration"):
        rejected = totals[(kind, "invalid")] + totals[(kind, "semantic_invalid")]
        if totals[(kind, "valid")] < MIN_FILES or rejected < MIN_FILES:
            print(f"{kind}: fewer than {MIN_FILES} valid or invalid files")
            mismatches += 1
    print(f"mismatches: {mismatches}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
