#!/usr/bin/env python3
# Copyright 2026 The NeuroPod Simulator Authors
# SPDX-License-Identifier: Apache-2.0
"""Validates the protocol fixtures against schemas/*.schema.json.

Every file in */valid and events/ must pass; every file in */invalid and
events_invalid/ must fail. Besides the schema, snapshots must report a pose
whose t_sim_ms equals their tick (a cross-field rule JSON Schema cannot say).
"""
import json
import pathlib
import sys

try:
    import jsonschema
    from referencing import Registry, Resource
except ImportError:
    print("jsonschema not installed, skipping")
    sys.exit(77)

ROOT = pathlib.Path(__file__).resolve().parents[1]
SCHEMAS = ROOT / "schemas"
FIXTURES = ROOT / "tests" / "fixtures"


def load_schemas():
    docs = {p.name: json.loads(p.read_text()) for p in SCHEMAS.glob("*.schema.json")}
    registry = Registry()
    for name, doc in docs.items():
        res = Resource.from_contents(doc)
        registry = registry.with_resource(doc["$id"], res).with_resource(name, res)
    make = lambda name: jsonschema.Draft202012Validator(docs[name], registry=registry)
    return make("command.schema.json"), make("event.schema.json")


def problems(validator, text, is_event):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        return [f"not JSON: {e}"]
    errs = [e.message for e in validator.iter_errors(doc)]
    if is_event and not errs and doc.get("type") == "snapshot":
        if doc["pose"]["t_sim_ms"] != doc["tick"]:
            errs.append("snapshot pose tick differs from its tick")
    return errs


def main():
    command, event = load_schemas()
    jsonschema.Draft202012Validator.check_schema(command.schema)
    jsonschema.Draft202012Validator.check_schema(event.schema)
    cases = [
        (command, False, FIXTURES / "commands" / "valid", True),
        (command, False, FIXTURES / "commands" / "invalid", False),
        (event, True, FIXTURES / "events", True),
        (event, True, FIXTURES / "events_invalid", False),
    ]
    failures = 0
    total = 0
    for validator, is_event, folder, expect_ok in cases:
        files = sorted(folder.glob("*.json"))
        if not files:
            print(f"FAIL no fixtures in {folder}")
            failures += 1
        for f in files:
            total += 1
            errs = problems(validator, f.read_text(), is_event)
            if (not errs) != expect_ok:
                failures += 1
                what = "; ".join(errs) if errs else "accepted"
                print(f"FAIL {f.relative_to(ROOT)}: {what}")
    print(f"{total - failures}/{total} fixtures behave as expected")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
