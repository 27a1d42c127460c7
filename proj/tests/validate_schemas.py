"""Validate every JSON golden output against the schema for its kind."""

import json
import sys
from pathlib import Path

import jsonschema


def kind_of(doc):
    if "kind" in doc:
        return doc["kind"]
    if "x_vars" in doc:
        return "system"
    return None


def main():
    schema_dir, golden_dir = Path(sys.argv[1]), Path(sys.argv[2])
    schemas = {}
    for path in sorted(schema_dir.glob("*.schema.json")):
        schema = json.loads(path.read_text())
        jsonschema.Draft7Validator.check_schema(schema)
        schemas[path.name.removesuffix(".schema.json")] = jsonschema.Draft7Validator(schema)

    docs = [p for p in sorted(golden_dir.glob("*.out")) if p.read_text().lstrip().startswith("{")]
    docs += sorted(golden_dir.glob("*.system.json"))
    failures, seen = 0, set()
    for path in docs:
        doc = json.loads(path.read_text())
        kind = kind_of(doc)
        if kind not in schemas:
            print(f"FAIL {path.name}: no schema for kind {kind!r}")
            failures += 1
            continue
        seen.add(kind)
        errors = sorted(schemas[kind].iter_errors(doc), key=lambda e: list(e.path))
        for err in errors:
            print(f"FAIL {path.name} [{kind}] at /{'/'.join(map(str, err.path))}: {err.message}")
        failures += bool(errors)
        if not errors:
            print(f"ok   {path.name} [{kind}]")

    for kind in sorted(set(schemas) - seen):
        print(f"FAIL schema {kind} is not exercised by any golden output")
        failures += 1
    print(f"{len(docs)} documents, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
