"""Validate a report produced by `hcube verify` against schema/report.schema.json."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    tool, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)

    with tempfile.TemporaryDirectory() as tmp:
        report_path = Path(tmp) / "report.json"
        run = subprocess.run(
            [tool, "verify", "--suite", "spectral", "--report", str(report_path)],
            capture_output=True, text=True)
        if run.returncode != 0:
            print(run.stderr, file=sys.stderr)
            return 1
        report = json.loads(report_path.read_text())

    jsonschema.validate(report, schema, cls=jsonschema.Draft202012Validator)
    if not report["checks"]:
        print("report has no checks", file=sys.stderr)
        return 1

    # The empty report is valid too.
    jsonschema.validate({"checks": []}, schema, cls=jsonschema.Draft202012Validator)
    # A check without a pass flag is not.
    broken = json.loads(json.dumps(report))
    del broken["checks"][0]["pass"]
    try:
        jsonschema.validate(broken, schema, cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError:
        pass
    else:
        print("schema accepted a check without 'pass'", file=sys.stderr)
        return 1

    print(f"{len(report['checks'])} checks validated")
    return 0


if __name__ == "__main__":
    sys.exit(main())
