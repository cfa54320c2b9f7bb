"""Rewrite tests/golden/<name>.json from the command lines in tests/golden/cases.json.

Run after an intentional change to report contents, then review the diff.
"""

import contextlib
import io
import json
from pathlib import Path

from saletan.cli import run
from saletan.io import dumps, normalize_report

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main() -> None:
    cases = json.loads((GOLDEN / "cases.json").read_text())
    for name, argv in cases.items():
        with contextlib.redirect_stdout(io.StringIO()):
            report, code = run(argv)
        if report is None:
            raise SystemExit(f"{name}: command failed with exit code {code}")
        (GOLDEN / f"{name}.json").write_text(dumps(normalize_report(report)))
        print(f"wrote {name}.json (exit {code})")


if __name__ == "__main__":
    main()
