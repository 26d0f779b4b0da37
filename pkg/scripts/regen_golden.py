"""Rewrite tests/golden/*.out from tests/golden/cases.json. Review the diff before committing."""
import io
import json
from pathlib import Path

from ncqsde.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def run_case(case: dict) -> tuple:
    argv = [a.replace("{golden}", str(GOLDEN)) for a in case["argv"]]
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue()


if __name__ == "__main__":
    for case in json.loads((GOLDEN / "cases.json").read_text()):
        code, text = run_case(case)
        if code != case["exit"]:
            raise SystemExit(f"{case['name']}: exit {code}, expected {case['exit']}")
        (GOLDEN / f"{case['name']}.out").write_text(text, encoding="utf-8")
        print(f"wrote {case['name']}.out")
