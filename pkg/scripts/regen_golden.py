"""Rewrite fixtures/golden/*.txt from the current code.  Review the diff before committing."""

import io
import json
import os
import sys

from logjets.cli import run

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, "fixtures")


def main() -> int:
    with open(os.path.join(ROOT, "golden", "cases.json")) as fh:
        cases = json.load(fh)
    bad = 0
    for case in cases:
        argv = list(case["argv"])
        argv[1] = os.path.join(ROOT, argv[1])
        out, err = io.StringIO(), io.StringIO()
        code = run(argv, out, err)
        if code != case["exit"]:
            print(f"{case['id']}: exit {code}, expected {case['exit']}", file=sys.stderr)
            bad += 1
        with open(os.path.join(ROOT, "golden", case["id"] + ".txt"), "w") as fh:
            fh.write(out.getvalue() + err.getvalue())
    print(f"{len(cases)} cases written, {bad} unexpected exit codes")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
