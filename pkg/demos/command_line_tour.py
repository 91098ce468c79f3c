"""The command-line front end, driven from Python.

Same as running ``seqeffect <subcommand> ...`` in a shell.
"""

import json
import tempfile
from pathlib import Path

from seqeffect.cli import main

problems = Path(__file__).resolve().parent.parent / "problems"

main(["entropy", str(problems / "example_2_3.json"), "A", "B"])
print()
main(["entropy", str(problems / "fuzzy_grades.json"), "low_high", "three_way"])
print()

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "refined.json"
    main(["refine", str(problems / "boolean_blocks.json"), "A", "B", "--out", str(out)])
    print(json.loads(out.read_text())["partitions"]["AoB"])
    print()

    report = Path(tmp) / "report.json"
    code = main(["check-theorem", "--dim", "2", "--trials", "100", "--seed", "7", "--json", str(report)])
    print("exit code", code)
    print(json.dumps(json.loads(report.read_text())["verdicts"], indent=1))
    print()

main(["example-2-3"])
