"""
The command line: JSON in, JSON report out
==========================================

Every subcommand reads exact JSON and prints a report whose verdicts set
the exit status (0 ok, 1 a FAIL, 2 bad input).  Here the CLI is driven
in-process; the same commands run from a shell as ``orbitkit ...``.
"""

import json
import tempfile
from pathlib import Path

from orbitkit import catalog, jsonio
from orbitkit.cli import run
from orbitkit.contraction import ContractionFamily
from orbitkit.exactalg import Mat, t

tmp = Path(tempfile.mkdtemp())


def save(name, obj):
    path = tmp / name
    path.write_text(json.dumps(obj))
    return str(path)


fs = save("fs.json", jsonio.enc_structure(catalog.f2_quadratic(5)))
a4 = save("a4.json", jsonio.enc_structure(catalog.two_dim("a4")))
fam = save("fam.json", jsonio.enc_family(ContractionFamily(Mat.diag([1, t]))))

for argv in (
    ["catalog", "f3:1"],
    ["contract", fs, fam, "--target", a4],
    ["qf", "represents", save("q.json", {"n": 2, "gram": [["1", "0"], ["0", "1"]]}),
     save("qp.json", {"n": 2, "gram": [["3", "0"], ["0", "0"]]})],
    ["catalog", "split3:0"],
):
    code, text = run(argv)
    report = json.loads(text)
    shown = report.get("verdicts") or report
    print(f"$ orbitkit {' '.join(Path(a).name if a.startswith(str(tmp)) else a for a in argv)}")
    print(f"  exit {code}: {shown}\n")
