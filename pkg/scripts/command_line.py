"""Driving the holotor command line from Python.

Writes a link spec for the t = 4 trefoil, then runs the compute, burau and
verify subcommands in-process and prints their JSON output.
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from artifact.cli import main

SPEC = {
    "strands": 2,
    "word": "1 1 1",
    "colors": [{"kappa": 4}, {"kappa": 4}],
}


def run() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "trefoil.json"
        path.write_text(json.dumps(SPEC))
        for argv in (
            ["compute", "--input", str(path), "--invariant", "torsion"],
            ["burau", "--input", str(path), "--variant", "reduced"],
            ["verify", "schur-weyl", "--trials", "50", "--seed", "7"],
        ):
            print("$ holotor", " ".join(argv))
            print("exit code", main(argv))


if __name__ == "__main__":
    run()
