"""Recompute the canonical term lists stored next to each transcribed expression.

The human-readable strings in the golden files are the source; run this after
editing them.  Usage: python tools/refresh_golden_terms.py [golden_dir]
"""
import json
import sys
from pathlib import Path

from fuchsgap import expr as fexpr
from fuchsgap.serialize import to_terms

FIELDS = ("condition", "factor", "psi", "nu2", "w2")


def refresh(path: Path):
    data = json.loads(path.read_text())
    data["condition_terms"] = to_terms(fexpr.parse(data["condition"]))
    for br in data["branches"]:
        for key in FIELDS[1:]:
            if key in br:
                br[f"{key}_terms"] = to_terms(fexpr.parse(br[key]))
    path.write_text(json.dumps(data, indent=1) + "\n")


if __name__ == "__main__":
    root = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parents[1] / "src/fuchsgap/data/golden"
    for p in sorted(root.glob("*.json")):
        refresh(p)
        print("refreshed", p.name)
