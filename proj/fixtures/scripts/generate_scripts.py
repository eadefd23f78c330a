#!/usr/bin/env python3
"""Builds the simulator scripts for the anxiety fixture straight from its CSVs."""
import csv
import json
import pathlib

here = pathlib.Path(__file__).resolve().parent
pack = here.parent / "anxiety"
structures = [r["id"] for r in csv.DictReader(open(pack / "structures.csv")) if r["kind"] == "key"]
edges = [(r["source_id"], r["target_id"]) for r in csv.DictReader(open(pack / "connections.csv"))]

# Free order: structures back to front, connections grouped by source in reverse.
full = [{"type": "get_state"}]
full += [{"type": "select_structure", "id": s} for s in reversed(structures)]
full.append({"type": "get_progress"})
for src in reversed(structures):
    outgoing = [e for e in edges if e[0] == src]
    if not outgoing:
        continue
    full.append({"type": "select_structure", "id": src})
    full += [{"type": "select_connection", "source": s, "target": t} for s, t in outgoing]
full.append({"type": "select_connection", "source": edges[0][0], "target": edges[0][1]})
full.append({"type": "get_progress"})
full.append({"type": "get_state"})
(here / "anxiety_full_coverage.json").write_text(json.dumps(full, indent=2) + "\n")

phase_error = [
    {"type": "select_structure", "id": structures[0]},
    {"type": "select_connection", "source": edges[0][0], "target": edges[0][1]},
    {"type": "get_progress"},
]
(here / "anxiety_phase_error.json").write_text(json.dumps(phase_error, indent=2) + "\n")
(here / "empty.json").write_text("[]\n")
