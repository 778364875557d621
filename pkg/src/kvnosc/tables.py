"""Deterministic table output shared by all subcommands.

CSV files open with a comment line carrying the scenario hash,

    # scenario_hash=<12 hex digits>

followed by a header row and data rows.  Floats are rendered as shortest
round-trip decimals (repr), so identical runs produce byte-identical files
and consumers recover the exact binary values.  The JSON table variant
carries the same hash, column names and rows.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ConfigError


def format_value(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return repr(v)
    return repr(float(v))


def write_table_csv(path, header: Sequence[str], rows: Iterable[Sequence], scenario_hash: str) -> None:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# scenario_hash={scenario_hash}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_value(v) for v in row) + "\n")


def write_table_json(path, header: Sequence[str], rows: Iterable[Sequence], scenario_hash: str) -> None:
    payload = {
        "scenario_hash": scenario_hash,
        "columns": list(header),
        "rows": [[float(v) for v in row] for row in rows],
    }
    write_json(path, payload)


def write_json(path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_table_csv(path):
    """Read back a hash-stamped CSV: (scenario_hash, header, columns).

    Columns are lists of floats keyed by header name.
    """
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        first = fh.readline().strip()
        if not first.startswith("# scenario_hash="):
            raise ConfigError(f"{path}: missing scenario hash line")
        scenario_hash = first.split("=", 1)[1]
        header = fh.readline().strip().split(",")
        columns = {name: [] for name in header}
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != len(header):
                raise ConfigError(f"{path}: ragged row {line!r}")
            for name, part in zip(header, parts):
                columns[name].append(float(part))
    return scenario_hash, header, columns
