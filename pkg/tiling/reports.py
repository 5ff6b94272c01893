"""Report models shared by the CLI, the MCP tools and the experiment harness."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable
from typing import Any

from pydantic import BaseModel, ConfigDict

SOLVED = "solved"
VERIFIED = "verified"
INFEASIBLE = "infeasible"
NOT_FOUND = "not-found"
UNKNOWN = "unknown"
REJECTED = "rejected"

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64

_EXIT_CODES = {
    SOLVED: EXIT_OK,
    VERIFIED: EXIT_OK,
    INFEASIBLE: EXIT_INFEASIBLE,
    NOT_FOUND: EXIT_INFEASIBLE,
    REJECTED: EXIT_INFEASIBLE,
    UNKNOWN: EXIT_UNKNOWN,
}


def exit_code(outcome: str) -> int:
    return _EXIT_CODES.get(outcome, EXIT_UNKNOWN)


def dumps(data: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


class ExperimentReport(BaseModel):
    """One command's outcome. ``wall_time`` is only set when timing is requested."""

    model_config = ConfigDict(extra="forbid")

    command: str
    inputs: dict[str, Any]
    outcome: str
    payload: dict[str, Any]
    nodes: int = 0
    verified: bool | None = None
    wall_time: float | None = None

    @property
    def exit_code(self) -> int:
        return exit_code(self.outcome)

    def to_json(self) -> str:
        return dumps(self.model_dump(exclude_none=True))


class ScenarioRow(BaseModel):
    """One experiment instance; field order is the CSV column order."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    scenario: str
    instance: str
    seed: int | None
    n: int
    outcome: str
    expected: str
    agree: bool
    nodes: int = 0


CSV_COLUMNS = tuple(ScenarioRow.model_fields)


def rows_to_csv(rows: Iterable[ScenarioRow]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        data = row.model_dump()
        data["seed"] = "" if row.seed is None else row.seed
        data["agree"] = "true" if row.agree else "false"
        writer.writerow(data)
    return buffer.getvalue()
