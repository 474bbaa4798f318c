"""Characteristic polyhedra with exact arithmetic.

Every rational in a report is an exact "num/den" string.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ._charpoly import BudgetExhausted, DomainError, InvalidInput, commands, input_digest, normalize_problem
from ._charpoly import run as _run

__all__ = [
    "BudgetExhausted",
    "DomainError",
    "InvalidInput",
    "Result",
    "commands",
    "input_digest",
    "normalize_problem",
    "run",
    "run_file",
    "schema_path",
]


@dataclass
class Result:
    report: dict
    exit_code: int
    svg: str | None = None

    @property
    def ok(self) -> bool:
        return self.exit_code == 0


def run(command: str, text: str, *, plain: bool = False, raw_forms: bool = False,
        budget: dict[str, int] | None = None, svg: bool = False) -> Result:
    raw, code, plot = _run(command, text, plain, raw_forms, dict(budget or {}), svg)
    return Result(json.loads(raw), code, plot)


def run_file(command: str, path: str | Path, **kwargs) -> Result:
    return run(command, Path(path).read_text(encoding="utf-8"), **kwargs)


def schema_path() -> Path:
    """Location of the run report JSON schema (installed copy, else the source tree)."""
    here = Path(__file__).resolve().parent
    installed = here / "run_report.schema.json"
    if installed.exists():
        return installed
    return here.parents[1] / "schema" / "run_report.schema.json"
