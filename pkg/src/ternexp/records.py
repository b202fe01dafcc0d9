"""Serialized result records: JSONL lines and the flat sieve CSV."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Any, Iterable, Optional

from . import __version__
from .sieve import SieveReport

TOOL = "ternexp"
CSV_HEADER = ("p", "q", "cong48", "val_order", "order_parity", "octic", "size_p", "size_q", "survives")


def jsonable(value: Any) -> Any:
    """Integers become decimal strings; containers are converted recursively."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


@dataclass(frozen=True)
class ResultRecord:
    command: str
    config: dict[str, Any]
    input: dict[str, Any]
    result: dict[str, Any]
    version: str = __version__
    tool: str = TOOL

    @classmethod
    def build(cls, command: str, config: dict, input: dict, result: dict) -> "ResultRecord":
        return cls(command, jsonable(config), jsonable(input), jsonable(result))

    def to_dict(self) -> dict[str, Any]:
        return {
            "tool": self.tool,
            "version": self.version,
            "command": self.command,
            "config": self.config,
            "input": self.input,
            "result": self.result,
        }

    def to_line(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), ensure_ascii=False)

    @classmethod
    def from_line(cls, line: str) -> "ResultRecord":
        d = json.loads(line)
        return cls(d["command"], d["config"], d["input"], d["result"], d["version"], d["tool"])

    def sieve_key(self) -> tuple[int, int]:
        return int(self.input["p"]), int(self.input["q"])


def sieve_record(report: SieveReport, config: dict) -> ResultRecord:
    result = dict(report.verdicts())
    result.update(
        survives=report.survives,
        size_p=report.size_p,
        size_q=report.size_q,
        legacy_mod24=report.legacy_mod24,
        errors={name: msg for name, msg in report.errors},
    )
    return ResultRecord.build("sieve", config, {"p": report.pair.p, "q": report.pair.q}, result)


def _cell(v: Any) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    return str(v)


def csv_row(rec: ResultRecord) -> list[str]:
    r = rec.result
    return [rec.input["p"], rec.input["q"]] + [_cell(r[k]) for k in CSV_HEADER[2:]]


def write_csv(records: Iterable[ResultRecord], fh, header: bool = True) -> None:
    w = csv.writer(fh, lineterminator="\n")
    if header:
        w.writerow(CSV_HEADER)
    for rec in records:
        w.writerow(csv_row(rec))


def _parse_cell(s: str) -> Any:
    return {"true": True, "false": False}.get(s, s)


def read_jsonl(text: str, command: Optional[str] = None) -> list[ResultRecord]:
    """Parse JSONL, dropping lines that do not parse (a torn final write)."""
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        try:
            rec = ResultRecord.from_line(line)
        except (ValueError, KeyError):
            continue
        if command is None or rec.command == command:
            out.append(rec)
    return out


def read_csv_rows(text: str) -> list[dict[str, Any]]:
    rows = []
    reader = csv.reader(io.StringIO(text))
    for row in reader:
        if tuple(row) == CSV_HEADER or len(row) != len(CSV_HEADER):
            continue
        rows.append({k: _parse_cell(v) for k, v in zip(CSV_HEADER, row)})
    return rows
