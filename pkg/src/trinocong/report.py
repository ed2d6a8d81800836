"""JSONL / CSV report records.

Field order is fixed: type, id, p, params, modulus, lhs, rhs, pass, micros.
Residues are decimal strings; params keys are sorted.
"""

from __future__ import annotations

import csv
import io
import json
from typing import IO, Iterable

from .claims import VerifyResult
from .exact import IdentityResult

FIELDS = ("type", "id", "p", "params", "modulus", "lhs", "rhs", "pass", "micros")
FORMATS = ("jsonl", "csv")


def _str_or_none(x):
    return None if x is None else str(x)


def _sorted_params(params: dict) -> dict:
    return {k: params[k] for k in sorted(params)}


def congruence_record(r: VerifyResult, *, timings: bool = False) -> dict:
    return {
        "type": "congruence",
        "id": r.claim_id,
        "p": r.p,
        "params": _sorted_params(r.params),
        "modulus": r.modulus,
        "lhs": _str_or_none(r.lhs),
        "rhs": _str_or_none(r.rhs),
        "pass": r.passed,
        "micros": r.micros if timings else 0,
    }


def identity_record(r: IdentityResult, *, timings: bool = False) -> dict:
    return {
        "type": "identity",
        "id": r.id,
        "p": None,
        "params": _sorted_params(r.params),
        "modulus": None,
        "lhs": None,
        "rhs": None,
        "pass": r.passed,
        "micros": r.micros if timings else 0,
    }


def oracle_record(
    claim_id: str, p: int, params: dict, modulus: str, pipeline, oracle, passed: bool, micros: int
) -> dict:
    return {
        "type": "oracle",
        "id": claim_id,
        "p": p,
        "params": _sorted_params(params),
        "modulus": modulus,
        "lhs": _str_or_none(pipeline),
        "rhs": _str_or_none(oracle),
        "pass": passed,
        "micros": micros,
    }


def format_line(record: dict, fmt: str) -> str:
    if fmt == "jsonl":
        return json.dumps(record, separators=(",", ":")) + "\n"
    if fmt == "csv":
        row = dict(record)
        row["params"] = ";".join(f"{k}={v}" for k, v in record["params"].items())
        for key in ("p", "modulus", "lhs", "rhs"):
            if row[key] is None:
                row[key] = ""
        row["pass"] = "true" if record["pass"] else "false"
        buf = io.StringIO()
        csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n").writerow(row)
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def csv_header() -> str:
    return ",".join(FIELDS) + "\n"


def write_records(records: Iterable[dict], out: IO[str], fmt: str) -> None:
    """One write per record, flushed, so an interrupt never leaves half a line."""
    if fmt == "csv":
        out.write(csv_header())
    for record in records:
        out.write(format_line(record, fmt))
        out.flush()


def parse_jsonl(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]
