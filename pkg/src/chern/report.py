"""JSON and CSV serialization of experiment reports.

Output bytes depend only on the reports and the echoed config: keys keep a
fixed order, separators are compact and wall-clock timing is left out.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Sequence

from .errors import InputError
from .lab import ExperimentReport

SCHEMA_VERSION = "1"
CSV_HEADER = ("entry", "claim", "e0", "e1", "e2", "lambda", "verdict", "seed")


def _plain(value):
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    if isinstance(value, float):
        raise InputError("reports carry integers only")
    return value


def _frozen(value):
    if isinstance(value, list):
        return tuple(_frozen(v) for v in value)
    return value


def run_record(r: ExperimentReport) -> dict:
    return {
        "claim": r.claim,
        "entry": r.entry,
        "inputs": dict(r.inputs),
        "e": list(r.e),
        "lambda": r.lam,
        "evidence": {k: _plain(v) for k, v in r.evidence},
        "verdict": r.verdict,
        "seed": r.seed,
    }


def to_json(reports: Sequence[ExperimentReport], seed: int | None = None, config: dict | None = None) -> str:
    doc: dict = {"schema_version": SCHEMA_VERSION}
    if seed is not None:
        doc["seed"] = seed
    if config is not None:
        doc["config"] = dict(config)
    doc["runs"] = [run_record(r) for r in reports]
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False)


def from_json(text: str) -> tuple[list[ExperimentReport], dict]:
    """Parse a report file; returns the reports and the remaining header fields."""
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise InputError(f"unsupported schema version {doc.get('schema_version')!r}")
    reports = [
        ExperimentReport(
            run["claim"],
            run["entry"],
            tuple(run["inputs"].items()),
            tuple(run["e"]),
            run["lambda"],
            tuple((k, _frozen(v)) for k, v in run["evidence"].items()),
            run["verdict"],
            run["seed"],
        )
        for run in doc["runs"]
    ]
    header = {k: v for k, v in doc.items() if k not in ("schema_version", "runs")}
    return reports, header


def to_csv(reports: Sequence[ExperimentReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in reports:
        es = [r.e[i] if i < len(r.e) else "" for i in range(3)]
        w.writerow([r.entry, r.claim, *es, "" if r.lam is None else r.lam, r.verdict, r.seed])
    return buf.getvalue()


def write_report(reports: Sequence[ExperimentReport], fmt: str, path=None, seed=None, config=None) -> str:
    """Serialize to ``fmt`` (json or csv); also writes ``path`` when given."""
    if fmt == "json":
        text = to_json(reports, seed, config)
    elif fmt == "csv":
        text = to_csv(reports)
    else:
        raise InputError(f"unknown report format {fmt!r}")
    if path is not None:
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write report to {path}: {exc}") from None
    return text
