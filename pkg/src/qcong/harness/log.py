"""Line-delimited JSON verdict log.

Each line is one record with ``schema = "qcong.verdict/1"``. Keys are sorted
so a record's text depends only on its content; ``elapsed`` and
``timestamp`` are the only run-dependent fields.
"""

from __future__ import annotations

import json
import os
from collections import Counter, defaultdict
from dataclasses import dataclass

__all__ = [
    "SCHEMA",
    "TIMING_FIELDS",
    "STATUSES",
    "record_key",
    "dump_record",
    "read_log",
    "repair_tail",
    "strip_timing",
    "summarise",
    "format_table",
]

SCHEMA = "qcong.verdict/1"
TIMING_FIELDS = ("elapsed", "timestamp")
STATUSES = ("verified", "failed", "counterexample", "skipped")


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def record_key(family: str, params: dict, variant: str) -> str:
    """Canonical identity of one tuple, used for resume."""
    return json.dumps([family, _jsonable(params), variant], sort_keys=True, separators=(",", ":"))


def dump_record(record: dict) -> str:
    return json.dumps(_jsonable(record), sort_keys=True, separators=(",", ":"))


def repair_tail(path: str) -> int:
    """Drop a trailing partial line left by an interrupted writer.

    Returns the number of bytes removed.
    """
    if not os.path.exists(path):
        return 0
    with open(path, "rb+") as fh:
        data = fh.read()
        if not data or data.endswith(b"\n"):
            return 0
        cut = data.rfind(b"\n") + 1
        fh.truncate(cut)
        return len(data) - cut


def read_log(path: str) -> list:
    records = []
    if not os.path.exists(path):
        return records
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if rec.get("schema") != SCHEMA:
                raise ValueError(f"{path}:{lineno}: unsupported schema {rec.get('schema')!r}")
            records.append(rec)
    return records


def strip_timing(record: dict) -> dict:
    return {k: v for k, v in record.items() if k not in TIMING_FIELDS}


@dataclass
class Summary:
    counts: Counter
    by_group: dict
    elapsed: float

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def summarise(records) -> Summary:
    counts: Counter = Counter()
    groups: dict = defaultdict(Counter)
    elapsed = 0.0
    for rec in records:
        counts[rec["status"]] += 1
        groups[(rec["family"], rec["variant"])][rec["status"]] += 1
        elapsed += rec.get("elapsed") or 0.0
    return Summary(counts, dict(groups), elapsed)


def format_table(summary: Summary) -> str:
    header = ("family", "variant") + STATUSES + ("total",)
    rows = []
    for (fam, var), c in sorted(summary.by_group.items()):
        rows.append((fam, var) + tuple(str(c[s]) for s in STATUSES) + (str(sum(c.values())),))
    rows.append(("all", "") + tuple(str(summary.counts[s]) for s in STATUSES) + (str(summary.total),))
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*header), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*r) for r in rows]
    return "\n".join(lines)
