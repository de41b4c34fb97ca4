"""Run a family over a parameter lattice and log one record per tuple."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

from qcong import __version__
from qcong.errors import ConstraintViolation
from qcong.families.registry import CONJECTURE, get_family
from qcong.harness.config import SweepConfig
from qcong.harness.log import SCHEMA, dump_record, read_log, record_key, repair_tail

__all__ = ["SweepReport", "run_sweep", "execute", "exit_status"]


@dataclass
class SweepReport:
    verified: int = 0
    failed: int = 0
    counterexamples: int = 0
    skipped: int = 0
    resumed: int = 0
    executed: int = 0
    elapsed: float = 0.0
    stopped_early: bool = False
    failures: list = field(default_factory=list)
    counterexample_records: list = field(default_factory=list)
    skip_reasons: list = field(default_factory=list)

    def add(self, rec: dict) -> None:
        status = rec["status"]
        if status == "verified":
            self.verified += 1
        elif status == "failed":
            self.failed += 1
            self.failures.append(rec)
        elif status == "counterexample":
            self.counterexamples += 1
            self.counterexample_records.append(rec)
        else:
            self.skipped += 1
            self.skip_reasons.append(rec.get("reason"))

    def counts(self) -> dict:
        return {
            "verified": self.verified,
            "failed": self.failed,
            "counterexample": self.counterexamples,
            "skipped": self.skipped,
        }

    def render(self) -> str:
        lines = [
            f"executed {self.executed}, resumed {self.resumed}; "
            f"verified {self.verified}, failed {self.failed}, "
            f"counterexamples {self.counterexamples}, skipped {self.skipped} "
            f"in {self.elapsed:.2f}s"
        ]
        for rec in self.failures:
            lines.append(f"FAILED {rec['family']} {rec['params']} {rec['variant']}")
        for rec in self.counterexample_records:
            lines.append(f"*** COUNTEREXAMPLE *** {rec['family']} {rec['params']} {rec['variant']}")
        if self.stopped_early:
            lines.append("sweep stopped at the first counterexample")
        return "\n".join(lines)


def exit_status(report: SweepReport) -> int:
    if report.failed:
        return 1
    if report.counterexamples:
        return 2
    return 0


def execute(task) -> dict:
    """Decide one tuple; returns a record without a timestamp."""
    family_id, params, variant, strategy, conjectural = task
    fam = get_family(family_id)
    rec = {
        "schema": SCHEMA,
        "family": family_id,
        "kind": fam.kind,
        "params": params,
        "variant": variant,
        "strategy": strategy,
        "version": __version__,
    }
    started = time.perf_counter()
    try:
        verdict = fam(params, variant, strategy, conjectural)
    except ConstraintViolation as exc:
        rec.update(status="skipped", reason=str(exc), holds=None, fingerprint=None,
                   modulus=None, elapsed=time.perf_counter() - started)
        return rec
    if verdict.holds:
        status = "verified"
    else:
        status = "counterexample" if fam.kind == CONJECTURE else "failed"
    rec.update(
        status=status,
        reason=verdict.failed_factor,
        holds=verdict.holds,
        fingerprint=verdict.fingerprint() if verdict.holds else None,
        modulus=verdict.modulus,
        elapsed=verdict.elapsed,
    )
    return rec


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def run_sweep(config: SweepConfig, output: str | None = None, progress=None) -> SweepReport:
    """Enumerate, execute and log every tuple of ``config``.

    Records are written in lattice order whatever the worker count. With
    ``resume`` set, tuples already in the log are counted as resumed and not
    re-run; a partial last line is discarded first.
    """
    path = output or config.output
    started = time.perf_counter()
    report = SweepReport()
    done = set()
    if path and config.resume:
        repair_tail(path)
        done = {record_key(r["family"], r["params"], r["variant"]) for r in read_log(path)}
    elif path and os.path.exists(path):
        os.remove(path)

    tasks = []
    for params, variant in config.tasks():
        if record_key(config.family, params, variant) in done:
            report.resumed += 1
            report.skipped += 1
            continue
        tasks.append((config.family, params, variant, config.strategy, config.conjectural))

    workers = min(config.effective_workers(), max(1, len(tasks)))
    fh = open(path, "a", encoding="utf-8") if path else None
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        results = pool.map(execute, tasks, chunksize=8) if pool else map(execute, tasks)
        for rec in results:
            rec["timestamp"] = _timestamp()
            report.executed += 1
            report.add(rec)
            if fh:
                fh.write(dump_record(rec) + "\n")
                fh.flush()
            if progress:
                progress(rec)
            if rec["status"] == "counterexample" and config.stop_on_counterexample:
                report.stopped_early = True
                break
    finally:
        if pool:
            pool.shutdown(wait=True, cancel_futures=True)
        if fh:
            fh.close()
    report.elapsed = time.perf_counter() - started
    return report
