"""Check records, verification reports, and output writing.

A Check is one named comparison: pass iff |value - expected| <= tol, with
tol always absolute (relative criteria are encoded by scaling tol before
the Check is built).  Boolean criteria are encoded as indicator checks
whose value is 1.0 on success, 0.0 otherwise, with expected 1 and tol 0.

report.json holds exactly the array of {name, value, expected, tol, pass}
records, nothing else, so that repeated runs with the same configuration
are byte-identical.  Runtimes (which never repeat) go to timings.csv, and
the constants, pulse profile and seed that produced the run go to
provenance.json.  All files are written atomically (write then rename).
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path


@dataclass(frozen=True)
class Check:
    """One named pass/fail comparison with an absolute tolerance."""

    name: str
    value: float | None
    expected: float
    tol: float
    passed: bool
    runtime: float = 0.0


def make_check(name: str, value, expected: float, tol: float,
               runtime: float = 0.0) -> Check:
    """Build a Check; value None (a failed computation) never passes."""
    if value is None:
        return Check(name, None, expected, tol, False, runtime)
    value = float(value)
    ok = math.isfinite(value) and abs(value - expected) <= tol
    return Check(name, value, float(expected), float(tol), ok, runtime)


def indicator_check(name: str, condition: bool, runtime: float = 0.0) -> Check:
    """Boolean criterion as a Check: value 1.0 iff condition holds."""
    return Check(name, 1.0 if condition else 0.0, 1.0, 0.0, bool(condition), runtime)


@dataclass(frozen=True)
class DataSeries:
    """One CSV-bound data table: filename stem, header, rows."""

    name: str
    header: tuple
    rows: tuple

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != len(self.header):
                raise ValueError(f"series {self.name}: row width mismatch")


@dataclass
class VerificationReport:
    """All checks and data series produced by one scenario run."""

    scenario: str
    checks: list = field(default_factory=list)
    series: list = field(default_factory=list)
    constants: dict = field(default_factory=dict)
    profile: dict = field(default_factory=dict)
    seed: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _json_scalar(x):
    return None if x is None else float(x)


def write_outputs(report: VerificationReport, out_dir, figures: bool = True) -> list:
    """Write report.json, provenance.json, timings.csv, one CSV per series,
    and (unless disabled) one figure per plottable series.

    Returns the list of written paths.  report.json carries only the check
    records so reruns are byte-identical; everything run-dependent lives in
    timings.csv.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    records = [
        {"name": c.name, "value": _json_scalar(c.value),
         "expected": float(c.expected), "tol": float(c.tol),
         "pass": bool(c.passed)}
        for c in report.checks
    ]
    path = out / "report.json"
    _atomic_write(path, json.dumps(records, indent=2) + "\n")
    written.append(path)

    prov = {
        "scenario": report.scenario,
        "seed": int(report.seed),
        "constants": report.constants,
        "profile": report.profile,
    }
    path = out / "provenance.json"
    _atomic_write(path, json.dumps(prov, indent=2) + "\n")
    written.append(path)

    lines = ["name,runtime_s"]
    lines += [f"{c.name},{c.runtime:.6f}" for c in report.checks]
    path = out / "timings.csv"
    _atomic_write(path, "\n".join(lines) + "\n")
    written.append(path)

    for series in report.series:
        path = out / f"{series.name}.csv"
        tmp = path.with_name(path.name + ".tmp")
        with open(tmp, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(series.header)
            writer.writerows(series.rows)
        os.replace(tmp, path)
        written.append(path)

    if figures and report.series:
        from .plotting import render_figures
        written.extend(render_figures(report, out))

    return written
