"""Report serialization: JSON, CSV and a human-readable table.

Record fields, in order: check_id, p, a_num, a_den, branch, k, lhs, rhs, pass,
error, micros.  Fixed-parameter checks have null a_num/a_den.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .arith import Residue
from .catalog import CheckResult, Report

FIELDS = ("check_id", "p", "a_num", "a_den", "branch", "k", "lhs", "rhs", "pass", "error", "micros")


def to_record(r: CheckResult) -> dict:
    return {
        "check_id": r.check_id,
        "p": r.p,
        "a_num": None if r.a is None else r.a.numerator,
        "a_den": None if r.a is None else r.a.denominator,
        "branch": r.branch,
        "k": r.k,
        "lhs": None if r.lhs is None else r.lhs.value,
        "rhs": None if r.rhs is None else r.rhs.value,
        "pass": r.passed,
        "error": r.error,
        "micros": r.micros,
    }


def from_record(rec: dict) -> CheckResult:
    p, k = int(rec["p"]), int(rec["k"])
    a = None if rec["a_num"] is None else Fraction(int(rec["a_num"]), int(rec["a_den"]))

    def res(v):
        return None if v is None else Residue(int(v), p, k)

    return CheckResult(
        rec["check_id"], p, a, rec["branch"], k, res(rec["lhs"]), res(rec["rhs"]),
        bool(rec["pass"]), rec["error"], None if rec["micros"] is None else int(rec["micros"]),
    )


def render_json(report: Report) -> str:
    doc = {
        "config": report.config,
        "results": [to_record(r) for r in report.results],
        "summary": report.summary(),
    }
    return json.dumps(doc, indent=1) + "\n"


def parse_json(text: str) -> tuple[dict, list[CheckResult]]:
    doc = json.loads(text)
    return doc["config"], [from_record(r) for r in doc["results"]]


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return v


def render_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS)
    for r in report.results:
        rec = to_record(r)
        w.writerow([_csv_cell(rec[f]) for f in FIELDS])
    return buf.getvalue()


def parse_csv(text: str) -> list[CheckResult]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        rec = {f: (row[f] if row[f] != "" else None) for f in FIELDS}
        rec["pass"] = rec["pass"] == "true"
        out.append(from_record(rec))
    return out


def render_table(report: Report) -> str:
    summary = report.summary()
    rows = [("check", "k", "pass", "fail", "")]
    k_of = {}
    for r in report.results:
        k_of.setdefault(r.check_id, r.k)
    for cid, counts in summary["per_check"].items():
        status = "ok" if counts["failed"] == 0 else "FAIL"
        rows.append((cid, str(k_of[cid]), str(counts["passed"]), str(counts["failed"]), status))
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    failures = [r for r in report.results if not r.passed]
    for r in failures[:20]:
        a = "fixed" if r.a is None else str(r.a)
        detail = r.error or f"lhs={r.lhs.value} rhs={r.rhs.value} mod {r.p}^{r.k}"
        lines.append(f"FAILED {r.check_id} p={r.p} a={a} branch={r.branch}: {detail}")
    if len(failures) > 20:
        lines.append(f"... {len(failures) - 20} more failures")
    lines.append(
        f"{summary['total']} results, {summary['passed']} passed, {summary['failed']} failed "
        f"across {len(summary['per_check'])} checks"
    )
    return "\n".join(lines) + "\n"


RENDERERS = {"table": render_table, "json": render_json, "csv": render_csv}
