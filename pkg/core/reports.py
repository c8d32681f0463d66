"""
Reports and Serialization

Graded dimension tables, identity-check reports and partition listings in
the three output formats: csv (pandas), text and structured (YAML).
"""

import io
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

import pandas as pd
import yaml

from core.errors import VerificationFailure

logger = logging.getLogger(__name__)

CSV = "csv"
TEXT = "text"
STRUCTURED = "structured"
OUTPUT_FORMATS = (CSV, TEXT, STRUCTURED)


def _dump_yaml(data) -> str:
    return yaml.safe_dump(data, sort_keys=False, allow_unicode=True, default_flow_style=False)


def _frame_text(df: pd.DataFrame) -> str:
    if df.empty:
        return "(empty)\n"
    return df.to_string(index=False) + "\n"


def _check_format(fmt: str):
    if fmt not in OUTPUT_FORMATS:
        raise ValueError(f"Unknown output format: {fmt!r}, expected one of {OUTPUT_FORMATS}")


@dataclass
class GradedDimTable:
    """
    Per-degree integer columns for one (l, k, N).

    The "dim" column is the graded dimension; engines add their own columns
    (ambient_dim, relation_rank, admissible_count, ...) next to it.
    """

    ell: int
    level: int
    max_degree: int
    columns: Dict[str, List[int]] = field(default_factory=dict)
    verdict: Optional[bool] = None

    def __post_init__(self):
        for name, values in self.columns.items():
            if len(values) != self.max_degree + 1:
                raise ValueError(f"column {name} has {len(values)} entries, expected {self.max_degree + 1}")

    @property
    def dims(self) -> List[int]:
        return list(self.columns["dim"])

    def add_column(self, name: str, values: Sequence[int]):
        if len(values) != self.max_degree + 1:
            raise ValueError(f"column {name} has {len(values)} entries, expected {self.max_degree + 1}")
        self.columns[name] = list(values)

    def to_frame(self) -> pd.DataFrame:
        data = {"degree": list(range(self.max_degree + 1))}
        data.update(self.columns)
        return pd.DataFrame(data)

    def render(self, fmt: str) -> str:
        _check_format(fmt)
        if fmt == CSV:
            buffer = io.StringIO()
            self.to_frame().to_csv(buffer, index=False)
            return buffer.getvalue()
        if fmt == TEXT:
            header = f"# l={self.ell} k={self.level} N={self.max_degree}"
            if self.verdict is not None:
                header += f" verdict={'PASS' if self.verdict else 'FAIL'}"
            return header + "\n" + _frame_text(self.to_frame())
        data = {"ell": self.ell, "level": self.level, "max_degree": self.max_degree}
        if self.verdict is not None:
            data["verdict"] = "PASS" if self.verdict else "FAIL"
        data["rows"] = [
            {key: int(value) for key, value in row.items()}
            for row in self.to_frame().to_dict(orient="records")
        ]
        return _dump_yaml(data)

    def assert_passed(self):
        if not self.verdict:
            raise VerificationFailure(f"l={self.ell} k={self.level} N={self.max_degree}: verdict {self.verdict}")

    def diff(self, other: "GradedDimTable") -> List[int]:
        """Degrees where the dim columns disagree."""
        return [n for n, (a, b) in enumerate(zip(self.dims, other.dims)) if a != b]


@dataclass
class IdentityCheck:
    """One checked identity: inputs, expected shape and the realized scalar."""

    name: str
    inputs: str
    expected: str
    scalar: str
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}\t{self.name}\t{self.inputs}\texpected={self.expected}\tscalar={self.scalar}"

    def record(self) -> Dict[str, object]:
        return {
            "status": "PASS" if self.passed else "FAIL",
            "name": self.name,
            "inputs": self.inputs,
            "expected": self.expected,
            "scalar": self.scalar,
        }


@dataclass
class VerificationReport:
    title: str
    checks: List[IdentityCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[IdentityCheck]:
        return [check for check in self.checks if not check.passed]

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)

    def lines(self) -> List[str]:
        return [check.line() for check in self.checks]

    def assert_passed(self):
        if not self.passed:
            first = self.failures[0]
            raise VerificationFailure(f"{self.title}: {len(self.failures)} failed, first: {first.line()}")


def merge_reports(title: str, reports: Iterable[VerificationReport]) -> VerificationReport:
    merged = VerificationReport(title)
    for report in reports:
        merged.extend(report)
    return merged


def render_report(report: VerificationReport, fmt: str) -> str:
    _check_format(fmt)
    if fmt == TEXT:
        return "".join(line + "\n" for line in report.lines())
    if fmt == CSV:
        buffer = io.StringIO()
        columns = ["status", "name", "inputs", "expected", "scalar"]
        pd.DataFrame([c.record() for c in report.checks], columns=columns).to_csv(buffer, index=False)
        return buffer.getvalue()
    return _dump_yaml({
        "title": report.title,
        "verdict": "PASS" if report.passed else "FAIL",
        "checked": len(report.checks),
        "failed": len(report.failures),
        "checks": [c.record() for c in report.checks],
    })


def render_partitions(partitions: Mapping[int, Sequence[object]], fmt: str, header: Dict[str, object]) -> str:
    """
    Partition listing with per-degree counts.

    Args:
        partitions: degree -> ColoredPartition list
        fmt: Output format
        header: Run parameters echoed into the output
    """
    _check_format(fmt)
    degrees = sorted(partitions)
    if fmt == STRUCTURED:
        data = dict(header)
        data["counts"] = {n: len(partitions[n]) for n in degrees}
        data["partitions"] = {n: [pi.records() for pi in partitions[n]] for n in degrees}
        return _dump_yaml(data)
    if fmt == CSV:
        rows = [
            {"degree": n, "index": i, "color": r["color"], "t_degree": r["degree"], "mult": r["mult"]}
            for n in degrees
            for i, pi in enumerate(partitions[n])
            for r in pi.records()
        ]
        buffer = io.StringIO()
        pd.DataFrame(rows, columns=["degree", "index", "color", "t_degree", "mult"]).to_csv(buffer, index=False)
        return buffer.getvalue()
    out = ["# " + " ".join(f"{k}={v}" for k, v in header.items())]
    for n in degrees:
        out.append(f"degree {n}: {len(partitions[n])}")
        out.extend(f"  {pi}" for pi in partitions[n])
    return "\n".join(out) + "\n"


def render_model(dump: Dict[str, object]) -> str:
    return _dump_yaml(dump)
