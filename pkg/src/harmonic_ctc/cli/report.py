"""Canonical report serialization.

Identical inputs must give byte-identical output on every platform, so JSON
is emitted by hand: keys keep insertion order, floats use 17 significant
digits, complex numbers become [re, im], and non-finite floats become the
strings "NaN", "Infinity" and "-Infinity".
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from harmonic_ctc import __version__
from harmonic_ctc.common.hash import stable_hash
from harmonic_ctc.common.verdict import Verdict
from harmonic_ctc.config.settings import get_settings

SCHEMA = "harmonic-ctc/1"
INDENT = "  "

SKIPPED = "SKIPPED"
ERROR = "ERROR"


def format_float(value: float) -> str:
    if math.isnan(value):
        return '"NaN"'
    if math.isinf(value):
        return '"Infinity"' if value > 0 else '"-Infinity"'
    if value == 0.0:
        return "0"
    return format(value, ".17g")


def _normalize(obj: Any) -> Any:
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if hasattr(obj, "as_dict"):
        return obj.as_dict()
    return obj


def _emit(obj: Any, depth: int, out: List[str]) -> None:
    obj = _normalize(obj)
    pad = INDENT * (depth + 1)
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, complex):
        _emit([obj.real, obj.imag], depth, out)
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for index, (key, value) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(str(key), ensure_ascii=False)}: ")
            _emit(value, depth + 1, out)
            out.append(",\n" if index < len(obj) - 1 else "\n")
        out.append(INDENT * depth + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for index, value in enumerate(obj):
            out.append(pad)
            _emit(value, depth + 1, out)
            out.append(",\n" if index < len(obj) - 1 else "\n")
        out.append(INDENT * depth + "]")
    else:
        raise TypeError(f"Cannot serialize {type(obj).__name__}")


def canonical_json(obj: Any) -> str:
    out: List[str] = []
    _emit(obj, 0, out)
    out.append("\n")
    return "".join(out)


def _csv_cell(value: Any) -> str:
    value = _normalize(value)
    if isinstance(value, float):
        return format_float(value).strip('"')
    return str(value)


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(value) for value in row])
    return buffer.getvalue()


@dataclass
class CheckResult:
    """One named row of a report. ``status`` is a verdict value, SKIPPED or ERROR."""

    name: str
    status: str
    anchor: str = ""
    slack: Optional[float] = None
    detail: Dict[str, Any] = field(default_factory=dict)
    counts_toward_verdict: bool = True

    @classmethod
    def from_verdict(cls, name: str, verdict: Verdict, **kwargs) -> 'CheckResult':
        return cls(name, verdict.value, **kwargs)

    @classmethod
    def error(cls, name: str, exc: Exception, z: Optional[complex] = None, **kwargs) -> 'CheckResult':
        detail: Dict[str, Any] = {"error": f"{type(exc).__name__}: {exc}"}
        if z is not None:
            detail["z"] = complex(z)
        return cls(name, ERROR, detail=detail, **kwargs)

    def as_dict(self):
        result: Dict[str, Any] = {"name": self.name, "status": self.status}
        if self.anchor:
            result["anchor"] = self.anchor
        if self.slack is not None:
            result["slack"] = float(self.slack)
        result.update(self.detail)
        return result


@dataclass
class RunReport:
    command: str
    checks: List[CheckResult] = field(default_factory=list)
    input_digest: Optional[str] = None
    subject: Dict[str, Any] = field(default_factory=dict)
    grid: Optional[Dict[str, Any]] = None
    timestamp: Optional[str] = None

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def overall(self) -> Optional[Verdict]:
        """Combined verdict; None when every counted check errored or was skipped.

        An ERROR counts as FAIL as long as some other check produced a verdict.
        """
        counted = [c for c in self.checks if c.counts_toward_verdict and c.status != SKIPPED]
        verdicts = [Verdict(c.status) for c in counted if c.status != ERROR]
        if not verdicts:
            return None
        if any(c.status == ERROR for c in counted):
            verdicts.append(Verdict.FAIL)
        return Verdict.combine(verdicts)

    def exit_code(self) -> int:
        verdict = self.overall()
        return 3 if verdict is None else verdict.exit_code()

    def as_dict(self):
        settings = get_settings().as_dict()
        verdict = self.overall()
        result: Dict[str, Any] = {
            "schema": SCHEMA,
            "tool_version": __version__,
            "command": self.command,
        }
        if self.timestamp is not None:
            result["timestamp"] = self.timestamp
        if self.input_digest is not None:
            result["input_digest"] = self.input_digest
        result["config_digest"] = stable_hash(settings)
        if self.subject:
            result["subject"] = self.subject
        if self.grid is not None:
            result["grid"] = self.grid
        result["checks"] = [check.as_dict() for check in self.checks]
        result["verdict"] = ERROR if verdict is None else verdict.value
        return result

    def to_json(self) -> str:
        return canonical_json(self.as_dict())
