"""Check results and run reports shared by every verifier and the CLI."""

from __future__ import annotations

import json
import time
from collections.abc import Iterable
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Status(str, Enum):
    """Outcome of a single check."""

    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


@dataclass(slots=True)
class CheckResult:
    """One verified claim on one instance.

    A failing result always carries a *witness*: the offending arc, node
    pair, colouring or cycle, in JSON-compatible form.
    """

    check: str
    instance: str
    status: Status
    detail: str = ""
    witness: Any = None
    data: dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    @property
    def failed(self) -> bool:
        return self.status is Status.FAIL

    def raise_for_status(self) -> CheckResult:
        """Raise :class:`VerificationError` if this check failed."""
        if self.failed:
            raise VerificationError(self)
        return self

    def to_dict(self, include_timing: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "check": self.check,
            "instance": self.instance,
            "status": self.status.value,
        }
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        if self.data:
            out["data"] = self.data
        if include_timing:
            out["elapsed_s"] = round(self.elapsed, 6)
        return out


class VerificationError(Exception):
    """Raised when a check that was expected to pass failed."""

    def __init__(self, result: CheckResult) -> None:
        self.result = result
        super().__init__(f"{result.check} failed on {result.instance}: {result.detail}")


def passed(check: str, instance: str, detail: str = "", **data: Any) -> CheckResult:
    return CheckResult(check, instance, Status.PASS, detail, data=data)


def failed(check: str, instance: str, detail: str, witness: Any, **data: Any) -> CheckResult:
    return CheckResult(check, instance, Status.FAIL, detail, witness=witness, data=data)


def skipped(check: str, instance: str, detail: str, **data: Any) -> CheckResult:
    return CheckResult(check, instance, Status.SKIP, detail, data=data)


@contextmanager
def stopwatch():
    """Yield a one-element list that receives the elapsed seconds on exit."""
    box = [0.0]
    start = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = time.perf_counter() - start


@dataclass
class RunReport:
    """Everything one CLI invocation checked, in canonical instance order."""

    command: str
    options: dict[str, Any] = field(default_factory=dict)
    results: list[CheckResult] = field(default_factory=list)

    def extend(self, results: Iterable[CheckResult]) -> RunReport:
        self.results.extend(results)
        return self

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.failed]

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def summary(self) -> dict[str, int]:
        counts = {status.value: 0 for status in Status}
        for r in self.results:
            counts[r.status.value] += 1
        counts["total"] = len(self.results)
        return counts

    def to_dict(self, include_timing: bool = False) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "command": self.command,
            "options": self.options,
            "summary": self.summary(),
            "results": [r.to_dict(include_timing) for r in self.results],
        }
        if include_timing:
            payload["elapsed_s"] = round(sum(r.elapsed for r in self.results), 6)
        return payload

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True) + "\n"
