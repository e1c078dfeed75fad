"""Machine-checkable verification reports and their JSON / text forms."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

TOOL_VERSION = "0.1.0"

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
EXIT_CODES = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}


@dataclass
class Check:
    name: str
    status: Any
    witness: Optional[dict] = None
    timing_ms: Optional[float] = None

    def __post_init__(self):
        if self.status is True:
            self.status = PASS
        elif self.status is False:
            self.status = FAIL
        if self.status not in EXIT_CODES:
            raise ValueError(f"bad status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_dict(self, timings: bool = True) -> dict:
        d: dict = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if timings and self.timing_ms is not None:
            d["timing_ms"] = round(self.timing_ms, 3)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Check":
        return cls(d["name"], d["status"], d.get("witness"), d.get("timing_ms"))


@dataclass
class VerificationReport:
    name: str
    n: Any = None
    kind: Optional[str] = None
    checks: list[Check] = field(default_factory=list)
    limits: dict = field(default_factory=dict)
    elapsed_ms: Optional[float] = None

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def merge(self, other: "VerificationReport", prefix: str = "", *, limits: bool = True) -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witness, c.timing_ms))
        if limits:
            for k, v in other.limits.items():
                self.limits.setdefault(k, v)

    @property
    def status(self) -> str:
        statuses = {c.status for c in self.checks}
        if FAIL in statuses:
            return FAIL
        if INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return PASS

    @property
    def ok(self) -> bool:
        return self.status == PASS

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def failing(self) -> list[str]:
        return [c.name for c in self.checks if c.status != PASS]

    def to_dict(self, timings: bool = True) -> dict:
        d = {
            "tool_version": TOOL_VERSION,
            "name": self.name,
            "n": self.n,
            "kind": self.kind,
            "status": self.status,
            "checks": [c.to_dict(timings) for c in self.checks],
            "limits": self.limits,
        }
        if timings and self.elapsed_ms is not None:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(
            d["name"],
            d.get("n"),
            d.get("kind"),
            [Check.from_dict(c) for c in d.get("checks", [])],
            dict(d.get("limits", {})),
            d.get("elapsed_ms"),
        )

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True, ensure_ascii=False)

    def to_text(self) -> str:
        width = max([len(c.name) for c in self.checks] + [10])
        lines = [f"{self.name}  n={self.n}  kind={self.kind}  -> {self.status.upper()}"]
        for c in self.checks:
            line = f"  {c.name:<{width}}  {c.status:<12}"
            if c.timing_ms is not None:
                line += f" {c.timing_ms:9.1f} ms"
            lines.append(line.rstrip())
        if self.limits:
            lines.append("  limits: " + ", ".join(f"{k}={v}" for k, v in sorted(self.limits.items())))
        return "\n".join(lines)


def emit_report(
    report: VerificationReport, fmt: str = "text", *, timings: bool = True, extras: Optional[dict] = None
) -> bytes:
    """Serialize ``report``; ``extras`` are extra top-level JSON keys."""
    if fmt == "json":
        d = report.to_dict(timings)
        d.update(extras or {})
        return (json.dumps(d, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "text":
        return (report.to_text() + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def write_report(data: bytes, path: str) -> None:
    """Write serialized report bytes to ``path`` (``-`` is standard output)."""
    import sys

    from .errors import IoFailure

    try:
        if path == "-":
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
        else:
            with open(path, "wb") as fh:
                fh.write(data)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
