"""Structured check reports shared by every module."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .exactla import Mat


@dataclass
class Failure:
    check: str
    where: str
    detail: str = ""
    residual: list[tuple[int, int, str]] = field(default_factory=list)

    def to_record(self) -> dict:
        out = {"check": self.check, "where": self.where}
        if self.detail:
            out["detail"] = self.detail
        if self.residual:
            out["residual"] = [list(r) for r in self.residual]
        return out


@dataclass
class Report:
    """A named list of failures plus recorded facts; empty failures means valid."""

    name: str
    failures: list[Failure] = field(default_factory=list)
    facts: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, check: str, where: str, detail: str = "", residual: Mat | None = None, limit: int = 8):
        entries = []
        if residual is not None:
            entries = [(i, j, residual.field.fmt(v)) for i, j, v in residual.nonzeros()[:limit]]
        self.failures.append(Failure(check, where, detail, entries))

    def expect_equal(self, check: str, lhs: Mat, rhs: Mat, what: str = "basis element") -> bool:
        """Record a failure located at the first offending column of lhs - rhs."""
        if lhs.shape != rhs.shape:
            self.fail(check, "shape", f"{lhs.shape} != {rhs.shape}")
            return False
        diff = lhs - rhs
        bad = sorted({j for _, j, _ in diff.nonzeros()})
        if bad:
            self.fail(check, f"{what} {bad[0]}", f"{len(bad)} offending columns: {bad[:8]}", diff)
            return False
        return True

    def merge(self, other: Report, prefix: str = "") -> Report:
        for f in other.failures:
            self.failures.append(Failure(prefix + f.check, f.where, f.detail, f.residual))
        return self

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "facts": self.facts,
            "failures": [f.to_record() for f in self.failures],
        }

    def summary(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.ok else 'FAIL'}"]
        for k, v in self.facts.items():
            lines.append(f"  {k}: {v}")
        for f in self.failures:
            lines.append(f"  ! {f.check} at {f.where}" + (f" ({f.detail})" if f.detail else ""))
        return "\n".join(lines)
