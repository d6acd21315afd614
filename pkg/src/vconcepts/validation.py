"""Violation records and reports returned by the validate* functions."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    law: str
    where: tuple
    detail: str

    def __str__(self):
        spot = ",".join(str(w) for w in self.where)
        return f"{self.law} at ({spot}): {self.detail}"


@dataclass
class ValidationReport:
    """All violations found in one artifact; empty means valid."""

    subject: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, where: tuple, detail: str) -> None:
        self.violations.append(Violation(law, tuple(where), detail))

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)

    def __str__(self):
        if self.ok:
            return f"{self.subject}: ok"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)
