"""Pass/fail reports shared by the algebra checks and the oracle suites."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional


@dataclass
class Check:
    name: str
    passed: bool
    witness: Optional[str] = None

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "witness": self.witness}


@dataclass
class VerificationReport:
    suite: str
    checks: List[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Optional[str] = None) -> Check:
        if not passed and witness is None:
            raise ValueError(f"failed check {name!r} needs a witness")
        check = Check(name, bool(passed), None if passed else witness)
        self.checks.append(check)
        return check

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }
