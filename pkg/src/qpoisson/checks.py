"""Verification reports shared by the axiom checkers."""
from __future__ import annotations

from dataclasses import dataclass, field


class AxiomError(ValueError):
    """An axiom check failed; ``axiom`` names it and ``deviation`` measures it."""

    def __init__(self, subject: str, axiom: str, deviation: float):
        self.subject = subject
        self.axiom = axiom
        self.deviation = deviation
        super().__init__(f"{subject}: axiom '{axiom}' violated (deviation {deviation:.3e})")


@dataclass
class VerificationReport:
    subject: str
    threshold: float
    deviations: dict[str, float] = field(default_factory=dict)

    def add(self, axiom: str, deviation: float):
        self.deviations[axiom] = max(float(deviation), self.deviations.get(axiom, 0.0))

    @property
    def failures(self) -> list[str]:
        return [a for a, d in self.deviations.items() if not d <= self.threshold]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values(), default=0.0)

    def raise_if_failed(self) -> "VerificationReport":
        if self.failures:
            axiom = self.failures[0]
            raise AxiomError(self.subject, axiom, self.deviations[axiom])
        return self

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "threshold": self.threshold,
            "deviations": dict(self.deviations),
            "failures": self.failures,
        }
