"""Deviation reports emitted by the axiom checks and suite runner."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Report:
    check_id: str
    params: dict = field(default_factory=dict)
    n_samples: int = 0
    max_deviation: float = 0.0
    tolerance: float = 0.0
    passed: bool = True

    @staticmethod
    def from_deviation(check_id: str, params: dict, n_samples: int,
                       max_deviation: float, tolerance: float) -> "Report":
        max_deviation = float(max_deviation)
        tolerance = float(tolerance)
        return Report(check_id, params, n_samples, max_deviation, tolerance,
                      passed=max_deviation <= tolerance)

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "params": self.params,
            "n_samples": self.n_samples,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
