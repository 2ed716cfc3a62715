from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of a brute-force certificate: pass/fail, reasons, and counts."""

    ok: bool
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "failures": list(self.failures), **self.details}
