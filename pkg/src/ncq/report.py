"""Small pass/fail report containers shared by validators and the suite."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    residual: float
    tol: float
    elapsed: float = 0.0
    detail: str = ""

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "residual": float(self.residual),
            "tol": float(self.tol),
        }
        if timings:
            out["elapsed"] = round(float(self.elapsed), 6)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, residual: float, tol: float, **kw) -> Check:
        residual = float(residual)
        # NaN residuals must never pass
        check = Check(name, bool(residual <= tol), residual, tol, **kw)
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self, timings: bool = False) -> dict:
        return {"pass": self.passed, "checks": [c.as_dict(timings) for c in self.checks]}
