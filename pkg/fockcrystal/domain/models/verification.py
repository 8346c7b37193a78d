from typing import List, Optional

from pydantic import BaseModel, Field


class SuiteReport(BaseModel):
    """Pass/fail tally of one verification suite over a grid."""
    suite: str
    checks: int = 0
    passed: int = 0
    failed: int = 0
    visits: int = 0
    failures: List[str] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{self.suite}: {status} {self.passed}/{self.checks} checks, {self.visits} visits"


class VerificationReport(BaseModel):
    suites: List[SuiteReport] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(suite.ok for suite in self.suites)


class VerificationGrid(BaseModel):
    """Parameter grid and limits of a verification run."""
    e_values: List[int]
    n_values: List[int]
    charge_values: Optional[List[int]] = None
    budget: int = Field(default=1_000_000, gt=0)
    workers: int = Field(default=1, ge=1)
    seed: int = 2006
    samples: int = Field(default=1000, ge=0)

    def charges_for(self, e: int) -> List[int]:
        return self.charge_values if self.charge_values is not None else list(range(e))
