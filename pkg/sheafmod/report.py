"""Law reports shared by every checker and by the CLI."""

from collections.abc import Iterable

import numpy as np
from pydantic import BaseModel, Field


class LawResult(BaseModel):
    """Verdict for a single law, with a witness when it fails."""

    law: str
    passed: bool
    witness: str | None = None
    note: str | None = None


class LawReport(BaseModel):
    """Ordered list of law verdicts about one subject."""

    subject: str
    results: list[LawResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[LawResult]:
        return [r for r in self.results if not r.passed]

    def check(
        self,
        law: str,
        passed: bool,
        witness: str | None = None,
        note: str | None = None,
    ) -> bool:
        """Record a verdict and return it."""
        self.results.append(
            LawResult(law=law, passed=bool(passed), witness=None if passed else witness, note=note)
        )
        return bool(passed)

    def extend(self, other: "LawReport", prefix: str | None = None) -> "LawReport":
        """Append another report's verdicts, optionally namespaced."""
        for r in other.results:
            law = f"{prefix}.{r.law}" if prefix else r.law
            self.results.append(r.model_copy(update={"law": law}))
        return self

    def verdict(self, law: str) -> LawResult | None:
        """Look up a verdict by law name."""
        for r in self.results:
            if r.law == law:
                return r
        return None


class InstanceReport(BaseModel):
    """All reports produced for one instance of the battery."""

    name: str
    descriptor: dict[str, int | str]
    reports: list[LawReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)


class RunReport(BaseModel):
    """Serializable outcome of a CLI command or suite run."""

    command: str
    seed: int | None = None
    instances: list[InstanceReport] = Field(default_factory=list)
    passed: bool = True

    def add(self, instance: InstanceReport) -> None:
        self.instances.append(instance)
        self.passed = self.passed and instance.passed


def first_violation(mask: np.ndarray) -> tuple[int, ...] | None:
    """Index of the first True entry of a violation mask, or None."""
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(i) for i in hits[0])


def describe(names: Iterable[str], values: Iterable[str]) -> str:
    """Render a witness like ``b=a, x=u``."""
    return ", ".join(f"{n}={v}" for n, v in zip(names, values))
