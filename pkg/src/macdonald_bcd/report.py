"""Verification reports and the seeded sampling harness."""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

__all__ = [
    "PASS",
    "FAIL",
    "SKIPPED",
    "VerificationReport",
    "derive_seed",
    "random_rational",
    "run_sampled",
    "symbolic_report",
]

PASS, FAIL, SKIPPED = "pass", "fail", "skipped-degenerate"

DEFAULT_SAMPLES = 20
MAX_RETRIES = 100
BOUND = 1000


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "to_json"):
        return v.to_json()
    return v


@dataclass
class VerificationReport:
    """Outcome of one identity check on one instance."""

    suite: str
    params: dict
    verdict: str
    residual: object = None
    seed: int | None = None
    samples: int = 0
    skipped: int = 0
    wall_time: float | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL, SKIPPED):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == FAIL and self.residual is None:
            raise ValueError("a failing report must carry a residual")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "params": _jsonable(self.params),
            "verdict": self.verdict,
            "seed": self.seed,
            "samples": self.samples,
            "skipped": self.skipped,
        }
        if self.residual is not None:
            out["residual"] = _jsonable(self.residual)
        if self.notes:
            out["notes"] = list(self.notes)
        if timing and self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    def to_line(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True, separators=(",", ":"))


def derive_seed(seed: int, suite: str, params: Mapping, index: int) -> int:
    """Stable per-sample seed, independent of process and hash randomization."""
    key = json.dumps([seed, suite, _jsonable(dict(params)), index], sort_keys=True)
    return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "big")


def random_rational(rng: random.Random, bound: int = BOUND) -> Fraction:
    num = rng.randint(1, bound) * rng.choice((1, -1))
    return Fraction(num, rng.randint(1, bound))


def run_sampled(
    suite: str,
    params: Mapping,
    names: Iterable[str],
    check: Callable[[dict], tuple[object, object]],
    seed: int = 0,
    count: int = DEFAULT_SAMPLES,
) -> VerificationReport:
    """Evaluate ``check`` at ``count`` seeded rational points.

    ``check`` returns (lhs, rhs); a ZeroDivisionError means a pole and
    triggers a resample.  A sample that stays degenerate after the retry
    budget is counted as skipped, never as a pass.
    """
    names = tuple(names)
    passed = skipped = 0
    for index in range(count):
        rng = random.Random(derive_seed(seed, suite, params, index))
        for _ in range(MAX_RETRIES):
            point = {name: random_rational(rng) for name in names}
            try:
                lhs, rhs = check(point)
            except ZeroDivisionError:
                continue
            if lhs != rhs:
                residual = {"sample": point, "lhs": str(lhs), "rhs": str(rhs), "index": index}
                return VerificationReport(suite, dict(params), FAIL, residual, seed, passed, skipped)
            passed += 1
            break
        else:
            skipped += 1
    verdict = SKIPPED if skipped else PASS
    report = VerificationReport(suite, dict(params), verdict, None, seed, passed, skipped)
    if skipped:
        report.notes.append(f"{skipped} sample(s) degenerate after {MAX_RETRIES} retries")
    return report


def symbolic_report(suite: str, params: Mapping, lhs, rhs) -> VerificationReport:
    """Exact comparison of two symbolic values."""
    if lhs == rhs:
        return VerificationReport(suite, dict(params), PASS)
    try:
        residual = lhs - rhs
    except TypeError:
        residual = {"lhs": str(lhs), "rhs": str(rhs)}
    return VerificationReport(suite, dict(params), FAIL, residual)
