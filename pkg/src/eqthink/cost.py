"""Empirical complexity checks over instrumented step counts.

Growth verdicts are statistical, not symbolic: we measure steps at a
range of sizes, divide by a candidate growth function, and demand that
the ratio stays inside a window on the larger sizes.  Recurrences are
verified by memoized unfolding against a proposed closed-form bound.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Callable

from .evaluator import DefEnv, eval_counting
from .properties import Stream, trial_seed
from .syntax import App, Var
from .values import Value, from_list

CANDIDATES: dict[str, Callable[[int], float]] = {
    "n": lambda n: float(n),
    "nlogn": lambda n: n * math.log2(n) if n > 1 else 0.0,
    "n^2": lambda n: float(n * n),
}

DEFAULT_WINDOW = 1.5
MEASURE_SAMPLES = 5
MEASURE_FUEL = 10**10  # quadratic desk-scale runs overflow the eval default


def random_list(size: int, stream: Stream) -> Value:
    return from_list([stream.int_between(-100, 100) for _ in range(size)])


def reverse_sorted_list(size: int, stream: Stream) -> Value:
    return from_list(range(size - 1, -1, -1))


def measure_steps(
    op: str,
    gen: Callable[[int, Stream], Value],
    sizes: list[int],
    seed: int = 0,
    defs: DefEnv | None = None,
    samples: int = MEASURE_SAMPLES,
    fuel: int = MEASURE_FUEL,
) -> dict[int, int]:
    """Median step total over `samples` random inputs at each size.

    Deterministic generators (worst case) should use samples=1.
    """
    term = App(op, (Var("input"),))
    out: dict[int, int] = {}
    for size in sizes:
        totals = []
        for i in range(samples):
            stream = Stream(trial_seed(seed, size * samples + i))
            value = gen(size, stream)
            _, count = eval_counting(term, {"input": value}, defs, fuel)
            totals.append(count.total)
        totals.sort()
        out[size] = totals[len(totals) // 2]
    return out


@dataclass(frozen=True)
class BoundReport:
    sizes: list[int]
    steps: dict[int, int]
    candidate: str
    window: float
    c_lo: float
    c_hi: float
    verdict: str

    @property
    def consistent(self) -> bool:
        return self.verdict == "Consistent"

    def ratios(self) -> dict[int, float]:
        f = CANDIDATES[self.candidate]
        return {n: self.steps[n] / f(n) for n in self.sizes if f(n) > 0}

    def to_json(self) -> dict:
        return {
            "sizes": list(self.sizes),
            "steps": {str(n): self.steps[n] for n in self.sizes},
            "candidate": self.candidate,
            "window": self.window,
            "c_lo": self.c_lo,
            "c_hi": self.c_hi,
            "verdict": self.verdict,
        }


def check_bound(
    steps: dict[int, int], candidate: str, window: float = DEFAULT_WINDOW
) -> BoundReport:
    """Consistent iff max/min of steps(n)/f(n) over the largest half of
    the sizes stays within `window`."""
    if candidate not in CANDIDATES:
        raise ValueError(f"unknown candidate {candidate!r}")
    sizes = sorted(steps)
    if len(sizes) < 4:
        raise ValueError("need at least 4 sizes to judge growth")
    f = CANDIDATES[candidate]
    upper = sizes[len(sizes) // 2 :]
    ratios = []
    for n in upper:
        if f(n) <= 0:
            raise ValueError(f"candidate {candidate} is not positive at n={n}")
        ratios.append(steps[n] / f(n))
    c_lo, c_hi = min(ratios), max(ratios)
    verdict = "Consistent" if c_hi / c_lo <= window else "Inconsistent"
    return BoundReport(sizes, dict(steps), candidate, window, c_lo, c_hi, verdict)


def emit_csv(report: BoundReport) -> str:
    f = CANDIDATES[report.candidate]
    buf = io.StringIO()
    buf.write("size,steps,candidate,c\n")
    for n in report.sizes:
        denom = f(n)
        c = f"{report.steps[n] / denom:.6f}" if denom > 0 else ""
        buf.write(f"{n},{report.steps[n]},{report.candidate},{c}\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Recurrences


@dataclass(frozen=True)
class Recurrence:
    """base maps small n to values; step computes T(n) given a lookup
    function restricted to strictly smaller indices."""

    base: dict[int, int]
    step: Callable[[int, Callable[[int], int]], int]


class _Need(Exception):
    def __init__(self, index: int):
        self.index = index


def unfold(r: Recurrence, n: int, memo: dict[int, int] | None = None) -> int:
    """Memoized, stack-safe evaluation of T(n)."""
    if memo is None:
        memo = dict(r.base)
    else:
        for k, v in r.base.items():
            memo.setdefault(k, v)
    stack = [n]
    while stack:
        m = stack[-1]
        if m in memo:
            stack.pop()
            continue

        def lookup(k: int, at: int = m) -> int:
            if k >= at:
                raise ValueError(f"step rule at n={at} references T({k})")
            if k in memo:
                return memo[k]
            raise _Need(k)

        try:
            memo[m] = r.step(m, lookup)
            stack.pop()
        except _Need as need:
            if need.index < 0:
                raise ValueError(f"no base case covers T({need.index})")
            stack.append(need.index)
    return memo[n]


@dataclass(frozen=True)
class RecurrenceReport:
    holds: bool
    constant: float | None
    checked: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "constant": self.constant,
            "checked": list(self.checked),
        }


def check_recurrence(
    r: Recurrence,
    g: Callable[[int], float],
    c_range: tuple[float, float],
    n_range: list[int],
) -> RecurrenceReport:
    """Holds iff some c in [c_lo, c_hi] has T(n) <= c*g(n) on n_range.

    T(n)/g(n) is maximized once; monotonicity in c then settles every
    constant in the range at no extra cost.
    """
    c_lo, c_hi = c_range
    memo: dict[int, int] = dict(r.base)
    needed = None
    for n in n_range:
        t = unfold(r, n, memo)
        gn = g(n)
        if gn <= 0:
            if t > 0:
                return RecurrenceReport(False, None, list(n_range))
            continue
        ratio = t / gn
        if needed is None or ratio > needed:
            needed = ratio
    if needed is None:
        needed = c_lo
    fitted = max(needed, c_lo)
    holds = fitted <= c_hi
    return RecurrenceReport(holds, fitted if holds else None, list(n_range))
