"""Search for integer solutions of |F(x, y; n, s, t)| = 1.

The windowed search only looks at x near alpha_i * y: a solution has one
beta_j = x - alpha_j y of absolute value below 1, so x lies within a unit of
alpha_j y.  An exhaustive rectangle scan is kept as the reference.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .analysis import Epsilon, SolutionRecord, check_condition, classify_solution
from .cubic_field import check_n
from .numerics import DEFAULT_POLICY, PrecisionPolicy
from .twisted_form import alpha_enclosures, form_coeffs

EXHAUSTIVE_LIMIT = 10 ** 8


class GuardError(ValueError):
    pass


class Strategy(str, enum.Enum):
    WINDOWED = "WINDOWED"
    EXHAUSTIVE = "EXHAUSTIVE"


@dataclass(frozen=True)
class SearchGrid:
    n_range: Tuple[int, int]
    s_range: Tuple[int, int]
    t_range: Tuple[int, int]
    y_max: int
    window: int = 2
    epsilon: Optional[Epsilon] = None
    require_condition: bool = False
    skip_zero: bool = False  # drop s = 0 or t = 0

    def __post_init__(self):
        if self.n_range[0] < 3:
            raise ValueError("n must be at least 3")
        if self.y_max < 1 or self.window < 1:
            raise ValueError("y_max and window must be positive")
        if self.require_condition and self.epsilon is None:
            raise ValueError("require_condition needs an epsilon")

    def cells(self) -> List[Tuple[int, int, int]]:
        out = []
        for n in range(self.n_range[0], self.n_range[1] + 1):
            for s in range(self.s_range[0], self.s_range[1] + 1):
                for t in range(self.t_range[0], self.t_range[1] + 1):
                    if self.skip_zero and s * t == 0:
                        continue
                    if self.require_condition and not check_condition(s, t, self.epsilon):
                        continue
                    out.append((n, s, t))
        return out


@dataclass
class SearchResult:
    records: List[SolutionRecord]
    stats: Dict[str, object] = field(default_factory=dict)
    strategy: Strategy = Strategy.WINDOWED

    def solutions(self) -> Set[Tuple[int, int, int, int, int]]:
        return {(r.n, r.s, r.t, r.x, r.y) for r in self.records}


def _nearest(enc, y: int) -> int:
    # round(mid * y) without floats
    q = enc.mid * y
    return (2 * q.numerator + q.denominator) // (2 * q.denominator)


def _windowed_candidates(n: int, s: int, t: int, y_max: int, window: int, bits: int) -> Set[Tuple[int, int]]:
    cand = {(1, 0), (-1, 0)}
    radius = max(1, window)
    for y in (-1, 0, 1):
        for x in range(-radius, radius + 1):
            cand.add((x, y))
    alphas = alpha_enclosures(n, s, t, bits)
    for y in range(1, y_max + 1):
        for sign in (1, -1):
            yy = sign * y
            for a in alphas:
                c = _nearest(a, yy)
                for x in range(c - window, c + window + 1):
                    cand.add((x, yy))
    return cand


def _records(n, s, t, points: Iterable[Tuple[int, int]], policy) -> Tuple[List[SolutionRecord], int, int]:
    F = form_coeffs(n, s, t)
    records = []
    tested = 0
    for x, y in points:
        tested += 1
        if abs(F(x, y)) == 1:
            records.append(classify_solution(x, y, n, s, t, policy))
    undecided = sum(1 for r in records if not r.certified)
    return records, tested, undecided


def _search_cell(cell, y_max, window, policy):
    n, s, t = cell
    cand = _windowed_candidates(n, s, t, y_max, window, policy.start_bits)
    return _records(n, s, t, sorted(cand), policy)


def _merge(results, strategy: Strategy, extra=None) -> SearchResult:
    records: List[SolutionRecord] = []
    tested = undecided = 0
    for recs, t, u in results:
        records.extend(recs)
        tested += t
        undecided += u
    records.sort(key=lambda r: (r.n, r.s, r.t, r.y, r.x))
    stats = {"candidates": tested, "solutions": len(records), "undecided": undecided}
    stats.update(extra or {})
    return SearchResult(records, stats, strategy)


def enumerate_solutions(grid: SearchGrid, policy: PrecisionPolicy = DEFAULT_POLICY, workers: int = 1) -> SearchResult:
    """Windowed search over every (n, s, t) cell of the grid; output sorted by (n, s, t, y, x)."""
    cells = grid.cells()
    if workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: _search_cell(c, grid.y_max, grid.window, policy), cells))
    else:
        results = [_search_cell(c, grid.y_max, grid.window, policy) for c in cells]
    extra = {"cells": len(cells)}
    if not grid.require_condition:
        extra["caveat"] = "admissibility not required; window completeness is only empirical"
    return _merge(results, Strategy.WINDOWED, extra)


def exhaustive_scan(
    n: int, s: int, t: int, x_max: int, y_max: int, policy: PrecisionPolicy = DEFAULT_POLICY
) -> SearchResult:
    """Every (x, y) with |x| <= x_max, |y| <= y_max, evaluated exactly."""
    check_n(n)
    if x_max < 0 or y_max < 0:
        raise ValueError("bounds must be non-negative")
    if x_max * y_max > EXHAUSTIVE_LIMIT:
        raise GuardError(f"x_max * y_max = {x_max * y_max} exceeds {EXHAUSTIVE_LIMIT}")
    points = ((x, y) for y in range(-y_max, y_max + 1) for x in range(-x_max, x_max + 1))
    return _merge([_records(n, s, t, points, policy)], Strategy.EXHAUSTIVE, {"cells": 1})


@dataclass
class StrategyComparison:
    equal: bool
    windowed_count: int
    exhaustive_count: int
    missing: List[Tuple[int, int, int, int, int]]  # found by the scan only
    extra: List[Tuple[int, int, int, int, int]]  # windowed hits inside the rectangle the scan missed


def compare_strategies(
    grid: SearchGrid,
    policy: PrecisionPolicy = DEFAULT_POLICY,
    x_max: Optional[int] = None,
    workers: int = 1,
) -> StrategyComparison:
    """Windowed vs exhaustive solution sets on the rectangle |x| <= x_max, |y| <= y_max."""
    x_max = grid.y_max if x_max is None else x_max
    windowed = enumerate_solutions(grid, policy, workers)
    inside = {p for p in windowed.solutions() if abs(p[3]) <= x_max and abs(p[4]) <= grid.y_max}
    reference: Set = set()
    for n, s, t in grid.cells():
        reference |= exhaustive_scan(n, s, t, x_max, grid.y_max, policy).solutions()
    return StrategyComparison(
        equal=inside == reference,
        windowed_count=len(inside),
        exhaustive_count=len(reference),
        missing=sorted(reference - inside),
        extra=sorted(inside - reference),
    )
