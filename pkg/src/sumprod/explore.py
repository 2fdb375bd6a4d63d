"""Set-family generators, parameter sweeps, and annealing search for extremal
sum-product configurations.

The search works over integer sets in a bounded range with exact integer
objectives; floats appear only in the Metropolis acceptance step and in
reported ratios, so runs are reproducible bit for bit for a fixed seed.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import exp

from .cert2d import verify_theorem_main
from .energy import energy
from .numset import NumberSet, ceil_log2, productset_size, sumset_size
from .report import fmt_sig12

__all__ = [
    "FAMILIES",
    "OBJECTIVES",
    "FamilySpec",
    "SweepRow",
    "SearchConfig",
    "SearchResult",
    "generate",
    "sweep",
    "write_sweep_csv",
    "anneal",
    "exhaustive_search",
]

FAMILIES = ("interval", "ap", "gp", "randint", "union_ap")
OBJECTIVES = ("maxside_ratio", "thm_main_tightness")

SWEEP_COLUMNS = (
    "family",
    "n",
    "size",
    "sumset",
    "productset",
    "energy",
    "main_lhs",
    "main_rhs",
    "main_ratio",
    "corollary_lhs",
    "corollary_rhs",
    "corollary_ratio",
    "status",
)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int
    start: Fraction = Fraction(1)
    step: Fraction = Fraction(1)
    ratio: Fraction = Fraction(2)
    max_value: int = 0  # upper end of the random range (CLI flag --range)
    seed: int = 0


def generate(spec: FamilySpec) -> NumberSet:
    """Deterministic set of exactly spec.n elements."""
    if spec.kind not in FAMILIES:
        raise ValueError(f"unknown family {spec.kind!r}; choose from {FAMILIES}")
    if spec.n < 1:
        raise ValueError(f"n must be >= 1, got {spec.n}")
    start, step, ratio = Fraction(spec.start), Fraction(spec.step), Fraction(spec.ratio)

    if spec.kind == "interval":
        return NumberSet(range(1, spec.n + 1)) if start == 1 else NumberSet(
            start + i for i in range(spec.n)
        )
    if spec.kind == "ap":
        if start <= 0 or step <= 0:
            raise ValueError("ap needs start > 0 and step > 0")
        return NumberSet(start + i * step for i in range(spec.n))
    if spec.kind == "gp":
        if start <= 0 or ratio <= 1:
            raise ValueError("gp needs start > 0 and ratio > 1")
        return NumberSet(start * ratio ** i for i in range(spec.n))
    if spec.kind == "randint":
        if spec.max_value < spec.n:
            raise ValueError(f"range {spec.max_value} is too small for n = {spec.n}")
        rng = random.Random(spec.seed)
        return NumberSet(rng.sample(range(1, spec.max_value + 1), spec.n))
    # union_ap: an arithmetic progression together with its dilation by `ratio`,
    # extended term by term until exactly n distinct elements exist
    if start <= 0 or step <= 0 or ratio <= 1:
        raise ValueError("union_ap needs start > 0, step > 0 and ratio > 1")
    first = (spec.n + 1) // 2
    values = {start + i * step for i in range(first)}
    i = 0
    while len(values) < spec.n:
        values.add(ratio * (start + i * step))
        i += 1
    return NumberSet(values)


@dataclass(frozen=True)
class SweepRow:
    family: str
    n: int
    size: int = 0
    sumset: int = 0
    productset: int = 0
    energy: int = 0
    main_lhs: int = 0
    main_rhs: Fraction = Fraction(0)
    corollary_lhs: int = 0
    corollary_rhs: Fraction = Fraction(0)
    status: str = "ok"

    def as_csv(self) -> list[str]:
        if self.status != "ok":
            return [self.family, str(self.n)] + [""] * (len(SWEEP_COLUMNS) - 3) + [self.status]
        applicable = self.n >= 2
        return [
            self.family,
            str(self.n),
            str(self.size),
            str(self.sumset),
            str(self.productset),
            str(self.energy),
            str(self.main_lhs) if applicable else "",
            str(self.main_rhs) if applicable else "",
            fmt_sig12(self.main_lhs / self.main_rhs) if applicable else "",
            str(self.corollary_lhs) if applicable else "",
            str(self.corollary_rhs) if applicable else "",
            fmt_sig12(self.corollary_lhs / self.corollary_rhs) if applicable else "",
            self.status,
        ]


def sweep(
    kind: str,
    ns,
    *,
    budget: int = 3 * 10 ** 7,
    threads: int = 1,
    spec_kwargs: dict | None = None,
) -> list[SweepRow]:
    """One row of exact statistics per n; stops with a marker row when the
    pair-enumeration budget would be exceeded."""
    rows: list[SweepRow] = []
    for n in ns:
        if n * n > budget:
            rows.append(SweepRow(family=kind, n=n, status="budget_exceeded"))
            break
        A = generate(FamilySpec(kind=kind, n=n, **(spec_kwargs or {})))
        size = len(A)
        ss = sumset_size(A, A, threads=threads)
        ps = productset_size(A, A, threads=threads)
        E = energy(A)
        if size >= 2:
            cl = ceil_log2(size)
            main_lhs = ps * ss * ss
            main_rhs = Fraction(size ** 4, 4 * cl)
            cor_lhs = max(ss, ps) ** 3
            cor_rhs = Fraction(size ** 4, 8 * cl)
        else:
            main_lhs, main_rhs = 0, Fraction(0)
            cor_lhs, cor_rhs = 0, Fraction(0)
        rows.append(
            SweepRow(
                family=kind,
                n=n,
                size=size,
                sumset=ss,
                productset=ps,
                energy=E,
                main_lhs=main_lhs,
                main_rhs=main_rhs,
                corollary_lhs=cor_lhs,
                corollary_rhs=cor_rhs,
            )
        )
    return rows


def write_sweep_csv(rows, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow(row.as_csv())


# ---------------------------------------------------------------------------
# annealing search over integer sets


@dataclass(frozen=True)
class SearchConfig:
    objective: str
    n: int
    max_value: int
    iterations: int = 10_000
    seed: int = 0
    chains: int = 1
    t0: float = 1.0
    cooling: float = 0.995


@dataclass(frozen=True)
class SearchResult:
    config: SearchConfig
    best: NumberSet
    best_key: int
    stats: dict = field(default_factory=dict)
    trace: tuple = ()

    def to_json_dict(self) -> dict:
        return {
            "config": {
                "objective": self.config.objective,
                "n": self.config.n,
                "range": self.config.max_value,
                "iterations": self.config.iterations,
                "seed": self.config.seed,
                "chains": self.config.chains,
                "t0": self.config.t0,
                "cooling": self.config.cooling,
            },
            "best": {
                "set": [str(e) for e in self.best.elements],
                "key": self.best_key,
                "stats": self.stats,
            },
            "trace": [list(t) for t in self.trace],
        }


def _objective_key(values: tuple[int, ...], objective: str) -> int:
    """Exact integer objective (smaller is better) for same-size sets."""
    ss = len({a + b for a in values for b in values})
    ps = len({a * b for a in values for b in values})
    if objective == "maxside_ratio":
        return max(ss, ps)
    if objective == "thm_main_tightness":
        return ps * ss * ss
    raise ValueError(f"unknown objective {objective!r}; choose from {OBJECTIVES}")


def _normalize(key: int, n: int, objective: str) -> float:
    if objective == "maxside_ratio":
        return key / n ** (4.0 / 3.0)
    return key * 4.0 * ceil_log2(n) / n ** 4


def _anneal_chain(config: SearchConfig, seed: int):
    rng = random.Random(seed)
    n, R = config.n, config.max_value
    current = tuple(sorted(rng.sample(range(1, R + 1), n)))
    cur_key = _objective_key(current, config.objective)
    best, best_key = current, cur_key
    trace = [(0, best_key)]
    temp = config.t0
    for it in range(1, config.iterations + 1):
        members = set(current)
        pos = rng.randrange(n)
        while True:
            v = rng.randint(1, R)
            if v not in members:
                break
        cand = tuple(sorted(members - {current[pos]} | {v}))
        key = _objective_key(cand, config.objective)
        if key <= cur_key or (
            temp > 0
            and rng.random()
            < exp(
                (_normalize(cur_key, n, config.objective) - _normalize(key, n, config.objective))
                / temp
            )
        ):
            current, cur_key = cand, key
        if key < best_key or (key == best_key and cand < best):
            best, best_key = cand, key
            trace.append((it, best_key))
        temp *= config.cooling
    return best, best_key, tuple(trace)


def anneal(config: SearchConfig) -> SearchResult:
    """Simulated annealing with element-replacement moves; deterministic for a
    fixed config. Multiple chains run with derived seeds and merge by best key
    with the lexicographically smallest set as tie-break."""
    if config.n < 4:
        raise ValueError("search needs n >= 4")
    if config.max_value <= config.n:
        raise ValueError("range must exceed n")
    if config.objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {config.objective!r}; choose from {OBJECTIVES}")
    best = None
    best_key = None
    trace = ()
    for chain in range(config.chains):
        b, k, t = _anneal_chain(config, config.seed + chain)
        if best_key is None or k < best_key or (k == best_key and b < best):
            best, best_key, trace = b, k, t
    A = NumberSet(best)
    report = verify_theorem_main(A)
    assert report.holds, "search produced a theorem-violating set"
    ss = sumset_size(A, A)
    ps = productset_size(A, A)
    stats = {
        "sumset": ss,
        "productset": ps,
        "energy": energy(A),
        "maxside_ratio": fmt_sig12(max(ss, ps) / config.n ** (4.0 / 3.0)),
        "main_lhs": str(report.lhs),
        "main_rhs": str(report.rhs),
        "main_ratio": fmt_sig12(float(report.ratio)),
    }
    return SearchResult(config=config, best=A, best_key=best_key, stats=stats, trace=trace)


def exhaustive_search(n: int, max_value: int, objective: str):
    """Global optimum over all n-subsets of {1..max_value}: (key, NumberSet)."""
    from itertools import combinations

    best = None
    best_key = None
    for comb in combinations(range(1, max_value + 1), n):
        key = _objective_key(comb, objective)
        if best_key is None or key < best_key or (key == best_key and comb < best):
            best, best_key = comb, key
    return best_key, NumberSet(best)
