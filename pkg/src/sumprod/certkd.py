"""The k-fold pipeline: line cover of the Cartesian power, heavy lines,
triangulation of their chart points, and disjoint simplex sums.

All binding inequalities are checked in exact arithmetic. The final scalar
comparison of |kA| against the asymptotic lower bound is advisory only and
reported with 12 significant digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import log2

from .geomkd import LineKD, Triangulation, placing_triangulation, symmetry_check
from .numset import (
    BudgetExceeded,
    NumberSet,
    kfold_sumset,
    productset_size,
    ratioset_size,
)
from .report import Check, fmt_sig12, json_bytes

__all__ = [
    "KFoldParameters",
    "HeavySelection",
    "CertificateKD",
    "kfold_parameters",
    "line_cover",
    "heavy_lines",
    "build_kfold_certificate",
]

DEFAULT_BUDGET = 10 ** 7


@dataclass(frozen=True)
class KFoldParameters:
    k: int
    set_size: int
    ratioset_size: int
    threshold: Fraction  # |A|^k / (2 |A/A|^(k-1))
    threshold_ceil: int
    epsilon_star: float  # (log2 |A/A| / log2 |A| - 1) / 2
    c_k: float  # (k 2^(k+1))^(-1/k)


@dataclass(frozen=True)
class HeavySelection:
    lines: tuple  # LineKD, sorted by direction
    coverage: int
    coverage_ok: bool  # covers at least half of the lattice points
    count_ok: bool  # |H| >= |A|^(k-1) / 2


@dataclass(frozen=True)
class CertificateKD:
    applicable: bool
    reason: str | None
    set: NumberSet
    k: int
    params: KFoldParameters | None
    cover_lines: int
    cover_total: int
    cover_histogram: dict
    heavy: HeavySelection | None
    chart_points: tuple
    symmetric: bool | None
    degenerate: bool
    triangulation: Triangulation | None
    simplex_sum_sizes: tuple
    kfold_size: int | None
    checks: tuple
    advisory: dict

    def binding_ok(self) -> bool:
        return all(c.holds for c in self.checks if c.binding)

    def to_json_dict(self) -> dict:
        params = None
        if self.params is not None:
            params = {
                "k": self.params.k,
                "setSize": self.params.set_size,
                "ratiosetSize": self.params.ratioset_size,
                "threshold": str(self.params.threshold),
                "thresholdCeil": self.params.threshold_ceil,
                "epsilonStar": fmt_sig12(self.params.epsilon_star),
                "ck": fmt_sig12(self.params.c_k),
            }
        heavy = None
        if self.heavy is not None:
            heavy = {
                "count": len(self.heavy.lines),
                "coverage": self.heavy.coverage,
                "coverageOk": self.heavy.coverage_ok,
                "countOk": self.heavy.count_ok,
            }
        tri = None
        if self.triangulation is not None:
            tri = {"simplices": [list(s) for s in self.triangulation.simplices]}
        chart = None
        if len(self.chart_points) <= 10 ** 4:
            chart = [[str(c) for c in p] for p in self.chart_points]
        return {
            "set": [str(e) for e in self.set.elements],
            "k": self.k,
            "applicable": self.applicable,
            "degenerate": self.degenerate,
            "params": params,
            "cover": {
                "lines": self.cover_lines,
                "points": self.cover_total,
                "histogram": {
                    str(count): freq for count, freq in sorted(self.cover_histogram.items())
                },
            },
            "H": heavy,
            "P": chart,
            "symmetric": self.symmetric,
            "triangulation": tri,
            "simplexSums": list(self.simplex_sum_sizes),
            "kfoldSize": self.kfold_size,
            "inequalities": [c.to_json() for c in self.checks],
            "advisory": self.advisory,
        }

    def to_json_bytes(self) -> bytes:
        return json_bytes(self.to_json_dict())


def kfold_parameters(A: NumberSet, k: int) -> KFoldParameters:
    """Exact threshold and advisory exponents for the k-fold construction."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if len(A) == 0:
        raise ValueError("empty set")
    n = len(A)
    r = ratioset_size(A, A)
    threshold = Fraction(n ** k, 2 * r ** (k - 1))
    ceil_t = -((-threshold.numerator) // threshold.denominator)
    eps = 0.0 if n == 1 else (log2(r) / log2(n) - 1.0) / 2.0
    return KFoldParameters(
        k=k,
        set_size=n,
        ratioset_size=r,
        threshold=threshold,
        threshold_ceil=ceil_t,
        epsilon_star=eps,
        c_k=(k * 2.0 ** (k + 1)) ** (-1.0 / k),
    )


def _enumerate_cover(A: NumberSet, k: int, budget: int, with_points: bool):
    """Direction -> count (and optionally the lattice points per direction)."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if len(A) == 0:
        raise ValueError("empty set")
    total = len(A) ** k
    if total > budget:
        raise BudgetExceeded(
            f"|A|^k = {total} exceeds the enumeration budget {budget}; "
            "use a smaller set or raise --budget"
        )
    counts: dict = {}
    points: dict = {}
    one = Fraction(1)
    for tup in product(A.elements, repeat=k):
        a1 = tup[0]
        direction = (one,) + tuple(c / a1 for c in tup[1:])
        counts[direction] = counts.get(direction, 0) + 1
        if with_points:
            points.setdefault(direction, []).append(tup)
    return counts, points


def line_cover(A: NumberSet, k: int, budget: int = DEFAULT_BUDGET) -> dict:
    """Assign each point of the k-fold Cartesian power to its line through
    the origin; returns direction -> point count."""
    counts, _ = _enumerate_cover(A, k, budget, with_points=False)
    return counts


def heavy_lines(cover: dict, params: KFoldParameters) -> HeavySelection:
    """Lines meeting the ceil(threshold) cut, with the two verified facts."""
    ceil_t = params.threshold_ceil
    lines = tuple(
        LineKD(direction=d, count=c)
        for d, c in sorted(cover.items())
        if c >= ceil_t
    )
    coverage = sum(line.count for line in lines)
    n, k = params.set_size, params.k
    return HeavySelection(
        lines=lines,
        coverage=coverage,
        coverage_ok=2 * coverage >= n ** k,
        count_ok=2 * len(lines) >= n ** (k - 1),
    )


def build_kfold_certificate(
    A: NumberSet, k: int, budget: int = DEFAULT_BUDGET
) -> CertificateKD:
    """Run the whole pipeline and evaluate the chain of inequalities exactly."""
    n = len(A)
    if n < 2:
        return CertificateKD(
            applicable=False,
            reason="not applicable: |A| < 2",
            set=A,
            k=k,
            params=None,
            cover_lines=0,
            cover_total=0,
            cover_histogram={},
            heavy=None,
            chart_points=(),
            symmetric=None,
            degenerate=False,
            triangulation=None,
            simplex_sum_sizes=(),
            kfold_size=None,
            checks=(),
            advisory={},
        )

    params = kfold_parameters(A, k)
    counts, points = _enumerate_cover(A, k, budget, with_points=True)
    checks: list[Check] = []

    total = sum(counts.values())
    checks.append(
        Check("cover_total_points", total, n ** k, "==", total == n ** k)
    )
    line_bound = params.ratioset_size ** (k - 1)
    checks.append(
        Check("cover_line_count", len(counts), line_bound, "<=", len(counts) <= line_bound)
    )

    heavy = heavy_lines(counts, params)
    checks.append(
        Check(
            "heavy_threshold_identity",
            2 * params.threshold_ceil * line_bound,
            n ** k + 2 * line_bound,
            "<=",
            2 * params.threshold_ceil * line_bound <= n ** k + 2 * line_bound,
        )
    )
    checks.append(
        Check("heavy_coverage", 2 * heavy.coverage, n ** k, ">=", heavy.coverage_ok)
    )
    checks.append(
        Check("heavy_line_count", 2 * len(heavy.lines), n ** (k - 1), ">=", heavy.count_ok)
    )

    chart = tuple(sorted(line.chart_point() for line in heavy.lines))
    symmetric = symmetry_check(chart, k)
    checks.append(
        Check("chart_permutation_symmetry", int(symmetric), 1, "==", symmetric)
    )

    histogram: dict = {}
    for c in counts.values():
        histogram[c] = histogram.get(c, 0) + 1

    try:
        tri = placing_triangulation(chart, k - 1)
    except ValueError:
        return CertificateKD(
            applicable=True,
            reason="degenerate: affine hull dimension < k-1",
            set=A,
            k=k,
            params=params,
            cover_lines=len(counts),
            cover_total=total,
            cover_histogram=histogram,
            heavy=heavy,
            chart_points=chart,
            symmetric=symmetric,
            degenerate=True,
            triangulation=None,
            simplex_sum_sizes=(),
            kfold_size=None,
            checks=tuple(checks),
            advisory={},
        )

    assert tri.vertices == chart  # placing keeps the sorted vertex order
    line_point_lists = [points[(Fraction(1),) + p] for p in tri.vertices]

    sizes = []
    owners: dict = {}
    product_rule_ok = True
    disjoint_ok = True
    for si, simplex in enumerate(tri.simplices):
        vec_sets = [line_point_lists[v] for v in simplex]
        sums = set()
        for combo in product(*vec_sets):
            sums.add(tuple(sum(c[i] for c in combo) for i in range(k)))
        expected = 1
        for vs in vec_sets:
            expected *= len(vs)
        if len(sums) != expected:
            product_rule_ok = False
        sizes.append(len(sums))
        for pt in sums:
            if pt in owners:
                disjoint_ok = False
            else:
                owners[pt] = si
    checks.append(
        Check(
            "simplex_sum_product_rule",
            int(product_rule_ok),
            1,
            "==",
            product_rule_ok,
            note="each simplex sum has size equal to the product of its line counts",
        )
    )
    checks.append(
        Check(
            "simplex_sums_pairwise_disjoint",
            int(disjoint_ok),
            1,
            "==",
            disjoint_ok,
        )
    )

    kA = kfold_sumset(A, k)
    ksize = len(kA)
    checks.append(
        Check(
            "simplex_sums_fit_power",
            sum(sizes),
            ksize ** k,
            "<=",
            sum(sizes) <= ksize ** k,
        )
    )
    checks.append(
        Check(
            "triangulation_size",
            len(tri.simplices),
            len(chart) - (k - 1),
            ">=",
            len(tri.simplices) >= len(chart) - (k - 1),
        )
    )

    final_rhs = params.c_k * float(n) ** (2.0 - 1.0 / k - 2.0 * (k - 1) * params.epsilon_star)
    ps = productset_size(A, A)
    eps_prod = log2(ps) / log2(n) - 1.0
    advisory = {
        "kfoldSize": str(ksize),
        "finalLowerBound": fmt_sig12(final_rhs),
        "finalHolds": str(ksize >= final_rhs).lower(),
        "productsetSize": str(ps),
        "epsilonFromProducts": fmt_sig12(eps_prod),
        "ratiosetVsPlunnecke": fmt_sig12(
            params.ratioset_size / float(n) ** (1.0 + 2.0 * eps_prod)
        ),
    }

    return CertificateKD(
        applicable=True,
        reason=None,
        set=A,
        k=k,
        params=params,
        cover_lines=len(counts),
        cover_total=total,
        cover_histogram=histogram,
        heavy=heavy,
        chart_points=chart,
        symmetric=symmetric,
        degenerate=False,
        triangulation=tri,
        simplex_sum_sizes=tuple(sizes),
        kfold_size=ksize,
        checks=tuple(checks),
        advisory=advisory,
    )
