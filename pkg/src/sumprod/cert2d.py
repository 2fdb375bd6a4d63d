"""Machine-checked construction bounding multiplicative energy by the sumset.

`build_certificate` materializes the whole two-dimensional argument for a
concrete set A: the dominant dyadic class of slopes, the lines of the grid
A x A they span, the auxiliary vertical line through the smallest element,
the pairwise sumsets of consecutive lines, and the resulting chain of
inequalities. Every inequality is evaluated exactly and recorded pass/fail;
overlaps between pair sumsets are not assumed away but reported as witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .energy import dominant_class, dyadic_decompose, energy_asym, ratio_profile
from .numset import NumberSet, ceil_log2, productset_size, sumset, sumset_size
from .report import Check, fmt_rat, json_bytes

__all__ = [
    "VERTICAL",
    "LinePair2D",
    "Certificate2D",
    "MainReport",
    "CorollaryReport",
    "AsymReport",
    "build_certificate",
    "verify_theorem_main",
    "verify_corollary",
    "verify_asym",
]

# slope marker for the auxiliary vertical line x = min(A)
VERTICAL = None

Point2 = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class LinePair2D:
    """Consecutive line pair i with its grid points and exact vector sumset."""

    index: int  # 1-based
    slope_low: Fraction
    slope_high: Fraction | None  # None marks the vertical line
    points_low: tuple[Point2, ...]
    points_high: tuple[Point2, ...]
    sums: frozenset

    @property
    def is_vertical_pair(self) -> bool:
        return self.slope_high is None


@dataclass(frozen=True)
class Certificate2D:
    applicable: bool
    reason: str | None
    set: NumberSet
    energy: int
    dominant_index: int
    slopes: tuple
    m: int
    vertical_points: tuple
    pairs: tuple
    union: frozenset
    overlaps: dict  # (i, j) 1-based pair indices -> tuple of shared points
    checks: tuple

    @property
    def union_size(self) -> int:
        return len(self.union)

    def binding_ok(self) -> bool:
        return all(c.holds for c in self.checks if c.binding)

    def to_json_dict(self) -> dict:
        pair_records = []
        for p in self.pairs:
            witnesses = []
            for (i, j), pts in sorted(self.overlaps.items()):
                if i == p.index:
                    other, shared = j, pts
                elif j == p.index:
                    other, shared = i, pts
                else:
                    continue
                witnesses.append(
                    {"with": other, "points": [[str(x), str(y)] for x, y in shared]}
                )
            pair_records.append(
                {
                    "i": p.index,
                    "slopes": [
                        fmt_rat(p.slope_low),
                        "vertical" if p.slope_high is None else fmt_rat(p.slope_high),
                    ],
                    "sizes": {
                        "low": len(p.points_low),
                        "high": len(p.points_high),
                        "sumset": len(p.sums),
                    },
                    "overlapWitnesses": witnesses,
                }
            )
        return {
            "set": [str(e) for e in self.set.elements],
            "applicable": self.applicable,
            "energy": self.energy,
            "I": self.dominant_index,
            "D": [str(s) for s in self.slopes],
            "m": self.m,
            "pairs": pair_records,
            "unionSize": self.union_size,
            "inequalities": [c.to_json() for c in self.checks],
        }

    def to_json_bytes(self) -> bytes:
        return json_bytes(self.to_json_dict())


@dataclass(frozen=True)
class MainReport:
    """|AA| |A+A|^2 against |A|^4 / (4 ceil(log2 |A|))."""

    applicable: bool
    set_size: int
    sumset_size: int
    productset_size: int
    lhs: int
    rhs: Fraction
    holds: bool

    @property
    def ratio(self) -> Fraction | None:
        return Fraction(self.lhs) / self.rhs if self.applicable and self.rhs else None


@dataclass(frozen=True)
class CorollaryReport:
    """max(|A+A|, |AA|)^3 against |A|^4 / (8 ceil(log2 |A|)), cubed to stay exact."""

    applicable: bool
    set_size: int
    max_side: int
    lhs: int
    rhs: Fraction
    holds: bool

    @property
    def ratio(self) -> Fraction | None:
        return Fraction(self.lhs) / self.rhs if self.applicable and self.rhs else None


@dataclass(frozen=True)
class AsymReport:
    """The two-set inequality |A|^2|B|^2 / |AB| <= 4 ceil(log2 |B|) |A+A| |B+B|."""

    applicable: bool
    lhs: Fraction
    rhs: int
    holds: bool
    energy: int
    energy_lower_holds: bool


def _points_on_slope(A: NumberSet, slope: Fraction) -> tuple[Point2, ...]:
    """Grid points of A x A on the line y = slope * x, by x ascending."""
    return tuple((x, slope * x) for x in A.elements if slope * x in A)


def _pair_sums(low: tuple[Point2, ...], high: tuple[Point2, ...]) -> frozenset:
    return frozenset((p[0] + q[0], p[1] + q[1]) for p in low for q in high)


def build_certificate(A: NumberSet, *, threads: int = 1) -> Certificate2D:
    """Construct and exactly verify the full 2-D chain for A (needs |A| >= 2)."""
    n = len(A)
    if n < 2:
        return Certificate2D(
            applicable=False,
            reason="not applicable: |A| < 2",
            set=A,
            energy=0,
            dominant_index=-1,
            slopes=(),
            m=0,
            vertical_points=(),
            pairs=(),
            union=frozenset(),
            overlaps={},
            checks=(),
        )

    profile = ratio_profile(A, threads=threads)
    E = profile.energy()
    decomp = dyadic_decompose(profile)
    dom = dominant_class(decomp, E, n)
    I, D, m = dom.index, dom.ratios, dom.m

    lines = [_points_on_slope(A, s) for s in D]
    a1 = A.min
    vertical = tuple((a1, y) for y in A.elements)

    pairs = []
    for j in range(m):
        low = lines[j]
        if j + 1 < m:
            high_slope, high = D[j + 1], lines[j + 1]
        else:
            high_slope, high = VERTICAL, vertical
        pairs.append(
            LinePair2D(
                index=j + 1,
                slope_low=D[j],
                slope_high=high_slope,
                points_low=low,
                points_high=high,
                sums=_pair_sums(low, high),
            )
        )

    owners: dict = {}
    for p in pairs:
        for pt in p.sums:
            owners.setdefault(pt, []).append(p.index)
    union = frozenset(owners)
    overlaps: dict = {}
    for pt, idxs in owners.items():
        if len(idxs) > 1:
            for a_idx in range(len(idxs)):
                for b_idx in range(a_idx + 1, len(idxs)):
                    overlaps.setdefault((idxs[a_idx], idxs[b_idx]), []).append(pt)
    overlaps = {k: tuple(sorted(v)) for k, v in overlaps.items()}

    lo, hi = 1 << (2 * I), 1 << (2 * I + 2)
    checks: list[Check] = []
    for p in pairs:
        size = len(p.sums)
        checks.append(
            Check(
                name=f"pair{p.index}_product_rule",
                lhs=size,
                rhs=len(p.points_low) * len(p.points_high),
                relation="==",
                holds=size == len(p.points_low) * len(p.points_high),
            )
        )
        in_range = lo <= size < hi
        checks.append(
            Check(
                name=f"pair{p.index}_size_in_dyadic_range",
                lhs=size,
                rhs=f"[{lo}, {hi})",
                relation="in",
                holds=in_range,
                binding=not p.is_vertical_pair,
                note="vertical pair: range not guaranteed" if p.is_vertical_pair else "",
            )
        )

    S = sumset(A, A, threads=threads)
    grid_ok = all(x in S and y in S for x, y in union)
    ss = len(S)
    checks.append(
        Check(
            name="sums_inside_sumset_grid",
            lhs=len(union),
            rhs=f"all coordinates in a set of {ss}",
            relation="in",
            holds=grid_ok,
        )
    )

    finite_overlap = {
        k: v for k, v in overlaps.items() if k[0] < m and k[1] < m
    }
    checks.append(
        Check(
            name="finite_pairs_pairwise_disjoint",
            lhs=sum(len(v) for v in finite_overlap.values()),
            rhs=0,
            relation="==",
            holds=not finite_overlap,
        )
    )
    vertical_overlap = sum(len(v) for k, v in overlaps.items() if m in k)
    checks.append(
        Check(
            name="vertical_pair_overlap_free",
            lhs=vertical_overlap,
            rhs=0,
            relation="==",
            holds=vertical_overlap == 0,
            binding=False,
            note="overlaps with the auxiliary vertical pair are recorded, not assumed absent",
        )
    )

    union_size = len(union)
    checks.append(
        Check(
            name="union_lower_bound",
            lhs=m * lo,
            rhs=union_size,
            relation="<=",
            holds=m * lo <= union_size,
        )
    )
    checks.append(
        Check(
            name="union_upper_bound",
            lhs=union_size,
            rhs=ss * ss,
            relation="<=",
            holds=union_size <= ss * ss,
        )
    )
    total_witnesses = sum(len(v) for v in overlaps.values())
    ie_lower = sum(len(p.sums) for p in pairs) - total_witnesses
    checks.append(
        Check(
            name="union_inclusion_exclusion",
            lhs=ie_lower,
            rhs=union_size,
            relation="<=",
            holds=ie_lower <= union_size,
            binding=False,
            note="sum of pair sizes minus overlap witnesses",
        )
    )

    cl = ceil_log2(n)
    checks.append(
        Check(
            name="dominant_class_log_share",
            lhs=Fraction(E, cl),
            rhs=dom.class_sum,
            relation="<=",
            holds=bool(dom.log_form_holds),
            binding=False,
            note="guaranteed divisor is the number of nonempty classes "
            f"({len(decomp.nonempty())}); this stronger form can fail",
        )
    )
    checks.append(
        Check(
            name="energy_sumset_bound",
            lhs=Fraction(E, cl),
            rhs=4 * ss * ss,
            relation="<=",
            holds=Fraction(E, cl) <= 4 * ss * ss,
        )
    )
    ps = productset_size(A, A, threads=threads)
    checks.append(
        Check(
            name="product_sumset_bound",
            lhs=ps * ss * ss,
            rhs=Fraction(n ** 4, 4 * cl),
            relation=">=",
            holds=ps * ss * ss >= Fraction(n ** 4, 4 * cl),
        )
    )

    return Certificate2D(
        applicable=True,
        reason=None,
        set=A,
        energy=E,
        dominant_index=I,
        slopes=D,
        m=m,
        vertical_points=vertical,
        pairs=tuple(pairs),
        union=union,
        overlaps=overlaps,
        checks=tuple(checks),
    )


def verify_theorem_main(A: NumberSet, *, threads: int = 1) -> MainReport:
    """Exact check of |AA| |A+A|^2 >= |A|^4 / (4 ceil(log2 |A|))."""
    n = len(A)
    if n < 2:
        return MainReport(False, n, 0, 0, 0, Fraction(0), False)
    ss = sumset_size(A, A, threads=threads)
    ps = productset_size(A, A, threads=threads)
    lhs = ps * ss * ss
    rhs = Fraction(n ** 4, 4 * ceil_log2(n))
    return MainReport(True, n, ss, ps, lhs, rhs, lhs >= rhs)


def verify_corollary(A: NumberSet, *, threads: int = 1) -> CorollaryReport:
    """Exact check of max(|A+A|, |AA|)^3 >= |A|^4 / (8 ceil(log2 |A|))."""
    n = len(A)
    if n < 2:
        return CorollaryReport(False, n, 0, 0, Fraction(0), False)
    ss = sumset_size(A, A, threads=threads)
    ps = productset_size(A, A, threads=threads)
    side = max(ss, ps)
    lhs = side ** 3
    rhs = Fraction(n ** 4, 8 * ceil_log2(n))
    return CorollaryReport(True, n, side, lhs, rhs, lhs >= rhs)


def verify_asym(A: NumberSet, B: NumberSet, *, threads: int = 1) -> AsymReport:
    """Exact check of |A|^2|B|^2/|AB| <= 4 ceil(log2 |B|) |A+A| |B+B|.

    Requires |A| >= |B|; callers with the sizes reversed must swap arguments.
    """
    if len(A) < len(B):
        raise ValueError("|A| < |B|: swap the arguments so the first set is the larger")
    if len(B) < 2:
        return AsymReport(False, Fraction(0), 0, False, 0, False)
    ab = productset_size(A, B, threads=threads)
    lhs = Fraction(len(A) ** 2 * len(B) ** 2, ab)
    rhs = (
        4
        * ceil_log2(len(B))
        * sumset_size(A, A, threads=threads)
        * sumset_size(B, B, threads=threads)
    )
    eab = energy_asym(A, B)
    return AsymReport(True, lhs, rhs, lhs <= rhs, eab, eab >= lhs)
