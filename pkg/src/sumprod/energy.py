"""Multiplicative energy, ratio-multiplicity profiles and dyadic class analysis.

The central identity: the number of quadruples (a, b, c, d) with a*d = b*c
equals the sum of squared multiplicities |xA ∩ A|^2 over ratios x of A/A.
The brute-force quadruple count is kept as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .numset import (
    NumberSet,
    ceil_log2,
    productset_size,
    ratio_counter,
    ratio_multiplicities,
    sumset_size,
)

__all__ = [
    "MultiplicativeQuadruple",
    "RatioProfile",
    "DyadicDecomposition",
    "DominantClass",
    "EnergyReport",
    "ratio_profile",
    "energy",
    "energy_bruteforce",
    "energy_asym",
    "dyadic_decompose",
    "dominant_class",
    "cs_lower_bound",
    "energy_report",
]

BRUTEFORCE_CAP = 64


@dataclass(frozen=True)
class MultiplicativeQuadruple:
    """A quadruple (a, b) = (lam*c, lam*d) witnessing one unit of energy."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    lam: Fraction

    @classmethod
    def from_parts(cls, a, b, c, d) -> "MultiplicativeQuadruple":
        a, b, c, d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
        if a * d != b * c:
            raise ValueError(f"({a},{b}) is no dilation of ({c},{d})")
        return cls(a, b, c, d, a / c)


@dataclass(frozen=True)
class RatioProfile:
    """Map x -> |xA ∩ A| over exactly the ratios x in A/A."""

    entries: dict

    @property
    def set_size(self) -> int:
        return self.entries[Fraction(1)]

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def energy(self) -> int:
        return sum(m * m for m in self.entries.values())


@dataclass(frozen=True)
class DyadicDecomposition:
    """Ratios split by multiplicity class i: 2^i <= m(x) < 2^(i+1)."""

    classes: tuple
    class_sums: tuple

    def nonempty(self) -> list[int]:
        return [i for i, c in enumerate(self.classes) if c]


@dataclass(frozen=True)
class DominantClass:
    index: int
    ratios: tuple
    m: int
    class_sum: int
    pigeonhole_holds: bool
    log_form_holds: bool | None


@dataclass(frozen=True)
class EnergyReport:
    set_size: int
    energy: int
    sumset_size: int
    productset_size: int
    cs_lower_bound: Fraction
    cs_holds: bool
    energy_bound_rhs: int
    energy_bound_holds: bool | None


def ratio_profile(A: NumberSet, *, threads: int = 1) -> RatioProfile:
    """Full multiplicity profile of A/A; costs one pass over A x A."""
    if len(A) == 0:
        raise ValueError("empty set")
    return RatioProfile(entries=ratio_counter(A, threads=threads))


def energy(A: NumberSet) -> int:
    """E(A) = sum of m(x)^2 over the ratio profile."""
    if len(A) == 0:
        raise ValueError("empty set")
    return sum(m * m for m in ratio_multiplicities(A))


def energy_bruteforce(A: NumberSet, cap: int = BRUTEFORCE_CAP) -> int:
    """Literal quadruple count |{(a,b,c,d) in A^4 : a*d = b*c}|.

    O(n^4); the defining count, kept independent of the profile path so it can
    serve as an oracle. Rejects sets above `cap` elements.
    """
    if len(A) == 0:
        raise ValueError("empty set")
    if len(A) > cap:
        raise ValueError(
            f"brute-force energy is capped at {cap} elements (got {len(A)}); "
            "use energy() instead"
        )
    xs, _ = A.scaled_ints()
    return sum(1 for a, b, c, d in product(xs, repeat=4) if a * d == b * c)


def energy_asym(A: NumberSet, B: NumberSet) -> int:
    """E(A, B): quadruples over A x B x A x B with a*d = b*c."""
    if len(A) == 0 or len(B) == 0:
        raise ValueError("empty set")
    counts = ratio_counter(A, B)
    return sum(c * c for c in counts.values())


def dyadic_decompose(profile: RatioProfile) -> DyadicDecomposition:
    """Partition the profile into classes by floor(log2 m(x)), via bit length."""
    n = profile.set_size
    width = n.bit_length()
    classes: list[list] = [[] for _ in range(width)]
    sums = [0] * width
    for x, m in profile.entries.items():
        i = m.bit_length() - 1
        classes[i].append(x)
        sums[i] += m * m
    return DyadicDecomposition(
        classes=tuple(tuple(sorted(c)) for c in classes),
        class_sums=tuple(sums),
    )


def dominant_class(decomp: DyadicDecomposition, E: int, n: int) -> DominantClass:
    """Class carrying the largest share of E; ties broken by smallest index.

    The pigeonhole guarantee uses the number of nonempty classes. Whether the
    stronger divisor ceil(log2 n) also works is recorded, not assumed: when n
    is a power of two there can be floor(log2 n) + 1 nonempty classes, one more
    than ceil(log2 n), and the stronger form can fail (e.g. A = {1, 2}).
    """
    nonempty = decomp.nonempty()
    if not nonempty:
        raise ValueError("all dyadic classes are empty")
    best = max(decomp.class_sums[i] for i in nonempty)
    index = min(i for i in nonempty if decomp.class_sums[i] == best)
    ratios = decomp.classes[index]
    cl = ceil_log2(n)
    return DominantClass(
        index=index,
        ratios=ratios,
        m=len(ratios),
        class_sum=best,
        pigeonhole_holds=best * len(nonempty) >= E,
        log_form_holds=(best * cl >= E) if cl > 0 else None,
    )


def cs_lower_bound(A: NumberSet) -> tuple[Fraction, bool]:
    """(|A|^4 / |AA|, whether E(A) >= it). The bound always holds."""
    if len(A) == 0:
        raise ValueError("empty set")
    bound = Fraction(len(A) ** 4, productset_size(A, A))
    return bound, energy(A) >= bound


def energy_report(A: NumberSet, *, threads: int = 1) -> EnergyReport:
    """Energy with its lower bound and the sumset-squared upper bound context."""
    if len(A) == 0:
        raise ValueError("empty set")
    n = len(A)
    E = energy(A)
    ss = sumset_size(A, A, threads=threads)
    ps = productset_size(A, A, threads=threads)
    bound = Fraction(n ** 4, ps)
    cl = ceil_log2(n)
    rhs = 4 * ss * ss * cl
    return EnergyReport(
        set_size=n,
        energy=E,
        sumset_size=ss,
        productset_size=ps,
        cs_lower_bound=bound,
        cs_holds=E >= bound,
        energy_bound_rhs=rhs,
        energy_bound_holds=(E <= rhs) if cl > 0 else None,
    )
