"""Finite sets of positive rationals and their exact set operations.

Elements are `fractions.Fraction`; every comparison, sum, product and ratio is
computed exactly. Large all-integer instances are routed through numpy int64
kernels when provably overflow-safe; otherwise a pure-Python big-int path is
used. Both paths produce the same canonical (sorted, deduplicated) results.
"""

from __future__ import annotations

import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

import numpy as np

Rat = Fraction

__all__ = [
    "Rat",
    "NumberSet",
    "BudgetExceeded",
    "ceil_log2",
    "floor_log2",
    "sumset",
    "productset",
    "ratioset",
    "dilate",
    "kfold_sumset",
    "sumset_size",
    "productset_size",
    "ratioset_size",
    "ratio_counter",
    "parse_set_text",
    "load_set",
    "save_set",
]

# numpy kernels only run when every intermediate fits comfortably in int64
_NUMPY_MIN_PAIRS = 1 << 16
_NUMPY_VALUE_BOUND = (1 << 31) - 1
_NUMPY_SUM_BOUND = 1 << 62
_CHUNK_ENTRIES = 1 << 22


class BudgetExceeded(ValueError):
    """Raised when an enumeration would exceed the configured point budget."""


def ceil_log2(n: int) -> int:
    """Smallest t with 2**t >= n; 0 for n = 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (n - 1).bit_length()


def floor_log2(n: int) -> int:
    """Largest t with 2**t <= n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n.bit_length() - 1


def _as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class NumberSet:
    """Immutable, strictly increasing tuple of positive rationals.

    Duplicates in the input are silently dropped (set semantics); zero or
    negative values are rejected.
    """

    __slots__ = ("elements", "_members", "_ints")

    def __init__(self, values: Iterable):
        elems = tuple(sorted({_as_rat(v) for v in values}))
        if elems and elems[0] <= 0:
            raise ValueError(f"elements must be positive, got {elems[0]}")
        self.elements = elems
        self._members = None
        self._ints = None

    @classmethod
    def _trusted(cls, elements: tuple) -> "NumberSet":
        """Internal: wrap an already sorted, deduplicated, positive tuple."""
        ns = cls.__new__(cls)
        ns.elements = elements
        ns._members = None
        ns._ints = None
        return ns

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, value) -> bool:
        if self._members is None:
            self._members = frozenset(self.elements)
        return _as_rat(value) in self._members

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        if len(self.elements) <= 8:
            body = ", ".join(str(e) for e in self.elements)
        else:
            head = ", ".join(str(e) for e in self.elements[:4])
            body = f"{head}, ... ({len(self.elements)} elements)"
        return f"NumberSet({{{body}}})"

    @property
    def min(self) -> Fraction:
        if not self.elements:
            raise ValueError("empty set")
        return self.elements[0]

    @property
    def max(self) -> Fraction:
        if not self.elements:
            raise ValueError("empty set")
        return self.elements[-1]

    def scaled_ints(self) -> tuple[list[int], int]:
        """Return (ints, L) with ints[i] = elements[i] * L, L = lcm of denominators."""
        if self._ints is None:
            L = 1
            for e in self.elements:
                L = lcm(L, e.denominator)
            self._ints = ([int(e * L) for e in self.elements], L)
        return self._ints


def _require_nonempty(*sets: NumberSet) -> None:
    for s in sets:
        if len(s) == 0:
            raise ValueError("empty set")


def _common_ints(A: NumberSet, B: NumberSet) -> tuple[list[int], list[int], int]:
    """Scale A and B by one common factor so both become integer lists."""
    xa, la = A.scaled_ints()
    if B is A:
        return xa, xa, la
    xb, lb = B.scaled_ints()
    L = lcm(la, lb)
    if L != la:
        f = L // la
        xa = [v * f for v in xa]
    if L != lb:
        f = L // lb
        xb = [v * f for v in xb]
    return xa, xb, L


def _np_safe(op: str, max_value: int) -> bool:
    if op == "add":
        return max_value <= _NUMPY_SUM_BOUND // 2
    return max_value <= _NUMPY_VALUE_BOUND


def _np_pair_values(xs: list[int], ys: list[int], op: str) -> np.ndarray:
    """Sorted unique values of x op y over all pairs, block-wise to bound memory."""
    a = np.asarray(xs, dtype=np.int64)
    b = np.asarray(ys, dtype=np.int64)
    rows = max(1, _CHUNK_ENTRIES // max(1, b.size))
    parts = []
    for i in range(0, a.size, rows):
        blk = a[i : i + rows, None]
        vals = blk + b[None, :] if op == "add" else blk * b[None, :]
        parts.append(np.unique(vals.ravel()))
    return np.unique(np.concatenate(parts)) if len(parts) > 1 else parts[0]


def _pair_chunk(args):
    xs, ys, op = args
    if op == "add":
        return {x + y for x in xs for y in ys}
    return {x * y for x in xs for y in ys}


def _pair_values(xs: list[int], ys: list[int], op: str, threads: int = 1) -> list[int]:
    """Sorted unique pairwise values, dispatching to the fastest exact path."""
    n_pairs = len(xs) * len(ys)
    if n_pairs >= _NUMPY_MIN_PAIRS and _np_safe(op, max(xs[-1], ys[-1])):
        return _np_pair_values(xs, ys, op).tolist()
    if threads > 1 and n_pairs >= _NUMPY_MIN_PAIRS:
        step = max(1, len(xs) // threads)
        jobs = [(xs[i : i + step], ys, op) for i in range(0, len(xs), step)]
        merged: set[int] = set()
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_pair_chunk, jobs):
                merged |= part
        return sorted(merged)
    return sorted(_pair_chunk((xs, ys, op)))


def sumset(A: NumberSet, B: NumberSet, *, threads: int = 1) -> NumberSet:
    """{a + b : a in A, b in B}, deduplicated and sorted."""
    _require_nonempty(A, B)
    xa, xb, L = _common_ints(A, B)
    vals = _pair_values(xa, xb, "add", threads)
    return NumberSet._trusted(tuple(Fraction(v, L) for v in vals))


def productset(A: NumberSet, B: NumberSet, *, threads: int = 1) -> NumberSet:
    """{a * b : a in A, b in B}, deduplicated and sorted."""
    _require_nonempty(A, B)
    xa, xb, L = _common_ints(A, B)
    vals = _pair_values(xa, xb, "mul", threads)
    LL = L * L
    return NumberSet._trusted(tuple(Fraction(v, LL) for v in vals))


def sumset_size(A: NumberSet, B: NumberSet, *, threads: int = 1) -> int:
    """|A + B| without materializing the element tuple."""
    _require_nonempty(A, B)
    xa, xb, _ = _common_ints(A, B)
    return len(_pair_values(xa, xb, "add", threads))


def productset_size(A: NumberSet, B: NumberSet, *, threads: int = 1) -> int:
    """|A * B| without materializing the element tuple."""
    _require_nonempty(A, B)
    xa, xb, _ = _common_ints(A, B)
    return len(_pair_values(xa, xb, "mul", threads))


def _np_ratio_keys(xs: list[int], return_counts: bool):
    """Reduced ratio pairs (p, q) encoded as p << 31 | q, unique (+counts)."""
    a = np.asarray(xs, dtype=np.int64)
    rows = max(1, _CHUNK_ENTRIES // max(1, a.size))
    key_parts, cnt_parts = [], []
    for i in range(0, a.size, rows):
        blk = a[i : i + rows, None]
        g = np.gcd(blk, a[None, :])
        key = ((blk // g) << 31) + a[None, :] // g
        if return_counts:
            u, c = np.unique(key.ravel(), return_counts=True)
            key_parts.append(u)
            cnt_parts.append(c)
        else:
            key_parts.append(np.unique(key.ravel()))
    if not return_counts:
        keys = np.concatenate(key_parts) if len(key_parts) > 1 else key_parts[0]
        return np.unique(keys) if len(key_parts) > 1 else keys
    keys = np.concatenate(key_parts)
    cnts = np.concatenate(cnt_parts)
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    cnts = cnts[order]
    starts = np.flatnonzero(np.concatenate(([True], keys[1:] != keys[:-1])))
    return keys[starts], np.add.reduceat(cnts, starts)


def _ratio_chunk(args):
    xs, ys = args
    c: Counter = Counter()
    for a in xs:
        for b in ys:
            g = gcd(a, b)
            c[(a // g, b // g)] += 1
    return c


def _reduced_ratio_counter(xs: list[int], ys: list[int], threads: int = 1) -> Counter:
    if threads > 1 and len(xs) * len(ys) >= _NUMPY_MIN_PAIRS:
        step = max(1, len(xs) // threads)
        jobs = [(xs[i : i + step], ys) for i in range(0, len(xs), step)]
        total: Counter = Counter()
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_ratio_chunk, jobs):
                total.update(part)
        return total
    return _ratio_chunk((xs, ys))


def ratio_counter(A: NumberSet, B: NumberSet | None = None, *, threads: int = 1) -> dict[Fraction, int]:
    """Multiplicity map r -> |{(a, b) in A x B : a/b = r}| (B defaults to A)."""
    B = A if B is None else B
    _require_nonempty(A, B)
    xa, xb, _ = _common_ints(A, B)
    counts = _reduced_ratio_counter(xa, xb, threads)
    return {Fraction(p, q): c for (p, q), c in counts.items()}


def ratio_multiplicities(A: NumberSet) -> list[int]:
    """Multiplicities of A/A only (no ratio keys); fast path for energy sums."""
    _require_nonempty(A)
    xs, _ = A.scaled_ints()
    if len(xs) ** 2 >= _NUMPY_MIN_PAIRS and xs[-1] <= _NUMPY_VALUE_BOUND:
        _, cnts = _np_ratio_keys(xs, return_counts=True)
        return cnts.tolist()
    return list(_reduced_ratio_counter(xs, xs).values())


def ratioset(A: NumberSet, B: NumberSet, *, threads: int = 1) -> NumberSet:
    """{a / b : a in A, b in B}, deduplicated and sorted."""
    _require_nonempty(A, B)
    xa, xb, _ = _common_ints(A, B)
    if len(xa) * len(xb) >= _NUMPY_MIN_PAIRS and xa[-1] <= _NUMPY_VALUE_BOUND and xb[-1] <= _NUMPY_VALUE_BOUND and A is B:
        keys = _np_ratio_keys(xa, return_counts=False)
        fracs = [Fraction(int(k) >> 31, int(k) & _NUMPY_VALUE_BOUND) for k in keys]
    else:
        counts = _reduced_ratio_counter(xa, xb, threads)
        fracs = [Fraction(p, q) for p, q in counts.keys()]
    return NumberSet._trusted(tuple(sorted(fracs)))


def ratioset_size(A: NumberSet, B: NumberSet, *, threads: int = 1) -> int:
    """|A / B| without materializing the element tuple."""
    _require_nonempty(A, B)
    xa, xb, _ = _common_ints(A, B)
    if A is B and len(xa) ** 2 >= _NUMPY_MIN_PAIRS and xa[-1] <= _NUMPY_VALUE_BOUND:
        return int(_np_ratio_keys(xa, return_counts=False).size)
    return len(_reduced_ratio_counter(xa, xb, threads))


def dilate(x, A: NumberSet) -> NumberSet:
    """{x * a : a in A} for a positive rational factor x."""
    _require_nonempty(A)
    x = _as_rat(x)
    if x <= 0:
        raise ValueError(f"dilation factor must be positive, got {x}")
    return NumberSet._trusted(tuple(x * e for e in A.elements))


def kfold_sumset(A: NumberSet, k: int, *, threads: int = 1) -> NumberSet:
    """The k-fold sumset {a_1 + ... + a_k}; equals A for k = 1."""
    _require_nonempty(A)
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be an integer >= 1, got {k}")
    result = A
    for _ in range(k - 1):
        result = sumset(result, A, threads=threads)
    return result


# ---------------------------------------------------------------------------
# set file format: one value per line, "p" or "p/q" with p, q > 0;
# blank lines and lines starting with "#" are ignored.

_VALUE_RE = re.compile(r"^(\d+)(?:/(\d+))?$")


def parse_set_text(text: str, *, source: str = "<string>") -> NumberSet:
    values = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _VALUE_RE.match(line)
        if not m:
            raise ValueError(
                f"{source}:{lineno}: cannot parse {line!r} "
                "(expected a positive integer or p/q with p, q > 0)"
            )
        p, q = int(m.group(1)), int(m.group(2) or 1)
        if p == 0 or q == 0:
            raise ValueError(f"{source}:{lineno}: values must be positive, got {line!r}")
        values.append(Fraction(p, q))
    if not values:
        raise ValueError(f"{source}: no values found")
    return NumberSet(values)


def load_set(path) -> NumberSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_set_text(fh.read(), source=str(path))


def save_set(A: NumberSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for e in A.elements:
            fh.write(f"{e}\n")
