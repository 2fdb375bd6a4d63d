"""Exact rational geometry: orientation tests, placing triangulations, validation.

Every predicate is decided in exact integer arithmetic after clearing
denominators; there are no floating-point fast paths. The triangulation is the
incremental placing construction with lexicographic insertion order, so every
input point becomes a vertex and repeated runs give identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial, lcm

__all__ = [
    "ChartPoint",
    "LineKD",
    "Triangulation",
    "TriangulationReport",
    "orientation",
    "simplex_volume",
    "placing_triangulation",
    "validate_triangulation",
    "symmetry_check",
]

ChartPoint = tuple  # (k-1)-tuple of Fraction


@dataclass(frozen=True)
class LineKD:
    """A line through the origin, normalized so the first coordinate is 1."""

    direction: tuple
    count: int

    def chart_point(self) -> ChartPoint:
        return self.direction[1:]


@dataclass(frozen=True)
class Triangulation:
    vertices: tuple
    simplices: tuple  # tuples of vertex indices, each of length dim + 1
    dim: int


@dataclass(frozen=True)
class TriangulationReport:
    ok: bool
    violations: tuple
    simplex_count: int
    vertex_count: int
    total_volume: Fraction
    hull_volume: Fraction | None


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _det_int(rows: list[list[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    a = [row[:] for row in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _det_fraction(rows) -> Fraction:
    den = 1
    for row in rows:
        for v in row:
            den = lcm(den, v.denominator)
    scaled = [[int(v * den) for v in row] for row in rows]
    return Fraction(_det_int(scaled), den ** len(rows))


def _as_points(points) -> list[tuple]:
    return [tuple(Fraction(c) for c in p) for p in points]


def orientation(points) -> int:
    """Sign of the affine orientation determinant of d+1 points in dimension d."""
    pts = _as_points(points)
    d = len(pts) - 1
    if d < 1:
        raise ValueError("need at least two points")
    if any(len(p) != d for p in pts):
        raise ValueError(f"expected {len(pts)} points of dimension {d}")
    rows = [[pts[i][j] - pts[0][j] for j in range(d)] for i in range(1, d + 1)]
    return _sgn(_det_fraction(rows))


def simplex_volume(points) -> Fraction:
    """Exact d-volume of the simplex spanned by d+1 points."""
    pts = _as_points(points)
    d = len(pts) - 1
    rows = [[pts[i][j] - pts[0][j] for j in range(d)] for i in range(1, d + 1)]
    return abs(_det_fraction(rows)) / factorial(d)


# ---------------------------------------------------------------------------
# placing triangulation


def _solve_in_span(dirs, target):
    """Coefficients expressing target in span(dirs), or None if outside."""
    j = len(dirs)
    if j == 0:
        return [] if not any(target) else None
    D = len(target)
    rows = [[dirs[c][r] for c in range(j)] + [target[r]] for r in range(D)]
    piv_rows = []
    r = 0
    for c in range(j):
        pr = next((i for i in range(r, D) if rows[i][c] != 0), None)
        if pr is None:
            return None  # dirs are independent by construction
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c]
        rows[r] = [v / inv for v in rows[r]]
        for i in range(D):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[r])]
        piv_rows.append(r)
        r += 1
    for i in range(r, D):
        if rows[i][j] != 0:
            return None
    return [rows[i][j] for i in range(j)]


def _orient_coords(pts) -> int:
    d = len(pts) - 1
    rows = [[pts[i][k] - pts[0][k] for k in range(d)] for i in range(1, d + 1)]
    return _sgn(_det_fraction(rows))


def placing_triangulation(points, dim: int) -> Triangulation:
    """Triangulate by inserting points in lexicographic order.

    Each inserted point is an extreme point of the prefix, so it cones to the
    strictly visible boundary facets and every input point ends up a vertex.
    While the points seen so far span fewer than `dim` dimensions the complex
    is kept in the lower-dimensional affine hull and coned up on the first
    point that leaves it.
    """
    pts = _as_points(points)
    if any(len(p) != dim for p in pts):
        raise ValueError(f"points must have dimension {dim}")
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points")
    if len(pts) < dim + 1:
        raise ValueError("degenerate point set")
    verts = sorted(pts)

    origin = verts[0]
    frame_dirs: list[tuple] = []
    coords: list[list[Fraction]] = [[]]
    simplices: list[tuple[int, ...]] = [(0,)]
    facets: dict[tuple, list[int]] = {}

    def register(s: tuple) -> None:
        for i in range(len(s)):
            facets.setdefault(s[:i] + s[i + 1 :], []).append(s[i])

    register((0,))

    for idx in range(1, len(verts)):
        target = tuple(verts[idx][r] - origin[r] for r in range(dim))
        lam = _solve_in_span(frame_dirs, target)
        if lam is None:
            # affine dimension grows: cone the whole complex to the new vertex
            frame_dirs.append(target)
            for c in coords:
                c.append(Fraction(0))
            coords.append([Fraction(0)] * (len(frame_dirs) - 1) + [Fraction(1)])
            simplices = [s + (idx,) for s in simplices]
            facets.clear()
            for s in simplices:
                register(s)
            continue

        coords.append(list(lam))
        p = coords[idx]
        cones = []
        for f, opps in list(facets.items()):
            if len(opps) != 1:
                continue
            fpts = [coords[v] for v in f]
            s_p = _orient_coords(fpts + [p])
            if s_p == 0:
                continue
            s_v = _orient_coords(fpts + [coords[opps[0]]])
            if s_p == -s_v:
                cones.append(tuple(sorted(f + (idx,))))
        if not cones:
            raise RuntimeError("placing insertion found no visible facet")
        for s in cones:
            simplices.append(s)
            register(s)

    if len(frame_dirs) < dim:
        raise ValueError("degenerate point set")
    return Triangulation(
        vertices=tuple(verts),
        simplices=tuple(sorted(simplices)),
        dim=dim,
    )


# ---------------------------------------------------------------------------
# validation


def _dsign(fpts, x) -> int:
    """Sign of det with rows (f_i - x): the facet functional through fpts."""
    d = len(x)
    if d == 1:
        return _sgn(fpts[0][0] - x[0])
    if d == 2:
        a0 = fpts[0][0] - x[0]
        a1 = fpts[0][1] - x[1]
        b0 = fpts[1][0] - x[0]
        b1 = fpts[1][1] - x[1]
        return _sgn(a0 * b1 - a1 * b0)
    if d == 3:
        a = [fpts[0][i] - x[i] for i in range(3)]
        b = [fpts[1][i] - x[i] for i in range(3)]
        c = [fpts[2][i] - x[i] for i in range(3)]
        det = (
            a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
        )
        return _sgn(det)
    rows = [[fpts[i][j] - x[j] for j in range(d)] for i in range(d)]
    return _sgn(_det_int(rows))


def _dvalue(fpts, x) -> int:
    d = len(x)
    rows = [[fpts[i][j] - x[j] for j in range(d)] for i in range(d)]
    return _det_int(rows)


def _normalize_row(coeffs, b):
    for c in coeffs + (b,):
        if c != 0:
            scale = abs(c)
            return tuple(v / scale for v in coeffs), b / scale
    return coeffs, b


def _fm_feasible(rows) -> bool:
    """Fourier-Motzkin feasibility for a small system coeffs . z <= b."""
    rows = list({_normalize_row(c, b) for c, b in rows})
    nvars = len(rows[0][0]) if rows else 0
    for _ in range(nvars):
        pos, neg, rest = [], [], []
        for coeffs, b in rows:
            c = coeffs[-1]
            if c > 0:
                pos.append((coeffs, b))
            elif c < 0:
                neg.append((coeffs, b))
            else:
                rest.append((coeffs[:-1], b))
        combined = []
        for ca, ba in pos:
            for cb, bb in neg:
                s, t = -cb[-1], ca[-1]
                coeffs = tuple(s * ca[i] + t * cb[i] for i in range(len(ca) - 1))
                combined.append((coeffs, s * ba + t * bb))
        rows = list({_normalize_row(c, b) for c, b in rest + combined})
        for coeffs, b in rows:
            if b < 0 and not any(coeffs):
                return False
    return all(b >= 0 for _, b in rows)


def _nullspace(vectors, d):
    """Basis of {w in Q^d : v . w = 0 for every v}, via exact RREF."""
    rows = [list(map(Fraction, v)) for v in vectors]
    pivots = []
    r = 0
    for c in range(d):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c]
        rows[r] = [v / inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    free = [c for c in range(d) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * d
        vec[fc] = Fraction(1)
        for pr, pc in enumerate(pivots):
            vec[pc] = -rows[pr][fc]
        basis.append(tuple(vec))
    return basis


def _strict_separator_lp(pts, v_shared, s_only, t_only, d) -> bool:
    """Feasibility of a linear functional vanishing on the shared face and
    strictly negative on the remaining S vertices, positive on the T ones."""
    v0 = pts[v_shared[0]]
    eqs = [tuple(pts[v][i] - v0[i] for i in range(d)) for v in v_shared[1:]]
    basis = _nullspace(eqs, d) if eqs else [
        tuple(Fraction(1) if i == j else Fraction(0) for i in range(d)) for j in range(d)
    ]
    rows = []
    for u in s_only:
        a = tuple(pts[u][i] - v0[i] for i in range(d))
        rows.append((tuple(sum(a[i] * nb[i] for i in range(d)) for nb in basis), Fraction(-1)))
    for u in t_only:
        a = tuple(pts[u][i] - v0[i] for i in range(d))
        rows.append((tuple(-sum(a[i] * nb[i] for i in range(d)) for nb in basis), Fraction(-1)))
    return _fm_feasible(rows)


def _sat_disjoint(pts, S, T, d) -> bool:
    """Strict separating-axis test for vertex-disjoint simplices (complete)."""
    axes = []
    if d == 3:
        for a, b in combinations(S, 2):
            ea = [pts[b][i] - pts[a][i] for i in range(3)]
            for c, e in combinations(T, 2):
                eb = [pts[e][i] - pts[c][i] for i in range(3)]
                axis = (
                    ea[1] * eb[2] - ea[2] * eb[1],
                    ea[2] * eb[0] - ea[0] * eb[2],
                    ea[0] * eb[1] - ea[1] * eb[0],
                )
                if any(axis):
                    axes.append(axis)
    for axis in axes:
        sv = [sum(axis[i] * pts[u][i] for i in range(d)) for u in S]
        tv = [sum(axis[i] * pts[u][i] for i in range(d)) for u in T]
        if max(sv) < min(tv) or max(tv) < min(sv):
            return True
    return False


def _pair_face_to_face(pts, S, T, d) -> bool:
    """True iff conv(S) ∩ conv(T) equals the convex hull of the shared vertices."""
    shared = sorted(set(S) & set(T))
    shared_set = set(shared)
    s_only = [u for u in S if u not in shared_set]
    t_only = [u for u in T if u not in shared_set]

    # candidate separating hyperplanes: facet planes containing the shared face
    for owner_extra, other_extra in ((s_only, t_only), (t_only, s_only)):
        owner = S if owner_extra is s_only else T
        for u in owner_extra:
            fpts = [pts[v] for v in owner if v != u]
            su = _dsign(fpts, pts[u])
            if su == 0:
                continue
            if all(_dsign(fpts, pts[w]) == -su for w in other_extra):
                return True

    if not shared:
        return _sat_disjoint(pts, S, T, d)
    return _strict_separator_lp(pts, shared, s_only, t_only, d)


def validate_triangulation(t: Triangulation) -> TriangulationReport:
    """Exact validation of all triangulation invariants; violations are listed.

    Pairwise simplex intersections are checked for dim <= 3; in higher
    dimension only the facet-incidence and volume-conservation checks run.
    """
    violations: list[str] = []
    d = t.dim
    verts = _as_points(t.vertices)
    sims = [tuple(s) for s in t.simplices]

    den = 1
    for p in verts:
        for c in p:
            den = lcm(den, c.denominator)
    pts = [tuple(int(c * den) for c in p) for p in verts]

    if not sims:
        return TriangulationReport(False, ("no simplices",), 0, len(verts), Fraction(0), None)
    for s in sims:
        if len(s) != d + 1 or len(set(s)) != d + 1:
            violations.append(f"simplex {s} is not a ({d}+1)-tuple of distinct vertices")
        elif any(v < 0 or v >= len(verts) for v in s):
            violations.append(f"simplex {s} has out-of-range vertex indices")
    if violations:
        return TriangulationReport(
            False, tuple(violations), len(sims), len(verts), Fraction(0), None
        )

    used = {v for s in sims for v in s}
    for v in range(len(verts)):
        if v not in used:
            violations.append(f"vertex {v} {t.vertices[v]} is not used by any simplex")

    seen = set()
    for s in sims:
        key = tuple(sorted(s))
        if key in seen:
            violations.append(f"duplicate simplex {key}")
        seen.add(key)

    dets = []
    for s in sims:
        rows = [[pts[s[i]][j] - pts[s[0]][j] for j in range(d)] for i in range(1, d + 1)]
        det = _det_int(rows)
        dets.append(det)
        if det == 0:
            violations.append(f"degenerate simplex {s}")

    facet_owner: dict[tuple, list[tuple[int, int]]] = {}
    for si, s in enumerate(sims):
        for i in range(d + 1):
            f = tuple(sorted(s[:i] + s[i + 1 :]))
            facet_owner.setdefault(f, []).append((si, s[i]))
    for f, owners in facet_owner.items():
        if len(owners) > 2:
            violations.append(f"facet {f} belongs to {len(owners)} simplices")

    nondegenerate = all(det != 0 for det in dets)
    if d <= 3 and nondegenerate:
        boxes = []
        for s in sims:
            cs = [pts[v] for v in s]
            boxes.append(
                (
                    tuple(min(c[i] for c in cs) for i in range(d)),
                    tuple(max(c[i] for c in cs) for i in range(d)),
                )
            )
        order = sorted(range(len(sims)), key=lambda si: boxes[si][0][0])
        for ii, si in enumerate(order):
            for sj in order[ii + 1 :]:
                if boxes[sj][0][0] > boxes[si][1][0]:
                    break
                if any(
                    boxes[sj][0][k] > boxes[si][1][k] or boxes[si][0][k] > boxes[sj][1][k]
                    for k in range(1, d)
                ):
                    continue
                if set(sims[si]) == set(sims[sj]):
                    continue  # duplicate already reported
                if not _pair_face_to_face(pts, sims[si], sims[sj], d):
                    violations.append(
                        f"simplices {sims[si]} and {sims[sj]} do not meet in a common face"
                    )

    total_scaled = sum(abs(det) for det in dets)
    total_volume = Fraction(total_scaled, factorial(d) * den ** d)

    hull_volume = None
    if nondegenerate:
        anchor = min(pts)
        fan = 0
        for f, owners in facet_owner.items():
            if len(owners) != 1:
                continue
            si, opp = owners[0]
            fpts = [pts[v] for v in f]
            sv = _dsign(fpts, pts[opp])
            fan += -sv * _dvalue(fpts, anchor)
        hull_scaled = abs(fan)
        hull_volume = Fraction(hull_scaled, factorial(d) * den ** d)
        if hull_scaled != total_scaled:
            violations.append(
                f"volume mismatch: simplices sum to {total_volume}, hull fan gives {hull_volume}"
            )

    if len(sims) < len(verts) - d:
        violations.append(
            f"too few simplices: {len(sims)} < {len(verts)} - {d}"
        )

    return TriangulationReport(
        ok=not violations,
        violations=tuple(violations),
        simplex_count=len(sims),
        vertex_count=len(verts),
        total_volume=total_volume,
        hull_volume=hull_volume,
    )


def symmetry_check(points, k: int) -> bool:
    """Whether the direction set {(1, p)} is closed under coordinate permutation
    followed by renormalization to leading coordinate 1."""
    pts = {tuple(Fraction(c) for c in p) for p in points}
    if any(len(p) != k - 1 for p in pts):
        raise ValueError(f"chart points must have dimension k-1 = {k - 1}")
    for p in pts:
        direction = (Fraction(1),) + p
        for perm in permutations(range(k)):
            image = tuple(direction[i] for i in perm)
            chart = tuple(c / image[0] for c in image[1:])
            if chart not in pts:
                return False
    return True
