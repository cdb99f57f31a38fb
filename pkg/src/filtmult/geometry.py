"""Exact rational convex geometry in ambient dimension <= 3.

Everything here works over integers / ``Fraction``; there is no floating
point anywhere on a decision path.  The polyhedra that occur are Newton
polyhedra ``conv(G) + R^d_{>=0}`` of monomial ideals and convex hulls of
semigroup fibers, so point counts are small and brute-force exact algorithms
are adequate.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from .errors import DimensionUnsupported

Point = tuple  # tuple of int or Fraction coordinates


def minimal_points(points) -> list:
    """Antichain of componentwise-minimal elements."""
    ordered = sorted(set(points), key=lambda p: (sum(p), p))
    kept: list = []
    for p in ordered:
        if not any(all(x >= y for x, y in zip(p, q)) for q in kept):
            kept.append(p)
    return sorted(kept)


# ---------------------------------------------------------------------------
# 2D hulls and areas


def _cross2(o: Point, a: Point, b: Point):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_left_chain(points: list[Point]) -> list[Point]:
    """Convex chain bounding ``conv(points) + orthant`` toward the origin.

    The input is reduced to an antichain first; the chain is returned sorted
    by increasing first coordinate (second coordinate strictly decreasing).
    """
    pts = minimal_points(points)
    chain: list[Point] = []
    for p in pts:
        while len(chain) >= 2 and _cross2(chain[-2], chain[-1], p) <= 0:
            chain.pop()
        chain.append(p)
    return chain


def convex_hull_2d(points: list[Point]) -> list[Point]:
    """Full convex hull (counterclockwise, no repeated endpoint)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def polygon_area(vertices: list[Point]) -> Fraction:
    total = Fraction(0)
    n = len(vertices)
    for i in range(n):
        x1, y1 = vertices[i][0], vertices[i][1]
        x2, y2 = vertices[(i + 1) % n][0], vertices[(i + 1) % n][1]
        total += Fraction(x1) * Fraction(y2) - Fraction(x2) * Fraction(y1)
    return abs(total) / 2


def hull_area(points: list[Point]) -> Fraction:
    hull = convex_hull_2d(points)
    if len(hull) < 3:
        return Fraction(0)
    return polygon_area(hull)


# ---------------------------------------------------------------------------
# Newton polyhedron inequality descriptions

# An inequality is a pair (normal, offset) with integer entries, meaning
# <normal, y> >= offset.  Together with y >= 0 these cut out the polyhedron.


def _normalize_ineq(normal: tuple[int, ...], offset: int):
    g = 0
    for v in normal:
        g = gcd(g, abs(v))
    g = gcd(g, abs(offset))
    if g > 1:
        normal = tuple(v // g for v in normal)
        offset = offset // g
    return normal, offset


def _cross3(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def newton_inequalities(gens: list[tuple[int, ...]], dim: int) -> list[tuple[tuple[int, ...], int]]:
    """Complete list of valid inequalities for ``conv(gens) + orthant``.

    The family contains every bounded facet (facets are spanned by generators
    and coordinate rays) plus the per-axis bounds ``y_i >= min g_i``.
    Redundant members are harmless for membership tests.  Supported for
    dim <= 3.
    """
    if dim > 3:
        raise DimensionUnsupported(f"Newton facets are only computed for d <= 3, got d = {dim}")
    pts = minimal_points(gens)
    ineqs: set[tuple[tuple[int, ...], int]] = set()
    for i in range(dim):
        low = min(g[i] for g in pts)
        if low > 0:
            normal = tuple(int(i == j) for j in range(dim))
            ineqs.add((normal, low))
    if dim == 1:
        return sorted(ineqs)
    if dim == 2:
        chain = lower_left_chain(pts)
        for a, b in zip(chain, chain[1:]):
            normal = (a[1] - b[1], b[0] - a[0])
            if normal[0] < 0 or normal[1] < 0:
                continue
            offset = normal[0] * a[0] + normal[1] * a[1]
            ineqs.add(_normalize_ineq(normal, offset))
        return sorted(ineqs)

    # dim == 3: planes spanned by three generators, or two generators and a
    # coordinate ray.  Keep only orthant-compatible normals, with the offset
    # taken as the minimum over all generators so every inequality is valid.
    def consider(normal):
        if normal == (0, 0, 0):
            return
        if all(v <= 0 for v in normal):
            normal = tuple(-v for v in normal)
        if any(v < 0 for v in normal):
            return
        offset = min(normal[0] * g[0] + normal[1] * g[1] + normal[2] * g[2] for g in pts)
        if offset > 0:
            ineqs.add(_normalize_ineq(normal, offset))

    for a, b, c in itertools.combinations(pts, 3):
        u = (b[0] - a[0], b[1] - a[1], b[2] - a[2])
        v = (c[0] - a[0], c[1] - a[1], c[2] - a[2])
        consider(_cross3(u, v))
    axes = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for a, b in itertools.combinations(pts, 2):
        u = (b[0] - a[0], b[1] - a[1], b[2] - a[2])
        for e in axes:
            consider(_cross3(u, e))
    return sorted(ineqs)


def satisfies_inequalities(point, ineqs) -> bool:
    for normal, offset in ineqs:
        if sum(Fraction(n) * Fraction(x) for n, x in zip(normal, point)) < offset:
            return False
    return True


# ---------------------------------------------------------------------------
# Vertex enumeration and exact 3D volumes


def _solve3_int(rows, rhs):
    """Cramer solve of a 3x3 integer system; None if singular."""
    (a, b, c), (d, e, f), (g, h, i) = rows
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if det == 0:
        return None
    r0, r1, r2 = rhs
    dx = r0 * (e * i - f * h) - b * (r1 * i - f * r2) + c * (r1 * h - e * r2)
    dy = a * (r1 * i - f * r2) - r0 * (d * i - f * g) + c * (d * r2 - r1 * g)
    dz = a * (e * r2 - r1 * h) - b * (d * r2 - r1 * g) + r0 * (d * h - e * g)
    return (Fraction(dx, det), Fraction(dy, det), Fraction(dz, det))


def _dedupe_ineqs(ineqs):
    """Canonical inequalities; for equal normals only the tightest survives."""
    best: dict[tuple[int, ...], int] = {}
    for normal, offset in ineqs:
        normal, offset = _normalize_ineq(tuple(normal), offset)
        if normal not in best or best[normal] < offset:
            best[normal] = offset
    return sorted(best.items())


def _vertices_homogeneous_3d(ineqs) -> list[tuple[int, int, int, int]]:
    """Vertices as gcd-reduced integer quadruples (x, y, z, w), w > 0,
    meaning the point (x/w, y/w, z/w).  Pure integer arithmetic."""
    verts: set[tuple[int, int, int, int]] = set()
    rows = [q[0] for q in ineqs]
    offs = [q[1] for q in ineqs]
    n = len(ineqs)
    for i, j, k in itertools.combinations(range(n), 3):
        (a, b, c), (d, e, f), (g, h, l) = rows[i], rows[j], rows[k]
        det = a * (e * l - f * h) - b * (d * l - f * g) + c * (d * h - e * g)
        if det == 0:
            continue
        r0, r1, r2 = offs[i], offs[j], offs[k]
        dx = r0 * (e * l - f * h) - b * (r1 * l - f * r2) + c * (r1 * h - e * r2)
        dy = a * (r1 * l - f * r2) - r0 * (d * l - f * g) + c * (d * r2 - r1 * g)
        dz = a * (e * r2 - r1 * h) - b * (d * r2 - r1 * g) + r0 * (d * h - e * g)
        if det < 0:
            det, dx, dy, dz = -det, -dx, -dy, -dz
        ok = True
        for r, off in zip(rows, offs):
            if r[0] * dx + r[1] * dy + r[2] * dz < off * det:
                ok = False
                break
        if ok:
            g0 = gcd(gcd(abs(dx), abs(dy)), gcd(abs(dz), det))
            verts.add((dx // g0, dy // g0, dz // g0, det // g0))
    return sorted(verts)


def enumerate_vertices_3d(ineqs: list[tuple[tuple[int, ...], int]]) -> list[Point]:
    """Vertices of ``{y : <n,y> >= b for all (n,b)}`` (bounded inputs only)."""
    ineqs = _dedupe_ineqs(ineqs)
    return sorted(
        (Fraction(x, w), Fraction(y, w), Fraction(z, w))
        for x, y, z, w in _vertices_homogeneous_3d(ineqs)
    )


def _ordered_face_cycle(face: list[Point]) -> list[Point]:
    """Boundary cycle of a coplanar 3D point set (interior points dropped).

    The set is projected onto the two coordinates complementary to the
    largest normal component; the 2D convex hull there gives the cyclic
    order exactly.
    """
    a = face[0]
    normal = (0, 0, 0)
    for b, c in itertools.combinations(face[1:], 2):
        u = tuple(Fraction(b[t]) - Fraction(a[t]) for t in range(3))
        v = tuple(Fraction(c[t]) - Fraction(a[t]) for t in range(3))
        normal = _cross3(u, v)
        if any(x != 0 for x in normal):
            break
    if all(x == 0 for x in normal):
        return []
    drop = max(range(3), key=lambda t: abs(normal[t]))
    keep = [t for t in range(3) if t != drop]
    projected = {}
    for p in face:
        projected[(Fraction(p[keep[0]]), Fraction(p[keep[1]]))] = p
    cycle2d = convex_hull_2d(list(projected))
    if len(cycle2d) < 3:
        return []
    return [projected[q] for q in cycle2d]


def _volume_from_faces(verts: list[Point], faces: list[list[Point]]) -> Fraction:
    """Sum of tetrahedra over fan-triangulated faces, apex at the centroid."""
    if len(verts) < 4:
        return Fraction(0)
    interior = tuple(sum(Fraction(p[t]) for p in verts) / len(verts) for t in range(3))
    seen: set[tuple] = set()
    volume = Fraction(0)
    for face in faces:
        if len(face) < 3:
            continue
        cycle = _ordered_face_cycle(face)
        if len(cycle) < 3:
            continue
        key = tuple(sorted(cycle))
        if key in seen:
            continue
        seen.add(key)
        anchor = cycle[0]
        for p, q in zip(cycle[1:], cycle[2:]):
            e1 = tuple(Fraction(p[t]) - interior[t] for t in range(3))
            e2 = tuple(Fraction(q[t]) - interior[t] for t in range(3))
            e3 = tuple(Fraction(anchor[t]) - interior[t] for t in range(3))
            det = (
                e1[0] * (e2[1] * e3[2] - e2[2] * e3[1])
                - e1[1] * (e2[0] * e3[2] - e2[2] * e3[0])
                + e1[2] * (e2[0] * e3[1] - e2[1] * e3[0])
            )
            volume += abs(det)
    return volume / 6


def polytope_volume_hrep(ineqs: list[tuple[tuple[int, ...], int]]) -> Fraction:
    """Exact volume of a bounded ``{y : <n,y> >= b}`` polytope in 3D."""
    ineqs = _dedupe_ineqs(ineqs)
    homogeneous = _vertices_homogeneous_3d(ineqs)
    as_fractions = {
        q: (Fraction(q[0], q[3]), Fraction(q[1], q[3]), Fraction(q[2], q[3]))
        for q in homogeneous
    }
    faces = []
    for normal, offset in ineqs:
        tight = [
            as_fractions[q]
            for q in homogeneous
            if normal[0] * q[0] + normal[1] * q[1] + normal[2] * q[2] == offset * q[3]
        ]
        faces.append(tight)
    return _volume_from_faces(list(as_fractions.values()), faces)


def hull_volume_3d(points: list[Point]) -> Fraction:
    """Exact volume of the convex hull of a 3D rational point cloud.

    Brute-force facet scan, meant for small clouds (tens of points).
    """
    pts = sorted({tuple(Fraction(x) for x in p) for p in points})
    if len(pts) < 4:
        return Fraction(0)
    faces: dict[tuple, set[Point]] = {}
    for a, b, c in itertools.combinations(pts, 3):
        u = (b[0] - a[0], b[1] - a[1], b[2] - a[2])
        v = (c[0] - a[0], c[1] - a[1], c[2] - a[2])
        normal = _cross3(u, v)
        if normal == (0, 0, 0):
            continue
        offset = sum(x * y for x, y in zip(normal, a))
        above = below = False
        for p in pts:
            val = sum(x * y for x, y in zip(normal, p))
            if val > offset:
                above = True
            elif val < offset:
                below = True
            if above and below:
                break
        if above and below:
            continue
        if above:
            normal = tuple(-x for x in normal)
            offset = -offset
        denom = 1
        for x in (*normal, offset):
            denom = denom * x.denominator // gcd(denom, x.denominator)
        ints = [int(x * denom) for x in (*normal, offset)]
        g = 0
        for x in ints:
            g = gcd(g, abs(x))
        key = tuple(x // g for x in ints)
        if key not in faces:
            faces[key] = {
                p for p in pts if sum(x * y for x, y in zip(normal, p)) == offset
            }
    return _volume_from_faces(pts, [sorted(f) for f in faces.values()])


def hull_volume(points: list[Point], dim: int) -> Fraction:
    """Exact volume of conv(points) for dim <= 3."""
    if dim == 1:
        vals = [Fraction(p[0]) for p in points]
        return max(vals) - min(vals) if vals else Fraction(0)
    if dim == 2:
        return hull_area(points)
    if dim == 3:
        return hull_volume_3d(points)
    raise DimensionUnsupported(f"exact hull volume needs d <= 3, got d = {dim}")


# ---------------------------------------------------------------------------
# Covolume: volume of (orthant \ Newton polyhedron)


def covolume_from_gens(gens: list[tuple[int, ...]], dim: int) -> Fraction:
    """Exact volume of the orthant complement of ``conv(gens) + orthant``.

    Requires a generator set whose complement is bounded (a pure power on
    every axis); ``gens`` need not be minimal.
    """
    if dim > 3:
        raise DimensionUnsupported(f"covolume needs d <= 3, got d = {dim}")
    pts = minimal_points(gens)
    caps = []
    for i in range(dim):
        pures = [g[i] for g in pts if all(g[j] == 0 for j in range(dim) if j != i)]
        if not pures:
            raise ValueError("complement region is unbounded (no pure power on an axis)")
        caps.append(min(pures))
    if all(c == 0 for c in caps):
        return Fraction(0)
    if dim == 1:
        return Fraction(caps[0])
    if dim == 2:
        polygon = [(0, 0)] + lower_left_chain(pts)
        return polygon_area(polygon)
    box = Fraction(caps[0]) * caps[1] * caps[2]
    ineqs = list(newton_inequalities(pts, 3))
    for i in range(3):
        e = tuple(int(i == j) for j in range(3))
        ineqs.append((e, 0))
        ineqs.append((tuple(-v for v in e), -caps[i]))
    return box - polytope_volume_hrep(ineqs)
