"""Semigroup fibers and body volumes for colength limits.

For a filtration F of monomial ideals the graded semigroup
``{(a, m) : x^a in I_m, |a| <= beta*m}`` and its ambient companion
``{(a, m) : |a| <= beta*m}`` have cone slices at level one whose volume
difference equals ``lim lam(R/I_m)/m^d``.  Here every graded piece is a
single monomial, so the semigroups are pure lattice objects and the slice
volumes are computed exactly from convex hulls of scaled fibers.

The bound beta = 2c, with c minimal such that m^c lies in I_1, guarantees
that every standard monomial of I_m stays inside the simplex |a| <= beta*m,
which makes the counting identity exact.
"""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import geometry
from .errors import DimensionUnsupported, NotMPrimary, NotNoetherian
from .filtrations import Filtration
from .multiplicity import (
    ExactStrategy,
    LimitEstimate,
    NumericStrategy,
    Strategy,
    limit_normalized_colength,
)
from .staircase import MonomialIdeal, colength

Exponent = tuple[int, ...]


def containment_exponent(I: MonomialIdeal) -> int:
    """Minimal c with m^c contained in I (I m-primary).

    Equals one plus the largest total degree of a standard monomial, found by
    scanning the staircase box.
    """
    if not I.is_m_primary():
        raise NotMPrimary("containment exponent needs an m-primary ideal")
    if I.is_unit:
        return 0
    caps = I.box()
    best = -1
    for point in itertools.product(*(range(c) for c in caps)):
        if not I.contains(point):
            best = max(best, sum(point))
    return best + 1


def admissible_beta(F: Filtration) -> Fraction:
    """The simplex bound beta = 2*c for the semigroup construction."""
    return Fraction(2 * containment_exponent(F.ideal_at(1)))


@dataclass(frozen=True)
class SemigroupSample:
    """The level-m fiber of the value semigroup of a filtration."""

    dim: int
    m: int
    beta: Fraction
    points: frozenset

    def count(self) -> int:
        return len(self.points)


def semigroup_points(F: Filtration, m: int, beta) -> SemigroupSample:
    """All lattice points of the staircase of I_m inside |a| <= beta*m."""
    beta = Fraction(beta)
    if m < 1:
        raise ValueError("level must be >= 1")
    bound = math.floor(beta * m)
    ideal = F.ideal_at(m)
    pts = []
    for a in _simplex_points(F.dim, bound):
        if ideal.contains(a):
            pts.append(a)
    return SemigroupSample(F.dim, m, beta, frozenset(pts))


def ambient_points(dim: int, m: int, beta) -> SemigroupSample:
    """The companion fiber with the ring in place of the ideal."""
    beta = Fraction(beta)
    bound = math.floor(beta * m)
    return SemigroupSample(dim, m, beta, frozenset(_simplex_points(dim, bound)))


def ambient_count(dim: int, m: int, beta) -> int:
    bound = math.floor(Fraction(beta) * m)
    return math.comb(bound + dim, dim)


def _simplex_points(dim: int, bound: int):
    if dim == 1:
        for x in range(bound + 1):
            yield (x,)
        return
    for head in itertools.product(range(bound + 1), repeat=dim - 1):
        rest = bound - sum(head)
        if rest < 0:
            continue
        for x in range(rest + 1):
            yield head + (x,)


@dataclass(frozen=True)
class BodyApproximation:
    """Exact hull volume of a scaled fiber conv(fiber_m / m).

    These polytopes sit inside the limit body and their volumes are
    nondecreasing along doubling levels, so each value is a certified inner
    approximation.
    """

    m: int
    vertices: tuple
    volume: Fraction

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "volume": str(self.volume),
            "vertices": [[str(Fraction(x)) for x in v] for v in self.vertices],
        }


def _fiber_hull_points(F: Filtration, m: int, bound: int) -> list[Exponent]:
    """Column-extreme points of the fiber; their hull is the fiber hull."""
    ideal = F.ideal_at(m)
    d = F.dim
    if d == 1:
        low = ideal.gens[0][0]
        if low > bound:
            return []
        return [(low,), (bound,)]
    if d == 2:
        xs: list[int] = []
        floor_y: list[int] = []
        for gx, gy in sorted(ideal.gens):
            xs.append(gx)
            floor_y.append(gy if not floor_y else min(floor_y[-1], gy))
        pts = []
        for x in range(bound + 1):
            idx = bisect.bisect_right(xs, x) - 1
            if idx < 0:
                continue
            bottom = floor_y[idx]
            top = bound - x
            if bottom <= top:
                pts.append((x, bottom))
                pts.append((x, top))
        return pts
    if d == 3:
        pts = []
        gens = ideal.gens
        for x in range(bound + 1):
            for y in range(bound + 1 - x):
                zs = [g[2] for g in gens if g[0] <= x and g[1] <= y]
                if not zs:
                    continue
                bottom = min(zs)
                top = bound - x - y
                if bottom <= top:
                    pts.append((x, y, bottom))
                    pts.append((x, y, top))
        return pts
    raise DimensionUnsupported("fiber hulls are computed for d <= 3 only")


def body_volume(F: Filtration, m: int, beta) -> BodyApproximation:
    """Exact volume of the scaled fiber hull conv(fiber_m / m), d <= 3."""
    beta = Fraction(beta)
    if F.dim > 3:
        raise DimensionUnsupported("body volumes need d <= 3")
    bound = math.floor(beta * m)
    pts = _fiber_hull_points(F, m, bound)
    if not pts:
        return BodyApproximation(m, (), Fraction(0))
    volume = geometry.hull_volume(pts, F.dim) / Fraction(m) ** F.dim
    if F.dim == 1:
        hull = sorted(set(pts))
    elif F.dim == 2:
        hull = geometry.convex_hull_2d(pts)
    else:
        hull = sorted(set(pts))
    vertices = tuple(tuple(Fraction(x, m) for x in v) for v in hull)
    return BodyApproximation(m, vertices, volume)


def ambient_body_volume(dim: int, m: int, beta) -> Fraction:
    """Volume of the scaled ambient fiber hull: a simplex of side floor(beta*m)/m."""
    bound = math.floor(Fraction(beta) * m)
    return (Fraction(bound, m)) ** dim / math.factorial(dim)


@dataclass(frozen=True)
class OkounkovReport:
    beta: Fraction
    m: int
    vol_hat: Fraction
    vol_body: Fraction
    difference: Fraction
    limit: LimitEstimate
    gap_abs: float
    gap_rel: float

    def to_json(self) -> dict:
        return {
            "beta": str(self.beta),
            "m": self.m,
            "vol_hat": str(self.vol_hat),
            "vol_body": str(self.vol_body),
            "difference": str(self.difference),
            "limit": self.limit.to_json(),
            "gap": {"absolute": self.gap_abs, "relative": self.gap_rel},
        }


def volume_limit_check(
    F: Filtration, m_max: int, strategy: Strategy | None = None
) -> OkounkovReport:
    """Compare the body-volume difference at level m_max with the colength limit.

    The difference Vol(ambient body) - Vol(fiber body) approximates
    ``lim lam(R/I_m)/m^d`` from above (the fiber hull approximates its body
    from inside); the report records the absolute and relative gap and makes
    no rate claim.
    """
    if F.dim > 3:
        raise DimensionUnsupported("volume checks need d <= 3")
    beta = admissible_beta(F)
    m = m_max
    vol_hat = ambient_body_volume(F.dim, m, beta)
    body = body_volume(F, m, beta)
    difference = vol_hat - body.volume
    if strategy is None:
        try:
            limit = limit_normalized_colength([F], (1,), ExactStrategy())
        except NotNoetherian:
            limit = limit_normalized_colength([F], (1,), NumericStrategy(m_max=max(1024, m_max)))
    else:
        limit = limit_normalized_colength([F], (1,), strategy)
    gap_abs = abs(float(difference) - float(limit.value))
    denom = float(limit.value) if limit.value else 1.0
    gap_rel = gap_abs / abs(denom)
    return OkounkovReport(
        beta=beta,
        m=m,
        vol_hat=vol_hat,
        vol_body=body.volume,
        difference=difference,
        limit=limit,
        gap_abs=gap_abs,
        gap_rel=gap_rel,
    )


def fiber_count_identity(F: Filtration, m: int, beta) -> tuple[int, int, int]:
    """(ambient count, fiber count, colength of I_m): the counting identity
    ambient - fiber = colength holds whenever beta is admissible."""
    sample = semigroup_points(F, m, beta)
    hat = ambient_count(F.dim, m, beta)
    return hat, sample.count(), colength(F.ideal_at(m))
