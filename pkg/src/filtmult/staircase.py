"""Exact monomial-ideal arithmetic in a power-series ring k[[x_1,...,x_d]].

A monomial ideal is stored as the antichain of its minimal generator
exponents.  Lengths of quotients become lattice-point counts under the
staircase, which makes every multiplicity in this package exactly
computable.  The unit ideal (single generator 0) represents the whole ring;
the zero ideal is not representable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import geometry
from .errors import BudgetExceeded, DimensionMismatch, DimensionUnsupported, NotMPrimary

Exponent = tuple[int, ...]


def dominates(a: Exponent, b: Exponent) -> bool:
    """True when ``a >= b`` componentwise (x^a is divisible by x^b)."""
    return all(x >= y for x, y in zip(a, b))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators (an antichain)."""

    dim: int
    gens: tuple[Exponent, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise DimensionMismatch("ambient dimension must be >= 1")
        if not self.gens:
            raise ValueError("the zero ideal is not representable; gens must be nonempty")
        canonical = tuple(sorted(self.gens))
        object.__setattr__(self, "gens", canonical)
        for g in canonical:
            if len(g) != self.dim:
                raise DimensionMismatch(
                    f"exponent {g} has length {len(g)}, expected {self.dim}"
                )
            if any(e < 0 for e in g):
                raise ValueError(f"negative exponent in {g}")
        for a, b in itertools.combinations(canonical, 2):
            if dominates(a, b) or dominates(b, a):
                raise ValueError("generators are not an antichain; use minimalize()")

    # -- basic structure ----------------------------------------------------

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.dim,)

    def contains(self, exponent: Exponent) -> bool:
        if len(exponent) != self.dim:
            raise DimensionMismatch(
                f"point has length {len(exponent)}, ideal lives in dimension {self.dim}"
            )
        return any(dominates(exponent, g) for g in self.gens)

    def pure_power(self, axis: int) -> int | None:
        """Smallest e with x_axis^e in the ideal, or None if there is none."""
        best = None
        for g in self.gens:
            if all(g[j] == 0 for j in range(self.dim) if j != axis):
                best = g[axis] if best is None else min(best, g[axis])
        return best

    def is_m_primary(self) -> bool:
        if self.is_unit:
            return True
        return all(self.pure_power(i) is not None for i in range(self.dim))

    def box(self) -> tuple[int, ...]:
        """Per-axis staircase bounds c_i (minimal pure-power exponents)."""
        caps = []
        for i in range(self.dim):
            c = self.pure_power(i)
            if c is None:
                raise NotMPrimary(f"no pure power on axis {i}; complement is infinite")
            caps.append(c)
        return tuple(caps)

    def leq(self, other: "MonomialIdeal") -> bool:
        """Ideal containment self <= other (every generator of self in other)."""
        _check_same_dim(self, other)
        return all(other.contains(g) for g in self.gens)

    # -- arithmetic sugar -----------------------------------------------------

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return product(self, other)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_sum(self, other)

    def __pow__(self, k: int) -> "MonomialIdeal":
        return power(self, k)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {"dim": self.dim, "gens": [list(g) for g in self.gens]}

    @staticmethod
    def from_json(data: dict) -> "MonomialIdeal":
        return minimalize([tuple(int(e) for e in g) for g in data["gens"]], int(data["dim"]))

    def __repr__(self) -> str:
        return f"MonomialIdeal(d={self.dim}, gens={list(self.gens)})"


def unit_ideal(dim: int) -> MonomialIdeal:
    return MonomialIdeal(dim, ((0,) * dim,))


def maximal_ideal(dim: int) -> MonomialIdeal:
    gens = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))
    return MonomialIdeal(dim, gens)


def _check_same_dim(a: MonomialIdeal, b: MonomialIdeal) -> None:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension mismatch: {a.dim} vs {b.dim}")


def minimal_elements(points: list[Exponent]) -> list[Exponent]:
    """Antichain of componentwise-minimal elements of a point set.

    Dimension two has an O(n log n) sweep (sort by x, keep strictly falling
    y); other dimensions use the quadratic scan over a degree-sorted list.
    """
    first = next(iter(points))
    if len(first) == 1:
        return [min(points)]
    if len(first) == 2:
        best = None
        kept2: list[Exponent] = []
        for x, y in sorted(set(points)):
            if best is None or y < best:
                kept2.append((x, y))
                best = y
        return kept2
    ordered = sorted(set(points), key=lambda p: (sum(p), p))
    kept: list[Exponent] = []
    for p in ordered:
        if not any(dominates(p, q) for q in kept):
            kept.append(p)
    return sorted(kept)


def minimalize(raw_gens, dim: int) -> MonomialIdeal:
    """Build the ideal generated by ``raw_gens``, reduced to minimal generators."""
    pts = [tuple(g) for g in raw_gens]
    if not pts:
        raise ValueError("raw generator set must be nonempty")
    for g in pts:
        if len(g) != dim:
            raise DimensionMismatch(f"exponent {g} has length {len(g)}, expected {dim}")
    return MonomialIdeal(dim, tuple(minimal_elements(pts)))


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same_dim(I, J)
    sums = {tuple(a + b for a, b in zip(g, h)) for g in I.gens for h in J.gens}
    return minimalize(list(sums), I.dim)


def power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    if k < 0:
        raise ValueError("negative power")
    result = unit_ideal(I.dim)
    base = I
    while k:
        if k & 1:
            result = product(result, base)
        k >>= 1
        if k:
            base = product(base, base)
    return result


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same_dim(I, J)
    return minimalize(list(I.gens) + list(J.gens), I.dim)


def contains(I: MonomialIdeal, exponent: Exponent) -> bool:
    return I.contains(tuple(exponent))


def is_m_primary(I: MonomialIdeal) -> bool:
    return I.is_m_primary()


# ---------------------------------------------------------------------------
# Colength (number of standard monomials)


def colength(I: MonomialIdeal) -> int:
    """Number of monomials not in I, by slab recursion over the staircase.

    The complement is sliced along the last axis; slices only change at
    generator exponents, so the cost is governed by the number of generators
    rather than the staircase volume.
    """
    if not I.is_m_primary():
        raise NotMPrimary(f"{I!r} is not m-primary")
    if I.is_unit:
        return 0
    return _colength_rec(list(I.gens), I.dim)


def _colength_rec(gens: list[Exponent], dim: int) -> int:
    if dim == 1:
        return min(g[0] for g in gens)
    cap = min(g[-1] for g in gens if all(e == 0 for e in g[:-1]))
    levels = sorted({g[-1] for g in gens if g[-1] < cap})
    total = 0
    for idx, z in enumerate(levels):
        upper = levels[idx + 1] if idx + 1 < len(levels) else cap
        slice_gens = minimal_elements([g[:-1] for g in gens if g[-1] <= z])
        if slice_gens == [(0,) * (dim - 1)]:
            continue
        total += (upper - z) * _colength_rec(slice_gens, dim - 1)
    return total


def colength_bruteforce(I: MonomialIdeal, budget: int = 10**8) -> int:
    """Reference implementation: scan the staircase box point by point."""
    if not I.is_m_primary():
        raise NotMPrimary(f"{I!r} is not m-primary")
    if I.is_unit:
        return 0
    caps = I.box()
    volume = 1
    for c in caps:
        volume *= max(c, 1)
    if volume > budget:
        raise BudgetExceeded(f"staircase box has {volume} points, budget is {budget}")
    count = 0
    for point in itertools.product(*(range(c) for c in caps)):
        if not any(dominates(point, g) for g in I.gens):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Newton region, covolume, integral closure


@dataclass(frozen=True)
class NewtonRegion:
    """The polyhedron conv(gens) + orthant, with a facet description for d <= 3.

    ``vertices`` (the extreme generators) determine the region uniquely, so
    equality and hashing use them.  ``inequalities`` is a complete valid
    family (possibly with redundant members) of the form <n, y> >= b; it is
    None when dim > 3.
    """

    dim: int
    generators: tuple[Exponent, ...]
    vertices: tuple[Exponent, ...]
    inequalities: tuple[tuple[tuple[int, ...], int], ...] | None

    def member(self, point) -> bool:
        if self.inequalities is None:
            raise DimensionUnsupported("membership test needs d <= 3")
        if any(Fraction(x) < 0 for x in point):
            return False
        return geometry.satisfies_inequalities(point, self.inequalities)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NewtonRegion):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash((self.dim, self.vertices))


def newton_region(I: MonomialIdeal) -> NewtonRegion:
    gens = list(I.gens)
    if I.dim > 3:
        return NewtonRegion(I.dim, tuple(gens), tuple(gens), None)
    ineqs = tuple(geometry.newton_inequalities(gens, I.dim))
    verts = []
    for g in gens:
        if len(gens) == 1:
            verts.append(g)
            continue
        others = [h for h in gens if h != g]
        other_ineqs = geometry.newton_inequalities(others, I.dim)
        if not geometry.satisfies_inequalities(g, other_ineqs):
            verts.append(g)
    return NewtonRegion(I.dim, tuple(gens), tuple(sorted(verts)), ineqs)


def covolume(region: NewtonRegion) -> Fraction:
    """Exact volume of (orthant \\ region); requires a bounded complement."""
    if region.dim > 3:
        raise DimensionUnsupported(
            f"covolume needs d <= 3, got d = {region.dim}; use the Hilbert-Samuel route"
        )
    gens = list(region.generators)
    for i in range(region.dim):
        if not any(all(g[j] == 0 for j in range(region.dim) if j != i) for g in gens):
            raise NotMPrimary(f"no pure power on axis {i}; covolume is infinite")
    return geometry.covolume_from_gens(gens, region.dim)


def integral_closure(I: MonomialIdeal) -> MonomialIdeal:
    """Monomial integral closure: all lattice points of the Newton region.

    A bounded search over the staircase box suffices because every minimal
    generator of the closure is dominated by the per-axis caps of I when I is
    m-primary; for non-primary ideals the box is padded by the generator
    support bounds.
    """
    if I.dim > 3:
        raise DimensionUnsupported("integral closure uses Newton facets, needs d <= 3")
    if I.is_unit:
        return I
    region = newton_region(I)
    caps = []
    for i in range(I.dim):
        pure = I.pure_power(i)
        caps.append(pure if pure is not None else max(g[i] for g in I.gens))
    points = [
        p
        for p in itertools.product(*(range(c + 1) for c in caps))
        if region.member(p)
    ]
    points.extend(I.gens)
    return minimalize(points, I.dim)
