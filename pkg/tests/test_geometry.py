import random
from fractions import Fraction

from filtmult.geometry import (
    convex_hull_2d,
    covolume_from_gens,
    hull_area,
    hull_volume,
    hull_volume_3d,
    lower_left_chain,
    newton_inequalities,
    polytope_volume_hrep,
    satisfies_inequalities,
)


def test_lower_left_chain_filters_non_extreme():
    chain = lower_left_chain([(0, 4), (2, 3), (3, 0)])
    assert chain == [(0, 4), (3, 0)]
    chain = lower_left_chain([(0, 4), (1, 1), (3, 0)])
    assert chain == [(0, 4), (1, 1), (3, 0)]


def test_hull_area_square_with_interior_noise():
    pts = [(0, 0), (4, 0), (0, 4), (4, 4)] + [(1, 2), (2, 2), (3, 1)]
    assert hull_area(pts) == 16


def test_hull_volume_3d_reference_shapes():
    cube = [(x, y, z) for x in (0, 2) for y in (0, 2) for z in (0, 2)]
    assert hull_volume_3d(cube) == 8
    simplex = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert hull_volume_3d(simplex) == Fraction(1, 6)
    # shell between two simplices, with many boundary lattice points
    pts = []
    for x in range(5):
        for y in range(5 - x):
            bottom = max(0, 2 - x - y)
            top = 4 - x - y
            if bottom <= top:
                pts += [(x, y, bottom), (x, y, top)]
    assert hull_volume_3d(pts) == Fraction(28, 3)


def test_hull_volume_3d_degenerate():
    assert hull_volume_3d([(0, 0, 0), (1, 0, 0), (0, 1, 0)]) == 0
    coplanar = [(x, y, x + y) for x in range(3) for y in range(3)]
    assert hull_volume_3d(coplanar) == 0


def test_hrep_volume_matches_hull_volume():
    # box [0,2]^3 cut by x+y+z >= 2
    ineqs = []
    for i in range(3):
        e = tuple(int(i == j) for j in range(3))
        ineqs.append((e, 0))
        ineqs.append((tuple(-v for v in e), -2))
    ineqs.append(((1, 1, 1), 2))
    vol = polytope_volume_hrep(ineqs)
    assert vol == 8 - Fraction(8, 6)


def test_newton_inequalities_complete_for_membership():
    rng = random.Random(5)
    for _ in range(20):
        gens = [(rng.randint(1, 5), 0, 0), (0, rng.randint(1, 5), 0),
                (0, 0, rng.randint(1, 5))]
        gens += [tuple(rng.randint(0, 5) for _ in range(3)) for _ in range(2)]
        ineqs = newton_inequalities(gens, 3)
        # every generator plus orthant shifts stays inside
        for g in gens:
            assert satisfies_inequalities(g, ineqs)
            assert satisfies_inequalities(tuple(x + 1 for x in g), ineqs)
        # midpoints of generator pairs are inside (convexity)
        for a in gens:
            for b in gens:
                mid = tuple(Fraction(x + y, 2) for x, y in zip(a, b))
                assert satisfies_inequalities(mid, ineqs)


def test_covolume_1d_2d():
    assert covolume_from_gens([(3,)], 1) == 3
    assert covolume_from_gens([(1, 0), (0, 1)], 2) == Fraction(1, 2)
    # raw generating set with dominated members gives the same region
    assert covolume_from_gens([(1, 0), (0, 1), (2, 2), (1, 3)], 2) == Fraction(1, 2)


def test_hull_volume_dispatch():
    assert hull_volume([(1,), (4,)], 1) == 3
    assert hull_volume([(0, 0), (1, 0), (0, 1)], 2) == Fraction(1, 2)


def test_convex_hull_2d_collinear():
    assert convex_hull_2d([(0, 0), (1, 1), (2, 2)]) == [(0, 0), (2, 2)]
