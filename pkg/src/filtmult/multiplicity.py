"""Multiplicities and mixed multiplicities of filtrations.

The normalized colength function ``P(n_1..n_r) = lim lam(R / I(1)_{m n_1}
... I(r)_{m n_r}) / m^d`` is a homogeneous polynomial of degree d in n; its
coefficients are recovered exactly for Noetherian inputs (through a
power-stability scale) and numerically otherwise.  Mixed multiplicities are
the normalized coefficients of that polynomial.

Two exact engines are available for the multiplicity of a single monomial
ideal: the definitional Hilbert-Samuel route (d-th finite differences of
colengths of powers, which stabilize exactly) and d! times the Newton-region
covolume (d <= 3).  They agree on all inputs; the covolume route is the fast
path inside large verification suites and is cross-checked by the
Hilbert-Samuel route in the test suite.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    DimensionMismatch,
    ExhaustedRetries,
    NotMPrimary,
    NotNoetherian,
    TopCoefficientDrift,
)
from .filtrations import (
    DiagonalFiltration,
    Filtration,
    PowerFiltration,
    ShiftedPowerFiltration,
    TruncatedFiltration,
    detect_noetherian_scale,
    truncate,
)
from .geometry import covolume_from_gens
from .staircase import MonomialIdeal, colength, covolume, newton_region, power, product, unit_ideal

Exponent = tuple[int, ...]


# ---------------------------------------------------------------------------
# Strategies


@dataclass(frozen=True)
class ExactStrategy:
    """Evaluate limits exactly through a power-stability scale.

    ``multiplicity_method`` selects the ideal-multiplicity engine: "covolume"
    (d <= 3), "hilbert_samuel", or "auto" (covolume when available).
    """

    scale_bound: int = 24
    scale_depth: int = 4
    multiplicity_method: str = "auto"
    hs_budget: int = 60

    tag = "exact_noetherian"


@dataclass(frozen=True)
class NumericStrategy:
    """Evaluate limits along a geometric index schedule m0 * 2^k <= m_max.

    The reported error bound is the last successive difference; this is a
    heuristic (no convergence rate is asserted), so results are flagged
    inexact.
    """

    m_max: int = 4096
    m0: int = 1

    tag = "numeric"

    def schedule(self) -> list[int]:
        out = []
        m = self.m0
        while m <= self.m_max:
            out.append(m)
            m *= 2
        if len(out) < 2:
            raise BudgetExceeded(f"numeric schedule needs m_max >= 2*m0, got {self.m_max}")
        return out


Strategy = ExactStrategy | NumericStrategy


@dataclass(frozen=True)
class LimitEstimate:
    """A limit value with provenance: exact rational or extrapolated."""

    value: Fraction | float
    error_bound: Fraction | float
    exact: bool
    strategy: str
    samples: tuple[tuple[int, Fraction], ...] = ()

    def to_json(self) -> dict:
        if self.exact:
            return {"value": str(self.value), "exact": True, "strategy": self.strategy}
        return {
            "value": float(self.value),
            "error_bound": float(self.error_bound),
            "exact": False,
            "strategy": self.strategy,
            "samples": [[m, float(v)] for m, v in self.samples],
        }


# ---------------------------------------------------------------------------
# Multiplicity of a single monomial ideal


def hilbert_samuel_multiplicity(I: MonomialIdeal, m_budget: int = 60) -> int:
    """Exact e(I) by stabilized d-th finite differences of colength(I^m).

    colength(I^m) agrees with a degree-d polynomial for large m, so its d-th
    differences become exactly constant.  A fixed plateau length alone is not
    a sound stopping rule: the differences can sit on a spurious plateau for
    many steps before the polynomial range begins (e.g. the d = 3 ideal
    (z^3, y^5, x y^2 z, x^4) plateaus at 58 for seven steps before
    stabilizing at its true multiplicity 59).  For d <= 3 the loop therefore
    runs until the differences agree with the exact covolume certificate
    d! * covol three times in a row; in higher dimension, where no certificate
    is available, a plateau of three is used as a heuristic.
    """
    if not I.is_m_primary():
        raise NotMPrimary("multiplicity needs an m-primary ideal")
    if I.is_unit:
        return 0
    d = I.dim
    target: int | None = None
    if d <= 3:
        certified = math.factorial(d) * covolume(newton_region(I))
        if certified.denominator != 1:
            raise AssertionError(f"non-integer multiplicity certificate {certified}")
        target = int(certified)
    values: list[int] = []
    current = unit_ideal(d)
    for m in range(1, m_budget + 1):
        current = product(current, I)
        values.append(colength(current))
        if len(values) < d + 3:
            continue
        diffs = values[:]
        for _ in range(d):
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        if len(diffs) < 3 or not diffs[-1] == diffs[-2] == diffs[-3]:
            continue
        if target is None or diffs[-1] == target:
            return diffs[-1]
    raise BudgetExceeded(f"no stabilization within m <= {m_budget}")


def ideal_multiplicity(I: MonomialIdeal, method: str = "auto", m_budget: int = 60) -> Fraction:
    """e(I) as an exact Fraction, choosing the engine by ``method``."""
    if method not in ("auto", "covolume", "hilbert_samuel"):
        raise ValueError(f"unknown multiplicity method {method!r}")
    if I.is_unit:
        return Fraction(0)
    if method == "hilbert_samuel" or (method == "auto" and I.dim > 3):
        return Fraction(hilbert_samuel_multiplicity(I, m_budget))
    return math.factorial(I.dim) * covolume(newton_region(I))


# ---------------------------------------------------------------------------
# Structure-aware exact evaluation helpers


def _exact_core(F: Filtration) -> Filtration:
    """A filtration with the same normalized colength limits that the exact
    strategy can handle.

    Shifted powers {I^(n+s)} have no power-stability scale (new generators
    appear in every degree), but the index shift is invisible in the limit,
    so they are evaluated through their plain power core.
    """
    if isinstance(F, ShiftedPowerFiltration):
        return PowerFiltration(F.ideal)
    if isinstance(F, PointwiseProductFiltration):
        return PointwiseProductFiltration(_exact_core(F.left), _exact_core(F.right))
    return F


class PointwiseProductFiltration(Filtration):
    """The filtration n -> F(n) * G(n) of two filtrations of the same ring.

    Used for the product side of the Minkowski root inequality; it is a bona
    fide filtration (termwise products of descending multiplicative chains).
    """

    kind = "pointwise_product"

    def __init__(self, left: Filtration, right: Filtration):
        if left.dim != right.dim:
            raise DimensionMismatch("pointwise product needs equal dimensions")
        super().__init__(left.dim)
        self.left = left
        self.right = right

    def _compute(self, n: int) -> MonomialIdeal:
        return product(self.left.ideal_at(n), self.right.ideal_at(n))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "factors": [self.left.to_json(), self.right.to_json()],
        }

    def describe(self) -> str:
        return f"({self.left.describe()})*({self.right.describe()})"


def _truncation_scale_1d(F: TruncatedFiltration) -> int:
    """Provably valid scale for a one-variable truncated filtration.

    For d = 1 the truncated ideal at n is x^w(n) with w the min-plus closure
    of the base costs at parts <= a.  Any part size attaining the best
    density cost(p)/p is a valid scale: w(s*i) = i*w(s) for all i because
    every partition costs at least size * best-density.
    """
    a = F.a
    costs = []
    for p in range(1, a + 1):
        gens = F.base.ideal_at(p).gens
        costs.append(gens[0][0])
    best = min(Fraction(c, p) for p, c in enumerate(costs, start=1))
    for p, c in enumerate(costs, start=1):
        if Fraction(c, p) == best:
            return p
    raise AssertionError("unreachable")


def _resolve_scale(F: Filtration, strategy: ExactStrategy) -> int | None:
    """A scale a with I_{a*i} = I_a^i, or None when no scale is detected.

    Structure-aware: power filtrations have scale 1, rational diagonal
    filtrations have their denominator, one-variable truncations use an exact
    density argument.  Detection depth is boosted for truncations in higher
    dimension to reduce the risk of a spuriously small scale.
    """
    if isinstance(F, PowerFiltration):
        return 1
    if isinstance(F, PointwiseProductFiltration):
        s1 = _resolve_scale(F.left, strategy)
        s2 = _resolve_scale(F.right, strategy)
        if s1 is None or s2 is None:
            return None
        return math.lcm(s1, s2)
    if isinstance(F, DiagonalFiltration):
        rate = F.rates[0]
        return rate.as_fraction().denominator if rate.is_rational else None
    if isinstance(F, TruncatedFiltration):
        if F.dim == 1:
            return _truncation_scale_1d(F)
        for c in range(1, max(strategy.scale_bound, F.a) + 1):
            depth = max(strategy.scale_depth, -(-2 * F.a // c) + 1)
            base = F.ideal_at(c)
            if all(F.ideal_at(c * i) == power(base, i) for i in range(2, depth + 1)):
                return c
        return None
    return detect_noetherian_scale(F, strategy.scale_bound, strategy.scale_depth)


def _newton_candidates(F: Filtration, k: int) -> list[Exponent]:
    """Points whose hull (plus the orthant) is the Newton region of F(k).

    For power filtrations the Newton region scales linearly, so the base
    generators are scaled instead of expanding I^k; the candidate set
    generates the same region but not necessarily the same ideal, hence it is
    only used for covolume computations.
    """
    if k == 0:
        return [(0,) * F.dim]
    if isinstance(F, PowerFiltration):
        return [tuple(k * e for e in g) for g in F.ideal.gens]
    if isinstance(F, PointwiseProductFiltration):
        left = _newton_candidates(F.left, k)
        right = _newton_candidates(F.right, k)
        return [tuple(x + y for x, y in zip(u, v)) for u in left for v in right]
    return list(F.ideal_at(k).gens)


def _product_multiplicity(factors: list[tuple[Filtration, int]], strategy: ExactStrategy) -> Fraction:
    """Exact e(prod_j F_j(k_j)) for positive indices k_j."""
    dim = factors[0][0].dim
    if strategy.multiplicity_method != "hilbert_samuel" and dim <= 3:
        points = [(0,) * dim]
        for F, k in factors:
            cand = _newton_candidates(F, k)
            points = [tuple(x + y for x, y in zip(p, c)) for p in points for c in cand]
        return math.factorial(dim) * covolume_from_gens(points, dim)
    ideal = unit_ideal(dim)
    for F, k in factors:
        ideal = product(ideal, F.ideal_at(k))
    return Fraction(hilbert_samuel_multiplicity(ideal, strategy.hs_budget))


# ---------------------------------------------------------------------------
# The limit function


def _validate_family(Fs: list[Filtration]) -> int:
    if not Fs:
        raise ValueError("need at least one filtration")
    dims = {F.dim for F in Fs}
    if len(dims) != 1:
        raise DimensionMismatch("filtrations have mixed ambient dimensions")
    return Fs[0].dim


def limit_normalized_colength(
    Fs: list[Filtration], n, strategy: Strategy | None = None
) -> LimitEstimate:
    """lim_m lam(R / I(1)_{m n_1} ... I(r)_{m n_r}) / m^d.

    Exact strategy: the limit equals e(prod_j I(j)_{a n_j}) / (d! a^d) where
    a is a common power-stability scale (the lcm of per-filtration scales).
    Numeric strategy: normalized colengths along a geometric schedule, last
    successive difference as the error bound.  Zero indices drop their
    factor; the all-zero index returns 0 exactly.
    """
    strategy = strategy if strategy is not None else ExactStrategy()
    d = _validate_family(Fs)
    n = tuple(int(v) for v in n)
    if len(n) != len(Fs):
        raise DimensionMismatch(f"{len(Fs)} filtrations but {len(n)} indices")
    if any(v < 0 for v in n):
        raise ValueError("indices must be >= 0")
    active = [(F, v) for F, v in zip(Fs, n) if v > 0]
    if not active:
        return LimitEstimate(Fraction(0), Fraction(0), True, strategy.tag)

    if isinstance(strategy, ExactStrategy):
        cores = [(_exact_core(F), v) for F, v in active]
        scales = []
        for F, _ in cores:
            s = _resolve_scale(F, strategy)
            if s is None:
                raise NotNoetherian(
                    f"no power-stability scale detected for {F.describe()} "
                    f"(bound {strategy.scale_bound})"
                )
            scales.append(s)
        a = math.lcm(*scales)
        e = _product_multiplicity([(F, a * v) for F, v in cores], strategy)
        value = e / (math.factorial(d) * Fraction(a) ** d)
        return LimitEstimate(value, Fraction(0), True, strategy.tag)

    samples: list[tuple[int, Fraction]] = []
    for m in strategy.schedule():
        ideal = unit_ideal(d)
        for F, v in active:
            ideal = product(ideal, F.ideal_at(m * v))
        samples.append((m, Fraction(colength(ideal), m**d)))
    error = abs(samples[-1][1] - samples[-2][1])
    return LimitEstimate(samples[-1][1], error, False, strategy.tag, tuple(samples))


# ---------------------------------------------------------------------------
# Sample points and coefficient extraction


def degree_monomials(r: int, d: int) -> list[Exponent]:
    """Exponents of all degree-d monomials in r variables, graded-lex order
    starting at (d, 0, ..., 0)."""
    out = [e for e in itertools.product(range(d + 1), repeat=r) if sum(e) == d]
    return sorted(out, reverse=True)


def monomial_matrix(points: list[Exponent], d: int) -> list[list[Fraction]]:
    r = len(points[0])
    cols = degree_monomials(r, d)
    return [
        [Fraction(math.prod(p[i] ** e[i] for i in range(r))) for e in cols]
        for p in points
    ]


def sample_points(
    r: int, d: int, seed: int = 0, max_attempts: int = 200
) -> tuple[list[Exponent], list[list[Fraction]]]:
    """g integer points whose degree-d monomial matrix B is nonsingular,
    together with B^{-1} exactly; g = binom(r-1+d, r-1).

    Nonsingularity is generic, so seeded uniform draws from [1, 2g]^r with an
    exact determinant test converge immediately in practice.  Deterministic
    for a fixed seed; r = 1 always returns the canonical point (1).
    """
    if r < 1 or d < 1:
        raise ValueError("need r, d >= 1")
    g = math.comb(r - 1 + d, r - 1)
    if r == 1:
        return [(1,)], [[Fraction(1)]]
    rng = random.Random(seed)
    for _ in range(max_attempts):
        pts = [tuple(rng.randint(1, 2 * g) for _ in range(r)) for _ in range(g)]
        if len(set(pts)) < g:
            continue
        B = monomial_matrix(pts, d)
        inverse = linalg.invert(B)
        if inverse is not None:
            return pts, inverse
    raise ExhaustedRetries(f"no nonsingular sample matrix in {max_attempts} draws")


@dataclass(frozen=True)
class MixedMultiplicityTable:
    """Mixed multiplicities e(type) for all types (d_1..d_r) with sum = d.

    The limit polynomial is G(n) = sum_type entry(type) / prod(d_i!) * n^type.
    """

    d: int
    r: int
    entries: dict
    exact: bool
    points: tuple[Exponent, ...]
    inverse: tuple
    strategy: str

    def entry(self, type_tuple) -> Fraction | float:
        return self.entries[tuple(type_tuple)]

    def polynomial_value(self, n) -> Fraction | float:
        n = tuple(n)
        total = 0
        for t, e in self.entries.items():
            denom = math.prod(math.factorial(i) for i in t)
            total += e * Fraction(math.prod(x**i for x, i in zip(n, t)), denom)
        return total

    def types(self) -> list[Exponent]:
        return sorted(self.entries, reverse=True)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "entries": [
                {
                    "type": list(t),
                    "value": str(v) if self.exact else float(v),
                    "exact": self.exact,
                }
                for t, v in sorted(self.entries.items(), reverse=True)
            ],
            "points": [list(p) for p in self.points],
            "strategy": self.strategy,
        }


def mixed_multiplicity_table(
    Fs: list[Filtration], strategy: Strategy | None = None, seed: int = 0
) -> MixedMultiplicityTable:
    """Solve for the coefficients of the limit polynomial G at sample points.

    b_j = G(point_j) is evaluated by ``limit_normalized_colength``; the
    homogeneous coefficients are a = B^{-1} b and the table entry of type
    (d_1..d_r) is the coefficient times d_1! ... d_r!.
    """
    strategy = strategy if strategy is not None else ExactStrategy()
    d = _validate_family(Fs)
    r = len(Fs)
    points, inverse = sample_points(r, d, seed)
    estimates = [limit_normalized_colength(Fs, p, strategy) for p in points]
    exact = all(est.exact for est in estimates)
    b = [est.value for est in estimates]
    cols = degree_monomials(r, d)
    coeffs = [sum(inverse[i][j] * b[j] for j in range(len(b))) for i in range(len(cols))]
    entries = {}
    for e, a in zip(cols, coeffs):
        entries[e] = a * math.prod(math.factorial(i) for i in e)
    return MixedMultiplicityTable(
        d=d,
        r=r,
        entries=entries,
        exact=exact,
        points=tuple(points),
        inverse=tuple(tuple(row) for row in inverse),
        strategy=strategy.tag,
    )


def filtration_multiplicity(F: Filtration, strategy: Strategy | None = None) -> Fraction | float:
    """e(F) = d! * lim lam(R/I_m)/m^d."""
    est = limit_normalized_colength([F], (1,), strategy)
    return math.factorial(F.dim) * est.value


# ---------------------------------------------------------------------------
# Truncation convergence


@dataclass(frozen=True)
class TruncationConvergenceReport:
    schedule: tuple[int, ...]
    targets: tuple[Exponent, ...]
    sequences: dict
    deltas: dict
    exact: bool

    def to_json(self) -> dict:
        def enc(v):
            return str(v) if isinstance(v, Fraction) else float(v)

        return {
            "schedule": list(self.schedule),
            "targets": [list(t) for t in self.targets],
            "sequences": {
                " ".join(map(str, t)): [enc(v) for v in seq]
                for t, seq in self.sequences.items()
            },
            "deltas": {
                " ".join(map(str, t)): [enc(v) for v in seq]
                for t, seq in self.deltas.items()
            },
            "exact": self.exact,
        }


def truncation_convergence(
    Fs: list[Filtration],
    a_schedule,
    targets=None,
    strategy: ExactStrategy | None = None,
    seed: int = 0,
) -> TruncationConvergenceReport:
    """Mixed multiplicities of the truncated filtrations along a schedule.

    Truncations are Noetherian, so every value is exact.  The report gives
    the per-target sequences and successive deltas; no convergence rate is
    asserted.
    """
    schedule = [int(a) for a in a_schedule]
    if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be nonempty and strictly increasing")
    strategy = strategy if strategy is not None else ExactStrategy()
    d = _validate_family(Fs)
    r = len(Fs)
    if targets is None:
        targets = [tuple(d if i == 0 else 0 for i in range(r))]
    targets = [tuple(t) for t in targets]
    for t in targets:
        if len(t) != r or sum(t) != d:
            raise ValueError(f"target {t} is not a type of total degree {d}")
    sequences = {t: [] for t in targets}
    for a in schedule:
        truncated = [truncate(F, a) for F in Fs]
        table = mixed_multiplicity_table(truncated, strategy, seed=seed)
        for t in targets:
            sequences[t].append(table.entry(t))
    deltas = {t: [y - x for x, y in zip(seq, seq[1:])] for t, seq in sequences.items()}
    return TruncationConvergenceReport(
        schedule=tuple(schedule),
        targets=tuple(targets),
        sequences=sequences,
        deltas=deltas,
        exact=True,
    )


# ---------------------------------------------------------------------------
# Quasi-polynomial fitting


@dataclass(frozen=True)
class QuasiPolynomial:
    """Periodic-coefficient polynomial: one exact polynomial per residue
    class of the period, all of total degree ``degree`` with identical
    top-degree coefficients."""

    arity: int
    period: int
    degree: int
    class_coefficients: dict

    def evaluate(self, n) -> Fraction:
        n = tuple(n)
        residue = tuple(v % self.period for v in n)
        total = Fraction(0)
        for e, c in self.class_coefficients[residue].items():
            total += c * math.prod(Fraction(v) ** k for v, k in zip(n, e))
        return total

    def top_coefficients(self) -> dict:
        first = next(iter(self.class_coefficients.values()))
        return {e: c for e, c in first.items() if sum(e) == self.degree}

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "period": self.period,
            "degree": self.degree,
            "classes": [
                {
                    "residue": list(b),
                    "coefficients": [
                        {"exponent": list(e), "value": str(c)}
                        for e, c in sorted(coeffs.items(), reverse=True)
                        if c != 0
                    ],
                }
                for b, coeffs in sorted(self.class_coefficients.items())
            ],
        }


def _family_colength(Fs: list[Filtration], n: Exponent) -> int:
    ideal = unit_ideal(Fs[0].dim)
    for F, v in zip(Fs, n):
        if v:
            ideal = product(ideal, F.ideal_at(v))
    return colength(ideal)


def fit_quasi_polynomial(
    Fs: list[Filtration],
    alpha: int,
    window: int = 2,
    max_retries: int = 6,
    strategy: ExactStrategy | None = None,
) -> QuasiPolynomial:
    """Recover the eventual quasi-polynomial of n -> lam(R / prod I(j)_{n_j}).

    For each residue class of the period alpha the colength function is
    interpolated exactly on a tensor grid of large indices and validated at
    two extra fresh samples; the start offset is pushed out until validation
    holds (the threshold where the quasi-polynomial begins is discovered
    empirically).  Raises DegreeMismatch when an interpolant does not have
    total degree d, TopCoefficientDrift when the top coefficients differ
    across classes; both signal a bug or an invalid period input.
    """
    strategy = strategy if strategy is not None else ExactStrategy()
    d = _validate_family(Fs)
    r = len(Fs)
    if alpha < 1:
        raise ValueError("period must be >= 1")
    for F in Fs:
        s = _resolve_scale(F, strategy)
        if s is None or alpha % s != 0:
            raise NotNoetherian(
                f"{F.describe()}: no detected scale dividing the period {alpha}"
            )
    exponents = list(itertools.product(range(d + 1), repeat=r))
    class_coeffs: dict = {}
    for residue in itertools.product(range(alpha), repeat=r):
        k0 = max(window, 1)
        fitted = None
        for _ in range(max_retries):
            grid = list(itertools.product(range(k0, k0 + d + 1), repeat=r))
            nodes = [tuple(alpha * k + b for k, b in zip(ks, residue)) for ks in grid]
            rows = [
                [Fraction(math.prod(nv**e_i for nv, e_i in zip(node, e))) for e in exponents]
                for node in nodes
            ]
            rhs = [Fraction(_family_colength(Fs, node)) for node in nodes]
            solution = linalg.solve(rows, rhs)
            if solution is not None:
                coeffs = dict(zip(exponents, solution))
                ok = True
                for extra in (d + 1, d + 2):
                    ks = tuple(k0 + extra for _ in range(r))
                    node = tuple(alpha * k + b for k, b in zip(ks, residue))
                    predicted = sum(
                        c * math.prod(Fraction(nv) ** e_i for nv, e_i in zip(node, e))
                        for e, c in coeffs.items()
                    )
                    if predicted != _family_colength(Fs, node):
                        ok = False
                        break
                if ok:
                    fitted = coeffs
                    break
            k0 += max(window, 1)
        if fitted is None:
            raise BudgetExceeded(
                f"interpolation did not stabilize for residue class {residue}"
            )
        class_coeffs[residue] = fitted

    for residue, coeffs in class_coeffs.items():
        if any(c != 0 for e, c in coeffs.items() if sum(e) > d):
            raise DegreeMismatch(f"class {residue}: interpolant exceeds total degree {d}")
        if all(c == 0 for e, c in coeffs.items() if sum(e) == d):
            raise DegreeMismatch(f"class {residue}: interpolant has total degree < {d}")
    reference = None
    for residue, coeffs in sorted(class_coeffs.items()):
        top = {e: c for e, c in coeffs.items() if sum(e) == d}
        if reference is None:
            reference = top
        elif top != reference:
            raise TopCoefficientDrift(
                f"top coefficients differ between classes: {reference} vs {top}"
            )
    return QuasiPolynomial(
        arity=r, period=alpha, degree=d, class_coefficients=class_coeffs
    )
