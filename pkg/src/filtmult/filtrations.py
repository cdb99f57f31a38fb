"""Filtrations of monomial ideals: built-in families, truncation, checks.

A filtration is a map n -> I_n with I_0 = R, descending terms and
I_i * I_j contained in I_{i+j}.  Instances are logically immutable; the memo
cache on ``ideal_at`` is idempotent (a key always maps to the same ideal), so
concurrent reads and fills are safe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ArityMismatch,
    DimensionMismatch,
    IndexOutOfTable,
    NotMPrimary,
    SpecValidationError,
)
from .quadratic import QuadraticIrrational, ceil_sqrt
from .staircase import (
    MonomialIdeal,
    ideal_sum,
    minimal_elements,
    minimalize,
    power,
    product,
    unit_ideal,
)


class Filtration:
    """Base class; subclasses provide ``_compute(n)`` for n >= 1."""

    kind = "abstract"

    def __init__(self, dim: int):
        self.dim = dim
        self._cache: dict[int, MonomialIdeal] = {}

    def ideal_at(self, n: int) -> MonomialIdeal:
        if n < 0:
            raise ValueError("filtration index must be >= 0")
        if n == 0:
            return unit_ideal(self.dim)
        found = self._cache.get(n)
        if found is None:
            found = self._compute(n)
            self._cache[n] = found
        return found

    def _compute(self, n: int) -> MonomialIdeal:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def describe(self) -> str:
        return self.kind

    def __repr__(self) -> str:
        return f"<Filtration {self.describe()} d={self.dim}>"


class PowerFiltration(Filtration):
    """n -> I^n for a fixed m-primary ideal I."""

    kind = "power"

    def __init__(self, ideal: MonomialIdeal):
        if not ideal.is_m_primary():
            raise NotMPrimary("power filtrations need an m-primary base ideal")
        super().__init__(ideal.dim)
        self.ideal = ideal

    def _compute(self, n: int) -> MonomialIdeal:
        # geometric index schedules hit n/2 first, incremental loops hit n-1
        if n % 2 == 0 and n // 2 in self._cache:
            half = self._cache[n // 2]
            return product(half, half)
        if n - 1 in self._cache:
            return product(self._cache[n - 1], self.ideal)
        return power(self.ideal, n)

    def to_json(self) -> dict:
        return {"kind": self.kind, "ideal": self.ideal.to_json()}

    def describe(self) -> str:
        return f"power({list(self.ideal.gens)})"


class ShiftedPowerFiltration(Filtration):
    """n -> I^(n+s) for n >= 1 (and R at n = 0)."""

    kind = "shifted_power"

    def __init__(self, ideal: MonomialIdeal, shift: int):
        if shift < 0:
            raise ValueError("shift must be >= 0")
        if not ideal.is_m_primary():
            raise NotMPrimary("shifted power filtrations need an m-primary base ideal")
        super().__init__(ideal.dim)
        self.ideal = ideal
        self.shift = shift

    def _compute(self, n: int) -> MonomialIdeal:
        return power(self.ideal, n + self.shift)

    def to_json(self) -> dict:
        return {"kind": self.kind, "ideal": self.ideal.to_json(), "shift": self.shift}

    def describe(self) -> str:
        return f"shifted_power({list(self.ideal.gens)}, s={self.shift})"


class DiagonalFiltration(Filtration):
    """n -> (x^ceil(n*theta)) in one variable, theta a quadratic irrational.

    Only d = 1 is admitted: with two or more variables the ideals
    (x_i^ceil(n*theta_i)) violate multiplicativity (already (x^n, y^n) does:
    x*y^n is in I_1*I_n but not in I_{n+1}).
    """

    kind = "diagonal"

    def __init__(self, rates: list[QuadraticIrrational]):
        if len(rates) != 1:
            raise SpecValidationError(
                "diagonal filtrations are only multiplicative in one variable"
            )
        if rates[0].sign() <= 0:
            raise ValueError("diagonal rate must be positive")
        super().__init__(1)
        self.rates = tuple(rates)

    def _compute(self, n: int) -> MonomialIdeal:
        e = self.rates[0].ceil_times(n)
        return MonomialIdeal(1, ((e,),))

    def to_json(self) -> dict:
        return {"kind": self.kind, "rates": [r.to_json() for r in self.rates]}

    def describe(self) -> str:
        return f"diagonal({self.rates[0]})"


class MonomialValuationFiltration(Filtration):
    """n -> minimal set of a with sum_i a_i * w_i >= n, weights w_i > 0.

    All weights must lie in one real quadratic field so that weighted sums
    stay exactly comparable.
    """

    kind = "valuation"

    def __init__(self, weights: list[QuadraticIrrational]):
        if not weights:
            raise ValueError("need at least one weight")
        radicands = {w.s for w in weights if not w.is_rational}
        if len(radicands) > 1:
            raise SpecValidationError(
                "valuation weights must share a single quadratic radicand"
            )
        for w in weights:
            if w.sign() <= 0:
                raise ValueError("valuation weights must be positive")
        super().__init__(len(weights))
        self.weights = tuple(weights)

    def _compute(self, n: int) -> MonomialIdeal:
        # a_i can be capped at ceil(n / w_i): beyond that the single
        # coordinate already clears the threshold.
        caps = []
        for w in self.weights:
            cap = 0
            while (w * cap).compare_fraction(n) < 0:
                cap += 1
            caps.append(cap)
        members = []
        for a in itertools.product(*(range(c + 1) for c in caps)):
            total = QuadraticIrrational.rational(0)
            for coeff, w in zip(a, self.weights):
                total = total + w * coeff
            if total.compare_fraction(n) >= 0:
                members.append(a)
        return minimalize(minimal_elements(members), self.dim)

    def to_json(self) -> dict:
        return {"kind": self.kind, "weights": [w.to_json() for w in self.weights]}

    def describe(self) -> str:
        return f"valuation({', '.join(str(w) for w in self.weights)})"


class TableFiltration(Filtration):
    """Explicitly stored ideals I_1..I_N; indexing past N is an error."""

    kind = "table"

    def __init__(self, ideals: list[MonomialIdeal]):
        if not ideals:
            raise ValueError("table filtration needs at least one ideal")
        dims = {I.dim for I in ideals}
        if len(dims) != 1:
            raise DimensionMismatch("table ideals have mixed dimensions")
        for I in ideals:
            if not I.is_m_primary():
                raise NotMPrimary("table entries must be m-primary")
        super().__init__(ideals[0].dim)
        self.ideals = tuple(ideals)

    def _compute(self, n: int) -> MonomialIdeal:
        if n > len(self.ideals):
            raise IndexOutOfTable(f"table holds {len(self.ideals)} ideals, asked for {n}")
        return self.ideals[n - 1]

    def to_json(self) -> dict:
        return {"kind": self.kind, "ideals": [I.to_json() for I in self.ideals]}


class TruncatedFiltration(Filtration):
    """Noetherian approximation: agree with the base up to a, generate beyond.

    For n > a the term is the sum over decompositions n = k + (n - k) with
    1 <= k <= min(a, n - 1) of I_k * I_{a, n-k}; parts larger than a never
    contribute anything new because they decompose recursively.
    """

    kind = "truncated"

    def __init__(self, base: Filtration, a: int):
        if a < 1:
            raise ValueError("truncation level must be >= 1")
        super().__init__(base.dim)
        self.base = base
        self.a = a

    def _compute(self, n: int) -> MonomialIdeal:
        if n <= self.a:
            return self.base.ideal_at(n)
        total: MonomialIdeal | None = None
        for k in range(1, min(self.a, n - 1) + 1):
            part = product(self.base.ideal_at(k), self.ideal_at(n - k))
            total = part if total is None else ideal_sum(total, part)
        assert total is not None
        return total

    def to_json(self) -> dict:
        return {"kind": self.kind, "base": self.base.to_json(), "a": self.a}

    def describe(self) -> str:
        return f"truncate({self.base.describe()}, a={self.a})"


def truncate(base: Filtration, a: int) -> TruncatedFiltration:
    return TruncatedFiltration(base, a)


# ---------------------------------------------------------------------------
# Verification and Noetherian-scale detection


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    checked: int
    first_violation: tuple[str, int, int] | None = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": self.checked,
            "first_violation": list(self.first_violation) if self.first_violation else None,
        }


def verify_filtration(F: Filtration, N: int) -> VerificationReport:
    """Check the filtration axioms for all indices up to N.

    Violations are reported, not raised; the first failing pair is recorded
    as (axiom, i, j).  Multiplicativity of I_i * I_j is tested on generator
    sums directly, without materializing the product ideal.
    """
    checked = 0
    try:
        for n in range(N):
            checked += 1
            if not F.ideal_at(n + 1).leq(F.ideal_at(n)):
                return VerificationReport(False, checked, ("descending", n + 1, n))
        for i in range(1, N):
            for j in range(i, N - i + 1):
                checked += 1
                target = F.ideal_at(i + j)
                for g in F.ideal_at(i).gens:
                    for h in F.ideal_at(j).gens:
                        if not target.contains(tuple(x + y for x, y in zip(g, h))):
                            return VerificationReport(
                                False, checked, ("multiplicative", i, j)
                            )
        for n in range(1, N + 1):
            checked += 1
            if not F.ideal_at(n).is_m_primary():
                return VerificationReport(False, checked, ("m_primary", n, n))
    except IndexOutOfTable:
        pass
    return VerificationReport(True, checked)


def detect_noetherian_scale(F: Filtration, bound: int, depth: int = 4) -> int | None:
    """Smallest a <= bound with I_{a*i} = I_a^i for 2 <= i <= depth.

    This is evidence, not proof, of Noetherianity: a genuinely non-Noetherian
    filtration has no such a, but a spuriously small a can pass a finite
    depth check.  Callers that need sound exactness should verify more (see
    multiplicity._resolve_scale).
    """
    for a in range(1, bound + 1):
        base = F.ideal_at(a)
        ok = True
        for i in range(2, depth + 1):
            try:
                if F.ideal_at(a * i) != power(base, i):
                    ok = False
                    break
            except IndexOutOfTable:
                ok = False
                break
        if ok:
            return a
    return None


# ---------------------------------------------------------------------------
# Multigraded filtrations


class MultiFiltration:
    """A multigraded filtration n = (n_1..n_r) -> I_n."""

    kind = "abstract"

    def __init__(self, dim: int, arity: int):
        self.dim = dim
        self.arity = arity
        self._cache: dict[tuple[int, ...], MonomialIdeal] = {}

    def ideal_at(self, n: tuple[int, ...]) -> MonomialIdeal:
        n = tuple(n)
        if len(n) != self.arity:
            raise ArityMismatch(f"expected {self.arity} indices, got {len(n)}")
        if any(v < 0 for v in n):
            raise ValueError("indices must be >= 0")
        if all(v == 0 for v in n):
            return unit_ideal(self.dim)
        found = self._cache.get(n)
        if found is None:
            found = self._compute(n)
            self._cache[n] = found
        return found

    def _compute(self, n: tuple[int, ...]) -> MonomialIdeal:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


class ProductMultiFiltration(MultiFiltration):
    """(n_1..n_r) -> I(1)_{n_1} * ... * I(r)_{n_r}."""

    kind = "product"

    def __init__(self, factors: list[Filtration]):
        dims = {F.dim for F in factors}
        if len(dims) != 1:
            raise DimensionMismatch("product factors have mixed dimensions")
        super().__init__(factors[0].dim, len(factors))
        self.factors = tuple(factors)

    def _compute(self, n: tuple[int, ...]) -> MonomialIdeal:
        result = unit_ideal(self.dim)
        for F, k in zip(self.factors, n):
            if k:
                result = product(result, F.ideal_at(k))
        return result

    def to_json(self) -> dict:
        return {"kind": self.kind, "factors": [F.to_json() for F in self.factors]}


class CeilingNormMultiFiltration(MultiFiltration):
    """(n_1..n_r) -> (x^ceil(sqrt(w_1 n_1^2 + ... + w_r n_r^2))) in d = 1."""

    kind = "ceiling_norm"

    def __init__(self, arity: int, weights: list[int] | None = None):
        if arity < 1:
            raise ArityMismatch("arity must be >= 1")
        weights = list(weights) if weights is not None else [1] * arity
        if len(weights) != arity:
            raise ArityMismatch("one weight per slot")
        if any(w <= 0 for w in weights):
            raise ValueError("weights must be positive integers")
        super().__init__(1, arity)
        self.weights = tuple(weights)

    def exponent_at(self, n: tuple[int, ...]) -> int:
        return ceil_sqrt(sum(w * v * v for w, v in zip(self.weights, n)))

    def _compute(self, n: tuple[int, ...]) -> MonomialIdeal:
        return MonomialIdeal(1, ((self.exponent_at(n),),))

    def to_json(self) -> dict:
        return {"kind": self.kind, "arity": self.arity, "weights": list(self.weights)}


class TruncatedMultiFiltration(MultiFiltration):
    """Multigraded analogue of truncation: indices with max(n) <= a copy the
    base, larger ones are generated by sums of products of smaller terms."""

    kind = "truncated_multi"

    def __init__(self, base: MultiFiltration, a: int):
        if a < 1:
            raise ValueError("truncation level must be >= 1")
        super().__init__(base.dim, base.arity)
        self.base = base
        self.a = a

    def _compute(self, n: tuple[int, ...]) -> MonomialIdeal:
        if max(n) <= self.a:
            return self.base.ideal_at(n)
        total: MonomialIdeal | None = None
        for u in itertools.product(*(range(min(v, self.a) + 1) for v in n)):
            if all(x == 0 for x in u):
                continue
            v = tuple(x - y for x, y in zip(n, u))
            if all(x == 0 for x in v):
                continue
            part = product(self.ideal_at(u), self.ideal_at(v))
            total = part if total is None else ideal_sum(total, part)
        assert total is not None
        return total

    def to_json(self) -> dict:
        return {"kind": self.kind, "base": self.base.to_json(), "a": self.a}


def multi_ideal_at(MF: MultiFiltration, n) -> MonomialIdeal:
    return MF.ideal_at(tuple(n))


# ---------------------------------------------------------------------------
# JSON round-trip


def _qi_from_json(data) -> QuadraticIrrational:
    if isinstance(data, dict):
        return QuadraticIrrational.from_json(data)
    return QuadraticIrrational.rational(Fraction(str(data)))


def filtration_from_json(data: dict) -> Filtration:
    kind = data.get("kind")
    if kind == "power":
        return PowerFiltration(MonomialIdeal.from_json(data["ideal"]))
    if kind == "shifted_power":
        return ShiftedPowerFiltration(MonomialIdeal.from_json(data["ideal"]), int(data["shift"]))
    if kind == "diagonal":
        return DiagonalFiltration([_qi_from_json(r) for r in data["rates"]])
    if kind == "valuation":
        return MonomialValuationFiltration([_qi_from_json(w) for w in data["weights"]])
    if kind == "table":
        return TableFiltration([MonomialIdeal.from_json(e) for e in data["ideals"]])
    if kind == "truncated":
        return TruncatedFiltration(filtration_from_json(data["base"]), int(data["a"]))
    raise SpecValidationError(f"unknown filtration kind {kind!r}")


def multifiltration_from_json(data: dict) -> MultiFiltration:
    kind = data.get("kind")
    if kind == "product":
        return ProductMultiFiltration([filtration_from_json(f) for f in data["factors"]])
    if kind == "ceiling_norm":
        return CeilingNormMultiFiltration(int(data["arity"]), data.get("weights"))
    if kind == "truncated_multi":
        return TruncatedMultiFiltration(multifiltration_from_json(data["base"]), int(data["a"]))
    raise SpecValidationError(f"unknown multifiltration kind {kind!r}")
