"""Physically named statistics built on the Schur-moment engine.

Trace-power moments come from Schur moments through symmetric-group
characters, the normalized time delay tau_W = Tr(Q)/M has moments given by
dimension-weighted Schur moments, and cumulants follow from the standard
moment-cumulant recursion.  Everything stays in exact series arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from math import comb, factorial

from .algebra import (
    SYM_G,
    SYM_M,
    VAR_GAMMA,
    VAR_INV_GAMMA,
    VAR_INV_M,
    VARIABLES,
    Polynomial,
    RationalFunction,
    TruncatedSeries,
)
from .engine import delay_schur_moment, reflection_schur_moment
from .partitions import (
    Partition,
    PartitionLike,
    as_parts,
    character,
    dimension,
    enumerate_partitions,
)


@dataclass(frozen=True)
class RegimeRequest:
    """Which expansion to compute and how many guaranteed powers to emit."""

    regime: str
    order: int

    def __post_init__(self):
        if self.regime not in VARIABLES:
            raise ValueError(f"unknown regime {self.regime!r}")
        if self.order < 0:
            raise ValueError("order must be non-negative")


STATISTIC_KINDS = ("schur_q", "schur_r", "power_sum", "wigner_moment",
                   "cumulant", "variance")


@dataclass(frozen=True)
class StatisticRequest:
    """A statistic to compute: kind plus its label and the regime request."""

    kind: str
    request: RegimeRequest
    partition: Partition | None = None
    n: int | None = None

    def __post_init__(self):
        if self.kind not in STATISTIC_KINDS:
            raise ValueError(f"unknown statistic kind {self.kind!r}")
        if self.kind in ("schur_q", "power_sum") and not self.partition:
            raise ValueError(f"{self.kind} needs a non-empty partition")
        if self.kind == "schur_r" and self.partition is None:
            raise ValueError("schur_r needs a partition")
        if self.kind in ("wigner_moment", "cumulant") and (self.n is None or self.n < 1):
            raise ValueError(f"{self.kind} needs n >= 1")


def _inverse_m_power(n: int) -> RationalFunction:
    return RationalFunction(Polynomial.constant(SYM_M, 1),
                            Polynomial(SYM_M, (0,) * n + (1,)))


def power_sum_moment(lam: PartitionLike, req: RegimeRequest) -> TruncatedSeries:
    """Moment of the product of traces Tr(Q^lam_i), via the character
    expansion of power sums in the Schur basis."""
    lp = as_parts(lam)
    if not lp:
        raise ValueError("power sums need a non-empty partition")
    total = None
    for mu in enumerate_partitions(sum(lp)):
        chi = character(mu, lp)
        if not chi:
            continue
        term = delay_schur_moment(mu, req.regime, req.order).scale(chi)
        total = term if total is None else total + term
    assert total is not None
    return total


@cache
def _wigner_moment(n: int, regime: str, order: int) -> TruncatedSeries:
    if regime == VAR_INV_M:
        # Dividing by M**n shifts the 1/M powers up by n.
        inner_order = max(order - n, 0)
        total = None
        for mu in enumerate_partitions(n):
            term = delay_schur_moment(mu, regime, inner_order).scale(dimension(mu))
            total = term if total is None else total + term
        assert total is not None
        return total.shift_power(n).truncate(order)
    total = None
    for mu in enumerate_partitions(n):
        term = delay_schur_moment(mu, regime, order).scale(dimension(mu))
        total = term if total is None else total + term
    assert total is not None
    return total.scale(_inverse_m_power(n)).truncate(order)


def wigner_moment(n: int, req: RegimeRequest) -> TruncatedSeries:
    """Moment of the normalized time delay: <tau_W**n> = <p_(1^n)(Q)> / M**n,
    which is the dimension-weighted sum of Schur moments over shapes of n."""
    if n < 1:
        raise ValueError("moment index must be >= 1")
    return _wigner_moment(n, req.regime, req.order)


@cache
def _cumulant(n: int, regime: str, order: int) -> TruncatedSeries:
    moments = {j: _wigner_moment(j, regime, order) for j in range(1, n + 1)}
    cumulants: dict[int, TruncatedSeries] = {}
    for j in range(1, n + 1):
        acc = moments[j]
        for i in range(1, j):
            acc = acc - (cumulants[i] * moments[j - i]).scale(comb(j - 1, i - 1))
        cumulants[j] = acc
    return cumulants[n].truncate(order)


def cumulant(n: int, req: RegimeRequest) -> TruncatedSeries:
    """n-th cumulant of the normalized time delay, by the moment-cumulant
    recursion in exact series arithmetic."""
    if n < 1:
        raise ValueError("cumulant index must be >= 1")
    return _cumulant(n, req.regime, req.order)


def variance(req: RegimeRequest) -> TruncatedSeries:
    return cumulant(2, req)


def moments_from_cumulants(cums: dict[int, TruncatedSeries], n: int) -> TruncatedSeries:
    """Rebuild the n-th moment from cumulants 1..n (round-trip check)."""
    moments: dict[int, TruncatedSeries] = {}
    for j in range(1, n + 1):
        acc = cums[j]
        for i in range(1, j):
            acc = acc + (cums[i] * moments[j - i]).scale(comb(j - 1, i - 1))
        moments[j] = acc
    return moments[n]


def compute_statistic(sreq: StatisticRequest) -> TruncatedSeries:
    req = sreq.request
    if sreq.kind == "schur_q":
        return delay_schur_moment(sreq.partition, req.regime, req.order)
    if sreq.kind == "schur_r":
        return reflection_schur_moment(sreq.partition, req.regime, req.order)
    if sreq.kind == "power_sum":
        return power_sum_moment(sreq.partition, req)
    if sreq.kind == "wigner_moment":
        return wigner_moment(sreq.n, req)
    if sreq.kind == "cumulant":
        return cumulant(sreq.n, req)
    return variance(req)


# --------------------------------------------------------------------------
# Conjectured patterns: checked exactly, reported rather than asserted.


@dataclass(frozen=True)
class ConjectureItem:
    item_id: str
    description: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.item_id}: {self.description}"
        if self.detail and not self.passed:
            text += f" [{self.detail}]"
        return text


@dataclass
class ConjectureReport:
    max_n: int
    items: list[ConjectureItem] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(item.passed for item in self.items)

    def lines(self) -> list[str]:
        return [item.line() for item in self.items]

    def to_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "all_passed": self.all_passed,
            "items": [{"id": it.item_id, "description": it.description,
                       "passed": it.passed, "detail": it.detail}
                      for it in self.items],
        }


def _rf_m(num: Polynomial | int | Fraction, den: Polynomial | int | Fraction = 1) -> RationalFunction:
    if isinstance(num, (int, Fraction)):
        num = Polynomial.constant(SYM_M, num)
    if isinstance(den, (int, Fraction)):
        den = Polynomial.constant(SYM_M, den)
    return RationalFunction(num, den)


def _trace_moment(n: int, regime: str, order: int) -> TruncatedSeries:
    """<Tr(Q**n)>/M in the requested regime."""
    series = power_sum_moment((n,), RegimeRequest(regime, order if regime != VAR_INV_M
                                                  else max(order - 1, 0)))
    if regime == VAR_INV_M:
        return series.shift_power(1).truncate(order)
    return series.scale(_inverse_m_power(1))


def validate_conjectures(max_n: int, order: int = 0) -> ConjectureReport:
    """Exact checks of the five conjectured patterns, for all n <= max_n.

    `order` adds extra guaranteed powers beyond each pattern's stated window;
    the stated coefficients themselves are always checked.  Failures are
    findings, not errors.
    """
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    extra = max(order, 0)
    report = ConjectureReport(max_n=max_n)
    add = report.items.append

    one_plus_g = Polynomial(SYM_G, (1, 1))
    m_sq = Polynomial(SYM_M, (0, 0, 1))

    # (a) Large-M pattern for the n-th power of the normalized total delay:
    #     1/(1+g)^n + (n(n-1)g^2/2 - ng + n(n-1)) / ((1+g)^(n+4) M^2) + O(M^-4).
    for n in range(1, max_n + 1):
        series = _wigner_moment(n, VAR_INV_M, 2 + extra)
        expected0 = RationalFunction(Polynomial(SYM_G, (1,)), one_plus_g ** n)
        num = Polynomial(SYM_G, (n * (n - 1), -n, Fraction(n * (n - 1), 2)))
        expected2 = RationalFunction(num, one_plus_g ** (n + 4))
        ok = (series.coefficient(0) == expected0
              and series.coefficient(1).is_zero
              and series.coefficient(2) == expected2)
        add(ConjectureItem(
            f"a.n={n}", "large-M second coefficient of <(Tr Q)^n>/M^n", ok,
            "" if ok else f"power2={series.coefficient(2)} expected={expected2}"))

    # (b) Weak-absorption slope of trace moments:
    #     P_n(g) = P_n(0) - (n/2) P_{n+1}(0) g + O(g^2).
    for n in range(1, max_n + 1):
        p_n = _trace_moment(n, VAR_GAMMA, 1 + extra)
        p_next = _trace_moment(n + 1, VAR_GAMMA, extra)
        expected = p_next.coefficient(0) * Fraction(-n, 2)
        ok = p_n.coefficient(1) == expected
        add(ConjectureItem(
            f"b.n={n}", "weak-absorption slope of <Tr Q^n>/M", ok,
            "" if ok else f"slope={p_n.coefficient(1)} expected={expected}"))

    # (c) Weak-absorption slope of cumulants:
    #     k_n(g) = k_n(0) - (M^2/2) k_{n+1}(0) g + O(g^2).
    for n in range(1, max_n + 1):
        k_n = _cumulant(n, VAR_GAMMA, 1 + extra)
        k_next = _cumulant(n + 1, VAR_GAMMA, extra)
        expected = k_next.coefficient(0) * _rf_m(m_sq) * Fraction(-1, 2)
        ok = k_n.coefficient(1) == expected
        add(ConjectureItem(
            f"c.n={n}", "weak-absorption slope of the n-th cumulant", ok,
            "" if ok else f"slope={k_n.coefficient(1)} expected={expected}"))

    # (d) Strong-absorption openings of <Tr Q^n>/M and <(Tr Q)^n>/M^n.
    for n in range(1, max_n + 1):
        series = _trace_moment(n, VAR_INV_GAMMA, n + 3 + extra)
        tail_num = Polynomial(SYM_M, (n * (n + 2), 0, n * (5 * n - 2)))
        expected = {
            n: _rf_m(1), n + 1: _rf_m(-n), n + 2: _rf_m(n * n),
            n + 3: _rf_m(tail_num * Fraction(-(n + 1), 6), m_sq),
        }
        mism = _first_mismatch(series, expected, series.min_power, n + 3)
        add(ConjectureItem(
            f"d1.n={n}", "strong-absorption opening of <Tr Q^n>/M",
            mism is None, mism or ""))

        series = _wigner_moment(n, VAR_INV_GAMMA, n + 2 + extra)
        num2 = Polynomial(SYM_M, (n * (n - 1), 0, n * (n + 1)))
        expected = {n: _rf_m(1), n + 1: _rf_m(-n),
                    n + 2: _rf_m(num2 * Fraction(1, 2), m_sq)}
        mism = _first_mismatch(series, expected, series.min_power, n + 2)
        add(ConjectureItem(
            f"d2.n={n}", "strong-absorption opening of <(Tr Q)^n>/M^n",
            mism is None, mism or ""))

    # (e) Strong-absorption cumulant tail, n > 1:
    #     (-1)^n k_n = (n-1)!/(M^(2n-2) g^(2n)) - (2n-1) n (n-1)!/(M^(2n-2) g^(2n+1)) + ...
    for n in range(2, max_n + 1):
        series = _cumulant(n, VAR_INV_GAMMA, 2 * n + 1 + extra)
        sign = (-1) ** n
        m_pow = Polynomial(SYM_M, (0,) * (2 * n - 2) + (1,))
        expected = {2 * n: _rf_m(sign * factorial(n - 1), m_pow),
                    2 * n + 1: _rf_m(-sign * (2 * n - 1) * n * factorial(n - 1), m_pow)}
        mism = _first_mismatch(series, expected, series.min_power, 2 * n + 1)
        add(ConjectureItem(
            f"e.n={n}", "strong-absorption tail of the n-th cumulant",
            mism is None, mism or ""))

    return report


def _first_mismatch(series: TruncatedSeries, expected: dict[int, RationalFunction],
                    lo: int, hi: int) -> str | None:
    for p in range(lo, hi + 1):
        want = expected.get(p, RationalFunction.constant(series.coefficient_symbol, 0))
        got = series.coefficient(p)
        if got != want:
            return f"power {p}: computed {got}, expected {want}"
    return None
