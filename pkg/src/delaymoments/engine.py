"""The three asymptotic expansions of the absorbing-cavity Schur moments.

A sub-unitary reflection matrix R encodes the absorption; the time-delay
operator is Q = (1 - R)/g with g the absorption strength (dwell time is the
time unit, so g is the dwell-to-absorption time ratio).  Local energy
averages of Schur polynomials in R admit three expansions:

* `inv_M`    - powers of 1/M (many open channels), coefficients rational in g;
* `gamma`    - powers of g (weak absorption), coefficients rational in M;
* `inv_gamma`- powers of 1/g (strong absorption), coefficients rational in M.

Moments of Q follow from moments of R through a binomial-determinant change
of basis carrying an explicit 1/g**|lambda| prefactor.  All sums over
partitions are truncated with provably sufficient bounds, so every emitted
coefficient is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import factorial
from typing import Callable

from .algebra import (
    SYM_G,
    SYM_M,
    VAR_GAMMA,
    VAR_INV_GAMMA,
    VAR_INV_M,
    Polynomial,
    RationalFunction,
    TruncatedSeries,
    laurent_expand_inverse_power,
)
from .partitions import (
    ContainmentError,
    Partition,
    PartitionLike,
    as_parts,
    character_row,
    class_size,
    content_product,
    dimension,
    durfee,
    enumerate_partitions,
    schur_product,
    subpartitions,
)


class InternalConsistencyError(RuntimeError):
    """A structurally guaranteed cancellation failed; signals a bug."""


def rising_factorial(mu: PartitionLike) -> Polynomial:
    """Cell-content form of the generalized rising factorial: the product of
    (M + content) over the Young diagram; 1 for the empty shape."""
    p = Polynomial.constant(SYM_M, 1)
    for i, j in Partition(as_parts(mu)).cells():
        p = p * Polynomial(SYM_M, (j - i, 1))
    return p


def falling_factorial(rho: PartitionLike) -> Polynomial:
    """Generalized falling factorial: row i contributes the product of
    (M + i - t) for t = 1..rho_i (rows 1-based); 1 for the empty shape."""
    p = Polynomial.constant(SYM_M, 1)
    for i, part in enumerate(as_parts(rho), start=1):
        for t in range(1, part + 1):
            p = p * Polynomial(SYM_M, (i - t, 1))
    return p


def absorption_weight(beta: PartitionLike) -> Polynomial:
    """Product of (1 + q*g) over the cycle lengths q of beta."""
    p = Polynomial.constant(SYM_G, 1)
    for q in as_parts(beta):
        p = p * Polynomial(SYM_G, (1, q))
    return p


def _gbinom(x: int, y: int) -> int:
    """Binomial "x choose y" continued to arbitrary integers via the falling
    factorial on the gap x - y: zero when x < y, else the product of
    y+1..x over (x-y)!."""
    if x < y:
        return 0
    num = 1
    for t in range(y + 1, x + 1):
        num *= t
    return num // factorial(x - y)


def _poly_binom(a: int, b: int) -> Polynomial:
    """Polynomial in M: binomial(M+a, M+b) via the product of (M+k) for
    k = b+1..a over (a-b)!; zero when a < b."""
    if a < b:
        return Polynomial(SYM_M)
    p = Polynomial.constant(SYM_M, Fraction(1, factorial(a - b)))
    for k in range(b + 1, a + 1):
        p = p * Polynomial(SYM_M, (k, 1))
    return p


def _det_bareiss(rows: list[list], one, exact_div: Callable):
    """Fraction-free determinant; `exact_div` must be exact in the ring."""
    n = len(rows)
    if n == 0:
        return one
    mat = [row[:] for row in rows]
    sign = 1
    prev = one
    for k in range(n - 1):
        if _is_ring_zero(mat[k][k]):
            pivot_row = next((i for i in range(k + 1, n)
                              if not _is_ring_zero(mat[i][k])), None)
            if pivot_row is None:
                return one - one
            mat[k], mat[pivot_row] = mat[pivot_row], mat[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = exact_div(mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j],
                                      prev)
            mat[i][k] = mat[k][k] - mat[k][k]
        prev = mat[k][k]
    result = mat[n - 1][n - 1]
    return result if sign == 1 else -result


def _is_ring_zero(x) -> bool:
    if isinstance(x, Polynomial):
        return x.is_zero
    return x == 0


def binomial_determinant(lam: PartitionLike, mu: PartitionLike) -> Polynomial:
    """Change-of-basis coefficient between Schur moments of Q and of R: the
    determinant of binomial(M + lam_i - i, M + mu_j - j), with mu padded by
    zeros to the length of lam.  Requires mu inside lam."""
    lp, mp = as_parts(lam), as_parts(mu)
    if not Partition(lp).contains(mp):
        raise ContainmentError(f"{Partition(mp)} does not fit inside {Partition(lp)}")
    n = len(lp)
    rows = [[_poly_binom(lp[i] - (i + 1), (mp[j] if j < len(mp) else 0) - (j + 1))
             for j in range(n)] for i in range(n)]
    return _det_bareiss(rows, Polynomial.constant(SYM_M, 1),
                        lambda a, b: a.exact_div(b))


def geometric_determinant(mu: PartitionLike, rho: PartitionLike) -> int:
    """Integer determinant of binomial(rho_i - i, mu_j - j), padded with
    zeros to the length of rho; the coefficients of the partition-indexed
    generalization of the geometric series.  Requires mu inside rho."""
    mp, rp = as_parts(mu), as_parts(rho)
    if not Partition(rp).contains(mp):
        raise ContainmentError(f"{Partition(mp)} does not fit inside {Partition(rp)}")
    n = len(rp)
    rows = [[_gbinom(rp[i] - (i + 1), (mp[j] if j < len(mp) else 0) - (j + 1))
             for j in range(n)] for i in range(n)]
    return _det_bareiss(rows, 1, lambda a, b: a // b)


@cache
def _dim_content_weight(parts: tuple[int, ...]) -> int:
    t = content_product(parts)
    return dimension(parts) * t * t


@cache
def _durfee_weighted_sum(a: tuple[int, ...], b: tuple[int, ...], target: int) -> int:
    """Sum of dimension * content_product**2 over the Schur product of
    s_a * s_b, restricted to results whose Durfee square has side `target`."""
    total = 0
    for nu, mult in schur_product(a, b).items():
        if durfee(nu) == target:
            total += mult * _dim_content_weight(nu)
    return total


def durfee_filtered_lr_sum(mu: PartitionLike, rho: PartitionLike) -> int:
    """The nested sum shared by all three expansions: over shapes nu in
    s_mu * s_rho with the same Durfee square as mu, weighted by
    dimension(nu) * content_product(nu)**2."""
    mp, rp = as_parts(mu), as_parts(rho)
    return _durfee_weighted_sum(mp, rp, durfee(mp))


def reflection_schur_moment(mu: PartitionLike, regime: str, order: int) -> TruncatedSeries:
    """Schur moment of the reflection matrix R in the requested regime.

    The returned series is exact for every power up to `order`.
    """
    mp = as_parts(mu)
    if regime == VAR_INV_M:
        return _reflection_inv_m(mp, order)
    if regime == VAR_GAMMA:
        return _reflection_gamma(mp, order)
    if regime == VAR_INV_GAMMA:
        return _reflection_inv_gamma(mp, order)
    raise ValueError(f"unknown regime {regime!r}")


@cache
def _reflection_inv_m(mp: tuple[int, ...], order: int) -> TruncatedSeries:
    """Large-M expansion: the square of the rising factorial times a sum over
    one-free cycle types beta of weight m, each contributing at 1/M power
    |mu| + m - length(beta) a coefficient rational in g with denominator a
    power of (1+g).

    Cycle types without fixed points satisfy length <= m/2, so weights
    m <= 2*(order + |mu|) exhaust every term that can touch powers <= order.
    """
    n = sum(mp)
    prefactor = rising_factorial(mp) ** 2
    t_sq = content_product(mp) ** 2
    one_plus_g = Polynomial(SYM_G, (1, 1))

    # Group terms by the 1/M power of the bare sum before the prefactor.
    grouped: dict[int, RationalFunction] = {}
    for m in range(0, 2 * (order + n) + 1):
        for beta in enumerate_partitions(m, forbid_part_one=True):
            bp = beta.parts
            ell = len(bp)
            exponent = n + m - ell
            if exponent - 2 * n > order:
                continue
            row = character_row(bp)
            inner = 0
            for rho, chi in row.items():
                s = _durfee_weighted_sum(mp, rho, durfee(mp))
                if s:
                    inner += chi * s
            if not inner:
                continue
            scalar = Fraction((-1) ** ell * class_size(bp) * inner,
                              factorial(m) * factorial(n + m))
            coeff = RationalFunction(absorption_weight(bp) * scalar,
                                     one_plus_g ** (n + m))
            grouped[exponent] = grouped.get(exponent,
                                            RationalFunction.constant(SYM_G, 0)) + coeff

    total = TruncatedSeries.zero(VAR_INV_M, order)
    for exponent, coeff in grouped.items():
        base = laurent_expand_inverse_power(prefactor, exponent, order)
        total = total + base.scale(coeff / t_sq)
    return total


@cache
def _reflection_gamma(mp: tuple[int, ...], order: int) -> TruncatedSeries:
    """Weak-absorption expansion: coefficient of g**m sums dimension over
    generalized falling factorial across partitions rho of m, so every
    coefficient is exact on its own."""
    n = sum(mp)
    prefactor = RationalFunction(rising_factorial(mp)) / content_product(mp) ** 2
    coeffs: dict[int, RationalFunction] = {}
    for m in range(order + 1):
        inner = RationalFunction.constant(SYM_M, 0)
        for rho in enumerate_partitions(m):
            s = durfee_filtered_lr_sum(mp, rho)
            if not s:
                continue
            inner = inner + RationalFunction(
                Polynomial.constant(SYM_M, dimension(rho.parts) * s),
                falling_factorial(rho.parts))
        if inner.is_zero:
            continue
        m_power = Polynomial(SYM_M, (0,) * m + ((-1) ** m,))
        scalar = Fraction(1, factorial(m) * factorial(n + m))
        coeffs[m] = prefactor * inner * RationalFunction(m_power) * scalar
    return TruncatedSeries(VAR_GAMMA, coeffs, order, min_power=0)


@cache
def _reflection_inv_gamma(mp: tuple[int, ...], order: int) -> TruncatedSeries:
    """Strong-absorption expansion: the coefficient of 1/g**k sums over pairs
    (rho containing mu, omega) with |rho| + |omega| = k; every coefficient
    is exact on its own.  The leading power is |mu|.

    Each pair carries 1/(|omega|! k!): the k! belongs to the dimension-over-
    factorial weight of the shapes of weight k produced by the product
    expansion, exactly as (n+m)! does in the other two regimes.
    """
    n = sum(mp)
    mu_part = Partition(mp)
    prefactor = (RationalFunction(rising_factorial(mp) ** 2)
                 * Fraction((-1) ** n, content_product(mp) ** 2))
    d_mu = durfee(mp)
    coeffs: dict[int, RationalFunction] = {}
    for k in range(n, order + 1):
        acc = RationalFunction.constant(SYM_M, 0)
        for rho_weight in range(n, k + 1):
            omega_weight = k - rho_weight
            for rho in enumerate_partitions(rho_weight):
                if not rho.contains(mu_part):
                    continue
                g_det = geometric_determinant(mp, rho.parts)
                if not g_det:
                    continue
                for omega in enumerate_partitions(omega_weight):
                    s = _durfee_weighted_sum(omega.parts, rho.parts, d_mu)
                    if not s:
                        continue
                    weight = Fraction(dimension(omega.parts) * g_det * s,
                                      factorial(omega_weight))
                    acc = acc + RationalFunction(rising_factorial(omega.parts)) * weight
        if acc.is_zero:
            continue
        m_power = Polynomial(SYM_M, (0,) * k + (Fraction((-1) ** k * factorial(k)),))
        coeffs[k] = prefactor * (acc / RationalFunction(m_power))
    return TruncatedSeries(VAR_INV_GAMMA, coeffs, order,
                           min_power=min(n, order + 1))


def delay_schur_moment(lam: PartitionLike, regime: str, order: int) -> TruncatedSeries:
    """Schur moment of the time-delay operator Q in the requested regime.

    Combines the reflection moments of every shape inside `lam` through the
    binomial-determinant transform and divides by g**|lam|.  In the gamma
    regime the bracketed sum must vanish through order |lam| - 1 before the
    division; that cancellation is checked and a failure raises
    InternalConsistencyError.
    """
    lp = as_parts(lam)
    if not lp:
        raise ValueError("the empty shape has the constant moment 1; "
                         "request a non-empty partition")
    if order < 0:
        raise ValueError("order must be non-negative")
    return _delay_schur_moment(lp, regime, order)


@cache
def _delay_schur_moment(lp: tuple[int, ...], regime: str, order: int) -> TruncatedSeries:
    weight = sum(lp)
    if regime == VAR_INV_M:
        total = TruncatedSeries.zero(VAR_INV_M, order)
        for mu in subpartitions(lp):
            b_poly = binomial_determinant(lp, mu.parts)
            inner = _reflection_inv_m(mu.parts, order + (weight - mu.weight))
            term = inner.times_m_polynomial(b_poly)
            if mu.weight % 2:
                term = -term
            total = total + term
        g_prefactor = RationalFunction(Polynomial.constant(SYM_G, 1),
                                       Polynomial(SYM_G, (0,) * weight + (1,)))
        return total.scale(g_prefactor).truncate(order)

    if regime == VAR_GAMMA:
        internal = order + weight
        total = TruncatedSeries.zero(VAR_GAMMA, internal)
        for mu in subpartitions(lp):
            b_scalar = RationalFunction(binomial_determinant(lp, mu.parts))
            term = _reflection_gamma(mu.parts, internal).scale(b_scalar)
            if mu.weight % 2:
                term = -term
            total = total + term
        for p in range(total.min_power, weight):
            if not total.coefficient(p).is_zero:
                raise InternalConsistencyError(
                    f"transform of {Partition(lp)} left a non-zero coefficient "
                    f"at g^{p}; the leading {weight} powers must cancel")
        shifted = {p - weight: c for p, c in total.coeffs.items() if p >= weight}
        return TruncatedSeries(VAR_GAMMA, shifted, order, min_power=0)

    if regime == VAR_INV_GAMMA:
        internal = max(order - weight, 0)
        total = TruncatedSeries.zero(VAR_INV_GAMMA, internal)
        for mu in subpartitions(lp):
            b_scalar = RationalFunction(binomial_determinant(lp, mu.parts))
            term = _reflection_inv_gamma(mu.parts, internal).scale(b_scalar)
            if mu.weight % 2:
                term = -term
            total = total + term
        return total.shift_power(weight).truncate(order)

    raise ValueError(f"unknown regime {regime!r}")
