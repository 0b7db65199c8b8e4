"""Exact scalar, polynomial, rational-function and truncated-series arithmetic.

Every coefficient in this package is carried by these types; there is no
floating point anywhere.  Scalars are `fractions.Fraction`, polynomials are
dense univariate over a named symbol ("M" or "g" for the absorption
strength), rational functions are reduced quotients with a monic
denominator, and series are Laurent-type truncations with a guaranteed
order: coefficients of powers up to `order` are exact, powers above it are
never emitted.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Mapping

SYM_M = "M"
SYM_G = "g"

VAR_INV_M = "inv_M"
VAR_GAMMA = "gamma"
VAR_INV_GAMMA = "inv_gamma"
VARIABLES = (VAR_INV_M, VAR_GAMMA, VAR_INV_GAMMA)

# Symbol the series coefficients live in, per expansion variable.
COEFF_SYMBOL = {VAR_INV_M: SYM_G, VAR_GAMMA: SYM_M, VAR_INV_GAMMA: SYM_M}

_LATEX_SYMBOL = {SYM_M: "M", SYM_G: r"\gamma"}


class ExactDivisionError(ArithmeticError):
    """Polynomial division was requested but the remainder is non-zero."""


class VariableMismatchError(ValueError):
    """Operands carry different symbols or expansion variables."""


class SeriesOrderError(ValueError):
    """A coefficient beyond the guaranteed truncation order was requested."""


class PoleError(ZeroDivisionError):
    """Numeric evaluation hit a zero of a retained denominator."""

    def __init__(self, symbol: str, value: Fraction, factored: str):
        self.symbol = symbol
        self.value = value
        self.factored = factored
        super().__init__(
            f"denominator {factored} vanishes at {symbol} = {value}")


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Polynomial:
    """Dense univariate polynomial with Fraction coefficients, degree 0 up."""

    __slots__ = ("symbol", "coeffs")

    def __init__(self, symbol: str, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.symbol = symbol
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, symbol: str, value) -> Polynomial:
        return cls(symbol, (value,))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as degree -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            if other.symbol != self.symbol and other.coeffs and self.coeffs:
                raise VariableMismatchError(
                    f"cannot mix symbols {self.symbol!r} and {other.symbol!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.symbol, other)
        return None

    def __add__(self, other) -> Polynomial:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Polynomial(self.symbol,
                          (self.coefficient(k) + o.coefficient(k) for k in range(n)))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.symbol, (-c for c in self.coeffs))

    def __sub__(self, other) -> Polynomial:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> Polynomial:
        return -(self - other)

    def __mul__(self, other) -> Polynomial:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return Polynomial(self.symbol)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Polynomial(self.symbol, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self.symbol, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple[Polynomial, Polynomial]:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        qdeg = len(rem) - len(o.coeffs)
        if qdeg < 0:
            return Polynomial(self.symbol), self
        quot = [Fraction(0)] * (qdeg + 1)
        lead = o.leading
        for k in range(qdeg, -1, -1):
            c = rem[k + o.degree] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] -= c * b
        return Polynomial(self.symbol, quot), Polynomial(self.symbol, rem)

    def exact_div(self, other) -> Polynomial:
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ExactDivisionError(f"({self}) not divisible by ({other})")
        return q

    def __mod__(self, other) -> Polynomial:
        return divmod(self, other)[1]

    def monic(self) -> Polynomial:
        if self.is_zero:
            return self
        lead = self.leading
        return Polynomial(self.symbol, (c / lead for c in self.coeffs))

    def evaluate(self, value) -> Fraction:
        v = _as_fraction(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs and (
                self.is_zero or other.is_zero or self.symbol == other.symbol)
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.symbol, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.symbol if self.coeffs else "", self.coeffs))

    def __repr__(self) -> str:
        return f"Polynomial({self.symbol!r}, {list(self.coeffs)})"

    def __str__(self) -> str:
        return _poly_text(self, self.symbol)

    def latex(self) -> str:
        return _poly_text(self, _LATEX_SYMBOL.get(self.symbol, self.symbol), latex=True)


def polynomial_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor by the Euclidean algorithm."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def _fraction_text(c: Fraction) -> str:
    return str(c) if c.denominator == 1 else f"({c})"


def _poly_text(p: Polynomial, symbol: str, latex: bool = False) -> str:
    if p.is_zero:
        return "0"
    pieces = []
    for k in range(p.degree, -1, -1):
        c = p.coefficient(k)
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = _fraction_text(mag)
        else:
            if latex:
                power = symbol if k == 1 else f"{symbol}^{{{k}}}"
            else:
                power = symbol if k == 1 else f"{symbol}^{k}"
            body = power if mag == 1 else f"{_fraction_text(mag)}{power}"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += sign + body
    return text


def _integer_coeffs(p: Polynomial) -> tuple[int, list[int]]:
    """Return (scale, coeffs) with coeffs integral and p = coeffs / scale."""
    scale = 1
    for c in p.coeffs:
        scale = scale * c.denominator // int_gcd(scale, c.denominator)
    return scale, [int(c * scale) for c in p.coeffs]


def _synthetic_div(cs: list[int], r: int) -> list[int] | None:
    """Quotient of the ascending-coefficient polynomial by (x - r), or None."""
    out = [0] * (len(cs) - 1)
    acc = cs[-1]
    for k in range(len(cs) - 2, -1, -1):
        out[k] = acc
        acc = cs[k] + acc * r
    return out if acc == 0 else None


def _factor_integer_roots(coeffs: list[int]) -> tuple[int, dict[int, int], list[int]]:
    """Factor out integer roots: returns (x-power, {root: multiplicity}, rest).

    `rest` is the remaining integer-coefficient polynomial (ascending) with
    no integer roots, possibly constant.
    """
    cs = list(coeffs)
    xpow = 0
    while cs and cs[0] == 0:
        cs.pop(0)
        xpow += 1
    roots: dict[int, int] = {}
    progress = True
    while progress and len(cs) > 1:
        progress = False
        a0 = abs(cs[0])
        for base in range(1, a0 + 1):
            if a0 % base:
                continue
            for r in (-base, base):
                q = _synthetic_div(cs, r)
                if q is not None:
                    roots[r] = roots.get(r, 0) + 1
                    cs = q
                    progress = True
                    break
            if progress:
                break
    return xpow, roots, cs


def _factored_text(p: Polynomial, symbol_text: str, latex: bool = False) -> str:
    """Denominator-style display: powers of the symbol, paired (M^2-a^2)
    factors or (1+g) factors, then any remainder without integer roots."""
    if p.is_zero:
        return "0"
    scale, ints = _integer_coeffs(p)
    xpow, roots, rest = _factor_integer_roots(ints)

    def power_text(base: str, mult: int) -> str:
        if mult == 1:
            return base
        return f"{base}^{{{mult}}}" if latex else f"{base}^{mult}"

    factors: list[str] = []
    if xpow:
        factors.append(power_text(symbol_text, xpow))
    items = dict(roots)
    for r in sorted(items, key=lambda v: (abs(v), v)):
        m = items.get(r, 0)
        if m <= 0:
            continue
        if r < 0 and items.get(-r, 0) > 0:
            shared = min(m, items[-r])
            body = f"({symbol_text}^{{2}}-{r * r})" if latex \
                else f"({symbol_text}^2-{r * r})"
            factors.append(power_text(body, shared))
            items[r] -= shared
            items[-r] -= shared
            m = items[r]
        if m > 0:
            if r == -1:
                body = f"(1+{symbol_text})"
            elif r < 0:
                body = f"({symbol_text}+{-r})"
            else:
                body = f"({symbol_text}-{r})"
            factors.append(power_text(body, m))
            items[r] = 0

    if len(rest) == 1:
        const = Fraction(rest[0], scale)
    else:
        lead = rest[-1]
        content = 0
        for c in rest:
            content = int_gcd(content, abs(c))
        if lead < 0:
            content = -content
        const = Fraction(content, scale)
        primitive = Polynomial(p.symbol, [Fraction(c, content) for c in rest])
        factors.append(f"({_poly_text(primitive, symbol_text, latex=latex)})")
    if not factors:
        return _fraction_text(const)
    text = "".join(factors)
    if const != 1:
        text = f"{_fraction_text(const)}{text}"
    return text


class RationalFunction:
    """Reduced quotient of polynomials over one symbol; denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, symbol: str | None = None):
        if isinstance(num, (int, Fraction)):
            if symbol is None and isinstance(den, Polynomial):
                symbol = den.symbol
            if symbol is None:
                raise ValueError("a symbol is required for constant input")
            num = Polynomial.constant(symbol, num)
        if den is None:
            den = Polynomial.constant(num.symbol, 1)
        elif isinstance(den, (int, Fraction)):
            den = Polynomial.constant(num.symbol, den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.coeffs and den.coeffs and num.symbol != den.symbol:
            raise VariableMismatchError(
                f"cannot mix symbols {num.symbol!r} and {den.symbol!r}")
        if num.is_zero:
            den = Polynomial.constant(den.symbol, 1)
        else:
            g = polynomial_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead = den.leading
            if lead != 1:
                num = num * (1 / lead)
                den = den.monic()
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, symbol: str, value) -> RationalFunction:
        return cls(Polynomial.constant(symbol, value))

    @property
    def symbol(self) -> str:
        return self.den.symbol if not self.num.coeffs else self.num.symbol

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def _coerce(self, other) -> RationalFunction | None:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(self.symbol, other)
        return None

    def __add__(self, other) -> RationalFunction:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den,
                                self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> RationalFunction:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> RationalFunction:
        return -(self - other)

    def __mul__(self, other) -> RationalFunction:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> RationalFunction:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> RationalFunction:
        if n < 0:
            if self.is_zero:
                raise ZeroDivisionError("negative power of zero")
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    def evaluate(self, value) -> Fraction:
        v = _as_fraction(value)
        d = self.den.evaluate(v)
        if d == 0:
            raise PoleError(self.symbol, v, self.factored_denominator())
        return self.num.evaluate(v) / d

    def integer_form(self) -> tuple[list[int], list[int]]:
        """Numerator/denominator with integer coefficients (ascending), the
        pair scaled so their contents are coprime and the denominator's
        leading coefficient is positive."""
        sn, ni = _integer_coeffs(self.num)
        sd, di = _integer_coeffs(self.den)
        num = [c * sd for c in ni]
        den = [c * sn for c in di]
        g = 0
        for c in num + den:
            g = int_gcd(g, abs(c))
        if g > 1:
            num = [c // g for c in num]
            den = [c // g for c in den]
        if den and den[-1] < 0:
            num = [-c for c in num]
            den = [-c for c in den]
        return num, den

    def factored_denominator(self) -> str:
        return _factored_text(self.den, self.symbol)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def _text(self, latex: bool) -> str:
        num_ints, den_ints = self.integer_form()
        sign = ""
        if num_ints and all(c <= 0 for c in num_ints):
            num_ints = [-c for c in num_ints]
            sign = "-"
        symbol_text = _LATEX_SYMBOL.get(self.symbol, self.symbol) if latex else self.symbol
        num_poly = Polynomial(self.symbol, [Fraction(c) for c in num_ints])
        num_text = _poly_text(num_poly, symbol_text, latex=latex)
        den_poly = Polynomial(self.symbol, [Fraction(c) for c in den_ints])
        if den_poly.degree <= 0 and den_poly.leading == 1:
            return sign + num_text
        den_text = _factored_text(den_poly, symbol_text, latex=latex)
        if latex:
            if den_text.startswith("(") and den_text.endswith(")") and \
                    den_text.count("(") == 1:
                den_text = den_text[1:-1]
            return sign + rf"\frac{{{num_text}}}{{{den_text}}}"
        if len([c for c in num_ints if c]) > 1:
            num_text = f"({num_text})"
        return f"{sign}{num_text}/{den_text}"

    def __str__(self) -> str:
        return self._text(latex=False)

    def latex(self) -> str:
        return self._text(latex=True)


class TruncatedSeries:
    """Laurent-type series in one expansion variable with exact coefficients.

    `coeffs` maps power -> RationalFunction in the complementary symbol.
    Powers up to `order` are guaranteed exact; `min_power` is a sound lower
    bound below which all coefficients vanish identically.  Truncation is
    tracked pessimistically through every operation.
    """

    __slots__ = ("variable", "coeffs", "order", "min_power")

    def __init__(self, variable: str, coeffs: Mapping[int, RationalFunction],
                 order: int, min_power: int | None = None):
        if variable not in VARIABLES:
            raise VariableMismatchError(f"unknown expansion variable {variable!r}")
        sym = COEFF_SYMBOL[variable]
        clean: dict[int, RationalFunction] = {}
        for p, c in coeffs.items():
            if isinstance(c, (int, Fraction)):
                c = RationalFunction.constant(sym, c)
            elif isinstance(c, Polynomial):
                c = RationalFunction(c)
            if c.is_zero or p > order:
                continue
            if not c.num.is_zero and c.symbol != sym:
                raise VariableMismatchError(
                    f"coefficients of a {variable} series live in {sym!r}")
            clean[p] = c
        self.variable = variable
        self.coeffs = clean
        self.order = order
        if min_power is None:
            min_power = min(clean) if clean else order + 1
        self.min_power = min(min_power, min(clean) if clean else min_power)

    @classmethod
    def zero(cls, variable: str, order: int) -> TruncatedSeries:
        return cls(variable, {}, order)

    @property
    def coefficient_symbol(self) -> str:
        return COEFF_SYMBOL[self.variable]

    def coefficient(self, power: int) -> RationalFunction:
        if power > self.order:
            raise SeriesOrderError(
                f"power {power} beyond guaranteed order {self.order}")
        return self.coeffs.get(power,
                               RationalFunction.constant(self.coefficient_symbol, 0))

    def terms(self) -> list[tuple[int, RationalFunction]]:
        return sorted(self.coeffs.items())

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _require_same_variable(self, other: TruncatedSeries) -> None:
        if self.variable != other.variable:
            raise VariableMismatchError(
                f"cannot combine {self.variable} and {other.variable} series")

    def __add__(self, other) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._require_same_variable(other)
        order = min(self.order, other.order)
        out: dict[int, RationalFunction] = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out[p] + c if p in out else c
        return TruncatedSeries(self.variable, out, order,
                               min_power=min(self.min_power, other.min_power))

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(self.variable, {p: -c for p, c in self.coeffs.items()},
                               self.order, self.min_power)

    def __sub__(self, other) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._require_same_variable(other)
        order = min(self.order + other.min_power, other.order + self.min_power)
        out: dict[int, RationalFunction] = {}
        for p, a in self.coeffs.items():
            for q, b in other.coeffs.items():
                if p + q > order:
                    continue
                prod = a * b
                key = p + q
                out[key] = out[key] + prod if key in out else prod
        return TruncatedSeries(self.variable, out, order,
                               min_power=self.min_power + other.min_power)

    def scale(self, factor) -> TruncatedSeries:
        """Multiply every coefficient by a scalar in the coefficient symbol."""
        if isinstance(factor, (int, Fraction)):
            factor = RationalFunction.constant(self.coefficient_symbol, factor)
        elif isinstance(factor, Polynomial):
            factor = RationalFunction(factor)
        if factor.is_zero:
            return TruncatedSeries.zero(self.variable, self.order)
        return TruncatedSeries(self.variable,
                               {p: c * factor for p, c in self.coeffs.items()},
                               self.order, self.min_power)

    def shift_power(self, k: int) -> TruncatedSeries:
        """Multiply by the expansion variable to the k-th power (exact)."""
        return TruncatedSeries(self.variable,
                               {p + k: c for p, c in self.coeffs.items()},
                               self.order + k, self.min_power + k)

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise SeriesOrderError(
                f"cannot extend guarantee from {self.order} to {order}")
        return TruncatedSeries(self.variable,
                               {p: c for p, c in self.coeffs.items() if p <= order},
                               order, self.min_power)

    def times_m_polynomial(self, p: Polynomial) -> TruncatedSeries:
        """Multiply an inv_M series by a polynomial in M (powers shift down)."""
        if self.variable != VAR_INV_M:
            raise VariableMismatchError(
                "polynomial-in-M multiplication applies to inv_M series only")
        if p.symbol != SYM_M:
            raise VariableMismatchError("expected a polynomial in M")
        if p.is_zero:
            return TruncatedSeries.zero(VAR_INV_M, self.order - max(p.degree, 0))
        order = self.order - p.degree
        out: dict[int, RationalFunction] = {}
        for d in range(p.degree + 1):
            c = p.coefficient(d)
            if not c:
                continue
            for q, a in self.coeffs.items():
                key = q - d
                if key > order:
                    continue
                term = a * c
                out[key] = out[key] + term if key in out else term
        return TruncatedSeries(VAR_INV_M, out, order,
                               min_power=self.min_power - p.degree)

    def evaluate(self, m_value, gamma_value) -> Fraction:
        """Exact value of the truncated sum at rational M and absorption values."""
        m_value = _as_fraction(m_value)
        gamma_value = _as_fraction(gamma_value)
        if self.variable == VAR_INV_M:
            x = 1 / m_value
            c_at = gamma_value
        elif self.variable == VAR_GAMMA:
            x = gamma_value
            c_at = m_value
        else:
            x = 1 / gamma_value
            c_at = m_value
        total = Fraction(0)
        for p, c in self.coeffs.items():
            total += c.evaluate(c_at) * x**p
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.variable == other.variable and self.order == other.order
                and self.coeffs == other.coeffs)

    def __repr__(self) -> str:
        inner = ", ".join(f"{p}: {c}" for p, c in self.terms())
        return (f"TruncatedSeries({self.variable}, order={self.order}, "
                f"{{{inner}}})")


def laurent_expand_inverse_power(p: Polynomial, k: int, order: int) -> TruncatedSeries:
    """Exact expansion of p(M) * M**(-k) in powers of 1/M, up to `order`."""
    if p.symbol != SYM_M:
        raise VariableMismatchError("expected a polynomial in M")
    if p.is_zero:
        raise ValueError("expected a non-zero polynomial")
    coeffs = {k - d: RationalFunction.constant(SYM_G, p.coefficient(d))
              for d in range(p.degree + 1) if p.coefficient(d)}
    return TruncatedSeries(VAR_INV_M, coeffs, order, min_power=k - p.degree)
