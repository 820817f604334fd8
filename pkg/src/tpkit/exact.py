"""Exact rationals, dense polynomials and truncated power series.

Every numeric value in tpkit is a :class:`fractions.Fraction`; nothing in
this module ever rounds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Union

Rat = Fraction
RatLike = Union[Fraction, int, str]

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rat(text: RatLike) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (no decimal point) into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot parse {type(text).__name__} as a rational")
    match = _RAT_RE.match(text)
    if match is None:
        raise ValueError(f"not a rational literal of the form p or p/q: {text!r}")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rat(x: Fraction) -> str:
    return str(Fraction(x))


def as_rat(x: RatLike) -> Fraction:
    if isinstance(x, str):
        return parse_rat(x)
    return Fraction(x)


# --------------------------------------------------------------------------
# Polynomials


class Poly:
    """Dense polynomial with Fraction coefficients, index = power of x.

    ``degree`` is ``None`` for the zero polynomial.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c: RatLike = 1) -> Poly:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x: RatLike) -> Fraction:
        x = as_rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Fraction) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(format_rat(c) for c in self.coeffs)}])"

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __add__(self, other: Poly | RatLike) -> Poly:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __sub__(self, other: Poly | RatLike) -> Poly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: RatLike) -> Poly:
        return _as_poly(other) - self

    def __mul__(self, other: Poly | RatLike) -> Poly:
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lead = other.lead
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dd] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dd + j] -= c * b
        return Poly(quot), Poly(rem[:dd])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lead = self.lead
        return Poly(c / lead for c in self.coeffs)

    def derivative(self, times: int = 1) -> Poly:
        cs = list(self.coeffs)
        for _ in range(times):
            cs = [k * c for k, c in enumerate(cs)][1:]
        return Poly(cs)

    def scale_var(self, c: RatLike) -> Poly:
        """p(c x)."""
        c = as_rat(c)
        return Poly(a * c**k for k, a in enumerate(self.coeffs))

    def compose(self, inner: Poly) -> Poly:
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def trailing_zeros(self) -> int:
        """Multiplicity of the root at x = 0."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return 0

    def deflate_zero(self) -> tuple[int, Poly]:
        q = self.trailing_zeros()
        return q, Poly(self.coeffs[q:])


def _as_poly(x: Poly | RatLike) -> Poly:
    return x if isinstance(x, Poly) else Poly([x])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


# --------------------------------------------------------------------------
# Truncated power series


@dataclass(frozen=True)
class SeriesPrefix:
    """Coefficients 0..N-1 of a power series.

    ``exact_tail`` asserts that every coefficient from index N on is zero.
    """

    coeffs: tuple[Fraction, ...]
    N: int
    exact_tail: bool = False

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError(f"truncation order must be positive, got {self.N}")
        if len(self.coeffs) != self.N:
            raise ValueError(f"expected {self.N} coefficients, got {len(self.coeffs)}")

    @classmethod
    def of(cls, coeffs: Iterable[RatLike], exact_tail: bool = False, N: int | None = None) -> SeriesPrefix:
        cs = [as_rat(c) for c in coeffs]
        if N is not None:
            if len(cs) > N:
                if exact_tail and any(cs[N:]):
                    raise ValueError("nonzero coefficients beyond N with exact_tail")
                cs = cs[:N]
            elif len(cs) < N:
                if not exact_tail:
                    raise ValueError("fewer coefficients than N without exact_tail")
                cs = cs + [Fraction(0)] * (N - len(cs))
        if not cs:
            cs = [Fraction(0)]
        return cls(tuple(cs), len(cs), exact_tail)

    @classmethod
    def from_poly(cls, p: Poly, N: int | None = None) -> SeriesPrefix:
        """Exact-tail prefix of a polynomial; N defaults to degree + 1."""
        n = len(p.coeffs) if N is None else N
        if n < len(p.coeffs):
            return cls(p.coeffs[:n], n, False)
        return cls.of(p.coeffs, exact_tail=True, N=max(n, 1))

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.N

    def coeff(self, k: int) -> Fraction:
        """Coefficient k; beyond the prefix only defined under exact_tail."""
        if k < 0:
            return Fraction(0)
        if k < self.N:
            return self.coeffs[k]
        if self.exact_tail:
            return Fraction(0)
        raise IndexError(f"coefficient {k} is beyond the known prefix (N={self.N})")

    @property
    def degree(self) -> int | None:
        """Index of the last nonzero coefficient in the prefix."""
        for k in range(self.N - 1, -1, -1):
            if self.coeffs[k]:
                return k
        return None

    def to_poly(self) -> Poly:
        return Poly(self.coeffs)

    def truncate(self, N: int) -> SeriesPrefix:
        if N > self.N:
            if not self.exact_tail:
                raise ValueError(f"cannot extend a prefix of order {self.N} to {N}")
            return SeriesPrefix.of(self.coeffs, exact_tail=True, N=N)
        deg = self.degree
        exact = self.exact_tail and (deg is None or deg < N)
        return SeriesPrefix(self.coeffs[:N], N, exact)

    def to_json(self) -> dict:
        return {
            "coeffs": [format_rat(c) for c in self.coeffs],
            "N": self.N,
            "exact_tail": self.exact_tail,
        }

    @classmethod
    def from_json(cls, data: dict) -> SeriesPrefix:
        coeffs = [parse_rat(c) for c in data["coeffs"]]
        return cls(tuple(coeffs), int(data.get("N", len(coeffs))), bool(data.get("exact_tail", False)))


def series_product(u: SeriesPrefix, v: SeriesPrefix) -> SeriesPrefix:
    """Cauchy product truncated to min(N_u, N_v)."""
    n = min(u.N, v.N)
    out = [Fraction(0)] * n
    for i in range(n):
        a = u.coeffs[i]
        if a:
            for j in range(n - i):
                b = v.coeffs[j]
                if b:
                    out[i + j] += a * b
    exact = False
    if u.exact_tail and v.exact_tail:
        du, dv = u.degree, v.degree
        exact = du is None or dv is None or du + dv < n
    return SeriesPrefix(tuple(out), n, exact)


def series_add(u: SeriesPrefix, v: SeriesPrefix) -> SeriesPrefix:
    n = min(u.N, v.N)
    out = tuple(u.coeffs[k] + v.coeffs[k] for k in range(n))
    exact = u.exact_tail and v.exact_tail and all(
        u.coeff(k) + v.coeff(k) == 0 for k in range(n, max(u.N, v.N))
    )
    return SeriesPrefix(out, n, exact)


def series_scale(u: SeriesPrefix, c: RatLike) -> SeriesPrefix:
    c = as_rat(c)
    return SeriesPrefix(tuple(c * a for a in u.coeffs), u.N, u.exact_tail)


def series_subs_scale(u: SeriesPrefix, c: RatLike) -> SeriesPrefix:
    """Prefix of u(c z)."""
    c = as_rat(c)
    return SeriesPrefix(tuple(a * c**k for k, a in enumerate(u.coeffs)), u.N, u.exact_tail or c == 0)


def series_shift(u: SeriesPrefix, q: int) -> SeriesPrefix:
    """Prefix of z^q u(z), keeping the truncation order."""
    if q < 0:
        raise ValueError("negative shifts (Laurent series) are not supported")
    cs = (Fraction(0),) * q + u.coeffs
    if len(cs) > u.N:
        exact = u.exact_tail and not any(cs[u.N:])
        return SeriesPrefix(cs[: u.N], u.N, exact)
    return SeriesPrefix(cs, u.N, u.exact_tail)


def series_derivative_shifted(u: SeriesPrefix) -> SeriesPrefix:
    """Coefficients k * u_k, i.e. the prefix of z u'(z)."""
    return SeriesPrefix(tuple(k * a for k, a in enumerate(u.coeffs)), u.N, u.exact_tail)


def exp_series(gamma: RatLike, N: int) -> SeriesPrefix:
    """gamma^k / k! for k < N."""
    if N < 1:
        raise ValueError("N must be at least 1")
    gamma = as_rat(gamma)
    out = [Fraction(1)]
    for k in range(1, N):
        out.append(out[-1] * gamma / k)
    return SeriesPrefix(tuple(out), N, gamma == 0)


def pole_power_series(beta: RatLike, m: int, N: int) -> SeriesPrefix:
    """Prefix of (1 - beta z)^(-m): binom(s+m-1, m-1) beta^s."""
    beta = as_rat(beta)
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    if m < 1:
        raise ValueError(f"pole order must be at least 1, got {m}")
    if N < 1:
        raise ValueError("N must be at least 1")
    return SeriesPrefix(tuple(comb(s + m - 1, m - 1) * beta**s for s in range(N)), N, False)


def series_inverse(u: SeriesPrefix) -> SeriesPrefix:
    """Multiplicative inverse of a prefix with nonzero constant term."""
    if u.coeffs[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = 1 / u.coeffs[0]
    out = [inv0]
    for k in range(1, u.N):
        acc = sum((u.coeffs[j] * out[k - j] for j in range(1, k + 1)), Fraction(0))
        out.append(-acc * inv0)
    return SeriesPrefix(tuple(out), u.N, False)


def taylor_coefficients_at(p: Poly, x0: RatLike) -> list[Fraction]:
    """c_j = p^(j)(x0) / j! for j = 0..deg p."""
    x0 = as_rat(x0)
    return [p.derivative(j)(x0) / factorial(j) for j in range(len(p.coeffs))]
