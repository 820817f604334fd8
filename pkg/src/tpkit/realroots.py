"""Exact real-root counting and the coefficient-ratio criteria.

Root counts come from Sturm chains over Fraction coefficients. Multiplicities
are recovered from the square-free (Yun) factorization, so ``all_real`` means
"total real multiplicity equals the degree".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .exact import Poly, RatLike, SeriesPrefix, as_rat, format_rat, poly_gcd

# Conservative rational upper bound on the partial theta threshold 3.23363666...
Q_LO = Fraction(32336367, 10**7)


@dataclass(frozen=True)
class RootReport:
    real_root_count: int
    degree: int
    all_real: bool
    all_nonpositive: bool
    method: str  # "sturm" | "quadratic" | "degree01"
    poly: Poly | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        out = {
            "real_root_count": self.real_root_count,
            "degree": self.degree,
            "all_real": self.all_real,
            "all_nonpositive": self.all_nonpositive,
            "method": self.method,
        }
        if self.poly is not None:
            out["poly"] = [format_rat(c) for c in self.poly.coeffs]
        return out


@dataclass(frozen=True)
class RatioReport:
    ratios: tuple[Fraction, ...]
    min_ratio: Fraction | None
    passes_hutchinson: bool

    def to_json(self) -> dict:
        return {
            "ratios": [format_rat(r) for r in self.ratios],
            "min_ratio": None if self.min_ratio is None else format_rat(self.min_ratio),
            "passes_hutchinson": self.passes_hutchinson,
        }


# --------------------------------------------------------------------------
# Sturm machinery


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        r = -(chain[-2] % chain[-1])
        if r.is_zero():
            break
        chain.append(r)
    return [q for q in chain if not q.is_zero()]


def _sign_at_inf(p: Poly, positive: bool) -> int:
    s = 1 if p.lead > 0 else -1
    if not positive and p.degree % 2 == 1:
        s = -s
    return s


def _variations(signs: Iterable[int]) -> int:
    count = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _chain_variations(chain: Sequence[Poly], x: Fraction | None, positive_inf: bool) -> int:
    if x is None:
        return _variations(_sign_at_inf(q, positive_inf) for q in chain)
    return _variations(q.sign_at(x) for q in chain)


def _normalize_bound(x, lower: bool) -> Fraction | None:
    if x is None:
        return None
    if isinstance(x, float):
        if math.isinf(x):
            if (x < 0) != lower:
                raise ValueError("lower bound must be -inf and upper bound +inf when infinite")
            return None
        raise TypeError("finite bounds must be exact rationals, not floats")
    return as_rat(x)


def square_free_part(p: Poly) -> Poly:
    g = poly_gcd(p, p.derivative())
    return p // g if g.degree else p.monic()


def sturm_count(p: Poly, lo=None, hi=None) -> int:
    """Distinct real roots of p in (lo, hi]; ``None`` or +-inf mean unbounded."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no finite root count")
    lo_r = _normalize_bound(lo, lower=True)
    hi_r = _normalize_bound(hi, lower=False)
    if lo_r is not None and hi_r is not None and not lo_r < hi_r:
        raise ValueError(f"empty interval ({lo_r}, {hi_r}]")
    if not p.degree:
        return 0
    chain = sturm_chain(square_free_part(p))
    return _chain_variations(chain, lo_r, False) - _chain_variations(chain, hi_r, True)


def square_free_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: p = lead * prod f_i^i with f_i square-free, coprime."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    out: list[tuple[Poly, int]] = []
    if not p.degree:
        return out
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    i = 1
    while b.degree:
        a = poly_gcd(b, d)
        if a.degree:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def count_real_roots(p: Poly, lo=None, hi=None) -> int:
    """Real roots in (lo, hi] counted with multiplicity."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no finite root count")
    return sum(i * sturm_count(f, lo, hi) for f, i in square_free_decomposition(p))


def _check_nonnegative(p: Poly) -> None:
    if p.is_zero():
        raise ValueError("the zero polynomial is not a valid input")
    neg = [k for k, c in enumerate(p.coeffs) if c < 0]
    if neg:
        raise ValueError(f"negative coefficient at index {neg[0]}; only nonnegative sequences are supported")


def is_real_rooted_nonpositive(p: Poly | Sequence[RatLike]) -> RootReport:
    """Decide whether a nonnegative polynomial has only real (hence nonpositive) zeros."""
    if not isinstance(p, Poly):
        p = Poly(p)
    _check_nonnegative(p)
    deg = p.degree
    q, core = p.deflate_zero()
    cdeg = core.degree
    if cdeg <= 1:
        return RootReport(deg, deg, True, True, "degree01", p)
    if cdeg == 2:
        c, b, a = core.coeffs
        disc = b * b - 4 * a * c
        count = q + (2 if disc >= 0 else 0)
        ok = disc >= 0
        return RootReport(count, deg, ok, ok, "quadratic", p)
    count = q + count_real_roots(core)
    ok = count == deg
    return RootReport(count, deg, ok, ok, "sturm", p)


def _coeff_list(s) -> list[Fraction]:
    if isinstance(s, SeriesPrefix):
        return list(s.coeffs)
    prefix = getattr(s, "prefix", None)
    if isinstance(prefix, SeriesPrefix):
        return list(prefix.coeffs)
    if isinstance(s, Poly):
        return list(s.coeffs)
    return [as_rat(c) for c in s]


def hutchinson_ratios(coeffs: Sequence[Fraction]) -> list[Fraction]:
    return [coeffs[n - 1] ** 2 / (coeffs[n - 2] * coeffs[n]) for n in range(2, len(coeffs))]


def hutchinson_check(s) -> RatioReport:
    """Ratios a_{n-1}^2 / (a_{n-2} a_n) over the whole prefix; passes iff all >= 4."""
    coeffs = _coeff_list(s)
    bad = [k for k, c in enumerate(coeffs) if c <= 0]
    if bad:
        raise ValueError(
            f"coefficient {bad[0]} is not positive; the ratio test needs a_k > 0 "
            "(restrict the window to the positive support)"
        )
    ratios = tuple(hutchinson_ratios(coeffs))
    mn = min(ratios) if ratios else None
    return RatioReport(ratios, mn, all(r >= 4 for r in ratios))


def ms_finite_decide(gammas: Sequence[RatLike]) -> bool:
    """Is (gamma_0, ..., gamma_l, 0, 0, ...) a multiplier sequence?

    True iff sum gamma_k z^k / k! has only real zeros, all of one sign
    (zeros at the origin allowed).
    """
    gs = [as_rat(g) for g in gammas]
    if not any(gs):
        raise ValueError("all-zero sequence")
    p = Poly(g / factorial(k) for k, g in enumerate(gs))
    _, core = p.deflate_zero()
    d = core.degree
    if d == 0:
        return True
    neg = count_real_roots(core, None, Fraction(0))
    pos = count_real_roots(core, Fraction(0), None)
    return neg == d or pos == d


def lp1_sufficient_ngthv(qlist: Sequence[RatLike]) -> bool:
    """Finite-depth check of the monotone q_k >= q_inf sufficient condition.

    Only ever a heuristic at finite depth: the true condition is on lim q_k.
    """
    qs = [as_rat(q) for q in qlist]
    if not qs:
        raise ValueError("empty parameter list")
    monotone = all(qs[i] >= qs[i + 1] for i in range(len(qs) - 1))
    return monotone and qs[-1] >= Q_LO
