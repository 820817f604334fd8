"""Hadamard-product operators and the decisions on which of them preserve TP-infinity.

``hadamard(a, b)`` is the operator sending (b_k) to (a_k b_k). The deciders
below cover a generating function with a pole, sequences with at most five
nonzero terms, and the battery of test sequences whose images every
preserver must keep totally positive. The remaining functions recompute the
exact quantities the necessity and sufficiency arguments rest on, so that a
transcription slip shows up as a failed identity rather than a wrong verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, isqrt
from typing import Any, Sequence

from .exact import (
    Poly,
    RatLike,
    SeriesPrefix,
    as_rat,
    exp_series,
    format_rat,
    pole_power_series,
    series_product,
    taylor_coefficients_at,
)
from .genfun import ASWEParams, CoeffSeq, as_prefix, lemma_l1_sequences
from .realroots import hutchinson_check, is_real_rooted_nonpositive
from .tpcheck import (
    DEFAULT_M,
    DEFAULT_WINDOW,
    TPReport,
    minor_scan,
    tp_infty_finite_decide,
)

PRESERVER = "preserver"
NOT_PRESERVER = "not_preserver"
EVIDENCE_ONLY = "evidence_only"

BASES = (
    "theorem1",
    "statement1",
    "theorem2",
    "theorem3",
    "trivial_short",
    "l1_battery",
    "conjecture_scan",
)

DEFAULT_C_VALUES = (Fraction(1, 2), Fraction(2))
DEFAULT_D_VALUES = (Fraction(0), Fraction(1))
DEFAULT_N_VALUES = (0, 1, 2)


def _to_json(report: Any) -> Any:
    if hasattr(report, "to_json"):
        return report.to_json()
    if isinstance(report, Fraction):
        return format_rat(report)
    if isinstance(report, dict):
        return {k: _to_json(v) for k, v in report.items()}
    if isinstance(report, (list, tuple)):
        return [_to_json(v) for v in report]
    return report


@dataclass(frozen=True)
class Detail:
    name: str
    report: Any

    def to_json(self) -> dict:
        return {"name": self.name, "report": _to_json(self.report)}


@dataclass(frozen=True)
class PreserverVerdict:
    decision: str
    basis: str
    details: tuple[Detail, ...] = ()
    explanation: str = ""

    def __post_init__(self) -> None:
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        if self.decision not in (PRESERVER, NOT_PRESERVER, EVIDENCE_ONLY):
            raise ValueError(f"unknown decision {self.decision!r}")
        if self.basis == "conjecture_scan" and self.decision != EVIDENCE_ONLY:
            raise ValueError("a conjecture scan can only produce evidence")

    def to_json(self) -> dict:
        out = {
            "decision": self.decision,
            "basis": self.basis,
            "details": [d.to_json() for d in self.details],
        }
        if self.explanation:
            out["explanation"] = self.explanation
        return out


# --------------------------------------------------------------------------
# The operator


def hadamard(a: CoeffSeq | SeriesPrefix, b: CoeffSeq | SeriesPrefix) -> CoeffSeq:
    """Coefficientwise product (a_k b_k).

    A factor with an exact tail is known at every index, so only inexact
    factors limit the truncation order.
    """
    pa, pb = as_prefix(a), as_prefix(b)
    if pa.exact_tail and pb.exact_tail:
        n = min(pa.N, pb.N)
    elif pa.exact_tail:
        n = pb.N
    elif pb.exact_tail:
        n = pa.N
    else:
        n = min(pa.N, pb.N)
    coeffs = tuple(pa.coeff(k) * pb.coeff(k) for k in range(n))
    exact = False
    for p in (pa, pb):
        if p.exact_tail:
            deg = p.degree
            if deg is None or deg < n:
                exact = True
    return CoeffSeq(SeriesPrefix(coeffs, n, exact), "user", {"op": "hadamard"})


# --------------------------------------------------------------------------
# Finite support


def _tail_poly(coeffs: Sequence[Fraction], start: int) -> Poly:
    return Poly([0] * start + list(coeffs[start:]))


def decide_finite_preserver(s: CoeffSeq | SeriesPrefix) -> PreserverVerdict:
    """Decide a finitely supported sequence with at most five nonzero terms.

    A leading zero run is treated as a z^q factor and stripped first.
    """
    p = as_prefix(s)
    if not p.exact_tail:
        raise ValueError("finite-support decisions need an exact_tail sequence")
    if any(c < 0 for c in p.coeffs):
        raise ValueError("coefficients must be nonnegative")
    deg = p.degree
    if deg is None:
        return PreserverVerdict(PRESERVER, "trivial_short", explanation="zero sequence")
    q = next(k for k, c in enumerate(p.coeffs) if c)
    core = list(p.coeffs[q : deg + 1])
    L = len(core)

    if any(c == 0 for c in core):
        decided = tp_infty_finite_decide(p)
        detail = (Detail("image_of_all_ones", decided),)
        if decided.violated:
            return PreserverVerdict(
                NOT_PRESERVER, "l1_battery", detail,
                "the image of the all-ones sequence (the sequence itself) is not TP-infinity",
            )
        return PreserverVerdict(
            EVIDENCE_ONLY, "l1_battery", detail,
            "interior zeros in the support are outside every finite-support criterion",
        )
    if L <= 2:
        return PreserverVerdict(PRESERVER, "trivial_short", explanation=f"{L} nonzero term(s)")
    if L > 5:
        scan = conjecture_scan(p, l_max=min(L - 1, 3), trunc_degrees=[L - 1])
        return PreserverVerdict(
            EVIDENCE_ONLY, "conjecture_scan", scan.details,
            f"support length {L} > 5: no finite criterion applies, remainder scan attached",
        )
    basis = {3: "statement1", 4: "theorem2", 5: "theorem3"}[L]
    # length 3 needs only the full polynomial; lengths 4 and 5 need L - 2 tails
    starts = [0] if L == 3 else list(range(L - 2))
    details = []
    ok = True
    for j in starts:
        report = is_real_rooted_nonpositive(_tail_poly(core, j))
        details.append(Detail(f"tail_from_{j}", report))
        ok = ok and report.all_real
    return PreserverVerdict(PRESERVER if ok else NOT_PRESERVER, basis, tuple(details))


# --------------------------------------------------------------------------
# Generating functions with a pole


def decide_meromorphic_preserver(p: ASWEParams) -> PreserverVerdict:
    """A with at least one pole preserves TP-infinity iff A = C / (1 - beta z)."""
    if not p.betas:
        raise ValueError(
            "no pole: use decide_finite_preserver for polynomials or conjecture_scan for entire functions"
        )
    clauses = {
        "C_positive": p.C > 0,
        "no_shift": p.q == 0,
        "no_exponential_factor": p.gamma == 0,
        "no_zeros": all(a == 0 for a in p.alphas),
        "single_simple_pole": len(p.betas) == 1,
    }
    details = tuple(Detail(name, ok) for name, ok in clauses.items())
    failed = [name for name, ok in clauses.items() if not ok]
    if failed:
        return PreserverVerdict(NOT_PRESERVER, "theorem1", details, "violated: " + ", ".join(failed))
    return PreserverVerdict(PRESERVER, "theorem1", details)


def partial_fractions_single_pole(P: Poly, beta: RatLike, n: int) -> list[Fraction]:
    """B_0..B_{n-1} with P(z)/(1-beta z)^n = sum_j (-1)^j B_j / (1-beta z)^(n-j).

    B_j = P^(j)(1/beta) / (j! beta^j).
    """
    beta = as_rat(beta)
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    deg = P.degree
    if deg is not None and deg >= n:
        raise ValueError(f"deg P = {deg} must be below the pole order n = {n}")
    taylor = taylor_coefficients_at(P, 1 / beta)
    taylor += [Fraction(0)] * (n - len(taylor))
    return [t / beta**j for j, t in enumerate(taylor)]


def partial_fraction_series(Bs: Sequence[Fraction], beta: Fraction, order: int) -> SeriesPrefix:
    n = len(Bs)
    acc = [Fraction(0)] * order
    for j, B in enumerate(Bs):
        if B:
            sign = -1 if j % 2 else 1
            term = pole_power_series(beta, n - j, order)
            for i in range(order):
                acc[i] += sign * B * term.coeffs[i]
    return SeriesPrefix(tuple(acc), order, False)


def verify_partial_fractions(P: Poly, beta: RatLike, n: int, order: int = 30) -> dict:
    beta = as_rat(beta)
    Bs = partial_fractions_single_pole(P, beta, n)
    lhs = series_product(SeriesPrefix.from_poly(P, order), pole_power_series(beta, n, order))
    rhs = partial_fraction_series(Bs, beta, order)
    return {"match": lhs.coeffs == rhs.coeffs, "order": order, "B": Bs}


@dataclass(frozen=True)
class Lemma2Result:
    Q: Poly
    k: int
    beta: Fraction
    gamma: Fraction
    delta: Fraction
    identity_checked_to: int

    def to_json(self) -> dict:
        return {
            "Q": [format_rat(c) for c in self.Q.coeffs],
            "k": self.k,
            "beta": format_rat(self.beta),
            "gamma": format_rat(self.gamma),
            "delta": format_rat(self.delta),
            "match": True,
            "order": self.identity_checked_to,
        }


def lemma2_poly(k: int, beta: Fraction, gamma: Fraction, delta: Fraction) -> Poly:
    """The degree <= 2k-2 polynomial Q with

    (1-beta z)^(-k) * e^(gamma z)/(1-delta z)  =  (k-1)! e^(gamma beta z) (1-delta beta z)^(-k) Q(z)

    (the left side a Hadamard product). Also valid for k = 1, where Q = 1.
    """
    gb, db = gamma * beta, delta * beta
    one_minus = Poly([1, -db])
    Q = Poly()
    for s in range(k):
        for t in range(k - s - 1, k):
            c = gb ** (k - 1 - s) * db ** (t - k + s + 1)
            c /= factorial(k - 1 - s) * factorial(k - 1 - t) * factorial(t)
            Q = Q + Poly.monomial(t, c) * one_minus ** (2 * k - t - s - 2)
    return Q


def _hadamard_side(k: int, beta: Fraction, gamma: Fraction, delta: Fraction, order: int) -> SeriesPrefix:
    F = series_product(exp_series(gamma, order), pole_power_series(delta, 1, order))
    A = pole_power_series(beta, k, order)
    return SeriesPrefix(tuple(x * y for x, y in zip(A.coeffs, F.coeffs)), order, False)


def lemma2_Q(k: int, beta: RatLike, gamma: RatLike, delta: RatLike, check_order: int = 30) -> Lemma2Result:
    beta, gamma, delta = as_rat(beta), as_rat(gamma), as_rat(delta)
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    for name, v in (("beta", beta), ("gamma", gamma), ("delta", delta)):
        if v <= 0:
            raise ValueError(f"{name} must be positive, got {v}")
    Q = lemma2_poly(k, beta, gamma, delta)
    lhs = _hadamard_side(k, beta, gamma, delta, check_order)
    rhs = series_product(
        series_product(exp_series(gamma * beta, check_order), pole_power_series(delta * beta, k, check_order)),
        SeriesPrefix.from_poly(Q * factorial(k - 1), check_order),
    )
    if lhs.coeffs != rhs.coeffs:
        bad = next(i for i in range(check_order) if lhs.coeffs[i] != rhs.coeffs[i])
        raise RuntimeError(f"Q identity fails at coefficient {bad} for k={k}: formula transcription error")
    return Lemma2Result(Q, k, beta, gamma, delta, check_order)


def h_polynomial(Bs: Sequence[RatLike], beta: RatLike, gamma: RatLike, delta: RatLike) -> Poly:
    """H with (A * F)(z) = e^(gamma beta z) (1-delta beta z)^(-n) H(z), n = len(Bs).

    A is the alternating pole sum with coefficients Bs and F = e^(gamma z)/(1-delta z).
    """
    beta, gamma, delta = as_rat(beta), as_rat(gamma), as_rat(delta)
    n = len(Bs)
    one_minus = Poly([1, -delta * beta])
    H = Poly()
    for j, B in enumerate(Bs):
        k = n - j
        term = lemma2_poly(k, beta, gamma, delta) * (factorial(k - 1) * as_rat(B)) * one_minus**j
        H = H - term if j % 2 else H + term
    return H


def h2n3_coefficient(
    n: int, B0: RatLike, B1: RatLike, beta: RatLike, gamma: RatLike, delta: RatLike
) -> Fraction:
    """Closed form of the z^(2n-3) coefficient of H (odd n >= 3)."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and at least 3, got {n}")
    B0, B1, beta, gamma, delta = map(as_rat, (B0, B1, beta, gamma, delta))
    for name, v in (("B0", B0), ("B1", B1), ("beta", beta), ("gamma", gamma), ("delta", delta)):
        if v <= 0:
            raise ValueError(f"{name} must be positive, got {v}")
    gb, db = gamma * beta, delta * beta
    prefactor = (-1) ** (n - 2) * gb ** (n - 2) * db ** (n - 2) / factorial(n - 2)
    return prefactor * (B0 * gb - B0 * (n - 2) * db + B1 * db)


def verify_h2n3(
    n: int, Bs: Sequence[RatLike], beta: RatLike, gamma: RatLike, delta: RatLike
) -> dict:
    """Compare the closed form against the coefficient of the assembled H."""
    if len(Bs) != n:
        raise ValueError(f"need n = {n} partial-fraction coefficients, got {len(Bs)}")
    closed = h2n3_coefficient(n, Bs[0], Bs[1], beta, gamma, delta)
    H = h_polynomial(Bs, beta, gamma, delta)
    extracted = H.coeff(2 * n - 3)
    return {"match": closed == extracted, "order": 2 * n - 3, "closed_form": closed, "extracted": extracted}


# --------------------------------------------------------------------------
# Four-term sufficiency witnesses


class QuadSurd:
    """r + s * sqrt(D) with rational r, s and a fixed rational D >= 0."""

    __slots__ = ("r", "s", "D")

    def __init__(self, r: RatLike, s: RatLike, D: RatLike):
        self.r, self.s, self.D = as_rat(r), as_rat(s), as_rat(D)
        if self.D < 0:
            raise ValueError("radicand must be nonnegative")

    def _lift(self, other: QuadSurd | RatLike) -> QuadSurd:
        if isinstance(other, QuadSurd):
            if other.D != self.D and other.s and self.s:
                raise ValueError("mixed radicands")
            return other
        return QuadSurd(other, 0, self.D)

    def __add__(self, other):
        o = self._lift(other)
        return QuadSurd(self.r + o.r, self.s + o.s, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.r, -self.s, self.D)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return QuadSurd(self.r * o.r + self.s * o.s * self.D, self.r * o.s + self.s * o.r, self.D)

    __rmul__ = __mul__

    def __truediv__(self, other: RatLike):
        c = as_rat(other)
        return QuadSurd(self.r / c, self.s / c, self.D)

    def sign(self) -> int:
        r, s = self.r, self.s
        sr, ss = (r > 0) - (r < 0), (s > 0) - (s < 0)
        if ss == 0 or self.D == 0:
            return sr
        if sr == 0 or sr == ss:
            return ss
        lhs, rhs = r * r, s * s * self.D
        if lhs == rhs:
            return 0
        return sr if lhs > rhs else ss

    def __eq__(self, other) -> bool:
        return (self - other).sign() == 0

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    __hash__ = None

    def rational_value(self) -> Fraction | None:
        """The value as a Fraction when sqrt(D) is rational (or unused)."""
        if self.s == 0:
            return self.r
        root = _rational_sqrt(self.D)
        return None if root is None else self.r + self.s * root

    def __float__(self) -> float:
        return float(self.r) + float(self.s) * float(self.D) ** 0.5

    def __repr__(self) -> str:
        return f"QuadSurd({self.r}, {self.s}, D={self.D})"

    def to_json(self) -> dict:
        exact = self.rational_value()
        out = {"r": format_rat(self.r), "s": format_rat(self.s), "D": format_rat(self.D)}
        if exact is not None:
            out["value"] = format_rat(exact)
        return out


def _rational_sqrt(x: Fraction) -> Fraction | None:
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _eval(poly: Sequence[Fraction], y: QuadSurd) -> QuadSurd:
    acc = QuadSurd(0, 0, y.D)
    for c in reversed(poly):
        acc = acc * y + c
    return acc


def cubic_F(a: Fraction, b: Fraction) -> list[Fraction]:
    """1 + a y (1 + y + y^2 / b)."""
    return [Fraction(1), a, a, a / b]


def cubic_t(b: Fraction) -> list[Fraction]:
    """y (1 + y + y^2 / b)."""
    return [Fraction(0), Fraction(1), Fraction(1), 1 / b]


def cubic_Fq(a: Fraction, b: Fraction, q2: Fraction, q3: Fraction) -> list[Fraction]:
    """1 + q2 a y (1 + y + y^2 / (q3 b))."""
    return [Fraction(1), q2 * a, q2 * a, q2 * a / (q3 * b)]


def critical_points(b: RatLike) -> tuple[QuadSurd, QuadSurd]:
    """Roots alpha1 > alpha2 of 1 + 2y + 3y^2/b, as (b/3)(-1 +- sqrt(1 - 3/b))."""
    b = as_rat(b)
    D = 1 - 3 / b
    return QuadSurd(-b / 3, b / 3, D), QuadSurd(-b / 3, -b / 3, D)


@dataclass(frozen=True)
class TT2Witness:
    a: Fraction
    b: Fraction
    alpha1: QuadSurd
    alpha2: QuadSurd
    q2: Fraction
    q3: Fraction
    flags: dict[str, bool] = field(default_factory=dict)
    values: dict[str, QuadSurd] = field(default_factory=dict, compare=False)

    @property
    def all_flags(self) -> bool:
        return all(self.flags.values())

    def to_json(self) -> dict:
        return {
            "a": format_rat(self.a),
            "b": format_rat(self.b),
            "alpha1": self.alpha1.to_json(),
            "alpha2": self.alpha2.to_json(),
            "q2": format_rat(self.q2),
            "q3": format_rat(self.q3),
            "flags": dict(self.flags),
            "values": {k: v.to_json() for k, v in self.values.items()},
        }


def s7_conditions_hold(q2: Fraction, q3: Fraction) -> tuple[bool, bool, bool]:
    return (q2 >= 1, q3 >= 1, q2 * q2 * q3 - 2 * q2 * q3 + 1 >= 0)


def tt2_witness(a: RatLike, b: RatLike, q2: RatLike, q3: RatLike) -> TT2Witness:
    """Exact sign checks at the critical points of F for the four-term sufficiency.

    Flags:
      F_alpha1_nonpositive        F(alpha1) <= 0
      F_alpha2_nonnegative        F(alpha2) >= 0
      F_alpha2_at_least_one       F(alpha2) >= 1
      Fq_alpha1_scaled_nonpositive  F_q(alpha1 / q2) <= 0
      Fq_alpha2_nonnegative       F_q(alpha2) >= 0
      gap_nonnegative             F(alpha1) - F_q(alpha1 / q2) >= 0
      gap_lower_bound             that gap >= a alpha1^2 (q2^2 q3 - 2 q2 q3 + 1) / (6 q2^2 q3)
      Fq_alpha2_chain             F_q(alpha2) >= 1 + q2 (F(alpha2) - 1)
      alpha1_over_b_bound         alpha1 / b >= -1/6
    """
    a, b, q2, q3 = map(as_rat, (a, b, q2, q3))
    if a <= 0:
        raise ValueError(f"a must be positive, got {a}")
    if b < 4:
        raise ValueError(f"b = {b} < 4: y(1 + y + y^2/b) is not real-rooted")
    if not all(s7_conditions_hold(q2, q3)):
        raise ValueError(
            "q2, q3 violate the TP conditions q2 >= 1, q3 >= 1, q2^2 q3 - 2 q2 q3 + 1 >= 0"
        )
    F = cubic_F(a, b)
    if not is_real_rooted_nonpositive(F).all_real:
        raise ValueError(f"F(y, {a}, {b}) is not real-rooted")
    t = cubic_t(b)
    Fq = cubic_Fq(a, b, q2, q3)
    al1, al2 = critical_points(b)
    values = {
        "F_alpha1": _eval(F, al1),
        "F_alpha2": _eval(F, al2),
        "t_alpha2": _eval(t, al2),
        "Fq_alpha1_scaled": _eval(Fq, al1 / q2),
        "Fq_alpha2": _eval(Fq, al2),
    }
    gap = values["F_alpha1"] - values["Fq_alpha1_scaled"]
    flags = {
        "F_alpha1_nonpositive": values["F_alpha1"] <= 0,
        "F_alpha2_nonnegative": values["F_alpha2"] >= 0,
        "F_alpha2_at_least_one": values["F_alpha2"] >= 1,
        "Fq_alpha1_scaled_nonpositive": values["Fq_alpha1_scaled"] <= 0,
        "Fq_alpha2_nonnegative": values["Fq_alpha2"] >= 0,
        "gap_nonnegative": gap >= 0,
        "gap_lower_bound": gap >= al1 * al1 * a * (q2 * q2 * q3 - 2 * q2 * q3 + 1) / (6 * q2 * q2 * q3),
        "Fq_alpha2_chain": values["Fq_alpha2"] >= 1 + q2 * (values["F_alpha2"] - 1),
        "alpha1_over_b_bound": al1 / b >= Fraction(-1, 6),
    }
    return TT2Witness(a, b, al1, al2, q2, q3, flags, values)


def s7_inequalities(g: CoeffSeq | SeriesPrefix | Sequence[RatLike]) -> tuple[Fraction, Fraction, tuple[bool, bool, bool]]:
    """q2 = p2/p1, q3 = p3/p2 with p_k = c_{k-1}/c_k, and the three TP conditions.

    The ratios are invariant under c_k -> C lambda^k c_k, so any c with
    c_0..c_3 > 0 is accepted and implicitly normalized to c_0 = c_1 = 1.
    """
    if isinstance(g, (CoeffSeq, SeriesPrefix)):
        cs = list(as_prefix(g).coeffs)
    else:
        cs = [as_rat(c) for c in g]
    if len(cs) < 4:
        raise ValueError("need at least c_0..c_3")
    if any(c <= 0 for c in cs[:4]):
        raise ValueError("c_0..c_3 must be positive to normalize to c_0 = c_1 = 1")
    p1, p2, p3 = cs[0] / cs[1], cs[1] / cs[2], cs[2] / cs[3]
    q2, q3 = p2 / p1, p3 / p2
    return q2, q3, s7_conditions_hold(q2, q3)


# --------------------------------------------------------------------------
# Batteries and scans


def l1_battery(
    a: CoeffSeq | SeriesPrefix,
    c: RatLike = 2,
    d: RatLike = 1,
    n: int = 0,
    m: int = DEFAULT_M,
    R: int = DEFAULT_WINDOW,
    C: int = DEFAULT_WINDOW,
    cap: int | None = None,
) -> list[tuple[int, TPReport]]:
    """Minor scans of the images of the seven necessary-condition test sequences.

    Any violated report certifies that ``a`` is not a preserver.
    """
    pa = as_prefix(a)
    N = max(C, pa.N)
    out = []
    for idx, fam in enumerate(lemma_l1_sequences(c, d, n, N), start=1):
        image = hadamard(pa, fam)
        out.append((idx, minor_scan(image, m, R, C, cap=cap)))
    return out


def l1_battery_grid(
    a: CoeffSeq | SeriesPrefix,
    m: int = DEFAULT_M,
    R: int = DEFAULT_WINDOW,
    C: int = DEFAULT_WINDOW,
    cap: int | None = None,
) -> list[tuple[str, TPReport]]:
    """Battery over the default parameter grid (c in {1/2, 2}, d in {0, 1}, n in {0, 1, 2})."""
    pa = as_prefix(a)
    N = max(C, pa.N)
    jobs: list[tuple[str, CoeffSeq]] = []
    base = lemma_l1_sequences(DEFAULT_C_VALUES[0], 0, 0, N)
    for idx in (1, 2, 3):
        jobs.append((f"family{idx}", base[idx - 1]))
    for c in DEFAULT_C_VALUES:
        fams = lemma_l1_sequences(c, 0, 0, N)
        jobs.append((f"family4[c={c}]", fams[3]))
        jobs.append((f"family5[c={c}]", fams[4]))
    for d in DEFAULT_D_VALUES:
        jobs.append((f"family6[d={d}]", lemma_l1_sequences(2, d, 0, N)[5]))
    for n in DEFAULT_N_VALUES:
        jobs.append((f"family7[n={n}]", lemma_l1_sequences(2, 0, n, N)[6]))
    return [(name, minor_scan(hadamard(pa, fam), m, R, C, cap=cap)) for name, fam in jobs]


def conjecture_scan(
    a: CoeffSeq | SeriesPrefix, l_max: int, trunc_degrees: Sequence[int]
) -> PreserverVerdict:
    """Real-rootedness grid of the truncated remainders sum_{k=l}^{l+D} a_k z^k.

    Evidence only, whatever the grid shows.
    """
    p = as_prefix(a)
    if any(c < 0 for c in p.coeffs):
        raise ValueError("coefficients must be nonnegative")
    details = []
    for l in range(l_max + 1):
        for D in trunc_degrees:
            top = l + D
            if top >= p.N and not p.exact_tail:
                details.append(Detail(f"l={l},D={D}", {"skipped": f"needs coefficient {top}, prefix has {p.N}"}))
                continue
            coeffs = [p.coeff(k) for k in range(l, top + 1)]
            entry: dict[str, Any] = {"l": l, "D": D}
            if all(c > 0 for c in coeffs):
                ratio = hutchinson_check(coeffs)
                entry["hutchinson"] = ratio.passes_hutchinson
                entry["min_ratio"] = ratio.min_ratio
            else:
                entry["hutchinson"] = None
            poly = Poly(coeffs)
            if poly.is_zero():
                entry["real_rooted"] = True
            else:
                entry["real_rooted"] = is_real_rooted_nonpositive(poly).all_real
            details.append(Detail(f"l={l},D={D}", entry))
    return PreserverVerdict(EVIDENCE_ONLY, "conjecture_scan", tuple(details))
