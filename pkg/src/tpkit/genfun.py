"""Coefficient prefixes of the generating-function families used throughout."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .exact import (
    RatLike,
    SeriesPrefix,
    as_rat,
    exp_series,
    format_rat,
    parse_rat,
    pole_power_series,
    series_product,
    series_scale,
    series_shift,
)

FAMILY_TAGS = ("aswe", "e1", "partial_theta", "l1_family", "user")


@dataclass(frozen=True)
class ASWEParams:
    """C z^q e^(gamma z) prod(1 + alpha z) / prod(1 - beta z), finite lists.

    A repeated beta encodes a pole of higher order.
    """

    C: Fraction = Fraction(1)
    q: int = 0
    gamma: Fraction = Fraction(0)
    alphas: tuple[Fraction, ...] = ()
    betas: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "C", as_rat(self.C))
        object.__setattr__(self, "gamma", as_rat(self.gamma))
        object.__setattr__(self, "alphas", tuple(as_rat(a) for a in self.alphas))
        object.__setattr__(self, "betas", tuple(as_rat(b) for b in self.betas))
        if self.C < 0:
            raise ValueError(f"C must be >= 0, got {self.C}")
        if self.q < 0:
            raise ValueError(f"q must be >= 0 (Laurent shifts are not supported), got {self.q}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        for a in self.alphas:
            if a < 0:
                raise ValueError(f"alpha must be >= 0, got {a}")
        for b in self.betas:
            if b <= 0:
                raise ValueError(f"beta must be > 0, got {b}")

    def to_json(self) -> dict:
        return {
            "C": format_rat(self.C),
            "q": self.q,
            "gamma": format_rat(self.gamma),
            "alphas": [format_rat(a) for a in self.alphas],
            "betas": [format_rat(b) for b in self.betas],
        }


@dataclass(frozen=True)
class CoeffSeq:
    prefix: SeriesPrefix
    family_tag: str = "user"
    params: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.family_tag not in FAMILY_TAGS:
            raise ValueError(f"unknown family tag {self.family_tag!r}")

    @classmethod
    def user(cls, coeffs: Sequence[RatLike], exact_tail: bool = False, N: int | None = None) -> CoeffSeq:
        return cls(SeriesPrefix.of(coeffs, exact_tail=exact_tail, N=N), "user", {})

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self.prefix.coeffs

    @property
    def N(self) -> int:
        return self.prefix.N

    @property
    def exact_tail(self) -> bool:
        return self.prefix.exact_tail

    def __getitem__(self, k: int) -> Fraction:
        return self.prefix.coeffs[k]

    def __len__(self) -> int:
        return self.prefix.N

    def to_json(self) -> dict:
        out = self.prefix.to_json()
        out["family"] = self.family_tag
        out["params"] = _jsonable(self.params)
        return out

    @classmethod
    def from_json(cls, data: dict) -> CoeffSeq:
        return cls(SeriesPrefix.from_json(data), data.get("family", "user"), data.get("params", {}))


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def as_prefix(s: CoeffSeq | SeriesPrefix | Sequence[RatLike]) -> SeriesPrefix:
    if isinstance(s, CoeffSeq):
        return s.prefix
    if isinstance(s, SeriesPrefix):
        return s
    return SeriesPrefix.of(s)


def expand_aswe(p: ASWEParams, N: int) -> CoeffSeq:
    if N < 1:
        raise ValueError("N must be at least 1")
    one = SeriesPrefix.of([1], exact_tail=True, N=N)
    acc = series_product(one, exp_series(p.gamma, N))
    for a in p.alphas:
        acc = series_product(acc, SeriesPrefix.of([1, a], exact_tail=True, N=N))
    for b in p.betas:
        acc = series_product(acc, pole_power_series(b, 1, N))
    acc = series_shift(series_scale(acc, p.C), p.q)
    polynomial = p.gamma == 0 and not p.betas
    if polynomial:
        deg = p.q + sum(1 for a in p.alphas if a)
        exact = p.C == 0 or deg < N
    else:
        exact = p.C == 0
    acc = SeriesPrefix(acc.coeffs, N, exact)
    return CoeffSeq(acc, "aswe", p.to_json())


def e1_coefficients(qlist: Sequence[RatLike], N: int) -> list[Fraction]:
    """a_0 = a_1 = 1 and a_k = 1 / (q_2^(k-1) q_3^(k-2) ... q_k)."""
    qs = [as_rat(q) for q in qlist]
    for q in qs:
        if q <= 0:
            raise ValueError(f"q parameters must be positive, got {q}")
    if N - 2 > len(qs):
        raise ValueError(
            f"N={N} needs q_2..q_{N - 1} ({N - 2} values) but only {len(qs)} were given"
        )
    out = [Fraction(1), Fraction(1)][:N]
    # a_k = a_{k-1} / (q_2 q_3 ... q_k)
    running = Fraction(1)
    for k in range(2, N):
        running *= qs[k - 2]
        out.append(out[-1] / running)
    return out


def expand_e1(qlist: Sequence[RatLike], N: int) -> CoeffSeq:
    if N < 1:
        raise ValueError("N must be at least 1")
    coeffs = e1_coefficients(qlist, N)
    return CoeffSeq(
        SeriesPrefix(tuple(coeffs), N, False), "e1", {"q": [format_rat(as_rat(q)) for q in qlist]}
    )


def partial_theta(a: RatLike, N: int) -> CoeffSeq:
    """Coefficients a^(-j^2) of the partial theta function."""
    a = as_rat(a)
    if a <= 1:
        raise ValueError(f"partial theta needs a > 1, got {a}")
    if N < 1:
        raise ValueError("N must be at least 1")
    coeffs = tuple(a ** (-(j * j)) for j in range(N))
    return CoeffSeq(SeriesPrefix(coeffs, N, False), "partial_theta", {"a": format_rat(a)})


L1_FAMILY_NAMES = (
    "ones",
    "k",
    "k_plus_1",
    "geometric_sum_c",
    "geometric_sum_c_shifted",
    "one_then_d_plus_1",
    "delayed_step",
)


def lemma_l1_sequences(c: RatLike, d: RatLike, n: int, N: int) -> list[CoeffSeq]:
    """The seven test sequences, each TP-infinity by its rational generating function.

    1/(1-z), z/(1-z)^2, 1/(1-z)^2, 1/((1-z)(1-cz)), z/((1-z)(1-cz)),
    (1+dz)/(1-z), z^(n+1)/(1-z).
    """
    c, d = as_rat(c), as_rat(d)
    if c <= 0 or c == 1:
        raise ValueError(f"c must be positive and different from 1, got {c}")
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if N < 1:
        raise ValueError("N must be at least 1")
    ks = range(N)
    families = [
        [Fraction(1)] * N,
        [Fraction(k) for k in ks],
        [Fraction(k + 1) for k in ks],
        [(c ** (k + 1) - 1) / (c - 1) for k in ks],
        [(c**k - 1) / (c - 1) for k in ks],
        [Fraction(1)] + [d + 1] * (N - 1),
        [Fraction(0) if k <= n else Fraction(1) for k in ks],
    ]
    params = {"c": format_rat(c), "d": format_rat(d), "n": n}
    return [
        CoeffSeq(SeriesPrefix(tuple(cs[:N]), N, False), "l1_family", {**params, "index": i + 1, "name": name})
        for i, (cs, name) in enumerate(zip(families, L1_FAMILY_NAMES))
    ]


def expand_descriptor(desc: dict) -> CoeffSeq:
    """Build a CoeffSeq from a JSON family descriptor."""
    family = desc.get("family")
    N = int(desc.get("N", 32))

    def rats(key: str) -> list[Fraction]:
        raw = desc.get(key, [])
        if isinstance(raw, str):
            raw = [x for x in raw.split(",") if x.strip()]
        return [parse_rat(x) if isinstance(x, str) else as_rat(x) for x in raw]

    def rat(key: str, default: RatLike) -> Fraction:
        raw = desc.get(key, default)
        return parse_rat(raw) if isinstance(raw, str) else as_rat(raw)

    if family == "aswe":
        params = ASWEParams(
            C=rat("C", 1),
            q=int(desc.get("q", 0)),
            gamma=rat("gamma", 0),
            alphas=tuple(rats("alphas")),
            betas=tuple(rats("betas")),
        )
        return expand_aswe(params, N)
    if family == "e1":
        return expand_e1(rats("q"), N)
    if family == "partial_theta":
        return partial_theta(rat("a", 2), N)
    if family == "l1":
        seqs = lemma_l1_sequences(rat("c", 2), rat("d", 1), int(desc.get("n", 0)), N)
        index = int(desc.get("index", 1))
        if not 1 <= index <= 7:
            raise ValueError(f"l1 family index must be in 1..7, got {index}")
        return seqs[index - 1]
    if family == "user":
        return CoeffSeq.user(rats("coeffs"), exact_tail=bool(desc.get("exact_tail", False)))
    raise ValueError(f"unknown family {family!r}; expected aswe, e1, partial_theta, l1 or user")

