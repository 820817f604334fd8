"""Self-checking reproductions of the concrete computations behind each result.

Every target returns a JSON-ready dict with ``passed`` and the intermediate
values it was decided on.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial
from typing import Callable

from .exact import Poly, SeriesPrefix, format_rat, series_product
from .genfun import ASWEParams, expand_aswe, expand_e1, lemma_l1_sequences
from .preserver import (
    critical_points,
    h2n3_coefficient,
    hadamard,
    lemma2_Q,
    tt2_witness,
    verify_h2n3,
)
from .realroots import hutchinson_check, is_real_rooted_nonpositive, sturm_count
from .tpcheck import minor_scan, tp2_check

TARGETS = ("counterexample", "lemma2", "h-sign", "tt2-witness", "e1-hutchinson")


def _rand_rat(rng: random.Random, lo: int = 1, hi: int = 9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, hi))


def _step(name: str, ok: bool, **values) -> dict:
    return {"step": name, "ok": bool(ok), **values}


def counterexample(seed: int = 0) -> dict:
    N = 24
    b = expand_aswe(ASWEParams(C=Fraction(1, 2), betas=(Fraction(1), Fraction(1, 2))), N)
    k_seq = lemma_l1_sequences(2, 0, 0, N)[1]
    kb = hadamard(k_seq, b)
    expected = [Fraction(0), Fraction(3, 4), Fraction(7, 4), Fraction(45, 16), Fraction(31, 8)]
    steps = [
        _step(
            "b_k = 1 - 2^-(k+1)",
            all(b[k] == 1 - Fraction(1, 2 ** (k + 1)) for k in range(N)),
        ),
        _step("prefix of (k b_k)", list(kb.coeffs[:5]) == expected, prefix=[format_rat(c) for c in kb.coeffs[:5]]),
    ]
    # z f'(z) (1-z)^2 (2-z)^2 must be the polynomial z(3 - 2z)
    denom = Poly([1, -1]) ** 2 * Poly([2, -1]) ** 2
    order = 20
    numer = series_product(SeriesPrefix(kb.coeffs[:order], order, False), SeriesPrefix.from_poly(denom, order))
    numer_poly = Poly(numer.coeffs)
    steps.append(
        _step(
            "numerator of z f'(z) is z(3 - 2z)",
            numer_poly == Poly([0, 3, -2]),
            numerator=[format_rat(c) for c in numer_poly.coeffs],
            order=order,
        )
    )
    steps.append(_step("numerator has one positive zero (z = 3/2)", sturm_count(numer_poly, 0, None) == 1
                       and numer_poly(Fraction(3, 2)) == 0))
    scan = minor_scan(kb, 4, 16, 16)
    steps.append(_step("negative minor found", scan.violated, report=scan.to_json()))
    return {"target": "counterexample", "passed": all(s["ok"] for s in steps), "steps": steps}


def lemma2(seed: int = 0, samples: int = 3, order: int = 30) -> dict:
    rng = random.Random(seed)
    steps = []
    for k in range(2, 6):
        for _ in range(samples):
            beta, gamma, delta = _rand_rat(rng), _rand_rat(rng), _rand_rat(rng)
            try:
                res = lemma2_Q(k, beta, gamma, delta, check_order=order)
                ok = res.Q.degree is not None and res.Q.degree <= 2 * k - 2 and res.Q(0) * factorial(k - 1) == 1
                steps.append(_step(f"k={k}", ok, beta=format_rat(beta), gamma=format_rat(gamma),
                                   delta=format_rat(delta), match=True, order=order))
            except RuntimeError as exc:
                steps.append(_step(f"k={k}", False, error=str(exc), match=False, order=order))
    return {"target": "lemma2", "passed": all(s["ok"] for s in steps), "steps": steps}


def h_sign(seed: int = 0, samples: int = 5) -> dict:
    rng = random.Random(seed)
    h = h2n3_coefficient(3, 1, 1, 1, 100, Fraction(1, 100))
    steps = [_step("sign at n=3, gamma=100, delta=1/100", h < 0, value=format_rat(h), sign=-1 if h < 0 else 1)]
    for n in (3, 5):
        for _ in range(samples):
            Bs = [_rand_rat(rng) for _ in range(n)]
            beta, gamma, delta = _rand_rat(rng), _rand_rat(rng), _rand_rat(rng)
            res = verify_h2n3(n, Bs, beta, gamma, delta)
            steps.append(_step(f"closed form = assembled coefficient, n={n}", res["match"],
                               value=format_rat(res["closed_form"])))
    return {"target": "h-sign", "passed": all(s["ok"] for s in steps), "steps": steps}


def tt2(seed: int = 0, samples: int = 20) -> dict:
    rng = random.Random(seed)
    al1, al2 = critical_points(4)
    boundary = {
        "alpha1": al1.rational_value(),
        "alpha2": al2.rational_value(),
        "alpha1_over_b": (al1 / 4).rational_value(),
    }
    steps = [
        _step(
            "b = 4 boundary",
            boundary == {"alpha1": Fraction(-2, 3), "alpha2": Fraction(-2), "alpha1_over_b": Fraction(-1, 6)},
            **{k: format_rat(v) for k, v in boundary.items()},
        )
    ]
    done = 0
    while done < samples:
        a = Fraction(rng.randint(1, 400), rng.randint(1, 20))
        b = 4 + Fraction(rng.randint(0, 60), rng.randint(1, 10))
        q2 = 1 + Fraction(rng.randint(0, 30), rng.randint(1, 10))
        q3 = 1 + Fraction(rng.randint(0, 30), rng.randint(1, 10))
        try:
            w = tt2_witness(a, b, q2, q3)
        except ValueError:
            continue
        done += 1
        steps.append(_step("witness flags", w.all_flags, a=format_rat(a), b=format_rat(b),
                           q2=format_rat(q2), q3=format_rat(q3), flags=w.flags))
    return {"target": "tt2-witness", "passed": all(s["ok"] for s in steps), "steps": steps}


def e1_hutchinson(seed: int = 0, samples: int = 10) -> dict:
    rng = random.Random(seed)
    N = 8
    a = expand_e1([4] * (N - 2), N)
    ratio = hutchinson_check(a)
    steps = [_step("E1 ratios with q = 4", ratio.passes_hutchinson and all(r == 4 for r in ratio.ratios),
                   ratios=[format_rat(r) for r in ratio.ratios])]
    for _ in range(samples):
        params = ASWEParams(
            C=_rand_rat(rng),
            gamma=_rand_rat(rng),
            alphas=tuple(_rand_rat(rng) for _ in range(rng.randint(0, 2))),
            betas=tuple(_rand_rat(rng) / 10 for _ in range(rng.randint(0, 2))),
        )
        b = expand_aswe(params, N)
        image = hadamard(a, b)
        ok = tp2_check(b) and hutchinson_check(image).passes_hutchinson
        ok = ok and is_real_rooted_nonpositive(Poly(image.coeffs)).all_real
        steps.append(_step("image passes the ratio test and its section is real-rooted", ok,
                           params=params.to_json()))
    return {"target": "e1-hutchinson", "passed": all(s["ok"] for s in steps), "steps": steps}


RUNNERS: dict[str, Callable[..., dict]] = {
    "counterexample": counterexample,
    "lemma2": lemma2,
    "h-sign": h_sign,
    "tt2-witness": tt2,
    "e1-hutchinson": e1_hutchinson,
}


def run(target: str, seed: int = 0) -> dict:
    if target not in RUNNERS:
        raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
    return RUNNERS[target](seed=seed)
