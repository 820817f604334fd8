"""Toeplitz windows and exact minor scans for TP_m / TP-infinity decisions.

The scan exploits two facts about the matrix ||a_{j-i}||:

* a minor only depends on its index sets up to a common shift, so the
  lexicographically first representative of each class (row set starting at
  0) stands for the whole class;
* the matrix is upper triangular, so a minor with rows i_1 < ... < i_k and
  columns j_1 < ... < j_k vanishes unless i_l <= j_l for every l.

Both reductions keep the "first negative minor in (size, rows, cols) order"
witness identical to the one a naive scan of the full window would report.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, lcm
from typing import Iterator, Sequence

from .exact import Poly, SeriesPrefix, format_rat
from .genfun import CoeffSeq, as_prefix
from .realroots import RootReport, is_real_rooted_nonpositive

DEFAULT_M = 4
DEFAULT_WINDOW = 16
DEFAULT_CAP = 2_000_000

VIOLATED = "violated"
CONSISTENT = "consistent_up_to"
EXACT_TP_INF = "exact_tp_infinity"


class BudgetExceeded(ValueError):
    def __init__(self, needed: int, cap: int):
        super().__init__(
            f"minor scan needs {needed} determinants, above the cap of {cap}; reduce m or the window"
        )
        self.needed = needed
        self.cap = cap


def default_cap() -> int:
    raw = os.environ.get("TPKIT_BUDGET")
    if raw:
        try:
            return int(float(raw))
        except ValueError:
            raise ValueError(f"TPKIT_BUDGET must be an integer, got {raw!r}") from None
    return DEFAULT_CAP


@dataclass(frozen=True)
class ToeplitzWindow:
    entries: tuple[tuple[Fraction, ...], ...]
    R: int
    C: int
    source: SeriesPrefix = field(repr=False, compare=False)

    def minor_matrix(self, rows: Sequence[int], cols: Sequence[int]) -> list[list[Fraction]]:
        return [[self.entries[i][j] for j in cols] for i in rows]


@dataclass(frozen=True)
class Witness:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    value: Fraction

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols), "value": format_rat(self.value)}


@dataclass(frozen=True)
class TPReport:
    verdict: str
    m: int
    R: int
    C: int
    witness: Witness | None = None
    min_minor: Fraction | None = None
    minors_evaluated: int = 0
    failing_poly: Poly | None = None
    note: str = ""

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "m": self.m,
            "R": self.R,
            "C": self.C,
            "witness": None if self.witness is None else self.witness.to_json(),
            "min_minor": None if self.min_minor is None else format_rat(self.min_minor),
        }
        if self.failing_poly is not None:
            out["failing_poly"] = [format_rat(c) for c in self.failing_poly.coeffs]
        if self.note:
            out["note"] = self.note
        return out


def toeplitz_window(s: CoeffSeq | SeriesPrefix, R: int, C: int) -> ToeplitzWindow:
    """R x C corner of ||a_{j-i}||, with a_k = 0 for k < 0."""
    p = as_prefix(s)
    if R < 1 or C < 1:
        raise ValueError(f"window dimensions must be positive, got {R}x{C}")
    if C > p.N and not p.exact_tail:
        raise ValueError(
            f"window needs coefficients up to index {C - 1} but only {p.N} are known "
            "and the tail is not exact"
        )
    entries = tuple(tuple(p.coeff(j - i) for j in range(C)) for i in range(R))
    return ToeplitzWindow(entries, R, C, p)


# --------------------------------------------------------------------------
# Determinant kernel


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            f = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - f * row_k[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def det_exact(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a rational matrix: clear denominators, then Bareiss."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    den = 1
    for row in matrix:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    ints = [[int(Fraction(x) * den) for x in row] for row in matrix]
    return Fraction(bareiss_det(ints), den**n)


def _lift(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    return [int(c * den) for c in coeffs], den


# --------------------------------------------------------------------------
# Enumeration


def _dominating(rows: Sequence[int], C: int) -> Iterator[tuple[int, ...]]:
    """Increasing column tuples j with rows[l] <= j[l] < C, in lex order."""
    k = len(rows)
    cols = [0] * k

    def rec(level: int, start: int) -> Iterator[tuple[int, ...]]:
        if level == k:
            yield tuple(cols)
            return
        lo = max(start, rows[level])
        for j in range(lo, C - (k - 1 - level)):
            cols[level] = j
            yield from rec(level + 1, j + 1)

    return rec(0, 0)


def _count_dominating(rows: Sequence[int], C: int) -> int:
    # ways[j] = number of valid prefixes ending with column j
    ways = [1 if j >= rows[0] else 0 for j in range(C)]
    for level in range(1, len(rows)):
        new = [0] * C
        acc = 0
        for j in range(C):
            if j >= rows[level]:
                new[j] = acc
            acc += ways[j]
        ways = new
    return sum(ways)


def _canonical_row_sets(k: int, R: int) -> Iterator[tuple[int, ...]]:
    for rest in combinations(range(1, R), k - 1):
        yield (0,) + rest


def count_canonical_minors(m: int, R: int, C: int) -> int:
    """Determinants a scan of orders 1..m on an R x C window actually evaluates."""
    return sum(
        _count_dominating(rows, C) for k in range(1, m + 1) for rows in _canonical_row_sets(k, R)
    )


def count_all_minors(m: int, R: int, C: int) -> int:
    return sum(comb(R, k) * comb(C, k) for k in range(1, m + 1))


class _ColumnIndex:
    """Integer ids for the k-subsets of range(C), in lex order, plus the
    last-row Laplace expansion of each subset against the (k-1)-subsets."""

    def __init__(self, k: int, C: int):
        self.cols = list(combinations(range(C), k))
        self.ids = {c: i for i, c in enumerate(self.cols)}
        if k == 1:
            self.expansion: list[tuple[tuple[int, int, int], ...]] = []
            return
        smaller = {c: i for i, c in enumerate(combinations(range(C), k - 1))}
        first_sign = 1 if (k - 1) % 2 == 0 else -1
        self.expansion = [
            tuple(
                (cols[pos], first_sign * (-1) ** pos, smaller[cols[:pos] + cols[pos + 1 :]])
                for pos in range(k)
            )
            for cols in self.cols
        ]


@lru_cache(maxsize=None)
def _column_index(k: int, C: int) -> _ColumnIndex:
    return _ColumnIndex(k, C)


@lru_cache(maxsize=8192)
def _dominating_ids(rows: tuple[int, ...], C: int) -> tuple[int, ...]:
    ids = _column_index(len(rows), C).ids
    return tuple(ids[c] for c in _dominating(rows, C))


def _scan_order(
    a: Sequence[int], k: int, R: int, C: int, prev: dict | None
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], list[int], _ColumnIndex]]:
    """Yield (rows, column ids, minors by column id, index) per canonical row set.

    Order-k minors come from the order-(k-1) minors of the leading k-1 rows by
    expanding along the last row. Column sets outside the dominance pattern are
    never evaluated and stay zero, which they are exactly.
    """
    index = _column_index(k, C)
    size = len(index.cols)
    for rows in _canonical_row_sets(k, R):
        dom = _dominating_ids(rows, C)
        values = [0] * size
        if k == 1:
            for cid in dom:
                values[cid] = a[index.cols[cid][0]]
            yield rows, dom, values, index
            continue
        sub = prev[rows[:-1]]
        last = rows[-1]
        expansion = index.expansion
        for cid in dom:
            d = 0
            for j, sign, sid in expansion[cid]:
                if j >= last:
                    entry = a[j - last]
                    if entry:
                        sm = sub[sid]
                        if sm:
                            d += sign * entry * sm
            values[cid] = d
        yield rows, dom, values, index


def minor_scan(
    s: CoeffSeq | SeriesPrefix,
    m: int = DEFAULT_M,
    R: int = DEFAULT_WINDOW,
    C: int = DEFAULT_WINDOW,
    cap: int | None = None,
    stop_at_first: bool = True,
) -> TPReport:
    """Scan every minor of order <= m in the R x C window.

    The witness is the first negative minor in (size, rows, cols) order. With
    ``stop_at_first`` the scan ends there and ``min_minor`` covers only the
    minors seen so far.
    """
    window = toeplitz_window(s, R, C)
    if not 1 <= m <= min(R, C):
        raise ValueError(f"order m={m} must lie in 1..min(R, C)={min(R, C)}")
    cap = default_cap() if cap is None else cap
    needed = count_canonical_minors(m, R, C)
    if needed > cap:
        raise BudgetExceeded(needed, cap)

    a, den = _lift([window.source.coeff(k) for k in range(C)])
    # any window with two rows holds the structurally zero entry (1, 0)
    min_num: Fraction | None = Fraction(0) if R >= 2 else None
    witness: Witness | None = None
    evaluated = 0
    prev: dict | None = None
    for k in range(1, m + 1):
        scale = den**k
        current: dict = {}
        min_d: int | None = None
        for rows, dom, values, index in _scan_order(a, k, R, C, prev):
            if k < m:
                current[rows] = values
            if not dom:
                continue
            low = min(values[cid] for cid in dom)
            if low < 0 and witness is None:
                pos = next(p for p, cid in enumerate(dom) if values[cid] < 0)
                cid = dom[pos]
                witness = Witness(rows, index.cols[cid], Fraction(values[cid], scale))
                if stop_at_first:
                    evaluated += pos + 1
                    low = min(values[c] for c in dom[: pos + 1])
                    min_d = low if min_d is None else min(min_d, low)
                    break
            evaluated += len(dom)
            min_d = low if min_d is None else min(min_d, low)
        if min_d is not None:
            value = Fraction(min_d, scale)
            if min_num is None or value < min_num:
                min_num = value
        if witness is not None and stop_at_first:
            return TPReport(VIOLATED, m, R, C, witness, min_num, evaluated)
        prev = current
    verdict = VIOLATED if witness is not None else CONSISTENT
    return TPReport(verdict, m, R, C, witness, min_num, evaluated)


# --------------------------------------------------------------------------
# Decisions


def tp2_check(s: CoeffSeq | SeriesPrefix | Sequence) -> bool:
    """Log-concavity with contiguous support over the known prefix."""
    coeffs = list(as_prefix(s).coeffs) if not isinstance(s, (list, tuple)) else [Fraction(c) for c in s]
    if any(c < 0 for c in coeffs):
        return False
    support = [k for k, c in enumerate(coeffs) if c != 0]
    if not support:
        return True
    lo, hi = support[0], support[-1]
    if hi - lo + 1 != len(support):
        return False
    return all(coeffs[k] ** 2 >= coeffs[k - 1] * coeffs[k + 1] for k in range(lo + 1, hi))


WITNESS_SEARCH = ((3, 8), (4, 10), (5, 12))


def tp_infty_finite_decide(s: CoeffSeq | SeriesPrefix, witness_search: bool = True) -> TPReport:
    """Exact TP-infinity decision for a finitely supported nonnegative sequence.

    The verdict rests on real-rootedness of the polynomial part (the leading
    zero run is the z^q factor). A small minor scan backs it up: it fills
    ``min_minor`` and, for a violation, looks for a concrete negative minor.
    """
    p = as_prefix(s)
    if not p.exact_tail:
        raise ValueError("an exact TP-infinity decision needs a finitely supported (exact_tail) sequence")
    if any(c < 0 for c in p.coeffs):
        raise ValueError("coefficients must be nonnegative")
    poly = p.to_poly()
    if poly.is_zero():
        return TPReport(EXACT_TP_INF, 0, 0, 0, None, Fraction(0), note="zero sequence")
    report: RootReport = is_real_rooted_nonpositive(poly)
    deg = poly.degree
    if report.all_real:
        if not witness_search:
            return TPReport(EXACT_TP_INF, 0, 0, 0, note="decided by real-rootedness")
        m, w = WITNESS_SEARCH[0]
        scan = minor_scan(p, min(m, w), w, w, cap=10**7, stop_at_first=False)
        if scan.violated:
            raise AssertionError(f"real-rooted polynomial produced a negative minor: {scan.witness}")
        return TPReport(
            EXACT_TP_INF, scan.m, scan.R, scan.C, None, scan.min_minor, scan.minors_evaluated,
            note=f"real-rooted of degree {deg}",
        )
    last = None
    if witness_search:
        for m, w in WITNESS_SEARCH:
            last = minor_scan(p, m, w, w, cap=10**7)
            if last.violated:
                break
    note = f"polynomial of degree {deg} has {deg - report.real_root_count} non-real zeros"
    if last is None:
        return TPReport(VIOLATED, 0, 0, 0, failing_poly=poly, note=note)
    if not last.violated:
        note += "; no negative minor found within the witness-search budget"
    return TPReport(
        VIOLATED, last.m, last.R, last.C, last.witness, last.min_minor, last.minors_evaluated,
        failing_poly=poly, note=note,
    )
