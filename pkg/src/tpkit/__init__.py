"""Exact checks of total positivity for coefficient sequences and their Hadamard products."""

from .exact import Poly, SeriesPrefix, format_rat, parse_rat
from .genfun import (
    ASWEParams,
    CoeffSeq,
    expand_aswe,
    expand_descriptor,
    expand_e1,
    lemma_l1_sequences,
    partial_theta,
)
from .preserver import (
    PreserverVerdict,
    conjecture_scan,
    decide_finite_preserver,
    decide_meromorphic_preserver,
    hadamard,
    l1_battery,
    lemma2_Q,
    tt2_witness,
)
from .realroots import hutchinson_check, is_real_rooted_nonpositive, sturm_count
from .tpcheck import TPReport, minor_scan, tp_infty_finite_decide

__all__ = [
    "ASWEParams",
    "CoeffSeq",
    "Poly",
    "PreserverVerdict",
    "SeriesPrefix",
    "TPReport",
    "conjecture_scan",
    "decide_finite_preserver",
    "decide_meromorphic_preserver",
    "expand_aswe",
    "expand_descriptor",
    "expand_e1",
    "format_rat",
    "hadamard",
    "hutchinson_check",
    "is_real_rooted_nonpositive",
    "l1_battery",
    "lemma2_Q",
    "lemma_l1_sequences",
    "minor_scan",
    "parse_rat",
    "partial_theta",
    "sturm_count",
    "tp_infty_finite_decide",
    "tt2_witness",
]
