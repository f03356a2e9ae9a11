"""Compositional inverse of the Thue-Morse power series over F_2.

Submodules: ``fps`` (truncated power series), ``seqgen`` (the integer
sequences), ``automata`` (base-k automata), ``hankel`` (Hankel determinants),
``analysis`` (verification procedures) and ``cli``.
"""

from .fps import (QQ, TruncatedSeries, ptm_series, series_compose, series_inverse,
                  series_reverse, sp_series)
from .report import CheckReport
from .seqgen import SEQUENCES, iptm, iptm_batch, sequence

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "TruncatedSeries",
    "ptm_series",
    "sp_series",
    "series_compose",
    "series_inverse",
    "series_reverse",
    "iptm",
    "iptm_batch",
    "sequence",
    "SEQUENCES",
    "CheckReport",
]
