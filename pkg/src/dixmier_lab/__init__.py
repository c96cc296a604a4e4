"""Numerical experiments on Dixmier traces of Hankel operators on weighted
Bergman spaces, Macaev-ideal sequence norms and Besov/Hardy limits."""

__version__ = "0.1.0"

from .bergman import WeightParam, disk_rule, circle_rule, moment, onb_norm, project_monomial, kernel_eval
from .hankel import BidegreeSymbol, gram, singular_values, monomial_spectrum, m_alpha_diag
from .macaev import macaev_norm, zeta_norm, trace_slope, trace_zeta, sandwich_check
from .spaces import PowerSeries, besov_norm, besov_limit, hardy_norm, hprime_norm
from .parser import parse_symbol, render

__all__ = [
    "WeightParam", "disk_rule", "circle_rule", "moment", "onb_norm", "project_monomial", "kernel_eval",
    "BidegreeSymbol", "gram", "singular_values", "monomial_spectrum", "m_alpha_diag",
    "macaev_norm", "zeta_norm", "trace_slope", "trace_zeta", "sandwich_check",
    "PowerSeries", "besov_norm", "besov_limit", "hardy_norm", "hprime_norm",
    "parse_symbol", "render",
]
