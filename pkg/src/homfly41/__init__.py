"""SU(n) invariant of the figure-eight knot: exact sums, quantum dilogarithms and asymptotics."""

from .asymptotics import (AsymptoticReport, asymptotic_report, growth_rate, log_rhs_theorem_main,
                          phi_u, rhs_theorem_main, s_of_u, t_of_u)
from .errors import Homfly41Error
from .harness import ReportRow, SweepSpec, export, pole_domain_check, run_sweep, volume_evidence
from .invariant import U_MAX, InvariantValue, ModelParams, homfly_exact, homfly_qdilog_form
from .polylog import dilog, li2
from .qdilog import GammaParam, qdilog
from .saddle import phi2, phiN, solve_saddle

__version__ = "0.1.0"

__all__ = [
    "AsymptoticReport", "GammaParam", "Homfly41Error", "InvariantValue", "ModelParams",
    "ReportRow", "SweepSpec", "U_MAX", "asymptotic_report", "dilog", "export", "growth_rate",
    "homfly_exact", "homfly_qdilog_form", "li2", "log_rhs_theorem_main", "phi2", "phi_u",
    "phiN", "pole_domain_check", "qdilog", "rhs_theorem_main", "run_sweep", "s_of_u",
    "solve_saddle", "t_of_u", "volume_evidence",
]
