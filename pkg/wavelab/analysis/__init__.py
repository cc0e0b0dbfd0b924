"""
Measurements on the surface of Omega, recovery of the linear map and
discrete energy bookkeeping.
"""

from .energy import (
    calibrate_gronwall_constant,
    calibrate_higher_order_constant,
    data_norm,
    energy_drift,
    energy_ledger,
    estimate_a_beta,
    estimate_a_tilde,
    gronwall_check,
    higher_order_check,
    higher_order_ledger,
)
from .io import trajectory_summary, write_frame_csv, write_ledger_csv, write_trace_csv
from .maps import lambda_lin_map, lambda_map, recover_linear_map
from .models import (
    BoundaryTrace,
    EnergyLedger,
    GronwallReport,
    HigherOrderLedger,
    RecoveryReport,
    TraceBoundReport,
)
from .trace import (
    check_trace_bound,
    fit_trace_constant,
    inner_grid,
    interior_h1_time_norm,
    trace,
    trace_ensemble,
    trace_level_norm,
    trace_norm,
)

__all__ = [
    "BoundaryTrace",
    "EnergyLedger",
    "GronwallReport",
    "HigherOrderLedger",
    "RecoveryReport",
    "TraceBoundReport",
    "trace",
    "trace_norm",
    "trace_level_norm",
    "inner_grid",
    "interior_h1_time_norm",
    "trace_ensemble",
    "fit_trace_constant",
    "check_trace_bound",
    "lambda_map",
    "lambda_lin_map",
    "recover_linear_map",
    "energy_ledger",
    "energy_drift",
    "data_norm",
    "estimate_a_tilde",
    "calibrate_gronwall_constant",
    "gronwall_check",
    "higher_order_ledger",
    "estimate_a_beta",
    "calibrate_higher_order_constant",
    "higher_order_check",
    "write_frame_csv",
    "write_trace_csv",
    "write_ledger_csv",
    "trajectory_summary",
]
