from .balance import check_detailed_balance, check_detailed_balance_star, check_power
from .dynamics import burke_field, check_burke, check_ergodicity_reconstruction, check_invariance
from .limits import (
    DEFAULT_EPS,
    CorrespondenceSide,
    LimitTarget,
    check_correspondence,
    check_ultradiscretization,
    conjugation_error,
    monotone_ks,
)
from .measures import carrier_fixed_point, predicted_carrier, product_table, pushforward_table
from .prechecks import precheck_ergodicity, precheck_invariance
from .report import (
    CSV_HEADER,
    DEFAULT_ALPHA,
    TestReport,
    report_from_p_values,
    reports_to_csv_rows,
    reports_to_json,
)
from .stationarity import check_inhomogeneous, check_quadrant_stationarity
from .stats import (
    autocorrelation,
    chi2_goodness_of_fit,
    chi2_independence,
    ks_one_sample,
    ks_two_sample,
    marginal_p_value,
    tv_distance_exact,
)
