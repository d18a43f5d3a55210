from .dynamics import (
    default_margin,
    evolve_multi,
    evolve_one_step,
    evolve_reverse,
    reconstruct_from_carrier,
)
from .solver import (
    carrier_from_boundary,
    default_seeds,
    default_tolerance,
    solve_carrier,
    solve_carrier_contfrac,
    solve_carrier_coupled,
    solve_carrier_dtoda,
    solve_carrier_udtoda,
)
from .window import CarrierPath, LatticeWindow, SpaceTimeField, sample_window, window_from_json
