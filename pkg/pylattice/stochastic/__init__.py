from .bruteforce import (
    ORACLE_SIZE,
    PolymerMode,
    dlpp_bruteforce,
    dlpp_recursion,
    polymer_bruteforce,
    polymer_recursion,
)
from .field import QuadrantField, load_binary
from .presets import (
    InhomogeneousSetup,
    QuadrantSetup,
    inhomogeneous_hsv,
    inhomogeneous_udkdv,
    stationary_dlpp,
    stationary_edge_polymer,
    stationary_hsv,
    stationary_site_polymer,
)
from .quadrant import (
    hsv_run,
    partition_from_increments,
    quadrant_from_kernel,
    run_quadrant,
    run_quadrant_inhomogeneous,
    run_quadrant_replicas,
)
