from .kdv import (
    Symmetry,
    SymmetryKind,
    a_dt,
    a_dt_inv,
    a_udt,
    a_udt_inv,
    apply_symmetry,
    conjugated_kdv,
    dkdv_map,
    dual_map,
    k_dt_map,
    k_udt_map,
    symmetry_image,
    udkdv_map,
)
from .kernels import hsv_thresholds, quadrant_kernel, r_dlpp, r_hsv, r_rpe, r_rps
from .local_map import (
    LocalMap,
    MapFamily,
    MapKind,
    dkdv,
    hsv_kernel,
    map_from_json,
    map_to_json,
    plain,
    rpe_kernel,
    rpe_star,
    udkdv,
    validate_map,
)
from .toda import (
    InvolutionMap,
    dtoda_map,
    dtoda_star,
    dtoda_star_inv,
    rpe_map,
    rpe_star_inv,
    rpe_star_map,
    three_point_involution,
    udtoda_map,
    udtoda_star,
    udtoda_star_inv,
)
