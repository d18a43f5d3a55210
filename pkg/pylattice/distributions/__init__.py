from .laws import (
    cdf,
    density,
    exact_pmf_table,
    law_of,
    mean,
    mean_log,
    normalizer,
    quantile,
    sample,
    truncated_table,
)
from .qseries import bernoulli_sum_qnb, qpochhammer
from .spec import (
    DistributionSpec,
    Family,
    asym_laplace,
    beta_law,
    dirac,
    gamma_law,
    gig,
    inv_gamma,
    qnb,
    s_exp,
    sd_al,
    spec_from_json,
    spec_to_json,
    ss_geo,
    sstb_geo,
    st_exp,
    uniform01,
    validate,
)
