from .base import (
    ConfigError,
    CoverageError,
    DomainError,
    EmptySample,
    InfiniteSupport,
    InvalidParams,
    KindMismatch,
    NotConverged,
    NotInvertible,
    NotSynchronized,
    PrecheckFailed,
    RejectionStarved,
    SamplerOverflow,
    TooFewSamples,
    TooLarge,
    UnsupportedFamily,
    UnsupportedRegime,
)
from .distributions import DistributionSpec, Family, sample, spec_from_json
from .maps import LocalMap, MapFamily, MapKind, map_from_json
from .rng import RNGStream
