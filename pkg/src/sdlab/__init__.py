"""Exact Stanley depth, depth, Hilbert series and polarization of
quotients I/J of monomial ideals, with certified poset-map machinery."""

from .homology import depth, koszul_slice_ranks, projective_dimension
from .kernels import BACKEND
from .monomial import (
    HilbertSeries,
    ModuleSpec,
    MonomialIdeal,
    Ring,
    canonical_bound,
    format_module_spec,
    hilbert_series,
    ideal_contains,
    minimal_generators,
    parse_module_spec,
)
from .polarization import (
    depolarize_partition,
    full_polarize,
    one_step_polarize,
    polarize_direct,
    transfer_decomposition,
)
from .posetmaps import (
    IdentityMap,
    MinMap,
    OneDimMap,
    PolarStepMap,
    ProductMap,
    ShiftDownMap,
    ShiftUpMap,
    TableMap,
    classify_map,
    evaluate_map,
    product_map,
    pullback_ideal,
    pushforward_ideal,
    split_join_meet_map,
    verify_depth_change,
)
from .stanley import (
    Interval,
    IntervalPartition,
    StanleyDecomposition,
    characteristic_poset,
    exact_cover_by_intervals,
    partition_to_decomposition,
    rho,
    sdepth,
    validate_decomposition,
)
from .verify import random_spec, run_verification

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "HilbertSeries",
    "IdentityMap",
    "Interval",
    "IntervalPartition",
    "MinMap",
    "ModuleSpec",
    "MonomialIdeal",
    "OneDimMap",
    "PolarStepMap",
    "ProductMap",
    "Ring",
    "ShiftDownMap",
    "ShiftUpMap",
    "StanleyDecomposition",
    "TableMap",
    "canonical_bound",
    "characteristic_poset",
    "classify_map",
    "depolarize_partition",
    "depth",
    "evaluate_map",
    "exact_cover_by_intervals",
    "format_module_spec",
    "full_polarize",
    "hilbert_series",
    "ideal_contains",
    "koszul_slice_ranks",
    "minimal_generators",
    "one_step_polarize",
    "parse_module_spec",
    "partition_to_decomposition",
    "polarize_direct",
    "product_map",
    "projective_dimension",
    "pullback_ideal",
    "pushforward_ideal",
    "random_spec",
    "rho",
    "run_verification",
    "sdepth",
    "split_join_meet_map",
    "transfer_decomposition",
    "validate_decomposition",
    "verify_depth_change",
]
