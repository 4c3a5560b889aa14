"""Exact finite computations for combinatorial independence in symbolic dynamics."""
from .constructions import (
    ToeplitzShift,
    ToeplitzSpec,
    WapShift,
    WapSpec,
    build_toeplitz,
    build_wap,
    check_toeplitz_lemmas,
    gap_condition,
    toeplitz_jk,
    toeplitz_problem,
    toeplitz_window,
    verify_toeplitz,
    wap_problem,
)
from .covers import OpenCover, TraceSet, comb_entropy_profile, f_s, is_cover, join_min_subcover, trace
from .errors import BudgetError, CombindepError, FormatError, HorizonError, InvariantError
from .independence import (
    IndependenceProblem,
    decompose_independence,
    density_profile,
    is_independence_set,
    joint_meeting_time,
    max_independence_subset,
)
from .shattering import (
    count_shattered,
    is_fully_shattered,
    key_lemma_constants,
    key_lemma_witness,
    km_witness,
    largest_shattered,
    two_valued_decompose,
)
from .symbolic import (
    SFT,
    ClopenSet,
    Cylinder,
    FullShift,
    ProductShift,
    clopen_product,
    feasible,
    full_shift,
    golden_mean,
    language,
    memberships,
    product,
    shift_preimage,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "build_toeplitz",
    "build_wap",
    "check_toeplitz_lemmas",
    "clopen_product",
    "ClopenSet",
    "comb_entropy_profile",
    "CombindepError",
    "count_shattered",
    "Cylinder",
    "decompose_independence",
    "density_profile",
    "f_s",
    "feasible",
    "FormatError",
    "full_shift",
    "FullShift",
    "gap_condition",
    "golden_mean",
    "HorizonError",
    "IndependenceProblem",
    "InvariantError",
    "is_cover",
    "is_fully_shattered",
    "is_independence_set",
    "join_min_subcover",
    "joint_meeting_time",
    "key_lemma_constants",
    "key_lemma_witness",
    "km_witness",
    "language",
    "largest_shattered",
    "max_independence_subset",
    "memberships",
    "OpenCover",
    "product",
    "ProductShift",
    "SFT",
    "shift_preimage",
    "toeplitz_jk",
    "toeplitz_problem",
    "toeplitz_window",
    "ToeplitzShift",
    "ToeplitzSpec",
    "trace",
    "TraceSet",
    "two_valued_decompose",
    "verify_toeplitz",
    "wap_problem",
    "WapShift",
    "WapSpec",
]
