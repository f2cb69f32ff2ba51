"""Executable 3SUM reductions to dihedral-rotation feasibility and their ground truth."""
from .canonical import (
    CanonicalChain,
    FoldError,
    Hinge,
    HingeFoldPlan,
    build_canonical_chain,
    fold_hinge,
    plan_fold,
)
from .dynamic import Encoding, encode_sets, run_dynamic_reduction
from .scaling import ScaledSets, pad_and_scale
from .static import ConstructionError, StaticConstruction, build_static_chain, run_static_reduction
from .threesum import (
    SOUNDNESS_BOUND,
    SoundnessError,
    ThreeSumInstance,
    from_prime,
    solve_threesum_cubic,
    solve_threesum_oracle,
    threesum_single,
    to_prime,
)
from .transcript import QueryRecord, ReductionTranscript

__all__ = [
    "CanonicalChain", "ConstructionError", "Encoding", "FoldError", "Hinge", "HingeFoldPlan",
    "QueryRecord", "ReductionTranscript", "SOUNDNESS_BOUND", "ScaledSets", "SoundnessError",
    "StaticConstruction", "ThreeSumInstance", "build_canonical_chain", "build_static_chain",
    "encode_sets", "fold_hinge", "from_prime", "pad_and_scale", "plan_fold",
    "run_dynamic_reduction", "run_static_reduction", "solve_threesum_cubic",
    "solve_threesum_oracle", "threesum_single", "to_prime",
]
