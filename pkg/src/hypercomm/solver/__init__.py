"""Decomposition of trace-zero matrices as commutators inside a hyperplane."""

from .lld import detect_lld
from .pipeline import (
    DEFAULT_BUDGET,
    ExhaustedError,
    analyze_n2,
    decompose,
    hessenberg_witness,
    thompson_decompose,
    triangular_witness,
)
from .search import commutator_pair, cyclic_search, exhaustive_search, joint_solve
from .special3 import special3_decompose, special3_eigenvalue
from .types import (
    DECOMPOSED,
    EXHAUSTED,
    NOT_REPRESENTABLE,
    STRATEGIES,
    Decomposition,
    LLDReport,
    N2Report,
    SolveOutcome,
    VerificationError,
)
from .witnesses import (
    Budget,
    construct_hessenberg_witness,
    construct_strict_upper_witness,
    power_traces_vanish,
    try_cyclic_witness,
)
