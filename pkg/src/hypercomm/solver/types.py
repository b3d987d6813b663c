"""Result types shared by the decomposition strategies."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..exact_matrix import Mat, commutator
from ..field import Scalar
from ..hyperplane import Hyperplane

EASY_SHIFT = "easy_shift"
TRIANGULAR = "triangular_witness"
HESSENBERG = "hessenberg_witness"
LLD_SPAN = "lld_span"
SPECIAL3 = "special3"
CYCLIC_SEARCH = "cyclic_search"
EXHAUSTIVE = "exhaustive"
ZERO = "zero"
N2_BRACKET_LINE = "n2_bracket_line"

STRATEGIES = (EASY_SHIFT, LLD_SPAN, TRIANGULAR, HESSENBERG, SPECIAL3, CYCLIC_SEARCH, EXHAUSTIVE,
              ZERO, N2_BRACKET_LINE)

DECOMPOSED = "decomposed"
NOT_REPRESENTABLE = "not_representable"
EXHAUSTED = "exhausted"


class VerificationError(AssertionError):
    """A strategy produced a pair that does not solve the instance."""


@dataclass(frozen=True)
class Decomposition:
    """A verified pair ``(A1, A2)`` in ``H^2`` with ``[A1, A2] = target``."""

    A1: Mat
    A2: Mat
    strategy: str
    target: Mat
    hyperplane: Hyperplane
    attempts: int = 0
    seed: int | None = None

    def __post_init__(self):
        if commutator(self.A1, self.A2) != self.target:
            raise VerificationError(f"{self.strategy}: commutator does not match the target")
        if not self.hyperplane.contains(self.A1):
            raise VerificationError(f"{self.strategy}: A1 is not in the hyperplane")
        if not self.hyperplane.contains(self.A2):
            raise VerificationError(f"{self.strategy}: A2 is not in the hyperplane")

    @property
    def pair(self) -> tuple[Mat, Mat]:
        return self.A1, self.A2


@dataclass(frozen=True)
class LLDReport:
    """Local linear dependence verdict for ``(I, A, B)``.

    ``mode`` is ``linearly_dependent_triple``, ``rank_one_structure`` or
    ``none``; ``lam``, ``mu`` and ``direction`` are set only in the rank-one
    mode, where ``im(A - lam I) = im(B - mu I) = span(direction)``.
    """

    is_lld: bool
    mode: str
    lam: Scalar | None = None
    mu: Scalar | None = None
    direction: tuple | None = None
    exhaustive: bool = False


@dataclass
class SolveOutcome:
    status: str
    decomposition: Decomposition | None = None
    obstruction: Mat | None = None
    attempts: int = 0
    seed: int | None = None
    log: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == DECOMPOSED


@dataclass(frozen=True)
class N2Report:
    """Structure of ``[H, H]`` for a hyperplane of 2x2 matrices.

    Case ``"b"`` (identity outside ``H``): the bracket set is all of sl_2.
    Case ``"a"``: it is the line spanned by ``generator = [M, N]`` where
    ``(I, M, N)`` is a basis of ``H``.
    """

    case: str
    contains_identity: bool
    generator: Mat | None = None
    basis: tuple[Mat, ...] = ()
