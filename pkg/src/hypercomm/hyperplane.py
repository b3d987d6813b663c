"""Hyperplanes ``{B}^perp = {M : tr(BM) = 0}`` of the matrix space."""

from __future__ import annotations

from .exact_matrix import Mat, ShapeError, elementary, inverse, trace_pairing
from .field import Scalar


class Hyperplane:
    """The hyperplane of matrices orthogonal to a nonzero normal ``B``.

    Normals are kept as given (no rescaling); two hyperplanes are equal when
    their normals are proportional.
    """

    __slots__ = ("normal", "contains_identity", "_direction")

    def __init__(self, normal: Mat):
        if normal.is_zero():
            raise ValueError("the normal of a hyperplane must be nonzero")
        self.normal = normal
        self.contains_identity = normal.trace() == 0
        self._direction = None

    @property
    def field(self):
        return self.normal.field

    @property
    def n(self) -> int:
        return self.normal.n

    def pairing(self, M: Mat):
        """``tr(BM)`` as a raw value."""
        return trace_pairing(self.normal, M)

    def contains(self, M: Mat) -> bool:
        return self.pairing(M) == 0

    __contains__ = contains

    def direction(self) -> Mat:
        """A fixed matrix outside the hyperplane: ``E_{i,j}`` for the first
        (row-major) nonzero ``b_{j,i}``."""
        if self._direction is None:
            B = self.normal
            for i in range(self.n):
                for j in range(self.n):
                    if B.rows[j][i] != 0:
                        self._direction = elementary(self.field, self.n, i + 1, j + 1)
                        return self._direction
        return self._direction

    def project(self, X: Mat) -> Mat:
        """Land ``X`` on the hyperplane along :meth:`direction`."""
        return land_on(self, X, self.direction())

    def random_element(self, rng) -> Mat:
        """Uniform element (for finite fields) of the hyperplane."""
        return self.project(Mat.random(self.field, self.n, rng))

    def basis(self) -> list[Mat]:
        """A basis of the ``n^2 - 1``-dimensional hyperplane."""
        F, n = self.field, self.n
        D = self.direction()
        d = self.pairing(D)
        out = []
        for i in range(n):
            for j in range(n):
                E = elementary(F, n, i + 1, j + 1)
                if E == D:
                    continue
                c = self.pairing(E)
                out.append(E if c == 0 else E - D.scale(F.div(c, d)))
        return out

    def same_as(self, other: "Hyperplane") -> bool:
        B, C = self.normal, other.normal
        if B.field != C.field or B.n != C.n:
            return False
        flat_b, flat_c = B.flat(), C.flat()
        k = next(i for i, v in enumerate(flat_b) if v != 0)
        ratio = B.field.div(flat_c[k], flat_b[k])
        return C == B.scale(ratio)

    def __repr__(self) -> str:
        return f"Hyperplane(normal={self.normal!r})"


def make_hyperplane(B: Mat) -> Hyperplane:
    return Hyperplane(B)


def contains(H: Hyperplane, M: Mat) -> bool:
    return H.contains(M)


def land_on(H: Hyperplane, X: Mat, C: Mat) -> Mat:
    """The unique point of ``X + K*C`` inside ``H``; ``C`` must lie outside ``H``.

    If ``C`` commutes with some ``M`` then ``[M, result] == [M, X]``.
    """
    F = H.field
    d = H.pairing(C)
    if d == 0:
        raise ValueError("landing direction lies in the hyperplane")
    t = F.neg(F.div(H.pairing(X), d))
    return X if t == 0 else X + C.scale(t)


def shift_normal(H: Hyperplane, A: Mat, lam) -> Hyperplane:
    """Hyperplane with normal ``B - lam*A``.

    For trace-zero targets ``A`` the set of pairs in ``H^2`` with commutator
    ``A`` is the same for both hyperplanes.
    """
    lam = H.field.coerce(lam)
    new = H.normal - A.scale(lam)
    if new.is_zero():
        raise ValueError("shifted normal vanishes (B is a multiple of A)")
    return Hyperplane(new)


def conjugate_hyperplane(H: Hyperplane, P: Mat) -> Hyperplane:
    """Hyperplane with normal ``P^{-1} B P``.

    Solving the instance ``(P^{-1} A P, P^{-1} B P)`` and mapping the pair back
    with ``X -> P X P^{-1}`` solves ``(A, B)``.
    """
    return Hyperplane(inverse(P) @ H.normal @ P)


def scalar_adjust_pair(H: Hyperplane, A1: Mat, A2: Mat) -> tuple[Mat, Mat]:
    """Add scalar matrices to both members so they land in ``H``.

    Requires ``I_n`` outside ``H``; the commutator is unchanged.
    """
    if H.contains_identity:
        raise ValueError("the identity lies in the hyperplane; scalar shift is inapplicable")
    if A1.field != H.field or A1.n != H.n or A2.field != H.field or A2.n != H.n:
        raise ShapeError("pair does not match the hyperplane")
    I = Mat.identity(H.field, H.n)
    return land_on(H, A1, I), land_on(H, A2, I)


def scalar_value(H: Hyperplane, M: Mat) -> Scalar:
    return Scalar(H.field, H.pairing(M))
