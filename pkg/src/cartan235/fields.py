"""Vector fields with symbolic components, Lie brackets and growth vectors.

Bracket convention: [X, Y] = X(Y) - Y(X), componentwise

    [X, Y]^k = sum_i  X^i d_i Y^k  -  Y^i d_i X^k.

A rank-two distribution on a 5-chart is spanned by two fields X, Y; it
has Cartan type at p when the spans

    {X, Y},   {X, Y, [X,Y]},   {X, Y, [X,Y], [X,[X,Y]], [Y,[X,Y]]}

have ranks (2, 3, 5) there.  The determinant of the 5x5 matrix with
those five columns is the quantitative margin; for the Monge model

    X = (1, x3, x4, 0, x4^2),   Y = (0, 0, 0, 1, 0)

it is constant with |det| = 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import expr as ex
from .errors import DegenerateFrame, DimensionMismatch, DomainError

__all__ = [
    "VectorField", "Distribution2", "GrowthVector", "lie_bracket",
    "fd_bracket", "growth_vector", "cartan_determinant", "rank_with_tol",
    "monge_distribution", "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-9

MIN_DIM = 2
MAX_DIM = ex.MAX_VARS


@dataclass(frozen=True)
class VectorField:
    """A vector field on a dim-chart; components are scalar expressions."""

    components: tuple[ex.ScalarExpr, ...]
    dim: int

    def __post_init__(self):
        if not MIN_DIM <= self.dim <= MAX_DIM:
            raise ValueError(f"chart dimension must be {MIN_DIM}..{MAX_DIM}")
        if len(self.components) != self.dim:
            raise DimensionMismatch(
                f"{len(self.components)} components on a {self.dim}-chart"
            )
        for c in self.components:
            used = ex.max_slot(c) + 1
            if used > self.dim:
                raise DimensionMismatch(
                    f"component references x{used} on a {self.dim}-chart"
                )

    @classmethod
    def from_strings(cls, components, dim: int | None = None) -> "VectorField":
        comps = tuple(
            ex.parse(c) if isinstance(c, str) else c for c in components
        )
        return cls(comps, len(comps) if dim is None else dim)

    def at(self, point) -> np.ndarray:
        """Component values at a point."""
        pt = tuple(point)
        if len(pt) != self.dim:
            raise DimensionMismatch(
                f"point has {len(pt)} coordinates on a {self.dim}-chart"
            )
        return np.array([ex.evaluate(c, pt) for c in self.components])


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """Symbolic Lie bracket [X, Y] = X(Y) - Y(X)."""
    if X.dim != Y.dim:
        raise DimensionMismatch(f"brackets need equal dims, got {X.dim} and {Y.dim}")
    comps = []
    for k in range(X.dim):
        acc: ex.ScalarExpr = ex.const(0)
        for i in range(X.dim):
            acc = ex.add(acc, ex.mul(X.components[i], ex.differentiate(Y.components[k], i + 1)))
            acc = ex.sub(acc, ex.mul(Y.components[i], ex.differentiate(X.components[k], i + 1)))
        comps.append(acc)
    return VectorField(tuple(comps), X.dim)


def fd_bracket(X: VectorField, Y: VectorField, point, h: float = 1e-5) -> np.ndarray:
    """[X, Y] at a point with finite-difference partials in place of
    symbolic ones; the independent check for `lie_bracket`."""
    if X.dim != Y.dim:
        raise DimensionMismatch(f"brackets need equal dims, got {X.dim} and {Y.dim}")
    pt = tuple(float(c) for c in point)
    Xv, Yv = X.at(pt), Y.at(pt)
    out = np.zeros(X.dim)
    for k in range(X.dim):
        for i in range(X.dim):
            out[k] += Xv[i] * ex.fd_partial(Y.components[k], i + 1, pt, h)
            out[k] -= Yv[i] * ex.fd_partial(X.components[k], i + 1, pt, h)
    return out


@dataclass(frozen=True)
class GrowthVector:
    r1: int
    r2: int
    r3: int
    tol: float

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.r1, self.r2, self.r3)

    @property
    def is_cartan(self) -> bool:
        return self.as_tuple() == (2, 3, 5)


class Distribution2:
    """Rank-two distribution on a 5-chart, spanned by fields X and Y.

    The three bracket fields [X,Y], [X,[X,Y]], [Y,[X,Y]] are computed
    symbolically once and cached.
    """

    def __init__(self, X: VectorField, Y: VectorField):
        if X.dim != 5 or Y.dim != 5:
            raise DimensionMismatch("distributions live on 5-charts")
        self.X = X
        self.Y = Y
        self._brackets: tuple[VectorField, VectorField, VectorField] | None = None

    def brackets(self) -> tuple[VectorField, VectorField, VectorField]:
        """([X,Y], [X,[X,Y]], [Y,[X,Y]])."""
        if self._brackets is None:
            b1 = lie_bracket(self.X, self.Y)
            self._brackets = (b1, lie_bracket(self.X, b1), lie_bracket(self.Y, b1))
        return self._brackets

    def frame_fields(self) -> tuple[VectorField, ...]:
        """X, Y and the three bracket fields, in column order."""
        return (self.X, self.Y) + self.brackets()

    def frame_matrix(self, point) -> np.ndarray:
        """5x5 matrix whose columns are the frame fields at the point."""
        return np.column_stack([F.at(point) for F in self.frame_fields()])


def rank_with_tol(matrix: np.ndarray, tol: float) -> int:
    """Numerical rank: singular values below tol * (largest) count as zero."""
    sv = np.linalg.svd(matrix, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > tol * sv[0]))


def _frame_matrix_checked(d: Distribution2, point, tol: float) -> np.ndarray:
    M = d.frame_matrix(point)
    if not np.all(np.isfinite(M)):
        raise DomainError("frame has a non-finite component at the point")
    if rank_with_tol(M[:, :2], tol) < 2:
        raise DegenerateFrame(f"X and Y are dependent at {tuple(point)}")
    return M


def growth_vector(d: Distribution2, point, tol: float = DEFAULT_TOL) -> GrowthVector:
    """Ranks of the three nested spans at a point."""
    M = _frame_matrix_checked(d, point, tol)
    return GrowthVector(
        r1=rank_with_tol(M[:, :2], tol),
        r2=rank_with_tol(M[:, :3], tol),
        r3=rank_with_tol(M, tol),
        tol=tol,
    )


def cartan_determinant(d: Distribution2, point, tol: float = DEFAULT_TOL) -> float:
    """det of the 5x5 frame matrix at a point; the certificate margin."""
    M = _frame_matrix_checked(d, point, tol)
    return float(np.linalg.det(M))


def monge_distribution() -> Distribution2:
    """The Monge normal form X = (1, x3, x4, 0, x4^2), Y = (0, 0, 0, 1, 0)."""
    X = VectorField.from_strings(("1", "x3", "x4", "0", "x4^2"))
    Y = VectorField.from_strings(("0", "0", "0", "1", "0"))
    return Distribution2(X, Y)
