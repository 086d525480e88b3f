"""Lie-algebra valued connection forms on surface charts.

A form is written omega = A dx + B dy with A, B: chart -> g for a fixed
three-dimensional Lie algebra g with basis e1, e2, e3.  Its curvature
relative to the chart area element dx dy is

    F = d_x B - d_y A - {A, B},

with {,} the pointwise algebra bracket.  The distribution obtained by
suspending omega has Cartan type over a chart point exactly when the
three columns

    F,   d_x F + {A, F},   d_y F + {B, F}

are linearly independent there (for abelian g the correction terms
vanish and the columns are F and its chart partials).  |det| of the 3x3
column matrix is the criterion margin.  Rescaling the chart area element
by a positive function multiplies the determinant by its cube, so the
holds/fails verdict does not depend on that normalization.

Suspensions: on the 5-chart (x1, x2 surface, x3..x5 group directions)

    X = d_1 + eps * A,    Y = d_2 + eps * B        (abelian model)

with the group translation frame Z_i = d_{2+i}; for the Heisenberg
model the values are scaled by eps on the plane spanned by e1, e2 and by
eps^2 on the center e3 before being read in the invariant frame

    E1 = d_3,   E2 = d_4 + x3 d_5,   E3 = d_5,     [E1, E2] = E3.

For the abelian model the three bracket columns scale exactly linearly
in eps, so the frame determinant scales as eps^3; for the Heisenberg
model the center column picks up one more power and the determinant
scales as eps^4.  `suspension_det_power` records these exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import engine
from . import expr as ex
from .certify import grid_points
from .errors import (
    InvalidStructureConstants, ModelMismatch, NotAbelian, UnknownBuiltin,
)
from .fields import DEFAULT_TOL, Distribution2, VectorField
from .program import compile_expr

__all__ = [
    "LieAlgebra3", "Chart2", "ConnectionForm", "CriterionResult",
    "CriterionPoint", "CriterionGridReport", "SuspensionSpec",
    "cartan_criterion_abelian", "cartan_criterion_algebra",
    "criterion_grid", "suspend", "group_frame", "builtin", "builtin_names",
    "suspension_det_power", "MODELS", "TWO_PI",
]

TWO_PI = 2.0 * math.pi

_JACOBI_TOL = 1e-12


class LieAlgebra3:
    """Three-dimensional Lie algebra given by structure constants.

    structure[i, j, k] is the e_k coefficient of [e_i, e_j].  Constants
    are validated for antisymmetry and the Jacobi identity on
    construction (tolerance 1e-12).
    """

    def __init__(self, structure, name: str = "custom"):
        c = np.asarray(structure, dtype=np.float64)
        if c.shape != (3, 3, 3):
            raise InvalidStructureConstants("structure constants must be 3x3x3")
        if not np.all(np.abs(c + c.transpose(1, 0, 2)) <= _JACOBI_TOL):
            raise InvalidStructureConstants("structure constants are not antisymmetric")
        jac = (
            np.einsum("jkm,iml->ijkl", c, c)
            + np.einsum("kim,jml->ijkl", c, c)
            + np.einsum("ijm,kml->ijkl", c, c)
        )
        if not np.all(np.abs(jac) <= _JACOBI_TOL):
            raise InvalidStructureConstants("structure constants violate the Jacobi identity")
        self.structure = c
        self.structure.flags.writeable = False
        self.name = name

    @classmethod
    def abelian(cls) -> "LieAlgebra3":
        return cls(np.zeros((3, 3, 3)), name="abelian")

    @classmethod
    def heisenberg(cls) -> "LieAlgebra3":
        c = np.zeros((3, 3, 3))
        c[0, 1, 2] = 1.0
        c[1, 0, 2] = -1.0
        return cls(c, name="heisenberg")

    @property
    def is_abelian(self) -> bool:
        return bool(np.all(self.structure == 0.0))

    def bracket(self, u, v) -> np.ndarray:
        """Numeric bracket of coefficient vectors."""
        return np.einsum("ijk,i,j->k", self.structure, np.asarray(u), np.asarray(v))

    def bracket_exprs(self, u, v) -> tuple[ex.ScalarExpr, ...]:
        """Symbolic bracket of two expression triples."""
        out = []
        for k in range(3):
            acc: ex.ScalarExpr = ex.const(0)
            for i in range(3):
                for j in range(3):
                    cijk = self.structure[i, j, k]
                    if cijk != 0.0:
                        term = ex.mul(ex.const(float(cijk)), ex.mul(u[i], v[j]))
                        acc = ex.add(acc, term)
            out.append(acc)
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra3) and np.array_equal(
            self.structure, other.structure
        )

    def __repr__(self):
        return f"LieAlgebra3({self.name})"


@dataclass(frozen=True)
class Chart2:
    """Surface chart metadata: a name and per-axis periods (None = aperiodic)."""

    name: str = "plane"
    periods: tuple[float | None, float | None] = (None, None)


class ConnectionForm:
    """omega = A dx + B dy with values in a three-dimensional algebra."""

    def __init__(self, algebra: LieAlgebra3, A, B, chart: Chart2 | None = None):
        conv = lambda t: tuple(ex.parse(c) if isinstance(c, str) else c for c in t)
        self.algebra = algebra
        self.A = conv(A)
        self.B = conv(B)
        if len(self.A) != 3 or len(self.B) != 3:
            raise ValueError("A and B must each have three components")
        for comp in self.A + self.B:
            if ex.max_slot(comp) + 1 > 2:
                raise ValueError("connection components live on a 2-chart (x1, x2)")
        self.chart = chart if chart is not None else Chart2()
        self._curv: tuple[ex.ScalarExpr, ...] | None = None
        self._columns: tuple[tuple[ex.ScalarExpr, ...], ...] | None = None

    def curvature_exprs(self) -> tuple[ex.ScalarExpr, ...]:
        """Components of F = d_x B - d_y A - {A, B} (cached)."""
        if self._curv is None:
            lie = self.algebra.bracket_exprs(self.A, self.B)
            self._curv = tuple(
                ex.sub(
                    ex.sub(ex.differentiate(self.B[k], 1), ex.differentiate(self.A[k], 2)),
                    lie[k],
                )
                for k in range(3)
            )
        return self._curv

    def curvature(self, point) -> np.ndarray:
        pt = tuple(point)
        return np.array([ex.evaluate(c, pt) for c in self.curvature_exprs()])

    def criterion_columns(self) -> tuple[tuple[ex.ScalarExpr, ...], ...]:
        """(F, d_x F + {A,F}, d_y F + {B,F}) as expression triples (cached).
        For abelian algebras the bracket corrections fold away."""
        if self._columns is None:
            F = self.curvature_exprs()
            AF = self.algebra.bracket_exprs(self.A, F)
            BF = self.algebra.bracket_exprs(self.B, F)
            col2 = tuple(ex.add(ex.differentiate(F[k], 1), AF[k]) for k in range(3))
            col3 = tuple(ex.add(ex.differentiate(F[k], 2), BF[k]) for k in range(3))
            self._columns = (F, col2, col3)
        return self._columns


@dataclass(frozen=True)
class CriterionResult:
    holds: bool
    det: float
    margin: float
    scale: float
    tol: float
    reason: str | None


def _criterion_result(M: np.ndarray, tol: float) -> CriterionResult:
    det = float(np.linalg.det(M))
    norms = np.linalg.norm(M, axis=0)
    scale = float(np.prod(norms))
    margin = abs(det)
    holds = margin > tol * scale
    reason = None
    if not holds:
        if norms[0] <= tol * max(1.0, float(norms.max(initial=0.0))):
            reason = "curvature vanishes"
        else:
            reason = "criterion columns are linearly dependent"
    return CriterionResult(holds=holds, det=det, margin=margin, scale=scale,
                           tol=tol, reason=reason)


def cartan_criterion_abelian(form: ConnectionForm, point,
                             tol: float = DEFAULT_TOL) -> CriterionResult:
    """Independence of F, d_x F, d_y F at the point; abelian algebras only."""
    if not form.algebra.is_abelian:
        raise NotAbelian("the coefficient algebra is not abelian")
    return cartan_criterion_algebra(form, point, tol)


def cartan_criterion_algebra(form: ConnectionForm, point,
                             tol: float = DEFAULT_TOL) -> CriterionResult:
    """Independence of F, d_x F + {A,F}, d_y F + {B,F} at the point."""
    pt = tuple(point)
    cols = form.criterion_columns()
    M = np.column_stack([
        [ex.evaluate(comp, pt) for comp in col] for col in cols
    ])
    return _criterion_result(M, tol)


@dataclass(frozen=True)
class CriterionPoint:
    coords: tuple[float, float]
    holds: bool | None
    det: float | None
    margin: float | None
    note: str | None


@dataclass(frozen=True)
class CriterionGridReport:
    box: tuple[tuple[float, float], tuple[float, float]]
    steps: tuple[int, int]
    tol: float
    points: tuple[CriterionPoint, ...]

    @property
    def all_hold(self) -> bool:
        return all(p.holds is True for p in self.points)

    @property
    def min_margin(self) -> float | None:
        margins = [p.margin for p in self.points if p.margin is not None]
        return min(margins) if margins else None

    def to_json_dict(self) -> dict:
        return {
            "box": [[lo, hi] for lo, hi in self.box],
            "steps": list(self.steps),
            "tol": self.tol,
            "point_count": len(self.points),
            "all_hold": self.all_hold,
            "min_margin": self.min_margin,
            "points": [
                {
                    "coords": list(p.coords),
                    "holds": p.holds,
                    "det": p.det,
                    "margin": p.margin,
                    "note": p.note,
                }
                for p in self.points
            ],
        }


def criterion_grid(form: ConnectionForm, box, steps, tol: float = DEFAULT_TOL,
                   threads: int = 1) -> CriterionGridReport:
    """Evaluate the pointwise criterion over a surface grid."""
    box = tuple((float(lo), float(hi)) for lo, hi in box)
    steps = tuple(int(s) for s in steps)
    if len(box) != 2 or len(steps) != 2:
        raise ValueError("criterion grids are two-dimensional")
    pts = grid_points(box, steps)
    cols = form.criterion_columns()
    progs = [compile_expr(comp, 2) for col in cols for comp in col]
    values, ok = engine.eval_programs(progs, pts, threads=threads)
    mats = values.reshape(3, 3, -1).transpose(2, 1, 0)
    finite = np.isfinite(mats).all(axis=(1, 2))
    good = ok & finite
    out = []
    for n in range(pts.shape[0]):
        coords = (float(pts[n, 0]), float(pts[n, 1]))
        if not good[n]:
            note = ("evaluation failed at the point" if not ok[n]
                    else "non-finite criterion value at the point")
            out.append(CriterionPoint(coords, None, None, None, note))
            continue
        res = _criterion_result(mats[n], tol)
        out.append(CriterionPoint(coords, res.holds, res.det, res.margin, res.reason))
    return CriterionGridReport(box=box, steps=steps, tol=tol, points=tuple(out))


# --- suspension ------------------------------------------------------------

MODELS = ("abelian", "heisenberg")


@dataclass(frozen=True)
class SuspensionSpec:
    form: ConnectionForm
    epsilon: float
    model: str = "abelian"

    def __post_init__(self):
        if self.model not in MODELS:
            raise ModelMismatch(f"unknown group model {self.model!r}")
        if not self.epsilon > 0.0:
            raise ValueError("epsilon must be positive")


def suspension_det_power(model: str) -> int:
    """Exact power k with cartan_determinant(eps) = eps^k * (const + O(eps))
    for suspensions over translation-invariant group charts."""
    if model == "abelian":
        return 3
    if model == "heisenberg":
        return 4
    raise ModelMismatch(f"unknown group model {model!r}")


def group_frame(model: str) -> tuple[VectorField, ...]:
    """The invariant vertical frame of the group model on the 5-chart."""
    if model == "abelian":
        return tuple(
            VectorField.from_strings(comps)
            for comps in (("0", "0", "1", "0", "0"),
                          ("0", "0", "0", "1", "0"),
                          ("0", "0", "0", "0", "1"))
        )
    if model == "heisenberg":
        return tuple(
            VectorField.from_strings(comps)
            for comps in (("0", "0", "1", "0", "0"),
                          ("0", "0", "0", "1", "x3"),
                          ("0", "0", "0", "0", "1"))
        )
    raise ModelMismatch(f"unknown group model {model!r}")


def _vertical_components(values, scale: tuple[float, float, float],
                         model: str) -> tuple[ex.ScalarExpr, ...]:
    """Components along x3..x5 of sum_i scale_i * value_i * E_i."""
    scaled = [ex.mul(ex.const(s), v) for s, v in zip(scale, values)]
    if model == "abelian":
        return tuple(scaled)
    # Heisenberg frame: E2 contributes x3 * (component) to the x5 slot
    return (
        scaled[0],
        scaled[1],
        ex.add(ex.mul(ex.var(3), scaled[1]), scaled[2]),
    )


def suspend(spec: SuspensionSpec) -> Distribution2:
    """X = d_1 + (scaled A), Y = d_2 + (scaled B) on the 5-chart."""
    form, eps, model = spec.form, float(spec.epsilon), spec.model
    if model == "abelian":
        if not form.algebra.is_abelian:
            raise ModelMismatch("abelian suspension of a non-abelian form")
        scale = (eps, eps, eps)
    else:
        if form.algebra != LieAlgebra3.heisenberg():
            raise ModelMismatch(
                "heisenberg suspension needs the standard Heisenberg constants"
            )
        scale = (eps, eps, eps * eps)
    one, zero = ex.const(1), ex.const(0)
    X = VectorField((one, zero) + _vertical_components(form.A, scale, model), 5)
    Y = VectorField((zero, one) + _vertical_components(form.B, scale, model), 5)
    return Distribution2(X, Y)


# --- built-in forms --------------------------------------------------------

_S = "sqrt(1 - x1^2 - x2^2)"
_R = "sqrt(1 - x2^2)"


def builtin_names() -> tuple[str, ...]:
    return ("sphere_abelian", "torus_heisenberg", "cext_family")


def builtin(name: str, chart: str = "north", alpha: float | None = None) -> ConnectionForm:
    """Named example forms.

    - sphere_abelian: the round-sphere form (y dz - z dy, z dx - x dz,
      x dy - y dx) pulled back to a chart; charts 'north'/'south' are the
      hemispheres z = +-sqrt(1 - x^2 - y^2) over the unit disk, 'band' is
      the area-preserving cylindrical chart (x1, x2) = (theta, z) on
      |z| < 1.  On the band chart the curvature is exactly 2(x, y, z).
    - torus_heisenberg: omega = (e1 cos x + e2 sin x) dy on the 2-torus,
      Heisenberg coefficients; criterion margin is identically 1.
    - cext_family: the sphere form plus alpha/(x^2+y^2) (x dy - y dx) e3
      on the band chart; requires alpha.  The loop z = h integrates to
      2*pi*(0, 0, 1 - h^2 + alpha).
    """
    if name == "sphere_abelian":
        if chart == "north":
            return ConnectionForm(
                LieAlgebra3.abelian(),
                A=(f"-(x1*x2)/{_S}", f"{_S} + x1^2/{_S}", "-x2"),
                B=(f"-x2^2/{_S} - {_S}", f"(x1*x2)/{_S}", "x1"),
                chart=Chart2("hemisphere_north"),
            )
        if chart == "south":
            return ConnectionForm(
                LieAlgebra3.abelian(),
                A=(f"(x1*x2)/{_S}", f"-{_S} - x1^2/{_S}", "-x2"),
                B=(f"x2^2/{_S} + {_S}", f"-(x1*x2)/{_S}", "x1"),
                chart=Chart2("hemisphere_south"),
            )
        if chart == "band":
            return ConnectionForm(
                LieAlgebra3.abelian(),
                A=(f"-x2*{_R}*cos(x1)", f"-x2*{_R}*sin(x1)", "1 - x2^2"),
                B=(f"sin(x1)/{_R}", f"-cos(x1)/{_R}", "0"),
                chart=Chart2("band", periods=(TWO_PI, None)),
            )
        raise UnknownBuiltin(f"sphere_abelian has charts north/south/band, not {chart!r}")
    if name == "torus_heisenberg":
        return ConnectionForm(
            LieAlgebra3.heisenberg(),
            A=("0", "0", "0"),
            B=("cos(x1)", "sin(x1)", "0"),
            chart=Chart2("torus", periods=(TWO_PI, TWO_PI)),
        )
    if name == "cext_family":
        if alpha is None:
            raise UnknownBuiltin("cext_family requires alpha")
        a3 = ex.add(ex.parse("1 - x2^2"), ex.const(float(alpha)))
        return ConnectionForm(
            LieAlgebra3.abelian(),
            A=(ex.parse(f"-x2*{_R}*cos(x1)"), ex.parse(f"-x2*{_R}*sin(x1)"), a3),
            B=(ex.parse(f"sin(x1)/{_R}"), ex.parse(f"-cos(x1)/{_R}"), ex.const(0)),
            chart=Chart2("band", periods=(TWO_PI, None)),
        )
    raise UnknownBuiltin(f"no builtin named {name!r}")
