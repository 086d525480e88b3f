"""Loop integrals and the convex-cone extension decision.

A germ of a connection form around a boundary loop extends across the
disk it bounds exactly when the loop integral of the form lies in the
convex cone spanned by the curvature values over the filling region.
The decision is computed on finitely many curvature samples, so an
Inside answer is a genuine certificate (the sampled cone sits inside the
true one), while Outside is reliable up to sampling density of the
region; both come with re-verifiable data:

- Inside: nonnegative coefficients recombining the samples to the target;
- Outside: a separating normal n with <n, target> < 0 <= <n, sample_i>.

Cone membership normalizes samples and target to unit length (membership
is invariant under positive scaling), answers Inside only when targets
perturbed by tol in the six coordinate directions stay feasible, and
answers Boundary when it can certify neither side.

Loop integrals use the composite midpoint rule on the closed parameter
interval [0, 1]; for smooth closed loops the rule converges faster than
any power of 1/n (spectrally), and for merely C^2 data at order n^-2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import engine
from . import expr as ex
from .connections import ConnectionForm, cartan_criterion_algebra
from .errors import CriterionFailure, DomainError, NumericalFailure
from .lp import nonneg_combination
from .program import compile_expr

__all__ = [
    "Loop", "circle_loop", "band_latitude_loop", "loop_integral",
    "ConeProblem", "ConeVerdict", "cone_membership", "verify_certificate",
    "cap_region_points", "ExtensionDecision", "decide_extension",
    "EXTENDABLE", "NOT_EXTENDABLE", "INDETERMINATE",
]

EXTENDABLE = "Extendable"
NOT_EXTENDABLE = "NotExtendable"
INDETERMINATE = "Indeterminate"

_CLOSURE_TOL = 1e-9


@dataclass(frozen=True)
class Loop:
    """Closed curve t in [0, 1] -> (x(t), y(t)); components are
    expressions in x1 := t.  On periodic charts closure is checked
    modulo the per-axis periods."""

    x: ex.ScalarExpr
    y: ex.ScalarExpr
    periods: tuple[float | None, float | None] = (None, None)

    def __post_init__(self):
        for comp in (self.x, self.y):
            if ex.max_slot(comp) + 1 > 1:
                raise ValueError("loop components depend on the parameter x1 only")
        p0 = self.at(0.0)
        p1 = self.at(1.0)
        for c0, c1, period in zip(p0, p1, self.periods):
            gap = c1 - c0
            if period is not None:
                gap -= period * round(gap / period)
            if abs(gap) > _CLOSURE_TOL:
                raise ValueError(f"loop is not closed: gamma(0)={p0}, gamma(1)={p1}")

    def at(self, t: float) -> tuple[float, float]:
        return (ex.evaluate(self.x, (t,)), ex.evaluate(self.y, (t,)))

    def velocity_exprs(self) -> tuple[ex.ScalarExpr, ex.ScalarExpr]:
        return (ex.differentiate(self.x, 1), ex.differentiate(self.y, 1))


def circle_loop(center=(0.0, 0.0), radius: float = 1.0) -> Loop:
    """Counterclockwise circle, one turn."""
    cx, cy = float(center[0]), float(center[1])
    two_pi_t = ex.mul(ex.const(2.0 * math.pi), ex.var(1))
    return Loop(
        x=ex.add(ex.const(cx), ex.mul(ex.const(float(radius)), ex.fun("cos", two_pi_t))),
        y=ex.add(ex.const(cy), ex.mul(ex.const(float(radius)), ex.fun("sin", two_pi_t))),
    )


def band_latitude_loop(h: float) -> Loop:
    """The latitude circle z = h on the band chart (x1, x2) = (theta, z),
    counterclockwise seen from the north pole."""
    if not -1.0 < h < 1.0:
        raise ValueError("latitude must satisfy |h| < 1")
    return Loop(
        x=ex.mul(ex.const(2.0 * math.pi), ex.var(1)),
        y=ex.const(float(h)),
        periods=(2.0 * math.pi, None),
    )


def loop_integral(form: ConnectionForm, loop: Loop, n_quad: int = 256) -> np.ndarray:
    """Integral of omega along the loop, one value per algebra component."""
    if n_quad < 2:
        raise ValueError("n_quad must be at least 2")
    ts = ((np.arange(n_quad) + 0.5) / n_quad).reshape(-1, 1)
    vx, vy = loop.velocity_exprs()
    gprogs = [compile_expr(c, 1) for c in (loop.x, loop.y, vx, vy)]
    gvals, gok = engine.eval_programs(gprogs, ts)
    if not gok.all():
        raise DomainError("loop parametrization is singular at a quadrature node")
    pts = np.column_stack([gvals[0], gvals[1]])
    fprogs = [compile_expr(c, 2) for c in form.A + form.B]
    fvals, fok = engine.eval_programs(fprogs, pts)
    if not fok.all():
        raise DomainError("the loop leaves the chart domain of the form")
    integrand = fvals[:3] * gvals[2] + fvals[3:] * gvals[3]
    return integrand.mean(axis=1)


@dataclass(frozen=True)
class ConeProblem:
    """Samples spanning a cone and a target vector, all in R^3."""

    samples: np.ndarray  # (n, 3)
    target: np.ndarray   # (3,)
    tol: float = 1e-9

    def __post_init__(self):
        samples = np.ascontiguousarray(self.samples, dtype=np.float64)
        target = np.ascontiguousarray(self.target, dtype=np.float64)
        if samples.ndim != 2 or samples.shape[1] != 3 or samples.shape[0] == 0:
            raise ValueError("samples must be a nonempty (n, 3) array")
        if target.shape != (3,):
            raise ValueError("target must be a 3-vector")
        if not np.isfinite(samples).all() or not np.isfinite(target).all():
            raise ValueError("cone data must be finite")
        norms = np.linalg.norm(samples, axis=1)
        if np.any(norms <= self.tol):
            raise ValueError("every sample must have norm above tol")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "target", target)


@dataclass(frozen=True)
class ConeVerdict:
    status: str  # Inside | Outside | Boundary
    coefficients: np.ndarray | None
    normal: np.ndarray | None
    residual: float
    tol: float


def _feas_tol(tol: float) -> float:
    return max(1e-14, min(1e-6, tol * 1e-3))


def cone_membership(problem: ConeProblem) -> ConeVerdict:
    """Classify the target against the sampled cone.

    Inside comes with nonnegative coefficients, Outside with a separating
    normal; both certificates are re-verified before being returned and a
    failure to do so raises NumericalFailure.
    """
    tol = problem.tol
    ftol = _feas_tol(tol)
    norms = np.linalg.norm(problem.samples, axis=1)
    unit_s = (problem.samples / norms[:, None]).T  # (3, n)
    tnorm = float(np.linalg.norm(problem.target))

    if tnorm <= tol:
        # the zero vector: interior only if the samples span all of R^3
        lam = np.zeros(problem.samples.shape[0])
        if _probes_feasible(unit_s, np.zeros(3), 1.0, ftol):
            verdict = ConeVerdict("Inside", lam, None, 0.0, tol)
            _check_inside(problem, verdict)
            return verdict
        return ConeVerdict("Boundary", None, None, 0.0, tol)

    unit_t = problem.target / tnorm
    res = nonneg_combination(unit_s, unit_t, ftol)
    if res.feasible:
        if _probes_feasible(unit_s, unit_t, tol, ftol):
            lam = res.coefficients * (tnorm / norms)
            verdict = ConeVerdict("Inside", lam, None, res.residual, tol)
            _check_inside(problem, verdict)
            return verdict
        return ConeVerdict("Boundary", res.coefficients * (tnorm / norms),
                           None, res.residual, tol)
    if res.residual <= tol:
        return ConeVerdict("Boundary", None, None, res.residual, tol)
    normal = -res.dual
    nn = float(np.linalg.norm(normal))
    if nn == 0.0:
        raise NumericalFailure("infeasible problem produced a zero dual")
    normal = normal / nn
    verdict = ConeVerdict("Outside", None, normal, res.residual, tol)
    if not verify_certificate(problem, verdict):
        return ConeVerdict("Boundary", None, None, res.residual, tol)
    return verdict


def _probes_feasible(unit_s, unit_t, h: float, ftol: float) -> bool:
    """Feasibility of the six coordinate perturbations of the target."""
    for j in range(3):
        for d in (h, -h):
            probe = unit_t.copy()
            probe[j] += d
            if not nonneg_combination(unit_s, probe, ftol).feasible:
                return False
    return True


def _check_inside(problem: ConeProblem, verdict: ConeVerdict) -> None:
    if not verify_certificate(problem, verdict):
        raise NumericalFailure("Inside certificate failed re-verification")


def verify_certificate(problem: ConeProblem, verdict: ConeVerdict) -> bool:
    """Re-check a verdict's certificate from scratch.

    Inside: coefficients are nonnegative and recombine to the target
    within tolerance.  Outside: the normal strictly separates the target
    from every sample.  Boundary carries no certificate and verifies
    trivially.
    """
    tol = max(problem.tol, 1e-12)
    if verdict.status == "Inside":
        lam = verdict.coefficients
        if lam is None or lam.shape != (problem.samples.shape[0],):
            return False
        if np.any(lam < -tol * max(1.0, float(np.abs(lam).max(initial=0.0)))):
            return False
        recomb = problem.samples.T @ np.maximum(lam, 0.0)
        err = float(np.linalg.norm(recomb - problem.target))
        return err <= 1e-7 * (1.0 + float(np.linalg.norm(problem.target)))
    if verdict.status == "Outside":
        n = verdict.normal
        if n is None:
            return False
        tnorm = float(np.linalg.norm(problem.target))
        if float(n @ problem.target) >= -tol * max(tnorm, 1.0):
            return False
        snorms = np.linalg.norm(problem.samples, axis=1)
        return bool(np.all(problem.samples @ n >= -1e-9 * snorms))
    return verdict.status == "Boundary"


# --- extension decision ----------------------------------------------------

def cap_region_points(h: float, n_theta: int = 24, n_z: int = 12,
                      z_top: float = 0.95) -> np.ndarray:
    """Band-chart grid covering the spherical cap z >= h (up to z_top)."""
    if not -1.0 < h < z_top < 1.0:
        raise ValueError("need -1 < h < z_top < 1")
    thetas = np.arange(n_theta) * (2.0 * math.pi / n_theta)
    zs = np.linspace(h, z_top, n_z)
    tt, zz = np.meshgrid(thetas, zs, indexing="ij")
    return np.column_stack([tt.ravel(), zz.ravel()])


@dataclass(frozen=True)
class ExtensionDecision:
    verdict: str  # Extendable | NotExtendable | Indeterminate
    target: np.ndarray
    cone: ConeVerdict
    problem: ConeProblem
    loop_points_checked: int
    region_samples: int


def decide_extension(form: ConnectionForm, loop: Loop, region_points,
                     n_quad: int = 256, tol: float = 1e-9,
                     loop_check_points: int = 16,
                     min_direction_separation: float = 1e-6) -> ExtensionDecision:
    """Decide whether the germ along the loop extends across the region.

    Preconditions checked on samples along the loop: the pointwise
    criterion holds (so the curvature is nonzero and projectivizes to an
    immersion) and the sampled curvature directions are pairwise
    separated (injectivity of the projectivized curvature); failures
    raise CriterionFailure.  The verdict then classifies the loop
    integral against the cone of region curvature samples.
    """
    params = (np.arange(loop_check_points) + 0.5) / loop_check_points
    dirs = []
    for t in params:
        pt = loop.at(float(t))
        res = cartan_criterion_algebra(form, pt, tol)
        if not res.holds:
            raise CriterionFailure(
                f"criterion fails on the loop at t={t:.4f}: {res.reason}"
            )
        Fv = form.curvature(pt)
        dirs.append(Fv / np.linalg.norm(Fv))
    dirs = np.array(dirs)
    gram = dirs @ dirs.T
    for i in range(len(dirs)):
        for j in range(i + 1, len(dirs)):
            angle = math.acos(min(1.0, max(-1.0, gram[i, j])))
            if angle < min_direction_separation:
                raise CriterionFailure(
                    "projectivized curvature is not injective along the loop "
                    f"(samples {i} and {j} coincide)"
                )

    region_points = np.asarray(region_points, dtype=np.float64)
    samples = np.array([form.curvature(p) for p in region_points])
    snorms = np.linalg.norm(samples, axis=1)
    if np.any(snorms <= tol * max(1.0, float(snorms.max(initial=0.0)))):
        raise CriterionFailure("curvature vanishes at a region sample")

    target = loop_integral(form, loop, n_quad)
    problem = ConeProblem(samples=samples, target=target, tol=tol)
    cone = cone_membership(problem)
    verdict = {
        "Inside": EXTENDABLE,
        "Outside": NOT_EXTENDABLE,
        "Boundary": INDETERMINATE,
    }[cone.status]
    return ExtensionDecision(
        verdict=verdict,
        target=target,
        cone=cone,
        problem=problem,
        loop_points_checked=loop_check_points,
        region_samples=samples.shape[0],
    )
