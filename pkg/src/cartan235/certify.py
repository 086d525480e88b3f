"""Graph-form distributions, pointwise Levi data, and grid certification.

Graph form: on a 5-chart, two fields

    X = d_1 + a1 d_3 + a2 d_4 + a3 d_5,
    Y = d_2 + b1 d_3 + b2 d_4 + b3 d_5,

with a, b: chart -> R^3.  The first two components of [X,Y] and of both
double brackets vanish identically, so the bracket data reduces to three
vertical vectors

    c = [X,Y]_vert,   d = [X,[X,Y]]_vert,   e = [Y,[X,Y]]_vert,

and the distribution has Cartan type at p exactly when (c|d|e) is
invertible there.  c depends only on the 1-jet of (a, b) at p, while d
and e depend only on the 2-jet.

Grid certification sweeps a box, classifies every point, and collects
the result into a deterministic report (JSON and CSV writers below).
Per-point evaluation failures are recorded in the report, not raised.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from . import engine
from . import expr as ex
from .errors import DimensionMismatch
from .fields import DEFAULT_TOL, Distribution2, VectorField, rank_with_tol
from .program import compile_expr

__all__ = [
    "GraphDistribution", "LeviData", "levi_data", "PointResult",
    "GridReport", "certify_grid", "grid_points", "write_report_json",
    "write_report_csv", "report_csv_rows", "STATUS_CARTAN", "STATUS_NOT_CARTAN",
    "STATUS_INDETERMINATE", "STATUS_ERROR",
]

STATUS_CARTAN = "Cartan"
STATUS_NOT_CARTAN = "NotCartan"
STATUS_INDETERMINATE = "Indeterminate"
STATUS_ERROR = "Error"


@dataclass(frozen=True)
class GraphDistribution:
    """The pair (a, b) of coefficient triples of a graph-form frame."""

    a: tuple[ex.ScalarExpr, ex.ScalarExpr, ex.ScalarExpr]
    b: tuple[ex.ScalarExpr, ex.ScalarExpr, ex.ScalarExpr]

    def __post_init__(self):
        for name, triple in (("a", self.a), ("b", self.b)):
            if len(triple) != 3:
                raise DimensionMismatch(f"{name} must have 3 components")
            for c in triple:
                if ex.max_slot(c) + 1 > 5:
                    raise DimensionMismatch("graph coefficients live on a 5-chart")

    @classmethod
    def from_strings(cls, a, b) -> "GraphDistribution":
        conv = lambda t: tuple(ex.parse(c) if isinstance(c, str) else c for c in t)
        return cls(conv(a), conv(b))

    def to_distribution(self) -> Distribution2:
        one, zero = ex.const(1), ex.const(0)
        X = VectorField((one, zero) + tuple(self.a), 5)
        Y = VectorField((zero, one) + tuple(self.b), 5)
        return Distribution2(X, Y)


@dataclass(frozen=True)
class LeviData:
    """Vertical bracket vectors at a point and the 3x3 margin."""

    c: np.ndarray
    d: np.ndarray
    e: np.ndarray
    det: float
    is_cartan: bool
    tol: float

    def matrix(self) -> np.ndarray:
        return np.column_stack([self.c, self.d, self.e])


def _hadamard_scale(M: np.ndarray) -> float:
    """Product of column norms; the natural scale of det(M)."""
    return float(np.prod(np.linalg.norm(M, axis=0)))


def levi_data(g: GraphDistribution, point, tol: float = DEFAULT_TOL) -> LeviData:
    """Evaluate (c, d, e) at a point and test invertibility.

    The margin is |det(c|d|e)| measured against tol times the product of
    column norms; this is sign-convention free and agrees with the 5x5
    frame determinant of the generic engine.
    """
    dist = g.to_distribution()
    b1, b2, b3 = dist.brackets()
    pt = tuple(point)
    for F in (b1, b2, b3):
        # graph form: horizontal bracket components fold to literal zero
        assert F.components[0] == ex.const(0) and F.components[1] == ex.const(0)
    c = np.array([ex.evaluate(comp, pt) for comp in b1.components[2:]])
    d = np.array([ex.evaluate(comp, pt) for comp in b2.components[2:]])
    e = np.array([ex.evaluate(comp, pt) for comp in b3.components[2:]])
    M = np.column_stack([c, d, e])
    det = float(np.linalg.det(M))
    scale = _hadamard_scale(M)
    return LeviData(c=c, d=d, e=e, det=det, is_cartan=abs(det) > tol * scale, tol=tol)


@dataclass(frozen=True)
class PointResult:
    coords: tuple[float, ...]
    status: str
    growth: tuple[int, int, int] | None
    det: float | None
    note: str | None


@dataclass(frozen=True)
class GridReport:
    box: tuple[tuple[float, float], ...]
    steps: tuple[int, ...]
    tol: float
    points: tuple[PointResult, ...]

    @property
    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in (STATUS_CARTAN, STATUS_NOT_CARTAN,
                              STATUS_INDETERMINATE, STATUS_ERROR)}
        for p in self.points:
            out[p.status] += 1
        return out

    @property
    def all_cartan(self) -> bool:
        return all(p.status == STATUS_CARTAN for p in self.points)

    @property
    def min_abs_det(self) -> float | None:
        dets = [abs(p.det) for p in self.points if p.det is not None]
        return min(dets) if dets else None

    @property
    def failures(self) -> tuple[PointResult, ...]:
        return tuple(p for p in self.points if p.status != STATUS_CARTAN)

    def to_json_dict(self) -> dict:
        return {
            "box": [[lo, hi] for lo, hi in self.box],
            "steps": list(self.steps),
            "tol": self.tol,
            "point_count": len(self.points),
            "counts": self.counts,
            "all_cartan": self.all_cartan,
            "min_abs_det": self.min_abs_det,
            "failures": [_point_dict(p) for p in self.failures],
            "points": [_point_dict(p) for p in self.points],
        }


def _point_dict(p: PointResult) -> dict:
    return {
        "coords": list(p.coords),
        "status": p.status,
        "growth": list(p.growth) if p.growth is not None else None,
        "det": p.det,
        "note": p.note,
    }


def grid_points(box, steps) -> np.ndarray:
    """Row-major grid over the box, steps[i] points per axis inclusive."""
    box = [(float(lo), float(hi)) for lo, hi in box]
    steps = [int(s) for s in steps]
    if len(box) != len(steps):
        raise ValueError("box and steps must have the same length")
    for s in steps:
        if s < 1:
            raise ValueError("each axis needs at least one point")
    axes = [np.linspace(lo, hi, s) for (lo, hi), s in zip(box, steps)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack(mesh, axis=-1).reshape(-1, len(box))


def certify_grid(dist, box, steps, tol: float = DEFAULT_TOL,
                 threads: int = 1) -> GridReport:
    """Classify every grid point of a 5-chart distribution.

    dist may be a Distribution2 or a GraphDistribution.  Statuses:
    Cartan (growth (2,3,5) with |det| above tol times the column-norm
    product), Indeterminate (full growth but margin at or below that),
    NotCartan (growth below (2,3,5)), Error (evaluation failed or the
    frame is degenerate at the point).
    """
    if isinstance(dist, GraphDistribution):
        dist = dist.to_distribution()
    if not isinstance(dist, Distribution2):
        raise TypeError("expected a Distribution2 or GraphDistribution")
    box = tuple((float(lo), float(hi)) for lo, hi in box)
    steps = tuple(int(s) for s in steps)
    if len(box) != 5 or len(steps) != 5:
        raise DimensionMismatch("certification grids are five-dimensional")

    pts = grid_points(box, steps)
    progs = [
        compile_expr(comp, 5)
        for F in dist.frame_fields()
        for comp in F.components
    ]
    values, ok = engine.eval_programs(progs, pts, threads=threads)
    # values[f*5 + c, n] -> matrix [n, row c, column f]
    mats = values.reshape(5, 5, -1).transpose(2, 1, 0)
    finite = np.isfinite(mats).all(axis=(1, 2))
    good = ok & finite

    # ranks, determinants, and scales for all well-evaluated points in
    # one batched pass; same per-slice routines as rank_with_tol
    good_idx = np.flatnonzero(good)
    if good_idx.size:
        G = mats[good_idx]

        def batched_ranks(stacked):
            sv = np.linalg.svd(stacked, compute_uv=False)
            lead = sv[:, 0]
            counts = (sv > tol * lead[:, None]).sum(axis=1)
            return np.where(lead == 0.0, 0, counts)

        r1s = batched_ranks(G[:, :, :2])
        r2s = batched_ranks(G[:, :, :3])
        r3s = batched_ranks(G)
        dets = np.linalg.det(G)
        scales = np.prod(np.linalg.norm(G, axis=1), axis=1)

    results = []
    pos = 0
    for n in range(pts.shape[0]):
        coords = tuple(float(v) for v in pts[n])
        if not good[n]:
            note = ("evaluation failed at the point" if not ok[n]
                    else "non-finite frame value at the point")
            results.append(PointResult(coords, STATUS_ERROR, None, None, note))
            continue
        r1 = int(r1s[pos])
        r2 = int(r2s[pos])
        r3 = int(r3s[pos])
        det = float(dets[pos])
        scale = float(scales[pos])
        pos += 1
        if r1 < 2:
            results.append(PointResult(
                coords, STATUS_ERROR, None, None, "degenerate frame: X, Y dependent"))
            continue
        growth = (r1, r2, r3)
        if growth != (2, 3, 5):
            results.append(PointResult(coords, STATUS_NOT_CARTAN, growth, det, None))
        elif abs(det) > tol * scale:
            results.append(PointResult(coords, STATUS_CARTAN, growth, det, None))
        else:
            results.append(PointResult(
                coords, STATUS_INDETERMINATE, growth, det,
                "determinant within tolerance of zero"))
    return GridReport(box=box, steps=steps, tol=tol, points=tuple(results))


def write_report_json(report: GridReport, path) -> None:
    with open(path, "w") as fh:
        json.dump(report.to_json_dict(), fh, indent=2)
        fh.write("\n")


def report_csv_rows(report: GridReport) -> list[list]:
    """Header plus one row per grid point, ready for csv.writer."""
    dim = len(report.box)
    rows = [[f"x{i + 1}" for i in range(dim)]
            + ["status", "r1", "r2", "r3", "det", "note"]]
    for p in report.points:
        growth = p.growth if p.growth is not None else ("", "", "")
        rows.append(
            [repr(c) for c in p.coords]
            + [p.status, *growth,
               repr(p.det) if p.det is not None else "",
               p.note or ""]
        )
    return rows


def write_report_csv(report: GridReport, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerows(report_csv_rows(report))
