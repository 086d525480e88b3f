"""Validation of JSON run configurations for the command-line tools.

A configuration is a nested key-value tree (JSON).  Validation is
strict: every value is type-checked, unknown keys are rejected, and
every complaint carries the path of the offending entry (for example
``connection.A[2]``).  Loaders return plain job objects; no computation
happens here beyond parsing the embedded expression strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import expr as ex
from .certify import GraphDistribution
from .connections import (
    Chart2, ConnectionForm, LieAlgebra3, MODELS, builtin, builtin_names,
)
from .errors import (
    ConfigError, InvalidStructureConstants, ParseError, UnknownBuiltin,
)
from .extension import Loop, band_latitude_loop, cap_region_points, circle_loop
from .fields import DEFAULT_TOL, Distribution2, VectorField

__all__ = [
    "CertifyJob", "ConnectionJob", "SuspensionSweep", "ExtendJob",
    "LoopSpec", "RegionSpec", "TopologyJob", "load_config", "load_certify",
    "load_connection", "load_extend", "load_topology",
]

TASKS = ("certify", "connection", "extend", "topology")


def _join(path: str, key) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else str(key)


def _as_dict(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(path, f"expected an object, got {type(value).__name__}")
    return value


def _as_list(value, path: str, length: int | None = None) -> list:
    if not isinstance(value, list):
        raise ConfigError(path, f"expected a list, got {type(value).__name__}")
    if length is not None and len(value) != length:
        raise ConfigError(path, f"expected {length} entries, got {len(value)}")
    return value


def _as_str(value, path: str) -> str:
    if not isinstance(value, str):
        raise ConfigError(path, f"expected a string, got {type(value).__name__}")
    return value


def _as_float(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {type(value).__name__}")
    return float(value)


def _as_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(path, f"expected an integer, got {type(value).__name__}")
    return value


def _as_bool(value, path: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(path, f"expected true/false, got {type(value).__name__}")
    return value


def _check_keys(d: dict, path: str, allowed: tuple[str, ...],
                required: tuple[str, ...] = ()) -> None:
    for key in d:
        if key not in allowed:
            raise ConfigError(_join(path, key),
                              f"unknown key; allowed keys: {', '.join(sorted(allowed))}")
    for key in required:
        if key not in d:
            raise ConfigError(path, f"missing required key {key!r}")


def _expr(value, path: str, max_vars: int) -> ex.ScalarExpr:
    text = _as_str(value, path)
    try:
        e = ex.parse(text)
    except ParseError as err:
        raise ConfigError(path, str(err)) from err
    if ex.max_slot(e) + 1 > max_vars:
        raise ConfigError(path, f"expression uses more than {max_vars} variables")
    return e


def _expr_list(value, path: str, n: int, max_vars: int) -> tuple[ex.ScalarExpr, ...]:
    items = _as_list(value, path, length=n)
    return tuple(_expr(v, _join(path, i), max_vars) for i, v in enumerate(items))


def _box(value, path: str, dim: int) -> tuple[tuple[float, float], ...]:
    rows = _as_list(value, path, length=dim)
    out = []
    for i, row in enumerate(rows):
        pair = _as_list(row, _join(path, i), length=2)
        lo = _as_float(pair[0], _join(_join(path, i), 0))
        hi = _as_float(pair[1], _join(_join(path, i), 1))
        if not lo < hi:
            raise ConfigError(_join(path, i), f"box interval must have lo < hi, got [{lo}, {hi}]")
        out.append((lo, hi))
    return tuple(out)


def _steps(value, path: str, dim: int) -> tuple[int, ...]:
    items = _as_list(value, path, length=dim)
    out = []
    for i, v in enumerate(items):
        n = _as_int(v, _join(path, i))
        if n < 1:
            raise ConfigError(_join(path, i), "step count must be at least 1")
        out.append(n)
    return tuple(out)


def _grid(value, path: str, dim: int):
    d = _as_dict(value, path)
    _check_keys(d, path, ("box", "steps"), required=("box", "steps"))
    return _box(d["box"], _join(path, "box"), dim), _steps(d["steps"], _join(path, "steps"), dim)


def _tol(cfg: dict, path: str = "") -> float:
    if "tol" not in cfg:
        return DEFAULT_TOL
    tol = _as_float(cfg["tol"], _join(path, "tol"))
    if tol <= 0:
        raise ConfigError(_join(path, "tol"), "tolerance must be positive")
    return tol


def load_config(path) -> dict:
    """Read and JSON-decode a config file; errors become ConfigError."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as err:
        raise ConfigError(str(path), f"cannot read config: {err}") from err
    try:
        cfg = json.loads(raw)
    except json.JSONDecodeError as err:
        raise ConfigError(str(path), f"invalid JSON: {err}") from err
    return _as_dict(cfg, "<config>")


def _check_task(cfg: dict, expected: str) -> None:
    if "task" in cfg:
        task = _as_str(cfg["task"], "task")
        if task != expected:
            raise ConfigError("task", f"config declares task {task!r} but the "
                                      f"{expected!r} command was invoked")


# ---------------------------------------------------------------- certify

@dataclass(frozen=True)
class CertifyJob:
    subject: object  # Distribution2 or GraphDistribution
    box: tuple[tuple[float, float], ...]
    steps: tuple[int, ...]
    tol: float
    kind: str  # "distribution" | "graph"


def load_certify(cfg: dict) -> CertifyJob:
    _check_task(cfg, "certify")
    _check_keys(cfg, "", ("task", "distribution", "graph", "grid", "tol"),
                required=("grid",))
    has_dist = "distribution" in cfg
    has_graph = "graph" in cfg
    if has_dist == has_graph:
        raise ConfigError("", "provide exactly one of 'distribution' or 'graph'")
    if has_dist:
        d = _as_dict(cfg["distribution"], "distribution")
        _check_keys(d, "distribution", ("X", "Y"), required=("X", "Y"))
        X = VectorField(_expr_list(d["X"], "distribution.X", 5, 5), dim=5)
        Y = VectorField(_expr_list(d["Y"], "distribution.Y", 5, 5), dim=5)
        subject: object = Distribution2(X, Y)
        kind = "distribution"
    else:
        g = _as_dict(cfg["graph"], "graph")
        _check_keys(g, "graph", ("a", "b"), required=("a", "b"))
        subject = GraphDistribution(
            _expr_list(g["a"], "graph.a", 3, 5),
            _expr_list(g["b"], "graph.b", 3, 5),
        )
        kind = "graph"
    box, steps = _grid(cfg["grid"], "grid", 5)
    return CertifyJob(subject=subject, box=box, steps=steps, tol=_tol(cfg), kind=kind)


# -------------------------------------------------------------- connection

def _connection(value, path: str) -> ConnectionForm:
    d = _as_dict(value, path)
    if "builtin" in d:
        _check_keys(d, path, ("builtin", "chart", "alpha"), required=("builtin",))
        name = _as_str(d["builtin"], _join(path, "builtin"))
        chart = _as_str(d.get("chart", "north"), _join(path, "chart"))
        alpha = None
        if "alpha" in d:
            alpha = _as_float(d["alpha"], _join(path, "alpha"))
        try:
            return builtin(name, chart=chart, alpha=alpha)
        except UnknownBuiltin as err:
            raise ConfigError(path, f"{err}; known built-ins: "
                                    f"{', '.join(builtin_names())}") from err
    _check_keys(d, path, ("algebra", "A", "B", "periods"),
                required=("algebra", "A", "B"))
    alg_value = d["algebra"]
    if isinstance(alg_value, str):
        if alg_value == "abelian":
            algebra = LieAlgebra3.abelian()
        elif alg_value == "heisenberg":
            algebra = LieAlgebra3.heisenberg()
        else:
            raise ConfigError(_join(path, "algebra"),
                              f"unknown algebra {alg_value!r}; use 'abelian', "
                              "'heisenberg', or a 3x3x3 structure array")
    else:
        rows = _as_list(alg_value, _join(path, "algebra"), length=3)
        for i, r in enumerate(rows):
            sub = _as_list(r, _join(_join(path, "algebra"), i), length=3)
            for j, rr in enumerate(sub):
                _as_list(rr, _join(_join(_join(path, "algebra"), i), j), length=3)
        try:
            algebra = LieAlgebra3(alg_value)
        except InvalidStructureConstants as err:
            raise ConfigError(_join(path, "algebra"), str(err)) from err
    periods: tuple[float | None, float | None] = (None, None)
    if "periods" in d:
        raw = _as_list(d["periods"], _join(path, "periods"), length=2)
        vals = []
        for i, v in enumerate(raw):
            if v is None:
                vals.append(None)
            else:
                p = _as_float(v, _join(_join(path, "periods"), i))
                if p <= 0:
                    raise ConfigError(_join(_join(path, "periods"), i),
                                      "period must be positive or null")
                vals.append(p)
        periods = (vals[0], vals[1])
    return ConnectionForm(
        algebra,
        _expr_list(d["A"], _join(path, "A"), 3, 2),
        _expr_list(d["B"], _join(path, "B"), 3, 2),
        chart=Chart2(name="custom", periods=periods),
    )


@dataclass(frozen=True)
class SuspensionSweep:
    model: str
    epsilons: tuple[float, ...]
    box: tuple[tuple[float, float], ...]
    steps: tuple[int, ...]


@dataclass(frozen=True)
class ConnectionJob:
    form: ConnectionForm
    grid: tuple | None  # (box, steps) on the 2-chart
    points: tuple[tuple[float, float], ...]
    sweep: SuspensionSweep | None
    tol: float


def load_connection(cfg: dict) -> ConnectionJob:
    _check_task(cfg, "connection")
    _check_keys(cfg, "", ("task", "connection", "grid", "points", "suspension", "tol"),
                required=("connection",))
    form = _connection(cfg["connection"], "connection")
    grid = _grid(cfg["grid"], "grid", 2) if "grid" in cfg else None
    points: list[tuple[float, float]] = []
    if "points" in cfg:
        for i, row in enumerate(_as_list(cfg["points"], "points")):
            pair = _as_list(row, _join("points", i), length=2)
            points.append((
                _as_float(pair[0], _join(_join("points", i), 0)),
                _as_float(pair[1], _join(_join("points", i), 1)),
            ))
    sweep = None
    if "suspension" in cfg:
        s = _as_dict(cfg["suspension"], "suspension")
        _check_keys(s, "suspension", ("model", "epsilon", "grid"),
                    required=("model", "epsilon", "grid"))
        model = _as_str(s["model"], "suspension.model")
        if model not in MODELS:
            raise ConfigError("suspension.model",
                              f"unknown model {model!r}; choose from {', '.join(MODELS)}")
        eps_list = _as_list(s["epsilon"], "suspension.epsilon")
        if not eps_list:
            raise ConfigError("suspension.epsilon", "need at least one epsilon")
        eps = []
        for i, v in enumerate(eps_list):
            e = _as_float(v, _join("suspension.epsilon", i))
            if e <= 0:
                raise ConfigError(_join("suspension.epsilon", i),
                                  "epsilon must be positive")
            eps.append(e)
        sbox, ssteps = _grid(s["grid"], "suspension.grid", 5)
        sweep = SuspensionSweep(model=model, epsilons=tuple(eps), box=sbox, steps=ssteps)
    if grid is None and not points and sweep is None:
        raise ConfigError("", "nothing to do: provide 'grid', 'points', or 'suspension'")
    return ConnectionJob(form=form, grid=grid, points=tuple(points),
                         sweep=sweep, tol=_tol(cfg))


# ------------------------------------------------------------------ extend

@dataclass(frozen=True)
class LoopSpec:
    loop: Loop
    label: str


@dataclass(frozen=True)
class RegionSpec:
    points: tuple[tuple[float, float], ...]
    label: str


@dataclass(frozen=True)
class ExtendJob:
    mode: str  # "family" | "single" | "cone"
    tol: float
    n_quad: int = 256
    # family mode
    alpha: float | None = None
    heights: tuple[float, ...] = ()
    n_theta: int = 24
    n_z: int = 12
    z_top: float = 0.95
    # single mode
    form: ConnectionForm | None = None
    loop: LoopSpec | None = None
    region: RegionSpec | None = None
    # cone mode
    samples: tuple[tuple[float, float, float], ...] = ()
    target: tuple[float, float, float] | None = None


def _loop_spec(value, path: str) -> LoopSpec:
    d = _as_dict(value, path)
    kind = _as_str(d.get("kind"), _join(path, "kind")) if "kind" in d else None
    if kind is None:
        raise ConfigError(path, "missing required key 'kind'")
    if kind == "band_latitude":
        _check_keys(d, path, ("kind", "h"), required=("kind", "h"))
        h = _as_float(d["h"], _join(path, "h"))
        if not -1.0 < h < 1.0:
            raise ConfigError(_join(path, "h"), "latitude must satisfy -1 < h < 1")
        return LoopSpec(band_latitude_loop(h), f"band_latitude(h={h})")
    if kind == "circle":
        _check_keys(d, path, ("kind", "center", "radius"), required=("kind", "radius"))
        center = (0.0, 0.0)
        if "center" in d:
            c = _as_list(d["center"], _join(path, "center"), length=2)
            center = (_as_float(c[0], _join(_join(path, "center"), 0)),
                      _as_float(c[1], _join(_join(path, "center"), 1)))
        radius = _as_float(d["radius"], _join(path, "radius"))
        if radius <= 0:
            raise ConfigError(_join(path, "radius"), "radius must be positive")
        return LoopSpec(circle_loop(center, radius), f"circle(r={radius})")
    if kind == "parametric":
        _check_keys(d, path, ("kind", "x", "y", "periods"), required=("kind", "x", "y"))
        x = _expr(d["x"], _join(path, "x"), 1)
        y = _expr(d["y"], _join(path, "y"), 1)
        periods: tuple[float | None, float | None] = (None, None)
        if "periods" in d:
            raw = _as_list(d["periods"], _join(path, "periods"), length=2)
            vals = [None if v is None else _as_float(v, _join(_join(path, "periods"), i))
                    for i, v in enumerate(raw)]
            periods = (vals[0], vals[1])
        return LoopSpec(Loop(x, y, periods=periods), "parametric")
    raise ConfigError(_join(path, "kind"),
                      f"unknown loop kind {kind!r}; use band_latitude, circle, or parametric")


def _region_spec(value, path: str) -> RegionSpec:
    d = _as_dict(value, path)
    if "kind" not in d:
        raise ConfigError(path, "missing required key 'kind'")
    kind = _as_str(d["kind"], _join(path, "kind"))
    if kind == "cap":
        _check_keys(d, path, ("kind", "h", "n_theta", "n_z", "z_top"),
                    required=("kind", "h"))
        h = _as_float(d["h"], _join(path, "h"))
        n_theta = _as_int(d.get("n_theta", 24), _join(path, "n_theta"))
        n_z = _as_int(d.get("n_z", 12), _join(path, "n_z"))
        z_top = _as_float(d.get("z_top", 0.95), _join(path, "z_top"))
        if not -1.0 < h < 1.0:
            raise ConfigError(_join(path, "h"), "cap base must satisfy -1 < h < 1")
        if n_theta < 3 or n_z < 2:
            raise ConfigError(path, "cap sampling needs n_theta >= 3 and n_z >= 2")
        if not h < z_top <= 0.999999:
            raise ConfigError(_join(path, "z_top"), "need h < z_top < 1")
        pts = cap_region_points(h, n_theta=n_theta, n_z=n_z, z_top=z_top)
        return RegionSpec(tuple(map(tuple, pts.tolist())), f"cap(h={h})")
    if kind == "points":
        _check_keys(d, path, ("kind", "points"), required=("kind", "points"))
        rows = _as_list(d["points"], _join(path, "points"))
        if not rows:
            raise ConfigError(_join(path, "points"), "need at least one region point")
        pts = []
        for i, row in enumerate(rows):
            pair = _as_list(row, _join(_join(path, "points"), i), length=2)
            pts.append((_as_float(pair[0], _join(_join(_join(path, "points"), i), 0)),
                        _as_float(pair[1], _join(_join(_join(path, "points"), i), 1))))
        return RegionSpec(tuple(pts), f"points(n={len(pts)})")
    raise ConfigError(_join(path, "kind"),
                      f"unknown region kind {kind!r}; use cap or points")


def load_extend(cfg: dict) -> ExtendJob:
    _check_task(cfg, "extend")
    _check_keys(cfg, "", ("task", "family", "connection", "loop", "region",
                          "cone", "n_quad", "tol"))
    tol = _tol(cfg)
    n_quad = _as_int(cfg.get("n_quad", 256), "n_quad")
    if n_quad < 8:
        raise ConfigError("n_quad", "need at least 8 quadrature nodes")
    modes = [m for m, present in (
        ("family", "family" in cfg),
        ("single", "connection" in cfg or "loop" in cfg or "region" in cfg),
        ("cone", "cone" in cfg),
    ) if present]
    if len(modes) != 1:
        raise ConfigError("", "provide exactly one of 'family', "
                              "'connection'+'loop'+'region', or 'cone'")
    mode = modes[0]
    if mode == "family":
        f = _as_dict(cfg["family"], "family")
        _check_keys(f, "family", ("alpha", "heights", "n_theta", "n_z", "z_top"),
                    required=("alpha", "heights"))
        alpha = _as_float(f["alpha"], "family.alpha")
        hs = _as_list(f["heights"], "family.heights")
        if not hs:
            raise ConfigError("family.heights", "need at least one height")
        heights = []
        for i, v in enumerate(hs):
            h = _as_float(v, _join("family.heights", i))
            if not -1.0 < h < 1.0:
                raise ConfigError(_join("family.heights", i),
                                  "latitude must satisfy -1 < h < 1")
            heights.append(h)
        n_theta = _as_int(f.get("n_theta", 24), "family.n_theta")
        n_z = _as_int(f.get("n_z", 12), "family.n_z")
        z_top = _as_float(f.get("z_top", 0.95), "family.z_top")
        if n_theta < 3 or n_z < 2:
            raise ConfigError("family", "cap sampling needs n_theta >= 3 and n_z >= 2")
        if not max(heights) < z_top <= 0.999999:
            raise ConfigError("family.z_top", "need every height < z_top < 1")
        return ExtendJob(mode="family", tol=tol, n_quad=n_quad,
                         alpha=alpha, heights=tuple(heights),
                         n_theta=n_theta, n_z=n_z, z_top=z_top)
    if mode == "single":
        for key in ("connection", "loop", "region"):
            if key not in cfg:
                raise ConfigError("", f"single-decision mode requires key {key!r}")
        return ExtendJob(
            mode="single", tol=tol, n_quad=n_quad,
            form=_connection(cfg["connection"], "connection"),
            loop=_loop_spec(cfg["loop"], "loop"),
            region=_region_spec(cfg["region"], "region"),
        )
    c = _as_dict(cfg["cone"], "cone")
    _check_keys(c, "cone", ("samples", "target"), required=("samples", "target"))
    rows = _as_list(c["samples"], "cone.samples")
    if not rows:
        raise ConfigError("cone.samples", "need at least one sample vector")
    samples = []
    for i, row in enumerate(rows):
        triple = _as_list(row, _join("cone.samples", i), length=3)
        samples.append(tuple(
            _as_float(v, _join(_join("cone.samples", i), j))
            for j, v in enumerate(triple)
        ))
    t = _as_list(c["target"], "cone.target", length=3)
    target = tuple(_as_float(v, _join("cone.target", i)) for i, v in enumerate(t))
    return ExtendJob(mode="cone", tol=tol, n_quad=n_quad,
                     samples=tuple(samples), target=target)


# ---------------------------------------------------------------- topology

@dataclass(frozen=True)
class TopologyJob:
    decompositions: tuple = ()
    kervaire: tuple = ()       # (name, betti) pairs
    smale: tuple = ()          # SimplyConnectedData
    rokhlin: tuple = ()        # (name, p1 tuple) pairs


def _int_list(value, path: str, length: int | None = None) -> tuple[int, ...]:
    items = _as_list(value, path, length=length)
    return tuple(_as_int(v, _join(path, i)) for i, v in enumerate(items))


def load_topology(cfg: dict) -> TopologyJob:
    from .topology import ManifoldInvariants, SimplyConnectedData

    _check_task(cfg, "topology")
    _check_keys(cfg, "", ("task", "decompositions", "kervaire", "smale", "rokhlin"))
    decomps = []
    if "decompositions" in cfg:
        for i, raw in enumerate(_as_list(cfg["decompositions"], "decompositions")):
            path = _join("decompositions", i)
            d = _as_dict(raw, path)
            _check_keys(d, path,
                        ("name", "open", "spinnable", "betti", "half_p1",
                         "e_squared", "euler", "p1"),
                        required=("spinnable", "half_p1"))
            name = _as_str(d.get("name", f"M{i}"), _join(path, "name"))
            is_open = _as_bool(d.get("open", False), _join(path, "open"))
            spin = _as_bool(d["spinnable"], _join(path, "spinnable"))
            betti = None
            if "betti" in d:
                betti = _int_list(d["betti"], _join(path, "betti"), length=6)
            half_p1 = _int_list(d["half_p1"], _join(path, "half_p1"))
            if ("e_squared" in d) == ("euler" in d):
                raise ConfigError(path, "provide exactly one of 'e_squared' or 'euler'")
            if "e_squared" in d:
                e_sq = _int_list(d["e_squared"], _join(path, "e_squared"))
            else:
                from .topology import euler_square_pairings
                eu = _as_dict(d["euler"], _join(path, "euler"))
                _check_keys(eu, _join(path, "euler"), ("coefficients", "cup_tensor"),
                            required=("coefficients", "cup_tensor"))
                coeffs = _int_list(eu["coefficients"], _join(_join(path, "euler"), "coefficients"))
                cup = eu["cup_tensor"]
                tensor_path = _join(_join(path, "euler"), "cup_tensor")
                slices = _as_list(cup, tensor_path)
                tensor = []
                for si, sl in enumerate(slices):
                    rows = _as_list(sl, _join(tensor_path, si))
                    tensor.append([
                        _int_list(r, _join(_join(tensor_path, si), ri))
                        for ri, r in enumerate(rows)
                    ])
                e_sq = euler_square_pairings(coeffs, tensor)
            p1 = None
            if "p1" in d:
                p1 = _int_list(d["p1"], _join(path, "p1"))
            decomps.append(ManifoldInvariants(
                name=name, is_open=is_open, spinnable=spin, betti=betti,
                half_p1=half_p1, e_squared=e_sq, p1=p1,
            ))
    kerv = []
    if "kervaire" in cfg:
        for i, raw in enumerate(_as_list(cfg["kervaire"], "kervaire")):
            path = _join("kervaire", i)
            d = _as_dict(raw, path)
            _check_keys(d, path, ("name", "betti"), required=("betti",))
            name = _as_str(d.get("name", f"M{i}"), _join(path, "name"))
            kerv.append((name, _int_list(d["betti"], _join(path, "betti"), length=6)))
    smale = []
    if "smale" in cfg:
        for i, raw in enumerate(_as_list(cfg["smale"], "smale")):
            path = _join("smale", i)
            d = _as_dict(raw, path)
            _check_keys(d, path, ("name", "b2", "torsion", "w2_zero"), required=("b2",))
            name = _as_str(d.get("name", f"M{i}"), _join(path, "name"))
            torsion = ()
            if "torsion" in d:
                torsion = _int_list(d["torsion"], _join(path, "torsion"))
            w2_zero = _as_bool(d.get("w2_zero", True), _join(path, "w2_zero"))
            smale.append(SimplyConnectedData(
                b2=_as_int(d["b2"], _join(path, "b2")),
                torsion=torsion, w2_zero=w2_zero, name=name,
            ))
    rokh = []
    if "rokhlin" in cfg:
        for i, raw in enumerate(_as_list(cfg["rokhlin"], "rokhlin")):
            path = _join("rokhlin", i)
            d = _as_dict(raw, path)
            _check_keys(d, path, ("name", "p1"), required=("p1",))
            name = _as_str(d.get("name", f"M{i}"), _join(path, "name"))
            rokh.append((name, _int_list(d["p1"], _join(path, "p1"))))
    if not (decomps or kerv or smale or rokh):
        raise ConfigError("", "nothing to do: provide at least one of "
                              "'decompositions', 'kervaire', 'smale', 'rokhlin'")
    return TopologyJob(decompositions=tuple(decomps), kervaire=tuple(kerv),
                       smale=tuple(smale), rokhlin=tuple(rokh))
