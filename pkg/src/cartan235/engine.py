"""Backend selection and batched program evaluation.

Two interchangeable backends evaluate compiled programs over point
batches: the Cython kernel (built at install time) and the pure-Python
numpy interpreter.  The compiled kernel is used when importable; set the
environment variable CARTAN235_BACKEND=python (or call `set_backend`) to
force the fallback.

Batches are processed in fixed-size chunks in point order, so results do
not depend on the thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _evalpy
from .program import Program

try:
    from . import _evalcore
except ImportError:
    _evalcore = None

import os

CHUNK = 1024

_backend = "compiled" if _evalcore is not None else "python"
_env = os.environ.get("CARTAN235_BACKEND")
if _env:
    if _env not in ("compiled", "python"):
        raise RuntimeError(f"CARTAN235_BACKEND must be 'compiled' or 'python', got {_env!r}")
    if _env == "compiled" and _evalcore is None:
        raise RuntimeError("CARTAN235_BACKEND=compiled but the kernel is not built")
    _backend = _env


def backend() -> str:
    """Name of the active backend: 'compiled' or 'python'."""
    return _backend


def available_backends() -> tuple[str, ...]:
    return ("compiled", "python") if _evalcore is not None else ("python",)


def set_backend(name: str) -> None:
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} not available (have {available_backends()})")
    _backend = name


def _eval_chunk(progs: list[Program], pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = pts.shape[0]
    values = np.empty((len(progs), n), dtype=np.float64)
    ok = np.ones(n, dtype=bool)
    if _backend == "compiled":
        ok8 = np.empty(n, dtype=np.uint8)
        depth = max(max(prog.max_stack for prog in progs), 1)
        stack = np.empty((depth, n), dtype=np.float64)
        for k, prog in enumerate(progs):
            _evalcore.eval_program(prog.code, prog.consts, pts, values[k], ok8, stack)
            ok &= ok8.astype(bool)
    else:
        for k, prog in enumerate(progs):
            vals, good = _evalpy.eval_program(prog, pts)
            values[k] = vals
            ok &= good
    return values, ok


def eval_programs(progs, pts, threads: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate several programs at each row of pts.

    Returns (values, ok) with values of shape (n_programs, n_points) and
    ok a boolean row mask that is False where any program hit a domain
    violation at that point.
    """
    progs = list(progs)
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    if pts.ndim != 2:
        raise ValueError("points must be a 2-d array")
    for prog in progs:
        if prog.n_vars != pts.shape[1]:
            raise ValueError(
                f"program expects {prog.n_vars} coordinates, points have {pts.shape[1]}"
            )
    n = pts.shape[0]
    chunks = [(i, min(i + CHUNK, n)) for i in range(0, n, CHUNK)]
    values = np.empty((len(progs), n), dtype=np.float64)
    ok = np.empty(n, dtype=bool)

    def run(span):
        lo, hi = span
        values[:, lo:hi], ok[lo:hi] = _eval_chunk(progs, pts[lo:hi])

    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, chunks))
    else:
        for span in chunks:
            run(span)
    return values, ok
