import math
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings

from cartan235 import available_backends, backend, engine, set_backend
from cartan235 import expr as ex
from cartan235.errors import DomainError
from cartan235.program import (
    OP_ADD, OP_CONST, OP_COS, OP_DIV, OP_EXP, OP_MUL, OP_NEG, OP_POW,
    OP_SIN, OP_SQRT, OP_SUB, OP_VAR, Program, compile_expr,
)

from test_expr import EXPRS  # reuse the expression strategy


@pytest.fixture
def restore_backend():
    saved = backend()
    yield
    set_backend(saved)


def _tree_reference(e, pts):
    """Independent oracle: per-point tree evaluation."""
    vals = np.empty(pts.shape[0])
    ok = np.ones(pts.shape[0], dtype=bool)
    for r in range(pts.shape[0]):
        try:
            vals[r] = ex.evaluate(e, tuple(pts[r]))
        except DomainError:
            vals[r] = np.nan
            ok[r] = False
    return vals, ok


_SAMPLE_TEXTS = (
    "1", "x1", "x5", "x1 + x2*x3 - x4^3", "sin(x1)*cos(x2) + exp(x3/4)",
    "sqrt(1 + x1^2 + x2^2)", "1/(1 + x1^2)", "x1^(-2)", "-x2 + 2^3",
    "sqrt(x1)", "1/x2", "exp(x1*x2*x3*x4*x5)",
)


@pytest.mark.parametrize("name", ["python", "compiled"])
def test_backend_matches_tree_evaluation(name, restore_backend):
    if name not in available_backends():
        pytest.skip("compiled kernel not built")
    set_backend(name)
    rng = np.random.default_rng(11)
    pts = rng.uniform(-2, 2, size=(257, 5))
    for text in _SAMPLE_TEXTS:
        e = ex.parse(text)
        prog = compile_expr(e, 5)
        vals, ok = engine.eval_programs([prog], pts)
        ref_vals, ref_ok = _tree_reference(e, pts)
        assert np.array_equal(ok, ref_ok), text
        good = ok
        assert np.array_equal(vals[0][good], ref_vals[good]), text


def test_backends_bitwise_identical():
    if "compiled" not in available_backends():
        pytest.skip("compiled kernel not built")
    rng = np.random.default_rng(12)
    pts = rng.uniform(-3, 3, size=(1025, 5))
    progs = [compile_expr(ex.parse(t), 5) for t in _SAMPLE_TEXTS]
    results = {}
    saved = backend()
    try:
        for name in ("compiled", "python"):
            set_backend(name)
            results[name] = engine.eval_programs(progs, pts)
    finally:
        set_backend(saved)
    vc, okc = results["compiled"]
    vp, okp = results["python"]
    assert np.array_equal(okc, okp)
    assert np.array_equal(vc[:, okc], vp[:, okp])


@settings(max_examples=200)
@given(EXPRS)
def test_random_programs_agree_with_tree(e):
    rng = np.random.default_rng(13)
    pts = rng.uniform(-1.5, 1.5, size=(37, 5))
    prog = compile_expr(e, 5)
    vals, ok = engine.eval_programs([prog], pts)
    ref_vals, ref_ok = _tree_reference(e, pts)
    assert np.array_equal(ok, ref_ok)
    both = ok & np.isfinite(ref_vals)
    assert np.allclose(vals[0][both], ref_vals[both], rtol=1e-12, atol=1e-12,
                       equal_nan=True)


def test_thread_count_does_not_change_results():
    rng = np.random.default_rng(14)
    pts = rng.uniform(-2, 2, size=(engine.CHUNK * 3 + 17, 5))
    progs = [compile_expr(ex.parse(t), 5)
             for t in ("sin(x1)*x2", "sqrt(x3 + 3)", "x4/x5")]
    v1, ok1 = engine.eval_programs(progs, pts, threads=1)
    v4, ok4 = engine.eval_programs(progs, pts, threads=4)
    assert np.array_equal(ok1, ok4)
    assert np.array_equal(v1[:, ok1], v4[:, ok4])


def test_domain_masks():
    pts = np.array([
        [1.0, 1.0, 1.0, 1.0, 1.0],
        [-1.0, 0.0, 1.0, 1.0, 1.0],   # sqrt(-1), division by zero
        [0.0, 2.0, 1.0, 1.0, 1.0],
    ])
    for text, bad_rows in (("sqrt(x1)", {1}), ("1/x2", {1}),
                           ("x2^(-1)", {1}), ("x1^(-2)", {2})):
        prog = compile_expr(ex.parse(text), 5)
        _, ok = engine.eval_programs([prog], pts)
        assert {i for i in range(3) if not ok[i]} == bad_rows, text


def test_compile_rejects_out_of_range_slots():
    with pytest.raises(ValueError):
        compile_expr(ex.parse("x5"), 4)


def test_program_stack_depth_is_sufficient():
    # deep right-leaning tree exercises the stack-size simulation
    e = ex.Var(0)
    for _ in range(40):
        e = ex.Add(ex.Const(1), e)
    prog = compile_expr(e, 1)
    vals, ok = engine.eval_programs([prog], np.array([[2.0]]))
    assert ok[0] and vals[0, 0] == 42.0


def test_opcode_table_is_stable():
    # The compiled kernel hardcodes these numbers; changing them silently
    # breaks the extension, so pin them here.
    assert (OP_CONST, OP_VAR, OP_ADD, OP_SUB, OP_MUL, OP_DIV, OP_NEG,
            OP_POW, OP_SIN, OP_COS, OP_EXP, OP_SQRT) == tuple(range(12))


def test_backend_env_override():
    code = ("import cartan235; print(cartan235.backend())")
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"PATH": "/usr/bin:/bin", "CARTAN235_BACKEND": "python"},
        capture_output=True, text=True, cwd="/",
    )
    assert out.stdout.strip() == "python"
    bad = subprocess.run(
        [sys.executable, "-c", code],
        env={"PATH": "/usr/bin:/bin", "CARTAN235_BACKEND": "bogus"},
        capture_output=True, text=True, cwd="/",
    )
    assert bad.returncode != 0


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        set_backend("fortran")
