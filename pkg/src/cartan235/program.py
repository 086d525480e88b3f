"""Flat stack-machine programs compiled from expression trees.

A Program is the portable unit both evaluation backends consume: a
postfix opcode array plus a constant pool.  Opcode numbering here is the
single source of truth; the compiled kernel mirrors it and the test
suite pins the values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import expr as ex

OP_CONST = 0
OP_VAR = 1
OP_ADD = 2
OP_SUB = 3
OP_MUL = 4
OP_DIV = 5
OP_NEG = 6
OP_POW = 7
OP_SIN = 8
OP_COS = 9
OP_EXP = 10
OP_SQRT = 11

_FUN_OPS = {"sin": OP_SIN, "cos": OP_COS, "exp": OP_EXP, "sqrt": OP_SQRT}


@dataclass(frozen=True)
class Program:
    code: np.ndarray  # (n_ops, 2) int32, rows (opcode, argument)
    consts: np.ndarray  # (n_consts,) float64
    n_vars: int
    max_stack: int


def compile_expr(e: ex.ScalarExpr, n_vars: int) -> Program:
    """Compile an expression for points with n_vars coordinates."""
    used = ex.max_slot(e) + 1
    if used > n_vars:
        raise ValueError(
            f"expression references x{used} but points have {n_vars} coordinates"
        )
    code: list[tuple[int, int]] = []
    consts: list[float] = []
    _emit(e, code, consts)
    depth = 0
    max_depth = 0
    for op, _ in code:
        if op in (OP_CONST, OP_VAR):
            depth += 1
        elif op in (OP_ADD, OP_SUB, OP_MUL, OP_DIV):
            depth -= 1
        max_depth = max(max_depth, depth)
    return Program(
        code=np.array(code, dtype=np.int32).reshape(-1, 2),
        consts=np.array(consts, dtype=np.float64),
        n_vars=n_vars,
        max_stack=max_depth,
    )


def _emit(e: ex.ScalarExpr, code: list, consts: list) -> None:
    if isinstance(e, ex.Const):
        consts.append(float(e.value))
        code.append((OP_CONST, len(consts) - 1))
    elif isinstance(e, ex.Var):
        code.append((OP_VAR, e.slot))
    elif isinstance(e, ex.Add):
        _emit(e.lhs, code, consts)
        _emit(e.rhs, code, consts)
        code.append((OP_ADD, 0))
    elif isinstance(e, ex.Sub):
        _emit(e.lhs, code, consts)
        _emit(e.rhs, code, consts)
        code.append((OP_SUB, 0))
    elif isinstance(e, ex.Mul):
        _emit(e.lhs, code, consts)
        _emit(e.rhs, code, consts)
        code.append((OP_MUL, 0))
    elif isinstance(e, ex.Div):
        _emit(e.lhs, code, consts)
        _emit(e.rhs, code, consts)
        code.append((OP_DIV, 0))
    elif isinstance(e, ex.Neg):
        _emit(e.arg, code, consts)
        code.append((OP_NEG, 0))
    elif isinstance(e, ex.Pow):
        _emit(e.base, code, consts)
        code.append((OP_POW, e.exponent))
    elif isinstance(e, ex.Fun):
        _emit(e.arg, code, consts)
        code.append((_FUN_OPS[e.name], 0))
    else:
        raise TypeError(f"not an expression node: {e!r}")
