"""Pure-Python evaluation backend: vectorized stack machine over numpy.

Mirrors the compiled kernel: same opcodes, same domain rules.  A point
is flagged bad (ok = False) when any operation along its evaluation hits
division by zero, sqrt of a negative number, or 0 to a negative power;
the value returned for bad points is unspecified.
"""

from __future__ import annotations

import numpy as np

from .program import (
    OP_ADD, OP_CONST, OP_COS, OP_DIV, OP_EXP, OP_MUL, OP_NEG, OP_POW,
    OP_SIN, OP_SQRT, OP_SUB, OP_VAR, Program,
)


def eval_program(prog: Program, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate one program at each row of pts; returns (values, ok)."""
    n = pts.shape[0]
    consts = prog.consts
    stack: list[np.ndarray] = []
    bad = np.zeros(n, dtype=bool)
    with np.errstate(all="ignore"):
        for op, arg in prog.code:
            if op == OP_CONST:
                stack.append(np.full(n, consts[arg]))
            elif op == OP_VAR:
                stack.append(pts[:, arg])
            elif op == OP_ADD:
                b = stack.pop()
                stack[-1] = stack[-1] + b
            elif op == OP_SUB:
                b = stack.pop()
                stack[-1] = stack[-1] - b
            elif op == OP_MUL:
                b = stack.pop()
                stack[-1] = stack[-1] * b
            elif op == OP_DIV:
                b = stack.pop()
                bad |= b == 0.0
                stack[-1] = stack[-1] / b
            elif op == OP_NEG:
                stack[-1] = -stack[-1]
            elif op == OP_POW:
                if arg < 0:
                    bad |= stack[-1] == 0.0
                    stack[-1] = np.power(stack[-1], float(arg))
                elif arg == 2:   # same operation order as the compiled kernel
                    stack[-1] = np.square(stack[-1])
                elif arg == 3:
                    stack[-1] = np.square(stack[-1]) * stack[-1]
                else:
                    stack[-1] = np.power(stack[-1], float(arg))
            elif op == OP_SIN:
                stack[-1] = np.sin(stack[-1])
            elif op == OP_COS:
                stack[-1] = np.cos(stack[-1])
            elif op == OP_EXP:
                stack[-1] = np.exp(stack[-1])
            elif op == OP_SQRT:
                bad |= stack[-1] < 0.0
                stack[-1] = np.sqrt(stack[-1])
            else:
                raise ValueError(f"bad opcode {op}")
    values = np.ascontiguousarray(stack[0], dtype=np.float64)
    if values.base is pts or not values.flags.owndata:
        values = values.copy()
    return values, ~bad
