# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation backend.

Processes a whole chunk of points per opcode (column-at-a-time), which
lets the C compiler vectorize the arithmetic loops.  Opcode numbering
matches cartan235.program; the engine asserts the mapping at import.
Domain flags follow the same rules as the pure-Python backend; values at
flagged points are reported as NaN.
"""

from libc.math cimport cos, exp, pow, sin, sqrt, NAN


def eval_program(const int[:, ::1] code, const double[::1] consts,
                 const double[:, ::1] pts, double[::1] out,
                 unsigned char[::1] ok, double[:, ::1] stack):
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t n_ops = code.shape[0]
    cdef Py_ssize_t i, j, sp
    cdef int op, arg
    cdef double c, b
    with nogil:
        for i in range(n):
            ok[i] = 1
        sp = 0
        for j in range(n_ops):
            op = code[j, 0]
            arg = code[j, 1]
            if op == 0:   # CONST
                c = consts[arg]
                for i in range(n):
                    stack[sp, i] = c
                sp += 1
            elif op == 1:  # VAR
                for i in range(n):
                    stack[sp, i] = pts[i, arg]
                sp += 1
            elif op == 2:  # ADD
                sp -= 1
                for i in range(n):
                    stack[sp - 1, i] = stack[sp - 1, i] + stack[sp, i]
            elif op == 3:  # SUB
                sp -= 1
                for i in range(n):
                    stack[sp - 1, i] = stack[sp - 1, i] - stack[sp, i]
            elif op == 4:  # MUL
                sp -= 1
                for i in range(n):
                    stack[sp - 1, i] = stack[sp - 1, i] * stack[sp, i]
            elif op == 5:  # DIV
                sp -= 1
                for i in range(n):
                    b = stack[sp, i]
                    if b == 0.0:
                        ok[i] = 0
                        stack[sp - 1, i] = NAN
                    else:
                        stack[sp - 1, i] = stack[sp - 1, i] / b
            elif op == 6:  # NEG
                for i in range(n):
                    stack[sp - 1, i] = -stack[sp - 1, i]
            elif op == 7:  # POW
                if arg < 0:
                    for i in range(n):
                        if stack[sp - 1, i] == 0.0:
                            ok[i] = 0
                            stack[sp - 1, i] = NAN
                        else:
                            stack[sp - 1, i] = pow(stack[sp - 1, i], <double>arg)
                elif arg == 2:   # same operation order as the numpy backend
                    for i in range(n):
                        stack[sp - 1, i] = stack[sp - 1, i] * stack[sp - 1, i]
                elif arg == 3:
                    for i in range(n):
                        b = stack[sp - 1, i]
                        stack[sp - 1, i] = b * b * b
                else:
                    for i in range(n):
                        stack[sp - 1, i] = pow(stack[sp - 1, i], <double>arg)
            elif op == 8:  # SIN
                for i in range(n):
                    stack[sp - 1, i] = sin(stack[sp - 1, i])
            elif op == 9:  # COS
                for i in range(n):
                    stack[sp - 1, i] = cos(stack[sp - 1, i])
            elif op == 10:  # EXP
                for i in range(n):
                    stack[sp - 1, i] = exp(stack[sp - 1, i])
            else:          # SQRT
                for i in range(n):
                    if stack[sp - 1, i] < 0.0:
                        ok[i] = 0
                        stack[sp - 1, i] = NAN
                    else:
                        stack[sp - 1, i] = sqrt(stack[sp - 1, i])
        for i in range(n):
            if ok[i] == 1:
                out[i] = stack[0, i]
            else:
                out[i] = NAN
