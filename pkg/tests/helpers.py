"""Shared builders for randomized test inputs."""

from __future__ import annotations

import numpy as np

from cartan235 import expr as ex
from cartan235.certify import GraphDistribution
from cartan235.fields import VectorField


def random_polynomial(rng: np.random.Generator, n_vars: int = 5,
                      max_degree: int = 3, max_terms: int = 4) -> ex.ScalarExpr:
    """Sparse integer-coefficient polynomial of bounded total degree."""
    n_terms = int(rng.integers(0, max_terms + 1))
    acc = ex.Const(0)
    for _ in range(n_terms):
        coeff = int(rng.integers(-3, 4))
        if coeff == 0:
            continue
        term: ex.ScalarExpr = ex.Const(coeff)
        degree = int(rng.integers(0, max_degree + 1))
        for _ in range(degree):
            slot = int(rng.integers(0, n_vars))
            term = ex.mul(term, ex.Var(slot))
        acc = ex.add(acc, term)
    return acc


def random_graph_distribution(rng: np.random.Generator,
                              max_degree: int = 3) -> GraphDistribution:
    a = tuple(random_polynomial(rng, max_degree=max_degree) for _ in range(3))
    b = tuple(random_polynomial(rng, max_degree=max_degree) for _ in range(3))
    return GraphDistribution(a, b)


def random_vector_field(rng: np.random.Generator, dim: int = 5,
                        max_degree: int = 2) -> VectorField:
    comps = tuple(
        random_polynomial(rng, n_vars=dim, max_degree=max_degree)
        for _ in range(dim)
    )
    return VectorField(comps, dim=dim)


def exact_rank(rows) -> int:
    """Rank of a matrix given as rows of Fractions, by exact elimination."""
    from fractions import Fraction

    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return 0
    rank = 0
    for col in range(len(m[0])):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / pv
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def exact_growth(X: VectorField, Y: VectorField, point) -> tuple[int, int, int]:
    """Growth vector computed in exact rational arithmetic."""
    from cartan235.fields import lie_bracket

    xy = lie_bracket(X, Y)
    frames = [X, Y, xy, lie_bracket(X, xy), lie_bracket(Y, xy)]
    vecs = [[ex.eval_exact(c, point) for c in f.components] for f in frames]
    return tuple(exact_rank(vecs[:k]) for k in (2, 3, 5))


def nilpotent_235_structure() -> np.ndarray:
    """Structure constants of the free nilpotent rank-2 step-3 algebra:
    [e1,e2] = e3, [e1,e3] = e4, [e2,e3] = e5."""
    C = np.zeros((5, 5, 5))
    C[0, 1, 2], C[1, 0, 2] = 1.0, -1.0
    C[0, 2, 3], C[2, 0, 3] = 1.0, -1.0
    C[1, 2, 4], C[2, 1, 4] = 1.0, -1.0
    return C


def left_invariant_field(C: np.ndarray, idx: int) -> VectorField:
    """Left-invariant extension of basis vector e_idx in exponential
    coordinates of a step-3 nilpotent algebra:
    X(x) = xi + (1/2)[x, xi] + (1/12)[x, [x, xi]]."""
    from fractions import Fraction

    dim = C.shape[0]

    def ad_apply(v):
        out = []
        for k in range(dim):
            acc = ex.Const(Fraction(0))
            for i in range(dim):
                for j in range(dim):
                    if C[i, j, k] != 0.0:
                        acc = ex.add(acc, ex.mul(
                            ex.mul(ex.Const(Fraction(int(C[i, j, k]))), ex.Var(i)),
                            v[j],
                        ))
            out.append(acc)
        return out

    xi = [ex.Const(Fraction(1 if i == idx else 0)) for i in range(dim)]
    ad1 = ad_apply(xi)
    ad2 = ad_apply(ad1)
    comps = tuple(
        ex.add(xi[k], ex.add(ex.mul(ex.Const(Fraction(1, 2)), ad1[k]),
                             ex.mul(ex.Const(Fraction(1, 12)), ad2[k])))
        for k in range(dim)
    )
    return VectorField(comps, dim=dim)
