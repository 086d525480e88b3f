"""Existence predicates on manifold invariants.

All computations are exact integer arithmetic on user-supplied algebraic
invariants of a 5-manifold M and a rank-two tangent subbundle candidate:

- kervaire: the mod-2 semicharacteristic k(M) = (b0 + b2 + b4) mod 2 of
  a closed connected M, from Betti numbers over the field with two
  elements.  Poincare duality b_q = b_{5-q} is validated with a warning;
  an odd Euler characteristic is rejected outright.
- decide_decomposition: a spinnable open M admits a Cartan-type
  distribution in a given homotopy class iff the pairing of half the
  first Pontryagin class of M equals the pairing of the squared Euler
  class of the candidate bundle on every H_4 basis class; for closed
  connected M additionally k(M) = 0.
- rokhlin_check: on a closed spin 5-manifold every p1-pairing is
  divisible by 48; used as a consistency gate on the inputs.
- smale_remark: for closed simply-connected M with torsion-free
  restrictions encoded by (b2, torsion orders, w2), the existence
  condition is equivalent to w2 = 0 together with b2 odd, and spin M
  decompose as connected sums of S2 x S3 copies and torsion pieces M_k.

Pairings are integers: either supplied directly, or (for the Euler
class) derived from e-coefficients and a cup-product tensor on H^2.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .errors import IncompleteData, InconsistentInput

__all__ = [
    "ManifoldInvariants", "Verdict", "Clause", "kervaire",
    "decide_decomposition", "rokhlin_check", "RokhlinResult",
    "SimplyConnectedData", "SmaleReport", "smale_remark",
    "euler_square_pairings",
]


def _int_tuple(values, what: str) -> tuple[int, ...]:
    out = []
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool):
            raise InconsistentInput(f"{what} must be integers, got {v!r}")
        out.append(v)
    return tuple(out)


def kervaire(betti) -> int:
    """Semicharacteristic (b0 + b2 + b4) mod 2 of a closed 5-manifold."""
    b = _int_tuple(betti, "Betti numbers")
    if len(b) != 6:
        raise InconsistentInput(f"need six Betti numbers b0..b5, got {len(b)}")
    if any(v < 0 for v in b):
        raise InconsistentInput("Betti numbers must be nonnegative")
    if any(b[q] != b[5 - q] for q in range(6)):
        warnings.warn("Betti numbers violate Poincare duality b_q = b_{5-q}",
                      stacklevel=2)
    chi = sum((-1) ** q * b[q] for q in range(6))
    if chi != 0:
        raise InconsistentInput(
            f"Euler characteristic {chi} != 0 is impossible for a closed "
            "odd-dimensional manifold"
        )
    return (b[0] + b[2] + b[4]) % 2


def euler_square_pairings(e_coefficients, cup_tensor) -> tuple[int, ...]:
    """<e^2, a_i> from e = sum_j e_j x_j and T[i][j][k] = <x_j x_k, a_i>."""
    e = _int_tuple(e_coefficients, "Euler class coefficients")
    out = []
    for i, matrix in enumerate(cup_tensor):
        if len(matrix) != len(e) or any(len(row) != len(e) for row in matrix):
            raise InconsistentInput(
                f"cup tensor slice {i} must be {len(e)}x{len(e)}"
            )
        total = 0
        for j, row in enumerate(matrix):
            for k, t in enumerate(_int_tuple(row, "cup tensor entries")):
                total += e[j] * e[k] * t
        out.append(total)
    return tuple(out)


@dataclass(frozen=True)
class ManifoldInvariants:
    """Inputs of the decomposition decision.

    half_p1 and e_squared list the pairings of (p1 of M)/2 and of the
    squared Euler class of the candidate plane bundle against a fixed
    basis of H_4; they must have equal length.  p1 (optional) lists the
    full Pontryagin pairings and is cross-checked when present.
    """

    name: str = "M"
    is_open: bool = False
    spinnable: bool | None = None
    betti: tuple[int, ...] | None = None
    half_p1: tuple[int, ...] | None = None
    e_squared: tuple[int, ...] | None = None
    p1: tuple[int, ...] | None = None

    def __post_init__(self):
        for label in ("half_p1", "e_squared", "p1"):
            v = getattr(self, label)
            if v is not None:
                object.__setattr__(self, label, _int_tuple(v, label))
        if self.betti is not None:
            object.__setattr__(self, "betti", _int_tuple(self.betti, "betti"))


@dataclass(frozen=True)
class Clause:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class Verdict:
    value: bool
    clauses: tuple[Clause, ...]

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.clauses if not c.passed)


def _require(inv: ManifoldInvariants, label: str):
    value = getattr(inv, label)
    if value is None:
        raise IncompleteData(f"{inv.name}: missing required field {label!r}")
    return value


def rokhlin_check(p1_pairings) -> "RokhlinResult":
    """Divisibility of every p1-pairing by 48 (spin case)."""
    p = _int_tuple(p1_pairings, "p1 pairings")
    per_class = tuple(v % 48 == 0 for v in p)
    return RokhlinResult(per_class=per_class, all_pass=all(per_class))


@dataclass(frozen=True)
class RokhlinResult:
    per_class: tuple[bool, ...]
    all_pass: bool


def decide_decomposition(inv: ManifoldInvariants) -> Verdict:
    """Existence of a Cartan-type distribution with the given class data.

    Open M: spinnable and half_p1 == e_squared on every basis class.
    Closed connected M: additionally kervaire(betti) == 0.  Supplied p1
    data inconsistent with half_p1 or with divisibility by 48 on a spin
    manifold is rejected with InconsistentInput.
    """
    spin = _require(inv, "spinnable")
    half_p1 = _require(inv, "half_p1")
    e_sq = _require(inv, "e_squared")
    if len(half_p1) != len(e_sq):
        raise InconsistentInput(
            f"{inv.name}: half_p1 and e_squared pair against the same H_4 "
            f"basis but have lengths {len(half_p1)} and {len(e_sq)}"
        )
    if inv.p1 is not None:
        if len(inv.p1) != len(half_p1):
            raise InconsistentInput(f"{inv.name}: p1 has the wrong length")
        if tuple(2 * v for v in half_p1) != inv.p1:
            raise InconsistentInput(f"{inv.name}: p1 is not twice half_p1")
        if spin and not inv.is_open and not rokhlin_check(inv.p1).all_pass:
            raise InconsistentInput(
                f"{inv.name}: p1 pairings of a closed spin manifold must be "
                "divisible by 48"
            )

    clauses = [Clause("spinnable", bool(spin),
                      "M is spinnable" if spin else "M is not spinnable")]
    pair_ok = half_p1 == e_sq
    clauses.append(Clause(
        "pairings", pair_ok,
        f"half_p1 {list(half_p1)} vs e^2 {list(e_sq)}",
    ))
    if not inv.is_open:
        betti = _require(inv, "betti")
        k = kervaire(betti)
        clauses.append(Clause(
            "kervaire", k == 0, f"semicharacteristic k(M) = {k}",
        ))
    value = all(c.passed for c in clauses)
    return Verdict(value=value, clauses=tuple(clauses))


@dataclass(frozen=True)
class SimplyConnectedData:
    """Closed simply-connected case: b2, torsion orders k with summands
    of order k^2 in H_2, and whether w2 vanishes."""

    b2: int
    torsion: tuple[int, ...] = field(default_factory=tuple)
    w2_zero: bool = True
    name: str = "M"

    def __post_init__(self):
        if not isinstance(self.b2, int) or self.b2 < 0:
            raise InconsistentInput("b2 must be a nonnegative integer")
        torsion = _int_tuple(self.torsion, "torsion orders")
        if any(k < 2 for k in torsion):
            raise InconsistentInput("torsion orders must be at least 2")
        object.__setattr__(self, "torsion", torsion)


@dataclass(frozen=True)
class SmaleReport:
    admits: bool
    b2: int
    torsion: tuple[int, ...]
    w2_zero: bool
    description: str | None
    reason: str


def smale_remark(data: SimplyConnectedData) -> SmaleReport:
    """Closed simply-connected M admits a Cartan-type distribution iff
    w2 = 0 and b2 is odd; spin M are connected sums of b2 copies of
    S2 x S3 and one M_k per torsion order."""
    admits = data.w2_zero and data.b2 % 2 == 1
    if not data.w2_zero:
        reason = "w2 is nonzero, M is not spin"
    elif data.b2 % 2 == 0:
        reason = f"b2 = {data.b2} is even"
    else:
        reason = f"w2 = 0 and b2 = {data.b2} is odd"
    description = None
    if data.w2_zero:
        parts = []
        if data.b2 == 1:
            parts.append("S2xS3")
        elif data.b2 > 1:
            parts.append(f"#{data.b2}(S2xS3)")
        parts.extend(f"M_{k}" for k in data.torsion)
        description = " # ".join(parts) if parts else "S5"
    return SmaleReport(
        admits=admits,
        b2=data.b2,
        torsion=data.torsion,
        w2_zero=data.w2_zero,
        description=description,
        reason=reason,
    )
