"""Families of flat-spectrum functions and the q = 4 slice criteria.

All formulas evaluate on the lifted representatives x in {0, ..., q-1}
with a single final reduction mod 2q.  The quadratic family needs q even
because it rests on shift-invariance of the square sum S = sum_x w^(x^2),
which fails for odd q (q^2 = q mod 2q is then a live phase, not 0).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    GenFunction,
    QaryFunction,
    ZqPoint,
    coord_table,
    point_of,
)
from .cyclotomic import CycloElement
from .transforms import _nht_float_row

__all__ = [
    "Q4PointRecord",
    "Q4ConditionsReport",
    "Q4_TOL",
    "Q4_DENOMINATOR_TOL",
    "affine_qary",
    "quadratic_negabent",
    "bilinear_negabent",
    "direct_sum",
    "squares_shift_sums",
    "h_from_fg",
    "restrict_last",
    "q4_conditions",
]

Q4_TOL = 1e-8
Q4_DENOMINATOR_TOL = 1e-10


def affine_qary(a: ZqPoint, b: int) -> QaryFunction:
    """g(x) = <a, x> + b mod q as a q-valued truth table."""
    q, n = a.q, len(a)
    t = coord_table(q, n)
    values = (t @ np.array(a.coords, dtype=np.int64) + b) % q
    return QaryFunction(q, n, tuple(int(v) for v in values))


def quadratic_negabent(q: int, n: int) -> GenFunction:
    """f(x) = sum_i (x_i^2 - x_i) mod 2q; flat for every even q."""
    if q % 2:
        raise ValueError(
            f"quadratic family needs even q (square sums are not "
            f"shift-invariant mod {2 * q}), got q = {q}"
        )
    t = coord_table(q, n)
    values = (t * t - t).sum(axis=1) % (2 * q)
    return GenFunction(q, n, tuple(int(v) for v in values))


def bilinear_negabent(q: int) -> GenFunction:
    """f(x1, x2) = 2 x1 x2 + x1 mod 2q on two variables; flat for all q,
    with spectrum N(u) = w^((2 u2 + 1)(q - u1 - 1))."""
    t = coord_table(q, 2)
    values = (2 * t[:, 0] * t[:, 1] + t[:, 0]) % (2 * q)
    return GenFunction(q, 2, tuple(int(v) for v in values))


def direct_sum(f1: GenFunction, f2: GenFunction) -> GenFunction:
    """f(x, y) = f1(x) + f2(y) mod 2q; preserves flatness."""
    if f1.q != f2.q:
        raise ValueError(f"modulus mismatch: {f1.q} != {f2.q}")
    q = f1.q
    grid = (f1.array[:, None] + f2.array[None, :]) % (2 * q)
    return GenFunction(q, f1.n + f2.n, tuple(int(v) for v in grid.ravel()))


def squares_shift_sums(q: int, a: int) -> tuple[CycloElement, CycloElement]:
    """(sum_x w^(x^2), sum_x w^((x+a)^2)) over x in Z_q, exactly.

    For even q the two sums are equal: (x+a)^2 differs from a permuted
    list of squares by multiples of 2q.  Odd q breaks this (the cross
    term 2xa + a^2 is not absorbed mod 2q), so it is rejected.
    """
    if q % 2:
        raise ValueError(f"square-sum shift invariance needs even q, got {q}")
    m = 2 * q
    plain = [0] * m
    shifted = [0] * m
    for x in range(q):
        plain[(x * x) % m] += 1
        shifted[((x + a) * (x + a)) % m] += 1
    return CycloElement(m, tuple(plain)), CycloElement(m, tuple(shifted))


def h_from_fg(f: GenFunction, g: GenFunction) -> GenFunction:
    """h(x, t) = (1 + t) f(x) + t g(x) mod 8 with t the LAST coordinate.

    Requires q = 4.  The t = 0 slice of h is f and the t = j slice is
    (1 + j) f + j g mod 8."""
    if f.q != 4 or g.q != 4:
        raise ValueError("slice parametrization is specific to q = 4")
    if f.n != g.n:
        raise ValueError(f"variable count mismatch: {f.n} != {g.n}")
    values = []
    for i in range(4**f.n):
        fv, gv = f.values[i], g.values[i]
        for t in range(4):
            values.append(((1 + t) * fv + t * gv) % 8)
    return GenFunction(4, f.n + 1, tuple(values))


def restrict_last(f: GenFunction, j: int) -> GenFunction:
    """Fix the last variable of f to j; the stride-q slice values[j::q]."""
    if f.n < 2:
        raise ValueError("need at least two variables to restrict")
    if not 0 <= j < f.q:
        raise ValueError(f"slice index {j} outside [0, {f.q})")
    return GenFunction(f.q, f.n - 1, f.values[j :: f.q])


@dataclass(frozen=True)
class Q4PointRecord:
    """Slice-transform data of one point u for the q = 4 criteria.

    phi is the ratio (N0 - w8^2 N2) / (w8 N1 - w8^3 N3) and psi the
    ratio (N0 + w8^2 N2) / (w8 N1 + w8^3 N3) divided by i; both must be
    real.  A ratio whose denominator nearly vanishes is left None and
    cond_ii becomes None (indeterminate) rather than pass/fail.
    """

    u: ZqPoint
    sub_transforms: tuple[complex, complex, complex, complex]
    combined_magnitude: float
    cond_i: bool
    phi: complex | None
    psi: complex | None
    cond_ii: bool | None
    power_sum: float
    alternating: complex
    cond_iii: bool


@dataclass(frozen=True)
class Q4ConditionsReport:
    """Per-point evaluation of the three q = 4 slice criteria.

    cond_ii_all ignores indeterminate points (counted separately); the
    other aggregates are plain conjunctions over all points.
    """

    n: int
    records: tuple[Q4PointRecord, ...]
    cond_i_all: bool
    cond_ii_all: bool
    cond_ii_indeterminate: int
    cond_iii_all: bool


def _real_within(z: complex) -> bool:
    return abs(z.imag) <= Q4_TOL * (1.0 + abs(z))


def q4_conditions(h: GenFunction) -> Q4ConditionsReport:
    """Evaluate the three slice criteria for h on n+1 variables at q = 4.

    The slices h_j fix the last variable to j.  With w8 = (1+i)/sqrt(2):
      (i)   |sum_j w8^j N_(h_j)(u)| = 2 at every u in Z_4^n;
      (ii)  phi(u) and psi(u) (see Q4PointRecord) are real;
      (iii) sum_j |N_(h_j)(u)|^2 = 4 and the alternating combination
            conj(N0) N2 - N0 conj(N2) + conj(N1) N3 - N1 conj(N3) = 0.
    All comparisons use tolerance 1e-8.  The three criteria are reported
    independently; no relation among them is assumed.
    """
    if h.q != 4:
        raise ValueError(f"slice criteria are specific to q = 4, got {h.q}")
    if h.n < 2:
        raise ValueError("need at least two variables")
    n = h.n - 1
    slices = [restrict_last(h, j) for j in range(4)]
    w8 = cmath.exp(1j * math.pi / 4)
    rows = coord_table(4, n)
    records = []
    indeterminate = 0
    for i in range(4**n):
        nj = tuple(_nht_float_row(slices[j], rows[i]) for j in range(4))
        combined = abs(sum(w8**j * nj[j] for j in range(4)))
        cond_i = abs(combined - 2.0) <= Q4_TOL

        den_phi = w8 * nj[1] - w8**3 * nj[3]
        den_psi = w8 * nj[1] + w8**3 * nj[3]
        phi = psi = None
        if abs(den_phi) >= Q4_DENOMINATOR_TOL:
            phi = (nj[0] - w8**2 * nj[2]) / den_phi
        if abs(den_psi) >= Q4_DENOMINATOR_TOL:
            psi = (nj[0] + w8**2 * nj[2]) / den_psi / 1j
        if phi is None or psi is None:
            cond_ii = None
            indeterminate += 1
        else:
            cond_ii = _real_within(phi) and _real_within(psi)

        power_sum = sum(abs(v) ** 2 for v in nj)
        alternating = (
            nj[0].conjugate() * nj[2]
            - nj[0] * nj[2].conjugate()
            + nj[1].conjugate() * nj[3]
            - nj[1] * nj[3].conjugate()
        )
        cond_iii = (
            abs(power_sum - 4.0) <= Q4_TOL and abs(alternating) <= Q4_TOL
        )
        records.append(
            Q4PointRecord(
                point_of(i, 4, n),
                nj,
                combined,
                cond_i,
                phi,
                psi,
                cond_ii,
                power_sum,
                alternating,
                cond_iii,
            )
        )
    return Q4ConditionsReport(
        n,
        tuple(records),
        all(r.cond_i for r in records),
        all(r.cond_ii for r in records if r.cond_ii is not None),
        indeterminate,
        all(r.cond_iii for r in records),
    )
