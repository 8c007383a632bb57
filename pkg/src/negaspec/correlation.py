"""Nega-crosscorrelation and its duality with the transform spectrum.

For f, g: Z_q^n -> Z_2q the nega-crosscorrelation at shift u is

    C_{f,g}(u) = sum_x w^(f(x) - g(x+u)) * (-1)^c(x, u)

where c(x, u) counts the coordinates i with x_i + u_i >= q (addition of
canonical representatives carrying past q).  The sign is a power of w as
well, (-1) = w^q, so C_{f,g}(u) lies in Z[w] and the exact backend is
closed at order 2q.  C_f is short for C_{f,f} (the autocorrelation).

f is negabent exactly when C_f(u) = 0 for every u != 0, and spectrum and
correlation determine each other:

    sum_z C_{f,g}(z) w^(-sum z_i) xi^(-<u, z>) = q^n N_f(u) conj(N_g(u))
    C_{f,g}(z) = w^(sum z_i) q^(-n) sum_u q^n N_f(u) conj(N_g(u)) xi^(<u, z>)

Both identities clear to integer statements in Z[w] after multiplying by
q^n, which is how the exact checks below decide them.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    GenFunction,
    ZqPoint,
    add_points,
    carry_count,
    carry_count_table,
    concat,
    coord_table,
    lift_sum,
    point_of,
    restrict,
    shifted_index_table,
)
from .cyclotomic import CycloElement, root_power
from .transforms import _nht_exact_row, _nht_float_row

__all__ = [
    "CorrelationTable",
    "ComplementVerdict",
    "DualityReport",
    "DecompositionResult",
    "ncc",
    "nac",
    "correlation_table",
    "is_negabent_via_nac",
    "duality_check",
    "nac_spectral_form",
    "nac_restriction_decomposition",
    "complementary_nac",
    "spectral_complement",
]


@dataclass(frozen=True)
class CorrelationTable:
    """All q^n correlation values in table-index order, one backend each."""

    q: int
    n: int
    exact: tuple[CycloElement, ...] | None
    floats: np.ndarray | None


@dataclass(frozen=True)
class ComplementVerdict:
    complementary: bool
    witness: ZqPoint | None


@dataclass(frozen=True)
class DualityReport:
    """Spectrum/correlation duality checked in both directions.

    forward: correlation summed against the inverse character equals
    q^n N_f conj(N_g); inverse: correlation recovered from the spectrum
    product.  Float errors are the worst absolute deviations.
    """

    exact_forward: bool
    exact_inverse: bool
    float_error_forward: float
    float_error_inverse: float
    passed: bool


@dataclass(frozen=True)
class DecompositionResult:
    """Autocorrelation at a split shift versus its sub-function expansion."""

    direct: CycloElement
    decomposed: CycloElement
    agree: bool


def _check_pair(f: GenFunction, g: GenFunction) -> None:
    if f.q != g.q or f.n != g.n:
        raise ValueError(
            f"domain mismatch: ({f.q}, {f.n}) vs ({g.q}, {g.n})"
        )


def _ncc_exact(f: GenFunction, g: GenFunction, u: ZqPoint) -> CycloElement:
    q, n = f.q, f.n
    shift = shifted_index_table(q, n, u)
    carries = carry_count_table(q, n, u)
    exps = (f.array - g.array[shift] + q * carries) % (2 * q)
    counts = np.bincount(exps, minlength=2 * q)
    return CycloElement(2 * q, tuple(int(c) for c in counts))


def _ncc_float(f: GenFunction, g: GenFunction, u: ZqPoint) -> complex:
    q, n = f.q, f.n
    shift = shifted_index_table(q, n, u)
    carries = carry_count_table(q, n, u)
    phases = (math.pi / q) * (f.array - g.array[shift]) + math.pi * carries
    return complex(np.exp(1j * phases).sum())


def ncc(f: GenFunction, g: GenFunction, u: ZqPoint, backend: str = "exact"):
    """Crosscorrelation C_{f,g}(u); CycloElement or complex by backend."""
    _check_pair(f, g)
    if f.q != u.q or f.n != len(u):
        raise ValueError("shift point does not match the domain")
    if backend == "exact":
        return _ncc_exact(f, g, u)
    if backend == "float":
        return _ncc_float(f, g, u)
    raise ValueError(f"unknown backend {backend!r}")


def nac(f: GenFunction, u: ZqPoint, backend: str = "exact"):
    """Autocorrelation C_f(u) = C_{f,f}(u)."""
    return ncc(f, f, u, backend)


def correlation_table(
    f: GenFunction, g: GenFunction | None = None, backend: str = "exact"
) -> CorrelationTable:
    """C_{f,g} at every shift; g defaults to f (autocorrelation)."""
    if g is None:
        g = f
    _check_pair(f, g)
    if backend not in ("exact", "float", "both"):
        raise ValueError(f"unknown backend {backend!r}")
    q, n = f.q, f.n
    points = [point_of(i, q, n) for i in range(q**n)]
    exact = None
    floats = None
    if backend in ("exact", "both"):
        exact = tuple(_ncc_exact(f, g, u) for u in points)
    if backend in ("float", "both"):
        floats = np.array([_ncc_float(f, g, u) for u in points], dtype=complex)
    return CorrelationTable(q, n, exact, floats)


def is_negabent_via_nac(f: GenFunction):
    """Flatness via vanishing autocorrelation off the origin, exact.

    Checks C_f(u) = 0 for u != 0 in table order with early exit; the
    witness on failure is the first shift with C_f(u) != 0.  Each shift
    costs one pass over the table, so failures are detected much sooner
    than by computing any transform value.
    """
    from .transforms import NegabentVerdict

    q, n = f.q, f.n
    for i in range(1, q**n):
        u = point_of(i, q, n)
        if not _ncc_exact(f, f, u).is_zero():
            return NegabentVerdict(False, u)
    return NegabentVerdict(True, None)


def duality_check(
    f: GenFunction, g: GenFunction, tol: float = 1e-8
) -> DualityReport:
    """Verify both directions of the spectrum/correlation duality.

    Exact: both sides cleared to Z[w] at order 2q and compared for every
    point.  Float: worst absolute deviation per direction, passing when
    below tol (the compared quantities have magnitude up to q^n, so tol
    is interpreted on the q^n-scaled identities after dividing out q^n).
    """
    _check_pair(f, g)
    q, n = f.q, f.n
    npts = q**n
    points = [point_of(i, q, n) for i in range(npts)]
    rows = coord_table(q, n)
    sums = rows.sum(axis=1)

    c_exact = [_ncc_exact(f, g, z) for z in points]
    c_float = np.array([_ncc_float(f, g, z) for z in points], dtype=complex)
    tf_exact = [_nht_exact_row(f, rows[i]) for i in range(npts)]
    tg_exact = [_nht_exact_row(g, rows[i]) for i in range(npts)]
    nf_float = np.array([_nht_float_row(f, rows[i]) for i in range(npts)])
    ng_float = np.array([_nht_float_row(g, rows[i]) for i in range(npts)])
    prod_exact = [tf_exact[i] * tg_exact[i].conjugate() for i in range(npts)]
    prod_float = nf_float * np.conj(ng_float)

    exact_forward = True
    err_forward = 0.0
    for i in range(npts):
        dots = rows @ rows[i]
        lhs = CycloElement.zero(2 * q)
        for j in range(npts):
            lhs = lhs + c_exact[j] * root_power(
                2 * q, int(-sums[j] - 2 * dots[j])
            )
        if not (lhs - prod_exact[i]).is_zero():
            exact_forward = False
        lhs_f = (
            c_float * np.exp(-1j * math.pi / q * (sums + 2 * dots))
        ).sum() / q**n
        err_forward = max(err_forward, abs(lhs_f - prod_float[i]))

    exact_inverse = True
    err_inverse = 0.0
    for j in range(npts):
        dots = rows @ rows[j]
        rhs = CycloElement.zero(2 * q)
        for i in range(npts):
            rhs = rhs + prod_exact[i] * root_power(
                2 * q, int(sums[j] + 2 * dots[i])
            )
        if not (rhs - q**n * c_exact[j]).is_zero():
            exact_inverse = False
        rhs_f = (
            cmath.exp(1j * math.pi / q * int(sums[j]))
            * (prod_float * np.exp(2j * math.pi / q * dots)).sum()
        )
        err_inverse = max(err_inverse, abs(rhs_f - c_float[j]) / q**n)

    passed = (
        exact_forward
        and exact_inverse
        and err_forward <= tol
        and err_inverse <= tol
    )
    return DualityReport(
        exact_forward, exact_inverse, err_forward, err_inverse, passed
    )


def nac_spectral_form(f: GenFunction, z: ZqPoint) -> complex:
    """C_f(z) reconstructed from the power spectrum:
    w^(sum z_i) * sum_u |N_f(u)|^2 xi^(<u, z>)."""
    if f.q != z.q or f.n != len(z):
        raise ValueError("shift point does not match the domain")
    q, n = f.q, f.n
    rows = coord_table(q, n)
    power = np.array(
        [abs(_nht_float_row(f, rows[i])) ** 2 for i in range(q**n)]
    )
    dots = rows @ np.array(z.coords, dtype=np.int64)
    total = (power * np.exp(2j * math.pi / q * dots)).sum()
    return complex(cmath.exp(1j * math.pi / q * lift_sum(z)) * total)


def nac_restriction_decomposition(
    f: GenFunction, u: ZqPoint, w: ZqPoint
) -> DecompositionResult:
    """Expand C_f at the split shift (u, w) over prefix restrictions.

    With f on Z_q^(r+s), u on the first r coordinates and w on the rest:

        C_f(u||w) = sum_{v in Z_q^r} C_{f_v, f_{v+u}}(w) * (-1)^c(v, u)

    where f_v fixes the prefix to v and c counts carrying coordinates of
    v + u.  Both sides are returned exactly along with their equality.
    """
    if u.q != f.q or w.q != f.q:
        raise ValueError("modulus mismatch in split shift")
    r, s = len(u), len(w)
    if r < 1 or s < 1 or r + s != f.n:
        raise ValueError(
            f"split ({r}, {s}) does not cover {f.n} coordinates"
        )
    q = f.q
    direct = _ncc_exact(f, f, concat(u, w))
    total = CycloElement.zero(2 * q)
    for i in range(q**r):
        v = point_of(i, q, r)
        term = _ncc_exact(restrict(f, v), restrict(f, add_points(v, u)), w)
        if carry_count(v, u) % 2:
            term = -term
        total = total + term
    return DecompositionResult(direct, total, (direct - total).is_zero())


def complementary_nac(f: GenFunction, g: GenFunction) -> ComplementVerdict:
    """Exact test of C_f(u) + C_g(u) = 0 for every u != 0."""
    _check_pair(f, g)
    q, n = f.q, f.n
    for i in range(1, q**n):
        u = point_of(i, q, n)
        total = _ncc_exact(f, f, u) + _ncc_exact(g, g, u)
        if not total.is_zero():
            return ComplementVerdict(False, u)
    return ComplementVerdict(True, None)


def spectral_complement(
    f: GenFunction, g: GenFunction, tol: float = 1e-8
) -> ComplementVerdict:
    """Float test of |N_f(u)|^2 + |N_g(u)|^2 = 2 for every u.

    Equivalent to complementary_nac; the two backends give independent
    routes to the same property.
    """
    _check_pair(f, g)
    q, n = f.q, f.n
    rows = coord_table(q, n)
    for i in range(q**n):
        s = (
            abs(_nht_float_row(f, rows[i])) ** 2
            + abs(_nht_float_row(g, rows[i])) ** 2
        )
        if abs(s - 2.0) > tol:
            return ComplementVerdict(False, point_of(i, q, n))
    return ComplementVerdict(True, None)
