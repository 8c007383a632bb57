"""The twisted nega-Hadamard transform on Z_q^n -> Z_2q, both backends.

With w = exp(i*pi/q) a primitive 2q-th root of unity, xi = w^2, and
eta = exp(i*pi/(2q)) a primitive 4q-th root (so eta^2 = w, w^2 = xi):

    N_f(u)  = q^(-n/2) * sum_x w^f(x) * xi^<x, u> * w^(x_1 + ... + x_n)
    N'_g(u) = q^(-n/2) * sum_x xi^g(x) * xi^<x, u> * w^(x_1 + ... + x_n)
    H_f(u)  = 2^(-n/2) * sum_x (-1)^(f(x) + <x, u>) * i^(x_1 + ... + x_n)

f is called negabent when |N_f(u)| = 1 at every u.  The exact backend
works with the unnormalized T_f(u) = q^(n/2) * N_f(u): every term of the
sum is a single power of w (because xi = w^2), so T_f(u) is an integer
combination of 2q-th roots of unity, and flatness is the exact integer
statement T * conj(T) = q^n.  q^(n/2) itself is irrational for odd n,
which is why the normalization stays on the float side.

The float backend evaluates the same sums in complex double precision
without any modular exponent reduction, so the two backends share no
arithmetic beyond the truth table itself.
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
    lift_sum,
    point_of,
)
from .cyclotomic import CycloElement, root_power

__all__ = [
    "DEFAULT_TOL",
    "SNAP_TOL",
    "BackendDisagreementError",
    "Spectrum",
    "NegabentVerdict",
    "ClosedFormValue",
    "InverseResult",
    "nht",
    "nht_exact",
    "full_spectrum",
    "is_negabent",
    "qary_nht",
    "qary_nht_exact",
    "qary_spectrum",
    "binary_nht",
    "inverse_nht",
    "closed_form_sum",
]

DEFAULT_TOL = 1e-9
SNAP_TOL = 1e-6
_CROSS_BACKEND_TOL = 1e-9


class BackendDisagreementError(RuntimeError):
    """Exact and float backends produced conflicting results."""


@dataclass(frozen=True)
class Spectrum:
    """Per-point transform values in table-index order.

    `exact` holds the unnormalized T_f(u); `floats` holds the normalized
    N_f(u).  Either may be absent depending on the requested backend.
    """

    q: int
    n: int
    exact: tuple[CycloElement, ...] | None
    floats: np.ndarray | None

    def magnitudes(self) -> np.ndarray:
        if self.floats is None:
            raise ValueError("spectrum has no float backend")
        return np.abs(self.floats)


@dataclass(frozen=True)
class NegabentVerdict:
    negabent: bool
    witness: ZqPoint | None


@dataclass(frozen=True)
class ClosedFormValue:
    """eta^phase_exponent / sine_product, the geometric closed form."""

    sine_product: float
    phase_exponent: int
    value: complex


@dataclass(frozen=True)
class InverseResult:
    """Recovered unit values w^f(x); `function` is None when any point
    fails to snap to a 2q-th root of unity within SNAP_TOL."""

    unit_values: np.ndarray
    function: GenFunction | None
    bad_indices: tuple[int, ...]


def _check_point(f, u: ZqPoint) -> None:
    if f.q != u.q:
        raise ValueError(f"modulus mismatch: {f.q} != {u.q}")
    if f.n != len(u):
        raise ValueError(f"length mismatch: {f.n} != {len(u)}")


def _u_array(u: ZqPoint) -> np.ndarray:
    return np.array(u.coords, dtype=np.int64)


# --- the 2q transform ---


def _nht_float_arr(
    q: int, n: int, values: np.ndarray, urow: np.ndarray
) -> complex:
    x = coord_table(q, n)
    phases = (math.pi / q) * (values + 2 * (x @ urow) + x.sum(axis=1))
    return complex(np.exp(1j * phases).sum()) / q ** (n / 2)


def _nht_exact_counts(
    q: int, n: int, values: np.ndarray, urow: np.ndarray
) -> np.ndarray:
    """Multiplicities of each power of w among the terms of T at urow."""
    x = coord_table(q, n)
    exps = (values + 2 * (x @ urow) + x.sum(axis=1)) % (2 * q)
    return np.bincount(exps, minlength=2 * q)


def _nht_float_row(f: GenFunction, urow: np.ndarray) -> complex:
    return _nht_float_arr(f.q, f.n, f.array, urow)


def _nht_exact_row(f: GenFunction, urow: np.ndarray) -> CycloElement:
    counts = _nht_exact_counts(f.q, f.n, f.array, urow)
    return CycloElement(2 * f.q, tuple(int(c) for c in counts))


def nht(f: GenFunction, u: ZqPoint) -> complex:
    """Normalized transform value N_f(u), complex double precision."""
    _check_point(f, u)
    return _nht_float_row(f, _u_array(u))


def nht_exact(f: GenFunction, u: ZqPoint) -> CycloElement:
    """Unnormalized transform value T_f(u) = q^(n/2) N_f(u), exact."""
    _check_point(f, u)
    return _nht_exact_row(f, _u_array(u))


def full_spectrum(f: GenFunction, backend: str = "both") -> Spectrum:
    """All q^n transform values; backend is 'exact', 'float' or 'both'.

    With both backends the entries are cross-checked pointwise; a
    discrepancy beyond 1e-9 raises BackendDisagreementError.
    """
    if backend not in ("exact", "float", "both"):
        raise ValueError(f"unknown backend {backend!r}")
    q, n = f.q, f.n
    rows = coord_table(q, n)
    exact = None
    floats = None
    if backend in ("exact", "both"):
        exact = tuple(_nht_exact_row(f, rows[i]) for i in range(q**n))
    if backend in ("float", "both"):
        floats = np.array(
            [_nht_float_row(f, rows[i]) for i in range(q**n)], dtype=complex
        )
    if exact is not None and floats is not None:
        scale = q ** (n / 2)
        for i, t in enumerate(exact):
            if abs(t.to_complex() / scale - floats[i]) >= _CROSS_BACKEND_TOL:
                raise BackendDisagreementError(
                    f"backends disagree at point {i}"
                )
    return Spectrum(q, n, exact, floats)


def is_negabent(
    f: GenFunction, backend: str = "exact", tol: float = DEFAULT_TOL
) -> NegabentVerdict:
    """Flat-spectrum test: |N_f(u)| = 1 everywhere.

    exact: T(u) * conj(T(u)) = q^n at every u, decided in Z[w].
    float: | |N_f(u)| - 1 | <= tol at every u.
    both:  run both; a verdict mismatch raises BackendDisagreementError.
    On failure the witness is the first offending u in table order.
    """
    if backend == "both":
        ve = is_negabent(f, "exact")
        vf = is_negabent(f, "float", tol)
        if ve.negabent != vf.negabent:
            raise BackendDisagreementError(
                f"exact={ve.negabent} float={vf.negabent} for q={f.q} n={f.n}"
            )
        return ve
    if backend not in ("exact", "float"):
        raise ValueError(f"unknown backend {backend!r}")
    q, n = f.q, f.n
    rows = coord_table(q, n)
    target = q**n
    for i in range(q**n):
        if backend == "exact":
            t = _nht_exact_row(f, rows[i])
            ok = (t * t.conjugate()).equals_integer(target)
        else:
            ok = abs(abs(_nht_float_row(f, rows[i])) - 1.0) <= tol
        if not ok:
            return NegabentVerdict(False, point_of(i, q, n))
    return NegabentVerdict(True, None)


# --- the q-valued variant ---


def qary_nht(g: QaryFunction, u: ZqPoint) -> complex:
    """N'_g(u), the transform with the q-th-root character on g itself."""
    _check_point(g, u)
    q, n = g.q, g.n
    x = coord_table(q, n)
    phases = (math.pi / q) * (
        2 * g.array + 2 * (x @ _u_array(u)) + x.sum(axis=1)
    )
    return complex(np.exp(1j * phases).sum()) / q ** (n / 2)


def qary_nht_exact(g: QaryFunction, u: ZqPoint) -> CycloElement:
    """Unnormalized q^(n/2) N'_g(u); terms are again powers of w."""
    _check_point(g, u)
    q, n = g.q, g.n
    x = coord_table(q, n)
    exps = (2 * g.array + 2 * (x @ _u_array(u)) + x.sum(axis=1)) % (2 * q)
    counts = np.bincount(exps, minlength=2 * q)
    return CycloElement(2 * q, tuple(int(c) for c in counts))


def qary_spectrum(g: QaryFunction) -> np.ndarray:
    """All N'_g(u) values, complex, in table-index order."""
    q, n = g.q, g.n
    rows = coord_table(q, n)
    x = coord_table(q, n)
    base = 2 * g.array + x.sum(axis=1)
    out = np.empty(q**n, dtype=complex)
    for i in range(q**n):
        phases = (math.pi / q) * (base + 2 * (x @ rows[i]))
        out[i] = np.exp(1j * phases).sum() / q ** (n / 2)
    return out


# --- the binary transform ---


def binary_nht(f: QaryFunction, u: ZqPoint) -> complex:
    """Classical binary transform H_f(u); requires q = 2.

    Coincides with N of the doubled function: H_f(u) = N_{2f}(u).
    """
    if f.q != 2:
        raise ValueError(f"binary transform needs q = 2, got q = {f.q}")
    _check_point(f, u)
    n = f.n
    x = coord_table(2, n)
    signs = 1 - 2 * ((f.array + x @ _u_array(u)) % 2)
    weights = x.sum(axis=1)
    return complex((signs * 1j**weights).sum()) / 2 ** (n / 2)


# --- inversion ---


def inverse_nht(s: Spectrum) -> InverseResult:
    """Invert a complete spectrum back to the unit values w^f(x).

    Uses the float backend when present, the exact one otherwise.  A
    recovered value within SNAP_TOL of some w^k yields table entry k; any
    non-snapping point leaves `function` as None and is listed in
    `bad_indices` (the input was not the spectrum of any function).
    """
    q, n = s.q, s.n
    npts = q**n
    rows = coord_table(q, n)
    sums = rows.sum(axis=1)
    units = np.empty(npts, dtype=complex)
    values: list[int] = []
    bad: list[int] = []

    if s.floats is not None:
        for i in range(npts):
            dots = rows @ rows[i]
            val = (
                (s.floats * np.exp(-2j * math.pi / q * dots)).sum()
                * cmath.exp(-1j * math.pi / q * int(sums[i]))
                / q ** (n / 2)
            )
            units[i] = val
            k = round(cmath.phase(val) / (math.pi / q)) % (2 * q)
            if abs(val - cmath.exp(1j * math.pi * k / q)) < SNAP_TOL:
                values.append(k)
            else:
                bad.append(i)
    elif s.exact is not None:
        scale = q**n
        for i in range(npts):
            dots = rows @ rows[i]
            acc = CycloElement.zero(2 * q)
            for j, t in enumerate(s.exact):
                acc = acc + t * root_power(2 * q, int(-2 * dots[j] - sums[i]))
            units[i] = acc.to_complex() / scale
            for k in range(2 * q):
                if (acc - scale * root_power(2 * q, k)).is_zero():
                    values.append(k)
                    break
            else:
                bad.append(i)
    else:
        raise ValueError("spectrum carries no backend data")

    fn = None
    if not bad:
        fn = GenFunction(q, n, tuple(values))
    return InverseResult(units, fn, tuple(bad))


# --- geometric closed form of the untwisted character sum ---


def closed_form_sum(u: ZqPoint) -> ClosedFormValue:
    """Closed form of sum_x xi^<u, x> * w^(sum_j x_j) over Z_q^n.

    Equals eta^(n(q-1) - 2*sum_j u_j) / prod_j sin((2u_j + 1) pi / 2q);
    no sine factor can vanish since 0 < (2u_j + 1) pi / 2q < pi.
    """
    q, n = u.q, len(u)
    if n < 1:
        raise ValueError("need at least one coordinate")
    sine_product = 1.0
    for uj in u.coords:
        sine_product *= math.sin((2 * uj + 1) * math.pi / (2 * q))
    exponent = n * (q - 1) - 2 * lift_sum(u)
    value = cmath.exp(1j * math.pi * exponent / (2 * q)) / sine_product
    return ClosedFormValue(sine_product, exponent, value)
