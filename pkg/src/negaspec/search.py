"""Exhaustive enumeration, sharded cataloging, and the example driver.

A search space at (q, n) holds all (2q)^(q^n) truth tables, identified
with base-2q digit strings of the candidate index (values[0] most
significant).  Shards split the index range [0, total) into contiguous
blocks, so concatenating shard outputs in shard order reproduces the
single-shard output byte for byte.

Candidates are rejected by the cheapest exact test available: the first
nonzero autocorrelation value C_f(u), u != 0 in table order, each shift
costing one O(q^n) pass, versus O(q^2n) for a full spectrum.  Accepted
candidates get the authoritative exact digest T(u) conj(T(u)) = q^n per
point plus snapped float phases.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import (
    GenFunction,
    carry_count_table,
    coord_table,
    point_of,
    shifted_index_table,
)
from .correlation import is_negabent_via_nac
from .cyclotomic import CycloElement, coeffs_represent_zero
from .polyspec import poly_function
from .transforms import (
    BackendDisagreementError,
    DEFAULT_TOL,
    SNAP_TOL,
    _nht_exact_counts,
    _nht_float_arr,
)

__all__ = [
    "DEFAULT_CEILING",
    "InfeasibleSpaceError",
    "SearchSpace",
    "CatalogRecord",
    "VerifyRow",
    "enumerate_space",
    "candidate_function",
    "search_negabent",
    "merge_catalog_files",
    "verify_examples",
]

DEFAULT_CEILING = 10**8


class InfeasibleSpaceError(RuntimeError):
    """The space exceeds the configured candidate ceiling."""


@dataclass(frozen=True)
class SearchSpace:
    """All truth tables at (q, n), cut into contiguous index shards."""

    q: int
    n: int
    shard_index: int = 0
    shard_count: int = 1
    max_candidates: int = DEFAULT_CEILING

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError(f"modulus must be >= 2, got {self.q}")
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if self.shard_count < 1:
            raise ValueError(f"shard count must be >= 1, got {self.shard_count}")
        if not 0 <= self.shard_index < self.shard_count:
            raise ValueError(
                f"shard index {self.shard_index} outside "
                f"[0, {self.shard_count})"
            )
        if self.max_candidates < 1:
            raise ValueError("candidate ceiling must be positive")

    @property
    def total(self) -> int:
        return (2 * self.q) ** (self.q**self.n)

    def ensure_feasible(self) -> None:
        if self.total > self.max_candidates:
            raise InfeasibleSpaceError(
                f"space at q={self.q}, n={self.n} holds {self.total} "
                f"candidates, above the ceiling {self.max_candidates}"
            )

    def candidate_range(self) -> range:
        lo = self.total * self.shard_index // self.shard_count
        hi = self.total * (self.shard_index + 1) // self.shard_count
        return range(lo, hi)


def _digits(index: int, base: int, width: int) -> tuple[int, ...]:
    out = [0] * width
    for k in range(width - 1, -1, -1):
        index, out[k] = divmod(index, base)
    return tuple(out)


def candidate_function(space: SearchSpace, index: int) -> GenFunction:
    """The index-th table of the space: base-2q digits, first digit most
    significant."""
    if not 0 <= index < space.total:
        raise ValueError(f"candidate index {index} outside the space")
    values = _digits(index, 2 * space.q, space.q**space.n)
    return GenFunction(space.q, space.n, values)


def enumerate_space(space: SearchSpace) -> Iterator[GenFunction]:
    """All candidates of this shard in index order."""
    space.ensure_feasible()
    q, n = space.q, space.n
    width = q**n
    for index in space.candidate_range():
        yield GenFunction(q, n, _digits(index, 2 * q, width))


@dataclass(frozen=True)
class CatalogRecord:
    """One searched candidate.  Flat candidates additionally carry the
    exact digest tsq (T(u) conj(T(u)) per point, each the integer q^n)
    and float phases snapped to the nearest power of the 4q-th root
    (None where a phase does not snap within SNAP_TOL)."""

    q: int
    n: int
    values: tuple[int, ...]
    negabent: bool
    tsq: tuple[int, ...] | None = None
    phases: tuple[int | None, ...] | None = None

    def to_json_line(self) -> str:
        doc: dict = {
            "q": self.q,
            "n": self.n,
            "values": list(self.values),
            "negabent": self.negabent,
        }
        if self.tsq is not None:
            doc["tsq"] = list(self.tsq)
        return json.dumps(doc, separators=(",", ":"))

    @classmethod
    def from_json_line(cls, line: str) -> "CatalogRecord":
        doc = json.loads(line)
        tsq = tuple(doc["tsq"]) if "tsq" in doc else None
        return cls(
            doc["q"], doc["n"], tuple(doc["values"]), doc["negabent"], tsq
        )


def _shift_filters(q: int, n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """(permutation, q * carries) pairs for every nonzero shift."""
    out = []
    for i in range(1, q**n):
        u = point_of(i, q, n)
        out.append(
            (shifted_index_table(q, n, u), q * carry_count_table(q, n, u))
        )
    return out


def _exact_flat(
    q: int, n: int, vals: np.ndarray, filters
) -> tuple[bool, int]:
    """(verdict, index of first nonzero shift or -1) via exact NAC."""
    m = 2 * q
    for i, (perm, qc) in enumerate(filters, start=1):
        exps = (vals - vals[perm] + qc) % m
        counts = np.bincount(exps, minlength=m)
        if not coeffs_represent_zero(m, counts.tolist()):
            return False, i
    return True, -1


def _float_flat(q: int, n: int, vals: np.ndarray, tol: float) -> bool:
    rows = coord_table(q, n)
    for i in range(q**n):
        if abs(abs(_nht_float_arr(q, n, vals, rows[i])) - 1.0) > tol:
            return False
    return True


def _hit_digest(
    q: int, n: int, vals: np.ndarray
) -> tuple[tuple[int, ...], tuple[int | None, ...]]:
    rows = coord_table(q, n)
    target = q**n
    tsq = []
    phases: list[int | None] = []
    for i in range(q**n):
        counts = _nht_exact_counts(q, n, vals, rows[i])
        t = CycloElement(2 * q, tuple(int(c) for c in counts))
        if not (t * t.conjugate()).equals_integer(target):
            raise BackendDisagreementError(
                f"zero autocorrelation but non-flat spectrum at point {i}"
            )
        tsq.append(target)
        nf = _nht_float_arr(q, n, vals, rows[i])
        k = round(np.angle(nf) / (math.pi / (2 * q))) % (4 * q)
        snapped = complex(
            math.cos(math.pi * k / (2 * q)), math.sin(math.pi * k / (2 * q))
        )
        phases.append(k if abs(nf - snapped) < SNAP_TOL else None)
    return tuple(tsq), tuple(phases)


def search_negabent(
    space: SearchSpace,
    backend: str = "both",
    hits_only: bool = False,
    tol: float = DEFAULT_TOL,
) -> Iterator[CatalogRecord]:
    """Stream a record per candidate (per flat candidate with hits_only).

    The exact autocorrelation filter is authoritative; with backend
    'both' the float flat test must reach the same verdict on every
    candidate or BackendDisagreementError is raised.
    """
    if backend not in ("exact", "float", "both"):
        raise ValueError(f"unknown backend {backend!r}")
    space.ensure_feasible()
    q, n = space.q, space.n
    width = q**n
    filters = _shift_filters(q, n)
    for index in space.candidate_range():
        values = _digits(index, 2 * q, width)
        vals = np.array(values, dtype=np.int64)
        if backend in ("exact", "both"):
            verdict, _ = _exact_flat(q, n, vals, filters)
            if backend == "both" and _float_flat(q, n, vals, tol) != verdict:
                raise BackendDisagreementError(
                    f"verdict mismatch on candidate {index} at q={q}, n={n}"
                )
        else:
            verdict = _float_flat(q, n, vals, tol)
        if verdict:
            tsq, phases = _hit_digest(q, n, vals)
            yield CatalogRecord(q, n, values, True, tsq, phases)
        elif not hits_only:
            yield CatalogRecord(q, n, values, False)


def merge_catalog_files(paths, out_path) -> None:
    """Concatenate shard outputs in the given order; with shards listed
    by index this reproduces the single-shard file byte for byte."""
    with open(out_path, "wb") as out:
        for path in paths:
            with open(path, "rb") as part:
                out.write(part.read())


# --- the example catalog ---

# (expression, n, moduli) triples of known flat functions, evaluated on
# lifted coordinates mod 2q.  Together with the quadratic/bilinear rows
# below this is the package's reference catalog.
CATALOG_ITEMS: tuple[tuple[str, int, tuple[int, ...]], ...] = (
    ("x1^2 + x2^2 + x3^2", 3, (3, 5, 7)),
    ("x1^2 + x2^2 + x3^2 + x4^2", 4, (3, 5)),
    (
        "x1^2 + x2^2 + x3^2 + x4^2 + 2*x1*x2 + 2*x3*x4 + 2*x2*x4",
        4,
        (2, 3, 5, 7, 9),
    ),
    ("x1^2 + x1", 1, (2, 4, 6, 8)),
    ("2*x1^2 + x1", 1, (3, 5, 7)),
    ("2*x1^4 + x1^2", 1, (9, 27, 81)),
    ("2*x1^4 + 2*x1^3 + 2*x1^2 + x1", 1, (3, 4, 12)),
    ("x1^3 + 2*x1*x2 + 2*x2^2", 2, (2, 3)),
    ("x1^3 + 2*x1*x2 + x2^2", 2, (2, 3, 9, 27)),
    ("2*x1*x2^2 + 2*x1^2*x2 + 2*x1^2 + 2*x2^2 + x1 + x2", 2, (4,)),
)


@dataclass(frozen=True)
class VerifyRow:
    label: str
    q: int
    n: int
    points: int
    passed: bool
    seconds: float
    detail: str


def _phase_detail(q: int, f: GenFunction) -> tuple[bool, str]:
    """Check the two-variable family's closed-form spectrum phases."""
    rows = coord_table(q, 2)
    worst = 0.0
    for i in range(q**2):
        u1, u2 = int(rows[i][0]), int(rows[i][1])
        expected = complex(
            math.cos(math.pi * (2 * u2 + 1) * (q - u1 - 1) / q),
            math.sin(math.pi * (2 * u2 + 1) * (q - u1 - 1) / q),
        )
        got = _nht_float_arr(q, 2, f.array, rows[i])
        worst = max(worst, abs(got - expected))
    return worst <= 1e-9, f"max phase deviation {worst:.3e}"


def verify_examples(max_points: int = 10**4) -> list[VerifyRow]:
    """Exact verification of the reference catalog, one row per (form, q).

    Rows whose table would exceed max_points are skipped.  Failures are
    rows with passed=False, never exceptions.
    """
    from .constructions import bilinear_negabent, quadratic_negabent

    rows: list[VerifyRow] = []

    def run(label: str, f: GenFunction, extra: str = "") -> None:
        points = f.q**f.n
        if points > max_points:
            return
        start = time.perf_counter()
        verdict = is_negabent_via_nac(f)
        elapsed = time.perf_counter() - start
        detail = extra or (
            "flat" if verdict.negabent else f"witness u = {verdict.witness}"
        )
        rows.append(
            VerifyRow(
                label, f.q, f.n, points, verdict.negabent, elapsed, detail
            )
        )

    for q, n in ((4, 3), (6, 4)):
        run(f"quadratic family [q={q}, n={n}]", quadratic_negabent(q, n))

    if max_points >= 9:
        f3 = bilinear_negabent(3)
        start = time.perf_counter()
        verdict = is_negabent_via_nac(f3)
        phase_ok, phase_detail = _phase_detail(3, f3)
        elapsed = time.perf_counter() - start
        rows.append(
            VerifyRow(
                "bilinear family, spectrum phases [q=3]",
                3,
                2,
                9,
                verdict.negabent and phase_ok,
                elapsed,
                phase_detail,
            )
        )

    for expr, n, moduli in CATALOG_ITEMS:
        for q in moduli:
            if q**n > max_points:
                continue
            run(f"{expr} [q={q}]", poly_function(expr, q, n))
    return rows
