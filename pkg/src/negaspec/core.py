"""Carriers for points of Z_q^n and truth tables of functions into Z_2q.

Conventions used throughout the package:

* Elements of Z_q are stored as canonical residues 0..q-1, so the integer
  lift of a stored coordinate is the coordinate itself.  Signed input is
  normalized once, at the I/O boundary (`lift`, `ZqPoint.lifted`).
* Truth tables are row-major with x_1 most significant: the table index of
  (x_1, ..., x_n) is sum_k x_k * q^(n-k).  Restricting a prefix of
  variables is then a contiguous slice.
* Zero-variable functions are rejected.  Points may be empty (length 0) so
  that concatenation has an identity, but no function is defined on them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterator

import numpy as np

__all__ = [
    "lift",
    "ZqPoint",
    "GenFunction",
    "QaryFunction",
    "index_of",
    "point_of",
    "all_points",
    "carry_count",
    "add_points",
    "lift_sum",
    "concat",
    "restrict",
    "coord_table",
    "radix_weights",
    "shifted_index_table",
    "carry_count_table",
]


def _check_modulus(q: int) -> None:
    if q < 2:
        raise ValueError(f"modulus must be >= 2, got {q}")


def lift(c: int, q: int) -> int:
    """Canonical representative of c modulo q, in [0, q).

    Identity on canonical values; maps negatives from I/O into range.
    """
    _check_modulus(q)
    return c % q


@dataclass(frozen=True)
class ZqPoint:
    """A point of Z_q^n, coordinates stored as canonical residues."""

    coords: tuple[int, ...]
    q: int

    def __post_init__(self) -> None:
        _check_modulus(self.q)
        for c in self.coords:
            if not 0 <= c < self.q:
                raise ValueError(f"coordinate {c} out of range [0, {self.q})")

    @classmethod
    def lifted(cls, coords, q: int) -> "ZqPoint":
        """Build a point from arbitrary (possibly signed) integers."""
        _check_modulus(q)
        return cls(tuple(c % q for c in coords), q)

    @property
    def n(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def _same_domain(x: ZqPoint, y: ZqPoint) -> None:
    if x.q != y.q:
        raise ValueError(f"modulus mismatch: {x.q} != {y.q}")
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")


def index_of(p: ZqPoint) -> int:
    """Table index of p: x_1 most significant, base-q positional value."""
    idx = 0
    for c in p.coords:
        idx = idx * p.q + c
    return idx


def point_of(i: int, q: int, n: int) -> ZqPoint:
    """Inverse of index_of over [0, q^n)."""
    _check_modulus(q)
    if not 0 <= i < q**n:
        raise ValueError(f"index {i} out of range [0, {q**n})")
    coords = [0] * n
    for k in range(n - 1, -1, -1):
        i, coords[k] = divmod(i, q)
    return ZqPoint(tuple(coords), q)


def all_points(q: int, n: int) -> Iterator[ZqPoint]:
    """All points of Z_q^n in table-index order."""
    for coords in itertools.product(range(q), repeat=n):
        yield ZqPoint(coords, q)


def carry_count(x: ZqPoint, u: ZqPoint) -> int:
    """Number of coordinates where the lifted sum reaches q.

    Equals sum_i floor((x_i + u_i) / q) since each lifted sum is < 2q.
    """
    _same_domain(x, u)
    return sum(1 for a, b in zip(x.coords, u.coords) if a + b >= x.q)


def add_points(x: ZqPoint, y: ZqPoint) -> ZqPoint:
    """Componentwise sum mod q."""
    _same_domain(x, y)
    return ZqPoint(tuple((a + b) % x.q for a, b in zip(x.coords, y.coords)), x.q)


def lift_sum(x: ZqPoint) -> int:
    """Plain integer sum of the lifted coordinates (not reduced)."""
    return sum(x.coords)


def concat(u: ZqPoint, w: ZqPoint) -> ZqPoint:
    """Concatenation (u_1..u_r, w_1..w_s); empty w is the identity."""
    if u.q != w.q:
        raise ValueError(f"modulus mismatch: {u.q} != {w.q}")
    return ZqPoint(u.coords + w.coords, u.q)


@dataclass(frozen=True)
class GenFunction:
    """Truth table of a function Z_q^n -> Z_2q, in table-index order."""

    q: int
    n: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_modulus(self.q)
        if self.n < 1:
            raise ValueError("functions on zero variables are not supported")
        if len(self.values) != self.q**self.n:
            raise ValueError(
                f"table length {len(self.values)} != {self.q}^{self.n}"
            )
        m = 2 * self.q
        for v in self.values:
            if not 0 <= v < m:
                raise ValueError(f"value {v} out of range [0, {m})")

    @classmethod
    def from_callable(
        cls, q: int, n: int, fn: Callable[..., int]
    ) -> "GenFunction":
        """Tabulate fn on lifted coordinates, reducing mod 2q."""
        m = 2 * q
        vals = tuple(fn(*x) % m for x in itertools.product(range(q), repeat=n))
        return cls(q, n, vals)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.values, dtype=np.int64)
        a.setflags(write=False)
        return a

    def value_at(self, p: ZqPoint) -> int:
        return self.values[index_of(p)]

    def plus_constant(self, c: int) -> "GenFunction":
        m = 2 * self.q
        return GenFunction(self.q, self.n, tuple((v + c) % m for v in self.values))


@dataclass(frozen=True)
class QaryFunction:
    """Truth table of a function Z_q^n -> Z_q, in table-index order."""

    q: int
    n: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_modulus(self.q)
        if self.n < 1:
            raise ValueError("functions on zero variables are not supported")
        if len(self.values) != self.q**self.n:
            raise ValueError(
                f"table length {len(self.values)} != {self.q}^{self.n}"
            )
        for v in self.values:
            if not 0 <= v < self.q:
                raise ValueError(f"value {v} out of range [0, {self.q})")

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.values, dtype=np.int64)
        a.setflags(write=False)
        return a

    def value_at(self, p: ZqPoint) -> int:
        return self.values[index_of(p)]

    def doubled(self) -> GenFunction:
        """Embed into the 2q-valued setting by doubling every value."""
        return GenFunction(self.q, self.n, tuple(2 * v for v in self.values))


def restrict(f: GenFunction, v: ZqPoint) -> GenFunction:
    """Fix the first r variables of f to v; contiguous slice of the table."""
    if v.q != f.q:
        raise ValueError(f"modulus mismatch: {v.q} != {f.q}")
    r = len(v)
    if not 1 <= r <= f.n - 1:
        raise ValueError(f"prefix length must be in [1, {f.n - 1}], got {r}")
    block = f.q ** (f.n - r)
    start = index_of(v) * block
    return GenFunction(f.q, f.n - r, f.values[start : start + block])


# --- vectorized index plumbing (read-only cached tables) ---


@lru_cache(maxsize=None)
def coord_table(q: int, n: int) -> np.ndarray:
    """(q^n, n) array whose row i is the coordinate vector of point i."""
    idx = np.arange(q**n)
    cols = []
    for k in range(n - 1, -1, -1):
        cols.append((idx // q**k) % q)
    t = np.stack(cols, axis=1).astype(np.int64)
    t.setflags(write=False)
    return t


@lru_cache(maxsize=None)
def radix_weights(q: int, n: int) -> np.ndarray:
    """[q^(n-1), ..., q, 1] so that index = coords @ weights."""
    w = np.array([q**k for k in range(n - 1, -1, -1)], dtype=np.int64)
    w.setflags(write=False)
    return w


def shifted_index_table(q: int, n: int, u: ZqPoint) -> np.ndarray:
    """perm[i] = index of point(i) + u; gathers f(x + u) as f.array[perm]."""
    t = coord_table(q, n)
    uu = np.array(u.coords, dtype=np.int64)
    return ((t + uu) % q) @ radix_weights(q, n)


def carry_count_table(q: int, n: int, u: ZqPoint) -> np.ndarray:
    """carry[i] = number of coordinates of point(i) + u reaching q."""
    t = coord_table(q, n)
    uu = np.array(u.coords, dtype=np.int64)
    return ((t + uu) >= q).sum(axis=1)
