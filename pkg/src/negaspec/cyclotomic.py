"""Exact arithmetic with integer sums of m-th roots of unity.

An element is stored as m integer coefficients c_0..c_{m-1} standing for
sum_k c_k * w^k with w = exp(2*pi*i/m).  The representation lives in the
group ring Z[x]/(x^m - 1) and is deliberately non-canonical: the basis
satisfies relations, so two coefficient vectors may denote the same complex
number.  Zero-ness (and hence equality, via differences) is decided exactly
by polynomial divisibility by the m-th cyclotomic polynomial, which is the
minimal polynomial of w.

Primitive roots are fixed as w_m = exp(2*pi*i/m) everywhere, giving the
coherent tower w_{4q}^2 = w_{2q}, w_{2q}^2 = w_q used by the transform
modules.  Coefficients are plain Python integers, so no sum ever overflows.

Mixing orders requires an explicit `embed` call; arithmetic on mismatched
orders raises instead of promoting silently.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "CycloPolynomial",
    "cyclotomic_poly",
    "CycloElement",
    "root_power",
    "coeffs_represent_zero",
]

_MAX_ORDER = 10**4


@dataclass(frozen=True)
class CycloPolynomial:
    """The m-th cyclotomic polynomial, coefficients ascending, monic."""

    m: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def _exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    # num / den for monic den, exact over the integers
    num = list(num)
    d = len(den) - 1
    quot = [0] * (len(num) - d)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c:
            quot[i - d] = c
            for j in range(d + 1):
                num[i - d + j] -= c * den[j]
    if any(num):
        raise ArithmeticError("division was not exact")
    return quot


@lru_cache(maxsize=None)
def _cyclo_coeffs(m: int) -> tuple[int, ...]:
    # Phi_m = (x^m - 1) / prod Phi_d over proper divisors d of m
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _exact_div(poly, _cyclo_coeffs(d))
    return tuple(poly)


def cyclotomic_poly(m: int) -> CycloPolynomial:
    """Exact m-th cyclotomic polynomial, for 1 <= m <= 10^4."""
    if not 1 <= m <= _MAX_ORDER:
        raise ValueError(f"order must be in [1, {_MAX_ORDER}], got {m}")
    return CycloPolynomial(m, _cyclo_coeffs(m))


@lru_cache(maxsize=None)
def _unit_roots(m: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * k / m) for k in range(m))


@dataclass(frozen=True)
class CycloElement:
    """An integer combination of m-th roots of unity.

    Dataclass equality is coefficientwise and therefore finer than equality
    of the complex numbers represented; use (a - b).is_zero() for the
    semantic test.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if len(self.coeffs) != self.order:
            raise ValueError(
                f"expected {self.order} coefficients, got {len(self.coeffs)}"
            )

    # --- constructors ---

    @classmethod
    def zero(cls, m: int) -> "CycloElement":
        return cls(m, (0,) * m)

    @classmethod
    def one(cls, m: int) -> "CycloElement":
        return cls.integer(m, 1)

    @classmethod
    def integer(cls, m: int, c: int) -> "CycloElement":
        return cls(m, (c,) + (0,) * (m - 1))

    # --- ring operations ---

    def _check_order(self, other: "CycloElement") -> None:
        if self.order != other.order:
            raise ValueError(
                f"order mismatch {self.order} != {other.order}; embed explicitly"
            )

    def __add__(self, other: "CycloElement") -> "CycloElement":
        self._check_order(other)
        return CycloElement(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "CycloElement") -> "CycloElement":
        self._check_order(other)
        return CycloElement(
            self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "CycloElement":
        return CycloElement(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloElement(self.order, tuple(a * other for a in self.coeffs))
        if not isinstance(other, CycloElement):
            return NotImplemented
        self._check_order(other)
        m = self.order
        res = [0] * m
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        k = i + j
                        if k >= m:
                            k -= m
                        res[k] += a * b
        return CycloElement(m, tuple(res))

    __rmul__ = __mul__

    def conjugate(self) -> "CycloElement":
        """Complex conjugation: coefficient at k moves to (m - k) mod m."""
        m = self.order
        res = [0] * m
        for k, a in enumerate(self.coeffs):
            res[(m - k) % m] = a
        return CycloElement(m, tuple(res))

    def embed(self, target: int) -> "CycloElement":
        """Reinterpret at a multiple order: w_m^k = w_target^(k * target/m)."""
        if target % self.order != 0:
            raise ValueError(
                f"target order {target} is not a multiple of {self.order}"
            )
        step = target // self.order
        res = [0] * target
        for k, a in enumerate(self.coeffs):
            res[k * step] = a
        return CycloElement(target, tuple(res))

    # --- decisions ---

    def is_zero(self) -> bool:
        """True iff the represented complex number is exactly zero.

        The coefficient polynomial represents zero iff it is divisible by
        the m-th cyclotomic polynomial.
        """
        return coeffs_represent_zero(self.order, self.coeffs)

    def equals_integer(self, c: int) -> bool:
        return (self - CycloElement.integer(self.order, c)).is_zero()

    def to_complex(self) -> complex:
        roots = _unit_roots(self.order)
        return sum(
            (a * r for a, r in zip(self.coeffs, roots) if a), complex(0)
        )


def coeffs_represent_zero(m: int, coeffs) -> bool:
    """Whether sum_k coeffs[k] * w_m^k is the complex number zero.

    Decided by exact polynomial remainder modulo the m-th cyclotomic
    polynomial.  Accepts any integer sequence of length <= m; this is
    the unboxed form of CycloElement.is_zero for hot loops.
    """
    phi = _cyclo_coeffs(m)
    d = len(phi) - 1
    rem = [int(c) for c in coeffs]
    for i in range(len(rem) - 1, d - 1, -1):
        c = rem[i]
        if c:
            for j in range(d):
                rem[i - d + j] -= c * phi[j]
            rem[i] = 0
    return not any(rem[:d])


def root_power(m: int, k: int) -> CycloElement:
    """The single root w_m^(k mod m)."""
    if m < 1:
        raise ValueError("order must be >= 1")
    k %= m
    coeffs = [0] * m
    coeffs[k] = 1
    return CycloElement(m, tuple(coeffs))
