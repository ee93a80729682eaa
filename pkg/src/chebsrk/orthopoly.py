"""Shifted, orthonormal Chebyshev polynomial families on [0, 1].

Both kinds are normalized against their natural weight, so that
``int_0^1 P_j(x) P_k(x) w(x) dx = delta_jk``:

* first kind:  ``T_0 = sqrt(2/pi)``, ``T_n(x) = 2 cos(n arccos(2x-1)) / sqrt(pi)``
  with weight ``w(x) = 1 / (2 sqrt(x - x^2))``;
* second kind: ``U_n(x) = sin((n+1) arccos(2x-1)) / sqrt(pi (x - x^2))``
  with weight ``w(x) = 2 sqrt(x - x^2)``.

All moments, running integrals and unweighted product integrals have closed
forms; they are implemented directly and cross-checked against adaptive
integration in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

CHEBYSHEV_FIRST = "chebyshev1"
CHEBYSHEV_SECOND = "chebyshev2"

_KINDS = (CHEBYSHEV_FIRST, CHEBYSHEV_SECOND)

# Distance from {0, 1} below which trigonometric evaluation is abandoned in
# favour of the three-term recurrence (the second-kind quotient degenerates).
_ENDPOINT_GUARD = 1e-8

_SQRT_PI = math.sqrt(math.pi)


def _check_x(x: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"argument {x} outside [0, 1]")


@dataclass(frozen=True)
class PolynomialFamily:
    """A weighted orthonormal polynomial family on [0, 1].

    ``max_degree`` caps the coefficient tables (basis/monomial conversion and
    running integrals); evaluation and closed-form integrals are uncapped.
    """

    kind: str
    max_degree: int = 16

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")

    # -- evaluation ---------------------------------------------------------

    @property
    def p0_value(self) -> float:
        """Constant value of the degree-0 basis polynomial."""
        if self.kind == CHEBYSHEV_FIRST:
            return math.sqrt(2.0 / math.pi)
        return 2.0 / _SQRT_PI

    def eval(self, n: int, x: float) -> float:
        """Evaluate the degree-``n`` basis polynomial at ``x`` in [0, 1]."""
        if n < 0:
            raise ValueError("degree must be >= 0")
        _check_x(x)
        if min(x, 1.0 - x) < _ENDPOINT_GUARD:
            return self._eval_recurrence(n, x)
        theta = math.acos(2.0 * x - 1.0)
        if self.kind == CHEBYSHEV_FIRST:
            if n == 0:
                return self.p0_value
            return 2.0 * math.cos(n * theta) / _SQRT_PI
        return math.sin((n + 1) * theta) / math.sqrt(math.pi * (x - x * x))

    def _eval_recurrence(self, n: int, x: float) -> float:
        # Classical three-term recurrence on y = 2x - 1; stable for |y| <= 1.
        y = 2.0 * x - 1.0
        if self.kind == CHEBYSHEV_FIRST:
            prev, cur = 1.0, y
        else:
            prev, cur = 1.0, 2.0 * y
        if n == 0:
            val = prev
        elif n == 1:
            val = cur
        else:
            for _ in range(n - 1):
                prev, cur = cur, 2.0 * y * cur - prev
            val = cur
        if self.kind == CHEBYSHEV_FIRST:
            return val * (math.sqrt(2.0 / math.pi) if n == 0 else 2.0 / _SQRT_PI)
        return val * 2.0 / _SQRT_PI

    def weight(self, x: float) -> float:
        """Weight function value; singular at the endpoints for the first kind."""
        _check_x(x)
        s = x - x * x
        if self.kind == CHEBYSHEV_FIRST:
            if s == 0.0:
                raise ValueError(f"weight of {self.kind} is singular at x={x}")
            return 0.5 / math.sqrt(s)
        return 2.0 * math.sqrt(s)

    # -- closed-form integrals ----------------------------------------------

    def moment(self, k: int) -> float:
        """``int_0^1 P_k(t) dt``."""
        if k < 0:
            raise ValueError("degree must be >= 0")
        if self.kind == CHEBYSHEV_FIRST:
            if k == 0:
                return math.sqrt(2.0 / math.pi)
            if k % 2 == 1:
                return 0.0
            return 2.0 / (_SQRT_PI * (1.0 - k * k))
        return (1.0 + (-1.0) ** k) / ((k + 1) * _SQRT_PI)

    def running_integral(self, k: int) -> "BasisPoly":
        """``x -> int_0^x P_k(t) dt`` expressed in this basis (degree k+1)."""
        if k < 0:
            raise ValueError("degree must be >= 0")
        if k + 1 > self.max_degree:
            raise ValueError(f"degree {k + 1} exceeds cap {self.max_degree}")
        coeffs = np.zeros(k + 2)
        if self.kind == CHEBYSHEV_FIRST:
            if k == 0:
                # sqrt(2) T_1 / 4 + 1/sqrt(2 pi)
                coeffs[1] = math.sqrt(2.0) / 4.0
                constant = 1.0 / math.sqrt(2.0 * math.pi)
            elif k == 1:
                # (T_2 - 2/sqrt(pi)) / 8
                coeffs[2] = 0.125
                constant = -0.25 / _SQRT_PI
            else:
                coeffs[k + 1] = 1.0 / (4.0 * (k + 1))
                coeffs[k - 1] = -1.0 / (4.0 * (k - 1))
                constant = (-1.0) ** (k + 1) / ((k * k - 1.0) * _SQRT_PI)
        else:
            # (U_{k+1} - U_{k-1}) / (4(k+1)) + (-1)^k / ((k+1) sqrt(pi)),
            # with U_{-1} = 0.
            coeffs[k + 1] = 1.0 / (4.0 * (k + 1))
            if k >= 1:
                coeffs[k - 1] = -1.0 / (4.0 * (k + 1))
            constant = (-1.0) ** k / ((k + 1) * _SQRT_PI)
        coeffs[0] += constant / self.p0_value
        return BasisPoly(self, coeffs)

    def product_integral(self, j: int, k: int) -> float:
        """Unweighted ``int_0^1 P_j(t) P_k(t) dt``; symmetric in (j, k)."""
        if j < 0 or k < 0:
            raise ValueError("degrees must be >= 0")
        if j < k:
            j, k = k, j
        if self.kind == CHEBYSHEV_FIRST:
            if k == 0:
                return math.sqrt(2.0 / math.pi) * self.moment(j)
            if j == k:
                return self.moment(2 * k) / _SQRT_PI + 2.0 / math.pi
            return (self.moment(j + k) + self.moment(j - k)) / _SQRT_PI
        # Product expansion U_j U_k = (2/sqrt(pi)) sum_{l=0..k} U_{j-k+2l};
        # termwise integration gives the sum below.
        if (j + k) % 2 == 1:
            return 0.0
        total = sum(1.0 / (j - k + 1 + 2 * l) for l in range(k + 1))
        return 4.0 * total / math.pi

    def weighted_moment(self, k: int) -> float:
        """``int_0^1 x^k w(x) dx`` via an exact recurrence."""
        if k < 0:
            raise ValueError("degree must be >= 0")
        if self.kind == CHEBYSHEV_FIRST:
            val = math.pi / 2.0
            for m in range(1, k + 1):
                val *= (2.0 * m - 1.0) / (2.0 * m)
        else:
            val = math.pi / 4.0
            for m in range(1, k + 1):
                val *= (2.0 * m + 1.0) / (2.0 * m + 4.0)
        return val

    @property
    def weight_mass(self) -> float:
        """``int_0^1 w(x) dx`` (pi/2 for the first kind, pi/4 for the second)."""
        return self.weighted_moment(0)

    # -- basis <-> monomial conversion ---------------------------------------

    def _conversion_table(self) -> np.ndarray:
        return _monomial_table(self.kind, self.max_degree)

    def from_monomial(self, mono_coeffs) -> "BasisPoly":
        """Represent ``sum_m mono_coeffs[m] x^m`` in this orthonormal basis."""
        mono = np.asarray(mono_coeffs, dtype=float)
        if mono.ndim != 1 or mono.size == 0:
            raise ValueError("monomial coefficients must be a 1-D sequence")
        deg = mono.size - 1
        if deg > self.max_degree:
            raise ValueError(f"degree {deg} exceeds cap {self.max_degree}")
        table = self._conversion_table()[: deg + 1, : deg + 1]
        # table[j, m] holds the x^m coefficient of P_j; solve coeffs @ table = mono.
        coeffs = np.linalg.solve(table.T, mono)
        return BasisPoly(self, coeffs)

    def basis_vector(self, index: int, n_coeffs: int | None = None) -> "BasisPoly":
        """The basis polynomial ``P_index`` as a BasisPoly."""
        if index > self.max_degree:
            raise ValueError(f"degree {index} exceeds cap {self.max_degree}")
        coeffs = np.zeros((n_coeffs or index + 1))
        coeffs[index] = 1.0
        return BasisPoly(self, coeffs)


@lru_cache(maxsize=None)
def _monomial_table(kind: str, max_degree: int) -> np.ndarray:
    """Monomial coefficients of the basis polynomials, row j = P_j.

    Built from the integer recurrence for the shifted classical polynomials
    (exact up to the final normalization), so entries are correctly rounded
    despite their ~8^n growth.
    """
    rows: list[list[int]] = [[1]]
    first = [-1, 2] if kind == CHEBYSHEV_FIRST else [-2, 4]
    if max_degree >= 1:
        rows.append(first)
    for n in range(2, max_degree + 1):
        prev, cur = rows[n - 2], rows[n - 1]
        nxt = [0] * (n + 1)
        for m, c in enumerate(cur):
            nxt[m] += -2 * c
            nxt[m + 1] += 4 * c
        for m, c in enumerate(prev):
            nxt[m] -= c
        rows.append(nxt)
    table = np.zeros((max_degree + 1, max_degree + 1))
    for j, row in enumerate(rows):
        scale = 2.0 / _SQRT_PI
        if kind == CHEBYSHEV_FIRST and j == 0:
            scale = math.sqrt(2.0 / math.pi)
        table[j, : j + 1] = np.array(row, dtype=float) * scale
    return table


@dataclass
class BasisPoly:
    """A polynomial held as coefficients over an orthonormal family."""

    family: PolynomialFamily
    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(1))

    def __post_init__(self) -> None:
        self.coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
        if self.coeffs.size > self.family.max_degree + 1:
            raise ValueError(
                f"{self.coeffs.size - 1} exceeds cap {self.family.max_degree}"
            )

    @property
    def degree(self) -> int:
        """Largest index with a non-negligible coefficient."""
        nz = np.nonzero(np.abs(self.coeffs) > 1e-13)[0]
        return int(nz[-1]) if nz.size else 0

    def __call__(self, x: float) -> float:
        return float(
            sum(c * self.family.eval(j, x) for j, c in enumerate(self.coeffs) if c)
        )

    def to_monomial(self) -> np.ndarray:
        """Monomial coefficients (index m = coefficient of x^m)."""
        n = self.coeffs.size
        table = self.family._conversion_table()[:n, :n]
        return self.coeffs @ table

    def definite_integral(self) -> float:
        """``int_0^1`` of the polynomial via family moments."""
        return float(
            sum(c * self.family.moment(j) for j, c in enumerate(self.coeffs))
        )


def chebyshev_first(max_degree: int = 16) -> PolynomialFamily:
    return PolynomialFamily(CHEBYSHEV_FIRST, max_degree)


def chebyshev_second(max_degree: int = 16) -> PolynomialFamily:
    return PolynomialFamily(CHEBYSHEV_SECOND, max_degree)
