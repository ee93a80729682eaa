"""Construction of symplectic continuous-stage coefficient functions.

The weight functions B_tau = Bhat(tau) w(tau) and
A_{tau,sigma} = B_sigma (1/2 + sum alpha_(i,j) P_i(tau) P_j(sigma)) are
parameterized by a skew-symmetric table alpha; requiring the stage
consistency conditions up to order eta yields a linear system for alpha.
Solving it (with any remaining null-space directions exposed as named free
parameters) produces a blueprint that is symplectic by construction and can
be discretized into standard Runge-Kutta tableaux.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._util import dump_json
from .orthopoly import BasisPoly, PolynomialFamily
from .quadrature import integrate_weighted, rule_for_family

_RANK_TOL = 1e-10

BLUEPRINT_FORMAT_VERSION = 1


class InconsistentSystemError(ValueError):
    """No symplectic method exists for the requested (xi, eta, rho)."""


class UnboundParameterError(ValueError):
    """A concrete method was demanded but free parameters remain unbound."""


def _check_ansatz(xi: int, eta: int, rho: int) -> None:
    if xi < 1 or eta < 1:
        raise ValueError("xi and eta must be >= 1")
    if rho < eta:
        raise ValueError(f"ansatz requires rho >= eta (got rho={rho}, eta={eta})")
    if xi < 2 * eta:
        raise ValueError(f"ansatz requires xi >= 2*eta (got xi={xi}, eta={eta})")


def build_b_hat(family: PolynomialFamily, xi: int) -> BasisPoly:
    """Polynomial factor of B_tau: coefficient j is the moment of P_j, j < xi."""
    if xi < 1:
        raise ValueError("xi must be >= 1")
    if xi - 1 > family.max_degree:
        raise ValueError(f"degree {xi - 1} exceeds cap {family.max_degree}")
    coeffs = np.array([family.moment(j) for j in range(xi)])
    return BasisPoly(family, coeffs)


@dataclass(frozen=True)
class FreeParameter:
    """A null-space direction of the alpha system, pivoted on one entry."""

    name: str
    index: tuple[int, int]


@dataclass
class AlphaSystem:
    """The linear system over the r(r+1)/2 independent alpha entries.

    Unknowns are the strict upper-triangle entries alpha_(i,j), i < j <= r,
    in lexicographic order; ``matrix @ x = rhs`` collects one equation per
    (consistency order k, basis index i) pair.
    """

    family: PolynomialFamily
    xi: int
    eta: int
    rho: int
    r: int
    unknowns: list[tuple[int, int]]
    matrix: np.ndarray
    rhs: np.ndarray


def assemble_system(
    family: PolynomialFamily, xi: int, eta: int, rho: int
) -> AlphaSystem:
    """Set up the stage-consistency equations for the skew-symmetric table."""
    _check_ansatz(xi, eta, rho)
    r = min(rho, xi - eta)
    unknowns = [(i, j) for i in range(r + 1) for j in range(i + 1, r + 1)]
    col = {pair: m for m, pair in enumerate(unknowns)}
    n_rows = eta * (max(rho, eta) + 1)
    matrix = np.zeros((n_rows, len(unknowns)))
    rhs = np.zeros(n_rows)

    nu = family.p0_value
    for k in range(eta):
        run = family.running_integral(k).coeffs
        prod = [family.product_integral(j, k) for j in range(r + 1)]
        for i in range(max(rho, eta) + 1):
            row = k * (max(rho, eta) + 1) + i
            if i <= r:
                for j in range(r + 1):
                    if j == i:
                        continue
                    # alpha_(i,j) P_i(tau) * int P_j P_k; entries below the
                    # diagonal are the negated canonical unknowns.
                    if i < j:
                        matrix[row, col[(i, j)]] += prod[j]
                    else:
                        matrix[row, col[(j, i)]] -= prod[j]
            value = run[i] if i < run.size else 0.0
            if i == 0:
                value -= 0.5 * family.moment(k) / nu
            rhs[row] = value
    return AlphaSystem(family, xi, eta, rho, r, unknowns, matrix, rhs)


@dataclass(frozen=True)
class AlphaTable:
    """Skew-symmetric alpha entries; only i < j is stored."""

    r: int
    entries: dict[tuple[int, int], float]
    free: tuple[FreeParameter, ...] = ()

    def get(self, i: int, j: int) -> float:
        if i == j or i > self.r or j > self.r:
            return 0.0
        if i < j:
            return self.entries.get((i, j), 0.0)
        return -self.entries.get((j, i), 0.0)

    def max_index(self) -> int:
        """Largest index appearing in a non-negligible entry (0 if none)."""
        live = [p for p, v in self.entries.items() if abs(v) > 1e-13]
        return max((max(p) for p in live), default=0)


def solve_alpha(
    system: AlphaSystem, bindings: dict[str, float] | None = None
) -> AlphaTable:
    """Solve for the alpha table, binding free parameters by name (default 0).

    Raises InconsistentSystemError when the equations admit no solution.
    """
    bindings = dict(bindings or {})
    m, rhs = system.matrix.copy(), system.rhs.copy()
    n_rows, n_cols = m.shape
    scale = max(np.max(np.abs(m)), 1.0)
    tol = _RANK_TOL * scale

    pivot_cols: list[int] = []
    row = 0
    for cjx in range(n_cols):
        pivot = row + int(np.argmax(np.abs(m[row:, cjx]))) if row < n_rows else None
        if pivot is None or abs(m[pivot, cjx]) <= tol:
            continue
        m[[row, pivot]] = m[[pivot, row]]
        rhs[[row, pivot]] = rhs[[pivot, row]]
        factor = m[row, cjx]
        m[row] /= factor
        rhs[row] /= factor
        for other in range(n_rows):
            if other != row and m[other, cjx] != 0.0:
                rhs[other] -= m[other, cjx] * rhs[row]
                m[other] -= m[other, cjx] * m[row]
        pivot_cols.append(cjx)
        row += 1

    for i in range(row, n_rows):
        if abs(rhs[i]) > tol:
            raise InconsistentSystemError(
                f"no symplectic method for {system.family.kind} "
                f"(xi={system.xi}, eta={system.eta}, rho={system.rho})"
            )

    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    free = tuple(
        FreeParameter(f"mu{m + 1}", system.unknowns[c])
        for m, c in enumerate(free_cols)
    )
    known = {p.name for p in free}
    unknown_names = set(bindings) - known
    if unknown_names:
        raise KeyError(f"unknown free parameters {sorted(unknown_names)}; "
                       f"available: {sorted(known)}")

    x = np.zeros(n_cols)
    for param, c in zip(free, free_cols):
        x[c] = bindings.get(param.name, 0.0)
    for i, c in enumerate(pivot_cols):
        x[c] = rhs[i] - sum(m[i, f] * x[f] for f in free_cols)

    residual = np.max(np.abs(system.matrix @ x - system.rhs))
    if residual > 1e-12 * scale:
        raise InconsistentSystemError(f"solution residual {residual:.3e}")

    entries = {pair: float(v) for pair, v in zip(system.unknowns, x)}
    return AlphaTable(system.r, entries, free)


@dataclass
class SymplecticBlueprint:
    """A fully bound continuous-stage method in a weighted Chebyshev family."""

    family: PolynomialFamily
    xi: int
    eta: int
    rho: int
    alpha: AlphaTable
    b_hat: BasisPoly
    bindings: dict[str, float] = field(default_factory=dict)

    @property
    def zeta(self) -> int:
        return min(self.xi, self.eta)

    def eval_b_hat(self, tau: float) -> float:
        return self.b_hat(tau)

    def eval_a_hat(self, tau: float, sigma: float) -> float:
        """Polynomial factor of A: Bhat(sigma) (1/2 + sum alpha P_i(tau) P_j(sigma))."""
        fam = self.family
        n = self.alpha.r
        p_tau = [fam.eval(i, tau) for i in range(n + 1)]
        p_sig = [fam.eval(j, sigma) for j in range(n + 1)]
        acc = 0.5
        for (i, j), val in self.alpha.entries.items():
            if val:
                acc += val * (p_tau[i] * p_sig[j] - p_tau[j] * p_sig[i])
        return self.b_hat(sigma) * acc

    def eval_B(self, tau: float) -> float:
        return self.b_hat(tau) * self.family.weight(tau)

    def eval_A(self, tau: float, sigma: float) -> float:
        return self.eval_a_hat(tau, sigma) * self.family.weight(sigma)

    def free_parameters(self) -> tuple[FreeParameter, ...]:
        return self.alpha.free

    # Degrees of the polynomial factors, used by the discrete order bound.
    def b_hat_degree(self) -> int:
        return self.b_hat.degree

    def a_hat_degrees(self) -> tuple[int, int]:
        """(degree in tau, degree in sigma) of the A polynomial factor."""
        top = self.alpha.max_index()
        return top, self.b_hat.degree + top


def derive_blueprint(
    family: PolynomialFamily,
    xi: int,
    eta: int,
    rho: int,
    bindings: dict[str, float] | None = None,
) -> SymplecticBlueprint:
    """Run the full construction: ansatz, linear solve, packaged blueprint."""
    system = assemble_system(family, xi, eta, rho)
    alpha = solve_alpha(system, bindings)
    return SymplecticBlueprint(
        family, xi, eta, rho, alpha, build_b_hat(family, xi), dict(bindings or {})
    )


def predicted_order(blueprint: SymplecticBlueprint) -> int:
    """Continuous order bound min(xi, 2 eta + 2, eta + zeta + 1).

    The raw bound; symmetric methods may gain one order after the tableau
    symmetry check, which is applied at discretization time.
    """
    xi, eta, zeta = blueprint.xi, blueprint.eta, blueprint.zeta
    return min(xi, 2 * eta + 2, eta + zeta + 1)


# -- continuous verification -------------------------------------------------


@dataclass(frozen=True)
class ContinuousReport:
    """Verified consistency orders and the symplecticity defect."""

    b_order: int
    c_order: int
    d_order: int
    symplectic_residual: float
    tolerance: float = 1e-12

    def satisfies(self, blueprint: SymplecticBlueprint) -> bool:
        return (
            self.b_order >= blueprint.xi
            and self.c_order >= blueprint.eta
            and self.d_order >= blueprint.zeta
            and self.symplectic_residual <= self.tolerance
        )


def check_continuous(
    blueprint: SymplecticBlueprint, tolerance: float = 1e-12
) -> ContinuousReport:
    """Verify the integral consistency conditions and the symplectic identity.

    Orders are probed a little past their guaranteed levels and reported as
    the highest consecutive level that holds; failures lower the reported
    order instead of raising.
    """
    fam = blueprint.family
    b_hat = blueprint.b_hat
    nu = fam.p0_value
    alpha = blueprint.alpha
    r = alpha.r
    deg_b = b_hat.degree

    def weighted(func, degree):
        return integrate_weighted(fam, func, degree)

    # B condition: int Bhat(t) t^(k-1) w dt = 1/k.
    b_order = 0
    for kappa in range(1, blueprint.xi + 3):
        val = weighted(lambda t: b_hat(t) * t ** (kappa - 1), deg_b + kappa - 1)
        if abs(val - 1.0 / kappa) <= tolerance:
            b_order = kappa
        else:
            break

    # Moments of Bhat P_j t^(k-1) used by both remaining conditions.
    def v(j: int, kappa: int) -> float:
        return weighted(
            lambda t: b_hat(t) * fam.eval(j, t) * t ** (kappa - 1),
            deg_b + j + kappa - 1,
        )

    def u(kappa: int) -> float:
        return weighted(lambda t: b_hat(t) * t ** (kappa - 1), deg_b + kappa - 1)

    # C condition, coefficient-wise in tau: the P_i coefficient of
    # int A_{tau,sigma} sigma^(k-1) dsigma must match that of tau^k / k.
    c_order = 0
    for kappa in range(1, blueprint.eta + 3):
        n_idx = max(r, kappa) + 1
        lhs = np.zeros(n_idx)
        lhs[0] = 0.5 * u(kappa) / nu
        for (i, j), val in alpha.entries.items():
            if val:
                lhs[i] += val * v(j, kappa)
                lhs[j] -= val * v(i, kappa)
        target = np.zeros(n_idx)
        mono = np.zeros(kappa + 1)
        mono[kappa] = 1.0 / kappa
        target[: kappa + 1] = fam.from_monomial(mono).coeffs
        if np.max(np.abs(lhs - target)) <= tolerance:
            c_order = kappa
        else:
            break

    # D condition reduces (after cancelling the common Bhat(sigma) factor) to
    # 1/2 u(kappa) + sum alpha_(i,j) v(i, kappa) P_j(sigma) = (1 - sigma^kappa)/kappa.
    d_order = 0
    for kappa in range(1, blueprint.zeta + 3):
        n_idx = max(r, kappa) + 1
        lhs = np.zeros(n_idx)
        lhs[0] = 0.5 * u(kappa) / nu
        for (i, j), val in alpha.entries.items():
            if val:
                lhs[j] += val * v(i, kappa)
                lhs[i] -= val * v(j, kappa)
        mono = np.zeros(kappa + 1)
        mono[0] = 1.0 / kappa
        mono[kappa] = -1.0 / kappa
        target = np.zeros(n_idx)
        target[: kappa + 1] = fam.from_monomial(mono).coeffs
        if np.max(np.abs(lhs - target)) <= tolerance:
            d_order = kappa
        else:
            break

    return ContinuousReport(
        b_order, c_order, d_order, symplectic_residual(blueprint), tolerance
    )


def symplectic_residual(blueprint: SymplecticBlueprint) -> float:
    """Max tensor-basis coefficient of Bhat_t Ahat_ts + Bhat_s Ahat_st - Bhat_t Bhat_s."""
    fam = blueprint.family
    deg = blueprint.b_hat.degree + blueprint.alpha.max_index()
    rule = rule_for_family(fam, deg + 1)
    nodes, w = rule.nodes, rule.weights
    n = nodes.size

    b_vals = np.array([blueprint.b_hat(t) for t in nodes])
    a_vals = np.array(
        [[blueprint.eval_a_hat(t, s) for s in nodes] for t in nodes]
    )
    f_vals = a_vals * b_vals[:, None] + a_vals.T * b_vals[None, :]
    f_vals -= np.outer(b_vals, b_vals)

    basis = np.array([[fam.eval(i, t) for t in nodes] for i in range(deg + 1)])
    weighted = basis * w[None, :]
    coeffs = weighted @ f_vals @ weighted.T
    return float(np.max(np.abs(coeffs)))


# -- blueprint files ----------------------------------------------------------


def write_blueprint(blueprint: SymplecticBlueprint, path: str | Path) -> None:
    doc = {
        "format_version": BLUEPRINT_FORMAT_VERSION,
        "family": blueprint.family.kind,
        "xi": blueprint.xi,
        "eta": blueprint.eta,
        "rho": blueprint.rho,
        "alpha": [
            [i, j, float(v)] for (i, j), v in sorted(blueprint.alpha.entries.items())
        ],
        "free_parameters": [
            {"name": p.name, "i": p.index[0], "j": p.index[1],
             "value": float(blueprint.bindings.get(p.name, 0.0))}
            for p in blueprint.alpha.free
        ],
        "predicted_order": predicted_order(blueprint),
    }
    dump_json(doc, path)


def read_blueprint(path: str | Path) -> SymplecticBlueprint:
    doc = json.loads(Path(path).read_text())
    if doc.get("format_version") != BLUEPRINT_FORMAT_VERSION:
        raise ValueError(f"unsupported blueprint format in {path}")
    family = PolynomialFamily(doc["family"])
    xi, eta, rho = int(doc["xi"]), int(doc["eta"]), int(doc["rho"])
    r = min(rho, xi - eta)
    entries = {(int(i), int(j)): float(v) for i, j, v in doc["alpha"]}
    free = tuple(
        FreeParameter(p["name"], (int(p["i"]), int(p["j"])))
        for p in doc["free_parameters"]
    )
    bindings = {p["name"]: float(p["value"]) for p in doc["free_parameters"]}
    alpha = AlphaTable(r, entries, free)
    return SymplecticBlueprint(
        family, xi, eta, rho, alpha, build_b_hat(family, xi), bindings
    )
