"""Nystrom discretization of gap-probability operators."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .errors import (
    DivisionUnderflow,
    DomainError,
    NegativeDeterminant,
    NonConvergence,
    SingularFactorization,
)
from .kernels import KernelSpec, kernel_matrix, validate_diagonal
from .results import GapMethod, GapValue
from .specfun import DEFAULT_CONFIG, SpecFunConfig


@lru_cache(maxsize=None)
def legendre_nodes(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on (-1, 1), ascending, by Newton's method."""
    if m < 1:
        raise DomainError("m must be positive")
    k = np.arange(1, m + 1)
    # Tricomi initial guess, descending in x
    x = np.cos(np.pi * (k - 0.25) / (m + 0.5)) * (1 - (m - 1) / (8.0 * m**3))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for n in range(2, m + 1):
            p0, p1 = p1, ((2 * n - 1) * x * p1 - (n - 1) * p0) / n
        if m == 1:
            p1, p0 = x, np.ones_like(x)
        dp = m * (x * p1 - p0) / (x * x - 1)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for n in range(2, m + 1):
        p0, p1 = p1, ((2 * n - 1) * x * p1 - (n - 1) * p0) / n
    if m == 1:
        p1, p0 = x, np.ones_like(x)
    dp = m * (x * p1 - p0) / (x * x - 1)
    w = 2.0 / ((1 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]
    # enforce exact symmetry
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


# shipped default resolutions
HARD_EDGE_M = 80
SOFT_EDGE_M = 60
# Ai(s + 14)^2 < 1e-24 for s >= -4
AIRY_TAIL_OFFSET = 14.0
# soft-edge variable upper limit for the transition substitution
TRANSITION_TAU_CUT = 14.0
NEGATIVE_CLAMP = -1e-10
IMAG_RESIDUE_TOL = 1e-10
SERIES_TOL = 1e-12


@dataclass(frozen=True)
class QuadGrid:
    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    def __post_init__(self):
        x = np.asarray(self.nodes, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        lo, hi = self.interval
        if x.shape != w.shape or x.ndim != 1 or x.size == 0:
            raise DomainError("nodes and weights must be matching nonempty vectors")
        if np.any(np.diff(x) <= 0):
            raise DomainError("nodes must be strictly increasing")
        if np.any(x <= lo) or np.any(x >= hi):
            raise DomainError("nodes must lie strictly inside the interval")
        if np.any(w <= 0):
            raise DomainError("weights must be positive")
        object.__setattr__(self, "nodes", x)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "interval", (float(lo), float(hi)))

    @property
    def size(self) -> int:
        return self.nodes.size


def gauss_legendre(m: int, lo: float, hi: float) -> QuadGrid:
    """``m``-point Gauss-Legendre rule on ``(lo, hi)``."""
    if not lo < hi:
        raise DomainError(f"need lo < hi, got ({lo}, {hi})")
    t, w = legendre_nodes(m)
    half = 0.5 * (hi - lo)
    return QuadGrid(lo + half * (t + 1.0), half * w, (lo, hi))


def sqrt_graded_grid(m: int, s: float) -> QuadGrid:
    """Gauss-Legendre in ``u = sqrt(x)`` on ``(0, sqrt(s))``, returned as a rule in ``x``.

    Bessel kernels are analytic in ``sqrt(x)`` but not in ``x`` at the
    origin, so this substitution restores geometric convergence.
    """
    if s <= 0:
        raise DomainError("s must be positive")
    g = gauss_legendre(m, 0.0, math.sqrt(s))
    return QuadGrid(g.nodes**2, 2 * g.nodes * g.weights, (0.0, float(s)))


def q_map(a: float, tau):
    """Hard-to-soft edge map ``Q_a(tau) = (a - (a/2)^{1/3} tau)^2``."""
    c = (a / 2) ** (1 / 3)
    return (a - c * np.asarray(tau, dtype=float)) ** 2


def q_map_deriv(a: float, tau):
    c = (a / 2) ** (1 / 3)
    return -2 * c * (a - c * np.asarray(tau, dtype=float))


def transition_grid(m: int, a: float, s: float, tau_cut: float = TRANSITION_TAU_CUT) -> QuadGrid:
    """Rule on ``(0, Q_a(s))`` built from Gauss-Legendre in the soft-edge variable.

    ``tau`` runs over ``(s, tau_hi)`` where ``tau_hi`` is ``tau_cut`` clamped
    to the turning point of ``Q_a`` at ``tau = a / (a/2)^{1/3}``.  When the
    clamp is active the rule covers all of ``(0, Q_a(s))`` and is the
    ``sqrt(x)`` substitution in disguise; otherwise the discarded piece near
    the origin carries negligible kernel mass.
    """
    turn = a / (a / 2) ** (1 / 3)
    tau_hi = min(tau_cut, turn)
    if not s < tau_hi:
        raise DomainError(f"s={s} is beyond the usable soft-edge window (< {tau_hi:.3g})")
    g = gauss_legendre(m, s, tau_hi)
    x = q_map(a, g.nodes)[::-1]
    w = (np.abs(q_map_deriv(a, g.nodes)) * g.weights)[::-1]
    return QuadGrid(x, w, (0.0, float(q_map(a, s))))


def operator_matrix(spec: KernelSpec, grid: QuadGrid, config: SpecFunConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Nystrom matrix ``M[i, j] = w_j K(x_i, x_j)``."""
    if spec.family.is_bessel and grid.interval[0] < 0:
        raise DomainError("Bessel grids must lie in [0, inf)")
    validate_diagonal(spec)
    return kernel_matrix(spec, grid.nodes, config) * grid.weights[None, :]


def _det_i_minus(M: np.ndarray) -> float:
    A = np.eye(M.shape[0]) - M
    sign, logdet = np.linalg.slogdet(A)
    if sign == 0 or not np.isfinite(logdet):
        raise SingularFactorization("I - M is numerically singular")
    return float(sign * math.exp(logdet))


def _default_grid(spec: KernelSpec, interval, m: int) -> QuadGrid:
    lo, hi = interval
    if spec.family.is_bessel:
        if lo != 0:
            return gauss_legendre(m, lo, hi)
        return sqrt_graded_grid(m, hi)
    if math.isinf(hi):
        hi = max(lo, 0.0) + AIRY_TAIL_OFFSET
    return gauss_legendre(m, lo, hi)


def _det_on(spec: KernelSpec, grid: QuadGrid) -> float:
    try:
        return _det_i_minus(operator_matrix(spec, grid))
    except SingularFactorization:
        return 0.0


def gap_determinant(spec: KernelSpec, interval, m: int = HARD_EDGE_M,
                    grid_factory: Optional[Callable[[int], QuadGrid]] = None) -> GapValue:
    """``det(I - K)`` on ``interval`` by Nystrom at ``m`` and ``2m`` nodes.

    The value reported is the ``m``-node one; ``err_estimate`` is its
    distance from the ``2m``-node value.  For Airy kernels an infinite right endpoint is
    replaced by ``max(lo, 0) + 14``.  ``grid_factory`` overrides the default
    rule (it receives the node count).
    """
    lo, hi = interval
    if not lo < hi:
        raise DomainError(f"need lo < hi, got {interval}")
    if m < 1:
        raise DomainError("m must be positive")
    make = grid_factory or (lambda k: _default_grid(spec, (lo, hi), k))
    v1 = _det_on(spec, make(m))
    v2 = _det_on(spec, make(2 * m))
    return GapValue(v1, GapMethod.DETERMINANT, nodes_used=m, err_estimate=abs(v2 - v1))


def elementary_symmetric(eigs: np.ndarray, k_max: int) -> np.ndarray:
    """``e_0 .. e_{k_max}`` of the given (possibly complex) numbers."""
    e = np.zeros(k_max + 1, dtype=complex)
    e[0] = 1.0
    for lam in eigs:
        e[1:] = e[1:] + lam * e[:-1]
    return e


def gap_series(spec: KernelSpec, interval, m: int = HARD_EDGE_M, k_max: int = 1,
               strict: bool = True) -> GapValue:
    """Correlation sum ``1 + sum_{k<=k_max} (-1)^k/k! int det[K]`` on a fixed grid.

    The ``k``-fold Nystrom quadrature of the ``k``-point minors equals the
    ``k``-th elementary symmetric function of the eigenvalues of ``M``, which
    is how the sum is evaluated.  With ``strict`` a last term larger than
    ``1e-12 |value|`` raises ``NonConvergence``; pass ``strict=False`` for
    deliberately short truncations.
    """
    if k_max < 1:
        raise DomainError("k_max must be positive")
    lo, hi = interval
    grid = _default_grid(spec, (lo, hi), m)
    M = operator_matrix(spec, grid)
    eigs = np.linalg.eigvals(M)
    k_top = min(k_max, eigs.size)
    e = elementary_symmetric(eigs, k_top)
    signs = (-1.0) ** np.arange(k_top + 1)
    total = complex(np.sum(signs * e))
    scale = max(1.0, float(np.max(np.abs(e))))
    if abs(total.imag) > IMAG_RESIDUE_TOL * scale:
        raise ArithmeticError(f"imaginary residue {total.imag:.3e} did not cancel")
    value = total.real
    last = abs(e[k_top]) if k_top == k_max else 0.0
    if strict and last > SERIES_TOL * abs(value):
        raise NonConvergence(f"term k={k_max} is {last:.3e}, value {value:.3e}")
    return GapValue(value, GapMethod.CORRELATION_SERIES, nodes_used=grid.size,
                    series_k_used=k_max, err_estimate=float(last))


def _sqrt_checked(v: GapValue) -> GapValue:
    x = v.value
    if x < NEGATIVE_CLAMP:
        raise NegativeDeterminant(f"determinant {x:.3e} is below {NEGATIVE_CLAMP}")
    x = max(x, 0.0)
    root = math.sqrt(x)
    # d sqrt = dv / (2 sqrt v); fall back to sqrt(err) near zero
    err = v.err_estimate / (2 * root) if root > 1e-8 else math.sqrt(v.err_estimate)
    return GapValue(root, v.method, v.nodes_used, v.series_k_used, err)


def _check_hard(s, a):
    if s < 0:
        raise DomainError("s must be nonnegative")
    if a < 0 or int(a) != a:
        raise DomainError("kernel order must be a nonnegative integer")


def _unit(method=GapMethod.DETERMINANT) -> GapValue:
    return GapValue(1.0, method)


def e2_hard(s: float, a: int, m: int = HARD_EDGE_M, grid_factory=None) -> GapValue:
    """Hard-edge beta=2 gap probability of ``(0, s)`` with Laguerre parameter ``a``."""
    _check_hard(s, a)
    if s == 0:
        return _unit()
    return gap_determinant(KernelSpec.bessel2(int(a)), (0.0, s), m, grid_factory)


def e1_hard(s: float, half_index, m: int = HARD_EDGE_M, grid_factory=None) -> GapValue:
    """Hard-edge beta=1 gap probability with index ``half_index = (a-1)/2``.

    The determinant of the ``K1`` Bessel kernel with order ``a`` is the square
    of the probability.
    """
    order = 2 * half_index + 1
    if order != int(order):
        raise DomainError("half_index must be an integer or half-integer")
    _check_hard(s, order)
    if s == 0:
        return _unit()
    return _sqrt_checked(gap_determinant(KernelSpec.bessel1(int(order)), (0.0, s), m, grid_factory))


def e4_hard(s: float, a: int, m: int = HARD_EDGE_M) -> GapValue:
    """Hard-edge beta=4 gap probability with parameter ``a + 1``, via the beta=1,2 inter-relation."""
    if a < 1 or int(a) != a:
        raise DomainError("a must be a positive integer")
    _check_hard(s, a)
    if s == 0:
        return _unit(GapMethod.INTERRELATION)
    e1 = e1_hard(s, (a - 1) / 2, m)
    e2 = e2_hard(s, a, m)
    return _interrelate(e1, e2)


def _interrelate(e1: GapValue, e2: GapValue) -> GapValue:
    if e1.value < 1e-300:
        raise DivisionUnderflow(f"beta=1 constituent {e1.value:.3e} is too small to divide by")
    value = 0.5 * (e1.value + e2.value / e1.value)
    err = 0.5 * (e1.err_estimate + e2.err_estimate / e1.value
                 + e2.value * e1.err_estimate / e1.value**2)
    return GapValue(value, GapMethod.INTERRELATION, max(e1.nodes_used, e2.nodes_used), None, err)


def f2(s: float, m: int = SOFT_EDGE_M) -> GapValue:
    """Soft-edge beta=2 distribution ``F_2(s)``."""
    return gap_determinant(KernelSpec.airy2(), (s, math.inf), m)


def f1(s: float, m: int = SOFT_EDGE_M) -> GapValue:
    """Soft-edge beta=1 distribution ``F_1(s)``, the root of the ``K1`` Airy determinant."""
    return _sqrt_checked(gap_determinant(KernelSpec.airy1(), (s, math.inf), m))


def f4(s: float, m: int = SOFT_EDGE_M) -> GapValue:
    """Soft-edge beta=4 distribution from ``F_4 = (F_1 + F_2 / F_1) / 2``."""
    return _interrelate(f1(s, m), f2(s, m))


@dataclass(frozen=True)
class TransitionRow:
    a: int
    s: float
    hard_value: float
    soft_value: float
    abs_error: float
    hard_err_estimate: float = 0.0


def transition_hard(beta: int, s: float, a: int, m: int = HARD_EDGE_M,
                    endpoint_shift: float = 0.0) -> GapValue:
    """``E_beta^hard(Q_a(s) + endpoint_shift)`` on the soft-edge substitution grid.

    For ``beta=2`` the kernel order is ``a``; for ``beta=1`` the index is
    ``a/2`` so the ``K1`` kernel has order ``a + 1``.
    """
    if beta == 2:
        spec = KernelSpec.bessel2(a)
    elif beta == 1:
        if a % 2:
            raise DomainError("beta=1 transition needs even a")
        spec = KernelSpec.bessel1(a + 1)
    else:
        raise DomainError("transition is defined for beta 1 or 2")
    c = (a / 2) ** (1 / 3)
    # shifting the endpoint in x by d moves tau by about -d / |Q'(s)|, solve exactly
    s_eff = s if endpoint_shift == 0 else (a - math.sqrt(q_map(a, s) + endpoint_shift)) / c
    val = gap_determinant(spec, (0.0, float(q_map(a, s_eff))), m,
                          grid_factory=lambda k: transition_grid(k, a, s_eff))
    return _sqrt_checked(val) if beta == 1 else val


def transition_sweep(beta: int, s_values, a_values, m: int = HARD_EDGE_M,
                     soft_m: int = SOFT_EDGE_M) -> list[TransitionRow]:
    """Compare ``E_beta^hard(Q_a(s))`` with ``F_beta(s)`` over a grid of ``(a, s)``."""
    soft_fn = f2 if beta == 2 else f1 if beta == 1 else None
    if soft_fn is None:
        raise DomainError("transition is defined for beta 1 or 2")
    soft = {s: soft_fn(s, soft_m).value for s in s_values}
    rows = []
    for a in a_values:
        for s in s_values:
            hard = transition_hard(beta, s, a, m)
            rows.append(TransitionRow(int(a), float(s), hard.value, soft[s],
                                      abs(hard.value - soft[s]), hard.err_estimate))
    return rows
