"""Limiting correlation kernels at the hard edge (Bessel) and soft edge (Airy).

``K2`` kernels are the symmetric beta=2 kernels.  ``K1`` kernels are the
non-symmetric scalar kernels whose Fredholm determinant is the *square* of the
beta=1 gap probability.

Evaluation goes through per-node tables: the special functions are computed
once per distinct argument and the O(m^2) combination is pure arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import DomainError
from .specfun import (
    DEFAULT_CONFIG,
    SpecFunConfig,
    airy_ai_and_deriv,
    airy_tail,
    bessel_j_integral,
    bessel_j_orders,
)

# below this relative separation the off-diagonal quotient loses >= 6 digits
NEAR_DIAGONAL = 1e-6


class KernelFamily(str, enum.Enum):
    BESSEL_BETA2 = "BesselBeta2"
    BESSEL_BETA1 = "BesselBeta1"
    AIRY_BETA2 = "AiryBeta2"
    AIRY_BETA1 = "AiryBeta1"

    @property
    def is_bessel(self) -> bool:
        return self in (KernelFamily.BESSEL_BETA2, KernelFamily.BESSEL_BETA1)

    @property
    def is_symmetric(self) -> bool:
        return self in (KernelFamily.BESSEL_BETA2, KernelFamily.AIRY_BETA2)


@dataclass(frozen=True)
class KernelSpec:
    family: KernelFamily
    order: Optional[int] = None

    def __post_init__(self):
        fam = KernelFamily(self.family)
        object.__setattr__(self, "family", fam)
        if fam.is_bessel:
            if self.order is None or self.order < 0 or int(self.order) != self.order:
                raise DomainError("Bessel kernels need a nonnegative integer order")
            object.__setattr__(self, "order", int(self.order))
        elif self.order is not None:
            raise DomainError("Airy kernels take no order")

    @classmethod
    def bessel2(cls, a: int) -> "KernelSpec":
        return cls(KernelFamily.BESSEL_BETA2, a)

    @classmethod
    def bessel1(cls, a: int) -> "KernelSpec":
        return cls(KernelFamily.BESSEL_BETA1, a)

    @classmethod
    def airy2(cls) -> "KernelSpec":
        return cls(KernelFamily.AIRY_BETA2)

    @classmethod
    def airy1(cls) -> "KernelSpec":
        return cls(KernelFamily.AIRY_BETA1)

    def __call__(self, x, y):
        fam = self.family
        if fam is KernelFamily.BESSEL_BETA2:
            return k2_bessel(self.order, x, y)
        if fam is KernelFamily.BESSEL_BETA1:
            return k1_bessel(self.order, x, y)
        if fam is KernelFamily.AIRY_BETA2:
            return k2_airy(x, y)
        return k1_airy(x, y)


# ---------------------------------------------------------------------------
# per-node tables
# ---------------------------------------------------------------------------


def _bessel_table(a: int, x: np.ndarray, config: SpecFunConfig):
    """J_a(u), u J_a'(u), J_{a-1}(u), J_{a+1}(u) at u = sqrt(x)."""
    u = np.sqrt(x)
    jm, j0, jp = bessel_j_orders([a - 1, a, a + 1], u, config)
    return j0, 0.5 * u * (jm - jp), jm, jp


def _bessel_diag(a: int, x: np.ndarray, config: SpecFunConfig) -> np.ndarray:
    j0, _, jm, jp = _bessel_table(a, x, config)
    return 0.25 * (j0 * j0 - jp * jm)


def _airy_diag(x: np.ndarray, config: SpecFunConfig) -> np.ndarray:
    ai, aip = airy_ai_and_deriv(x, config)
    return aip * aip - x * ai * ai


def _pair_combine(x, y, fx, gx, fy, gy, scale, diag_fn):
    """(f(x) g(y) - g(x) f(y)) / (scale (x - y)) with a diagonal fallback."""
    num = fx * gy - gx * fy
    diff = x - y
    near = np.abs(diff) <= NEAR_DIAGONAL * np.maximum(np.abs(x), np.abs(y))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = num / (scale * diff)
    if np.any(near):
        # symmetric kernel: K(m + h, m - h) is even in h, so the midpoint value is second order
        mid = (np.broadcast_to(x, out.shape)[near] + np.broadcast_to(y, out.shape)[near]) / 2
        out = np.array(out, copy=True)
        out[near] = diag_fn(mid)
    return out


def _broadcast(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    scalar = x.ndim == 0 and y.ndim == 0
    x, y = np.broadcast_arrays(x, y)
    return x, y, scalar


def _finish(out, scalar):
    return float(np.asarray(out).reshape(-1)[0]) if scalar else out


# ---------------------------------------------------------------------------
# pointwise kernels
# ---------------------------------------------------------------------------


def _check_positive(x, y):
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("Bessel kernels are defined for x, y > 0")


def k2_bessel(a: int, x, y, config: SpecFunConfig = DEFAULT_CONFIG):
    """Hard-edge beta=2 Bessel kernel with parameter ``a``."""
    x, y, scalar = _broadcast(x, y)
    _check_positive(x, y)
    jx, djx, _, _ = _bessel_table(a, x, config)
    jy, djy, _, _ = _bessel_table(a, y, config)
    out = _pair_combine(x, y, jx, djx, jy, djy, 2.0, lambda m: _bessel_diag(a, m, config))
    return _finish(out, scalar)


def k1_bessel(a: int, x, y, config: SpecFunConfig = DEFAULT_CONFIG):
    """Hard-edge kernel whose determinant is the squared beta=1 gap probability."""
    x, y, scalar = _broadcast(x, y)
    _check_positive(x, y)
    k2 = np.asarray(k2_bessel(a, x, y, config))
    jx = bessel_j_orders([a], np.sqrt(x), config)[0]
    iy = bessel_j_integral(a, np.sqrt(y), config)
    out = np.sqrt(y / x) * k2 + jx / (2 * np.sqrt(x)) * (1.0 - iy)
    return _finish(out, scalar)


def k2_airy(x, y, config: SpecFunConfig = DEFAULT_CONFIG):
    """Soft-edge beta=2 Airy kernel."""
    x, y, scalar = _broadcast(x, y)
    ax, apx = airy_ai_and_deriv(x, config)
    ay, apy = airy_ai_and_deriv(y, config)
    out = _pair_combine(x, y, ax, apx, ay, apy, 1.0, lambda m: _airy_diag(m, config))
    return _finish(out, scalar)


def k1_airy(x, y, config: SpecFunConfig = DEFAULT_CONFIG):
    """Soft-edge kernel whose determinant is F_1 squared."""
    x, y, scalar = _broadcast(x, y)
    k2 = np.asarray(k2_airy(x, y, config))
    out = k2 + np.asarray(airy_ai_and_deriv(x, config)[0]) * (1.0 - np.asarray(airy_tail(y, config)))
    return _finish(out, scalar)


# ---------------------------------------------------------------------------
# batched matrices
# ---------------------------------------------------------------------------


def kernel_matrix(spec: KernelSpec, nodes, config: SpecFunConfig = DEFAULT_CONFIG) -> np.ndarray:
    """``K[i, j] = K(nodes[i], nodes[j])`` with one special-function pass per node."""
    x = np.asarray(nodes, dtype=float).ravel()
    fam = spec.family
    if fam.is_bessel:
        _check_positive(x, x)
        a = spec.order
        f, g, _, _ = _bessel_table(a, x, config)
        K = _matrix_from_table(x, f, g, 2.0, lambda m: _bessel_diag(a, m, config))
        if fam is KernelFamily.BESSEL_BETA1:
            u = np.sqrt(x)
            K = (u[None, :] / u[:, None]) * K
            K += np.outer(f / (2 * u), 1.0 - bessel_j_integral(a, u, config))
        return K
    f, g = airy_ai_and_deriv(x, config)
    K = _matrix_from_table(x, f, g, 1.0, lambda m: _airy_diag(m, config))
    if fam is KernelFamily.AIRY_BETA1:
        K += np.outer(f, 1.0 - airy_tail(x, config))
    return K


def _matrix_from_table(x, f, g, scale, diag_fn):
    num = np.outer(f, g) - np.outer(g, f)
    diff = x[:, None] - x[None, :]
    near = np.abs(diff) <= NEAR_DIAGONAL * np.maximum(np.abs(x[:, None]), np.abs(x[None, :]))
    np.fill_diagonal(near, False)
    with np.errstate(divide="ignore", invalid="ignore"):
        K = num / (scale * diff)
    np.fill_diagonal(K, diag_fn(x))
    if near.any():
        i, j = np.nonzero(near)
        K[i, j] = diag_fn((x[i] + x[j]) / 2)
    return K


# ---------------------------------------------------------------------------
# diagonal validation
# ---------------------------------------------------------------------------


def offset_diagonal_estimate(spec: KernelSpec, x: float, eps=(1e-3, 1e-4, 1e-5)) -> float:
    """Estimate K(x, x) from off-diagonal evaluations K(x, x + e), Richardson-extrapolated.

    Uses only the off-diagonal formula, so it is an independent check of the
    closed-form diagonal.
    """
    vals = []
    for e in eps:
        h = e * max(1.0, abs(x))
        vals.append(_off_diagonal(spec, x, x + h))
    ratio = eps[0] / eps[1]
    # successive eliminations of the O(h) and O(h^2) terms
    r1 = [(ratio * vals[i + 1] - vals[i]) / (ratio - 1) for i in range(len(vals) - 1)]
    if len(r1) == 1:
        return r1[0]
    return (ratio**2 * r1[1] - r1[0]) / (ratio**2 - 1)


def _off_diagonal(spec: KernelSpec, x: float, y: float, config: SpecFunConfig = DEFAULT_CONFIG) -> float:
    xs, ys = np.array([x]), np.array([y])
    fam = spec.family
    if fam.is_bessel:
        a = spec.order
        fx, gx, _, _ = _bessel_table(a, xs, config)
        fy, gy, _, _ = _bessel_table(a, ys, config)
        k2 = (fx * gy - gx * fy) / (2.0 * (xs - ys))
        if fam is KernelFamily.BESSEL_BETA1:
            k1 = np.sqrt(ys / xs) * k2 + fx / (2 * np.sqrt(xs)) * (1 - bessel_j_integral(a, np.sqrt(ys), config))
            return float(k1[0])
        return float(k2[0])
    fx, gx = airy_ai_and_deriv(xs, config)
    fy, gy = airy_ai_and_deriv(ys, config)
    k2 = (fx * gy - gx * fy) / (xs - ys)
    if fam is KernelFamily.AIRY_BETA1:
        return float((k2 + fx * (1 - airy_tail(ys, config)))[0])
    return float(k2[0])


def validation_points(spec: KernelSpec) -> list[float]:
    if spec.family.is_bessel:
        c = spec.order + 1.0
        return [(0.5 * c + 0.5) ** 2, (c + 1.0) ** 2, (1.5 * c + 2.0) ** 2]
    return [-2.0, 0.0, 1.5]


@lru_cache(maxsize=None)
def validate_diagonal(spec: KernelSpec, rtol: float = 1e-7) -> float:
    """Check the closed-form diagonal against offset evaluations; return the worst discrepancy.

    Raises ``ArithmeticError`` if the closed form disagrees, which would mean
    the diagonal fast path cannot be trusted for this kernel.
    """
    worst = 0.0
    for x in validation_points(spec):
        closed = float(kernel_matrix(spec, [x])[0, 0])
        est = offset_diagonal_estimate(spec, x)
        scale = max(abs(closed), abs(est), 1e-300)
        worst = max(worst, abs(closed - est) / scale)
    if worst > rtol:
        raise ArithmeticError(f"diagonal formula for {spec} disagrees with offsets: {worst:.3e}")
    return worst
