"""Bessel J of integer order, Airy Ai/Ai', their integrals, and Olver's uniform form.

All public functions accept a scalar or an array for the argument and return
the same shape.  Accuracy targets are absolute, in double precision:

* ``bessel_j``: 1e-13 for order <= 256, 0 <= x <= 512.
* ``airy_ai`` / ``airy_ai_deriv``: 1e-13 on |x| <= 20.
* integrals: 1e-11.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class SpecFunConfig:
    """Branch switch points for the special functions.

    ``series_cutoff`` bounds the Airy Maclaurin branch, ``asymptotic_cutoff``
    starts the Airy asymptotic branch (the band in between uses a
    steepest-descent ray integral), ``bessel_series_cutoff`` is the smallest
    argument at which Bessel J may leave its Maclaurin series, and ``tail_cut``
    is where Ai is below 1e-17 so semi-infinite integrals stop.
    """

    series_cutoff: float = 4.0
    asymptotic_cutoff: float = 8.5
    bessel_series_cutoff: float = 6.0
    tail_cut: float = 16.0
    miller_start_offset: int = 20

    def __post_init__(self):
        if self.series_cutoff <= 0 or self.tail_cut <= 0:
            raise DomainError("series_cutoff and tail_cut must be positive")
        if self.asymptotic_cutoff < self.series_cutoff:
            raise DomainError("asymptotic_cutoff must not be below series_cutoff")


DEFAULT_CONFIG = SpecFunConfig()

AI0 = 0.355028053887817239260063186004183176  # Ai(0) = 3^(-2/3)/Gamma(2/3)
AIP0 = -0.258819403792806798405183560189203964  # Ai'(0) = -3^(-1/3)/Gamma(1/3)

_RESCALE = 1e250


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _out(arr, scalar):
    return float(arr) if scalar else arr


@lru_cache(maxsize=None)
def _gauss_legendre_ref(m: int):
    # reference rule on (-1, 1); fredholm.gauss_legendre builds the same rule by Newton
    from .fredholm import legendre_nodes

    return legendre_nodes(m)


# ---------------------------------------------------------------------------
# Bessel J
# ---------------------------------------------------------------------------


def _bessel_series(n: int, x: np.ndarray) -> np.ndarray:
    """Maclaurin series of J_n; accurate where the terms do not grow much."""
    out = np.zeros_like(x)
    pos = x > 0
    if n == 0:
        out[~pos] = 1.0
    if not pos.any():
        return out
    xp = x[pos]
    half = xp / 2
    if n == 0:
        term = np.ones_like(half)
    else:
        with np.errstate(divide="ignore"):
            # log(0) = -inf for subnormal x gives exp(-inf) = 0, the right limit
            term = np.exp(n * np.log(half) - math.lgamma(n + 1))
    total = term.copy()
    q = half * half
    for k in range(1, 400):
        term = term * (-q / (k * (k + n)))
        total += term
        if np.all(np.abs(term) <= 1e-17 * np.maximum(np.abs(total), 1e-300)):
            break
    out[pos] = total
    return out


def _miller_start(nmax: int, xmax: float, offset: int) -> int:
    top = max(nmax, int(math.ceil(xmax)), 1)
    start = top + offset + int(math.sqrt(60.0 * top))
    return start + (start % 2)


def _bessel_miller(orders, x: np.ndarray, offset: int) -> np.ndarray:
    """J_n(x) for each n in ``orders`` by downward recurrence, x > 0.

    Normalized with J_0 + 2 * sum_k J_2k = 1.
    """
    orders = list(orders)
    want = {n: i for i, n in enumerate(orders)}
    N = _miller_start(max(orders), float(x.max()), offset)
    saved = np.zeros((len(orders), x.size))
    j_next = np.zeros_like(x)
    j_cur = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    two_over_x = 2.0 / x
    # invariant: j_cur holds the unnormalized J_k for the current k
    for k in range(N, 0, -1):
        if k in want:
            saved[want[k]] = j_cur
        if k % 2 == 0:
            norm += 2.0 * j_cur
        j_prev = k * two_over_x * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        big = np.abs(j_cur) > _RESCALE
        if big.any():
            j_cur[big] /= _RESCALE
            j_next[big] /= _RESCALE
            norm[big] /= _RESCALE
            saved[:, big] /= _RESCALE
    if 0 in want:
        saved[want[0]] = j_cur
    norm += j_cur
    return saved / norm


def bessel_j_orders(orders, x, config: SpecFunConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Array of shape ``(len(orders),) + x.shape`` with J_n(x) for each order.

    Negative orders are allowed through J_{-n} = (-1)^n J_n.
    """
    x, _ = _as_array(x)
    if np.any(x < 0):
        raise DomainError("Bessel J is only provided for x >= 0")
    flat = x.ravel()
    orders = [int(n) for n in orders]
    absorders = sorted({abs(n) for n in orders})
    table = {}
    need_miller = np.zeros(flat.shape, dtype=bool)
    for n in absorders:
        cut = max(config.bessel_series_cutoff, 2.0 * math.sqrt(n + 1))
        need_miller |= flat > cut
    mill = None
    if need_miller.any():
        mill = _bessel_miller(absorders, flat[need_miller], config.miller_start_offset)
    for idx, n in enumerate(absorders):
        cut = max(config.bessel_series_cutoff, 2.0 * math.sqrt(n + 1))
        vals = np.empty_like(flat)
        ser = flat <= cut
        vals[ser] = _bessel_series(n, flat[ser])
        if mill is not None:
            # Miller values for every point that needed the recurrence for some order
            sub = mill[idx]
            use = need_miller & ~ser
            vals[use] = sub[use[need_miller]]
        table[n] = vals
    out = np.empty((len(orders),) + x.shape)
    for i, n in enumerate(orders):
        v = table[abs(n)]
        if n < 0 and abs(n) % 2:
            v = -v
        out[i] = v.reshape(x.shape)
    return out


def bessel_j(order: int, x, config: SpecFunConfig = DEFAULT_CONFIG):
    """Bessel function of the first kind J_order(x) for integer order >= 0."""
    if order < 0 or int(order) != order:
        raise DomainError("order must be a nonnegative integer")
    arr, scalar = _as_array(x)
    return _out(bessel_j_orders([int(order)], arr, config)[0], scalar)


def bessel_j_deriv(order: int, x, config: SpecFunConfig = DEFAULT_CONFIG):
    """J'_order(x) = (J_{order-1}(x) - J_{order+1}(x)) / 2."""
    if order < 0 or int(order) != order:
        raise DomainError("order must be a nonnegative integer")
    arr, scalar = _as_array(x)
    lo, hi = bessel_j_orders([order - 1, order + 1], arr, config)
    return _out(0.5 * (lo - hi), scalar)


def _bessel_integral_series(n: int, z: np.ndarray) -> np.ndarray:
    out = np.zeros_like(z)
    pos = z > 0
    if not pos.any():
        return out
    zp = z[pos]
    half = zp / 2
    # k-th term: (-1)^k (z/2)^(2k+n) * z / (k! (k+n)! (2k+n+1))
    base = np.exp(n * np.log(half) - math.lgamma(n + 1)) * zp
    total = base / (n + 1)
    q = half * half
    for k in range(1, 400):
        base = base * (-q / (k * (k + n)))
        term = base / (2 * k + n + 1)
        total += term
        if np.all(np.abs(term) <= 1e-17 * np.maximum(np.abs(total), 1e-300)):
            break
    out[pos] = total
    return out


def cumulative_integral(func, points, anchor: float, panel: float = 2.0, order: int = 16):
    """``[integral of func from anchor to p for p in points]`` by panel Gauss-Legendre.

    ``func`` must accept an array.  The breakpoints are the sorted points plus a
    uniform subdivision of width at most ``panel``, so the cost is linear in
    the covered length rather than in the number of points.
    """
    pts = np.asarray(points, dtype=float).ravel()
    if pts.size == 0:
        return pts.copy()
    lo, hi = min(anchor, pts.min()), max(anchor, pts.max())
    n_uniform = max(int(math.ceil((hi - lo) / panel)), 1)
    brk = np.unique(np.concatenate([pts, np.linspace(lo, hi, n_uniform + 1), [anchor]]))
    t, w = _gauss_legendre_ref(order)
    a, b = brk[:-1], brk[1:]
    mid, rad = (a + b) / 2, (b - a) / 2
    nodes = mid[:, None] + rad[:, None] * t[None, :]
    vals = np.asarray(func(nodes.ravel())).reshape(nodes.shape)
    seg = (vals * w[None, :]).sum(axis=1) * rad
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    ref = cum[np.searchsorted(brk, anchor)]
    return cum[np.searchsorted(brk, pts)] - ref


def bessel_j_integral(order: int, z, config: SpecFunConfig = DEFAULT_CONFIG):
    """Integral of J_order from 0 to z.

    Term-wise integrated series below ``bessel_series_cutoff``; beyond it the
    series value at the cutoff plus panel Gauss-Legendre quadrature of J.
    """
    if order < 0 or int(order) != order:
        raise DomainError("order must be a nonnegative integer")
    arr, scalar = _as_array(z)
    if np.any(arr < 0):
        raise DomainError("z must be nonnegative")
    flat = arr.ravel()
    cut = config.bessel_series_cutoff
    out = np.empty_like(flat)
    small = flat <= cut
    out[small] = _bessel_integral_series(order, flat[small])
    if (~small).any():
        base = _bessel_integral_series(order, np.array([cut]))[0]
        rest = cumulative_integral(lambda t: bessel_j(order, t, config), flat[~small], cut)
        out[~small] = base + rest
    return _out(out.reshape(arr.shape), scalar)


# ---------------------------------------------------------------------------
# Airy
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _airy_u(count: int = 60):
    u = [1.0]
    for k in range(1, count):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    v = [1.0] + [-(6 * k + 1) / (6 * k - 1) * u[k] for k in range(1, count)]
    return np.array(u), np.array(v)


def _airy_series(x: np.ndarray):
    """Maclaurin pair: Ai = Ai(0) f + Ai'(0) g and the derivative pair."""
    x3 = x**3
    f = np.ones_like(x)
    g = x.copy()
    tf = np.ones_like(x)
    tg = x.copy()
    fp = np.zeros_like(x)
    gp = np.ones_like(x)
    # every k >= 1 term vanishes at x = 0, so dividing by 1 there is harmless
    safe = np.where(x != 0, x, 1.0)
    for k in range(1, 200):
        tf = tf * x3 / ((3 * k - 1) * (3 * k))
        tg = tg * x3 / ((3 * k) * (3 * k + 1))
        f += tf
        g += tg
        fp += 3 * k * tf / safe
        gp += (3 * k + 1) * tg / safe
        if np.all(np.abs(tf) + np.abs(tg) <= 1e-18 * (np.abs(f) + np.abs(g))):
            break
    return AI0 * f + AIP0 * g, AI0 * fp + AIP0 * gp


@lru_cache(maxsize=None)
def _ray_rule(panels: int = 6, order: int = 24, length: float = 6.0):
    t, w = _gauss_legendre_ref(order)
    edges = np.linspace(0.0, length, panels + 1)
    mid, rad = (edges[:-1] + edges[1:]) / 2, (edges[1:] - edges[:-1]) / 2
    nodes = (mid[:, None] + rad[:, None] * t[None, :]).ravel()
    weights = (rad[:, None] * w[None, :]).ravel()
    return nodes, weights


def _airy_ray(x: np.ndarray):
    """Ai and Ai' from the integral along the ray arg(t) = pi/6.

    Ai(x) = Re[e^{i pi/6} int_0^inf exp(-u^3/3 + x u e^{2 pi i/3}) du] / pi;
    the integrand peaks at exp((2/3)(|x|/2)^{3/2}) for negative x, so this is
    used only on a bounded band.
    """
    u, w = _ray_rule()
    rot = np.exp(2j * np.pi / 3)
    expo = np.exp(-(u[None, :] ** 3) / 3 + x[:, None] * u[None, :] * rot)
    integ = expo @ w
    integ_d = (expo * u[None, :]) @ w
    ai = (np.exp(1j * np.pi / 6) * integ).real / np.pi
    aip = (np.exp(1j * np.pi / 6) * rot * integ_d).real / np.pi
    return ai, aip


def _airy_asym_pos(x: np.ndarray):
    u, v = _airy_u()
    z = (2.0 / 3.0) * x**1.5
    su = np.zeros_like(x)
    sv = np.zeros_like(x)
    for i in range(x.size):
        zi = z[i]
        tu = u / zi ** np.arange(len(u)) * (-1.0) ** np.arange(len(u))
        tv = v / zi ** np.arange(len(v)) * (-1.0) ** np.arange(len(v))
        su[i] = _sum_to_smallest(tu)
        sv[i] = _sum_to_smallest(tv)
    pref = np.exp(-z) / (2 * math.sqrt(math.pi))
    return pref * su / x**0.25, -pref * sv * x**0.25


def _airy_asym_neg(x: np.ndarray):
    u, v = _airy_u()
    r = -x
    z = (2.0 / 3.0) * r**1.5
    ai = np.empty_like(x)
    aip = np.empty_like(x)
    k = np.arange(len(u))
    sgn = (-1.0) ** (k // 2)
    for i in range(x.size):
        zi = z[i]
        tu = sgn * u / zi**k
        tv = sgn * v / zi**k
        stop = _smallest_index(np.abs(u / zi**k))
        pu_e, pu_o = tu[:stop:2].sum(), tu[1:stop:2].sum()
        stop_v = _smallest_index(np.abs(v / zi**k))
        pv_e, pv_o = tv[:stop_v:2].sum(), tv[1:stop_v:2].sum()
        th = zi - math.pi / 4
        ai[i] = (math.cos(th) * pu_e + math.sin(th) * pu_o) / (math.sqrt(math.pi) * r[i] ** 0.25)
        aip[i] = r[i] ** 0.25 * (math.sin(th) * pv_e - math.cos(th) * pv_o) / math.sqrt(math.pi)
    return ai, aip


def _smallest_index(mags: np.ndarray) -> int:
    """Number of leading terms to keep: stop before the terms start growing."""
    for k in range(1, len(mags)):
        if mags[k] > mags[k - 1] or mags[k] < 1e-18:
            return k
    return len(mags)


def _sum_to_smallest(terms: np.ndarray) -> float:
    return float(terms[: _smallest_index(np.abs(terms))].sum())


def _airy_pair(x, config: SpecFunConfig):
    arr, scalar = _as_array(x)
    flat = arr.ravel()
    ai = np.empty_like(flat)
    aip = np.empty_like(flat)
    ax = np.abs(flat)
    ser = ax <= config.series_cutoff
    ray = (ax > config.series_cutoff) & (ax <= config.asymptotic_cutoff)
    pos = (flat > config.asymptotic_cutoff)
    neg = (flat < -config.asymptotic_cutoff)
    for mask, fn in ((ser, _airy_series), (ray, _airy_ray), (pos, _airy_asym_pos), (neg, _airy_asym_neg)):
        if mask.any():
            ai[mask], aip[mask] = fn(flat[mask])
    return ai.reshape(arr.shape), aip.reshape(arr.shape), scalar


def airy_ai(x, config: SpecFunConfig = DEFAULT_CONFIG):
    """Airy function Ai(x)."""
    ai, _, scalar = _airy_pair(x, config)
    return _out(ai, scalar)


def airy_ai_deriv(x, config: SpecFunConfig = DEFAULT_CONFIG):
    """Derivative Ai'(x)."""
    _, aip, scalar = _airy_pair(x, config)
    return _out(aip, scalar)


def airy_ai_and_deriv(x, config: SpecFunConfig = DEFAULT_CONFIG):
    ai, aip, scalar = _airy_pair(x, config)
    return _out(ai, scalar), _out(aip, scalar)


def airy_branch(name: str, x):
    """Evaluate a single Airy branch (``series``, ``ray`` or ``asymptotic``) for cross-checks."""
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if name == "series":
        return _airy_series(arr)
    if name == "ray":
        return _airy_ray(arr)
    if name == "asymptotic":
        ai, aip = np.empty_like(arr), np.empty_like(arr)
        p = arr > 0
        if p.any():
            ai[p], aip[p] = _airy_asym_pos(arr[p])
        if (~p).any():
            ai[~p], aip[~p] = _airy_asym_neg(arr[~p])
        return ai, aip
    raise ValueError(f"unknown branch {name!r}")


def airy_tail(y, config: SpecFunConfig = DEFAULT_CONFIG):
    """Integral of Ai from y to infinity.

    For y < 0 this is 1/3 + int_y^0 Ai (the total integral over (0, inf) is
    exactly 1/3); for 0 <= y <= tail_cut the integral to ``tail_cut`` is taken
    directly, and beyond ``tail_cut`` the leading asymptotic term is used.
    """
    arr, scalar = _as_array(y)
    flat = arr.ravel()
    out = np.empty_like(flat)
    T = config.tail_cut
    far = flat > T
    neg = flat < 0
    mid = ~far & ~neg
    f = lambda t: airy_ai(t, config)  # noqa: E731
    if far.any():
        yf = flat[far]
        out[far] = np.exp(-(2.0 / 3.0) * yf**1.5) / (2 * math.sqrt(math.pi) * yf**0.75)
    if mid.any():
        out[mid] = -cumulative_integral(f, flat[mid], T, panel=1.0)
    if neg.any():
        out[neg] = 1.0 / 3.0 - cumulative_integral(f, flat[neg], 0.0, panel=1.0)
    return _out(out.reshape(arr.shape), scalar)


# ---------------------------------------------------------------------------
# Olver uniform asymptotics near the turning point
# ---------------------------------------------------------------------------

_ZETA_SERIES = (1.0, 3.0 / 10.0, 32.0 / 175.0, 1037.0 / 7875.0)


def olver_zeta(z: float) -> float:
    """The Olver variable zeta(z), positive on (0, 1), zero at 1, negative beyond."""
    if z <= 0:
        raise DomainError("zeta is defined for z > 0")
    t = 1.0 - z
    if abs(t) < 1e-3:
        return 2 ** (1 / 3) * t * sum(c * t**k for k, c in enumerate(_ZETA_SERIES))
    if z < 1:
        r = math.sqrt(1 - z * z)
        return (1.5 * (math.log((1 + r) / z) - r)) ** (2 / 3)
    r = math.sqrt(z * z - 1)
    return -((1.5 * (r - math.acos(1 / z))) ** (2 / 3))


def bessel_j_uniform(order: int, w: float, config: SpecFunConfig = DEFAULT_CONFIG) -> float:
    """Leading Olver approximation to J_order at ``order - w (order/2)^(1/3)``."""
    nu = float(order)
    if order < 8:
        raise DomainError("uniform expansion is only offered for order >= 8")
    x = nu - w * (nu / 2) ** (1 / 3)
    if x < 0:
        raise DomainError(f"argument {x} is negative")
    if x == 0:
        return 0.0
    z = x / nu
    zeta = olver_zeta(z)
    t = 1.0 - z
    if abs(t) < 1e-3:
        # 4 zeta / (1 - z^2) from the series, avoiding 0/0
        ratio = 4 * 2 ** (1 / 3) * sum(c * t**k for k, c in enumerate(_ZETA_SERIES)) / (2 - t)
    else:
        ratio = 4 * zeta / (1 - z * z)
    return ratio**0.25 * airy_ai(nu ** (2 / 3) * zeta, config) / nu ** (1 / 3)
