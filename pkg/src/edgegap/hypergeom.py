"""Jack-polynomial hypergeometric series at equal arguments.

With all arguments equal, ``C_kappa(x * 1^n) = x**|kappa| * C_kappa(1^n)`` and
the series collapses to a power series in ``x`` whose degree-``N`` coefficient
is a finite sum over partitions of ``N`` with at most ``n`` parts.  That is the
only case evaluated here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, NonConvergence, ZeroDenominator
from .partitions import (
    LOG_SPACE_WEIGHT,
    Partition,
    c_at_identity,
    check_alpha,
    iter_partitions,
    pochhammer_factors,
)
from .results import GapMethod, GapValue

LEVEL_CAP = 400
DEFAULT_REL_TOL = 1e-14
QUIET_LEVELS = 3


@dataclass(frozen=True)
class HypergeomResult:
    value: float
    degree_used: int
    tail_estimate: float


def _term_float(kappa: Partition, alpha, numer, denom, n_vars, log_x, x_sign):
    """One partition's contribution ``x^N C(1^n) prod[a]/prod[b] / N!`` in floats."""
    N = kappa.weight()
    sign = 1.0
    log_abs = 0.0
    for a in numer:
        for f in pochhammer_factors(a, kappa, alpha):
            if f == 0:
                return 0.0
            sign = -sign if f < 0 else sign
            log_abs += math.log(abs(f))
    for b in denom:
        for f in pochhammer_factors(b, kappa, alpha):
            if f == 0:
                raise ZeroDenominator(f"[{b}]_{list(kappa.parts)} vanishes")
            sign = -sign if f < 0 else sign
            log_abs -= math.log(abs(f))
    c = c_at_identity(kappa, alpha, n_vars)
    if c == 0:
        return 0.0
    if N and x_sign < 0 and N % 2:
        sign = -sign
    return sign * math.exp(log_abs + math.log(c) - math.lgamma(N + 1) + N * log_x)


def level_coefficient(alpha, numer: Sequence, denom: Sequence, n_vars: int, degree: int):
    """Coefficient of ``x**degree`` in ``pFq^(alpha)(numer; denom; x * 1^n_vars)``.

    Exact when ``alpha`` and the parameters are ints or Fractions.
    """
    check_alpha(alpha)
    total = 0
    for kappa in iter_partitions(degree, max(n_vars, 1)):
        if n_vars == 0 and degree:
            break
        num = math.prod((_poch_exact(a, kappa, alpha) for a in numer), start=1)
        if num == 0:
            continue
        den = math.prod((_poch_exact(b, kappa, alpha) for b in denom), start=1)
        if den == 0:
            raise ZeroDenominator(f"denominator vanishes at {kappa}")
        total += c_at_identity(kappa, alpha, max(n_vars, 1)) * num / (den * math.factorial(degree))
    return total


def _poch_exact(u, kappa, alpha):
    return math.prod(pochhammer_factors(u, kappa, alpha), start=1)


def _level_float(N, alpha, numer, denom, n_vars, x):
    if x == 0.0:
        return 0.0
    if N <= LOG_SPACE_WEIGHT:
        terms = []
        for kappa in iter_partitions(N, n_vars):
            num = math.prod((_poch_exact(a, kappa, alpha) for a in numer), start=1)
            if num == 0:
                continue
            den = math.prod((_poch_exact(b, kappa, alpha) for b in denom), start=1)
            if den == 0:
                raise ZeroDenominator(f"denominator vanishes at {kappa}")
            terms.append(c_at_identity(kappa, alpha, n_vars) * num / den)
        return math.fsum(terms) * x**N / math.factorial(N)
    log_x, x_sign = math.log(abs(x)), (1 if x > 0 else -1)
    return math.fsum(
        _term_float(kappa, alpha, numer, denom, n_vars, log_x, x_sign)
        for kappa in iter_partitions(N, n_vars)
    )


def _terminating_degree(numer, n_vars):
    """Highest degree with a nonzero term when some numerator is a nonpositive integer."""
    best = None
    for a in numer:
        if float(a) <= 0 and float(a) == int(a):
            # [-N]_kappa vanishes once kappa_1 > N
            deg = -int(a) * n_vars
            best = deg if best is None else min(best, deg)
    return best


def _hyp_equal(alpha, numer, denom, n_vars, x, rel_tol, level_cap):
    alpha = float(check_alpha(alpha))
    numer = [float(a) for a in numer]
    denom = [float(b) for b in denom]
    x = float(x)
    if not 0 < rel_tol < 1:
        raise DomainError("rel_tol must lie in (0, 1)")
    if n_vars == 0 or x == 0.0:
        return HypergeomResult(1.0, 0, 0.0)
    stop = _terminating_degree(numer, n_vars)
    partial = [1.0]
    quiet = 0
    last = 0.0
    N = 0
    while True:
        N += 1
        if stop is not None and N > stop:
            return HypergeomResult(math.fsum(partial), stop, 0.0)
        if N > level_cap:
            raise NonConvergence(
                f"series not converged after {level_cap} levels (x={x}, n={n_vars})"
            )
        last = _level_float(N, alpha, numer, denom, n_vars, x)
        partial.append(last)
        if stop is not None:
            continue
        total = math.fsum(partial)
        if abs(last) < rel_tol * abs(total):
            quiet += 1
            if quiet == QUIET_LEVELS:
                return HypergeomResult(total, N, abs(last))
        else:
            quiet = 0


def hyp0f1_equal(alpha, b, n_vars: int, x, rel_tol: float = DEFAULT_REL_TOL,
                 level_cap: int = LEVEL_CAP) -> HypergeomResult:
    """``0F1^(alpha)(b; x, ..., x)`` with ``n_vars`` equal arguments."""
    if n_vars < 0:
        raise DomainError("n_vars must be nonnegative")
    return _hyp_equal(alpha, [], [b], n_vars, x, rel_tol, level_cap)


def hyp2f1_equal(alpha, a1, a2, b, n_vars: int, x, rel_tol: float = DEFAULT_REL_TOL,
                 level_cap: int = LEVEL_CAP) -> HypergeomResult:
    """``2F1^(alpha)(a1, a2; b; x, ..., x)`` with ``n_vars`` equal arguments.

    Only ``|x| < 1`` is accepted unless the series terminates (a numerator is
    a nonpositive integer).
    """
    if n_vars < 0:
        raise DomainError("n_vars must be nonnegative")
    if abs(x) >= 1 and _terminating_degree([float(a1), float(a2)], max(n_vars, 1)) is None:
        raise DomainError(f"2F1 series needs |x| < 1 unless it terminates, got x={x}")
    return _hyp_equal(alpha, [a1, a2], [b], n_vars, x, rel_tol, level_cap)


def hard_gap_hyper(beta: int, s: float, a: int, rel_tol: float = DEFAULT_REL_TOL) -> GapValue:
    """Hard-edge gap probability of ``(0, s)`` from its finite hypergeometric form.

    ``a`` is the Laguerre parameter, which is also the number of equal
    arguments (for ``beta=4`` the parameter is ``a`` and the index ``a/2``).
    """
    if s < 0:
        raise DomainError("s must be nonnegative")
    if a < 0 or int(a) != a:
        raise DomainError("a must be a nonnegative integer")
    a = int(a)
    if beta == 1:
        pre, res = math.exp(-s / 8), hyp0f1_equal(0.5, 2 * a, a, s / 4, rel_tol)
    elif beta == 2:
        pre, res = math.exp(-s / 4), hyp0f1_equal(1.0, a, a, s / 4, rel_tol)
    elif beta == 4:
        if a % 2:
            raise DomainError(f"beta=4 hypergeometric form needs even a, got a={a}")
        pre, res = math.exp(-s / 8), hyp0f1_equal(2.0, a / 2, a, s / 16, rel_tol)
    else:
        raise DomainError(f"beta must be 1, 2 or 4, got {beta}")
    return GapValue(
        value=pre * res.value,
        method=GapMethod.HYPERGEOMETRIC,
        series_k_used=res.degree_used,
        err_estimate=pre * res.tail_estimate,
    )


def jacobi_gap_finite(beta: float, s: float, a: int, b: float, n: int,
                      rel_tol: float = DEFAULT_REL_TOL) -> GapValue:
    """Probability of no eigenvalue in ``(0, s)`` for the ``n``-point Jacobi ensemble.

    Weight ``x^a (1-x)^b`` with ``|x_j - x_k|^beta`` repulsion on ``(0, 1)``;
    ``a`` a nonnegative integer, which makes the hypergeometric series
    terminate.
    """
    if not 0 <= s < 1:
        raise DomainError("s must lie in [0, 1)")
    if a < 0 or int(a) != a:
        raise DomainError("a must be a nonnegative integer")
    if n < 1:
        raise DomainError("n must be positive")
    a = int(a)
    exponent = (1 + a + b) * n + beta * n * (n - 1) / 2
    res = hyp2f1_equal(
        beta / 2,
        -n,
        (2 / beta) * (a + b + 1) + n - 1,
        (2 / beta) * a,
        a,
        -s / (1 - s),
        rel_tol,
    )
    pre = (1 - s) ** exponent
    return GapValue(
        value=pre * res.value,
        method=GapMethod.HYPERGEOMETRIC,
        series_k_used=res.degree_used,
        err_estimate=pre * res.tail_estimate,
    )
