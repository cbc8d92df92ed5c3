"""Integer partitions and the Jack-polynomial coefficients indexed by them.

Everything here is a closed-form product over the boxes of a Young diagram.
Functions are generic over the number type of ``alpha``: pass a
:class:`fractions.Fraction` (or an ``int`` together with ``exact=True`` at the
call sites that support it) to get exact rational results, or a ``float`` for
double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import DomainError

Number = Union[int, float, Fraction]

# above this weight float products are accumulated in log space
LOG_SPACE_WEIGHT = 40


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise DomainError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(p for p in parts if p != 0))

    def weight(self) -> int:
        return sum(self.parts)

    def length(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def boxes(self) -> Iterator[tuple[int, int, int, int]]:
        """Yield ``(i, j, arm, leg)`` for every box, 1-indexed, row by row."""
        conj = self.conjugate().parts
        for i, row in enumerate(self.parts, start=1):
            for j in range(1, row + 1):
                yield i, j, row - j, conj[j - 1] - i

    def doubled(self) -> "Partition":
        """Each part doubled (the partition written ``2*kappa``)."""
        return Partition(tuple(2 * p for p in self.parts))

    def repeated(self) -> "Partition":
        """Each part repeated twice (the partition written ``kappa^2``)."""
        return Partition(tuple(p for p in self.parts for _ in range(2)))

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"


def as_partition(kappa) -> Partition:
    return kappa if isinstance(kappa, Partition) else Partition.of(*kappa)


def check_alpha(alpha: Number) -> Number:
    if not alpha > 0:
        raise DomainError(f"Jack parameter must be positive, got {alpha}")
    return alpha


def iter_partitions(weight: int, max_parts: int) -> Iterator[Partition]:
    """All partitions of ``weight`` with at most ``max_parts`` parts.

    Order is decreasing lexicographic, so ``(3,)`` precedes ``(2, 1)``.
    """
    if weight < 0 or max_parts < 1:
        raise DomainError("need weight >= 0 and max_parts >= 1")

    def rec(remaining: int, cap: int, slots: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield Partition(prefix)
            return
        if slots == 0:
            return
        # the remaining parts must fit: cap * slots >= remaining
        for p in range(min(remaining, cap), 0, -1):
            if p * slots < remaining:
                break
            yield from rec(remaining - p, p, slots - 1, prefix + (p,))

    yield from rec(weight, weight, max_parts, ())


def _recip(alpha: Number) -> Number:
    return Fraction(1) / alpha if isinstance(alpha, (int, Fraction)) else 1.0 / alpha


def _box_product(kappa: Partition, factor) -> Number:
    if kappa.weight() > LOG_SPACE_WEIGHT:
        vals = [factor(a, l) for _, _, a, l in kappa.boxes()]
        if all(isinstance(v, float) for v in vals):
            return math.exp(math.fsum(math.log(v) for v in vals))
        return math.prod(vals)
    return math.prod((factor(a, l) for _, _, a, l in kappa.boxes()), start=1)


def d_prime(kappa, alpha: Number) -> Number:
    """Product over boxes of ``alpha*(arm + 1) + leg``."""
    kappa = as_partition(kappa)
    check_alpha(alpha)
    return _box_product(kappa, lambda a, l: alpha * (a + 1) + l)


def h_norm(kappa, alpha: Number) -> Number:
    """Product over boxes of ``alpha*arm + leg + 1``."""
    kappa = as_partition(kappa)
    check_alpha(alpha)
    return _box_product(kappa, lambda a, l: alpha * a + l + 1)


def pochhammer_factors(u: Number, kappa, alpha: Number) -> list:
    """The individual factors ``u - (j-1)/alpha + m`` of the generalized Pochhammer symbol."""
    kappa = as_partition(kappa)
    inv = _recip(check_alpha(alpha))
    return [u - (j - 1) * inv + m for j, row in enumerate(kappa.parts, start=1) for m in range(row)]


def gen_pochhammer(u: Number, kappa, alpha: Number) -> Number:
    """Generalized Pochhammer symbol ``[u]_kappa^(alpha)`` as a finite product.

    Defined for every real ``u``; no Gamma functions are involved.
    """
    factors = pochhammer_factors(u, kappa, alpha)
    if len(factors) > LOG_SPACE_WEIGHT and all(isinstance(f, float) for f in factors):
        if any(f == 0.0 for f in factors):
            return 0.0
        sign = -1.0 if sum(f < 0 for f in factors) % 2 else 1.0
        return sign * math.exp(math.fsum(math.log(abs(f)) for f in factors))
    return math.prod(factors, start=1)


def c_at_identity(kappa, alpha: Number, n: int) -> Number:
    """Renormalized Jack polynomial ``C_kappa^(alpha)`` evaluated at ``n`` ones.

    Zero when ``kappa`` has more than ``n`` parts.
    """
    kappa = as_partition(kappa)
    check_alpha(alpha)
    if n < 1:
        raise DomainError("n must be a positive integer")
    if kappa.length() > n:
        return 0
    w = kappa.weight()
    if w == 0:
        return 1
    u = n * _recip(alpha)
    if w > LOG_SPACE_WEIGHT and isinstance(alpha, float):
        log_val = (
            math.lgamma(w + 1)
            + 2 * w * math.log(alpha)
            + math.fsum(math.log(f) for f in pochhammer_factors(u, kappa, alpha))
            - math.log(h_norm(kappa, alpha))
            - math.log(d_prime(kappa, alpha))
        )
        return math.exp(log_val)
    return math.factorial(w) * alpha ** (2 * w) * gen_pochhammer(u, kappa, alpha) / (
        h_norm(kappa, alpha) * d_prime(kappa, alpha)
    )
