"""Samplers and exact enumerations for longest increasing subsequences and group averages.

Reproducibility: trials are split into fixed-size chunks, chunk ``k`` draws
from ``numpy.random.default_rng(SeedSequence(seed, spawn_key=(k,)))``, and
chunk results are combined in chunk order.  Results therefore depend on the
seed only, never on the number of workers.
"""

from __future__ import annotations

import bisect
import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, SizeLimit
from .hypergeom import hyp0f1_equal
from .partitions import as_partition, iter_partitions

CHUNK = 1 << 16
WORKERS_ENV = "EDGEGAP_WORKERS"
PERMUTATION_CAP = 10
INVOLUTION_CAP = 12
GROUP_T_MAX = 4.0


class Shape(str, enum.Enum):
    SQUARE = "Square"
    ANTI_DIAGONAL = "AntiDiagonal"
    DIAGONAL = "Diagonal"


class Kind(str, enum.Enum):
    PERMUTATION = "Permutation"
    FPF_INVOLUTION = "FpfInvolution"


class Group(str, enum.Enum):
    UNITARY = "Unitary"
    ORTHOGONAL = "Orthogonal"
    SYMPLECTIC = "Symplectic"


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    trials: int
    seed: int

    def sigmas(self, exact: float) -> float:
        """Distance from ``exact`` in standard errors (inf if the error is zero and they differ)."""
        diff = abs(self.mean - exact)
        if self.std_error == 0:
            return 0.0 if diff == 0 else math.inf
        return diff / self.std_error


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 1 << 64:
        raise DomainError("seed must be an unsigned 64-bit integer")
    return seed


def chunk_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(check_seed(seed), spawn_key=(index,)))


# ---------------------------------------------------------------------------
# longest increasing subsequences
# ---------------------------------------------------------------------------


def lis(seq: Sequence) -> int:
    """Length of the longest strictly increasing subsequence (patience sorting)."""
    tops: list = []
    for v in seq:
        k = bisect.bisect_left(tops, v)
        if k == len(tops):
            tops.append(v)
        else:
            tops[k] = v
    return len(tops)


@dataclass(frozen=True)
class PointSet:
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        if pts.size and (pts.min() < 0 or pts.max() > 1):
            raise DomainError("points must lie in the unit square")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]


def longest_chain(ps: PointSet) -> int:
    """Longest up/right chain; ties are ordered lexicographically by ``(x, y)``."""
    pts = ps.points
    if len(pts) == 0:
        return 0
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    # rank y so equal values compare in the (x, y) order as well
    y = pts[order, 1]
    ranks = np.empty(len(y), dtype=np.int64)
    ranks[np.lexsort((np.arange(len(y)), y))] = np.arange(len(y))
    return lis(ranks.tolist())


def _batched_lis(y: np.ndarray) -> np.ndarray:
    """Row-wise LIS of a ``(batch, n)`` array with distinct entries per row."""
    batch, n = y.shape
    tops = np.full((batch, n + 1), np.inf)
    length = np.zeros(batch, dtype=np.int64)
    rows = np.arange(batch)
    for j in range(n):
        v = y[:, j]
        k = np.sum(tops < v[:, None], axis=1)
        tops[rows, k] = v
        length = np.maximum(length, k + 1)
    return length


# ---------------------------------------------------------------------------
# random permutations and involutions
# ---------------------------------------------------------------------------


def sample_permutation(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform permutation of ``0..n-1`` (Fisher-Yates)."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    return rng.permutation(n)


def sample_fpf_involution(two_n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform fixed-point-free involution of ``0..two_n-1``.

    Pairs consecutive entries of a uniform shuffle, which is a uniform
    perfect matching.
    """
    if two_n < 0 or two_n % 2:
        raise DomainError("two_n must be a nonnegative even integer")
    p = rng.permutation(two_n)
    inv = np.empty(two_n, dtype=np.int64)
    inv[p[0::2]] = p[1::2]
    inv[p[1::2]] = p[0::2]
    return inv


# ---------------------------------------------------------------------------
# Poissonized point processes
# ---------------------------------------------------------------------------


def _shape_points(shape: Shape, count: int, n_base: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` point sets of the given shape built from ``n_base`` Poisson points each."""
    u = rng.random((count, n_base, 2))
    if shape is Shape.SQUARE:
        return u
    x, y = u[..., 0], u[..., 1]
    if shape is Shape.ANTI_DIAGONAL:
        above = x + y > 1
        x, y = np.where(above, 1 - y, x), np.where(above, 1 - x, y)
        mirror = np.stack([1 - y, 1 - x], axis=-1)
    else:
        x, y = np.maximum(x, y), np.minimum(x, y)
        mirror = np.stack([y, x], axis=-1)
    return np.concatenate([np.stack([x, y], axis=-1), mirror], axis=1)


def _chain_lengths(pts: np.ndarray) -> np.ndarray:
    if pts.shape[1] == 0:
        return np.zeros(pts.shape[0], dtype=np.int64)
    order = np.argsort(pts[..., 0], axis=1, kind="stable")
    y = np.take_along_axis(pts[..., 1], order, axis=1)
    return _batched_lis(y)


def _lis_chunk(shape: Shape, t: float, l: int, n_trials: int, rng: np.random.Generator):
    mean = t if shape is Shape.SQUARE else t / 2
    sizes = rng.poisson(mean, n_trials)
    hits = 0
    for n_base in np.unique(sizes):
        count = int(np.sum(sizes == n_base))
        lengths = _chain_lengths(_shape_points(shape, count, int(n_base), rng))
        hits += int(np.sum(lengths <= l))
    return hits, hits


def _chunks(trials: int):
    return [min(CHUNK, trials - start) for start in range(0, trials, CHUNK)]


def _run_chunks(work: Callable[[int, np.random.Generator], tuple], trials: int, seed: int,
                workers: Optional[int]):
    sizes = _chunks(trials)
    jobs = [(size, chunk_rng(seed, k)) for k, size in enumerate(sizes)]
    workers = workers or default_workers()
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda j: work(*j), jobs))
    return [work(*j) for j in jobs]


def _estimate(sums: list, trials: int, seed: int) -> McEstimate:
    total = math.fsum(s for s, _ in sums)
    total_sq = math.fsum(q for _, q in sums)
    mean = total / trials
    if trials > 1:
        var = max(total_sq - trials * mean * mean, 0.0) / (trials - 1)
    else:
        var = 0.0
    return McEstimate(mean, math.sqrt(var / trials), trials, seed)


def poissonized_lis_cdf(shape, t: float, l: int, trials: int, seed: int = 0,
                        workers: Optional[int] = None) -> McEstimate:
    """Monte Carlo estimate of ``Pr(L(t) <= l)`` for a Poissonized point process.

    ``Square``: Poisson(t) uniform points in the unit square.
    ``AntiDiagonal``: Poisson(t/2) points below ``y = 1 - x`` plus their
    mirror images ``(1 - y, 1 - x)``.
    ``Diagonal``: Poisson(t/2) points below ``y = x`` plus ``(y, x)``.
    """
    shape = Shape(shape)
    if not t > 0:
        raise DomainError("t must be positive")
    if l < 0 or trials < 1:
        raise DomainError("need l >= 0 and trials >= 1")
    sums = _run_chunks(lambda n, rng: _lis_chunk(shape, t, l, n, rng), trials, seed, workers)
    return _estimate(sums, trials, seed)


def lis_cdf_exact(shape, t: float, l: int) -> float:
    """``Pr(L(t) <= l)`` for the Poissonized models from the equal-argument series.

    ``Square`` is the unitary average, ``AntiDiagonal`` (always even) the
    symplectic one with index ``floor(l/2)``, and ``Diagonal`` the orthogonal
    average over ``O(l)``.
    """
    shape = Shape(shape)
    if t < 0 or l < 0:
        raise DomainError("need t >= 0 and l >= 0")
    if shape is Shape.SQUARE:
        return math.exp(-t) * hyp0f1_equal(1.0, l, l, t).value
    if shape is Shape.ANTI_DIAGONAL:
        h = l // 2
        return math.exp(-t / 2) * hyp0f1_equal(0.5, 2 * h, h, t).value
    return math.exp(-t / 2) * hyp0f1_equal(2.0, l / 2, l, t / 4).value


# ---------------------------------------------------------------------------
# exact enumeration
# ---------------------------------------------------------------------------


def _permutation_lis_counts(n: int) -> list[int]:
    """``counts[k]`` = number of permutations of ``n`` with LIS exactly ``k``."""
    counts = [0] * (n + 1)
    used = [False] * n
    tops: list[int] = []

    def rec(depth: int):
        if depth == n:
            counts[len(tops)] += 1
            return
        for v in range(n):
            if used[v]:
                continue
            used[v] = True
            k = bisect.bisect_left(tops, v)
            if k == len(tops):
                tops.append(v)
                rec(depth + 1)
                tops.pop()
            else:
                old, tops[k] = tops[k], v
                rec(depth + 1)
                tops[k] = old
            used[v] = False

    rec(0)
    return counts


def fpf_involutions(two_n: int):
    """Yield every fixed-point-free involution of ``0..two_n-1`` as a tuple."""
    if two_n % 2:
        raise DomainError("two_n must be even")
    perm = [-1] * two_n

    def rec():
        try:
            i = perm.index(-1)
        except ValueError:
            yield tuple(perm)
            return
        for j in range(i + 1, two_n):
            if perm[j] == -1:
                perm[i], perm[j] = j, i
                yield from rec()
                perm[i] = perm[j] = -1

    yield from rec()


def exact_lis_distribution(n: int, kind=Kind.PERMUTATION, decreasing: bool = False) -> list[Fraction]:
    """Exact ``[Pr(L <= l) for l in 1..n]`` by exhaustive enumeration.

    ``decreasing`` uses the longest decreasing subsequence instead, which for
    permutations has the same law but for involutions does not.
    """
    kind = Kind(kind)
    if n < 1:
        raise DomainError("n must be positive")
    if kind is Kind.PERMUTATION:
        if n > PERMUTATION_CAP:
            raise SizeLimit(f"permutation enumeration is capped at n={PERMUTATION_CAP}")
        counts = _permutation_lis_counts(n)
    else:
        if n % 2:
            raise DomainError("involution size must be even")
        if n > INVOLUTION_CAP:
            raise SizeLimit(f"involution enumeration is capped at n={INVOLUTION_CAP}")
        counts = [0] * (n + 1)
        for inv in fpf_involutions(n):
            seq = [-v for v in inv] if decreasing else inv
            counts[lis(seq)] += 1
    total = sum(counts)
    out, acc = [], 0
    for l in range(1, n + 1):
        acc += counts[l]
        out.append(Fraction(acc, total))
    return out


def hook_length_count(lam) -> int:
    """Number of standard Young tableaux of shape ``lam``."""
    lam = as_partition(lam)
    hooks = math.prod((arm + leg + 1 for _, _, arm, leg in lam.boxes()), start=1)
    return math.factorial(lam.weight()) // hooks


def rsk_lis_count(n: int, l: int) -> int:
    """Permutations of ``n`` with LIS at most ``l``, as ``sum (f^lam)^2`` over ``l``-row shapes."""
    if n == 0:
        return 1
    return sum(hook_length_count(lam) ** 2 for lam in iter_partitions(n, max(l, 1)) if l > 0)


# ---------------------------------------------------------------------------
# Haar measure on classical groups
# ---------------------------------------------------------------------------


def _ginibre(rng, shape, complex_: bool):
    if complex_:
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)
    return rng.standard_normal(shape)


def _qr_haar(z: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    phase = d / np.abs(d)
    return q * phase[..., None, :]


def symplectic_partner(c: np.ndarray) -> np.ndarray:
    """``J conj(c)`` for the ``2n``-vector ``c = (c1, c2)``: returns ``(-conj c2, conj c1)``."""
    n = c.shape[-1] // 2
    return np.concatenate([-np.conj(c[..., n:]), np.conj(c[..., :n])], axis=-1)


def _symplectic_haar(n: int, batch: int, rng) -> np.ndarray:
    """Quaternionic Gram-Schmidt on Gaussian vectors, in the ``2n x 2n`` complex form."""
    cols = np.zeros((batch, 2 * n, 2 * n), dtype=complex)
    for k in range(n):
        v = _ginibre(rng, (batch, 2 * n), True)
        for _ in range(2):  # re-orthogonalize once for stability
            for j in list(range(k)) + list(range(n, n + k)):
                c = cols[:, :, j]
                v = v - np.sum(np.conj(c) * v, axis=1)[:, None] * c
        v = v / np.linalg.norm(v, axis=1)[:, None]
        cols[:, :, k] = v
        cols[:, :, n + k] = symplectic_partner(v)
    return cols


def symplectic_form(n: int) -> np.ndarray:
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def haar_sample(group, n: int, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
    """Haar-distributed matrices; ``size`` adds a leading batch axis.

    ``Unitary``/``Orthogonal`` give ``n x n`` matrices.  ``Symplectic`` gives
    ``Sp(n)`` as ``2n x 2n`` unitary matrices with ``S^T J S = J``.
    """
    group = Group(group)
    if n < 1:
        raise DomainError("n must be positive")
    batch = 1 if size is None else int(size)
    if group is Group.SYMPLECTIC:
        out = _symplectic_haar(n, batch, rng)
    else:
        out = _qr_haar(_ginibre(rng, (batch, n, n), group is Group.UNITARY))
    return out[0] if size is None else out


def group_trace_exponent(group, mats: np.ndarray) -> np.ndarray:
    """``Tr(U + U^dagger)`` for U, the complex-embedding trace for Sp, ``Tr O`` for O."""
    tr = np.trace(mats, axis1=-2, axis2=-1)
    if Group(group) is Group.UNITARY:
        return 2 * tr.real
    return tr.real


def group_average_series(group, n: int, t: float) -> float:
    """Closed-form group average as an equal-argument ``0F1``."""
    group = Group(group)
    if group is Group.UNITARY:
        return hyp0f1_equal(1.0, n, n, t).value
    if group is Group.SYMPLECTIC:
        return hyp0f1_equal(0.5, 2 * n, n, t).value
    return hyp0f1_equal(2.0, n / 2, n, t / 4).value


def _group_chunk(group: Group, n: int, t: float, size: int, rng):
    vals = np.exp(math.sqrt(t) * group_trace_exponent(group, haar_sample(group, n, rng, size)))
    return math.fsum(vals), math.fsum(vals * vals)


def group_average(group, n: int, t: float, trials: int, seed: int = 0,
                  workers: Optional[int] = None) -> McEstimate:
    """Monte Carlo average of ``exp(sqrt(t) * trace term)`` over Haar measure."""
    group = Group(group)
    if not 0 <= t <= GROUP_T_MAX:
        raise DomainError(f"t must lie in [0, {GROUP_T_MAX}]")
    if trials < 1 or n < 1:
        raise DomainError("need trials >= 1 and n >= 1")
    if t == 0:
        return McEstimate(1.0, 0.0, trials, seed)
    sums = _run_chunks(lambda k, rng: _group_chunk(group, n, t, k, rng), trials, seed, workers)
    return _estimate(sums, trials, seed)
