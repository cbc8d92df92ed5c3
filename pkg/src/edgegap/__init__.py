"""Gap probabilities at the hard and soft edges, with the combinatorial models behind them."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DivisionUnderflow,
    DomainError,
    EdgeGapError,
    NegativeDeterminant,
    NonConvergence,
    SingularFactorization,
    SizeLimit,
    ZeroDenominator,
)
from .fredholm import e1_hard, e2_hard, e4_hard, f1, f2, f4, transition_sweep  # noqa: E402
from .hypergeom import hard_gap_hyper, hyp0f1_equal, hyp2f1_equal, jacobi_gap_finite  # noqa: E402
from .kernels import KernelFamily, KernelSpec  # noqa: E402
from .partitions import Partition  # noqa: E402
from .results import GapMethod, GapValue  # noqa: E402
