"""Direct evaluation of the Kantorovich-type (p,q)-Bernstein-Schurer operator.

The operator at x in [0, 1] is the finite sum over k = 0..n+ell of a basis
weight times the (p,q)-integral mean of f along an affine argument in t.
Everything is computed straight from that definition, which makes this module
the numerical ground truth against which the closed-form moment expressions
and the error-bound theorems are checked.

Two basis conventions are supported.  The plain product basis

    [n+ell k]_{p,q} x^k prod_{s=0}^{n+ell-k-1} (p^s - q^s x)

is *not* a partition of unity when p < 1 (its sum at degree 2 is
p + (1-p) x^2).  The normalized variant multiplies term k by
p^{(k(k-1) - N(N-1))/2} with N = n+ell, restoring sum_k basis = 1 and with it
constant reproduction; it is the default.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .functions import DOMAIN_EDGE_TOL, DomainError, RealFunction
from .pq_core import PQPair, pq_integer
from .pq_quadrature import QuadratureRule, build_rule


class BasisVariant(enum.Enum):
    AS_PRINTED = "printed"
    NORMALIZED = "normalized"


@dataclass(frozen=True)
class SchurerConfig:
    """Operator indices: degree n >= 1, shift ell >= 0, basis and quadrature tolerance."""

    n: int
    ell: int = 0
    basis_variant: BasisVariant = BasisVariant.NORMALIZED
    quad_tol: float = 1e-10

    def __post_init__(self) -> None:
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"n must be an integer >= 1, got {self.n!r}")
        if not (isinstance(self.ell, int) and self.ell >= 0):
            raise ValueError(f"ell must be an integer >= 0, got {self.ell!r}")
        if not self.quad_tol > 0.0:
            raise ValueError(f"quad_tol must be positive, got {self.quad_tol!r}")

    @property
    def degree(self) -> int:
        return self.n + self.ell


@dataclass(frozen=True, eq=False)
class _Tables:
    """Per-(config, pq) precomputation shared by every evaluation."""

    degree: int
    rule: QuadratureRule
    binom: np.ndarray        # [N k]_{p,q}, k = 0..N
    norm_scale: np.ndarray   # p^{-k(N-k)}, the normalized-variant rescaling
    rpow: np.ndarray         # (q/p)^s, s = 0..N-1
    ppow: np.ndarray         # p^s
    qpow: np.ndarray         # q^s
    c0: np.ndarray           # [k]/[n+1]
    c1: np.ndarray           # ([k+1]-[k])/[n+1], computed as ((q-1)[k]+p^k)/[n+1]
    arg: np.ndarray          # argument values, shape (N+1, nodes)


@lru_cache(maxsize=16)
def _tables(config: SchurerConfig, pq: PQPair) -> _Tables:
    p, q = pq.p, pq.q
    big_n = config.degree
    ints = np.array([pq_integer(k, pq) for k in range(big_n + 2)])
    fact = np.concatenate([[1.0], np.cumprod(ints[1 : big_n + 1])])
    binom = fact[big_n] / (fact * fact[::-1])
    k = np.arange(big_n + 1)
    s = np.arange(big_n)
    rule = build_rule(pq, a=1.0, tol=config.quad_tol)
    denom = pq_integer(config.n + 1, pq)
    c0 = ints[: big_n + 1] / denom
    c1 = ((q - 1.0) * ints[: big_n + 1] + np.power(p, k)) / denom
    return _Tables(
        degree=big_n,
        rule=rule,
        binom=binom,
        norm_scale=np.power(p, -(k * (big_n - k)).astype(float)),
        rpow=np.power(q / p, s),
        ppow=np.power(p, s),
        qpow=np.power(q, s),
        c0=c0,
        c1=c1,
        arg=c0[:, None] + c1[:, None] * rule.nodes[None, :],
    )


def basis_row(config: SchurerConfig, pq: PQPair, x: float) -> np.ndarray:
    """All N+1 basis values at x, nonnegative on [0, 1]."""
    tb = _tables(config, pq)
    big_n = tb.degree
    xpow = np.power(x, np.arange(big_n + 1))
    if config.basis_variant is BasisVariant.NORMALIZED:
        # fused form: binom * x^k * p^{-k(N-k)} * prod_{s<N-k} (1 - (q/p)^s x)
        prods = np.concatenate([[1.0], np.cumprod(1.0 - tb.rpow * x)])
        return tb.binom * xpow * tb.norm_scale * prods[::-1]
    prods = np.concatenate([[1.0], np.cumprod(tb.ppow - tb.qpow * x)])
    return tb.binom * xpow * prods[::-1]


def basis(config: SchurerConfig, pq: PQPair, k: int, x: float) -> float:
    """Single basis value; k outside [0, n+ell] gives 0."""
    if k < 0 or k > config.degree:
        return 0.0
    return float(basis_row(config, pq, x)[k])


def argument(k: int, t: float, config: SchurerConfig, pq: PQPair) -> float:
    """Kantorovich argument [k]/[n+1] + ([k+1]-[k]) t/[n+1] (both read as [.]_{p,q}).

    The slope is evaluated as ((q-1)[k] + p^k)/[n+1], exact by the recurrence
    [k+1] = q[k] + p^k; it is negative for large k when p < 1, so the argument
    is affine but not always increasing in t.
    """
    denom = pq_integer(config.n + 1, pq)
    ik = pq_integer(k, pq)
    return ik / denom + ((pq.q - 1.0) * ik + pq.p**k) / denom * t


def required_domain(config: SchurerConfig, pq: PQPair) -> tuple[float, float]:
    """Interval every integrand argument lands in; f passed to apply must cover it.

    Arguments are affine in t over (0, a/p], so the hull of their values at
    t = 0 and at the top quadrature node covers everything.
    """
    tb = _tables(config, pq)
    at_top = tb.c0 + tb.c1 * tb.rule.top_node
    hi = max(float(tb.c0.max()), float(at_top.max()))
    lo = min(0.0, float(at_top.min()))
    return lo, hi


def _check_point(x: float) -> None:
    if not -DOMAIN_EDGE_TOL <= x <= 1.0 + DOMAIN_EDGE_TOL:
        raise ValueError(f"operator is evaluated on [0, 1], got x={x!r}")


def _check_covers(config: SchurerConfig, pq: PQPair, f: RealFunction) -> None:
    lo, hi = required_domain(config, pq)
    if f.lo > lo + DOMAIN_EDGE_TOL or f.hi < hi - DOMAIN_EDGE_TOL:
        raise DomainError(
            f"{f.name} declared on [{f.lo:.6g}, {f.hi:.6g}] but the operator needs "
            f"[{lo:.6g}, {hi:.6g}]"
        )


def _integral_means(config: SchurerConfig, pq: PQPair, f: RealFunction) -> np.ndarray:
    tb = _tables(config, pq)
    return f(tb.arg) @ tb.rule.weights


def apply(config: SchurerConfig, pq: PQPair, f: RealFunction, x: float) -> float:
    """Operator value at x; linear and positive in f up to quadrature truncation."""
    _check_point(x)
    _check_covers(config, pq, f)
    return float(basis_row(config, pq, x) @ _integral_means(config, pq, f))


def apply_on_grid(
    config: SchurerConfig, pq: PQPair, f: RealFunction, xs: np.ndarray
) -> np.ndarray:
    """Operator values on a grid of x; the integral means are shared across x."""
    xs = np.asarray(xs, dtype=float)
    for x in xs:
        _check_point(float(x))
    _check_covers(config, pq, f)
    means = _integral_means(config, pq, f)
    return np.array([float(basis_row(config, pq, float(x)) @ means) for x in xs])


def apply_central_moment(config: SchurerConfig, pq: PQPair, x: float, order: int) -> float:
    """Operator applied to (t - x)^order for order in {1, 2}.

    The power functions are total, so no domain declaration is involved; the
    order-2 value is nonnegative up to quadrature truncation.
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    _check_point(x)
    tb = _tables(config, pq)
    means = ((tb.arg - x) ** order) @ tb.rule.weights
    return float(basis_row(config, pq, x) @ means)
