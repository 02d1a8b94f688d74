"""Closed-form guarantee formulas for syndrome-hash randomness extraction.

Every function here is a pure formula; exponent arithmetic runs in log space
so desk-scale parameters with exponents in the hundreds stay finite.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field as dataclass_field

__all__ = [
    "BoundReport",
    "phi",
    "smoothing_bound_rhs",
    "nonlinear_bound_rhs",
    "stirling2",
    "main_guarantee",
    "max_output_length",
    "corollary_bounds",
    "collision_bound",
    "collision_loss",
    "collision_max_output",
    "generic_loss",
    "linf_bucket_bound",
    "two_point_renyi",
    "rm_threshold",
]


@dataclass(frozen=True)
class BoundReport:
    """A named bound value together with the inputs that produced it."""

    name: str
    inputs: dict = dataclass_field(default_factory=dict)
    value: float = math.nan
    satisfied_condition: bool | None = None

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": dict(self.inputs),
            "value": self.value,
            "satisfied_condition": self.satisfied_condition,
        }


def _logq(x: float, q: int) -> float:
    return math.log(x) / math.log(q)


def _qpow(q: int, e: float) -> float:
    try:
        return math.exp(e * math.log(q))
    except OverflowError:
        return math.inf


def _logsumexp(logs: list[float]) -> float:
    m = max(logs)
    if m == -math.inf:
        return -math.inf
    return m + math.log(sum(math.exp(v - m) for v in logs))


def _validate_order_p(p: float, minimum: float = 1.0) -> None:
    if not p > minimum:
        raise ValueError(f"order p must exceed {minimum}, got {p}")


def phi(p: float, eps: float) -> float:
    """Distance conversion from smoothness eps; two branches split at p = 2."""
    _validate_order_p(p)
    if not math.isfinite(p):
        raise ValueError("phi is defined for finite p only")
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    if p < 2:
        pp = p / (p - 1.0)
        return 2.0 * ((((1.0 + eps) ** p + 1.0) / 2.0) ** (pp / p) - 1.0) ** (1.0 / pp)
    return 2.0 * (((1.0 + eps) ** p - 1.0) / 2.0) ** (1.0 / p)


def smoothing_bound_rhs(n: int, k: int, q: int, p: int, entropy_p: float) -> float:
    """Ensemble average of the p-th power smoothed norm, bounded over span
    dimensions: sum_d C(p,d) q^{(p-d)(d + n - k - H_p)}."""
    if not (isinstance(p, int) and p >= 2):
        raise ValueError(f"integer order p >= 2 required, got {p}")
    lnq = math.log(q)
    logs = [math.log(math.comb(p, d)) + (p - d) * (d + n - k - entropy_p) * lnq
            for d in range(p + 1)]
    return math.exp(_logsumexp(logs))


@functools.cache
def stirling2(p: int, d: int) -> int:
    """Number of partitions of a p-set into d nonempty blocks (exact)."""
    if p == 0:
        return 1 if d == 0 else 0
    if d <= 0 or d > p:
        return 0
    return d * stirling2(p - 1, d) + stirling2(p - 1, d - 1)


def nonlinear_bound_rhs(n: int, k: int, q: int, p: int, entropy_p: float) -> float:
    """Budget for unstructured hash ensembles: sum_d S(p,d) q^{(p-d)(n-k-H_p)}.

    Never exceeds smoothing_bound_rhs at the same parameters; that comparison
    is asserted on every call.
    """
    if not (isinstance(p, int) and p >= 2):
        raise ValueError(f"integer order p >= 2 required, got {p}")
    lnq = math.log(q)
    logs = []
    for d in range(p + 1):
        s = stirling2(p, d)
        if s == 0:
            continue
        logs.append(math.log(s) + (p - d) * (n - k - entropy_p) * lnq)
    value = math.exp(_logsumexp(logs))
    linear = smoothing_bound_rhs(n, k, q, p, entropy_p)
    if value > linear * (1.0 + 1e-12):
        raise AssertionError(
            f"unstructured-ensemble budget {value} exceeds code-ensemble budget {linear}")
    return value


def main_guarantee(m: int, entropy_p: float, p: int, q: int,
                   eps: float | None = None) -> BoundReport:
    """Expected smoothness excess after hashing to m symbols: q^{m - H_p + p}.

    When a target eps is given, satisfied_condition reports whether the
    guarantee meets it.
    """
    if not (isinstance(p, int) and p >= 2):
        raise ValueError(f"integer order p >= 2 required, got {p}")
    value = _qpow(q, m - entropy_p + p)
    inputs = {"m": m, "entropy_p": entropy_p, "p": p, "q": q}
    satisfied = None
    if eps is not None:
        inputs["eps"] = eps
        satisfied = value <= eps
    return BoundReport("main-guarantee", inputs, value, satisfied)


def max_output_length(entropy_p: float, p: int, q: int, eps: float) -> int:
    """Largest m with q^{m - H_p + p} <= eps."""
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    return math.floor(entropy_p - p - _logq(1.0 / eps, q))


def generic_loss(eps: float, p: int, q: int) -> float:
    """Entropy paid beyond the output length at any order: p + log_q(1/eps)."""
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    return p + _logq(1.0 / eps, q)


def corollary_bounds(eps: float, p: int, q: int) -> tuple[float, float]:
    """Divergence and distance conversions of a smoothness guarantee eps:
    (p eps / ((p-1) ln q), 2^{1-1/p} ((1+eps)^p - 1)^{1/p})."""
    if not (isinstance(p, int) and p >= 2):
        raise ValueError(f"integer order p >= 2 required, got {p}")
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    d_bound = p * eps / ((p - 1) * math.log(q))
    dist_bound = 2.0 ** (1.0 - 1.0 / p) * ((1.0 + eps) ** p - 1.0) ** (1.0 / p)
    return d_bound, dist_bound


def collision_bound(m: int, entropy_2: float, q: int) -> float:
    """Collision-order refinement: expected squared norm is at most 1 + q^{m - H_2}."""
    return 1.0 + _qpow(q, m - entropy_2)


def collision_loss(eps: float, q: int) -> float:
    """Entropy loss at collision order for target eps: log_q(1/((1+eps)^2 - 1))."""
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    return _logq(1.0 / ((1.0 + eps) ** 2 - 1.0), q)


def collision_max_output(entropy_2: float, eps: float, q: int) -> int:
    """Largest m meeting a collision-order smoothness target eps."""
    return math.floor(entropy_2 - collision_loss(eps, q))


def linf_bucket_bound(n: int, eps: float, q: int) -> float:
    """Expected max bucket overshoot with m = floor(H_inf - n eps):
    q^{2/eps} (1 + q^{-eps n / 2})."""
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    return _qpow(q, 2.0 / eps) * (1.0 + _qpow(q, -eps * n / 2.0))


def two_point_renyi(delta: float, p: float) -> float:
    """Order-p entropy of a {delta, 1-delta} coin, in bits.

    p = 1 is the Shannon entropy, p = inf the min-entropy.
    """
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    if p <= 0:
        raise ValueError(f"order must be positive, got {p}")
    if delta in (0.0, 1.0):
        return 0.0
    if p == 1:
        return -(delta * math.log2(delta) + (1.0 - delta) * math.log2(1.0 - delta))
    if math.isinf(p):
        return -math.log2(max(delta, 1.0 - delta))
    return math.log2(delta ** p + (1.0 - delta) ** p) / (1.0 - p)


def rm_threshold(delta: float, p: float, target: str = "smoothing-rate") -> float:
    """Rate threshold for Reed-Muller syndrome extraction on a delta-coin source.

    "smoothing-rate" is the code rate above which order-p divergence vanishes:
    1 - h_p(delta) for p >= 2 or inf, (1 - 2 delta)^2 for p = 1.
    "extraction-rate" is its complement, the achievable output rate.
    """
    if target not in ("smoothing-rate", "extraction-rate"):
        raise ValueError(f"unknown target {target!r}")
    if p == 1:
        rate = (1.0 - 2.0 * delta) ** 2
    elif math.isinf(p) or (isinstance(p, (int, float)) and p >= 2):
        rate = 1.0 - two_point_renyi(delta, p)
    else:
        raise ValueError(f"threshold defined for p = 1, integer p >= 2 or inf, got {p}")
    return rate if target == "smoothing-rate" else 1.0 - rate
