"""Exhaustive and Monte Carlo verification of the extraction identities and bounds.

Each check returns a CheckResult whose lhs/rhs are the two sides of the claim
it tested.  Identity checks compare within a relative tolerance; inequality
checks require lhs <= rhs (+ tolerance); Monte Carlo checks compare the sample
mean minus three standard errors against the guarantee.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .bounds import corollary_bounds, linf_bucket_bound, phi, smoothing_bound_rhs
from .caps import DEFAULT_CAPS, Caps, CapExceeded
from .codes import (
    DEFAULT_SEED,
    CodeEnsembleSpec,
    LinearCode,
    codeword_indices,
    enumerate_all_codes,
    rank_tuple_count,
    sample_uniform_code,
)
from .distributions import (
    DensePmf,
    ProductBernoulli,
    RenyiOrder,
    Source,
    code_pmf,
    convolve,
    lp_norm,
    lp_smoothness,
    pushforward,
    renyi_divergence,
    renyi_entropy,
)
from .field import FieldSpec, FqVector, digit_table, q_powers, vec_to_index, _rank_array

__all__ = [
    "CheckResult",
    "check_p_balanced",
    "check_balanced_identity",
    "check_balanced_inequality",
    "check_tuple_probability",
    "check_norm_bound_lemma",
    "check_rearrangement_lemma",
    "check_projection_identity",
    "rank_stratified_sum",
    "check_rank_stratified",
    "exact_expected_smoothness",
    "mc_expected_smoothness",
    "mc_bucket_linf",
    "check_proximity_conversions",
    "check_clarkson",
    "negative_control_unbalanced",
    "negative_control_overdraw",
]


@dataclass
class CheckResult:
    """Outcome of one verification run."""

    name: str
    parameters: dict = dataclass_field(default_factory=dict)
    passed: bool = False
    lhs: float = math.nan
    rhs: float = math.nan
    slack: float = math.nan
    trials: int | None = None
    seed: int | None = None
    kind: str = "inequality"

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "parameters": dict(self.parameters),
            "passed": self.passed,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "trials": self.trials,
            "seed": self.seed,
            "kind": self.kind,
        }


def _identity_result(name: str, parameters: dict, lhs: float, rhs: float,
                     rel_tol: float, **extra) -> CheckResult:
    scale = max(1.0, abs(lhs), abs(rhs))
    passed = abs(lhs - rhs) <= rel_tol * scale
    return CheckResult(name, parameters, passed, lhs, rhs, rhs - lhs,
                       kind="identity", **extra)


def _inequality_result(name: str, parameters: dict, lhs: float, rhs: float,
                       rel_tol: float = 1e-9, **extra) -> CheckResult:
    scale = max(1.0, abs(lhs), abs(rhs))
    passed = lhs <= rhs + rel_tol * scale
    return CheckResult(name, parameters, passed, lhs, rhs, rhs - lhs,
                       kind="inequality", **extra)


# -- rank stratification of tuple space --------------------------------------


def _gf2_reduce(basis: tuple[int, ...], v: int) -> int:
    # basis is numerically descending, so leading bits are hit high-to-low
    for b in basis:
        if v >> (b.bit_length() - 1) & 1:
            v ^= b
    return v


def _modq_reduce(basis, v: list[int], q: int):
    # basis is sorted by pivot, so cleared positions stay cleared
    for piv, row in basis:
        c = v[piv]
        if c:
            for i in range(piv, len(v)):
                v[i] = (v[i] - c * row[i]) % q
    return v


@functools.lru_cache(maxsize=64)
def _tuple_ranks_cached(q: int, n: int, p: int) -> np.ndarray:
    """Rank of every p-tuple of vectors in F_q^n, C-ordered over indices."""
    size = q ** n
    ranks = np.empty(size ** p, dtype=np.int8)
    strides = [size ** (p - 1 - j) for j in range(p)]
    if q == 2:
        def rec(depth: int, base: int, basis: tuple[int, ...], rk: int) -> None:
            if depth == p:
                ranks[base] = rk
                return
            stride = strides[depth]
            for v in range(size):
                red = _gf2_reduce(basis, v)
                if red:
                    grown = tuple(sorted(basis + (red,), reverse=True))
                    rec(depth + 1, base + v * stride, grown, rk + 1)
                else:
                    rec(depth + 1, base + v * stride, basis, rk)
    else:
        digits = digit_table(q, n)
        inv = FieldSpec(q).inverses

        def rec(depth: int, base: int, basis, rk: int) -> None:
            if depth == p:
                ranks[base] = rk
                return
            stride = strides[depth]
            for v in range(size):
                red = _modq_reduce(basis, list(digits[v]), q)
                piv = next((i for i, c in enumerate(red) if c), None)
                if piv is None:
                    rec(depth + 1, base + v * stride, basis, rk)
                else:
                    scale = int(inv[red[piv]])
                    row = tuple((c * scale) % q for c in red)
                    grown = tuple(sorted(basis + ((piv, row),)))
                    rec(depth + 1, base + v * stride, grown, rk + 1)
    rec(0, 0, (), 0)
    ranks.flags.writeable = False
    return ranks


def _tuple_ranks(q: int, n: int, p: int, caps: Caps) -> np.ndarray:
    cost = (q ** n) ** p * max(n, 1)
    if cost > caps.tuple_products:
        raise CapExceeded("tuple rank stratification", cost, caps.tuple_products)
    return _tuple_ranks_cached(q, n, p)


@functools.lru_cache(maxsize=32)
def _codes_list(q: int, n: int, k: int) -> tuple[LinearCode, ...]:
    return tuple(enumerate_all_codes(FieldSpec(q), n, k))


def _indicator_matrix(codes: Sequence[LinearCode], size: int) -> np.ndarray:
    ind = np.zeros((len(codes), size), dtype=np.float64)
    for i, code in enumerate(codes):
        ind[i, codeword_indices(code)] = 1.0
    return ind


def _containment_counts(codes: Sequence[LinearCode], size: int, p: int) -> np.ndarray:
    """counts[v_1, ..., v_p] = number of codes containing every v_j, flattened."""
    total = np.zeros(size ** p, dtype=np.float64)
    for ind in _indicator_matrix(codes, size):
        tensor = ind
        for _ in range(p - 1):
            tensor = np.multiply.outer(tensor, ind)
        total += tensor.reshape(-1)
    return np.rint(total).astype(np.int64)


def _random_nonneg(shape, seed_key) -> np.ndarray:
    return np.random.default_rng(seed_key).random(shape)


def _random_pmf(field: FieldSpec, n: int, seed_key) -> DensePmf:
    raw = np.random.default_rng(seed_key).random(field.q ** n) + 1e-9
    return DensePmf(field, n, raw / raw.sum())


# -- ensemble structure checks ------------------------------------------------


def check_p_balanced(n: int, k: int, q: int, p: int,
                     ensemble: Sequence[LinearCode] | None = None,
                     caps: Caps = DEFAULT_CAPS) -> CheckResult:
    """Within every rank class, each p-tuple must sit in the same number of codes.

    The default ensemble is every [n, k]_q code; passing an explicit ensemble
    makes this a test of that family instead.
    """
    codes = tuple(ensemble) if ensemble is not None else _codes_list(q, n, k)
    size = q ** n
    if len(codes) * size ** p > caps.tuple_products:
        raise CapExceeded("balance census", len(codes) * size ** p, caps.tuple_products)
    counts = _containment_counts(codes, size, p)
    ranks = _tuple_ranks(q, n, p, caps)
    spread = 0
    by_rank: dict[int, list[int]] = {}
    for d in range(min(n, p) + 1):
        vals = counts[ranks == d]
        if vals.size == 0:
            continue
        lo, hi = int(vals.min()), int(vals.max())
        by_rank[d] = [lo, hi]
        spread = max(spread, hi - lo)
    params = {"n": n, "k": k, "q": q, "p": p, "codes": len(codes),
              "counts_by_rank": by_rank}
    return _identity_result("p-balanced", params, float(spread), 0.0, rel_tol=0.0)


def check_balanced_identity(n: int, k: int, q: int, p: int, f_seed: int = DEFAULT_SEED,
                            caps: Caps = DEFAULT_CAPS,
                            f_values: np.ndarray | None = None,
                            rel_tol: float = 1e-9) -> CheckResult:
    """Code-ensemble tuple average equals the rank-stratified weighted sum.

    Both sides are computed over all [n, k]_q codes and a random nonnegative
    test function on p-tuples.
    """
    size = q ** n
    codes = _codes_list(q, n, k)
    ranks = _tuple_ranks(q, n, p, caps)
    f = f_values if f_values is not None else _random_nonneg(size ** p, (f_seed, 11, n, k, q, p))
    f = np.asarray(f, dtype=np.float64).reshape([size] * p)
    lhs = 0.0
    for code in codes:
        cw = codeword_indices(code)
        lhs += float(f[np.ix_(*([cw] * p))].sum())
    lhs /= len(codes)
    flat = f.reshape(-1)
    rhs = 0.0
    for d in range(min(n, p) + 1):
        t_n = rank_tuple_count(n, p, d, q)
        if t_n == 0:
            continue
        ratio = Fraction(rank_tuple_count(k, p, d, q), t_n)
        if ratio:
            rhs += float(ratio) * float(flat[ranks == d].sum())
    params = {"n": n, "k": k, "q": q, "p": p, "codes": len(codes), "rel_tol": rel_tol}
    return _identity_result("balanced-identity", params, lhs, rhs, rel_tol,
                            seed=f_seed)


def check_balanced_inequality(n: int, k: int, q: int, p: int,
                              f_seed: int = DEFAULT_SEED,
                              caps: Caps = DEFAULT_CAPS,
                              f_values: np.ndarray | None = None) -> CheckResult:
    """Tuple average is at most the rank-stratified sum weighted by q^{d(k-n)}.

    Equality holds when k = n.
    """
    size = q ** n
    codes = _codes_list(q, n, k)
    ranks = _tuple_ranks(q, n, p, caps)
    f = f_values if f_values is not None else _random_nonneg(size ** p, (f_seed, 13, n, k, q, p))
    f = np.asarray(f, dtype=np.float64).reshape([size] * p)
    lhs = 0.0
    for code in codes:
        cw = codeword_indices(code)
        lhs += float(f[np.ix_(*([cw] * p))].sum())
    lhs /= len(codes)
    flat = f.reshape(-1)
    rhs = 0.0
    for d in range(min(k, p) + 1):
        rhs += float(q ** (d * (k - n))) * float(flat[ranks == d].sum())
    params = {"n": n, "k": k, "q": q, "p": p, "codes": len(codes)}
    return _inequality_result("balanced-inequality", params, lhs, rhs, seed=f_seed)


def check_tuple_probability(n: int, k: int, q: int,
                            vectors: Sequence[int | FqVector],
                            caps: Caps = DEFAULT_CAPS) -> CheckResult:
    """Containment probability of a fixed tuple is at most q^{-d(n-k)}.

    Exact rational arithmetic on both ensembles: the uniform full-rank-code
    ensemble obeys the bound, and the iid-parity-check ensemble (kernel of a
    uniform (n-k) x n matrix) attains it with equality.
    """
    field = FieldSpec(q)
    p = len(vectors)
    idx = [_tuple_index(v, field, n) for v in vectors]
    digits = digit_table(q, n)
    U = digits[idx].T  # n x p, columns are the tuple vectors
    d = _rank_array(U, q)
    codes = _codes_list(q, n, k)
    contained = 0
    for code in codes:
        member = np.zeros(q ** n, dtype=bool)
        member[codeword_indices(code)] = True
        if all(member[i] for i in idx):
            contained += 1
    prob = Fraction(contained, len(codes))
    bound = Fraction(1, q ** (d * (n - k)))
    m = n - k
    matrices = q ** (m * n)
    if matrices > caps.code_enumeration:
        raise CapExceeded("iid parity-check enumeration", matrices, caps.code_enumeration)
    rows_all = digit_table(q, m * n).reshape(matrices, m, n)
    prods = np.einsum("tmn,np->tmp", rows_all, U) % q
    hit = int((prods == 0).all(axis=(1, 2)).sum())
    iid_prob = Fraction(hit, matrices)
    params = {"n": n, "k": k, "q": q, "p": p, "tuple": [int(i) for i in idx],
              "rank": d, "ensemble_probability": str(prob), "bound": str(bound),
              "iid_probability": str(iid_prob), "iid_equality": iid_prob == bound}
    passed = prob <= bound and iid_prob == bound
    return CheckResult("tuple-probability", params, passed, float(prob), float(bound),
                       float(bound - prob), kind="inequality")


def _tuple_index(v, field: FieldSpec, n: int) -> int:
    if isinstance(v, FqVector):
        if v.field != field or v.n != n:
            raise ValueError(f"tuple vector does not live in F_{field.q}^{n}")
        return vec_to_index(v)
    return int(v)


# -- moment and rearrangement inequalities ------------------------------------


def check_norm_bound_lemma(n: int, q: int, p: int, d: int, f_seed: int = DEFAULT_SEED,
                           caps: Caps = DEFAULT_CAPS,
                           f_values: np.ndarray | None = None) -> CheckResult:
    """Rank-d tuple sums of products of f are controlled by mixed norms of f."""
    if not 1 <= d <= p:
        raise ValueError(f"need 1 <= d <= p, got d={d}, p={p}")
    size = q ** n
    ranks = _tuple_ranks(q, n, p, caps)
    f = f_values if f_values is not None else _random_nonneg(size, (f_seed, 17, n, q, p, d))
    f = np.asarray(f, dtype=np.float64)
    tensor = f
    for _ in range(p - 1):
        tensor = np.multiply.outer(tensor, f)
    lhs = float(tensor.reshape(-1)[ranks == d].sum())
    norm1 = lp_norm(f, 1)
    rhs = 0.0
    for m in range(p - d + 1):
        r = p - d - m + 1
        rhs += math.comb(p - d, m) * (q ** d - 1.0) ** (p - d - m) \
            * float(f[0]) ** m * lp_norm(f, r) ** r
    rhs *= math.comb(p, d) * float(q) ** (n * d) * norm1 ** (d - 1)
    params = {"n": n, "q": q, "p": p, "d": d}
    return _inequality_result("norm-bound", params, lhs, rhs, seed=f_seed)


def check_rearrangement_lemma(n: int, q: int, p: int, d: int,
                              seed: int = DEFAULT_SEED,
                              caps: Caps = DEFAULT_CAPS,
                              coefficients: np.ndarray | None = None,
                              f_values: np.ndarray | None = None) -> CheckResult:
    """Averages of f-products along fixed nonzero linear combinations are
    bounded by ||f||_1^{d-1} ||f||_{p-d+1}^{p-d+1}."""
    if not 1 <= d <= p:
        raise ValueError(f"need 1 <= d <= p, got d={d}, p={p}")
    size = q ** n
    grid = size ** d
    if grid * (p + n) > caps.tuple_products:
        raise CapExceeded("rearrangement grid", grid * (p + n), caps.tuple_products)
    rng = np.random.default_rng((seed, 19, n, q, p, d))
    if coefficients is None:
        coefficients = np.empty((p - d, d), dtype=np.int64)
        for i in range(p - d):
            while True:
                row = rng.integers(0, q, size=d)
                if row.any():
                    coefficients[i] = row
                    break
    else:
        coefficients = np.asarray(coefficients, dtype=np.int64).reshape(p - d, d) % q
        if p > d and not all(row.any() for row in coefficients):
            raise ValueError("need p - d nonzero coefficient rows of length d")
    f = f_values if f_values is not None else rng.random(size)
    f = np.asarray(f, dtype=np.float64)
    digits = digit_table(q, n)
    powers = q_powers(q, n)
    flat = np.arange(grid, dtype=np.int64)
    v_idx = [(flat // size ** (d - 1 - j)) % size for j in range(d)]
    prod = np.ones(grid)
    for j in range(d):
        prod *= f[v_idx[j]]
    for row in coefficients:
        combo = np.zeros((grid, n), dtype=np.int64)
        for j in range(d):
            combo += int(row[j]) * digits[v_idx[j]]
        prod *= f[(combo % q) @ powers]
    lhs = float(prod.mean())
    r = p - d + 1
    rhs = lp_norm(f, 1) ** (d - 1) * lp_norm(f, r) ** r
    params = {"n": n, "q": q, "p": p, "d": d,
              "coefficients": coefficients.tolist()}
    return _inequality_result("rearrangement", params, lhs, rhs, seed=seed)


# -- projection identity and smoothing ----------------------------------------


def check_projection_identity(code: LinearCode, P: DensePmf,
                              p_list: Sequence[float] = (2.0, 3.0, math.inf),
                              caps: Caps = DEFAULT_CAPS,
                              rel_tol: float = 1e-10) -> CheckResult:
    """Syndrome-side norms equal smoothed-source norms at every order.

    ||q^{n-k} P_{HZ}||_p computed by pushforward must match
    ||q^n P_{X_C + Z}||_p computed by code convolution.
    """
    m = code.n - code.k
    syn = pushforward(P, code.H, caps)
    mixed = convolve(code_pmf(code, caps), P)
    q = code.field.q
    worst = None
    for p in p_list:
        a = lp_norm(float(q) ** m * syn.probs, p)
        b = lp_norm(float(q) ** code.n * mixed.probs, p)
        err = abs(a - b) / max(1.0, abs(a), abs(b))
        if worst is None or err > worst[0]:
            worst = (err, float(a), float(b), p)
    _, a, b, at_p = worst
    params = {"n": code.n, "k": code.k, "q": q,
              "orders": [str(p) for p in p_list], "worst_order": str(at_p),
              "rel_tol": rel_tol}
    return _identity_result("projection-identity", params, a, b, rel_tol)


def rank_stratified_sum(P: DensePmf, p: int, d: int,
                        caps: Caps = DEFAULT_CAPS) -> float:
    """q^{-n} sum_x sum over rank-d tuples of prod_l P(x - v_l)."""
    q, n = P.field.q, P.n
    size = P.size
    ranks = _tuple_ranks(q, n, p, caps)
    tuples_d = np.nonzero(ranks == d)[0]
    if tuples_d.size * size * p > caps.tuple_products:
        raise CapExceeded("rank-stratified sum", int(tuples_d.size) * size * p,
                          caps.tuple_products)
    digits = digit_table(q, n)
    powers = q_powers(q, n)
    sub_index = ((digits[:, None, :] - digits[None, :, :]) % q) @ powers
    probs = P.probs
    total = 0.0
    for t in tuples_d:
        rem = int(t)
        acc = np.ones(size)
        for _ in range(p):
            v = rem % size
            rem //= size
            acc = acc * probs[sub_index[:, v]]
        total += float(acc.sum())
    return total / size


def check_rank_stratified(P: DensePmf, p: int, d: int,
                          caps: Caps = DEFAULT_CAPS) -> CheckResult:
    """Each rank stratum obeys g(d) <= C(p,d) q^{(p-d)(d - H_p)}."""
    lhs = rank_stratified_sum(P, p, d, caps)
    entropy = renyi_entropy(P, p)
    rhs = math.comb(p, d) * float(P.field.q) ** ((p - d) * (d - entropy))
    params = {"n": P.n, "q": P.field.q, "p": p, "d": d, "entropy_p": entropy}
    return _inequality_result("rank-stratified", params, lhs, rhs)


def exact_expected_smoothness(n: int, k: int, q: int, p: int, P: DensePmf,
                              caps: Caps = DEFAULT_CAPS) -> CheckResult:
    """Average of ||q^n P_{X_C+Z}||_p^p over every [n, k]_q code stays under
    the closed-form ensemble budget."""
    codes = _codes_list(q, n, k)
    total = 0.0
    for code in codes:
        mixed = convolve(code_pmf(code, caps), P)
        total += lp_norm(float(q) ** n * mixed.probs, p) ** p
    lhs = total / len(codes)
    rhs = smoothing_bound_rhs(n, k, q, p, renyi_entropy(P, p))
    params = {"n": n, "k": k, "q": q, "p": p, "codes": len(codes)}
    return _inequality_result("exact-smoothing", params, lhs, rhs)


def mc_expected_smoothness(spec: CodeEnsembleSpec, source: Source, p: int,
                           trials: int, collision: bool = False,
                           caps: Caps = DEFAULT_CAPS) -> CheckResult:
    """Sampled mean smoothness of syndromes against the output-length guarantee.

    With collision=True (p = 2 only) the sharper squared-norm excess bound
    q^{m - H_2} is tested instead of the generic q^{m - H_p + p}.
    """
    if collision and p != 2:
        raise ValueError("the collision refinement is a p = 2 statement")
    P = source if isinstance(source, DensePmf) else source.to_dense(caps)
    if P.n != spec.n or P.field != spec.field:
        raise ValueError("source and ensemble live on different spaces")
    q, m = spec.field.q, spec.n - spec.k
    entropy = renyi_entropy(source, p)
    scale = float(q) ** m
    vals = np.empty(trials)
    for t in range(trials):
        code = sample_uniform_code(spec, t)
        syn = pushforward(P, code.H, caps)
        norm = lp_norm(scale * syn.probs, p)
        vals[t] = norm ** 2 - 1.0 if collision else norm - 1.0
    mean = float(vals.mean())
    stderr = float(vals.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    rhs = float(q) ** (m - entropy) if collision else float(q) ** (m - entropy + p)
    lhs = mean - 3.0 * stderr
    name = "mc-collision-smoothness" if collision else "mc-smoothness"
    params = {"n": spec.n, "k": spec.k, "q": q, "p": p, "m": m,
              "entropy_p": entropy, "mean": mean, "stderr": stderr,
              "collision": collision}
    result = _inequality_result(name, params, lhs, rhs, seed=spec.seed)
    result.trials = trials
    return result


def mc_bucket_linf(source: Source, eps: float, trials: int,
                   seed: int = DEFAULT_SEED, caps: Caps = DEFAULT_CAPS) -> CheckResult:
    """Sampled mean of the max bucket load against q^{2/eps}(1 + q^{-eps n/2}).

    The output length is m = floor(H_inf - n eps), the regime where every
    bucket stays near its fair share.
    """
    P = source if isinstance(source, DensePmf) else source.to_dense(caps)
    q, n = P.field.q, P.n
    h_inf = renyi_entropy(P, math.inf)
    m = math.floor(h_inf - n * eps)
    if not 1 <= m <= n:
        raise ValueError(f"derived output length m={m} out of range [1, {n}]")
    spec = CodeEnsembleSpec(P.field, n, n - m, seed)
    scale = float(q) ** m
    vals = np.empty(trials)
    for t in range(trials):
        code = sample_uniform_code(spec, t)
        syn = pushforward(P, code.H, caps)
        vals[t] = scale * float(syn.probs.max())
    mean = float(vals.mean())
    stderr = float(vals.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    rhs = linf_bucket_bound(n, eps, q)
    params = {"n": n, "q": q, "eps": eps, "m": m, "min_entropy": h_inf,
              "mean": mean, "stderr": stderr}
    result = _inequality_result("mc-bucket-linf", params, mean - 3.0 * stderr, rhs,
                                seed=seed)
    result.trials = trials
    return result


# -- pointwise conversion inequalities ----------------------------------------


def check_proximity_conversions(q: int, n: int, count: int,
                                orders: Sequence[float] = (1.5, 2, 3),
                                seed: int = DEFAULT_SEED,
                                caps: Caps = DEFAULT_CAPS,
                                rel_tol: float = 1e-9) -> CheckResult:
    """Measured smoothness, divergence and centered distance of random pmfs
    satisfy every conversion between the three proximity notions.

    For integer orders the divergence and distance conversions of the
    extraction corollary are included.
    """
    field = FieldSpec(q)
    uniform = DensePmf.uniform(field, n, caps)
    lnq = math.log(q)
    worst = (math.inf, math.nan, math.nan, "")
    for i in range(count):
        P = _random_pmf(field, n, (seed, 23, q, n, i))
        centered = float(q) ** n * P.probs - 1.0
        for p in orders:
            p = float(p)
            delta = lp_smoothness(P, p)
            div = renyi_divergence(P, uniform, p)
            dist = lp_norm(centered, p)
            pp = p / (p - 1.0)
            claims = [
                ("smooth-to-divergence", div, pp * math.log1p(delta) / lnq),
                ("divergence-to-smooth", delta, q ** (div / pp) - 1.0),
                ("smooth-to-distance", dist, phi(p, delta)),
                ("distance-to-smooth", delta, dist),
            ]
            if p == int(p) and p >= 2:
                d1, d2 = corollary_bounds(delta, int(p), q)
                claims.append(("corollary-divergence", div, d1))
                claims.append(("corollary-distance", dist, d2))
            for label, lhs, rhs in claims:
                slack = rhs - lhs
                if slack < worst[0]:
                    worst = (slack, lhs, rhs, f"{label} (p={p}, pmf {i})")
    slack, lhs, rhs = worst[0], worst[1], worst[2]
    params = {"q": q, "n": n, "count": count, "orders": [float(o) for o in orders],
              "tightest_claim": worst[3]}
    return _inequality_result("proximity-conversions", params, lhs, rhs,
                              rel_tol=rel_tol, seed=seed)


def check_clarkson(q: int, n: int, count: int,
                   orders: Sequence[float] = (1.5, 2, 3),
                   seed: int = DEFAULT_SEED,
                   rel_tol: float = 1e-9) -> CheckResult:
    """Two-branch uniform convexity inequalities on random function pairs."""
    size = q ** n
    rng = np.random.default_rng((seed, 29, q, n))
    worst = (math.inf, math.nan, math.nan, "")
    for i in range(count):
        f = rng.normal(size=size)
        g = rng.normal(size=size)
        half_sum = (f + g) / 2.0
        half_diff = (f - g) / 2.0
        for p in orders:
            p = float(p)
            if p <= 1:
                raise ValueError("orders must exceed 1")
            if p < 2:
                pp = p / (p - 1.0)
                lhs = lp_norm(half_sum, p) ** pp + lp_norm(half_diff, p) ** pp
                rhs = (0.5 * lp_norm(f, p) ** p + 0.5 * lp_norm(g, p) ** p) ** (pp / p)
                label = f"two-sided branch p={p}"
            else:
                lhs = lp_norm(half_sum, p) ** p + lp_norm(half_diff, p) ** p
                rhs = 0.5 * (lp_norm(f, p) ** p + lp_norm(g, p) ** p)
                label = f"power branch p={p}"
            slack = rhs - lhs
            if slack < worst[0]:
                worst = (slack, lhs, rhs, f"{label}, pair {i}")
    params = {"q": q, "n": n, "count": count, "orders": [float(o) for o in orders],
              "tightest_claim": worst[3]}
    return _inequality_result("clarkson", params, worst[1], worst[2],
                              rel_tol=rel_tol, seed=seed)


# -- negative controls ---------------------------------------------------------


def negative_control_unbalanced(caps: Caps = DEFAULT_CAPS) -> CheckResult:
    """A single fixed code is not a balanced family; this check must fail."""
    code = _codes_list(2, 3, 1)[0]
    result = check_p_balanced(3, 1, 2, 1, ensemble=[code], caps=caps)
    result.name = "negative-control-unbalanced"
    result.parameters["expected_failure"] = True
    return result


def negative_control_overdraw(trials: int = 300, seed: int = DEFAULT_SEED,
                              caps: Caps = DEFAULT_CAPS) -> CheckResult:
    """Claiming near-uniform syndromes beyond the entropy budget must fail.

    With m above the source entropy the collision smoothness is bounded away
    from zero, so the (untrue) claim "mean smoothness <= 0.5" is refuted.
    """
    n, delta, p = 8, 0.2, 2
    source = ProductBernoulli(delta, n)
    m = 7
    spec = CodeEnsembleSpec(FieldSpec(2), n, n - m, seed)
    P = source.to_dense(caps)
    scale = float(2) ** m
    vals = np.empty(trials)
    for t in range(trials):
        code = sample_uniform_code(spec, t)
        syn = pushforward(P, code.H, caps)
        vals[t] = lp_norm(scale * syn.probs, p) - 1.0
    mean = float(vals.mean())
    params = {"n": n, "delta": delta, "p": p, "m": m,
              "entropy_p": renyi_entropy(source, p),
              "claimed_bound": 0.5, "expected_failure": True}
    result = _inequality_result("negative-control-overdraw", params, mean, 0.5,
                                seed=seed)
    result.trials = trials
    return result
