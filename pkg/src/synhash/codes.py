"""Linear codes over F_q: uniform ensembles, exhaustive enumeration, Reed-Muller family.

A code is represented by a full-rank k x n generator matrix G and a full-rank
(n-k) x n parity check matrix H with G H^T = 0.  The canonical identity of a
code is the reduced row echelon form of G, so enumeration never repeats a code.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .caps import DEFAULT_CAPS, Caps, CapExceeded
from .field import (
    FieldSpec,
    FqMatrix,
    FqVector,
    digit_table,
    kernel_basis,
    q_powers,
    rank,
    rref,
    _rank_array,
)

__all__ = [
    "DEFAULT_SEED",
    "LinearCode",
    "CodeEnsembleSpec",
    "gaussian_binomial",
    "rank_tuple_count",
    "sample_uniform_code",
    "enumerate_all_codes",
    "reed_muller_generator",
    "rm_parity_check",
    "reed_muller_code",
    "codewords",
    "codeword_matrix",
    "codeword_indices",
]

DEFAULT_SEED = 0xC0DE


@dataclass(frozen=True, eq=False)
class LinearCode:
    """[n, k]_q code with explicit generator and parity-check matrices."""

    field: FieldSpec
    n: int
    k: int
    G: FqMatrix
    H: FqMatrix

    def __post_init__(self) -> None:
        if self.G.array.shape != (self.k, self.n):
            raise ValueError(f"generator shape {self.G.array.shape} != ({self.k}, {self.n})")
        if self.H.array.shape != (self.n - self.k, self.n):
            raise ValueError(f"parity check shape {self.H.array.shape} != ({self.n - self.k}, {self.n})")

    @classmethod
    def from_generator(cls, G: FqMatrix, check: bool = True) -> "LinearCode":
        code = cls(G.field, G.cols, G.rows, G, kernel_basis(G))
        if check:
            code.verify()
        return code

    def verify(self) -> None:
        """Assert rank(G) = k, rank(H) = n - k and G H^T = 0."""
        if rank(self.G) != self.k:
            raise ValueError("generator matrix is rank deficient")
        if rank(self.H) != self.n - self.k:
            raise ValueError("parity check matrix is rank deficient")
        if self.k and self.n - self.k:
            prod = (self.G.array @ self.H.array.T) % self.field.q
            if prod.any():
                raise ValueError("G H^T != 0")

    def canonical_key(self) -> bytes:
        """Row-space identity: bytes of the reduced echelon form of G."""
        red, _ = rref(self.G)
        return red.array.astype(np.int64).tobytes()

    def to_json_dict(self) -> dict:
        return {
            "q": self.field.q,
            "n": self.n,
            "k": self.k,
            "G": self.G.array.tolist(),
            "H": self.H.array.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "LinearCode":
        field = FieldSpec(int(data["q"]))
        n, k = int(data["n"]), int(data["k"])
        G = FqMatrix.from_rows(field, data["G"], cols=n)
        H = FqMatrix.from_rows(field, data["H"], cols=n)
        code = cls(field, n, k, G, H)
        code.verify()
        return code

    @classmethod
    def from_json(cls, text: str) -> "LinearCode":
        return cls.from_json_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"LinearCode(q={self.field.q}, n={self.n}, k={self.k})"


@dataclass(frozen=True)
class CodeEnsembleSpec:
    """Uniform ensemble of [n, k]_q codes with a deterministic seed."""

    field: FieldSpec
    n: int
    k: int
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.n:
            raise ValueError(f"need 0 <= k <= n, got k={self.k}, n={self.n}")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n (exact integer)."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for j in range(k):
        num *= q ** n - q ** j
        den *= q ** k - q ** j
    return num // den


def rank_tuple_count(n: int, p: int, d: int, q: int) -> int:
    """Number of p-tuples of vectors in F_q^n whose span has dimension d."""
    if d < 0 or d > min(n, p):
        return 0
    # only the full product is integral, so divide once at the end
    num = 1
    den = 1
    for j in range(d):
        num *= (q ** n - q ** j) * (q ** p - q ** j)
        den *= q ** d - q ** j
    return num // den


def sample_uniform_code(spec: CodeEnsembleSpec, trial: int) -> LinearCode:
    """Uniform [n, k]_q code via rejection on iid generator matrices.

    Deterministic per (spec.seed, trial); distinct trials use independent
    generator streams.
    """
    field, n, k, q = spec.field, spec.n, spec.k, spec.field.q
    rng = np.random.default_rng((spec.seed, int(trial)))
    if k == 0:
        g = np.zeros((0, n), dtype=np.int64)
    else:
        while True:
            g = rng.integers(0, q, size=(k, n), dtype=np.int64)
            if _rank_array(g, q) == k:
                break
    G = FqMatrix(field, g)
    return LinearCode(field, n, k, G, kernel_basis(G))


def enumerate_all_codes(field: FieldSpec, n: int, k: int,
                        caps: Caps = DEFAULT_CAPS) -> Iterator[LinearCode]:
    """Every [n, k]_q code exactly once, via canonical echelon generators.

    Pivot-column patterns are visited in lexicographic order and the free
    entries in base-q counting order, so the stream is deterministic.
    """
    total = gaussian_binomial(n, k, field.q)
    if total > caps.code_enumeration:
        raise CapExceeded("code enumeration", total, caps.code_enumeration)
    q = field.q
    for pivots in itertools.combinations(range(n), k):
        free = [(i, j) for i in range(k) for j in range(pivots[i] + 1, n)
                if j not in pivots]
        for t in range(q ** len(free)):
            g = np.zeros((k, n), dtype=np.int64)
            for i, c in enumerate(pivots):
                g[i, c] = 1
            rem = t
            for (i, j) in free:
                g[i, j] = rem % q
                rem //= q
            G = FqMatrix(field, g)
            yield LinearCode(field, n, k, G, kernel_basis(G))


def reed_muller_generator(r: int, m: int) -> FqMatrix:
    """Binary Reed-Muller generator: degree <= r monomials evaluated on F_2^m.

    Rows follow degree-lexicographic monomial order; evaluation points follow
    the little-endian index order of F_2^m.
    """
    if not 0 <= r <= m:
        raise ValueError(f"need 0 <= r <= m, got r={r}, m={m}")
    field = FieldSpec(2)
    points = digit_table(2, m)
    rows = []
    for deg in range(r + 1):
        for support in itertools.combinations(range(m), deg):
            if deg == 0:
                rows.append(np.ones(1 << m, dtype=np.int64))
            else:
                rows.append(np.prod(points[:, list(support)], axis=1).astype(np.int64))
    return FqMatrix(field, np.array(rows, dtype=np.int64))


def rm_parity_check(r: int, m: int) -> FqMatrix:
    """Parity check of the Reed-Muller code of order r; empty matrix at r = m."""
    if not 0 <= r <= m:
        raise ValueError(f"need 0 <= r <= m, got r={r}, m={m}")
    if r == m:
        return FqMatrix(FieldSpec(2), np.zeros((0, 1 << m), dtype=np.int64))
    return reed_muller_generator(m - r - 1, m)


def reed_muller_code(r: int, m: int) -> LinearCode:
    """Reed-Muller code of order r on 2**m points, with its dual parity check."""
    G = reed_muller_generator(r, m)
    H = rm_parity_check(r, m)
    k = sum(math.comb(m, i) for i in range(r + 1))
    return LinearCode(FieldSpec(2), 1 << m, k, G, H)


def codeword_matrix(code: LinearCode, caps: Caps = DEFAULT_CAPS) -> np.ndarray:
    """All q**k codewords as rows, in message-index order."""
    q, k = code.field.q, code.k
    if q ** k > caps.code_enumeration:
        raise CapExceeded("codeword enumeration", q ** k, caps.code_enumeration)
    if k == 0:
        return np.zeros((1, code.n), dtype=np.int64)
    msgs = digit_table(q, k)
    return (msgs @ code.G.array) % q


def codeword_indices(code: LinearCode, caps: Caps = DEFAULT_CAPS) -> np.ndarray:
    """Little-endian indices of all codewords, in message-index order."""
    return codeword_matrix(code, caps) @ q_powers(code.field.q, code.n)


def codewords(code: LinearCode, caps: Caps = DEFAULT_CAPS) -> Iterator[FqVector]:
    """Stream the q**k codewords in message-index order."""
    for row in codeword_matrix(code, caps):
        yield FqVector.from_array(code.field, row)
