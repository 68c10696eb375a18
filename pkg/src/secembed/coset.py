"""Two-level coset codes for the erasure-eavesdropper wiretap setting.

The main channel is noiseless: the transmitter sends n bits, the
eavesdropper sees an arbitrary subset of positions and erasures
elsewhere.  A two-level coset code stacks two parity-check matrices,
``h1`` (high-security syndromes, ``k1 = n*(1 - alpha1 - eps)`` rows)
and ``h2`` (low-security syndromes, ``k2 = n*(alpha1 - alpha2)`` rows).
Encoding picks a uniform solution of the stacked syndrome equations;
decoding is syndrome computation.

Security is certified exactly: for an observed position set S the
eavesdropper's equivocation about the messages equals the GF(2)
dimension of the parity-check columns outside S, so worst-case
equivocation is a minimum subspace dimension over column subsets
(``d1_star``, ``d2_star``).  Construction rejection-samples uniform
matrices until full row rank and both certificates clear their
``3/eps`` margins.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, inf
from typing import FrozenSet

import numpy as np

from secembed import gf2

__all__ = [
    "ERASURE",
    "WiretapIIParams",
    "CosetCodePair",
    "Observation",
    "ConstructionExhaustedError",
    "UnionBoundReport",
    "encode",
    "decode",
    "eavesdrop",
    "equivocation",
    "worst_case_security",
    "construct",
    "union_bound_report",
    "audit_code",
    "index_to_syndrome",
    "syndrome_to_index",
]

ERASURE = -1


class ConstructionExhaustedError(RuntimeError):
    """No acceptable parity-check matrix found within max_attempts."""


def _as_int(value: float, what: str) -> int:
    r = round(value)
    if abs(value - r) > 1e-9:
        raise ValueError(f"{what} = {value} must be an integer (no silent rounding)")
    return int(r)


@dataclass(frozen=True)
class WiretapIIParams:
    """Block length and level fractions for a two-level erasure-wiretap code.

    Requires 1 >= alpha1 >= alpha2 >= 0 and exact integrality of
    n*alpha1, n*alpha2, n*(1-alpha1-eps) and n*(alpha1-alpha2).
    eps = 0 is allowed for hand-built codes; construct() needs eps > 0.
    """

    n: int
    alpha1: float
    alpha2: float
    eps: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("block length must be >= 1")
        if not (1.0 >= self.alpha1 >= self.alpha2 >= 0.0):
            raise ValueError("need 1 >= alpha1 >= alpha2 >= 0")
        if self.eps < 0:
            raise ValueError("eps must be >= 0")
        for value, what in [
            (self.n * self.alpha1, "n*alpha1"),
            (self.n * self.alpha2, "n*alpha2"),
            (self.n * (1.0 - self.alpha1 - self.eps), "n*(1-alpha1-eps)"),
            (self.n * (self.alpha1 - self.alpha2), "n*(alpha1-alpha2)"),
        ]:
            if _as_int(value, what) < 0:
                raise ValueError(f"{what} must be nonnegative")

    @property
    def n_alpha1(self) -> int:
        return _as_int(self.n * self.alpha1, "n*alpha1")

    @property
    def n_alpha2(self) -> int:
        return _as_int(self.n * self.alpha2, "n*alpha2")

    @property
    def k1(self) -> int:
        """High-security message bits, n*(1-alpha1-eps)."""
        return _as_int(self.n * (1.0 - self.alpha1 - self.eps), "n*(1-alpha1-eps)")

    @property
    def k2(self) -> int:
        """Low-security message bits, n*(alpha1-alpha2)."""
        return self.n_alpha1 - self.n_alpha2

    @property
    def r1(self) -> float:
        return self.k1 / self.n

    @property
    def r2(self) -> float:
        return self.k2 / self.n

    @property
    def margin_bits(self) -> float:
        """Leakage allowance 3/eps in bits (inf when eps = 0)."""
        return 3.0 / self.eps if self.eps > 0 else inf

    @property
    def d1_threshold(self) -> float:
        """Acceptance threshold for d1_star, k1 - 3/eps (may be vacuous)."""
        return self.k1 - self.margin_bits

    @property
    def d2_threshold(self) -> float:
        """Acceptance threshold for d2_star, (k1 + k2) - 3/eps."""
        return self.k1 + self.k2 - self.margin_bits

    def to_dict(self) -> dict:
        return {"n": self.n, "alpha1": self.alpha1, "alpha2": self.alpha2, "eps": self.eps}


@dataclass(frozen=True)
class CosetCodePair:
    """A two-level coset code with cached worst-case security certificates.

    ``d1_star`` is the exact minimum column-subspace dimension of h1 over
    subsets of n*(1-alpha1) positions; ``d2_star`` the same for the
    stacked matrix over subsets of n*(1-alpha2) positions.  Certificates
    of codes built by construct() always satisfy the 3/eps thresholds;
    externally supplied bundles are checked by audit_code rather than
    rejected here.
    """

    params: WiretapIIParams
    h1: np.ndarray
    h2: np.ndarray
    d1_star: int
    d2_star: int

    def __post_init__(self):
        h1 = np.asarray(self.h1, dtype=np.uint8).reshape(-1, self.params.n)
        h2 = np.asarray(self.h2, dtype=np.uint8).reshape(-1, self.params.n)
        if h1.shape[0] != self.params.k1 or h2.shape[0] != self.params.k2:
            raise ValueError(
                f"parity-check shapes {h1.shape}, {h2.shape} do not match "
                f"k1={self.params.k1}, k2={self.params.k2}")
        h1.flags.writeable = False
        h2.flags.writeable = False
        object.__setattr__(self, "h1", h1)
        object.__setattr__(self, "h2", h2)
        if self.rows and gf2.rank(self.stacked) != self.rows:
            raise ValueError("stacked parity-check matrix must have full row rank")

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k1(self) -> int:
        return self.params.k1

    @property
    def k2(self) -> int:
        return self.params.k2

    @property
    def rows(self) -> int:
        return self.k1 + self.k2

    @property
    def stacked(self) -> np.ndarray:
        """Full parity-check matrix [h1; h2], (k1+k2) x n."""
        return np.vstack([self.h1, self.h2])

    def to_bundle(self, seed=None) -> dict:
        """JSON-ready code bundle with matrices in the text format."""
        return {
            "params": self.params.to_dict(),
            "H1": gf2.matrix_to_text(self.h1),
            "H2": gf2.matrix_to_text(self.h2),
            "d1_star": self.d1_star,
            "d2_star": self.d2_star,
            "seed": seed,
        }

    @classmethod
    def from_bundle(cls, bundle: dict) -> "CosetCodePair":
        params = WiretapIIParams(**bundle["params"])
        return cls(
            params=params,
            h1=gf2.matrix_from_text(bundle["H1"]),
            h2=gf2.matrix_from_text(bundle["H2"]),
            d1_star=int(bundle["d1_star"]),
            d2_star=int(bundle["d2_star"]),
        )


@dataclass(frozen=True)
class Observation:
    """Eavesdropper view: transmitted bits on the observed set, erasures elsewhere."""

    z: np.ndarray
    observed: FrozenSet[int]

    def __post_init__(self):
        z = np.asarray(self.z, dtype=np.int8)
        z.flags.writeable = False
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "observed", frozenset(int(i) for i in self.observed))


def index_to_syndrome(m: int, length: int) -> np.ndarray:
    """Little-endian bits of the 0-based message index m."""
    if not 0 <= m < (1 << length):
        raise ValueError(f"message index {m} out of range 0..{(1 << length) - 1}")
    return np.array([(m >> j) & 1 for j in range(length)], dtype=np.uint8)


def syndrome_to_index(bits) -> int:
    bits = np.asarray(bits, dtype=np.uint8).reshape(-1)
    return int(sum(int(b) << j for j, b in enumerate(bits)))


def encode(code: CosetCodePair, m1: int, m2: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random codeword of the coset addressed by (m1, m2).

    Message indices are 0-based: m1 in 0..2**k1-1, m2 in 0..2**k2-1.
    The returned x satisfies h1 @ x = s1(m1) and h2 @ x = s2(m2) and is
    uniform over that coset.  Infeasibility cannot occur because the
    stacked matrix has full row rank.
    """
    s = np.concatenate([index_to_syndrome(m1, code.k1), index_to_syndrome(m2, code.k2)])
    return gf2.solve_affine(code.stacked.T, s, rng)


def decode(code: CosetCodePair, x) -> tuple[int, int]:
    """Recover (m1, m2) by syndrome computation; exact inverse of encode."""
    x = np.asarray(x, dtype=np.uint8).reshape(-1)
    if x.shape[0] != code.n:
        raise ValueError(f"codeword length {x.shape[0]} != n = {code.n}")
    s1 = (code.h1 @ x) % 2 if code.k1 else np.zeros(0, dtype=np.uint8)
    s2 = (code.h2 @ x) % 2 if code.k2 else np.zeros(0, dtype=np.uint8)
    return syndrome_to_index(s1), syndrome_to_index(s2)


def _check_positions(observed, n: int) -> frozenset:
    s = frozenset(int(i) for i in observed)
    if s and (min(s) < 0 or max(s) >= n):
        raise IndexError(f"observed positions must lie in 0..{n - 1}")
    return s


def eavesdrop(x, observed) -> Observation:
    """Observation with z_i = x_i for observed positions, erasure elsewhere."""
    x = np.asarray(x, dtype=np.int8).reshape(-1)
    s = _check_positions(observed, x.shape[0])
    z = np.full(x.shape[0], ERASURE, dtype=np.int8)
    idx = sorted(s)
    if idx:
        z[idx] = x[idx]
    return Observation(z=z, observed=s)


def equivocation(code: CosetCodePair, observed, level: str = "both") -> int:
    """Exact eavesdropper equivocation in bits for a known observed set.

    For uniform messages and uniform encoder randomness the conditional
    entropy of the messages given the observation equals the GF(2)
    dimension of the parity-check columns at the unobserved positions:
    the unobserved bits are uniform given the observation, and the
    syndrome map restricted to them is linear, so the posterior over
    syndromes is uniform on an affine space of that dimension.

    level="both" scores (m1, m2) against the stacked matrix;
    level="high" scores m1 alone against h1.
    """
    s = _check_positions(observed, code.n)
    complement = [i for i in range(code.n) if i not in s]
    if level == "both":
        return gf2.column_subset_dim(code.stacked, complement)
    if level == "high":
        return gf2.column_subset_dim(code.h1, complement)
    raise ValueError("level must be 'both' or 'high'")


def worst_case_security(code: CosetCodePair, *, enum_budget: int = 10**6,
                        node_limit: int = 20_000_000) -> tuple[int, int]:
    """Exact (d1_star, d2_star): worst-case equivocations over all observed sets.

    d1_star minimizes the h1 column-subspace dimension over all position
    subsets of size n*(1-alpha1) (eavesdropper sees n*alpha1 positions);
    d2_star does the same for the stacked matrix at size n*(1-alpha2).
    Exhaustive enumeration under the budget, exact branch-and-bound
    otherwise; both paths are exact.
    """
    p = code.params
    d1 = gf2.min_rank_over_column_subsets(
        code.h1, p.n - p.n_alpha1, enum_budget=enum_budget, node_limit=node_limit)
    d2 = gf2.min_rank_over_column_subsets(
        code.stacked, p.n - p.n_alpha2, enum_budget=enum_budget, node_limit=node_limit)
    return d1, d2


def construct(params: WiretapIIParams, seed: int, max_attempts: int = 100, *,
              enum_budget: int = 10**6, node_limit: int = 20_000_000) -> CosetCodePair:
    """Rejection-sample a two-level coset code with exact security certificates.

    Each attempt draws the stacked parity-check matrix with i.i.d.
    uniform {0,1} entries and accepts iff it has full row rank and the
    exact certificates clear their thresholds:

        d2_star >= n*(1-alpha2-eps) - 3/eps
        d1_star >= n*(1-alpha1-eps) - 3/eps

    (both vacuous when negative, as happens at small n).  Attempt i uses
    the seed stream (seed, i), so results are identical no matter how
    attempts are scheduled; the accepted attempt is the lowest index.
    """
    if params.eps <= 0:
        raise ValueError("construct requires eps > 0")
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")
    rows = params.k1 + params.k2
    for attempt in range(max_attempts):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(attempt,)))
        h = gf2.random_matrix(rows, params.n, rng)
        if gf2.rank(h) != rows:
            continue
        code = CosetCodePair(params=params, h1=h[:params.k1], h2=h[params.k1:],
                             d1_star=0, d2_star=0)
        d1, d2 = worst_case_security(code, enum_budget=enum_budget, node_limit=node_limit)
        if d1 >= params.d1_threshold and d2 >= params.d2_threshold:
            return CosetCodePair(params=params, h1=h[:params.k1], h2=h[params.k1:],
                                 d1_star=d1, d2_star=d2)
    raise ConstructionExhaustedError(
        f"no acceptable matrix in {max_attempts} attempts at n={params.n}; "
        "small blocks can legitimately fail the certificate thresholds")


@dataclass(frozen=True)
class UnionBoundReport:
    """Union-bound estimate that a uniform random matrix is rejected.

    ``rank_term`` bounds the probability of a rank deficit; ``subset_term``
    bounds the probability that some observed set defeats a certificate,
    either with the loose 2**n subset count or with exact binomial counts.
    ``conclusive`` reproduces the analytic chain: existence of an
    acceptable matrix is guaranteed once both terms are below 1/2.
    """

    n: int
    mode: str
    rank_term: float
    subset_term: float
    rank_ok: bool
    subset_ok: bool

    @property
    def total(self) -> float:
        return self.rank_term + self.subset_term

    @property
    def conclusive(self) -> bool:
        return self.rank_ok and self.subset_ok

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "rank_term": self.rank_term,
            "subset_term": self.subset_term,
            "total": self.total,
            "rank_term_below_half": self.rank_ok,
            "subset_term_below_half": self.subset_ok,
            "conclusive": self.conclusive,
        }


def union_bound_report(params: WiretapIIParams, *, exact_counts: bool = False) -> UnionBoundReport:
    """Expected-rejection bound for uniform random parity-check matrices.

    rank term:  n(1-alpha2-eps) * 2**(-n(alpha2+eps)) / (1 - 2**(-n(alpha2+eps)))
    subset term, loose:  2 * 2**n * 2**(-2n) = 2**(1-n)
    subset term, exact:  (C(n, n*alpha1) + C(n, n*alpha2)) * 2**(-2n)

    The loose count follows the analytic argument verbatim; the exact
    binomial count is never larger, which makes the bound usable at desk
    scale.  Requires eps > 0.
    """
    if params.eps <= 0:
        raise ValueError("union bound requires eps > 0")
    n = params.n
    k_low = params.k1 + params.k2  # n(1 - alpha2 - eps)
    exp = params.n_alpha2 + (n - params.n_alpha1 - params.k1)  # n(alpha2 + eps)
    q = Fraction(1, 1 << exp)
    rank_term = float(k_low * q / (1 - q))
    if exact_counts:
        count = comb(n, params.n_alpha1) + comb(n, params.n_alpha2)
        subset_term = float(Fraction(count, 1 << (2 * n)))
        mode = "exact"
    else:
        subset_term = float(Fraction(2 << n, 1 << (2 * n)))
        mode = "loose"
    return UnionBoundReport(
        n=n, mode=mode, rank_term=rank_term, subset_term=subset_term,
        rank_ok=rank_term < 0.5, subset_ok=subset_term < 0.5)


def audit_code(code: CosetCodePair, *, enum_budget: int = 10**6,
               node_limit: int = 20_000_000) -> dict:
    """Re-derive the security certificates exactly and check the 3/eps bounds.

    Returns a JSON-ready report: recomputed d1_star/d2_star, whether they
    match the stored certificates, and, for each eavesdropper size, the
    worst-case equivocation, the worst-case leakage (message bits minus
    equivocation) and a pass flag against the 3/eps allowance.
    """
    p = code.params
    full_rank = gf2.rank(code.stacked) == code.rows
    d1, d2 = worst_case_security(code, enum_budget=enum_budget, node_limit=node_limit)
    margin = p.margin_bits
    leak_high = code.k1 - d1
    leak_both = code.k1 + code.k2 - d2
    finite = p.eps > 0
    report = {
        "params": p.to_dict(),
        "rates": {"r1": p.r1, "r2": p.r2},
        "full_row_rank": bool(full_rank),
        "d1_star": d1,
        "d2_star": d2,
        "certificates_match": bool(d1 == code.d1_star and d2 == code.d2_star),
        "leakage_allowance_bits": margin if finite else None,
        "strong_eavesdropper": {
            "observed_size": p.n_alpha1,
            "message_bits": code.k1,
            "worst_case_equivocation_bits": d1,
            "worst_case_leakage_bits": leak_high,
            "pass": bool(leak_high <= margin) if finite else None,
        },
        "weak_eavesdropper": {
            "observed_size": p.n_alpha2,
            "message_bits": code.k1 + code.k2,
            "worst_case_equivocation_bits": d2,
            "worst_case_leakage_bits": leak_both,
            "pass": bool(leak_both <= margin) if finite else None,
        },
    }
    checks = [report["full_row_rank"], report["certificates_match"]]
    if finite:
        checks += [report["strong_eavesdropper"]["pass"], report["weak_eavesdropper"]["pass"]]
    report["pass"] = bool(all(checks))
    return report
