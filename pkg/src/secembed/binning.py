"""Monte Carlo realization of the nested-binning secrecy scheme.

A codebook of i.i.d. codewords is partitioned into bins (high-security
message) and subbins (low-security message); the remaining index inside
a subbin is pure transmitter randomness.  Decoding is maximum
likelihood over the whole codebook.  Leakage about the messages at the
two eavesdropper outputs is computed EXACTLY for the realized codebook
by marginalizing the memoryless channel law over bins and subbins,
never estimated from samples:

* an erasure-style kernel (every output symbol either reveals a
  deterministic function of the input or is input-independent noise)
  admits an exact decomposition over the 2**n reveal patterns, which is
  what makes block lengths around 16 tractable;
* any other kernel is handled by enumerating all |Z|**n output
  sequences, subject to the leakage budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log2

import numpy as np

from secembed.dmc import DmcTriple, entropy_bits

__all__ = [
    "NestedCodebook",
    "SimReport",
    "rates_to_counts",
    "make_codebook",
    "exact_leakage",
    "empirical_error_rate",
    "simulate_nested_binning",
]


def rates_to_counts(rates, n: int) -> tuple[int, int, int]:
    """Codebook sizes (bins, subbins, per-subbin) for rates in bits/use.

    Each 2**(n*rate) must be an integer count (relative tolerance 1e-6
    against the nearest integer); anything else is rejected rather than
    rounded, so the realized rates are exactly the requested ones.
    """
    if len(rates) != 3:
        raise ValueError("rates must be (R1, R2, T)")
    counts = []
    for r in rates:
        if r < 0:
            raise ValueError("rates must be nonnegative")
        raw = 2.0 ** (n * r)
        near = round(raw)
        if near < 1 or abs(raw - near) > 1e-6 * max(near, 1):
            raise ValueError(
                f"2**(n*{r}) = {raw} is not an integer codebook count at n={n}")
        counts.append(int(near))
    return tuple(counts)


@dataclass(frozen=True)
class NestedCodebook:
    """Codewords indexed (bin, subbin, within-subbin), each a length-n word."""

    codewords: np.ndarray
    nx: int

    def __post_init__(self):
        cw = np.asarray(self.codewords, dtype=np.int64)
        if cw.ndim != 4:
            raise ValueError("codewords must have axes (bin, subbin, slot, position)")
        cw.flags.writeable = False
        object.__setattr__(self, "codewords", cw)

    @property
    def n(self) -> int:
        return self.codewords.shape[3]

    @property
    def n_bins(self) -> int:
        return self.codewords.shape[0]

    @property
    def n_subbins(self) -> int:
        return self.codewords.shape[1]

    @property
    def n_per(self) -> int:
        return self.codewords.shape[2]

    @property
    def size(self) -> int:
        return self.n_bins * self.n_subbins * self.n_per

    @property
    def rates(self) -> tuple[float, float, float]:
        return (log2(self.n_bins) / self.n, log2(self.n_subbins) / self.n,
                log2(self.n_per) / self.n)

    def flat(self) -> np.ndarray:
        return self.codewords.reshape(self.size, self.n)


def make_codebook(px, n: int, counts, rng: np.random.Generator) -> NestedCodebook:
    """Draw all codewords i.i.d. from px (bin/subbin structure is just labeling)."""
    px = np.asarray(px, dtype=float).reshape(-1)
    if (px < 0).any() or abs(px.sum() - 1.0) > 1e-9:
        raise ValueError("px must be a distribution")
    n_bins, n_subbins, n_per = counts
    words = rng.choice(len(px), size=(n_bins, n_subbins, n_per, n), p=px)
    return NestedCodebook(codewords=words, nx=len(px))


def _erasure_decomposition(w: np.ndarray, atol: float = 1e-9):
    """Split a kernel into input-independent noise symbols plus a reveal map.

    Returns (delta, reveal) where delta is the total noise probability
    and reveal[x] is the deterministic symbol produced when not erased,
    or None when the kernel has no such structure (then the general
    enumeration path applies).
    """
    nx, nz = w.shape
    const = np.ptp(w, axis=0) <= atol
    delta = float(w[0, const].sum())
    rest = ~const
    if not rest.any():
        return delta, np.zeros(nx, dtype=np.int64)
    sub = w[:, rest]
    nonzero = sub > atol
    if (nonzero.sum(axis=1) != 1).any():
        return None
    if not np.allclose(sub[nonzero], 1.0 - delta, atol=atol):
        return None
    reveal_local = nonzero.argmax(axis=1)
    return delta, reveal_local.astype(np.int64)


def _pattern_statistics(codebook: NestedCodebook, reveal: np.ndarray):
    """Per-reveal-pattern collision statistics of the projected codebook.

    For every pattern B of non-erased positions (iterated in Gray-code
    order so the projection updates incrementally) the codewords are
    grouped by their revealed values; the sums of c*log2(c) over group
    sizes at global, bin and subbin granularity determine the exact
    pattern-conditional message information.  Yields
    (popcount, i_bin, i_subbin) per pattern, where i_bin = I(M1; f(X)_B)
    and i_subbin = I(M1, M2; f(X)_B) in bits.
    """
    n = codebook.n
    flat = codebook.flat()
    k_total = codebook.size
    base = int(reveal.max()) + 1 if reveal.size else 1
    if base < 2:
        # reveal map constant: projections carry nothing for any pattern
        for t in range(1 << n):
            yield bin(t ^ (t >> 1)).count("1"), 0.0, 0.0
        return
    groups = codebook.n_bins * codebook.n_subbins
    span_bits = n * log2(base) + log2(max(groups, 1))
    if span_bits > 62:
        raise ValueError("pattern projection would overflow 64-bit keys")
    dtype = np.int32 if span_bits <= 30 else np.int64
    proj_units = reveal[flat].astype(dtype)
    weights = (base ** np.arange(n)).astype(dtype)
    contrib = np.ascontiguousarray((proj_units * weights[None, :]).T * dtype(groups))
    gid = (np.arange(k_total) // codebook.n_per).astype(dtype)
    lut = np.zeros(k_total + 1)
    counts_range = np.arange(1, k_total + 1)
    lut[1:] = counts_range * np.log2(counts_range)
    log_bins = log2(codebook.n_bins)
    log_groups = log2(groups)
    n_subbins = codebook.n_subbins

    key = gid.copy()
    yield 0, 0.0, 0.0  # empty pattern: nothing revealed
    pc = 0
    for t in range(1, 1 << n):
        j = (t & -t).bit_length() - 1
        g = t ^ (t >> 1)
        if (g >> j) & 1:
            key += contrib[j]
            pc += 1
        else:
            key -= contrib[j]
            pc -= 1
        ks = np.sort(key)
        # finest-level runs; coarser levels merge runs, so their boundaries
        # are found among the finest-level group representatives
        bnd = np.flatnonzero(ks[1:] != ks[:-1]) + 1
        starts = np.concatenate(([0], bnd))
        ends = np.concatenate((bnd, [k_total]))
        s_sub = float(lut[ends - starts].sum())
        reps = ks[starts] // n_subbins
        keep = np.flatnonzero(reps[1:] != reps[:-1]) + 1
        bstarts = starts[np.concatenate(([0], keep))]
        s_bin = float(lut[np.diff(np.concatenate((bstarts, [k_total])))].sum())
        reps //= codebook.n_bins
        keep = np.flatnonzero(reps[1:] != reps[:-1]) + 1
        gstarts = starts[np.concatenate(([0], keep))]
        s_glob = float(lut[np.diff(np.concatenate((gstarts, [k_total])))].sum())
        i_bin = log_bins - (s_glob - s_bin) / k_total
        i_sub = log_groups - (s_glob - s_sub) / k_total
        yield pc, max(i_bin, 0.0), max(i_sub, 0.0)


def _leakage_erasure(codebook: NestedCodebook, reveal: np.ndarray,
                     requests) -> list[float]:
    """Exact leakages for erasure-style kernels sharing one reveal map.

    requests is a list of (delta, level) pairs; returns total bits
    I(messages; Z^n) per request, with level 'bin' scoring m1 and
    'subbin' scoring (m1, m2).  One pass over the reveal patterns serves
    every request because the pattern-conditional information depends
    only on the shared reveal map.
    """
    n = codebook.n
    k = np.arange(n + 1)
    pc_weights = [(1.0 - delta) ** k * delta ** (n - k) for delta, _ in requests]
    results = [0.0] * len(requests)
    for pc, i_bin, i_sub in _pattern_statistics(codebook, reveal):
        for idx, (_, level) in enumerate(requests):
            val = i_bin if level == "bin" else i_sub
            results[idx] += pc_weights[idx][pc] * val
    return results


def _leakage_general(codebook: NestedCodebook, w: np.ndarray, level: str,
                     budget: int) -> float:
    """Exact leakage by enumerating every output sequence (small n only)."""
    nz = w.shape[1]
    n = codebook.n
    if nz**n > budget:
        raise ValueError(
            f"|Z|**n = {nz**n} exceeds the exact-leakage budget {budget}")
    flat = codebook.flat()

    def product_vector(word):
        v = np.ones(1)
        for x in word:
            v = np.outer(v, w[x]).reshape(-1)
        return v

    group = codebook.n_per if level == "subbin" else codebook.n_subbins * codebook.n_per
    total = np.zeros(nz**n)
    h_cond = 0.0
    n_groups = codebook.size // group
    for gidx in range(n_groups):
        dist = np.zeros(nz**n)
        for word in flat[gidx * group:(gidx + 1) * group]:
            dist += product_vector(word)
        dist /= group
        total += dist
        h_cond += entropy_bits(dist) / n_groups
    total /= n_groups
    return entropy_bits(total) - h_cond


def exact_leakage(codebook: NestedCodebook, kernel, level: str = "bin", *,
                  budget: int = 2**24) -> float:
    """Exact I(M1; Z^n) (level='bin') or I(M1,M2; Z^n) (level='subbin') in bits.

    Chooses the erasure-pattern decomposition when the kernel supports
    it (budget then applies to the 2**n patterns), otherwise enumerates
    output sequences (budget applies to |Z|**n).
    """
    if level not in ("bin", "subbin"):
        raise ValueError("level must be 'bin' or 'subbin'")
    w = np.asarray(kernel, dtype=float)
    if w.shape[0] != codebook.nx:
        raise ValueError("kernel input alphabet does not match the codebook")
    dec = _erasure_decomposition(w)
    if dec is not None:
        if 2**codebook.n > budget:
            raise ValueError(
                f"2**n = {2**codebook.n} patterns exceed the exact-leakage budget {budget}")
        delta, reveal = dec
        return _leakage_erasure(codebook, reveal, [(delta, level)])[0]
    return _leakage_general(codebook, w, level, budget)


def empirical_error_rate(codebook: NestedCodebook, py_x, trials: int,
                         rng: np.random.Generator) -> float:
    """Message error rate of maximum-likelihood decoding over the codebook.

    A trial encodes a uniform (m1, m2, t), samples the legitimate output
    and decodes by maximum likelihood with deterministic lowest-index
    tie breaking; the trial errs when the decoded (bin, subbin) pair
    differs from the transmitted one.
    """
    w = np.asarray(py_x, dtype=float)
    flat = codebook.flat()
    k_total = codebook.size
    logw = np.where(w > 0, np.log(np.where(w > 0, w, 1.0)), -1e30)
    sent = rng.integers(0, k_total, size=trials)
    x = flat[sent]
    cdf = np.cumsum(w, axis=1)
    u = rng.random(size=x.shape)
    y = (u[:, :, None] >= cdf[x][:, :, :-1]).sum(axis=2)
    scores = np.zeros((trials, k_total))
    for i in range(codebook.n):
        scores += logw[flat[:, i][None, :], y[:, i][:, None]]
    decoded = np.argmax(scores, axis=1)
    errs = (decoded // codebook.n_per) != (sent // codebook.n_per)
    return float(errs.mean())


@dataclass(frozen=True)
class SimReport:
    n: int
    rates: tuple
    counts: tuple
    trials: int
    seed: int
    error_rate: float | None
    leak_m1_strong: float | None
    leak_messages_weak: float | None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "rates": {"r1": self.rates[0], "r2": self.rates[1], "t": self.rates[2]},
            "counts": {"bins": self.counts[0], "subbins": self.counts[1],
                       "per_subbin": self.counts[2]},
            "trials": self.trials,
            "seed": self.seed,
            "error_rate": self.error_rate,
            "normalized_leak_m1_strong": self.leak_m1_strong,
            "normalized_leak_messages_weak": self.leak_messages_weak,
        }


def simulate_nested_binning(ch: DmcTriple, px, rates, n: int, trials: int,
                            seed: int, *, codebook_budget: int = 2**20,
                            leakage_budget: int = 2**24,
                            measure_leakage: bool = True) -> SimReport:
    """Build one random codebook, measure decoding error and exact leakage.

    Reported leakages are normalized: (1/n) I(M1; Z1^n) against the
    strong eavesdropper and (1/n) I(M1, M2; Z2^n) against the weak one.
    Deterministic given the seed: codebook, encoder and channel noise
    use separate substreams of one seed sequence.
    """
    counts = rates_to_counts(rates, n)
    total_symbols = counts[0] * counts[1] * counts[2] * n
    if total_symbols > codebook_budget:
        raise ValueError(
            f"codebook needs {total_symbols} symbols, over the budget {codebook_budget}")
    ss = np.random.SeedSequence(seed)
    rng_cb, rng_trials = (np.random.default_rng(s) for s in ss.spawn(2))
    codebook = make_codebook(px, n, counts, rng_cb)
    error = empirical_error_rate(codebook, ch.py_x, trials, rng_trials) if trials else None

    leak1 = leak2 = None
    if measure_leakage:
        dec1 = _erasure_decomposition(ch.pz1_x)
        dec2 = _erasure_decomposition(ch.pz2_x)
        if (dec1 is not None and dec2 is not None
                and np.array_equal(dec1[1], dec2[1]) and 2**n <= leakage_budget):
            requests = [(dec1[0], "bin"), (dec2[0], "subbin")]
            leak1, leak2 = _leakage_erasure(codebook, dec1[1], requests)
        else:
            leak1 = exact_leakage(codebook, ch.pz1_x, "bin", budget=leakage_budget)
            leak2 = exact_leakage(codebook, ch.pz2_x, "subbin", budget=leakage_budget)
        leak1 /= n
        leak2 /= n
    return SimReport(n=n, rates=tuple(rates), counts=counts, trials=trials,
                     seed=seed, error_rate=error,
                     leak_m1_strong=leak1, leak_messages_weak=leak2)
