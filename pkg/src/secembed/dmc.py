"""Finite-alphabet channels with one legitimate output and two eavesdropper
strength levels: degradation checks and exact rate-region point evaluation.

A channel is a stochastic tensor p(y, z1, z2 | x).  All information
quantities are computed exactly from the composed joints, in bits.
The region evaluators score user-supplied input distributions or
auxiliary chains; no optimization over distributions is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

__all__ = [
    "DmcTriple",
    "AuxiliaryChain",
    "DegradationResult",
    "RatePointBounds",
    "EmbeddabilityReport",
    "entropy_bits",
    "mi_bits",
    "conditional_mi_bits",
    "check_degraded",
    "region_point_simple",
    "region_point_full",
    "embeddability_report",
    "bec_kernel",
    "bsc_kernel",
    "noiseless_kernel",
    "constant_kernel",
]

_ATOL = 1e-12


def _check_stochastic(mat: np.ndarray, what: str):
    if (mat < -_ATOL).any():
        raise ValueError(f"{what} has negative entries")
    rows = mat.reshape(mat.shape[0], -1).sum(axis=1)
    if not np.allclose(rows, 1.0, atol=1e-12, rtol=0.0):
        raise ValueError(f"{what} rows must sum to 1 within 1e-12")


def entropy_bits(p) -> float:
    p = np.asarray(p, dtype=float).reshape(-1)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def mi_bits(joint) -> float:
    """Mutual information I(A;B) from a 2-D joint, exact in bits."""
    j = np.asarray(joint, dtype=float)
    pa = j.sum(axis=1)
    pb = j.sum(axis=0)
    return entropy_bits(pa) + entropy_bits(pb) - entropy_bits(j)


def conditional_mi_bits(joint3) -> float:
    """I(B;C|A) from a 3-D joint over (a, b, c)."""
    j = np.asarray(joint3, dtype=float)
    total = 0.0
    for a in range(j.shape[0]):
        pa = j[a].sum()
        if pa > 0:
            total += pa * mi_bits(j[a] / pa)
    return total


@dataclass(frozen=True)
class DmcTriple:
    """Transition law p(y, z1, z2 | x) as a (|X|, |Y|, |Z1|, |Z2|) tensor."""

    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 4:
            raise ValueError("transition tensor must have axes (x, y, z1, z2)")
        _check_stochastic(p, "p(y,z1,z2|x)")
        p = p.copy()
        p.flags.writeable = False
        object.__setattr__(self, "p", p)

    @classmethod
    def independent(cls, py_x, pz1_x, pz2_x) -> "DmcTriple":
        """Compose from per-output kernels, conditionally independent given x."""
        py_x = np.asarray(py_x, dtype=float)
        pz1_x = np.asarray(pz1_x, dtype=float)
        pz2_x = np.asarray(pz2_x, dtype=float)
        return cls(np.einsum("xy,xa,xb->xyab", py_x, pz1_x, pz2_x))

    @property
    def nx(self) -> int:
        return self.p.shape[0]

    @property
    def py_x(self) -> np.ndarray:
        return self.p.sum(axis=(2, 3))

    @property
    def pz1_x(self) -> np.ndarray:
        return self.p.sum(axis=(1, 3))

    @property
    def pz2_x(self) -> np.ndarray:
        return self.p.sum(axis=(1, 2))

    def to_dict(self) -> dict:
        return {
            "nx": self.p.shape[0],
            "ny": self.p.shape[1],
            "nz1": self.p.shape[2],
            "nz2": self.p.shape[3],
            "index_order": "x,y,z1,z2 (row-major)",
            "p": [float(v) for v in self.p.reshape(-1)],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DmcTriple":
        shape = (d["nx"], d["ny"], d["nz1"], d["nz2"])
        return cls(np.asarray(d["p"], dtype=float).reshape(shape))


def bec_kernel(delta: float) -> np.ndarray:
    """Binary erasure kernel: outputs (0, 1, erasure), erasure probability delta."""
    if not 0.0 <= delta <= 1.0:
        raise ValueError("erasure probability must be in [0, 1]")
    return np.array([[1 - delta, 0.0, delta], [0.0, 1 - delta, delta]])


def bsc_kernel(flip: float) -> np.ndarray:
    if not 0.0 <= flip <= 1.0:
        raise ValueError("flip probability must be in [0, 1]")
    return np.array([[1 - flip, flip], [flip, 1 - flip]])


def noiseless_kernel(size: int) -> np.ndarray:
    return np.eye(size)


def constant_kernel(size: int) -> np.ndarray:
    """Output carries no information: a single sure symbol for every input."""
    return np.ones((size, 1))


@dataclass(frozen=True)
class AuxiliaryChain:
    """Distributions p(u), p(v|u), p(x|v) composing a chain U -> V -> X."""

    pu: np.ndarray
    pv_u: np.ndarray
    px_v: np.ndarray

    def __post_init__(self):
        pu = np.asarray(self.pu, dtype=float).reshape(-1)
        pv_u = np.asarray(self.pv_u, dtype=float)
        px_v = np.asarray(self.px_v, dtype=float)
        if (pu < -_ATOL).any() or abs(pu.sum() - 1.0) > 1e-12:
            raise ValueError("p(u) must be a distribution")
        _check_stochastic(pv_u, "p(v|u)")
        _check_stochastic(px_v, "p(x|v)")
        if pv_u.shape[0] != pu.shape[0] or px_v.shape[0] != pv_u.shape[1]:
            raise ValueError("chain shapes do not compose")
        for arr, name in ((pu, "pu"), (pv_u, "pv_u"), (px_v, "px_v")):
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def joint_uvx(self) -> np.ndarray:
        return np.einsum("u,uv,vx->uvx", self.pu, self.pv_u, self.px_v)

    def px(self) -> np.ndarray:
        return self.joint_uvx().sum(axis=(0, 1))


@dataclass(frozen=True)
class DegradationResult:
    degraded: bool
    witness: np.ndarray | None
    residual: float


_DEGRADE_PAIRS = {
    "z2_of_z1": ("pz1_x", "pz2_x"),
    "z2_of_y": ("py_x", "pz2_x"),
    "z1_of_y": ("py_x", "pz1_x"),
}


def check_degraded(ch: DmcTriple, which: str = "z2_of_z1",
                   tol: float = 1e-9) -> DegradationResult:
    """Decide whether the target output is a stochastic degradation of the source.

    Solves the linear feasibility problem for a kernel w with
    p(target|x) = sum_source p(source|x) w(target|source) by minimizing
    the maximum equation residual; degraded iff the optimum is within
    tolerance.  Returns the witness kernel when feasible, otherwise the
    best-achievable residual as an infeasibility certificate.
    """
    if which not in _DEGRADE_PAIRS:
        raise ValueError(f"which must be one of {sorted(_DEGRADE_PAIRS)}")
    src_name, tgt_name = _DEGRADE_PAIRS[which]
    src = getattr(ch, src_name)
    tgt = getattr(ch, tgt_name)
    nx, ns = src.shape
    nt = tgt.shape[1]
    nvar = ns * nt + 1  # w entries then the residual bound t

    # |sum_s src[x,s] w[s,t'] - tgt[x,t']| <= t  for every (x, t')
    a_ub = []
    b_ub = []
    for x in range(nx):
        for t in range(nt):
            row = np.zeros(nvar)
            row[[s * nt + t for s in range(ns)]] = src[x]
            row[-1] = -1.0
            a_ub.append(row.copy())
            b_ub.append(tgt[x, t])
            row2 = -row
            row2[-1] = -1.0
            a_ub.append(row2)
            b_ub.append(-tgt[x, t])
    a_eq = []
    b_eq = []
    for s in range(ns):
        row = np.zeros(nvar)
        row[s * nt:(s + 1) * nt] = 1.0
        a_eq.append(row)
        b_eq.append(1.0)
    c = np.zeros(nvar)
    c[-1] = 1.0
    res = linprog(c, A_ub=np.array(a_ub), b_ub=np.array(b_ub),
                  A_eq=np.array(a_eq), b_eq=np.array(b_eq),
                  bounds=[(0, None)] * (nvar - 1) + [(0, None)],
                  method="highs")
    if not res.success:
        return DegradationResult(degraded=False, witness=None, residual=float("inf"))
    residual = float(res.x[-1])
    witness = res.x[:-1].reshape(ns, nt)
    if residual <= tol:
        return DegradationResult(degraded=True, witness=witness, residual=residual)
    return DegradationResult(degraded=False, witness=None, residual=residual)


@dataclass(frozen=True)
class RatePointBounds:
    """Achievable-rate bounds (R1 <= r1_max, R1 + R2 <= sum_max) at one point.

    ``raw`` keeps the unclamped information differences; the bounds are
    their nonnegative parts.  ``side_condition_ok`` is None for plain
    input distributions and reports I(U;Y) >= I(U;Z2) for full chains.
    """

    r1_max: float
    sum_max: float
    raw: tuple
    side_condition_ok: bool | None = None

    def region(self):
        from secembed.regions import RateRegion

        return RateRegion.from_rate_bounds(self.r1_max, self.sum_max)

    def to_dict(self) -> dict:
        d = {"r1_max": self.r1_max, "sum_max": self.sum_max,
             "raw_r1": self.raw[0], "raw_sum": self.raw[1]}
        if self.side_condition_ok is not None:
            d["side_condition_ok"] = self.side_condition_ok
        return d


def region_point_simple(ch: DmcTriple, px) -> RatePointBounds:
    """Nested-binning bounds for one input distribution:

        R1      <= I(X;Y)  - I(X;Z1)
        R1 + R2 <= I(X;Y)  - I(X;Z2)

    both clamped at zero, computed exactly in bits.
    """
    px = np.asarray(px, dtype=float).reshape(-1)
    if px.shape[0] != ch.nx or (px < -_ATOL).any() or abs(px.sum() - 1.0) > 1e-9:
        raise ValueError("px must be a distribution over the input alphabet")
    ixy = mi_bits(px[:, None] * ch.py_x)
    ixz1 = mi_bits(px[:, None] * ch.pz1_x)
    ixz2 = mi_bits(px[:, None] * ch.pz2_x)
    raw1 = ixy - ixz1
    raw_sum = ixy - ixz2
    return RatePointBounds(r1_max=max(0.0, raw1), sum_max=max(0.0, raw_sum),
                           raw=(raw1, raw_sum))


def region_point_full(ch: DmcTriple, aux: AuxiliaryChain) -> RatePointBounds:
    """Superposition bounds for an auxiliary chain U -> V -> X:

        R1      <= I(V;Y|U) - I(V;Z1|U)
        R1 + R2 <= I(V;Y)   - I(V;Z2)

    clamped at zero, plus the side condition I(U;Y) >= I(U;Z2).
    """
    if aux.px_v.shape[1] != ch.nx:
        raise ValueError("auxiliary chain does not match the channel input alphabet")
    juvx = aux.joint_uvx()
    juvy = np.einsum("uvx,xy->uvy", juvx, ch.py_x)
    juvz1 = np.einsum("uvx,xy->uvy", juvx, ch.pz1_x)
    juvz2 = np.einsum("uvx,xy->uvy", juvx, ch.pz2_x)
    raw1 = conditional_mi_bits(juvy) - conditional_mi_bits(juvz1)
    raw_sum = mi_bits(np.einsum("uvy->vy", juvy)) - mi_bits(np.einsum("uvy->vy", juvz2))
    iuy = mi_bits(np.einsum("uvy->uy", juvy))
    iuz2 = mi_bits(np.einsum("uvy->uy", juvz2))
    return RatePointBounds(
        r1_max=max(0.0, raw1), sum_max=max(0.0, raw_sum), raw=(raw1, raw_sum),
        side_condition_ok=bool(iuy >= iuz2 - 1e-12))


@dataclass(frozen=True)
class EmbeddabilityReport:
    """Best rate points found over the supplied candidates only.

    This is a search over user-supplied distributions, not a proof of
    channel-wide optimality: ``embeddable`` certifies a candidate whose
    sum bound matches the best sum bound found while its R1 bound is
    positive; ``perfectly_embeddable`` additionally requires the R1
    bound to match the best R1 bound found anywhere in the candidate
    set.
    """

    best_sum: float
    best_r1_at_best_sum: float
    best_r1_overall: float
    embeddable: bool
    perfectly_embeddable: bool
    evaluations: tuple

    def to_dict(self) -> dict:
        return {
            "scope": "supplied candidates only",
            "best_sum": self.best_sum,
            "best_r1_at_best_sum": self.best_r1_at_best_sum,
            "best_r1_overall": self.best_r1_overall,
            "embeddable": self.embeddable,
            "perfectly_embeddable": self.perfectly_embeddable,
            "evaluations": [e.to_dict() for e in self.evaluations],
        }


def embeddability_report(ch: DmcTriple, px_candidates=(), aux_candidates=(),
                         tol: float = 1e-9) -> EmbeddabilityReport:
    """Evaluate candidates and report the embedding certificates found.

    Auxiliary-chain candidates whose side condition fails are evaluated
    but excluded from the certificates.
    """
    evals = []
    usable = []
    for px in px_candidates:
        b = region_point_simple(ch, px)
        evals.append(b)
        usable.append(b)
    for aux in aux_candidates:
        b = region_point_full(ch, aux)
        evals.append(b)
        if b.side_condition_ok:
            usable.append(b)
    if not usable:
        return EmbeddabilityReport(0.0, 0.0, 0.0, False, False, tuple(evals))
    best_sum = max(b.sum_max for b in usable)
    at_best = [b for b in usable if b.sum_max >= best_sum - tol]
    best_r1_at_best_sum = max(b.r1_max for b in at_best)
    best_r1_overall = max(b.r1_max for b in usable)
    embeddable = best_sum > tol and best_r1_at_best_sum > tol
    perfectly = embeddable and best_r1_at_best_sum >= best_r1_overall - tol
    return EmbeddabilityReport(
        best_sum=best_sum,
        best_r1_at_best_sum=best_r1_at_best_sum,
        best_r1_overall=best_r1_overall,
        embeddable=embeddable,
        perfectly_embeddable=bool(perfectly),
        evaluations=tuple(evals),
    )
