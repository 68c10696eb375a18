"""Dense GF(2) linear algebra.

Matrices are numpy arrays of dtype uint8 with entries in {0, 1}; bit
vectors are 1-D arrays of the same kind.  Rows index constraints or
basis vectors, columns index code positions.  All functions are pure;
the only source of randomness is an explicit ``numpy.random.Generator``
argument, so results are reproducible from a seed.

Internally rows and columns are packed into Python ints (bit ``j`` of a
row int is column ``j``), which keeps Gaussian elimination and the
subset-rank searches fast at desk scale (up to ~64 positions).
"""

from __future__ import annotations

from collections import Counter
from math import comb

import numpy as np

__all__ = [
    "InfeasibleSystemError",
    "BudgetExceededError",
    "rank",
    "nullspace",
    "solve_affine",
    "column_subset_dim",
    "min_rank_over_column_subsets",
    "random_matrix",
    "matrix_to_text",
    "matrix_from_text",
]


class InfeasibleSystemError(ValueError):
    """Raised when a linear system over GF(2) has no solution."""


class BudgetExceededError(RuntimeError):
    """Raised when an exact search exceeds its configured node budget."""


def _as_bits(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.uint8)
    if a.ndim != 2:
        raise ValueError("expected a 2-D binary matrix")
    if a.size and a.max() > 1:
        raise ValueError("matrix entries must be 0 or 1")
    return a


def _row_ints(m: np.ndarray) -> list[int]:
    """Pack each row into an int; bit j of the int is column j."""
    rows, cols = m.shape
    out = []
    for i in range(rows):
        v = 0
        for j in range(cols - 1, -1, -1):
            v = (v << 1) | int(m[i, j])
        out.append(v)
    return out


def _col_ints(m: np.ndarray) -> list[int]:
    """Pack each column into an int; bit i of the int is row i."""
    return _row_ints(np.ascontiguousarray(m.T))


def _int_to_bits(v: int, length: int) -> np.ndarray:
    return np.array([(v >> j) & 1 for j in range(length)], dtype=np.uint8)


def _reduce(v: int, basis: list[int]) -> int:
    """Reduce v by an echelon basis (each vector has a unique top bit)."""
    for b in basis:
        if (v >> (b.bit_length() - 1)) & 1:
            v ^= b
    return v


def _echelon_insert(basis: list[int], v: int) -> bool:
    """Reduce v by basis and insert if independent.  Returns True if inserted."""
    v = _reduce(v, basis)
    if v == 0:
        return False
    basis.append(v)
    basis.sort(reverse=True)
    return True


def rank(m) -> int:
    """GF(2) rank of a binary matrix (row rank = column rank)."""
    a = _as_bits(m)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    basis: list[int] = []
    for v in _row_ints(a):
        _echelon_insert(basis, v)
    return len(basis)


def _rref_augmented(a_rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Full RREF of rows with bits >= ncols treated as an augmented part.

    Pivots are chosen only among bits 0..ncols-1.  Returns (rows, pivots)
    where row i has pivot column pivots[i] and pivot bits are eliminated
    from all other rows.
    """
    rows = [r for r in a_rows if r]
    pivots: list[int] = []
    out: list[int] = []
    for col in range(ncols):
        pick = None
        for idx, r in enumerate(rows):
            if (r >> col) & 1:
                pick = idx
                break
        if pick is None:
            continue
        piv = rows.pop(pick)
        rows = [r ^ piv if (r >> col) & 1 else r for r in rows]
        out = [r ^ piv if (r >> col) & 1 else r for r in out]
        out.append(piv)
        pivots.append(col)
        rows = [r for r in rows if r]
    # anything left has support only in the augmented bits
    out.extend(rows)
    pivots.extend([-1] * len(rows))
    return out, pivots


def nullspace(m) -> np.ndarray:
    """Basis of {x : m @ x = 0 over GF(2)} as rows of a (dim x cols) matrix.

    Returns a (0 x cols) matrix when the kernel is trivial.
    """
    a = _as_bits(m)
    k, n = a.shape
    if k == 0:
        return np.eye(n, dtype=np.uint8)
    rows, pivots = _rref_augmented(_row_ints(a), n)
    piv_set = {p: r for p, r in zip(pivots, rows) if p >= 0}
    free = [j for j in range(n) if j not in piv_set]
    basis = []
    for f in free:
        v = 1 << f
        for p, r in piv_set.items():
            if (r >> f) & 1:
                v |= 1 << p
        basis.append(_int_to_bits(v, n))
    if not basis:
        return np.zeros((0, n), dtype=np.uint8)
    return np.stack(basis)


def solve_affine(m, s, rng: np.random.Generator) -> np.ndarray:
    """Sample a uniform solution x of the transposed system x^T m = s^T.

    ``m`` has one row per code position and one column per constraint
    (the transposed layout of a parity-check matrix), so the system is
    equivalently ``m.T @ x = s``.  The returned x is drawn uniformly
    from the full solution set: a particular solution plus a uniform
    GF(2) combination of a kernel basis, which gives every solution
    probability 2**-(n - rank).

    Raises InfeasibleSystemError when s is not in the image.
    """
    a = _as_bits(m)
    n, k = a.shape
    s = np.asarray(s, dtype=np.uint8).reshape(-1)
    if s.shape[0] != k:
        raise ValueError(f"syndrome length {s.shape[0]} != number of constraints {k}")
    # constraint rows of m.T, augmented with the target bit at position n
    aug = []
    at = np.ascontiguousarray(a.T)
    for j, r in enumerate(_row_ints(at)):
        aug.append(r | (int(s[j]) << n))
    rows, pivots = _rref_augmented(aug, n)
    x0 = 0
    for r, p in zip(rows, pivots):
        if p < 0:
            if (r >> n) & 1:
                raise InfeasibleSystemError("no solution: syndrome outside the row-space image")
            continue
        if (r >> n) & 1:
            x0 |= 1 << p
    kernel = nullspace(at)
    x = _int_to_bits(x0, n)
    if kernel.shape[0]:
        coeffs = rng.integers(0, 2, size=kernel.shape[0], dtype=np.uint8)
        x ^= (coeffs[:, None] * kernel).sum(axis=0).astype(np.uint8) & 1
    return x


def column_subset_dim(m, subset) -> int:
    """Rank of the submatrix formed by the selected (0-based) columns."""
    a = _as_bits(m)
    idx = sorted(set(int(i) for i in subset))
    if idx and (idx[0] < 0 or idx[-1] >= a.shape[1]):
        raise IndexError(f"column index out of range 0..{a.shape[1] - 1}")
    if not idx or a.shape[0] == 0:
        return 0
    return rank(a[:, idx])


def min_rank_over_column_subsets(
    m,
    size: int,
    *,
    enum_budget: int = 10**6,
    node_limit: int = 20_000_000,
) -> int:
    """Exact minimum of rank(m[:, S]) over all column subsets of the given size.

    Uses exhaustive subset enumeration when the subset count fits in
    ``enum_budget``, otherwise an exact branch-and-bound over candidate
    spanning subspaces (rank is monotone in the subset, so partial ranks
    prune).  Both paths return the exact minimum.  Where helpful the
    search runs on the kernel side via the identity

        rank(m[:, S]) = |S| - dim ker(m) + rank(g[:, complement of S])

    with g a kernel basis of m, which keeps the search depth small.

    Raises BudgetExceededError when branch-and-bound exceeds node_limit;
    that signals the instance is beyond desk scale, not an approximation.
    """
    a = _as_bits(m)
    k, n = a.shape
    if not 0 <= size <= n:
        raise ValueError(f"subset size {size} out of range 0..{n}")
    if size == 0 or k == 0:
        return 0
    full = rank(a)
    if full == 0:
        return 0
    nullity = n - full
    lb = max(0, size - nullity)
    ub = min(size, full)
    if lb == ub:
        return lb
    dual_size = n - size
    dual_lb = max(0, dual_size - full)
    dual_ub = min(dual_size, nullity)
    if (dual_lb, dual_ub) < (lb, ub):
        g = nullspace(a)
        d = _min_rank_search(_col_ints(g), dual_size, dual_lb, dual_ub,
                             enum_budget, node_limit)
        return size - nullity + d
    return _min_rank_search(_col_ints(a), size, lb, ub, enum_budget, node_limit)


def _min_rank_search(cols: list[int], size: int, lb: int, ub: int,
                     enum_budget: int, node_limit: int) -> int:
    if comb(len(cols), size) <= enum_budget:
        return _min_rank_enumerate(cols, size, lb, ub)
    return _min_rank_subspaces(cols, size, lb, ub, node_limit)


def _min_rank_enumerate(cols: list[int], size: int, lb: int, ub: int) -> int:
    n = len(cols)
    best = ub
    basis: list[int] = []

    def rec(start: int, need: int) -> bool:
        nonlocal best
        if need == 0:
            best = len(basis)
            return best <= lb
        if len(basis) >= best:
            return False
        for i in range(start, n - need + 1):
            v = _reduce(cols[i], basis)
            if v == 0:
                if rec(i + 1, need - 1):
                    return True
            elif len(basis) + 1 < best:
                basis.append(v)
                basis.sort(reverse=True)
                stop = rec(i + 1, need - 1)
                basis.remove(v)
                if stop:
                    return True
        return False

    rec(0, size)
    return best


def _canon_insert(basis: tuple[int, ...], v: int) -> tuple[int, ...]:
    """Insert v into a fully reduced basis, keeping the canonical RREF form."""
    for b in basis:
        if (v >> (b.bit_length() - 1)) & 1:
            v ^= b
    p = v.bit_length() - 1
    nb = [b ^ v if (b >> p) & 1 else b for b in basis]
    nb.append(v)
    nb.sort(reverse=True)
    return tuple(nb)


def _min_rank_subspaces(cols: list[int], size: int, lb: int, ub: int,
                        node_limit: int) -> int:
    """Smallest r such that some r-dim subspace contains >= size columns.

    That minimum equals the minimum subset rank: a subset of the stated
    size and rank r spans an r-dim subspace containing all its columns,
    and conversely any r-dim subspace holding >= size columns yields a
    subset of rank <= r.
    """
    cnt = Counter(cols)
    zero = cnt.pop(0, 0)
    vals = sorted(cnt)
    if zero >= size:
        return 0
    nodes = 0

    def dfs(basis: tuple[int, ...], count: int, target: int,
            visited: set[tuple[int, ...]]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise BudgetExceededError(
                f"subset-rank search exceeded {node_limit} nodes; instance beyond desk scale")
        if count >= size:
            return True
        dim = len(basis)
        if dim == target:
            return False
        reps: dict[int, int] = {}
        for v in vals:
            r = v
            for b in basis:
                if (r >> (b.bit_length() - 1)) & 1:
                    r ^= b
            if r:
                reps[r] = reps.get(r, 0) + cnt[v]
        slots = (1 << (target - dim)) - 1
        top = sorted(reps.values(), reverse=True)[:slots]
        if count + sum(top) < size:
            return False
        for r in sorted(reps, key=lambda x: (-reps[x], x)):
            nb = _canon_insert(basis, r)
            if nb in visited:
                continue
            visited.add(nb)
            if dfs(nb, count + reps[r], target, visited):
                return True
        return False

    for target in range(max(lb, 1), ub + 1):
        if dfs((), zero, target, set()):
            return target
    return ub


def random_matrix(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """Matrix with i.i.d. uniform {0,1} entries."""
    return rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)


def matrix_to_text(m) -> str:
    """Serialize to the toolkit text format: 'rows cols' then 0/1 row lines."""
    a = _as_bits(m)
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    for i in range(a.shape[0]):
        lines.append("".join("1" if b else "0" for b in a[i]))
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> np.ndarray:
    """Parse the text format produced by matrix_to_text."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'rows cols'")
    rows, cols = int(head[0]), int(head[1])
    body = lines[1:]
    if len(body) != rows:
        raise ValueError(f"expected {rows} row lines, got {len(body)}")
    out = np.zeros((rows, cols), dtype=np.uint8)
    for i, ln in enumerate(body):
        if len(ln) != cols or set(ln) - {"0", "1"}:
            raise ValueError(f"row {i}: expected {cols} characters of 0/1")
        out[i] = [1 if c == "1" else 0 for c in ln]
    return out
