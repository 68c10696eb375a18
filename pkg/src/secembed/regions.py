"""Numeric rate regions: finite lists of linear inequalities over rate symbols.

This is the common currency between the Gaussian calculators, the
finite-alphabet region evaluators and the symbolic elimination engine.
A region is a conjunction of half-spaces ``sum_i coeff_i * r_i <= bound``
(or strict ``<``) over named nonnegative rate variables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["HalfSpace", "RateRegion"]


@dataclass(frozen=True)
class HalfSpace:
    """coeffs . r <= bound (strict: <)."""

    coeffs: tuple[float, ...]
    bound: float
    strict: bool = False

    def value(self, point) -> float:
        return float(np.dot(self.coeffs, point))


@dataclass(frozen=True)
class RateRegion:
    variables: tuple[str, ...]
    halfspaces: tuple[HalfSpace, ...]

    @classmethod
    def from_rate_bounds(cls, r1_max: float, sum_max: float,
                         variables=("R1", "R2")) -> "RateRegion":
        """Corner region {R1 <= r1_max, R1 + R2 <= sum_max, R1, R2 >= 0}."""
        return cls(
            variables=tuple(variables),
            halfspaces=(
                HalfSpace((1.0, 0.0), float(r1_max)),
                HalfSpace((1.0, 1.0), float(sum_max)),
                HalfSpace((-1.0, 0.0), 0.0),
                HalfSpace((0.0, -1.0), 0.0),
            ),
        )

    def contains(self, point, tol: float = 1e-12) -> bool:
        for hs in self.halfspaces:
            v = hs.value(point) - hs.bound
            if hs.strict:
                if v >= -tol:
                    return False
            elif v > tol:
                return False
        return True

    def max_r2_at(self, r1: float):
        """Largest feasible value of the second variable at the given first.

        Returns None when no feasible value exists.  Assumes exactly two
        variables.
        """
        if len(self.variables) != 2:
            raise ValueError("max_r2_at applies to two-variable regions")
        lower, upper = -np.inf, np.inf
        for hs in self.halfspaces:
            a1, a2 = hs.coeffs
            rest = hs.bound - a1 * r1
            if a2 > 0:
                upper = min(upper, rest / a2)
            elif a2 < 0:
                lower = max(lower, rest / a2)
            elif a1 * r1 > hs.bound + 1e-12:
                return None
        if lower > upper + 1e-12:
            return None
        return float(upper)

    def vertices(self, tol: float = 1e-9) -> list[tuple[float, float]]:
        """Vertices of a bounded two-variable region."""
        if len(self.variables) != 2:
            raise ValueError("vertices applies to two-variable regions")
        pts = []
        hs = self.halfspaces
        for i in range(len(hs)):
            for j in range(i + 1, len(hs)):
                a = np.array([hs[i].coeffs, hs[j].coeffs], dtype=float)
                b = np.array([hs[i].bound, hs[j].bound], dtype=float)
                if abs(np.linalg.det(a)) < 1e-14:
                    continue
                p = np.linalg.solve(a, b)
                if self.contains(p, tol=tol):
                    pts.append((float(p[0]), float(p[1])))
        uniq = []
        for p in sorted(pts):
            if not uniq or abs(p[0] - uniq[-1][0]) > tol or abs(p[1] - uniq[-1][1]) > tol:
                uniq.append(p)
        return uniq

    def upper_boundary(self, num: int = 101) -> np.ndarray:
        """(num, 2) samples of the upper frontier over the feasible R1 range."""
        verts = self.vertices()
        if not verts:
            return np.zeros((0, 2))
        r1_max = max(v[0] for v in verts)
        grid = np.linspace(0.0, r1_max, num)
        out = []
        for r1 in grid:
            r2 = self.max_r2_at(float(r1))
            if r2 is not None:
                out.append((float(r1), max(r2, 0.0)))
        return np.array(out)

    def canonical(self, ndigits: int = 10) -> tuple:
        """Scale-normalized, sorted halfspace tuples for region comparison."""
        rows = []
        for hs in self.halfspaces:
            scale = max(abs(c) for c in hs.coeffs) or 1.0
            rows.append((
                tuple(round(c / scale, ndigits) for c in hs.coeffs),
                round(hs.bound / scale, ndigits),
                hs.strict,
            ))
        return tuple(sorted(set(rows)))

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "halfspaces": [
                {"coeffs": list(hs.coeffs), "bound": hs.bound,
                 "relation": "<" if hs.strict else "<="}
                for hs in self.halfspaces
            ],
        }
