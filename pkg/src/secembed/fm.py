"""Exact Fourier-Motzkin elimination over symbolic rate inequalities.

Systems mix eliminable rate variables (message and randomness rates)
with opaque constant symbols (mutual-information placeholders, assumed
nonnegative unless declared otherwise).  Coefficients are exact
rationals, and strictness is tracked through elimination: combining a
strict bound with a non-strict one yields a strict consequence.  The
closure step substitutes the slack symbol by zero and relaxes strict
inequalities to weak ones, mirroring the limit that turns achievability
constraints into a closed rate region.

Redundancy removal happens at two levels: syntactic dominance (same
coefficient pattern, weaker constant side) during elimination, and
exact implication checking (rational feasibility of the negation, via
full elimination) in simplify_with_assumptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

__all__ = [
    "LinIneq",
    "LinIneqSystem",
    "ContradictionError",
    "UnboundConstantError",
    "eliminate",
    "simplify_with_assumptions",
    "instantiate",
    "nested_binning_constraints",
    "derive_nested_binning_region",
    "layered_scheme_constraints",
    "derive_layered_region",
    "LAYERED_ALIASES",
]


class ContradictionError(ValueError):
    """An assumption contradicts the system (or itself)."""


class UnboundConstantError(KeyError):
    """instantiate() was called with a constant symbol left unbound."""


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class LinIneq:
    """sum(coeff * symbol) + const  <=  0   (or < 0 when strict)."""

    terms: tuple
    const: Fraction
    strict: bool = False

    @classmethod
    def make(cls, coeffs, const=0, strict=False) -> "LinIneq":
        terms = tuple(sorted((s, _q(c)) for s, c in dict(coeffs).items() if _q(c) != 0))
        return cls(terms=terms, const=_q(const), strict=strict)

    @classmethod
    def at_most(cls, lhs, rhs, const=0, strict=False) -> "LinIneq":
        """lhs <= rhs + const, both sides as {symbol: coeff} maps."""
        coeffs = dict(lhs)
        for s, c in dict(rhs).items():
            coeffs[s] = _q(coeffs.get(s, 0)) - _q(c)
        return cls.make(coeffs, const=-_q(const), strict=strict)

    @property
    def coeffs(self) -> dict:
        return dict(self.terms)

    def coeff(self, symbol) -> Fraction:
        return self.coeffs.get(symbol, Fraction(0))

    def symbols(self) -> set:
        return {s for s, _ in self.terms}

    def scaled(self, q: Fraction) -> "LinIneq":
        q = _q(q)
        if q <= 0:
            raise ValueError("inequalities scale by positive rationals only")
        return LinIneq.make({s: c * q for s, c in self.terms},
                            const=self.const * q, strict=self.strict)

    def plus(self, other: "LinIneq") -> "LinIneq":
        coeffs = self.coeffs
        for s, c in other.terms:
            coeffs[s] = coeffs.get(s, Fraction(0)) + c
        return LinIneq.make(coeffs, const=self.const + other.const,
                            strict=self.strict or other.strict)

    def substitute(self, symbol, replacement_coeffs, replacement_const=0) -> "LinIneq":
        a = self.coeff(symbol)
        if a == 0:
            return self
        coeffs = self.coeffs
        del coeffs[symbol]
        for s, c in dict(replacement_coeffs).items():
            coeffs[s] = coeffs.get(s, Fraction(0)) + a * _q(c)
        return LinIneq.make(coeffs, const=self.const + a * _q(replacement_const),
                            strict=self.strict)

    def normalized(self) -> "LinIneq":
        """Primitive-integer form (unique positive scaling)."""
        values = [c for _, c in self.terms] + [self.const]
        if not any(values):
            return LinIneq(terms=(), const=Fraction(0), strict=self.strict)
        lcm = 1
        for v in values:
            lcm = lcm * v.denominator // gcd(lcm, v.denominator)
        g = 0
        for v in values:
            g = gcd(g, abs(v.numerator * lcm // v.denominator))
        scale = Fraction(lcm, g if g else 1)
        return LinIneq.make({s: c * scale for s, c in self.terms},
                            const=self.const * scale, strict=self.strict)

    def is_tautology(self) -> bool:
        if self.terms:
            return False
        return self.const < 0 or (self.const == 0 and not self.strict)

    def is_contradiction(self) -> bool:
        if self.terms:
            return False
        return self.const > 0 or (self.const == 0 and self.strict)

    def negation(self) -> "LinIneq":
        return LinIneq.make({s: -c for s, c in self.terms}, const=-self.const,
                            strict=not self.strict)

    def render(self, variables=()) -> str:
        """Human form: variable terms on the left, the rest on the right.

        A pure lower bound (every variable coefficient negative) is
        flipped to read as one, e.g. 'R2 + T > I_XZ1'.
        """
        var_set = set(variables)
        flip = any(s in var_set for s, _ in self.terms) and all(
            c < 0 for s, c in self.terms if s in var_set)
        ineq = LinIneq.make({s: -c for s, c in self.terms}, const=-self.const,
                            strict=self.strict) if flip else self
        lhs = [(s, c) for s, c in ineq.terms if s in var_set]
        rhs = [(s, -c) for s, c in ineq.terms if s not in var_set]
        rhs_const = -ineq.const

        def side(parts, const, force_zero):
            if not parts and (const == 0 or force_zero):
                return "0"
            out = ""
            for i, (s, c) in enumerate(parts):
                mag = abs(c)
                body = s if mag == 1 else f"{mag} {s}"
                if i == 0:
                    out = body if c > 0 else f"-{body}"
                else:
                    out += f" + {body}" if c > 0 else f" - {body}"
            if const != 0:
                sign = "+" if const > 0 else "-"
                if out:
                    out += f" {sign} {abs(const)}"
                else:
                    out = str(const)
            return out or "0"

        if flip:
            rel = ">" if self.strict else ">="
        else:
            rel = "<" if self.strict else "<="
        return f"{side(lhs, 0, True)} {rel} {side(rhs, rhs_const, False)}"


def _prune(ineqs) -> tuple:
    """Drop tautologies and syntactically dominated inequalities.

    Two inequalities with the same normalized coefficient pattern keep
    only the stronger constant side (larger constant; strict beats weak
    at equal constants).  Contradiction facts (no symbols, false) are
    kept: they record an infeasible projection.
    """
    best = {}
    order = []
    for iq in ineqs:
        nq = iq.normalized()
        if nq.is_tautology():
            continue
        key = nq.terms
        score = (nq.const, nq.strict)
        if key not in best:
            best[key] = nq
            order.append(key)
        else:
            cur = best[key]
            if score > (cur.const, cur.strict):
                best[key] = nq
    return tuple(best[k] for k in order)


@dataclass(frozen=True)
class LinIneqSystem:
    """Inequality system over declared rate variables and constant symbols."""

    variables: tuple
    constants: tuple
    inequalities: tuple
    nonneg_constants: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        declared = set(self.variables) | set(self.constants)
        for iq in self.inequalities:
            loose = iq.symbols() - declared
            if loose:
                raise ValueError(f"undeclared symbols in inequality: {sorted(loose)}")
        if not set(self.nonneg_constants) <= set(self.constants):
            raise ValueError("nonneg_constants must be declared constants")

    @classmethod
    def build(cls, variables, constants, inequalities,
              nonneg_constants=None) -> "LinIneqSystem":
        nn = frozenset(constants if nonneg_constants is None else nonneg_constants)
        return cls(variables=tuple(variables), constants=tuple(constants),
                   inequalities=tuple(inequalities), nonneg_constants=nn)

    def replace(self, inequalities) -> "LinIneqSystem":
        return LinIneqSystem(variables=self.variables, constants=self.constants,
                             inequalities=tuple(inequalities),
                             nonneg_constants=self.nonneg_constants)

    def eliminate(self, var: str) -> "LinIneqSystem":
        """Project away one variable by combining its lower and upper bounds.

        Constants are never eliminated here; they stay opaque symbols.
        Only syntactic dominance is pruned; semantic redundancy under
        symbol orderings is left to simplify_with_assumptions.
        """
        if var not in self.variables:
            raise ValueError(f"{var} is not a declared variable")
        lowers, uppers, rest = [], [], []
        for iq in self.inequalities:
            a = iq.coeff(var)
            if a > 0:
                uppers.append(iq)
            elif a < 0:
                lowers.append(iq)
            else:
                rest.append(iq)
        combos = []
        for lo in lowers:
            for up in uppers:
                a_lo = -lo.coeff(var)  # positive
                a_up = up.coeff(var)  # positive
                combos.append(lo.scaled(a_up).plus(up.scaled(a_lo)))
        return LinIneqSystem(
            variables=tuple(v for v in self.variables if v != var),
            constants=self.constants,
            inequalities=_prune(rest + combos),
            nonneg_constants=self.nonneg_constants,
        )

    def substitute(self, symbol: str, coeffs, const=0) -> "LinIneqSystem":
        """Rewrite a symbol as a linear expression of other symbols."""
        new = [iq.substitute(symbol, coeffs, const) for iq in self.inequalities]
        return LinIneqSystem(
            variables=tuple(v for v in self.variables if v != symbol),
            constants=tuple(c for c in self.constants if c != symbol),
            inequalities=_prune(new),
            nonneg_constants=self.nonneg_constants - {symbol},
        )

    def relax_closure(self, slack_symbol=None) -> "LinIneqSystem":
        """Take the vanishing-slack limit: slack := 0, strict becomes weak."""
        sys = self
        if slack_symbol is not None:
            sys = sys.substitute(slack_symbol, {}, 0)
        weak = [LinIneq(terms=iq.terms, const=iq.const, strict=False)
                for iq in sys.inequalities]
        return sys.replace(_prune(weak))

    def _domain_facts(self) -> list:
        return [LinIneq.make({c: -1}) for c in sorted(self.nonneg_constants)]

    def is_feasible(self, extra=()) -> bool:
        """Exact rational satisfiability over all symbols (reals).

        Eliminates every symbol by Fourier-Motzkin (cheapest pair count
        first) and checks the remaining ground facts; nonnegativity of
        declared constants is included.
        """
        facts = _prune(list(self.inequalities) + self._domain_facts() + list(extra))
        symbols = set()
        for iq in facts:
            symbols |= iq.symbols()
        while symbols:
            if any(iq.is_contradiction() for iq in facts):
                return False

            def cost(sym):
                lo = sum(1 for iq in facts if iq.coeff(sym) < 0)
                up = sum(1 for iq in facts if iq.coeff(sym) > 0)
                return (lo * up, sym)

            var = min(symbols, key=cost)
            lowers = [iq for iq in facts if iq.coeff(var) < 0]
            uppers = [iq for iq in facts if iq.coeff(var) > 0]
            rest = [iq for iq in facts if iq.coeff(var) == 0]
            combos = []
            for lo in lowers:
                for up in uppers:
                    combos.append(lo.scaled(up.coeff(var)).plus(up.scaled(-lo.coeff(var))))
            facts = _prune(rest + combos)
            symbols.discard(var)
        return not any(iq.is_contradiction() for iq in facts)

    def implies(self, target: LinIneq, assumptions=()) -> bool:
        """Exact implication: system + assumptions forces the target."""
        return not self.is_feasible(extra=list(assumptions) + [target.negation()])

    def simplify_with_assumptions(self, assumptions=()) -> "LinIneqSystem":
        """Remove inequalities implied by the rest plus the assumptions.

        Assumptions are linear facts over the constant symbols.  Any
        assumption inconsistent with the system (or itself) raises
        ContradictionError.
        """
        assumptions = [a if isinstance(a, LinIneq) else LinIneq.make(a)
                       for a in assumptions]
        for a in assumptions:
            if not self.is_feasible(extra=[a]):
                raise ContradictionError(
                    f"assumption contradicts the system: {a.render(self.variables)}")
        kept = list(_prune(self.inequalities))
        i = 0
        while i < len(kept):
            candidate = kept[i]
            others = kept[:i] + kept[i + 1:]
            if self.replace(others).implies(candidate, assumptions):
                kept.pop(i)
            else:
                i += 1
        return self.replace(kept)

    def instantiate(self, values: dict):
        """Bind every constant to a number and return the numeric RateRegion."""
        from secembed.regions import HalfSpace, RateRegion

        missing = [c for c in self.constants
                   if c not in values and any(iq.coeff(c) != 0 for iq in self.inequalities)]
        if missing:
            raise UnboundConstantError(f"unbound constants: {missing}")
        halfspaces = []
        for iq in self.inequalities:
            coeffs = tuple(float(iq.coeff(v)) for v in self.variables)
            shift = iq.const
            for c in self.constants:
                a = iq.coeff(c)
                if a != 0:
                    shift += a * _q(values[c])
            halfspaces.append(HalfSpace(coeffs=coeffs, bound=float(-shift),
                                        strict=iq.strict))
        return RateRegion(variables=self.variables, halfspaces=tuple(halfspaces))

    def structural_inequalities(self) -> tuple:
        """Inequalities other than plain variable nonnegativity."""
        out = []
        for iq in self.inequalities:
            if len(iq.terms) == 1 and iq.const == 0:
                (sym, c), = iq.terms
                if sym in self.variables and c < 0:
                    continue
            out.append(iq)
        return tuple(out)

    def _sort_key(self, iq: LinIneq):
        return (tuple(iq.coeff(v) for v in self.variables),
                tuple(iq.coeff(c) for c in self.constants), iq.const, iq.strict)

    def pretty(self, aliases=()) -> str:
        """Stable text rendering; aliases rewrite constant groups for display.

        An alias (name, {symbol: coeff, ...}) replaces any occurrence of
        the group scaled by a common rational with the alias name; it
        affects presentation only, never the stored system.
        """
        structural = sorted(self.structural_inequalities(), key=self._sort_key)
        lines = [self._alias_render(iq, aliases) for iq in structural]
        nonneg = [iq for iq in self.inequalities if iq not in structural]
        if nonneg:
            names = sorted(s for iq in nonneg for s in iq.symbols())
            lines.append("with " + ", ".join(f"{s} >= 0" for s in names))
        return "\n".join(lines)

    def _alias_render(self, iq: LinIneq, aliases) -> str:
        coeffs = iq.coeffs
        for name, group in aliases:
            group = {s: _q(c) for s, c in dict(group).items()}
            anchor = next(iter(group))
            while True:
                q = coeffs.get(anchor, Fraction(0)) / group[anchor]
                if q == 0 or any(coeffs.get(s, Fraction(0)) != q * c
                                 for s, c in group.items()):
                    break
                for s, c in group.items():
                    coeffs.pop(s)
                coeffs[name] = coeffs.get(name, Fraction(0)) + q
        shown = LinIneq.make(coeffs, const=iq.const, strict=iq.strict)
        return shown.render(self.variables)

    def to_dict(self) -> dict:
        def frac(x):
            return [x.numerator, x.denominator]

        return {
            "variables": list(self.variables),
            "constants": list(self.constants),
            "nonneg_constants": sorted(self.nonneg_constants),
            "inequalities": [
                {"coeffs": {s: frac(c) for s, c in iq.terms},
                 "const": frac(iq.const),
                 "relation": "<" if iq.strict else "<="}
                for iq in self.inequalities
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LinIneqSystem":
        ineqs = []
        for row in d["inequalities"]:
            coeffs = {s: Fraction(n, den) for s, (n, den) in row["coeffs"].items()}
            n, den = row["const"]
            ineqs.append(LinIneq.make(coeffs, const=Fraction(n, den),
                                      strict=row["relation"] == "<"))
        return cls.build(d["variables"], d["constants"], ineqs,
                         d.get("nonneg_constants"))


def eliminate(system: LinIneqSystem, var: str) -> LinIneqSystem:
    return system.eliminate(var)


def simplify_with_assumptions(system: LinIneqSystem, assumptions=()) -> LinIneqSystem:
    return system.simplify_with_assumptions(assumptions)


def instantiate(system: LinIneqSystem, values: dict):
    return system.instantiate(values)


def nested_binning_constraints() -> LinIneqSystem:
    """Decodability and the two secrecy constraints of the nested-binning scheme.

    Variables: message rates R1, R2 and the pure-randomness rate T.
    Constants: I_XY, I_XZ1, I_XZ2 (mutual informations at the receiver,
    strong eavesdropper, weak eavesdropper).
    """
    v = ("R1", "R2", "T")
    c = ("I_XY", "I_XZ1", "I_XZ2")
    ineqs = [
        LinIneq.at_most({"R1": 1, "R2": 1, "T": 1}, {"I_XY": 1}, strict=True),
        LinIneq.at_most({"I_XZ1": 1}, {"R2": 1, "T": 1}, strict=True),
        LinIneq.at_most({"I_XZ2": 1}, {"T": 1}, strict=True),
        LinIneq.make({"R1": -1}),
        LinIneq.make({"R2": -1}),
        LinIneq.make({"T": -1}),
    ]
    return LinIneqSystem.build(v, c, ineqs)


def derive_nested_binning_region() -> LinIneqSystem:
    """Eliminate the randomness rate and close the region."""
    sys = nested_binning_constraints().eliminate("T")
    return sys.relax_closure().simplify_with_assumptions()


LAYERED_ALIASES = (
    ("I_VY", {"I_VY_U": 1, "I_UY": 1}),
    ("I_VZ2", {"I_VZ2_U": 1, "I_UZ2": 1}),
)


def layered_scheme_constraints() -> LinIneqSystem:
    """Constraints of the layered scheme: rate splitting, superposition,
    nested binning and channel prefixing.

    The low-security rate splits as R2 = R2a + R2b; R2a rides on the
    cloud-center codebook, R2b and T on the satellite codebook.  The
    slack symbol eps is the cloud-codebook oversampling margin.
    """
    v = ("R1", "R2", "R2a", "R2b", "T")
    c = ("I_UY", "I_UZ2", "I_VY_U", "I_VZ1_U", "I_VZ2_U", "eps")
    ineqs = [
        LinIneq.at_most({"R2a": 1, "I_UZ2": 1, "eps": 1}, {"I_UY": 1}, strict=True),
        LinIneq.at_most({"R1": 1, "R2b": 1, "T": 1}, {"I_VY_U": 1}, strict=True),
        LinIneq.at_most({"I_VZ1_U": 1}, {"R2b": 1, "T": 1}, strict=True),
        LinIneq.at_most({"I_VZ2_U": 1}, {"T": 1}, strict=True),
        LinIneq.at_most({"R2": 1}, {"R2a": 1, "R2b": 1}),
        LinIneq.at_most({"R2a": 1, "R2b": 1}, {"R2": 1}),
        LinIneq.make({"R1": -1}),
        LinIneq.make({"R2": -1}),
        LinIneq.make({"R2a": -1}),
        LinIneq.make({"R2b": -1}),
        LinIneq.make({"T": -1}),
    ]
    return LinIneqSystem.build(v, c, ineqs)


def derive_layered_region() -> LinIneqSystem:
    """Eliminate T, R2b, R2a, close the slack, and simplify with the two
    standing facts: the cloud decodes before the weak eavesdropper
    (I_UY >= I_UZ2) and the strong eavesdropper dominates the weak one
    (I_VZ1_U >= I_VZ2_U)."""
    sys = layered_scheme_constraints()
    for var in ("T", "R2b", "R2a"):
        sys = sys.eliminate(var)
    sys = sys.relax_closure(slack_symbol="eps")
    facts = [
        LinIneq.at_most({"I_UZ2": 1}, {"I_UY": 1}),
        LinIneq.at_most({"I_VZ2_U": 1}, {"I_VZ1_U": 1}),
    ]
    return sys.simplify_with_assumptions(facts)
