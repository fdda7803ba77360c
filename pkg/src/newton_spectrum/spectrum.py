"""Exact Z[Q] arithmetic and the Hodge-spectrum realization of class expressions.

A spectrum is a finite Z-linear combination of rational powers of t.  The
realization is fixed by the generator rules

    [pt] → 1        TorusFactor(r) → (t-1)^r       L^k·G → t^k·Sp(G)
    CyclicOrbit(e) → 1 + t^(1/e) + ... + t^((e-1)/e)

extended multiplicatively over generator products and Z-linearly over
expressions.  Opaque generators cannot be realized; they are returned as
a symbolic remainder and the numeric part is marked partial.  Evaluating
at t = 1 (the "mass") agrees with the compactly-supported Euler
characteristic specialization on opaque-free expressions, which is one of
the standing consistency checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .motivic import ClassExpr, GenKey, OpaqueKey


class SpectrumError(ValueError):
    pass


class SpectrumPoly:
    """Exact map from rational exponents (lowest terms) to integer multiplicities."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Union[Fraction, int], int] | None = None):
        cleaned: dict[Fraction, int] = {}
        for exp, mult in (coeffs or {}).items():
            fexp = Fraction(exp)
            m = int(mult)
            if m:
                cleaned[fexp] = cleaned.get(fexp, 0) + m
                if cleaned[fexp] == 0:
                    del cleaned[fexp]
        object.__setattr__(self, "coeffs", dict(sorted(cleaned.items())))

    def __setattr__(self, name, value):
        raise AttributeError("SpectrumPoly is immutable")

    def __add__(self, other: "SpectrumPoly") -> "SpectrumPoly":
        out = dict(self.coeffs)
        for exp, mult in other.coeffs.items():
            out[exp] = out.get(exp, 0) + mult
        return SpectrumPoly(out)

    def __sub__(self, other: "SpectrumPoly") -> "SpectrumPoly":
        return self + other.scale(-1)

    def __neg__(self) -> "SpectrumPoly":
        return self.scale(-1)

    def scale(self, k: int) -> "SpectrumPoly":
        return SpectrumPoly({e: k * m for e, m in self.coeffs.items()})

    def mul(self, other: "SpectrumPoly") -> "SpectrumPoly":
        out: dict[Fraction, int] = {}
        for e1, m1 in self.coeffs.items():
            for e2, m2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + m1 * m2
        return SpectrumPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, SpectrumPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def total_multiplicity(self) -> int:
        return sum(self.coeffs.values())

    def render(self) -> str:
        """Terms as c*t^(p/q), ascending exponents; '0' for the zero spectrum."""
        if not self.coeffs:
            return "0"
        parts = []
        for exp, mult in self.coeffs.items():
            if exp.denominator == 1:
                power = f"t^({exp.numerator})"
            else:
                power = f"t^({exp.numerator}/{exp.denominator})"
            chunk = f"{abs(mult)}*{power}"
            if not parts:
                parts.append(chunk if mult > 0 else f"-{chunk}")
            else:
                parts.append(f"+ {chunk}" if mult > 0 else f"- {chunk}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"SpectrumPoly({self.render()})"


ONE = SpectrumPoly({Fraction(0): 1})
T = SpectrumPoly({Fraction(1): 1})
T_MINUS_1 = SpectrumPoly({Fraction(1): 1, Fraction(0): -1})


def orbit_spectrum(e: int) -> SpectrumPoly:
    """Σ_{j<e} t^(j/e): the regular character sum of a free cyclic orbit."""
    return SpectrumPoly({Fraction(j, e): 1 for j in range(e)})


def generator_spectrum(key: GenKey) -> SpectrumPoly:
    result = orbit_spectrum(key.orbit)
    for _ in range(key.torus):
        result = result.mul(T_MINUS_1)
    if key.lefschetz:
        result = result.mul(SpectrumPoly({Fraction(key.lefschetz): 1}))
    return result


@dataclass(frozen=True)
class SpectrumResult:
    """Numeric spectrum plus the unrealizable (opaque) remainder."""
    poly: SpectrumPoly
    remainder: tuple[tuple[OpaqueKey, int], ...]
    partial: bool

    def render(self) -> str:
        text = self.poly.render()
        if self.partial:
            rem = " + ".join(f"{c}*Sp{k.describe()}" for k, c in self.remainder)
            return f"{text} [partial; remainder: {rem}]"
        return text


def sp_of_class(x: ClassExpr) -> SpectrumResult:
    """Linear extension of the generator rules; partiality is data, not an error."""
    poly = SpectrumPoly()
    remainder = []
    for key, coeff in x.terms.items():
        if isinstance(key, OpaqueKey):
            remainder.append((key, coeff))
        else:
            poly = poly + generator_spectrum(key).scale(coeff)
    return SpectrumResult(poly, tuple(remainder), bool(remainder))


def mass(s: SpectrumPoly | SpectrumResult) -> int:
    """Evaluation at t = 1: the sum of all multiplicities."""
    if isinstance(s, SpectrumResult):
        if s.partial:
            raise SpectrumError("mass of a partial spectrum is undefined")
        return s.poly.total_multiplicity()
    return s.total_multiplicity()


def euler_specialization(x: ClassExpr) -> int:
    """χ_c specialization: [pt]→1, torus→0, L→1, CyclicOrbit(e)→e, linearly."""
    if x.has_opaque():
        raise SpectrumError("euler specialization undefined with opaque generators")
    total = 0
    for key, coeff in x.terms.items():
        value = key.orbit if key.torus == 0 else 0
        total += coeff * value
    return total
