"""Exact multivariate Laurent polynomials over Q.

A polynomial is a mapping from integer exponent vectors (one entry per
variable, negative entries allowed) to nonzero rational coefficients:

    x + y + x^-1*y^-1   →   {(1,0): 1, (0,1): 1, (-1,-1): 1}

Coefficients are fractions.Fraction, so every downstream decision
(support, hull, nondegeneracy) is exact.  Values are immutable after
construction and safe to share.

Term order is graded-lexicographic, descending, which fixes the canonical
textual form: parse(format(p)) == p always holds.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

ExponentVector = tuple[int, ...]

#: exponents are confined to 63-bit magnitude; beyond this is a hard error
MAX_EXPONENT = 2**63 - 1


class LaurentError(ValueError):
    pass


class ExponentRangeError(LaurentError):
    """Exponent magnitude exceeded the 63-bit bound."""


class ParseError(LaurentError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariableError(ParseError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown variable '{name}'", position)
        self.name = name


def _check_exponent(e: int) -> int:
    if abs(e) > MAX_EXPONENT:
        raise ExponentRangeError(f"exponent {e} exceeds the 63-bit bound")
    return e


def _grlex_key(exp: ExponentVector) -> tuple:
    return (sum(exp), exp)


class LaurentPoly:
    """Immutable Laurent polynomial attached to an ordered variable list."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str],
                 terms: Mapping[Sequence[int], Union[int, Fraction]]):
        vars_t = tuple(variables)
        if len(set(vars_t)) != len(vars_t):
            raise LaurentError("variable names must be distinct")
        cleaned: dict[ExponentVector, Fraction] = {}
        for exp, coeff in terms.items():
            exp_t = tuple(int(e) for e in exp)
            if len(exp_t) != len(vars_t):
                raise LaurentError(
                    f"exponent vector {exp_t} has length {len(exp_t)}, "
                    f"expected {len(vars_t)}")
            for e in exp_t:
                _check_exponent(e)
            c = Fraction(coeff)
            if c != 0:
                cleaned[exp_t] = cleaned.get(exp_t, Fraction(0)) + c
                if cleaned[exp_t] == 0:
                    del cleaned[exp_t]
        object.__setattr__(self, "variables", vars_t)
        object.__setattr__(self, "terms", dict(
            sorted(cleaned.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @property
    def dimension(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise LaurentError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def sorted_terms(self) -> list[tuple[ExponentVector, Fraction]]:
        return list(self.terms.items())

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentPoly)
                and self.variables == other.variables
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.variables, tuple(self.terms.items())))

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format()!r}, vars={','.join(self.variables)})"

    def format(self) -> str:
        """Canonical text form; parses back to an equal polynomial."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exp, coeff in self.sorted_terms():
            factors = [
                var if e == 1 else f"{var}^{e}"
                for var, e in zip(self.variables, exp) if e != 0
            ]
            mono = "*".join(factors)
            abs_c = abs(coeff)
            if not mono:
                body = str(abs_c)
            elif abs_c == 1:
                body = mono
            else:
                body = f"{abs_c}*{mono}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)


def support(f: LaurentPoly) -> frozenset[ExponentVector]:
    """Exponent vectors carrying a nonzero coefficient."""
    return frozenset(f.terms)


def face_restriction(f: LaurentPoly, face) -> LaurentPoly:
    """Keep exactly the terms of f supported on the given polytope face."""
    from .polytope import Face  # local import to avoid a cycle

    if not isinstance(face, Face):
        raise LaurentError("face_restriction expects a Face")
    if face.owner_key != frozenset(support(f) | {(0,) * f.dimension}):
        raise LaurentError("face does not belong to this polynomial's polytope")
    member = set(face.points)
    return LaurentPoly(f.variables,
                       {exp: c for exp, c in f.terms.items() if exp in member})


class StratumConstant:
    """Marker for a stratum restriction that degenerated to a constant."""

    __slots__ = ("value",)

    def __init__(self, value: Fraction):
        self.value = Fraction(value)

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def __repr__(self) -> str:
        return f"StratumConstant({self.value})"

    def __eq__(self, other) -> bool:
        return isinstance(other, StratumConstant) and self.value == other.value


def stratum_restriction(f: LaurentPoly, zeroed: Iterable[str]
                        ) -> LaurentPoly | StratumConstant:
    """Substitute 0 for the listed variables (affine mode only).

    Terms with a positive exponent in a zeroed variable drop out; a negative
    exponent in a zeroed variable is illegal (the substitution would not be
    defined).  The result lives over the remaining variables, or is a
    StratumConstant marker when no variable survives with a nonzero exponent.
    """
    zeroed_set = set(zeroed)
    unknown = zeroed_set - set(f.variables)
    if unknown:
        raise LaurentError(f"cannot zero unknown variables {sorted(unknown)}")
    zero_idx = [i for i, v in enumerate(f.variables) if v in zeroed_set]
    keep_idx = [i for i, v in enumerate(f.variables) if v not in zeroed_set]
    for exp in f.terms:
        if any(exp[i] < 0 for i in zero_idx):
            raise LaurentError(
                "negative exponent in a zeroed variable: Laurent input is "
                "illegal in affine mode")
    new_terms: dict[tuple[int, ...], Fraction] = {}
    for exp, coeff in f.terms.items():
        if any(exp[i] > 0 for i in zero_idx):
            continue
        new_exp = tuple(exp[i] for i in keep_idx)
        new_terms[new_exp] = new_terms.get(new_exp, Fraction(0)) + coeff
    reduced = LaurentPoly([f.variables[i] for i in keep_idx], new_terms)
    if reduced.dimension == 0 or reduced.is_constant():
        return StratumConstant(reduced.constant_value())
    return reduced


# ---------------------------------------------------------------------------
# Parser
#
# expr   := term (('+'|'-') term)*
# term   := [coeff '*'?] factor ('*' factor)*  |  coeff
# factor := var ('^' int)?
# coeff  := int ['/' int]
# int    := ['-'] digits, exponents also as '(' ['-'] digits ')'

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_pos = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[bad_pos]!r}", bad_pos)
        if m.group("num"):
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = tuple(variables)
        self.var_index = {v: i for i, v in enumerate(self.variables)}

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.next()
        if kind != "op" or value != op:
            raise ParseError(f"expected '{op}'", pos)

    def parse(self) -> LaurentPoly:
        terms: dict[tuple[int, ...], Fraction] = {}
        first = True
        while True:
            kind, value, pos = self.peek()
            if kind is None:
                if first:
                    raise ParseError("empty polynomial", pos)
                break
            sign = 1
            if kind == "op" and value in "+-":
                if first and value == "+":
                    pass
                sign = -1 if value == "-" else 1
                self.next()
            elif not first:
                raise ParseError("expected '+' or '-' between terms", pos)
            exp, coeff = self.parse_term()
            coeff *= sign
            terms[exp] = terms.get(exp, Fraction(0)) + coeff
            first = False
        return LaurentPoly(self.variables, terms)

    def parse_term(self) -> tuple[tuple[int, ...], Fraction]:
        coeff = Fraction(1)
        exp = [0] * len(self.variables)
        kind, value, pos = self.peek()
        saw_coeff = False
        if kind == "num":
            self.next()
            num = int(value)
            den = 1
            kind2, value2, _ = self.peek()
            if kind2 == "op" and value2 == "/":
                self.next()
                dk, dv, dp = self.next()
                if dk != "num":
                    raise ParseError("expected denominator", dp)
                den = int(dv)
                if den == 0:
                    raise ParseError("zero denominator", dp)
            coeff = Fraction(num, den)
            saw_coeff = True
            kind3, value3, _ = self.peek()
            if kind3 == "op" and value3 == "*":
                self.next()
            elif kind3 != "name":
                # bare constant term
                return tuple(exp), coeff
        saw_factor = False
        while True:
            kind, value, pos = self.peek()
            if kind == "name":
                self.next()
                if value not in self.var_index:
                    raise UnknownVariableError(value, pos)
                e = self.parse_exponent()
                exp[self.var_index[value]] += e
                saw_factor = True
                kind2, value2, _ = self.peek()
                if kind2 == "op" and value2 == "*":
                    self.next()
                    continue
                break
            if not saw_factor:
                raise ParseError("expected a variable or coefficient", pos)
            break
        if not saw_factor and not saw_coeff:
            kind, _, pos = self.peek()
            raise ParseError("expected a term", pos)
        for e in exp:
            _check_exponent(e)
        return tuple(exp), coeff

    def parse_exponent(self) -> int:
        kind, value, pos = self.peek()
        if not (kind == "op" and value == "^"):
            return 1
        self.next()
        kind, value, pos = self.peek()
        parenthesised = kind == "op" and value == "("
        if parenthesised:
            self.next()
            kind, value, pos = self.peek()
        sign = 1
        if kind == "op" and value == "-":
            sign = -1
            self.next()
            kind, value, pos = self.peek()
        if kind != "num":
            raise ParseError("expected integer exponent", pos)
        self.next()
        if parenthesised:
            self.expect_op(")")
        return _check_exponent(sign * int(value))


def parse_laurent(text: str, variables: Sequence[str]) -> LaurentPoly:
    """Parse the textual grammar into a canonical LaurentPoly.

    Raises ParseError (with position), UnknownVariableError, or
    ExponentRangeError.  A textual zero ("x - x") parses to the zero
    polynomial; rejecting it is the caller's concern.
    """
    parser = _Parser(text, variables)
    poly = parser.parse()
    kind, _, pos = parser.peek()
    if kind is not None:
        raise ParseError("trailing input", pos)
    return poly
