"""Exact arithmetic in the Z[L]-module spanned by the classes [mu_n].

An element is a finite map (n, k) -> c standing for the sum of c*[mu_n]*L^k.
The symbols multiply by the orbit rule

    [mu_a]*[mu_b] = gcd(a, b) * [mu_lcm(a, b)],

which is the product of two finite cyclic sets with the diagonal action, and
[mu_1] = 1. Elements are immutable and always kept in canonical form (no zero
coefficients), so equality is structural.
"""
import math
import re
from collections import defaultdict
from tokenize import TokenError
from types import MappingProxyType
from typing import Iterable, Mapping, Union

import sympy as sp
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.polyerrors import BasePolynomialError

from .errors import RingParseError


L = sp.Symbol("L")

Basis = tuple[int, int]
Operand = Union["RingElement", int]


class RingElement:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Basis, int] | None = None) -> None:
        canonical: dict[Basis, int] = {}
        for (n, k), coeff in (terms or {}).items():
            if n < 1 or k < 0:
                raise ValueError(f"invalid basis element [mu_{n}]*L^{k}")
            if coeff:
                canonical[(int(n), int(k))] = int(coeff)
        self._terms: Mapping[Basis, int] = MappingProxyType(dict(sorted(canonical.items())))

    @classmethod
    def _accumulate(cls, pairs: Iterable[tuple[Basis, int]]) -> "RingElement":
        acc: dict[Basis, int] = defaultdict(int)
        for key, coeff in pairs:
            acc[key] += coeff
        return cls(acc)

    @classmethod
    def zero(cls) -> "RingElement":
        return cls()

    @classmethod
    def one(cls) -> "RingElement":
        return cls({(1, 0): 1})

    @classmethod
    def lefschetz(cls) -> "RingElement":
        return cls({(1, 1): 1})

    @classmethod
    def mu(cls, n: int) -> "RingElement":
        return cls({(n, 0): 1})

    @classmethod
    def monomial(cls, coeff: int, n: int = 1, k: int = 0) -> "RingElement":
        return cls({(n, k): coeff})

    @property
    def terms(self) -> Mapping[Basis, int]:
        return self._terms

    def mu_orders(self) -> list[int]:
        return sorted({n for n, _ in self._terms})

    def l_part(self, n: int) -> dict[int, int]:
        """Coefficients of the L-polynomial multiplying [mu_n]."""
        return {k: c for (m, k), c in self._terms.items() if m == n}

    def is_polynomial(self) -> bool:
        return all(n == 1 for n, _ in self._terms)

    def to_polynomial(self) -> sp.Poly:
        if not self.is_polynomial():
            raise ValueError(f"{self} has a nontrivial mu-part")
        return l_polynomial(self.l_part(1))

    def _coerce(self, other: Operand) -> "RingElement":
        if isinstance(other, RingElement):
            return other
        if isinstance(other, int):
            return RingElement.monomial(other)
        return NotImplemented

    def __add__(self, other: Operand) -> "RingElement":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return RingElement._accumulate([*self._terms.items(), *rhs._terms.items()])

    __radd__ = __add__

    def __neg__(self) -> "RingElement":
        return RingElement({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: Operand) -> "RingElement":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: Operand) -> "RingElement":
        return (-self) + other

    def __mul__(self, other: Operand) -> "RingElement":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        pairs = []
        for (a, j), c in self._terms.items():
            for (b, k), d in rhs._terms.items():
                pairs.append(((math.lcm(a, b), j + k), c * d * math.gcd(a, b)))
        return RingElement._accumulate(pairs)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "RingElement":
        if exponent < 0:
            raise ValueError("negative powers are not defined in R")
        result = RingElement.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = RingElement.monomial(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"RingElement({render(self)!r})"


def add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def power(a: RingElement, exponent: int) -> RingElement:
    return a ** exponent


def projective_class(r: int) -> RingElement:
    """[P^r] = L^r + ... + L + 1."""
    if r < 0:
        raise ValueError(f"projective space of negative dimension {r}")
    return RingElement({(1, k): 1 for k in range(r + 1)})


def l_polynomial(coefficients: Mapping[int, int]) -> sp.Poly:
    return sp.Poly(sp.Add(*[c * L**k for k, c in coefficients.items()]), L, domain=sp.ZZ)


def polynomial_coefficients(poly: sp.Poly) -> dict[int, int]:
    return {monom[0]: int(coeff) for monom, coeff in poly.terms() if coeff}


def evaluate_at_one(poly: sp.Poly) -> int:
    return int(poly.eval(1))


def from_polynomial(poly: sp.Poly) -> RingElement:
    if poly.gens != (L,):
        raise ValueError(f"expected a polynomial in L, got generators {poly.gens}")
    return RingElement({(1, k): c for k, c in polynomial_coefficients(poly).items()})


_MU_TOKEN = re.compile(r"\[\s*mu_(\d+)\s*\]")
_ALLOWED = re.compile(r"[0-9A-Za-z_+\-*^()\s]*")
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_MU_NAME = re.compile(r"mu_(\d+)")


def parse(text: str) -> RingElement:
    source = _MU_TOKEN.sub(lambda m: f"mu_{m.group(1)}", text)
    if not source.strip():
        raise RingParseError("empty ring element")
    if not _ALLOWED.fullmatch(source):
        raise RingParseError(f"unexpected character in '{text}'")

    symbols: dict[str, sp.Symbol] = {"L": L}
    orders: dict[str, int] = {}
    for name in _IDENTIFIER.findall(source):
        if name == "L":
            continue
        match = _MU_NAME.fullmatch(name)
        if match is None or int(match.group(1)) < 1:
            raise RingParseError(f"unknown symbol '{name}' in '{text}'")
        symbols[name] = sp.Symbol(name)
        orders[name] = int(match.group(1))

    gens = [L] + [symbols[name] for name in sorted(orders)]
    try:
        expr = parse_expr(source, local_dict=symbols,
                          transformations=standard_transformations + (convert_xor,))
        poly = sp.Poly(sp.expand(expr), *gens, domain=sp.ZZ)
    except (SyntaxError, TokenError, TypeError, ValueError,
            sp.SympifyError, BasePolynomialError) as e:
        raise RingParseError(f"cannot parse ring element '{text}': {e}") from e

    result = RingElement.zero()
    for monom, coeff in poly.terms():
        term = RingElement.monomial(int(coeff), 1, monom[0])
        for gen, exponent in zip(gens[1:], monom[1:]):
            if exponent:
                term = term * RingElement.mu(orders[gen.name]) ** exponent
        result = result + term
    return result


def _monomial_text(coeff: int, k: int) -> str:
    if k == 0:
        return str(coeff)
    power_text = "L" if k == 1 else f"L^{k}"
    return power_text if coeff == 1 else f"{coeff}*{power_text}"


def _polynomial_text(coefficients: Mapping[int, int]) -> str:
    text = ""
    for k in sorted(coefficients, reverse=True):
        c = coefficients[k]
        body = _monomial_text(abs(c), k)
        if not text:
            text = f"-{body}" if c < 0 else body
        else:
            text += f"-{body}" if c < 0 else f"+{body}"
    return text


def render(x: RingElement) -> str:
    chunks: list[tuple[bool, str]] = []

    trivial = x.l_part(1)
    for k in sorted(trivial, reverse=True):
        chunks.append((trivial[k] < 0, _monomial_text(abs(trivial[k]), k)))

    for n in x.mu_orders():
        if n == 1:
            continue
        part = x.l_part(n)
        symbol = f"[mu_{n}]"
        if len(part) == 1:
            ((k, c),) = part.items()
            body = symbol if k == 0 else f"{symbol}*{_monomial_text(1, k)}"
            if abs(c) != 1:
                body = f"{abs(c)}*{body}"
            chunks.append((c < 0, body))
        else:
            negative = part[max(part)] < 0
            if negative:
                part = {k: -c for k, c in part.items()}
            chunks.append((negative, f"{symbol}*({_polynomial_text(part)})"))

    if not chunks:
        return "0"
    negative, body = chunks[0]
    text = f"-{body}" if negative else body
    for negative, body in chunks[1:]:
        text += f" - {body}" if negative else f" + {body}"
    return text
