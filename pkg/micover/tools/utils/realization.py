"""Betti realizations: Euler characteristic and monodromy zeta function.

The zeta function of [mu_n]*L^k is (1 - t^n)^-1 (the regular representation
of Z/n in degree 2k), so the zeta realization of an element of R always lies
in the multiplicative group of products of (1 - t^n)^e.
"""
import logging
import re
from types import MappingProxyType
from typing import Iterable, Mapping

import sympy as sp

from .config import Configuration, Stratum, sorted_ids, validate
from .errors import (
    InvalidConfigurationError, NotPolynomialError, RingParseError, UnrepresentableCoverError,
)
from .motive import check_selection, contribution, meets
from .ring import RingElement


t = sp.Symbol("t")


class CyclotomicRational:
    """prod (1 - t^n)^e_n with integer exponents, canonical (no zero exponents)."""
    __slots__ = ("_exponents",)

    def __init__(self, exponents: Mapping[int, int] | None = None) -> None:
        canonical = {}
        for n, e in (exponents or {}).items():
            if n < 1:
                raise ValueError(f"invalid cyclotomic factor (1-t^{n})")
            if e:
                canonical[int(n)] = int(e)
        self._exponents: Mapping[int, int] = MappingProxyType(dict(sorted(canonical.items())))

    @classmethod
    def one(cls) -> "CyclotomicRational":
        return cls()

    @classmethod
    def factor(cls, n: int, exponent: int = 1) -> "CyclotomicRational":
        return cls({n: exponent})

    @property
    def exponents(self) -> Mapping[int, int]:
        return self._exponents

    def __mul__(self, other: "CyclotomicRational") -> "CyclotomicRational":
        if not isinstance(other, CyclotomicRational):
            return NotImplemented
        merged = dict(self._exponents)
        for n, e in other._exponents.items():
            merged[n] = merged.get(n, 0) + e
        return CyclotomicRational(merged)

    def __truediv__(self, other: "CyclotomicRational") -> "CyclotomicRational":
        if not isinstance(other, CyclotomicRational):
            return NotImplemented
        return self * other ** -1

    def __pow__(self, exponent: int) -> "CyclotomicRational":
        return CyclotomicRational({n: e * exponent for n, e in self._exponents.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclotomicRational):
            return NotImplemented
        return self._exponents == other._exponents

    def __hash__(self) -> int:
        return hash(tuple(self._exponents.items()))

    def __str__(self) -> str:
        if not self._exponents:
            return "1"
        return " ".join(f"({_base(n)})^{e}" for n, e in self._exponents.items())

    def __repr__(self) -> str:
        return f"CyclotomicRational({str(self)!r})"

    def as_fraction(self) -> tuple[sp.Poly, sp.Poly]:
        numerator = sp.Poly(1, t, domain=sp.ZZ)
        denominator = sp.Poly(1, t, domain=sp.ZZ)
        for n, e in self._exponents.items():
            base = sp.Poly(1 - t**n, t, domain=sp.ZZ)
            if e > 0:
                numerator *= base ** e
            else:
                denominator *= base ** -e
        return numerator, denominator

    def as_expr(self) -> sp.Expr:
        numerator, denominator = self.as_fraction()
        return numerator.as_expr() / denominator.as_expr()

    def series(self, degree: int) -> list[int]:
        """Power series coefficients of t^0 ... t^degree."""
        if degree < 0:
            raise ValueError(f"negative series degree {degree}")
        expansion = sp.series(self.as_expr(), t, 0, degree + 1).removeO()
        coefficients = sp.Poly(expansion, t, domain=sp.ZZ).as_dict()
        return [int(coefficients.get((i,), 0)) for i in range(degree + 1)]

    def as_polynomial(self) -> sp.Poly:
        numerator, denominator = self.as_fraction()
        quotient, remainder = numerator.div(denominator)
        if not remainder.is_zero:
            raise NotPolynomialError(f"{self} is not a polynomial")
        return quotient


def _base(n: int) -> str:
    return "1-t" if n == 1 else f"1-t^{n}"


_FACTOR = re.compile(r"\(\s*1\s*-\s*t(?:\s*\^\s*(\d+))?\s*\)\s*\^\s*\(?\s*(-?\d+)\s*\)?")


def parse_cyclotomic(text: str) -> CyclotomicRational:
    source = text.strip()
    if source == "1":
        return CyclotomicRational.one()
    result = CyclotomicRational.one()
    position = 0
    for match in _FACTOR.finditer(source):
        if source[position:match.start()].strip():
            raise RingParseError(f"cannot parse cyclotomic factor near '{source[position:]}'")
        n = int(match.group(1) or 1)
        if n < 1:
            raise RingParseError(f"invalid factor (1-t^{n}) in '{text}'")
        result = result * CyclotomicRational.factor(n, int(match.group(2)))
        position = match.end()
    if position == 0 or source[position:].strip():
        raise RingParseError(f"cannot parse cyclotomic rational '{text}'")
    return result


def euler(x: RingElement) -> int:
    return sum(n * c for (n, _), c in x.terms.items())


def zeta(x: RingElement) -> CyclotomicRational:
    exponents: dict[int, int] = {}
    for (n, _), c in x.terms.items():
        exponents[n] = exponents.get(n, 0) - c
    return CyclotomicRational(exponents)


def _singleton_factor(stratum: Stratum, multiplicities: Mapping[str, int]) -> tuple[int, int]:
    """(|m_i|, chi(E°_i)) of a one-component stratum."""
    (component,) = stratum.components
    return abs(multiplicities[component]), stratum.euler


def _closed_form_zeta(stratum: Stratum, multiplicities: Mapping[str, int]) -> CyclotomicRational:
    if len(stratum.components) != 1 or stratum.euler == 0:
        return CyclotomicRational.one()
    m, chi = _singleton_factor(stratum, multiplicities)
    if m == 0:
        raise UnrepresentableCoverError(stratum.name, "multiplicity 0 in the closed form")
    return CyclotomicRational.factor(m, -chi)


def _closed_form_euler(stratum: Stratum, multiplicities: Mapping[str, int]) -> int:
    if len(stratum.components) != 1:
        return 0
    m, chi = _singleton_factor(stratum, multiplicities)
    return m * chi


def zeta_closed_form(config: Configuration, selection: Iterable[str]) -> CyclotomicRational:
    selected = check_selection(config, selection)
    multiplicities = config.multiplicities
    result = CyclotomicRational.one()
    for cid in sorted_ids(selected):
        stratum = config.strata.get(frozenset({cid}))
        if stratum is not None:
            result = result * _closed_form_zeta(stratum, multiplicities)
    return result


def euler_closed_form(config: Configuration, selection: Iterable[str]) -> int:
    selected = check_selection(config, selection)
    multiplicities = config.multiplicities
    return sum(
        _closed_form_euler(config.strata[frozenset({cid})], multiplicities)
        for cid in sorted_ids(selected)
        if frozenset({cid}) in config.strata
    )


def _realized_strata(config: Configuration, selection: Iterable[str]) -> list[Stratum]:
    diagnostics = validate(config)
    if diagnostics:
        raise InvalidConfigurationError(diagnostics)
    selected = check_selection(config, selection)
    predicate = meets(selected)
    return [s for s in config.ordered_strata() if predicate(s.components)]


def realize_zeta(config: Configuration, selection: Iterable[str]) -> CyclotomicRational:
    """Zeta realization of S^A, stratum by stratum.

    Strata whose cover has no class in R contribute their topological factor.
    """
    strata = _realized_strata(config, selection)
    multiplicities = config.multiplicities
    result = CyclotomicRational.one()
    for stratum in strata:
        try:
            item = contribution(stratum, multiplicities)
        except UnrepresentableCoverError as e:
            logging.debug(f"Using the topological factor for {stratum.name}: {e}")
            result = result * _closed_form_zeta(stratum, multiplicities)
            continue
        if item is not None:
            result = result * zeta(item.term)
    return result


def realize_euler(config: Configuration, selection: Iterable[str]) -> int:
    strata = _realized_strata(config, selection)
    multiplicities = config.multiplicities
    total = 0
    for stratum in strata:
        try:
            item = contribution(stratum, multiplicities)
        except UnrepresentableCoverError as e:
            logging.debug(f"Using the topological Euler characteristic for {stratum.name}: {e}")
            total += _closed_form_euler(stratum, multiplicities)
            continue
        if item is not None:
            total += euler(item.term)
    return total

