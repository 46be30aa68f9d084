"""Exact scalar arithmetic underlying every algebra in the package.

Three kinds of coefficient field are supported:

* ``RationalFunctionField(variables)``: fractions of multivariate Laurent
  polynomials over Q, kept in a unique canonical form,
* ``Rationals()``: plain ``fractions.Fraction`` values,
* ``PrimeField(p)``: integers modulo a prime.

Canonical form of a rational function: numerator and denominator share no
non-unit common factor, the denominator is an ordinary polynomial (no
negative exponents, not divisible by any variable) with coprime integer
coefficients and positive leading coefficient under graded-lexicographic
order.  A pure-monomial denominator is a unit and gets absorbed into the
numerator, so "denominator 1" is the common case and equality of values is
plain structural comparison.

Laurent polynomials are stored sparsely as ``{exponent tuple: Fraction}``.
For gcd purposes every Laurent polynomial factors uniquely as
(monomial unit) * (ordinary polynomial); gcds are computed on the ordinary
parts by a primitive pseudo-remainder sequence, one variable at a time.

Everything here is immutable after construction and all operations are pure,
so values can be shared freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union


class CoefficientError(ValueError):
    """Base class for scalar-arithmetic errors."""


class ContextMismatchError(CoefficientError):
    """Operands belong to different coefficient fields."""


class SpecializationError(CoefficientError):
    """A substitution hit a vanishing denominator or an unassigned variable."""


Exponents = tuple[int, ...]


def _grlex_key(exps: Exponents) -> tuple[int, Exponents]:
    return (sum(exps), exps)


class LaurentPoly:
    """A multivariate Laurent polynomial with Fraction coefficients.

    ``variables`` is the fixed, ordered tuple of variable names; every
    exponent tuple has that length.  No stored coefficient is zero.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exponents, Fraction]):
        vs = tuple(variables)
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in terms.items():
            if not isinstance(coeff, Fraction):
                coeff = Fraction(coeff)
            if coeff:
                e = tuple(exps)
                if len(e) != len(vs):
                    raise CoefficientError(
                        f"exponent tuple {e} does not match variables {vs}"
                    )
                clean[e] = coeff
        self.variables = vs
        self.terms = clean
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str]) -> LaurentPoly:
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Iterable[str], value) -> LaurentPoly:
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): Fraction(value)})

    @classmethod
    def variable(cls, variables: Iterable[str], name: str, power: int = 1) -> LaurentPoly:
        vs = tuple(variables)
        if name not in vs:
            raise CoefficientError(f"unknown variable {name!r}; have {vs}")
        exps = tuple(power if v == name else 0 for v in vs)
        return cls(vs, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, variables: Iterable[str], exps: Exponents, coeff=1) -> LaurentPoly:
        return cls(variables, {tuple(exps): Fraction(coeff)})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise CoefficientError(f"{self.render()} is not constant")
        return next(iter(self.terms.values()))

    def is_one(self) -> bool:
        return self.is_constant() and self.constant_value() == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_ordinary(self) -> bool:
        """True when no exponent is negative."""
        return all(e >= 0 for exps in self.terms for e in exps)

    # -- structure ---------------------------------------------------------

    def leading(self) -> tuple[Exponents, Fraction]:
        """Leading (exponents, coefficient) under graded-lex order."""
        if not self.terms:
            raise CoefficientError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def split_unit(self) -> tuple[Exponents, LaurentPoly]:
        """Factor as monomial * ordinary where the ordinary part touches
        exponent 0 in every variable."""
        if not self.terms:
            return (0,) * len(self.variables), self
        mins = tuple(
            min(exps[i] for exps in self.terms) for i in range(len(self.variables))
        )
        if not any(mins):
            return mins, self
        shifted = {
            tuple(e - m for e, m in zip(exps, mins)): c for exps, c in self.terms.items()
        }
        return mins, LaurentPoly(self.variables, shifted)

    def content(self) -> Fraction:
        """The positive rational c with self/c having coprime integer
        coefficients.  Zero polynomial has content 1."""
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return -1
        return max(exps[index] for exps in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: LaurentPoly) -> None:
        if self.variables != other.variables:
            raise ContextMismatchError(
                f"variable mismatch: {self.variables} vs {other.variables}"
            )

    def __add__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, 0) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return LaurentPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        return self + (-other if isinstance(other, LaurentPoly) else -Fraction(other))

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(other))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        terms: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return LaurentPoly(self.variables, terms)

    __rmul__ = __mul__

    def scale(self, factor: Fraction) -> LaurentPoly:
        if not factor:
            return LaurentPoly.zero(self.variables)
        return LaurentPoly(self.variables, {e: c * factor for e, c in self.terms.items()})

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            # Only monomials are units here.
            if not self.is_monomial():
                raise CoefficientError("negative power of a non-monomial polynomial")
            exps, coeff = next(iter(self.terms.items()))
            return LaurentPoly(
                self.variables, {tuple(e * k for e in exps): Fraction(1) / coeff ** (-k)}
            )
        result = LaurentPoly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # -- evaluation --------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, object], field: Field):
        """Image under the ring homomorphism sending each variable to the
        given field element.  Negative exponents require the assigned value
        to be invertible."""
        total = field.zero()
        for exps, coeff in self.terms.items():
            val = field.from_fraction(coeff)
            for name, e in zip(self.variables, exps):
                if e == 0:
                    continue
                if name not in assignment:
                    raise SpecializationError(f"variable {name!r} is not assigned")
                val = val * _scalar_power(assignment[name], e)
            total = total + val
        return total

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for exps in sorted(self.terms, key=_grlex_key, reverse=True):
            coeff = self.terms[exps]
            factors = []
            for name, e in zip(self.variables, exps):
                if e == 0:
                    continue
                factors.append(name if e == 1 else f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                piece = str(coeff)
            elif coeff == 1:
                piece = mono
            elif coeff == -1:
                piece = "-" + mono
            else:
                piece = f"{coeff}*{mono}"
            if pieces and not piece.startswith("-"):
                pieces.append("+" + piece)
            else:
                pieces.append(piece)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()!r})"


def _scalar_power(value, k: int):
    """value ** k for any supported scalar, allowing negative k."""
    if k >= 0:
        return value ** k
    inv = 1 / value
    return inv ** (-k)


# -- ordinary-polynomial gcd machinery ---------------------------------------
#
# All helpers below require ordinary (nonnegative-exponent) operands.  They
# return polynomials normalized to coprime integer coefficients with a
# positive graded-lex leading coefficient, which makes gcds unique.


def poly_divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact division of ordinary polynomials; raises if b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return a
    variables = a.variables
    lead_b, lcb = b.leading()
    rem = dict(a.terms)
    quo: dict[Exponents, Fraction] = {}
    while rem:
        exps = max(rem, key=_grlex_key)
        coeff = rem[exps]
        qe = tuple(e - f for e, f in zip(exps, lead_b))
        if any(e < 0 for e in qe):
            raise CoefficientError("inexact polynomial division")
        qc = coeff / lcb
        quo[qe] = qc
        for be, bc in b.terms.items():
            te = tuple(x + y for x, y in zip(qe, be))
            s = rem.get(te, 0) - qc * bc
            if s:
                rem[te] = s
            else:
                rem.pop(te, None)
    return LaurentPoly(variables, quo)


def _normalize_poly(p: LaurentPoly) -> LaurentPoly:
    """Scale to coprime integer coefficients, positive graded-lex lead."""
    if p.is_zero():
        return p
    c = p.content()
    if p.leading()[1] < 0:
        c = -c
    return p.scale(1 / c)


def _univariate_view(p: LaurentPoly, index: int) -> dict[int, LaurentPoly]:
    """View p as a polynomial in variable #index with polynomial coefficients
    (the coefficients keep the full exponent tuples, with entry #index zeroed)."""
    out: dict[int, dict[Exponents, Fraction]] = {}
    for exps, coeff in p.terms.items():
        d = exps[index]
        rest = exps[:index] + (0,) + exps[index + 1 :]
        out.setdefault(d, {})[rest] = coeff
    return {d: LaurentPoly(p.variables, t) for d, t in out.items()}


def _from_univariate(coeffs: Mapping[int, LaurentPoly], index: int, variables) -> LaurentPoly:
    terms: dict[Exponents, Fraction] = {}
    for d, poly in coeffs.items():
        for exps, coeff in poly.terms.items():
            e = exps[:index] + (d,) + exps[index + 1 :]
            terms[e] = terms.get(e, Fraction(0)) + coeff
    return LaurentPoly(variables, terms)


def _content_and_primitive(p: LaurentPoly, index: int) -> tuple[LaurentPoly, LaurentPoly]:
    view = _univariate_view(p, index)
    content = LaurentPoly.zero(p.variables)
    for poly in view.values():
        content = poly_gcd(content, poly)
    return content, poly_divexact(p, content)


def _prem(f: LaurentPoly, g: LaurentPoly, index: int) -> LaurentPoly:
    """Pseudo-remainder of f by g with respect to variable #index.

    The rational content of the intermediate remainders is stripped after
    every elimination step; it is a unit, and keeping it would make the
    Fraction coefficients grow exponentially along the remainder sequence.
    """
    dg = g.degree_in(index)
    lcg = _univariate_view(g, index)[dg]
    shift_one = [0] * len(f.variables)
    while not f.is_zero():
        df = f.degree_in(index)
        if df < dg:
            break
        lcf = _univariate_view(f, index)[df]
        shift = shift_one[:]
        shift[index] = df - dg
        mono = LaurentPoly.monomial(f.variables, tuple(shift))
        f = lcg * f - lcf * mono * g
        c = f.content()
        if c != 1:
            f = f.scale(1 / c)
    return f


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd of ordinary polynomials, normalized; gcd(0, p) = normalized p."""
    if a.is_zero():
        return _normalize_poly(b)
    if b.is_zero():
        return _normalize_poly(a)
    if a.is_constant() or b.is_constant():
        return LaurentPoly.constant(a.variables, 1)
    index = max(
        i
        for i in range(len(a.variables))
        if a.degree_in(i) > 0 or b.degree_in(i) > 0
    )
    ca, pa = _content_and_primitive(a, index)
    cb, pb = _content_and_primitive(b, index)
    cg = poly_gcd(ca, cb)
    f, g = pa, pb
    if f.degree_in(index) < g.degree_in(index):
        f, g = g, f
    while not g.is_zero():
        r = _prem(f, g, index)
        if r.is_zero():
            f, g = g, r
        else:
            f, g = g, _content_and_primitive(r, index)[1]
    if f.degree_in(index) > 0:
        f = _content_and_primitive(f, index)[1]
    else:
        # The inputs were coprime in the main variable; the primitive parts
        # contribute nothing beyond the content gcd.
        f = LaurentPoly.constant(a.variables, 1)
    return _normalize_poly(cg * f)


def laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd of Laurent polynomials up to units: the gcd of ordinary parts."""
    _, pa = a.split_unit()
    _, pb = b.split_unit()
    return poly_gcd(pa, pb)


# -- rational functions -------------------------------------------------------


class RationalFunction:
    """A fraction of Laurent polynomials in canonical form.

    Do not call the constructor directly with un-normalized parts; use
    :func:`canonicalize` or the classmethod constructors.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        self.num = num
        self.den = den
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_poly(cls, num: LaurentPoly) -> RationalFunction:
        return cls(num, LaurentPoly.constant(num.variables, 1))

    @classmethod
    def constant(cls, variables: Iterable[str], value) -> RationalFunction:
        return cls.from_poly(LaurentPoly.constant(variables, value))

    @classmethod
    def variable(cls, variables: Iterable[str], name: str, power: int = 1) -> RationalFunction:
        return cls.from_poly(LaurentPoly.variable(variables, name, power))

    @property
    def variables(self) -> tuple[str, ...]:
        return self.num.variables

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def as_laurent(self) -> LaurentPoly:
        if not self.den.is_one():
            raise CoefficientError(f"{self.render()} is not a Laurent polynomial")
        return self.num

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise CoefficientError(f"{self.render()} is not constant")
        return self.num.constant_value()

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> RationalFunction | None:
        if isinstance(other, RationalFunction):
            if other.variables != self.variables:
                raise ContextMismatchError(
                    f"variable mismatch: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(self.variables, other)
        return None

    def __add__(self, other) -> RationalFunction:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return RationalFunction(self.num + o.num, self.den)
        if self.den == o.den:
            return canonicalize(self.num + o.num, self.den)
        return canonicalize(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> RationalFunction:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> RationalFunction:
        return (-self) + other

    def __mul__(self, other) -> RationalFunction:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return RationalFunction(self.num * o.num, self.den)
        return canonicalize(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def invert(self) -> RationalFunction:
        if self.num.is_zero():
            raise ZeroDivisionError("inverting zero")
        return canonicalize(self.den, self.num)

    def __truediv__(self, other) -> RationalFunction:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.invert()

    def __rtruediv__(self, other) -> RationalFunction:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.invert()

    def __pow__(self, k: int) -> RationalFunction:
        if k < 0:
            return self.invert() ** (-k)
        result = RationalFunction.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            if k > 1:
                base = base * base
            k >>= 1
        return result

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        if self.den.is_one():
            return self.num.render()
        return f"{self.num.render()} / {self.den.render()}"

    def __repr__(self) -> str:
        return f"RationalFunction({self.render()!r})"


def canonicalize(num: LaurentPoly, den: LaurentPoly) -> RationalFunction:
    """Reduce a fraction of Laurent polynomials to canonical form.

    The gcd of the ordinary parts is removed, any unit (monomial) part of the
    denominator migrates into the numerator, and the result is scaled so the
    denominator has coprime integer coefficients with a positive graded-lex
    leading coefficient.  Idempotent by construction.
    """
    if num.variables != den.variables:
        raise ContextMismatchError("numerator and denominator variables differ")
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    variables = num.variables
    one = LaurentPoly.constant(variables, 1)
    if num.is_zero():
        return RationalFunction(num, one)
    unit_n, pn = num.split_unit()
    unit_d, pd = den.split_unit()
    g = poly_gcd(pn, pd)
    if not g.is_one():
        pn = poly_divexact(pn, g)
        pd = poly_divexact(pd, g)
    c = pd.content()
    if pd.leading()[1] < 0:
        c = -c
    if c != 1:
        pd = pd.scale(1 / c)
    shift = tuple(a - b for a, b in zip(unit_n, unit_d))
    new_num = LaurentPoly(
        variables,
        {
            tuple(e + s for e, s in zip(exps, shift)): coeff / c
            for exps, coeff in pn.terms.items()
        },
    )
    if pd.is_one():
        return RationalFunction(new_num, one)
    return RationalFunction(new_num, pd)


# -- prime fields -------------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeFieldElement:
    """An element of F_p with the usual operator interface."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> PrimeFieldElement | None:
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ContextMismatchError(f"mixed characteristics {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return PrimeFieldElement(other, self.p)
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise SpecializationError(
                    f"rational {other} has no image in F_{self.p}"
                )
            return PrimeFieldElement(
                other.numerator * pow(other.denominator, -1, self.p), self.p
            )
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.value + o.value, self.p)

    __radd__ = __add__

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.value - o.value, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return PrimeFieldElement(self.value * pow(o.value, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            if self.value == 0:
                raise ZeroDivisionError(f"inverting zero in F_{self.p}")
            return PrimeFieldElement(pow(self.value, k, self.p), self.p)
        return PrimeFieldElement(pow(self.value, k, self.p), self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __repr__(self) -> str:
        return f"PrimeFieldElement({self.value}, p={self.p})"


# -- fields -------------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunctionField:
    """The field Q(variables) of rational functions."""

    variables: tuple[str, ...]

    def __post_init__(self):
        if not self.variables:
            raise CoefficientError("a rational function field needs variables")
        if len(set(self.variables)) != len(self.variables):
            raise CoefficientError(f"duplicate variables in {self.variables}")

    def zero(self) -> RationalFunction:
        return RationalFunction.constant(self.variables, 0)

    def one(self) -> RationalFunction:
        return RationalFunction.constant(self.variables, 1)

    def from_fraction(self, value) -> RationalFunction:
        return RationalFunction.constant(self.variables, Fraction(value))

    from_int = from_fraction

    def variable(self, name: str) -> RationalFunction:
        return RationalFunction.variable(self.variables, name)

    def coerce(self, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            if x.variables != self.variables:
                raise ContextMismatchError(
                    f"value over {x.variables} does not live in Q{self.variables}"
                )
            return x
        if isinstance(x, LaurentPoly):
            if x.variables != self.variables:
                raise ContextMismatchError(
                    f"value over {x.variables} does not live in Q{self.variables}"
                )
            return RationalFunction.from_poly(x)
        if isinstance(x, (int, Fraction)):
            return self.from_fraction(x)
        raise ContextMismatchError(f"cannot coerce {x!r} into Q{self.variables}")

    def render(self, x) -> str:
        return self.coerce(x).render()

    def parse(self, text: str) -> RationalFunction:
        return parse_scalar(text, self)

    def describe(self) -> str:
        return "Q(" + ",".join(self.variables) + ")"


@dataclass(frozen=True)
class Rationals:
    """The field Q, realized as ``fractions.Fraction``."""

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_fraction(self, value) -> Fraction:
        return Fraction(value)

    from_int = from_fraction

    def coerce(self, x) -> Fraction:
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise ContextMismatchError(f"cannot coerce {x!r} into Q")

    def render(self, x) -> str:
        return str(Fraction(x))

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise CoefficientError(f"cannot parse rational {text!r}") from exc

    def describe(self) -> str:
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for a prime p."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise CoefficientError(f"{self.p} is not prime")

    def zero(self) -> PrimeFieldElement:
        return PrimeFieldElement(0, self.p)

    def one(self) -> PrimeFieldElement:
        return PrimeFieldElement(1, self.p)

    def from_fraction(self, value) -> PrimeFieldElement:
        value = Fraction(value)
        if value.denominator % self.p == 0:
            raise SpecializationError(f"rational {value} has no image in F_{self.p}")
        return PrimeFieldElement(
            value.numerator * pow(value.denominator, -1, self.p), self.p
        )

    from_int = from_fraction

    def coerce(self, x) -> PrimeFieldElement:
        if isinstance(x, PrimeFieldElement):
            if x.p != self.p:
                raise ContextMismatchError(
                    f"element of F_{x.p} does not live in F_{self.p}"
                )
            return x
        if isinstance(x, (int, Fraction)):
            return self.from_fraction(x)
        raise ContextMismatchError(f"cannot coerce {x!r} into F_{self.p}")

    def render(self, x) -> str:
        return str(self.coerce(x).value)

    def parse(self, text: str) -> PrimeFieldElement:
        try:
            return PrimeFieldElement(int(text.strip()), self.p)
        except ValueError as exc:
            raise CoefficientError(f"cannot parse F_{self.p} element {text!r}") from exc

    def describe(self) -> str:
        return f"F_{self.p}"


Field = Union[RationalFunctionField, Rationals, PrimeField]


# -- field contexts -----------------------------------------------------------


@dataclass(frozen=True)
class FieldContext:
    """A coefficient field together with the two unit parameters of the
    quadratic relation.  ``delta`` is the extra-component factor
    (1 + q1*q2)/(q1 + q2), defined only when q1 + q2 is a unit."""

    field: Field
    q1: object
    q2: object

    def __post_init__(self):
        q1 = self.field.coerce(self.q1)
        q2 = self.field.coerce(self.q2)
        object.__setattr__(self, "q1", q1)
        object.__setattr__(self, "q2", q2)
        if not q1 or not q2:
            raise CoefficientError("q1 and q2 must be units")

    @property
    def q_sum(self):
        return self.q1 + self.q2

    @property
    def q_prod(self):
        return self.q1 * self.q2

    def delta(self):
        s = self.q_sum
        if not s:
            raise CoefficientError("q1 + q2 is not a unit in this context")
        return (self.field.one() + self.q_prod) / s

    def zero(self):
        return self.field.zero()

    def one(self):
        return self.field.one()

    def describe(self) -> str:
        return (
            f"{self.field.describe()} with q1={self.field.render(self.q1)}, "
            f"q2={self.field.render(self.q2)}"
        )


def generic_field_context() -> FieldContext:
    """Q(q1, q2) with the parameters as free variables."""
    field = RationalFunctionField(("q1", "q2"))
    return FieldContext(field, field.variable("q1"), field.variable("q2"))


def one_parameter_context(field: Field, q_value) -> FieldContext:
    """The one-parameter convention (q1, q2) = (-1, q)."""
    return FieldContext(field, field.from_int(-1), field.coerce(q_value))


def generic_one_parameter_context() -> FieldContext:
    field = RationalFunctionField(("q",))
    return one_parameter_context(field, field.variable("q"))


# -- specialization -----------------------------------------------------------


def specialize(x, assignment: Mapping[str, object], target: Field):
    """Apply the ring homomorphism determined by ``assignment`` to x.

    Works on Laurent polynomials, rational functions, Fractions and prime
    field elements.  Raises :class:`SpecializationError` when the denominator
    of a rational function vanishes under the assignment, or when a needed
    variable is missing.
    """
    if isinstance(x, RationalFunction):
        num = x.num.evaluate(assignment, target)
        den = x.den.evaluate(assignment, target)
        if not den:
            raise SpecializationError(
                f"denominator {x.den.render()} vanishes under the assignment"
            )
        return num / den
    if isinstance(x, LaurentPoly):
        return x.evaluate(assignment, target)
    if isinstance(x, (int, Fraction)):
        return target.from_fraction(Fraction(x))
    if isinstance(x, PrimeFieldElement):
        return target.coerce(x)
    raise CoefficientError(f"cannot specialize {x!r}")


# -- the e of a parameter -----------------------------------------------------


def quantum_e(q) -> int | float:
    """Smallest e >= 1 with 1 + q + ... + q^(e-1) = 0, or ``math.inf``.

    Over characteristic zero the partial geometric sums vanish only for
    q = -1 (giving e = 2): the only roots of unity in Q and in Q(vars) are
    +-1, and q = 1 sums to e != 0.  Over F_p the sums are periodic, so a
    bounded search is exact.
    """
    if isinstance(q, PrimeFieldElement):
        if not q:
            raise CoefficientError("q must be a unit")
        p = q.p
        acc = 0
        power = 1
        # The sum is periodic with period dividing p * ord(q) <= p * (p - 1).
        for e in range(1, p * (p - 1) + 2):
            acc = (acc + power) % p
            power = power * q.value % p
            if acc == 0:
                return e
        return math.inf
    if isinstance(q, (int, Fraction)):
        if q == 0:
            raise CoefficientError("q must be a unit")
        return 2 if q == -1 else math.inf
    if isinstance(q, RationalFunction):
        if not q:
            raise CoefficientError("q must be a unit")
        return 2 if q == -1 else math.inf
    raise CoefficientError(f"unsupported scalar {q!r}")


# -- parsing ------------------------------------------------------------------


def _split_terms(text: str) -> list[str]:
    """Split a polynomial string into signed terms; a '-' directly after '^'
    belongs to an exponent, not to a new term."""
    terms: list[str] = []
    current = ""
    for i, ch in enumerate(text):
        if ch in "+-" and current and text[i - 1] != "^":
            terms.append(current)
            current = ch if ch == "-" else ""
        elif ch in "+-" and not current:
            current = ch if ch == "-" else ""
        else:
            current += ch
    if current:
        terms.append(current)
    return terms


def parse_laurent(text: str, variables: Iterable[str]) -> LaurentPoly:
    """Parse the textual polynomial grammar produced by ``render``."""
    vs = tuple(variables)
    text = text.replace(" ", "")
    if not text:
        raise CoefficientError("empty polynomial text")
    if text == "0":
        return LaurentPoly.zero(vs)
    result = LaurentPoly.zero(vs)
    for term in _split_terms(text):
        body = term
        sign = 1
        if body.startswith("-"):
            sign = -1
            body = body[1:]
        if not body:
            raise CoefficientError(f"dangling sign in {text!r}")
        coeff = Fraction(1)
        exps = [0] * len(vs)
        for factor in body.split("*"):
            if not factor:
                raise CoefficientError(f"empty factor in term {term!r}")
            if factor[0].isdigit():
                try:
                    coeff *= Fraction(factor)
                except (ValueError, ZeroDivisionError) as exc:
                    raise CoefficientError(f"bad coefficient {factor!r}") from exc
                continue
            name, _, exp_text = factor.partition("^")
            if name not in vs:
                raise CoefficientError(f"unknown variable {name!r} in {text!r}")
            try:
                e = int(exp_text) if exp_text else 1
            except ValueError as exc:
                raise CoefficientError(f"bad exponent in {factor!r}") from exc
            exps[vs.index(name)] += e
        result = result + LaurentPoly.monomial(vs, tuple(exps), sign * coeff)
    return result


def parse_scalar(text: str, field: Field):
    """Parse a scalar in the given field, inverse to rendering."""
    if isinstance(field, RationalFunctionField):
        num_text, sep, den_text = text.partition(" / ")
        num = parse_laurent(num_text, field.variables)
        if not sep:
            return RationalFunction.from_poly(num)
        den = parse_laurent(den_text, field.variables)
        return canonicalize(num, den)
    return field.parse(text)


def render_scalar(x) -> str:
    if isinstance(x, (RationalFunction, LaurentPoly)):
        return x.render()
    if isinstance(x, PrimeFieldElement):
        return str(x.value)
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    raise CoefficientError(f"cannot render {x!r}")
