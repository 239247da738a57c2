"""Laurent polynomials over GF(2) in T0..T3.

Two rings share one element type:

- FULL: the four-variable Laurent ring R.
- BN: R modulo T0 - T1. Elements keep a zero T0 exponent and fold any T0
  power into T1.

Text syntax: ``T1*T2^-1*T3^-1 + T0^2 + 1``. The macros ``P``, ``Q``, ``V``,
``L`` expand to the named constants and ``T`` is shorthand for ``T1``.
"""
from dataclasses import dataclass
from functools import lru_cache

from sympy import Symbol, nan, zoo
from sympy.parsing.sympy_parser import parse_expr, standard_transformations, convert_xor

from . import errors as er
from . import field2 as f2

FULL = "FULL"
BN = "BN"
RINGS = (FULL, BN)

NVARS = 4

TRANSFORMATIONS = standard_transformations + (convert_xor,)


def _fold(monom, ring):
    monom = tuple(int(e) for e in monom)
    if len(monom) != NVARS:
        raise er.ParseError(f"exponent vector {monom} must have {NVARS} entries")
    if ring == BN:
        return (0, monom[0] + monom[1], monom[2], monom[3])
    return monom


@dataclass(frozen=True)
class LaurentElement:
    terms: frozenset = frozenset()
    ring: str = FULL

    def __post_init__(self):
        if self.ring not in RINGS:
            raise er.RingMismatch(f"unknown ring {self.ring}")
        if self.ring == BN and any(m[0] for m in self.terms):
            raise er.RingMismatch("BN elements have no T0 exponent")

    def _coerce(self, other):
        if isinstance(other, LaurentElement):
            if other.ring != self.ring:
                raise er.RingMismatch(f"{self.ring} and {other.ring}")
            return other
        if isinstance(other, int):
            return one(self.ring) if other % 2 else zero(self.ring)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentElement(self.terms ^ other.terms, self.ring)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        support = set()
        for a in self.terms:
            for b in other.terms:
                support ^= {tuple(i + j for i, j in zip(a, b))}
        return LaurentElement(frozenset(support), self.ring)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = one(self.ring), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return to_text(self)

    def is_monomial(self):
        return len(self.terms) == 1

    is_unit = is_monomial

    def inverse(self):
        if not self.is_monomial():
            raise er.NotInvertible(f"{self} is not a unit")
        (monom,) = self.terms
        return LaurentElement(frozenset({tuple(-e for e in monom)}), self.ring)


def laurent(terms, ring=FULL):
    """Element with the given exponent vectors; repeats cancel in pairs."""
    support = set()
    for monom in terms:
        support ^= {_fold(monom, ring)}
    return LaurentElement(frozenset(support), ring)


def zero(ring=FULL):
    return LaurentElement(frozenset(), ring)


def one(ring=FULL):
    return LaurentElement(frozenset({(0,) * NVARS}), ring)


def monomial(exponents, ring=FULL):
    return laurent([exponents], ring)


def T(i, ring=FULL, power=1):
    exps = [0] * NVARS
    exps[i] = power
    return monomial(exps, ring)


def _p_terms():
    return [(0, 1, 1, 1), (0, 1, -1, -1), (0, -1, 1, -1), (0, -1, -1, 1)]


def _q_terms():
    terms = []
    for j in range(NVARS):
        for e in (2, -2):
            exps = [0] * NVARS
            exps[j] = e
            terms.append(tuple(exps))
    return terms


@lru_cache(maxsize=None)
def constant(name: str, ring: str = FULL) -> LaurentElement:
    """The named constants P, Q, V, L of ``ring``; in BN, V and L coincide."""
    p = laurent(_p_terms(), ring)
    if name == "P":
        return p
    if name == "Q":
        return laurent(_q_terms(), ring)
    if name == "V":
        return p + T(0, ring, 2) + T(0, ring, -2)
    if name == "L":
        return p + T(1, ring, 2) + T(1, ring, -2)
    raise er.ParseError(f"unknown constant {name}")


P = constant("P")
Q = constant("Q")
V = constant("V")
L = constant("L", BN)


def quotient_to_BN(a: LaurentElement) -> LaurentElement:
    return laurent(a.terms, BN)


def xi_twisted_V(xi: LaurentElement) -> LaurentElement:
    ring = xi.ring
    return xi * constant("P", ring) + T(0, ring, 2) + T(0, ring, -2)


def _min_exponents(a):
    if not a:
        return (0,) * NVARS
    return tuple(min(0, min(m[i] for m in a.terms)) for i in range(NVARS))


def clear_denominators(a: LaurentElement):
    """Return ``(poly, m)`` with ``a*m == poly``, ``poly`` in TORUS and ``m`` the minimal monomial."""
    shift = tuple(-e for e in _min_exponents(a))
    poly = f2.poly_from_terms(
        (tuple(e + s for e, s in zip(monom, shift)) for monom in a.terms), f2.TORUS)
    return poly, monomial(shift, a.ring)


def from_polynomial(p, ring=FULL) -> LaurentElement:
    return laurent(p.keys(), ring)


def to_fraction(a: LaurentElement):
    poly, m = clear_denominators(a)
    (shift,) = m.terms
    return f2.TORUS_FIELD.new(poly, f2.poly_from_terms([shift], f2.TORUS))


def monomial_content(a: LaurentElement) -> LaurentElement:
    if not a:
        return one(a.ring)
    return monomial(tuple(min(m[i] for m in a.terms) for i in range(NVARS)), a.ring)


def from_fraction(f, ring=FULL):
    """Split a TORUS_FIELD element into ``(numerator, denominator)`` Laurent elements.

    Monomial factors of the denominator move to the numerator, so the
    denominator is 1 exactly when ``f`` is a Laurent polynomial.
    """
    numer = from_polynomial(f.numer, ring)
    denom = from_polynomial(f.denom, ring)
    content = monomial_content(denom)
    return numer * content.inverse(), denom * content.inverse()


def laurent_gcd(a: LaurentElement, b: LaurentElement) -> LaurentElement:
    if a.ring != b.ring:
        raise er.RingMismatch(f"{a.ring} and {b.ring}")
    pa, _ = clear_denominators(a)
    pb, _ = clear_denominators(b)
    g = from_polynomial(f2.poly_gcd(pa, pb), a.ring)
    return g * monomial_content(g).inverse() if g else g


def laurent_exquo(a: LaurentElement, b: LaurentElement) -> LaurentElement:
    if not b:
        raise er.DivisionByZero(f"{a} / 0")
    numer, denom = from_fraction(to_fraction(a) / to_fraction(b), a.ring)
    if denom != one(a.ring):
        raise er.NotInvertible(f"{b} does not divide {a}")
    return numer


def _term_text(monom):
    factors = []
    for i, e in enumerate(monom):
        if e == 1:
            factors.append(f"T{i}")
        elif e:
            factors.append(f"T{i}^{e}")
    return "*".join(factors) if factors else "1"


def to_text(a: LaurentElement) -> str:
    if not a:
        return "0"
    ordered = sorted(a.terms, key=lambda m: (-sum(m), tuple(-e for e in m)))
    return " + ".join(_term_text(m) for m in ordered)


_SYMBOLS = tuple(Symbol(name) for name in f2.TORUS_VARIABLES)


def to_expr(a: LaurentElement):
    total = 0
    for monom in a.terms:
        term = 1
        for sym, e in zip(_SYMBOLS, monom):
            term = term * sym ** e
        total = total + term
    return total


@lru_cache(maxsize=None)
def _local_dict(ring):
    names = dict(zip(f2.TORUS_VARIABLES, _SYMBOLS))
    if ring == BN:
        names["T0"] = _SYMBOLS[1]
    names["T"] = _SYMBOLS[1]
    for name in ("P", "Q", "V", "L"):
        names[name] = to_expr(constant(name, ring))
    return names


def parse_to_field(text: str, ring=FULL, extra=None):
    """Parse ``text`` into TORUS_FIELD, expanding macros for ``ring``."""
    local_dict = dict(_local_dict(ring))
    if extra:
        local_dict.update(extra)
    try:
        expr = parse_expr(text, local_dict=local_dict, transformations=TRANSFORMATIONS)
        if expr.has(zoo) or expr.has(nan):
            raise ZeroDivisionError(text)
        return f2.TORUS_FIELD.from_expr(expr)
    except ZeroDivisionError:
        raise er.DivisionByZero(f"{text!r} divides by zero")
    except Exception as e:
        raise er.ParseError(f"cannot parse {text!r}: {e}")


def parse_fraction(text: str, ring=FULL):
    return from_fraction(parse_to_field(text, ring), ring)


def parse(text: str, ring=FULL) -> LaurentElement:
    numer, denom = parse_fraction(text, ring)
    if denom != one(ring):
        raise er.ParseError(f"{text!r} is not a Laurent polynomial")
    return numer
