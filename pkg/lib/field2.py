"""Polynomials over GF(2) and their fraction fields.

Every ring used by the package is a sympy ``PolyRing`` over ``GF(2)``:

- ``SERIES``: coefficient parameters q1, q2, q3 and the valuation variables
  x, y, u that base changes substitute into.
- ``TORUS``: T0..T3, the polynomial part of the Laurent ring.
- ``GROEBNER``: T0..T3 followed by their inverses U0..U3, graded reverse
  lexicographic, for Laurent ideal membership.

A ``Poly2`` is a ``PolyElement`` of one of these rings and a
``RationalFunction`` is a ``FracElement`` of the matching fraction field.
sympy keeps fraction field elements cancelled, and over GF(2) the only unit is
1, so equality of rational functions is plain equality.
"""
from sympy.polys.domains import GF
from sympy.polys.orderings import grevlex
from sympy.polys.rings import xring

from . import errors as er

F2 = GF(2)

SERIES_VARIABLES = ("q1", "q2", "q3", "x", "y", "u")
PARAMETER_VARIABLES = ("q1", "q2", "q3")
TORUS_VARIABLES = ("T0", "T1", "T2", "T3")
INVERSE_VARIABLES = ("U0", "U1", "U2", "U3")

SERIES, SERIES_GENS = xring(",".join(SERIES_VARIABLES), F2, grevlex)
SERIES_FIELD = SERIES.to_field()

TORUS, TORUS_GENS = xring(",".join(TORUS_VARIABLES), F2, grevlex)
TORUS_FIELD = TORUS.to_field()

GROEBNER, GROEBNER_GENS = xring(",".join(TORUS_VARIABLES + INVERSE_VARIABLES), F2, grevlex)


def series_gen(name: str):
    return SERIES_GENS[SERIES_VARIABLES.index(name)]


def poly_from_terms(terms, ring=SERIES):
    """Build a Poly2 from exponent vectors; repeated vectors cancel in pairs."""
    support = set()
    for monom in terms:
        support ^= {tuple(monom)}
    return ring.from_dict({monom: F2.one for monom in support})


def _same_ring(a, b):
    if a.ring != b.ring:
        raise er.RingMismatch(f"{a.ring} and {b.ring}")


def poly_add(a, b):
    _same_ring(a, b)
    return a + b


def poly_mul(a, b):
    _same_ring(a, b)
    return a * b


def poly_gcd(a, b):
    # subresultant PRS with content/primitive-part recursion over the ring's variable order
    _same_ring(a, b)
    return a.gcd(b)


def poly_divides(d, p):
    if not d:
        return not p
    return not p.rem(d)


def rf(numerator, denominator=None, field=SERIES_FIELD):
    """Return numerator/denominator as a cancelled element of ``field``."""
    numerator = field.ring(numerator)
    denominator = field.ring.one if denominator is None else field.ring(denominator)
    if not denominator:
        raise er.DivisionByZero("zero denominator")
    return field.new(numerator, denominator)


def rf_add(a, b):
    if a.field != b.field:
        raise er.RingMismatch(f"{a.field} and {b.field}")
    return a + b


def rf_mul(a, b):
    if a.field != b.field:
        raise er.RingMismatch(f"{a.field} and {b.field}")
    return a * b


def rf_inv(a):
    if not a:
        raise er.DivisionByZero("inverse of 0")
    return a ** -1


def rf_div(a, b):
    return rf_mul(a, rf_inv(b))


def format_poly(p, power="^"):
    if not p:
        return "0"
    names = p.ring.symbols
    parts = []
    for monom, _ in p.terms():
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(str(name))
            elif e:
                factors.append(f"{name}{power}{e}")
        parts.append("*".join(factors) if factors else "1")
    return " + ".join(parts)


def format_rf(f):
    numer = format_poly(f.numer)
    if f.denom == 1:
        return numer
    if len(f.numer) > 1:
        numer = f"({numer})"
    denom = format_poly(f.denom)
    if len(f.denom) > 1 or "*" in denom:
        denom = f"({denom})"
    return f"{numer}/{denom}"
