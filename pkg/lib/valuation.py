"""Monomial valuations on the SERIES fraction field.

Value groups are Q (``Fraction``) and Q x Q ordered lexicographically
(``LexPair``).
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import errors as er
from . import field2 as f2


@dataclass(frozen=True, order=True)
class LexPair:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return LexPair(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return LexPair(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n):
        return LexPair(self.a * n, self.b * n)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.a or self.b)

    def __str__(self):
        return f"({format_value(self.a)}, {format_value(self.b)})"


def zero_of(value):
    return LexPair() if isinstance(value, LexPair) else Fraction(0)


def format_value(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, LexPair):
        return str(value)
    return str(Fraction(value))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise er.ParseError(f"{text!r} is not an exact rational: {e}")


@dataclass(frozen=True)
class MonomialWeight:
    """Weights of the SERIES variables; parameters q1..q3 weigh zero.

    ``lex`` selects the Q x Q value group; weights are then ``LexPair``.
    """
    weights: dict = field(default_factory=dict)
    lex: bool = False

    def __post_init__(self):
        zero = self.zero
        for name, w in self.weights.items():
            if name not in f2.SERIES_VARIABLES:
                raise er.ParseError(f"unknown valuation variable {name}")
            if name in f2.PARAMETER_VARIABLES:
                if w != zero:
                    raise er.ParseError(f"parameter {name} must have weight 0")
            elif not w > zero:
                raise er.ParseError(f"weight of {name} must be positive, got {format_value(w)}")
        vector = tuple(self.weights.get(name, zero) for name in f2.SERIES_VARIABLES)
        object.__setattr__(self, "vector", vector)

    def __hash__(self):
        return hash((self.vector, self.lex))

    def __eq__(self, other):
        return isinstance(other, MonomialWeight) and (self.vector, self.lex) == (other.vector, other.lex)

    @property
    def zero(self):
        return LexPair() if self.lex else Fraction(0)

    def of_monom(self, monom):
        total = self.zero
        for e, w in zip(monom, self.vector):
            if e:
                total = total + e * w
        return total

    def describe(self):
        return {name: format_value(w) for name, w in self.weights.items()}


def quarter(*names, scale=1):
    return MonomialWeight({name: Fraction(1, 4) * scale for name in names})


def ord_poly(p, w: MonomialWeight):
    if not p:
        raise er.ZeroElement("ord of 0")
    return min(w.of_monom(monom) for monom in p.keys())


def ord_rf(f, w: MonomialWeight):
    if not f:
        raise er.ZeroElement("ord of 0")
    return ord_poly(f.numer, w) - ord_poly(f.denom, w)


def leading_form(p, w: MonomialWeight):
    least = ord_poly(p, w)
    return p.ring.from_dict({m: c for m, c in p.items() if w.of_monom(m) == least})


def leading_rf(f, w: MonomialWeight):
    return f2.rf(leading_form(f.numer, w), leading_form(f.denom, w), f.field)


def value_div(a, b):
    """``a/b`` in the Q value group; lexicographic groups have no quotient, so None."""
    if isinstance(a, LexPair) or isinstance(b, LexPair):
        return None
    if b == 0:
        raise er.DivisionByZero(f"{a} / 0")
    return Fraction(a) / Fraction(b)


def min_multiple(target, step):
    """Least integer n >= 0 with ``n*step >= target``, or None when none exists."""
    zero = zero_of(step)
    if not target > zero:
        return 0
    if not step > zero:
        return None
    if not isinstance(step, LexPair):
        return math.ceil(Fraction(target) / Fraction(step))
    if step.a > 0:
        n = max(0, math.ceil(target.a / step.a))
        return n if n * step >= target else n + 1
    if target.a > 0:
        return None
    return max(0, math.ceil(target.b / step.b))
