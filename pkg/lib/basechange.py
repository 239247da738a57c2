"""Base changes T_i -> rational function in the SERIES field, with their valuation."""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from sympy import Symbol, nan, zoo
from sympy.parsing.sympy_parser import parse_expr

from . import errors as er
from . import field2 as f2
from . import laurent as lr
from . import valuation as vl

BUILTIN_NAMES = ("A", "B", "C", "Cprime", "D")


@dataclass(frozen=True)
class BaseChange:
    name: str
    images: tuple
    weight: vl.MonomialWeight
    degenerate: bool = False
    parameters: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.images) != lr.NVARS:
            raise er.ParseError(f"{self.name}: need images of T0..T3")
        for i, image in enumerate(self.images):
            if not image:
                raise er.ZeroElement(f"{self.name}: image of T{i} is 0")
        if not self.degenerate and (not self.sigma_P or not self.sigma_V):
            raise er.DegenerateBaseChange(f"{self.name}: sigma(P) or sigma(V) vanishes")

    def __hash__(self):
        return hash((self.name, self.images, self.weight, self.degenerate))

    @property
    def reduced_valid(self):
        return self.images[0] == self.images[1]

    @property
    def nonorientable_valid(self):
        return self.images[0] == 1

    @property
    def lex(self):
        return self.weight.lex

    @cached_property
    def sigma_P(self):
        return apply(self, lr.P)

    @cached_property
    def sigma_V(self):
        return apply(self, lr.V)

    @cached_property
    def sigma_L(self):
        return apply(self, lr.L)

    def label(self):
        if self.parameters:
            args = ",".join(f"{k}={vl.format_value(v)}" for k, v in self.parameters.items())
            return f"{self.name}({args})"
        return self.name


def _strip(total, common, factors):
    """Divide out of ``total/common`` every factor of ``common`` that also divides ``total``."""
    for factor, power in factors:
        for _ in range(power):
            q, r = total.div(factor)
            if r:
                break
            total = q
            common = common.div(factor)[0]
    return total, common


def apply(sigma: BaseChange, a: lr.LaurentElement):
    """Substitute the images into ``a``.

    Every term is brought over the common denominator
    prod n_i^(-min e_i) * d_i^(max e_i) (image_i = n_i/d_i). The known factors
    n_i, d_i are then divided out exactly; a general gcd only runs when a
    nonlinear factor survives.
    """
    field_ = f2.SERIES_FIELD
    if not a:
        return field_.zero
    numers = [img.numer for img in sigma.images]
    denoms = [img.denom for img in sigma.images]
    lows = [min(0, min(m[i] for m in a.terms)) for i in range(lr.NVARS)]
    highs = [max(0, max(m[i] for m in a.terms)) for i in range(lr.NVARS)]
    powers = {}

    def power(p, e):
        key = (p, e)
        if key not in powers:
            powers[key] = p ** e
        return powers[key]

    total = f2.SERIES.zero
    for monom in a.terms:
        term = f2.SERIES.one
        for i, e in enumerate(monom):
            term *= power(numers[i], e - lows[i]) * power(denoms[i], highs[i] - e)
        total += term
    if not total:
        return field_.zero
    factors = {}
    for i in range(lr.NVARS):
        for p, e in ((numers[i], -lows[i]), (denoms[i], highs[i])):
            if e and p != 1:
                factors[p] = factors.get(p, 0) + e
    common = f2.SERIES.one
    for p, e in factors.items():
        common *= power(p, e)
    total, common = _strip(total, common, factors.items())
    leftover = [p for p, _ in factors.items() if not common.rem(p)]
    if all(max(map(sum, p.monoms())) == 1 for p in leftover):
        # linear factors are irreducible, so nothing is left to cancel
        return field_.raw_new(total, common)
    return field_.new(total, common)


def pi_lambda(sigma: BaseChange):
    if sigma.degenerate:
        raise er.DegenerateBaseChange(f"{sigma.name}: sigma(P) = 0")
    return vl.ord_rf(sigma.sigma_P, sigma.weight), vl.ord_rf(sigma.sigma_V, sigma.weight)


def leading_terms(sigma: BaseChange):
    """Leading forms of sigma(P) and sigma(V); a vanishing image reports None."""
    out = {}
    for name, value in (("P", sigma.sigma_P), ("V", sigma.sigma_V)):
        out[name] = vl.leading_rf(value, sigma.weight) if value else None
    return out


def _one_plus(name, q=None):
    g = f2.series_gen(name)
    if q is not None:
        g = f2.series_gen(q) * g
    return f2.rf(1 + g)


def builtin(name: str, r=None) -> BaseChange:
    one = f2.SERIES_FIELD.one
    if name == "A":
        a1, a2, a3 = _one_plus("x", "q1"), _one_plus("x", "q2"), _one_plus("x", "q3")
        return BaseChange("A", (a1, a1, a2, a3), vl.quarter("x"))
    if name == "B":
        if r is None:
            raise er.MissingParameter("example B needs --r")
        r = Fraction(r)
        if not 0 < r <= 1:
            raise er.MissingParameter(f"example B needs r in (0, 1], got {r}")
        a, b = _one_plus("u", "q1"), _one_plus("x", "q2")
        weight = vl.MonomialWeight({"x": Fraction(1, 4), "u": r / 4})
        return BaseChange("B", (a, a, b, b), weight, parameters={"r": r})
    if name == "C":
        a, b = _one_plus("y"), _one_plus("x")
        weight = vl.MonomialWeight({"x": vl.LexPair(Fraction(1, 4), 0), "y": vl.LexPair(0, Fraction(1, 4))}, lex=True)
        return BaseChange("C", (a, a, b, b), weight)
    if name == "Cprime":
        a = _one_plus("y")
        return BaseChange("Cprime", (a, a, one, one), vl.quarter("y"), degenerate=True)
    if name == "D":
        b = _one_plus("x")
        return BaseChange("D", (one, one, b, b), vl.quarter("x"))
    raise er.UnknownExample(f"no built-in base change {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


_SERIES_SYMBOLS = {name: Symbol(name) for name in f2.SERIES_VARIABLES}


def parse_series(text: str):
    try:
        expr = parse_expr(text, local_dict=dict(_SERIES_SYMBOLS), transformations=lr.TRANSFORMATIONS)
        if expr.has(zoo) or expr.has(nan):
            raise ZeroDivisionError(text)
        return f2.SERIES_FIELD.from_expr(expr)
    except ZeroDivisionError:
        raise er.DivisionByZero(f"{text!r} divides by zero")
    except Exception as e:
        raise er.ParseError(f"cannot parse {text!r}: {e}")


def custom(substs: dict, weights: dict, lex=None, name="custom", degenerate=False) -> BaseChange:
    """Base change from text substitutions ``{"T1": "1+y", ...}``.

    T0 defaults to the image of T1. With ``lex=("x", "y")`` the first listed
    variable spans the most significant coordinate.
    """
    images = []
    for i in range(lr.NVARS):
        key = f"T{i}"
        if key in substs:
            images.append(parse_series(substs[key]))
        elif i == 0 and "T1" in substs:
            images.append(parse_series(substs["T1"]))
        else:
            raise er.MissingParameter(f"no substitution for {key}")
    if lex:
        if len(lex) != 2:
            raise er.ParseError("--lex takes exactly two variables")
        scaled = {}
        for name_, w in weights.items():
            w = Fraction(w)
            if name_ == lex[0]:
                scaled[name_] = vl.LexPair(w, 0)
            elif name_ == lex[1]:
                scaled[name_] = vl.LexPair(0, w)
            else:
                raise er.ParseError(f"{name_} is not one of the --lex variables")
        weight = vl.MonomialWeight(scaled, lex=True)
    else:
        weight = vl.MonomialWeight({k: Fraction(v) for k, v in weights.items()})
    return BaseChange(name, tuple(images), weight, degenerate=degenerate)
