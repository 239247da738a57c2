"""Fractional ideals over the Laurent rings (Groebner membership) and over valuation rings."""
import os
import sys
from dataclasses import dataclass
from functools import lru_cache

from sympy.polys.groebnertools import groebner

from . import errors as er
from . import field2 as f2
from . import laurent as lr
from . import valuation as vl
from . import homalg as ha

GB_MAX_DEGREE = 64


def max_degree():
    value = os.environ.get("CONCORDIA_GB_MAXDEG")
    if not value:
        return GB_MAX_DEGREE
    try:
        cap = int(value)
    except ValueError:
        cap = 0
    if cap < 1:
        print(f"Exception in max_degree -> CONCORDIA_GB_MAXDEG={value!r} is not a positive integer, using {GB_MAX_DEGREE}",
              file=sys.stderr)
        return GB_MAX_DEGREE
    return cap


def _is_laurent_context(context):
    return isinstance(context, str)


def _canonical_pair(numer, denom):
    if not denom:
        raise er.DivisionByZero(f"{lr.to_text(numer)} / 0")
    if not numer:
        return None
    frac = lr.to_fraction(numer) / lr.to_fraction(denom)
    n, d = lr.from_fraction(frac, numer.ring)
    return n * lr.monomial_content(n).inverse(), d


@dataclass(frozen=True)
class FractionalIdeal:
    """Nonzero finitely generated submodule of a fraction field.

    ``context`` is ``"FULL"``/``"BN"`` with generators ``(numerator, denominator)``
    Laurent pairs, or a BaseChange with SERIES_FIELD generators; the latter is
    kept principal on a generator of least ord.
    """
    context: object
    generators: tuple

    def __post_init__(self):
        if _is_laurent_context(self.context):
            gens = []
            for numer, denom in self.generators:
                pair = _canonical_pair(numer, denom)
                if pair is not None and pair not in gens:
                    gens.append(pair)
        else:
            nonzero = [g for g in self.generators if g]
            gens = []
            if nonzero:
                w = self.context.weight
                best = min(range(len(nonzero)), key=lambda i: (vl.ord_rf(nonzero[i], w), i))
                gens = [nonzero[best]]
        if not gens:
            raise er.ZeroElement("a fractional ideal needs a nonzero generator")
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def is_valuation(self):
        return not _is_laurent_context(self.context)

    @property
    def ring(self):
        return self.context if not self.is_valuation else None

    def __str__(self):
        return format_ideal(self)


def laurent_ideal(elements, ring=lr.FULL) -> FractionalIdeal:
    """Ideal generated by LaurentElements, ``(numerator, denominator)`` pairs or text."""
    pairs = []
    for e in elements:
        if isinstance(e, str):
            e = lr.parse_fraction(e, ring)
        if isinstance(e, lr.LaurentElement):
            e = (e, lr.one(e.ring))
        if e[0].ring != ring or e[1].ring != ring:
            raise er.RingMismatch(f"generator outside {ring}")
        pairs.append(e)
    return FractionalIdeal(ring, tuple(pairs))


def parse_ideal(text: str, ring=lr.FULL) -> FractionalIdeal:
    parts = [part.strip() for part in text.split(",") if part.strip()]
    if not parts:
        raise er.ParseError("empty generator list")
    return laurent_ideal(parts, ring)


def principal(value, sigma) -> FractionalIdeal:
    return FractionalIdeal(sigma, (value,))


def unit_ideal(context) -> FractionalIdeal:
    if _is_laurent_context(context):
        return laurent_ideal([lr.one(context)], context)
    return principal(f2.SERIES_FIELD.one, context)


def _same_context(I, J):
    if I.context != J.context:
        raise er.RingMismatch("ideals live over different rings")


def ideal_product(I: FractionalIdeal, J: FractionalIdeal) -> FractionalIdeal:
    _same_context(I, J)
    if I.is_valuation:
        return principal(I.generators[0] * J.generators[0], I.context)
    return FractionalIdeal(I.context, tuple((a * c, b * d) for a, b in I.generators for c, d in J.generators))


def ideal_power(I: FractionalIdeal, n: int) -> FractionalIdeal:
    result = unit_ideal(I.context)
    for _ in range(n):
        result = ideal_product(result, I)
    return result


def ideal_ord(I: FractionalIdeal):
    if not I.is_valuation:
        raise er.RingMismatch("ord needs a valuation context")
    if I.context.degenerate:
        raise er.DegenerateBaseChange(f"{I.context.name}: sigma(P) = 0")
    return vl.ord_rf(I.generators[0], I.context.weight)


@dataclass(frozen=True)
class GroebnerBasis:
    order: str
    basis: tuple

    def reduce(self, f):
        return f.rem(list(self.basis))


def _total_degree(p):
    return max((sum(m) for m in p.keys()), default=0)


def to_groebner(a: lr.LaurentElement):
    """Image in F2[T, U] with U_i standing for T_i^-1."""
    terms = (tuple(max(e, 0) for e in m) + tuple(max(-e, 0) for e in m) for m in a.terms)
    return f2.poly_from_terms(terms, f2.GROEBNER)


def _inverse_relations(ring):
    gens = f2.GROEBNER_GENS
    variables = range(1, lr.NVARS) if ring == lr.BN else range(lr.NVARS)
    return [gens[i] * gens[i + lr.NVARS] + 1 for i in variables]


@lru_cache(maxsize=256)
def _groebner(polys: tuple, ring, cap: int) -> GroebnerBasis:
    for p in polys:
        if _total_degree(p) > cap:
            raise er.GroebnerDegreeExceeded(f"input degree {_total_degree(p)} exceeds {cap}")
    basis = groebner(list(polys) + _inverse_relations(ring), f2.GROEBNER)
    for g in basis:
        if _total_degree(g) > cap:
            raise er.GroebnerDegreeExceeded(f"basis degree {_total_degree(g)} exceeds {cap}")
    return GroebnerBasis("grevlex", tuple(basis))


def groebner_basis(elements, ring=lr.FULL) -> GroebnerBasis:
    """Reduced basis of the ideal the Laurent ``elements`` generate, T before U."""
    return _groebner(tuple(to_groebner(a) for a in elements), ring, max_degree())


def _cleared(I: FractionalIdeal):
    """Common denominator D and numerators N_i with I = (1/D) <N_i>."""
    ring = I.context
    denom = lr.one(ring)
    for _, d in I.generators:
        denom = denom * d
    numers = []
    for i, (n, _) in enumerate(I.generators):
        term = n
        for j, (_, d) in enumerate(I.generators):
            if j != i:
                term = term * d
        numers.append(term)
    return denom, numers


def _as_pair(f, ring):
    if isinstance(f, str):
        return lr.parse_fraction(f, ring)
    if isinstance(f, lr.LaurentElement):
        return f, lr.one(f.ring)
    return f


def membership(f, I: FractionalIdeal) -> bool:
    if I.is_valuation:
        value = f
        return not value or vl.ord_rf(value, I.context.weight) >= ideal_ord(I)
    ring = I.context
    a, b = _as_pair(f, ring)
    if a.ring != ring or b.ring != ring:
        raise er.RingMismatch(f"element outside {ring}")
    if not a:
        return True
    if b.is_unit():
        a, b = a * b.inverse(), lr.one(ring)
    denom, numers = _cleared(I)
    G = groebner_basis([b * n for n in numers], ring)
    return not G.reduce(to_groebner(a * denom))


def ideal_contains(I: FractionalIdeal, J: FractionalIdeal) -> bool:
    """True when J is contained in I."""
    _same_context(I, J)
    return all(membership(g, I) for g in J.generators)


def ideal_equal(I: FractionalIdeal, J: FractionalIdeal) -> bool:
    return ideal_contains(I, J) and ideal_contains(J, I)


def module_quotient_rank1(relation, ring=lr.FULL) -> FractionalIdeal:
    """S^2 / <a1 e1 + a2 e2> as the ideal <a2, a1> via e1 -> a2, e2 -> a1."""
    relation = list(relation)
    if len(relation) != 2:
        raise er.UnsupportedPresentation(f"need exactly two generators, got {len(relation)}")
    a1, a2 = relation
    if not a1 and not a2:
        raise er.UnsupportedPresentation("zero relation leaves free rank 2")
    return laurent_ideal([g for g in (a2, a1) if g], ring)


def _cobordism_factor(cycle, ring):
    return lr.constant("P", ring) ** cycle.genus * lr.constant("V", ring) ** cycle.dplus


def _nonzero_columns(A):
    return [j for j in range(A.shape[1]) if any(A[:, j])]


def _nonzero_rows(A):
    return [i for i in range(A.shape[0]) if any(A[i, :])]


def presented_znat(C: ha.ChainComplex, cycle: ha.DistinguishedCycle) -> FractionalIdeal:
    """Ring-level ideal for a rank-one presentation at the cycle's degree.

    Cycles give P^g V^d phi(iota)^-1 J with phi: H -> J; cocycles give
    P^-g V^-d <phi(tau)> with tau spanning the kernel.
    """
    ha.check_cycle(C, cycle)
    ring = C.ring
    k, n = cycle.degree, C.rank(cycle.degree)
    d_in, d_out = C.boundary(k), C.boundary(k + 1)
    factor = _cobordism_factor(cycle, ring)
    v = cycle.vector
    if not cycle.is_covector:
        if _nonzero_rows(d_out):
            raise er.UnsupportedPresentation(f"degree {k} has an outgoing differential")
        cols = _nonzero_columns(d_in)
        if n == 1 and not cols:
            J, image = unit_ideal(ring), v[0]
        elif n == 2 and len(cols) == 1:
            a1, a2 = d_in[:, cols[0]]
            J, image = module_quotient_rank1((a1, a2), ring), v[0] * a2 + v[1] * a1
        else:
            raise er.UnsupportedPresentation(f"degree {k}: rank {n} with {len(cols)} relations")
        if not image:
            raise er.CycleInTorsion(f"cycle at degree {k} maps to 0")
        return ideal_product(J, laurent_ideal([(factor, image)], ring))
    if _nonzero_columns(d_in):
        raise er.UnsupportedPresentation(f"degree {k} has an incoming differential")
    rows = _nonzero_rows(d_out)
    if n == 1 and not rows:
        image = v[0]
    elif n == 2 and len(rows) == 1:
        a1, a2 = d_out[rows[0], :]
        g = lr.laurent_gcd(a1, a2)
        tau = (lr.laurent_exquo(a2, g), lr.laurent_exquo(a1, g))
        image = v[0] * tau[0] + v[1] * tau[1]
    else:
        raise er.UnsupportedPresentation(f"degree {k}: rank {n} with {len(rows)} outgoing rows")
    if not image:
        raise er.CycleInTorsion(f"cocycle at degree {k} vanishes on the kernel")
    return laurent_ideal([(image, factor)], ring)


def ideal_quotient(summary: ha.HomologySummary, sigma) -> FractionalIdeal:
    """<c^-1> for the free coefficient c of the distinguished class."""
    if summary.cycle_degree is None or summary.coefficient is None:
        raise er.RankNotOne("no distinguished class was projected")
    if not summary.coefficient:
        raise er.CycleInTorsion("free coefficient is 0")
    return principal(f2.rf_inv(summary.coefficient), sigma)


def torsion_annihilator(C: ha.ChainComplex, degree: int) -> FractionalIdeal:
    """Annihilator of the torsion of H^degree for one-column or one-row presentations."""
    ring = C.ring
    d_in = C.boundary(degree)
    cols = _nonzero_columns(d_in)
    if not cols:
        return unit_ideal(ring)
    if len(cols) == 1:
        g = lr.zero(ring)
        for a in d_in[:, cols[0]]:
            g = lr.laurent_gcd(g, a) if g else a
        return laurent_ideal([g], ring)
    if C.rank(degree) == 1:
        return laurent_ideal([a for a in d_in[0, :] if a], ring)
    raise er.UnsupportedPresentation(f"torsion of H^{degree} needs a general annihilator")


def annihilates(I: FractionalIdeal, C: ha.ChainComplex) -> bool:
    """True when I kills the torsion of every H^k."""
    return all(ideal_contains(torsion_annihilator(C, k), I) for k in C.degrees)


def g_region(I: FractionalIdeal, g_max: int, d_max: int):
    """All (g, d) in the box with P^g V^d in I (V is L over BN)."""
    if I.is_valuation:
        raise er.RingMismatch("g-region needs a Laurent ideal")
    ring = I.context
    p, v = lr.constant("P", ring), lr.constant("V", ring)
    region = set()
    for g in range(g_max + 1):
        for d in range(d_max + 1):
            # multiples of members
            if (g - 1, d) in region or (g, d - 1) in region or membership(p ** g * v ** d, I):
                region.add((g, d))
    return sorted(region)


def smoothing_closed(region, g_max: int) -> bool:
    """Whether (g, d) in G implies (g+1, d-1) in G inside the box."""
    region = set(region)
    return all((g + 1, d - 1) in region for g, d in region if d >= 1 and g + 1 <= g_max)


def heegaard_rewrite(generators, ring=lr.BN) -> FractionalIdeal:
    """Rewrite generators in u, w through u -> L, w -> P."""
    extra = {"u": lr.to_expr(lr.constant("L", ring)), "w": lr.to_expr(lr.constant("P", ring))}
    pairs = [lr.from_fraction(lr.parse_to_field(text, ring, extra), ring) for text in generators]
    return laurent_ideal(pairs, ring)


def format_ideal(I: FractionalIdeal) -> str:
    if I.is_valuation:
        return f"<{f2.format_rf(I.generators[0])}>"
    parts = []
    for n, d in I.generators:
        text = lr.to_text(n)
        if d != lr.one(I.context):
            num = f"({text})" if len(n.terms) > 1 else text
            text = f"{num}/({lr.to_text(d)})"
        parts.append(text)
    return "<" + ", ".join(parts) + ">"
