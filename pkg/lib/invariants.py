"""Knot models and the concordance invariants derived from them.

A KnotModel is a chain complex over FULL or BN together with a distinguished
(co)cycle. ``znat`` pushes it through a base change into a valuation ring, and
the remaining functions read bounds off the resulting ord values.
"""
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from . import errors as er
from . import field2 as f2
from . import laurent as lr
from . import valuation as vl
from . import basechange as bc
from . import homalg as ha
from . import ideals as idl

REDUCED_MODEL_BOUND = "reduced-model bound"


@dataclass(frozen=True)
class KnotModel:
    name: str
    complex: ha.ChainComplex
    cycle: ha.DistinguishedCycle
    companion: ha.DistinguishedCycle = None
    signature: int = None
    expected_ideal: idl.FractionalIdeal = None

    def __post_init__(self):
        ha.check_cycle(self.complex, self.cycle)
        if self.companion is not None:
            ha.check_cycle(self.complex, self.companion)
            if self.companion.direction == self.cycle.direction:
                raise er.DirectionMismatch("companion must run in the other direction")

    @property
    def ring(self):
        return self.complex.ring

    def cycle_in(self, direction):
        for c in (self.cycle, self.companion):
            if c is not None and c.direction == direction:
                return c
        return None


def adjusted_genus(chi: int, c_plus: int, c_minus: int) -> Fraction:
    return Fraction(-chi + c_plus - c_minus, 2)


def eta(g_a, delta: int, nu: int) -> int:
    value = Fraction(g_a) + Fraction(delta, 2) - Fraction(nu, 4)
    if value.denominator != 1:
        raise er.NonIntegral(f"eta = {value} for g_a={g_a}, delta={delta}, nu={nu}")
    return int(value)


def _check_context(sigma: bc.BaseChange):
    if not sigma.reduced_valid:
        raise er.NotReducedValid(f"{sigma.label()}: sigma(T0) != sigma(T1)")
    if sigma.degenerate:
        raise er.DegenerateBaseChange(f"{sigma.label()}: sigma(P) = 0")


def _cobordism_value(sigma, cycle):
    return sigma.sigma_P ** cycle.genus * sigma.sigma_V ** cycle.dplus


def znat_details(K: KnotModel, sigma: bc.BaseChange, cycle=None):
    """Return ``(ideal, summary)``; ``cycle`` defaults to the model's own."""
    _check_context(sigma)
    cycle = cycle or K.cycle
    summary = ha.homology_over_valuation(K.complex, sigma, cycle)
    factor = _cobordism_value(sigma, cycle)
    if cycle.is_covector:
        value = summary.coefficient / factor
    else:
        value = factor * idl.ideal_quotient(summary, sigma).generators[0]
    return idl.principal(value, sigma), summary


def znat(K: KnotModel, sigma: bc.BaseChange, cycle=None) -> idl.FractionalIdeal:
    return znat_details(K, sigma, cycle)[0]


def f_sigma(K: KnotModel, sigma: bc.BaseChange, cycle=None):
    return idl.ideal_ord(znat(K, sigma, cycle))


def f_plus(K: KnotModel) -> Fraction:
    """Second coordinate of the lexicographic invariant of example C."""
    value = f_sigma(K, bc.builtin("C"))
    if value.a != 0:
        raise er.IntegrityError(f"{K.name}: first coordinate of f_plus is {vl.format_value(value.a)}")
    return value.b


# profile

@dataclass(frozen=True)
class Segment:
    start: Fraction
    end: Fraction
    slope: Fraction
    intercept: Fraction
    support: int = 2

    @property
    def confirmed(self):
        return self.slope is not None and self.support >= 3

    def value(self, r):
        if self.slope is None:
            return self.intercept if r == self.start else None
        return self.intercept + self.slope * r

    def fits(self, r, f):
        return self.slope is not None and self.value(r) == f

    def describe(self):
        if self.slope is None:
            return f"f_r = {vl.format_value(self.intercept)} at r = {self.start}"
        return f"f_r = {vl.format_value(self.intercept)} + {vl.format_value(self.slope)}*r on [{self.start}, {self.end}]"


@dataclass
class Profile:
    knot: str
    samples: list
    segments: list
    breakpoints: list
    unresolved: list
    slope_bound: Fraction
    slope_within_bound: bool

    def to_dict(self):
        return {
            "knot": self.knot,
            "samples": [[str(r), vl.format_value(f)] for r, f in self.samples],
            "segments": [s.describe() for s in self.segments],
            "breakpoints": [str(b) for b in self.breakpoints],
            "unresolved": [[str(a), str(b)] for a, b in self.unresolved],
            "slope_bound": str(self.slope_bound),
            "slope_within_bound": self.slope_within_bound,
        }


def _check_samples(samples):
    samples = [Fraction(r) for r in samples]
    if not samples:
        raise er.ParseError("profile needs at least one sample")
    for r in samples:
        if not 0 < r <= 1:
            raise er.MissingParameter(f"sample r = {r} outside (0, 1]")
    if any(a >= b for a, b in zip(samples, samples[1:])):
        raise er.ParseError("samples must be sorted and distinct")
    return samples


def evaluate_samples(K: KnotModel, samples, workers=4, cycle=None) -> dict:
    """f_r at every sample, computed by ``workers`` threads."""
    results, failures = {}, []
    lock = threading.Lock()
    samples = list(samples)

    def sample_handler(chunk):
        for r in chunk:
            try:
                value = f_sigma(K, bc.builtin("B", r), cycle)
            except er.ConcordiaError as e:
                with lock:
                    failures.append((r, e))
                return
            with lock:
                results[r] = value

    workers = max(1, min(workers, len(samples)))
    threads = [threading.Thread(target=sample_handler, args=(samples[i::workers],)) for i in range(workers)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    if failures:
        raise min(failures, key=lambda item: item[0])[1]
    return results


def _fit_segments(points):
    segments, i = [], 0
    while i < len(points):
        r0, f0 = points[i]
        if i + 1 == len(points):
            segments.append(Segment(r0, r0, None, f0, 1))
            break
        r1, f1 = points[i + 1]
        slope = (f1 - f0) / (r1 - r0)
        seg = Segment(r0, r1, slope, f0 - slope * r0)
        j = i + 2
        while j < len(points) and seg.fits(*points[j]):
            j += 1
        seg = Segment(r0, points[j - 1][0], slope, seg.intercept, j - i)
        segments.append(seg)
        i = j
    return segments


def _joined(left: Segment, right: Segment, values):
    return right.fits(left.end, values[left.end])


def _candidate(left: Segment, right: Segment):
    if left.slope is not None and right.slope is not None and left.slope != right.slope:
        r = (right.intercept - left.intercept) / (left.slope - right.slope)
        if left.end < r < right.start:
            return r
    return (left.end + right.start) / 2


def _max_u_degree(K: KnotModel):
    sigma = bc.builtin("B", 1)
    u = f2.SERIES_VARIABLES.index("u")
    entries = [a for A in K.complex.boundaries.values() for a in A.flat if a]
    entries += [a for a in K.cycle.vector if a] + [lr.P, lr.V]
    best = 0
    for a in entries:
        value = bc.apply(sigma, a)
        for p in (value.numer, value.denom):
            best = max([best] + [m[u] for m in p.keys()])
    return best


def _pending(segments, values):
    pending = [_candidate(a, b) for a, b in zip(segments, segments[1:]) if not _joined(a, b, values)]
    pending += [(s.start + s.end) / 2 for s in segments if s.slope is not None and not s.confirmed]
    return sorted({r for r in pending if r not in values})


def f_profile(K: KnotModel, r_samples, depth=4, workers=4, cycle=None) -> Profile:
    """Piecewise affine reconstruction of r -> f_r from exact samples.

    Adjacent segments that do not meet at a sample are refined by evaluating
    their line intersection (or the gap midpoint), and a segment resting on
    only two samples is bisected, up to ``depth`` times. Whatever is still
    open afterwards is listed as unresolved. Slopes are checked against
    4 * (largest u-degree of the images), a heuristic bound.
    """
    samples = _check_samples(r_samples)
    values = evaluate_samples(K, samples, workers, cycle)
    for _ in range(depth):
        pending = _pending(_fit_segments(sorted(values.items())), values)
        if not pending:
            break
        values.update(evaluate_samples(K, pending, workers, cycle))
    points = sorted(values.items())
    segments = _fit_segments(points)
    breakpoints, unresolved = [], []
    for a, b in zip(segments, segments[1:]):
        if _joined(a, b, values):
            breakpoints.append(a.end)
        else:
            unresolved.append((a.end, b.start))
    unresolved += [(s.start, s.end) for s in segments if s.slope is not None and not s.confirmed]
    unresolved.sort()
    bound = 4 * _max_u_degree(K)
    within = all(s.slope is None or abs(s.slope) <= bound for s in segments)
    return Profile(K.name, [(r, values[r]) for r in samples], segments, breakpoints, unresolved, Fraction(bound), within)


# bounds

def _ratio(value, step):
    """value/step over Q; the least n with n*step >= value over lexicographic groups."""
    if isinstance(step, vl.LexPair):
        return vl.min_multiple(value, step)
    return vl.value_div(value, step)


def _genus_bound(f, pi):
    value = _ratio(f, pi)
    return value if value is None or value >= 0 else Fraction(0)


def _abs(value):
    return -value if value < vl.zero_of(value) else value


def torsion_order(K: KnotModel, sigma: bc.BaseChange):
    summary = ha.homology_over_valuation(K.complex, sigma)
    torsion = summary.all_torsion()
    return torsion[0] if torsion else sigma.weight.zero


def _unknotting_ideal(ring, xi=None):
    """<L, P> over BN; <V_xi, P> over FULL, with V_1 = V."""
    if ring == lr.BN:
        if xi is not None:
            raise er.RingMismatch("the twisted V_xi needs a FULL model")
        return idl.laurent_ideal([lr.L, lr.constant("P", ring)], ring)
    second = lr.V if xi is None else lr.xi_twisted_V(xi)
    return idl.laurent_ideal([second, lr.P], ring)


def annihilation_tests(K: KnotModel, max_power=3, xi=None) -> dict:
    """n -> whether <L, P>^n (<V_xi, P> over FULL) kills all torsion; None when undecidable here."""
    if xi is not None and xi.ring != K.ring:
        raise er.RingMismatch(f"xi lives in {xi.ring}, the model in {K.ring}")
    J = _unknotting_ideal(K.ring, xi)
    out = {}
    for n in range(1, max_power + 1):
        try:
            out[n] = idl.annihilates(idl.ideal_power(J, n), K.complex)
        except er.UnsupportedPresentation:
            out[n] = None
    return out


def matches_power(K: KnotModel, n: int) -> bool:
    """Whether the presented ideal equals <L, P>^n (<V, P>^n over FULL)."""
    if n < 0:
        raise er.MissingParameter(f"power must be nonnegative, got {n}")
    presented = idl.presented_znat(K.complex, K.cycle)
    return idl.ideal_equal(presented, idl.ideal_power(_unknotting_ideal(K.ring), n))


@dataclass
class UnknottingBound:
    tau: object
    lam: object
    value: object
    annihilation: dict
    label: str = REDUCED_MODEL_BOUND


def unknotting_bound(K: KnotModel, sigma: bc.BaseChange, max_power=3, xi=None) -> UnknottingBound:
    _, lam = bc.pi_lambda(sigma)
    tau = torsion_order(K, sigma)
    return UnknottingBound(tau, lam, _ratio(tau, lam), annihilation_tests(K, max_power, xi))


def crossing_distance(K0: KnotModel, K1: KnotModel, sigma: bc.BaseChange):
    """Crossing changes needed to pass from K0 to K1, bounded through torsion orders."""
    _, lam = bc.pi_lambda(sigma)
    delta = _abs(torsion_order(K1, sigma) - torsion_order(K0, sigma))
    return _ratio(delta, lam)


def g_delta_constraint(K: KnotModel, sigmas, g_max: int, d_max: int):
    """Pairs (g, d) in the box with g*pi + d*lambda >= f for every base change given."""
    if isinstance(sigmas, bc.BaseChange):
        sigmas = [sigmas]
    allowed = {(g, d) for g in range(g_max + 1) for d in range(d_max + 1)}
    for sigma in sigmas:
        pi, lam = bc.pi_lambda(sigma)
        f = f_sigma(K, sigma)
        allowed = {(g, d) for g, d in allowed if g * pi + d * lam >= f}
    return sorted(allowed)


def eta_bound(K: KnotModel, sigma: bc.BaseChange):
    if not sigma.nonorientable_valid:
        raise er.NotNonorientableValid(f"{sigma.label()}: sigma(T0) != 1")
    pi, _ = bc.pi_lambda(sigma)
    return _ratio(f_sigma(K, sigma), pi)


def gordon_litherland_bound(K: KnotModel, sigma: bc.BaseChange):
    if not sigma.nonorientable_valid:
        raise er.NotNonorientableValid(f"{sigma.label()}: sigma(T0) != 1")
    if K.signature is None:
        raise er.MissingSignature(f"{K.name} has no declared signature")
    pi, _ = bc.pi_lambda(sigma)
    ratio = vl.value_div(f_sigma(K, sigma), pi)
    if ratio is None:
        raise er.NotNonorientableValid(f"{sigma.label()} has a lexicographic value group")
    return ratio + Fraction(K.signature, 2)


@dataclass
class BoundRow:
    name: str
    formula: str
    value: object = None
    error: str = None

    def to_dict(self):
        value = self.value if isinstance(self.value, (bool, type(None))) else vl.format_value(self.value)
        return {"name": self.name, "formula": self.formula, "value": value, "error": self.error}


@dataclass
class InvariantReport:
    knot: str
    base_change: str
    pi: object
    lam: object
    f: object
    znat: str
    presented: str = None
    f_plus: object = None
    tau: object = None
    signature: int = None
    bounds: list = field(default_factory=list)
    allowed_pairs: list = field(default_factory=list)
    annihilation: dict = field(default_factory=dict)
    profile: Profile = None
    audit_passed: bool = False

    def row(self, name):
        for r in self.bounds:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self):
        return {
            "knot": self.knot,
            "base_change": self.base_change,
            "pi": vl.format_value(self.pi),
            "lambda": vl.format_value(self.lam),
            "f": vl.format_value(self.f),
            "znat": self.znat,
            "presented": self.presented,
            "f_plus": vl.format_value(self.f_plus),
            "tau": vl.format_value(self.tau),
            "bounds": [r.to_dict() for r in self.bounds],
            "allowed_pairs": [list(p) for p in self.allowed_pairs],
            "annihilation": {str(n): v for n, v in self.annihilation.items()},
            "profile": self.profile.to_dict() if self.profile else None,
            "audit_passed": self.audit_passed,
        }

    def lines(self):
        out = [
            f"knot = {self.knot}",
            f"base change = {self.base_change}",
            f"pi = {vl.format_value(self.pi)}",
            f"lambda = {vl.format_value(self.lam)}",
            f"znat = {self.znat}",
            f"{'f_r' if self.base_change.startswith('B(') else 'f'} = {vl.format_value(self.f)}",
        ]
        if self.presented is not None:
            out.append(f"presented znat = {self.presented}")
        if self.f_plus is not None:
            out.append(f"f_plus = {vl.format_value(self.f_plus)}")
        out.append(f"tau = {vl.format_value(self.tau)}")
        for r in self.bounds:
            shown = r.error if r.error else (r.value if isinstance(r.value, bool) else vl.format_value(r.value))
            out.append(f"{r.name}: {r.formula} -> {shown}")
        if self.profile is not None:
            out.extend(s.describe() for s in self.profile.segments)
        return out


def _row(name, formula, compute):
    try:
        return BoundRow(name, formula, compute())
    except (er.NotNonorientableValid, er.MissingSignature, er.IntegrityError,
            er.RankNotOne, er.CycleInTorsion, er.UnsupportedPresentation) as e:
        return BoundRow(name, formula, error=e.name)


def _presented(K):
    try:
        return idl.format_ideal(idl.presented_znat(K.complex, K.cycle))
    except (er.UnsupportedPresentation, er.CycleInTorsion):
        return None


def bounds(K: KnotModel, sigma: bc.BaseChange, g_max=3, d_max=3, max_power=3, profile=None) -> InvariantReport:
    ideal, _ = znat_details(K, sigma)
    pi, lam = bc.pi_lambda(sigma)
    f = idl.ideal_ord(ideal)
    unknot = unknotting_bound(K, sigma, max_power)
    report = InvariantReport(K.name, sigma.label(), pi, lam, f, idl.format_ideal(ideal),
                             presented=_presented(K), tau=unknot.tau, signature=K.signature,
                             annihilation=unknot.annihilation, profile=profile)
    report.bounds = [
        BoundRow("slice genus", "g_s >= max(f/pi, 0)", _genus_bound(f, pi)),
        BoundRow("g-delta", "g*pi + d*lambda >= f (least d at g = 0)", vl.min_multiple(f, lam)),
        _row("clasp", "c_plus >= f_plus", lambda: f_plus(K)),
        _row("eta", "eta(S) >= f/pi (signed)", lambda: eta_bound(K, sigma)),
        _row("b1", "b1(S) >= f/pi + signature/2", lambda: gordon_litherland_bound(K, sigma)),
        BoundRow("unknotting", f"u >= tau/lambda ({unknot.label})", unknot.value),
    ]
    report.f_plus = report.row("clasp").value
    report.allowed_pairs = [(g, d) for g in range(g_max + 1) for d in range(d_max + 1) if g * pi + d * lam >= f]
    report.audit_passed = audit(report)
    return report


def audit(report: InvariantReport) -> bool:
    """Recompute every bound from the stored values; IntegrityError on any mismatch."""
    expected = {
        "slice genus": _genus_bound(report.f, report.pi),
        "g-delta": vl.min_multiple(report.f, report.lam),
        "clasp": report.f_plus,
        "unknotting": _ratio(report.tau, report.lam),
    }
    if report.row("eta").error is None:
        expected["eta"] = _ratio(report.f, report.pi)
    if report.row("b1").error is None:
        expected["b1"] = vl.value_div(report.f, report.pi) + Fraction(report.signature, 2)
    for name, value in expected.items():
        row = report.row(name)
        if row.error is None and row.value != value:
            raise er.IntegrityError(f"{name}: stored {row.value}, recomputed {value}")
    for g, d in report.allowed_pairs:
        if g * report.pi + d * report.lam < report.f:
            raise er.IntegrityError(f"pair ({g}, {d}) violates the constraint")
    return True


# model operations

def _pick_cycles(K1, K2):
    for direction in ha.DIRECTIONS:
        c1, c2 = K1.cycle_in(direction), K2.cycle_in(direction)
        if c1 is not None and c2 is not None:
            return c1, c2
    raise er.DirectionMismatch(f"{K1.name} and {K2.name} share no cycle direction")


def connected_sum(K1: KnotModel, K2: KnotModel) -> KnotModel:
    if K1.ring != K2.ring:
        raise er.RingMismatch(f"{K1.ring} and {K2.ring}")
    c1, c2 = _pick_cycles(K1, K2)
    C = ha.tensor(K1.complex, K2.complex)
    cycle = ha.tensor_cycle(K1.complex, K2.complex, c1, c2)
    companion = None
    other = ha.K_TO_UNKNOT if cycle.direction == ha.UNKNOT_TO_K else ha.UNKNOT_TO_K
    d1, d2 = K1.cycle_in(other), K2.cycle_in(other)
    if d1 is not None and d2 is not None:
        companion = ha.tensor_cycle(K1.complex, K2.complex, d1, d2)
    signature = None
    if K1.signature is not None and K2.signature is not None:
        signature = K1.signature + K2.signature
    return KnotModel(f"{K1.name}#{K2.name}", C, cycle, companion, signature)


def connected_sum_all(models):
    models = list(models)
    if not models:
        raise er.UnknownKnot("no knots to add")
    total = models[0]
    for K in models[1:]:
        total = connected_sum(total, K)
    return total


def dualize_model(K: KnotModel) -> KnotModel:
    """Mirror model: dual complex with cycles and cocycles exchanged."""
    companion = ha.dualize_cycle(K.companion) if K.companion is not None else None
    signature = -K.signature if K.signature is not None else None
    return KnotModel(f"mirror({K.name})", ha.dualize(K.complex), ha.dualize_cycle(K.cycle), companion, signature)


def map_injectivity(A, ring=lr.FULL) -> bool:
    """Injective on free modules exactly when of full column rank over the fraction field."""
    if not hasattr(A, "shape"):
        A = ha.laurent_matrix(A, ring)
    if A.shape[1] == 0:
        return True
    return ha.frac_rank(ha.frac_matrix(A), f2.TORUS_FIELD.one) == A.shape[1]
