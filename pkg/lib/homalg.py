"""Free cochain complexes over the Laurent rings and their homology over valuation rings.

Conventions:

- ``boundaries[k]`` is the matrix of d: C^(k-1) -> C^k, rows indexed by the
  basis of C^k and columns by the basis of C^(k-1). H^k = ker d_(k+1) / im d_k.
- Matrices are numpy object arrays.
- In knot files each row of ``boundaries[k]`` lists the image of one
  generator of C^(k-1).
"""
from dataclasses import dataclass, field

import numpy

from . import errors as er
from . import field2 as f2
from . import laurent as lr
from . import valuation as vl
from . import basechange as bc

UNKNOT_TO_K = "unknot-to-K"
K_TO_UNKNOT = "K-to-unknot"
DIRECTIONS = (UNKNOT_TO_K, K_TO_UNKNOT)


def zeros(n, m, zero):
    A = numpy.empty((n, m), dtype=object)
    for i in range(n):
        for j in range(m):
            A[i, j] = zero
    return A


def identity(n, one, zero):
    A = zeros(n, n, zero)
    for i in range(n):
        A[i, i] = one
    return A


def dot(A, B, zero):
    m, n = A.shape
    assert B.shape[0] == n
    l = B.shape[1]
    C = zeros(m, l, zero)
    for i in range(m):
        for j in range(l):
            acc = zero
            for k in range(n):
                if A[i, k] and B[k, j]:
                    acc = acc + A[i, k] * B[k, j]
            C[i, j] = acc
    return C


def _kron(A, B, zero):
    n, m = A.shape[0] * B.shape[0], A.shape[1] * B.shape[1]
    if not n or not m:
        return zeros(n, m, zero)
    return numpy.kron(A, B)


def _map(A, fn):
    out = numpy.empty(A.shape, dtype=object)
    for idx, a in numpy.ndenumerate(A):
        out[idx] = fn(a)
    return out


def is_zero(A):
    return not any(bool(a) for a in A.flat)


def matrices_equal(A, B):
    return A.shape == B.shape and all(a == b for a, b in zip(A.flat, B.flat))


def laurent_matrix(rows, ring=lr.FULL, shape=None):
    """Matrix from nested rows of LaurentElements, ints or text."""
    def convert(a):
        if isinstance(a, lr.LaurentElement):
            if a.ring != ring:
                raise er.RingMismatch(f"{a.ring} entry in a {ring} matrix")
            return a
        if isinstance(a, int):
            return lr.one(ring) if a % 2 else lr.zero(ring)
        return lr.parse(str(a), ring)
    rows = [[convert(a) for a in row] for row in rows]
    if shape is None:
        shape = (len(rows), len(rows[0]) if rows else 0)
    A = zeros(*shape, lr.zero(ring))
    for i, row in enumerate(rows):
        for j, a in enumerate(row):
            A[i, j] = a
    return A


@dataclass(frozen=True, eq=False)
class ChainComplex:
    ring: str
    ranks: dict
    boundaries: dict = field(default_factory=dict)

    def __post_init__(self):
        ranks = {int(k): int(v) for k, v in self.ranks.items()}
        if not ranks:
            raise er.ParseError("a complex needs at least one degree")
        lo, hi = min(ranks), max(ranks)
        for k in range(lo, hi + 1):
            ranks.setdefault(k, 0)
        zero = lr.zero(self.ring)
        boundaries = {}
        for k in range(lo + 1, hi + 1):
            A = self.boundaries.get(k)
            if A is None:
                A = zeros(ranks[k], ranks[k - 1], zero)
            if A.shape != (ranks[k], ranks[k - 1]):
                raise er.ParseError(f"boundary into degree {k} has shape {A.shape}, expected {(ranks[k], ranks[k - 1])}")
            for a in A.flat:
                if a.ring != self.ring:
                    raise er.RingMismatch(f"{a.ring} entry in a {self.ring} complex")
            A = A.copy()
            A.flags.writeable = False
            boundaries[k] = A
        for k in self.boundaries:
            if k not in boundaries:
                raise er.ParseError(f"boundary into degree {k} lies outside the complex")
        object.__setattr__(self, "ranks", dict(sorted(ranks.items())))
        object.__setattr__(self, "boundaries", boundaries)
        for k in range(lo + 2, hi + 1):
            if not is_zero(dot(boundaries[k], boundaries[k - 1], zero)):
                raise er.IntegrityError(f"d o d != 0 into degree {k}")

    @property
    def degrees(self):
        return tuple(self.ranks)

    @property
    def zero(self):
        return lr.zero(self.ring)

    @property
    def one(self):
        return lr.one(self.ring)

    def rank(self, k):
        return self.ranks.get(k, 0)

    def boundary(self, k):
        """d: C^(k-1) -> C^k; a zero matrix outside the stored range."""
        if k in self.boundaries:
            return self.boundaries[k]
        return zeros(self.rank(k), self.rank(k - 1), self.zero)

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return (self.ring == other.ring and self.ranks == other.ranks
                and all(matrices_equal(self.boundaries[k], other.boundaries[k]) for k in self.boundaries))

    __hash__ = None


@dataclass(frozen=True)
class DistinguishedCycle:
    """A cycle (direction unknot-to-K) or a cocycle (K-to-unknot) with cobordism data."""
    degree: int
    vector: tuple
    genus: int = 0
    dplus: int = 0
    direction: str = UNKNOT_TO_K

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise er.ParseError(f"direction must be one of {DIRECTIONS}")
        if not (isinstance(self.genus, int) and isinstance(self.dplus, int)) or self.genus < 0 or self.dplus < 0:
            raise er.ParseError("genus and dplus must be nonnegative integers")
        object.__setattr__(self, "vector", tuple(self.vector))

    @property
    def is_covector(self):
        return self.direction == K_TO_UNKNOT

    def column(self):
        A = numpy.empty((len(self.vector), 1), dtype=object)
        for i, a in enumerate(self.vector):
            A[i, 0] = a
        return A

    def row(self):
        return self.column().T.copy()


def check_cycle(C: ChainComplex, cycle: DistinguishedCycle):
    k = cycle.degree
    if len(cycle.vector) != C.rank(k):
        raise er.NotACycle(f"vector has {len(cycle.vector)} entries, C^{k} has rank {C.rank(k)}")
    for a in cycle.vector:
        if a.ring != C.ring:
            raise er.RingMismatch(f"{a.ring} cycle in a {C.ring} complex")
    if cycle.is_covector:
        image = dot(cycle.row(), C.boundary(k), C.zero)
    else:
        image = dot(C.boundary(k + 1), cycle.column(), C.zero)
    if not is_zero(image):
        raise er.NotACycle(f"{cycle.direction} vector at degree {k} is not closed")


def shift(C: ChainComplex, n: int) -> ChainComplex:
    return ChainComplex(C.ring, {k + n: r for k, r in C.ranks.items()},
                        {k + n: A for k, A in C.boundaries.items()})


def shift_cycle(cycle: DistinguishedCycle, n: int) -> DistinguishedCycle:
    return DistinguishedCycle(cycle.degree + n, cycle.vector, cycle.genus, cycle.dplus, cycle.direction)


def _as_chain_map(f, source, target):
    if isinstance(f, dict):
        return f
    common = set(source.degrees) & set(target.degrees)
    if len(source.degrees) != 1 or len(common) != 1:
        raise er.NotAChainMap("a bare matrix needs both complexes in one common degree")
    return {common.pop(): f}


def mapping_cone(f, source: ChainComplex, target: ChainComplex) -> ChainComplex:
    """Cone^k = A^(k+1) + B^k with d(a, b) = (d_A a, f a + d_B b)."""
    if source.ring != target.ring:
        raise er.RingMismatch(f"{source.ring} and {target.ring}")
    maps = _as_chain_map(f, source, target)
    zero = source.zero

    def fk(k):
        A = maps.get(k)
        if A is None:
            return zeros(target.rank(k), source.rank(k), zero)
        if A.shape != (target.rank(k), source.rank(k)):
            raise er.NotAChainMap(f"map in degree {k} has shape {A.shape}")
        return A

    lo = min(min(source.degrees), min(target.degrees))
    hi = max(max(source.degrees), max(target.degrees))
    for k in range(lo, hi + 1):
        left = dot(fk(k), source.boundary(k), zero)
        right = dot(target.boundary(k), fk(k - 1), zero)
        if not matrices_equal(left, right):
            raise er.NotAChainMap(f"f does not commute with d in degree {k}")

    lo = min(min(source.degrees) - 1, min(target.degrees))
    hi = max(max(source.degrees) - 1, max(target.degrees))
    ranks = {k: source.rank(k + 1) + target.rank(k) for k in range(lo, hi + 1)}
    boundaries = {}
    for k in range(lo + 1, hi + 1):
        ra_src, rb_src = source.rank(k), target.rank(k - 1)
        ra_tgt, rb_tgt = source.rank(k + 1), target.rank(k)
        D = zeros(ra_tgt + rb_tgt, ra_src + rb_src, zero)
        D[:ra_tgt, :ra_src] = source.boundary(k + 1)
        D[ra_tgt:, :ra_src] = fk(k)
        D[ra_tgt:, ra_src:] = target.boundary(k)
        boundaries[k] = D
    return ChainComplex(source.ring, ranks, boundaries)


def frac_matrix(A):
    return _map(A, lr.to_fraction)


def frac_rref(A, one):
    """Reduced row echelon form over a field; returns (R, pivot columns)."""
    R = A.copy()
    n, m = R.shape
    pivots = []
    row = 0
    for col in range(m):
        if row == n:
            break
        piv = next((i for i in range(row, n) if R[i, col]), None)
        if piv is None:
            continue
        if piv != row:
            R[[row, piv], :] = R[[piv, row], :]
        inv = one / R[row, col]
        for j in range(m):
            R[row, j] = R[row, j] * inv
        for i in range(n):
            if i != row and R[i, col]:
                factor = R[i, col]
                for j in range(m):
                    R[i, j] = R[i, j] - factor * R[row, j]
        pivots.append(col)
        row += 1
    return R, pivots


def frac_rank(A, one):
    return len(frac_rref(A, one)[1])


def frac_nullspace(A, one, zero):
    """Basis of the right kernel, one vector per free column."""
    R, pivots = frac_rref(A, one)
    m = A.shape[1]
    basis = []
    for free in (j for j in range(m) if j not in pivots):
        v = [zero] * m
        v[free] = one
        for r, p in enumerate(pivots):
            v[p] = zero - R[r, free]
        basis.append(v)
    return basis


def frac_inverse(A, one, zero):
    n = A.shape[0]
    if A.shape != (n, n):
        raise er.NotInvertible("matrix is not square")
    M = zeros(n, 2 * n, zero)
    M[:, :n] = A
    M[:, n:] = identity(n, one, zero)
    R, pivots = frac_rref(M, one)
    if pivots[:n] != list(range(n)):
        raise er.NotInvertible("matrix is singular")
    return R[:, n:]


def frac_det(A, one, zero):
    R = A.copy()
    n = R.shape[0]
    det = one
    for col in range(n):
        piv = next((i for i in range(col, n) if R[i, col]), None)
        if piv is None:
            return zero
        if piv != col:
            R[[col, piv], :] = R[[piv, col], :]
        det = det * R[col, col]
        for i in range(col + 1, n):
            if R[i, col]:
                factor = R[i, col] / R[col, col]
                for j in range(col, n):
                    R[i, j] = R[i, j] - factor * R[col, j]
    return det


def basis_inverse(B, ring):
    """Inverse over the Laurent ring; the determinant must be a monomial."""
    F = frac_matrix(B)
    det = frac_det(F, f2.TORUS_FIELD.one, f2.TORUS_FIELD.zero)
    numer, denom = lr.from_fraction(det, ring) if det else (lr.zero(ring), lr.one(ring))
    if denom != lr.one(ring) or not numer.is_monomial():
        raise er.NotInvertible(f"determinant {lr.to_text(numer)} is not a unit")
    Finv = frac_inverse(F, f2.TORUS_FIELD.one, f2.TORUS_FIELD.zero)

    def back(f):
        n, d = lr.from_fraction(f, ring)
        if d != lr.one(ring):
            raise er.NotInvertible("inverse has non-Laurent entries")
        return n
    return _map(Finv, back)


def change_basis(C: ChainComplex, degree: int, B) -> ChainComplex:
    """New basis of C^degree given by the columns of ``B`` in old coordinates."""
    B = laurent_matrix(B, C.ring) if not isinstance(B, numpy.ndarray) else B
    if B.shape != (C.rank(degree), C.rank(degree)):
        raise er.NotInvertible(f"basis change must be {C.rank(degree)}x{C.rank(degree)}")
    Binv = basis_inverse(B, C.ring)
    boundaries = dict(C.boundaries)
    if degree in boundaries:
        boundaries[degree] = dot(Binv, boundaries[degree], C.zero)
    if degree + 1 in boundaries:
        boundaries[degree + 1] = dot(boundaries[degree + 1], B, C.zero)
    return ChainComplex(C.ring, C.ranks, boundaries)


def change_cycle_basis(cycle: DistinguishedCycle, B, ring) -> DistinguishedCycle:
    B = laurent_matrix(B, ring) if not isinstance(B, numpy.ndarray) else B
    zero = lr.zero(ring)
    if cycle.is_covector:
        vector = dot(cycle.row(), B, zero)[0]
    else:
        vector = dot(basis_inverse(B, ring), cycle.column(), zero)[:, 0]
    return DistinguishedCycle(cycle.degree, tuple(vector), cycle.genus, cycle.dplus, cycle.direction)


def _blocks(C, D, n):
    blocks, offset = {}, 0
    for p in C.degrees:
        q = n - p
        if q in D.ranks:
            blocks[(p, q)] = offset
            offset += C.rank(p) * D.rank(q)
    return blocks, offset


def tensor(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    """Total complex of C (x) D with blocks ordered by the C-degree."""
    if C.ring != D.ring:
        raise er.RingMismatch(f"{C.ring} and {D.ring}")
    zero, one = C.zero, C.one
    lo = min(C.degrees) + min(D.degrees)
    hi = max(C.degrees) + max(D.degrees)
    layout = {n: _blocks(C, D, n) for n in range(lo, hi + 1)}
    ranks = {n: layout[n][1] for n in layout}
    boundaries = {}
    for n in range(lo + 1, hi + 1):
        src_blocks, tgt_blocks = layout[n - 1][0], layout[n][0]
        M = zeros(ranks[n], ranks[n - 1], zero)
        for (p, q), col in src_blocks.items():
            width = C.rank(p) * D.rank(q)
            if (p + 1, q) in tgt_blocks:
                row = tgt_blocks[(p + 1, q)]
                piece = _kron(C.boundary(p + 1), identity(D.rank(q), one, zero), zero)
                M[row:row + piece.shape[0], col:col + width] = piece
            if (p, q + 1) in tgt_blocks:
                row = tgt_blocks[(p, q + 1)]
                piece = _kron(identity(C.rank(p), one, zero), D.boundary(q + 1), zero)
                M[row:row + piece.shape[0], col:col + width] += piece
        boundaries[n] = M
    return ChainComplex(C.ring, ranks, boundaries)


def tensor_cycle(C, D, c1: DistinguishedCycle, c2: DistinguishedCycle) -> DistinguishedCycle:
    if c1.direction != c2.direction:
        raise er.DirectionMismatch(f"{c1.direction} and {c2.direction}")
    n = c1.degree + c2.degree
    blocks, size = _blocks(C, D, n)
    vector = [C.zero] * size
    offset = blocks[(c1.degree, c2.degree)]
    for i, a in enumerate(c1.vector):
        for j, b in enumerate(c2.vector):
            vector[offset + i * len(c2.vector) + j] = a * b
    return DistinguishedCycle(n, tuple(vector), c1.genus + c2.genus, c1.dplus + c2.dplus, c1.direction)


def dualize(C: ChainComplex) -> ChainComplex:
    ranks = {-k: r for k, r in C.ranks.items()}
    boundaries = {-k + 1: A.T.copy() for k, A in C.boundaries.items()}
    return ChainComplex(C.ring, ranks, boundaries)


def dualize_cycle(cycle: DistinguishedCycle) -> DistinguishedCycle:
    direction = K_TO_UNKNOT if cycle.direction == UNKNOT_TO_K else UNKNOT_TO_K
    return DistinguishedCycle(-cycle.degree, cycle.vector, cycle.genus, cycle.dplus, direction)


@dataclass
class Diagonalization:
    """U * A * V = D over the valuation ring; ``ords`` lists the diagonal in pivot order."""
    ords: list
    U: numpy.ndarray
    Uinv: numpy.ndarray
    V: numpy.ndarray
    D: numpy.ndarray

    @property
    def rank(self):
        return len(self.ords)


def elementary_divisors(A, weight: vl.MonomialWeight) -> Diagonalization:
    field_ = f2.SERIES_FIELD
    one, zero = field_.one, field_.zero
    D = A.copy()
    n, m = D.shape
    U, Uinv, V = identity(n, one, zero), identity(n, one, zero), identity(m, one, zero)
    ords = []
    for t in range(min(n, m)):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if D[i, j]:
                    o = vl.ord_rf(D[i, j], weight)
                    if best is None or o < best[0]:
                        best = (o, i, j)
        if best is None:
            break
        o, i, j = best
        if i != t:
            D[[t, i], :] = D[[i, t], :]
            U[[t, i], :] = U[[i, t], :]
            Uinv[:, [t, i]] = Uinv[:, [i, t]]
        if j != t:
            D[:, [t, j]] = D[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
        pivot = D[t, t]
        for i in range(t + 1, n):
            if D[i, t]:
                f = D[i, t] / pivot
                for c in range(t, m):
                    D[i, c] = D[i, c] - f * D[t, c]
                for c in range(n):
                    U[i, c] = U[i, c] - f * U[t, c]
                for r in range(n):
                    Uinv[r, t] = Uinv[r, t] + f * Uinv[r, i]
        for j in range(t + 1, m):
            if D[t, j]:
                g = D[t, j] / pivot
                D[t, j] = zero
                for r in range(m):
                    V[r, j] = V[r, j] - g * V[r, t]
        ords.append(o)
    return Diagonalization(ords, U, Uinv, V, D)


def to_series(A, sigma):
    return _map(A, lambda a: bc.apply(sigma, a))


@dataclass(frozen=True)
class DegreeHomology:
    degree: int
    rank: int
    free_rank: int
    torsion: tuple
    divisors: tuple


@dataclass(frozen=True)
class HomologySummary:
    base_change: str
    degrees: tuple
    cycle_degree: int = None
    coefficient: object = None
    torsion_components: tuple = ()

    def at(self, k) -> DegreeHomology:
        for h in self.degrees:
            if h.degree == k:
                return h
        raise KeyError(k)

    def free_rank(self, k):
        return self.at(k).free_rank

    def torsion(self, k):
        return self.at(k).torsion

    def all_torsion(self):
        out = []
        for h in self.degrees:
            out.extend(h.torsion)
        return sorted(out, reverse=True)

    def total_free_rank(self):
        return sum(h.free_rank for h in self.degrees)


def _free_generator(Bp, weight):
    field_ = f2.SERIES_FIELD
    (p,) = frac_nullspace(Bp, field_.one, field_.zero)
    nonzero = [(vl.ord_rf(a, weight), j) for j, a in enumerate(p) if a]
    _, j = min(nonzero)
    return [a / p[j] for a in p], j


def homology_over_valuation(C: ChainComplex, sigma, cycle: DistinguishedCycle = None) -> HomologySummary:
    field_ = f2.SERIES_FIELD
    zero = field_.zero
    weight = sigma.weight
    if cycle is not None:
        check_cycle(C, cycle)
    degrees = []
    coefficient, components = None, ()
    for k in C.degrees:
        n = C.rank(k)
        Ain = to_series(C.boundary(k), sigma)
        Bout = to_series(C.boundary(k + 1), sigma)
        diag = elementary_divisors(Ain, weight)
        s = diag.rank
        Bp = dot(Bout, diag.Uinv, zero)[:, s:]
        free_rank = (n - s) - frac_rank(Bp, field_.one)
        torsion = tuple(sorted((o for o in diag.ords if o > weight.zero), reverse=True))
        degrees.append(DegreeHomology(k, n, free_rank, torsion, tuple(diag.ords)))
        if cycle is None or cycle.degree != k:
            continue
        if free_rank != 1:
            raise er.RankNotOne(f"H^{k} over {sigma.label()} has free rank {free_rank}")
        w, j = _free_generator(Bp, weight)
        vector = to_series(cycle.column(), sigma)
        if cycle.is_covector:
            lift = zeros(n, 1, zero)
            for i, a in enumerate(w):
                lift[s + i, 0] = a
            x = dot(diag.Uinv, lift, zero)
            coefficient = dot(vector.T.copy(), x, zero)[0, 0]
        else:
            z = dot(diag.U, vector, zero)[:, 0]
            coefficient = z[s + j]
            if any(z[s + i] != coefficient * a for i, a in enumerate(w)):
                raise er.NotACycle("cycle is not proportional to the free generator")
            components = tuple(z[:s])
        if not coefficient:
            raise er.CycleInTorsion(f"{cycle.direction} class at degree {k} has no free component")
    return HomologySummary(sigma.label(), tuple(degrees), cycle.degree if cycle else None, coefficient, components)


def complex_from_json(data: dict) -> ChainComplex:
    ring = data.get("ring", lr.FULL)
    ranks = {int(k): int(v) for k, v in data["ranks"].items()}
    if "degrees" in data:
        for k in data["degrees"]:
            ranks.setdefault(int(k), 0)
    boundaries = {}
    for k, rows in data.get("boundaries", {}).items():
        k = int(k)
        shape = (ranks.get(k, 0), ranks.get(k - 1, 0))
        if len(rows) != shape[1] or any(len(row) != shape[0] for row in rows):
            raise er.ParseError(f"boundary {k} must list {shape[1]} images of length {shape[0]}")
        boundaries[k] = laurent_matrix(rows, ring, (shape[1], shape[0])).T.copy()
    return ChainComplex(ring, ranks, boundaries)


def complex_to_json(C: ChainComplex) -> dict:
    return {
        "ring": C.ring,
        "degrees": list(C.degrees),
        "ranks": {str(k): r for k, r in C.ranks.items()},
        "boundaries": {str(k): [[lr.to_text(a) for a in col] for col in A.T]
                       for k, A in C.boundaries.items()},
    }


def cycle_from_json(data: dict, ring) -> DistinguishedCycle:
    return DistinguishedCycle(
        degree=int(data["degree"]),
        vector=tuple(lr.parse(str(a), ring) for a in data["vector"]),
        genus=int(data.get("genus", 0)),
        dplus=int(data.get("dplus", 0)),
        direction=data.get("direction", UNKNOT_TO_K),
    )


def cycle_to_json(cycle: DistinguishedCycle) -> dict:
    return {
        "degree": cycle.degree,
        "vector": [lr.to_text(a) for a in cycle.vector],
        "genus": cycle.genus,
        "dplus": cycle.dplus,
        "direction": cycle.direction,
    }
