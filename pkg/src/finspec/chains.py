"""Integer chain complexes and exact homology.

Complexes are graded free Z-modules with labelled bases and boundary
matrices; homology is computed by Smith normal form.  Everything is
arbitrary-precision integer arithmetic; no floats anywhere.

Also here: normalized reduced chains of a finite pointed simplicial set,
chain maps, cones, total complexes, Moore totalization of simplicial
objects of complexes, good truncation, the shuffle (suspension) injection
and the Alexander-Whitney retraction, and range-certified complexes.
"""

from __future__ import annotations

from . import intlinalg as la
from .simplicial import SGEN


class AbelianGroup:
    """Finitely generated abelian group: free rank + invariant factors."""

    def __init__(self, free_rank=0, factors=()):
        self.free_rank = free_rank
        self.factors = tuple(int(f) for f in factors if f not in (0, 1, -1))
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must divide in turn")

    def is_zero(self):
        return self.free_rank == 0 and not self.factors

    def __eq__(self, other):
        if isinstance(other, AbelianGroup):
            return (self.free_rank, self.factors) == (other.free_rank, other.factors)
        return NotImplemented

    def __hash__(self):
        return hash((self.free_rank, self.factors))

    def __repr__(self):
        parts = []
        if self.free_rank:
            parts.append("Z^%d" % self.free_rank if self.free_rank > 1 else "Z")
        parts.extend("Z/%d" % f for f in self.factors)
        return " + ".join(parts) if parts else "0"


ZERO_GROUP = AbelianGroup()


class ChainComplex:
    """Bounded complex of free Z-modules.  ranks[d] is the rank in degree
    d; diff[d] is the matrix of the boundary C_d -> C_{d-1} (rows indexed
    by degree d-1, columns by degree d).  Basis labels are optional."""

    def __init__(self, ranks, diffs, labels=None, name=""):
        self.ranks = {d: r for d, r in ranks.items() if r}
        self.diffs = {}
        self.labels = labels or {}
        self.name = name
        for d, M in diffs.items():
            if self.rank(d) and self.rank(d - 1):
                self.diffs[d] = M

    def rank(self, d):
        return self.ranks.get(d, 0)

    def degrees(self):
        return sorted(self.ranks)

    @property
    def lo(self):
        return min(self.ranks) if self.ranks else 0

    @property
    def hi(self):
        return max(self.ranks) if self.ranks else 0

    def diff(self, d):
        M = self.diffs.get(d)
        if M is None:
            return la.zeros(self.rank(d - 1), self.rank(d))
        return M

    def validate(self):
        for d in list(self.ranks):
            if self.rank(d) and self.rank(d - 1) and self.rank(d - 2):
                if not la.is_zero_matrix(la.mat_mul(self.diff(d - 1), self.diff(d))):
                    raise AssertionError("dd != 0 at degree %d" % d)
            M = self.diffs.get(d)
            if M is not None:
                if len(M) != self.rank(d - 1) or \
                        any(len(row) != self.rank(d) for row in M):
                    raise AssertionError("boundary shape mismatch at %d" % d)
        return True

    def homology(self, d):
        """H_d as an AbelianGroup, via Smith normal form."""
        n = self.rank(d)
        if n == 0:
            return ZERO_GROUP
        K = la.kernel_basis(self.diff(d), cols=n) if self.rank(d - 1) else \
            [[1 if i == j else 0 for i in range(n)] for j in range(n)]
        if not K:
            return ZERO_GROUP
        if self.rank(d + 1):
            B = [list(col) for col in zip(*self.diff(d + 1))]
            A = [[K[j][i] for j in range(len(K))] for i in range(n)]
            Y = la.solve_columns(A, B)
            if Y is None:
                raise AssertionError("image not inside kernel")
            Ymat = [[Y[c][r] for c in range(len(Y))] for r in range(len(K))]
            D, _, _ = la.smith_normal_form(Ymat)
            rankY = sum(1 for i in range(min(len(D), len(D[0]) if D else 0))
                        if D[i][i])
            factors = [D[i][i] for i in range(rankY) if abs(D[i][i]) > 1]
            return AbelianGroup(len(K) - rankY, factors)
        return AbelianGroup(len(K), ())

    def homology_table(self, degrees):
        return {d: self.homology(d) for d in degrees}

    def shift(self, n):
        """Shift up by n: (shift C)_d = C_{d-n}, boundaries unchanged."""
        return ChainComplex({d + n: r for d, r in self.ranks.items()},
                            {d + n: M for d, M in self.diffs.items()},
                            {d + n: v for d, v in self.labels.items()},
                            self.name)

    def truncate_above(self, top):
        """Keep degrees <= top (a subcomplex; exact in degrees < top)."""
        return ChainComplex({d: r for d, r in self.ranks.items() if d <= top},
                            {d: M for d, M in self.diffs.items() if d <= top},
                            {d: v for d, v in self.labels.items() if d <= top},
                            self.name)

    def truncate_below(self, bottom):
        """Naive truncation keeping degrees >= bottom (a quotient complex;
        exact in degrees > bottom)."""
        return ChainComplex({d: r for d, r in self.ranks.items() if d >= bottom},
                            {d: M for d, M in self.diffs.items() if d - 1 >= bottom},
                            {d: v for d, v in self.labels.items() if d >= bottom},
                            self.name)

    def good_truncate_below(self, bottom):
        """Good truncation: degree bottom becomes ker(d), all homology in
        degrees >= bottom is preserved, nothing below survives.
        Returns (complex, inclusion ChainMap into self)."""
        if self.rank(bottom) == 0 or self.rank(bottom - 1) == 0:
            C = self.truncate_below(bottom)
            inc = ChainMap(C, self, {d: la.identity(C.rank(d))
                                     for d in C.degrees()})
            return C, inc
        K = la.kernel_basis(self.diff(bottom), cols=self.rank(bottom))
        ranks = {d: r for d, r in self.ranks.items() if d > bottom}
        diffs = {d: M for d, M in self.diffs.items() if d > bottom + 1}
        ranks[bottom] = len(K)
        # express d_{bottom+1} in kernel coordinates
        if self.rank(bottom + 1):
            A = [[K[j][i] for j in range(len(K))] for i in range(self.rank(bottom))]
            B = [list(col) for col in zip(*self.diff(bottom + 1))]
            Y = la.solve_columns(A, B)
            if Y is None:
                raise AssertionError("boundary image not in kernel")
            diffs[bottom + 1] = [[Y[c][r] for c in range(len(Y))]
                                 for r in range(len(K))]
        C = ChainComplex(ranks, diffs, name=self.name)
        mats = {d: la.identity(self.rank(d)) for d in ranks if d > bottom}
        if len(K):
            mats[bottom] = [[K[j][i] for j in range(len(K))]
                            for i in range(self.rank(bottom))]
        return C, ChainMap(C, self, mats)

    def dump(self):
        """Plain-text dump: one boundary matrix per degree, row-major."""
        lines = []
        for d in self.degrees():
            lines.append("degree %d rank %d" % (d, self.rank(d)))
            if self.rank(d) and self.rank(d - 1):
                for row in self.diff(d):
                    lines.append(" ".join(str(x) for x in row))
        return "\n".join(lines) + "\n"


ZERO_COMPLEX = ChainComplex({}, {})


class ChainMap:
    """Chain map between complexes; mats[d]: source degree d -> target
    degree d."""

    def __init__(self, source, target, mats, name=""):
        self.source = source
        self.target = target
        self.mats = {d: M for d, M in mats.items()
                     if source.rank(d) and target.rank(d)}
        self.name = name

    def mat(self, d):
        M = self.mats.get(d)
        if M is None:
            return la.zeros(self.target.rank(d), self.source.rank(d))
        return M

    def validate(self):
        for d in self.source.degrees():
            rows = self.target.rank(d - 1)
            cols = self.source.rank(d)
            if not rows or not cols:
                continue
            lhs = la.mat_mul(self.target.diff(d), self.mat(d)) \
                if self.target.rank(d) else la.zeros(rows, cols)
            rhs = la.mat_mul(self.mat(d - 1), self.source.diff(d)) \
                if self.source.rank(d - 1) else la.zeros(rows, cols)
            if lhs != rhs:
                raise AssertionError("not a chain map at degree %d" % d)
        return True

    def compose(self, other):
        """self after other."""
        mats = {}
        for d in other.source.degrees():
            if self.target.rank(d):
                mats[d] = la.mat_mul(self.mat(d), other.mat(d))
        return ChainMap(other.source, self.target, mats)

    def shift(self, n):
        return ChainMap(self.source.shift(n), self.target.shift(n),
                        {d + n: M for d, M in self.mats.items()}, self.name)

    def add(self, other, sign=1):
        mats = {}
        for d in set(self.mats) | set(other.mats):
            A, B = self.mat(d), other.mat(d)
            mats[d] = [[A[i][j] + sign * B[i][j] for j in range(len(A[0]))]
                       for i in range(len(A))]
        return ChainMap(self.source, self.target, mats)

    def scale(self, c):
        return ChainMap(self.source, self.target,
                        {d: [[c * x for x in row] for row in M]
                         for d, M in self.mats.items()}, self.name)

    def cone(self):
        """Mapping cone: degree d is target_d + source_{d-1}."""
        S, T = self.source, self.target
        ranks, diffs = {}, {}
        degrees = set()
        for d in S.degrees():
            degrees.add(d + 1)
        for d in T.degrees():
            degrees.add(d)
        for d in sorted(degrees):
            ranks[d] = T.rank(d) + S.rank(d - 1)
        for d in sorted(degrees):
            rows = ranks.get(d - 1, 0)
            cols = ranks.get(d, 0)
            if not rows or not cols:
                continue
            M = la.zeros(rows, cols)
            tT, tS = T.rank(d - 1), S.rank(d - 2)
            dT = T.diff(d)
            for i in range(T.rank(d - 1)):
                for j in range(T.rank(d)):
                    M[i][j] = dT[i][j]
            F = self.mat(d - 1)
            for i in range(T.rank(d - 1)):
                for j in range(S.rank(d - 1)):
                    M[i][T.rank(d) + j] = F[i][j]
            dS = S.diff(d - 1)
            for i in range(S.rank(d - 2)):
                for j in range(S.rank(d - 1)):
                    M[T.rank(d - 1) + i][T.rank(d) + j] = -dS[i][j]
            diffs[d] = M
        return ChainComplex(ranks, diffs, name="cone")


def identity_chain_map(C):
    return ChainMap(C, C, {d: la.identity(C.rank(d)) for d in C.degrees()})


def zero_chain_map(S, T):
    return ChainMap(S, T, {})


def direct_sum(complexes, name="sum"):
    """Direct sum; returns (complex, list of (inclusion, projection) index
    offsets per degree)."""
    ranks, diffs = {}, {}
    offsets = []
    degs = sorted({d for C in complexes for d in C.degrees()})
    for C in complexes:
        offsets.append({d: ranks.get(d, 0) for d in degs})
        for d in degs:
            ranks[d] = ranks.get(d, 0) + C.rank(d)
    for d in degs:
        if not ranks.get(d) or not ranks.get(d - 1):
            continue
        M = la.zeros(ranks[d - 1], ranks[d])
        for C, off in zip(complexes, offsets):
            dC = C.diff(d)
            for i in range(C.rank(d - 1)):
                for j in range(C.rank(d)):
                    M[off[d - 1] + i][off[d] + j] = dC[i][j]
        diffs[d] = M
    return ChainComplex(ranks, diffs, name=name), offsets


# -- normalized chains -------------------------------------------------------


def normalized_chains(X, top=None):
    """Normalized reduced chains of a finite pointed simplicial set: free
    on nondegenerate non-basepoint generators, boundary the alternating
    face sum with degenerate and basepoint terms dropped."""
    if top is None:
        top = X.top_dimension
    labels = {}
    index = {}
    ranks = {}
    for d in range(top + 1):
        gens = [g for g in X.generators(d) if g != X.basepoint]
        if gens:
            ranks[d] = len(gens)
            labels[d] = list(gens)
            index[d] = {g: i for i, g in enumerate(gens)}
    diffs = {}
    for d in range(1, top + 1):
        if not ranks.get(d) or not ranks.get(d - 1):
            continue
        M = la.zeros(ranks[d - 1], ranks[d])
        for j, g in enumerate(labels[d]):
            sign = 1
            for i in range(d + 1):
                fg, fw = X.face(SGEN(g), i)
                if fw == () and fg != X.basepoint:
                    M[index[d - 1][fg]][j] += sign
                sign = -sign
        diffs[d] = M
    return ChainComplex(ranks, diffs, labels, name=X.name)


def chain_map_of(f, CX=None, CY=None):
    """Chain map induced by a pointed map on normalized chains."""
    X, Y = f.source, f.target
    if CX is None:
        CX = normalized_chains(X)
    if CY is None:
        CY = normalized_chains(Y)
    mats = {}
    for d in CX.degrees():
        if not CY.rank(d):
            continue
        idx = {g: i for i, g in enumerate(CY.labels[d])}
        M = la.zeros(CY.rank(d), CX.rank(d))
        for j, g in enumerate(CX.labels[d]):
            ig, iw = f(SGEN(g))
            if iw == () and ig != Y.basepoint:
                M[idx[ig]][j] = 1
        mats[d] = M
    return ChainMap(CX, CY, mats, f.name)


# -- shuffle / Alexander-Whitney for the suspension coordinate ---------------


def suspension_injection(X, SX, CX=None, CSX=None):
    """The shuffle chain map C_d(X) -> C_{d+1}(smash([circle, X])).

    Sends a nondegenerate cell x of dimension d to
    sum_j (-1)^j (s_{complement of j} e, s_j x); the suspension coordinate
    sits leftmost.  Returns a ChainMap from normalized_chains(X) shifted
    up by one; it is a chain map and a split quasi-isomorphism.
    """
    from .simplicial import word_insert, smash_normal
    if CX is None:
        CX = normalized_chains(X)
    if CSX is None:
        CSX = normalized_chains(SX)
    mats = {}
    for d in CX.degrees():
        n = d + 1
        if not CSX.rank(n):
            continue
        idx = {g: i for i, g in enumerate(CSX.labels[n])}
        M = la.zeros(CSX.rank(n), CX.rank(d))
        for col, g in enumerate(CX.labels[d]):
            comps = list(g) if X.smash_factors else [(g, ())]
            for j in range(d + 1):
                eword = tuple(w for w in range(d, -1, -1) if w != j)
                parts = [("e", eword)]
                parts += [(cg, word_insert(cw, j)) for cg, cw in comps]
                expr = smash_normal(SX, parts, n)
                if expr[1] == () and expr[0] != SX.basepoint:
                    # shuffle sign (-1)^j, times (-1)^d so the map commutes
                    # with the unsigned degree shift
                    M[idx[expr[0]]][col] += -1 if (j + d) % 2 else 1
        mats[d + 1] = M
    return ChainMap(CX.shift(1), CSX, mats, "suspension")


def suspension_retraction(X, SX, CX=None, CSX=None):
    """One-sided inverse to suspension_injection: a cell whose circle
    coordinate carries the word {n-1..1} and whose other coordinates all
    carry the letter 0 retracts to its stripped X-part; everything else
    maps to zero.  Composes with the injection to the identity."""
    from .simplicial import word_remove
    if CX is None:
        CX = normalized_chains(X)
    if CSX is None:
        CSX = normalized_chains(SX)
    mats = {}
    for n in CSX.degrees():
        d = n - 1
        if not CX.rank(d):
            continue
        idx = {g: i for i, g in enumerate(CX.labels[d])}
        M = la.zeros(CX.rank(d), CSX.rank(n))
        for col, cell in enumerate(CSX.labels[n]):
            eg, ew = cell[0]
            if ew != tuple(range(n - 1, 0, -1)):
                continue
            if any(0 not in cw for _, cw in cell[1:]):
                continue
            parts = tuple((cg, word_remove(cw, 0)) for cg, cw in cell[1:])
            sign = -1 if (n - 1) % 2 else 1  # matches the injection sign
            if X.smash_factors:
                if parts in idx:
                    M[idx[parts]][col] = sign
            else:
                g, w = parts[0]
                if w == () and g in idx:
                    M[idx[g]][col] = sign
        mats[n] = M
    return ChainMap(CSX, CX.shift(1), mats, "aw")


# -- totalization -------------------------------------------------------------


def total_complex(columns, horizontal_maps, name="total"):
    """Total complex of a double complex given as columns.

    columns: dict s -> ChainComplex (vertical differentials).
    horizontal_maps: dict s -> ChainMap from columns[s] to columns[s-1].
    Total degree d = s + t; differential = d_h + (-1)^s d_v.
    Returns (complex, index) where index maps (s, t, i) to a position.
    """
    ss = sorted(columns)
    ranks = {}
    pos = {}
    for s in ss:
        C = columns[s]
        for t in C.degrees():
            d = s + t
            pos[(s, t)] = ranks.get(d, 0)
            ranks[d] = ranks.get(d, 0) + C.rank(t)
    diffs = {}
    for d in sorted(ranks):
        rows = ranks.get(d - 1, 0)
        cols = ranks.get(d, 0)
        if not rows or not cols:
            continue
        M = la.zeros(rows, cols)
        for s in ss:
            C = columns[s]
            t = d - s
            if not C.rank(t):
                continue
            c0 = pos[(s, t)]
            # vertical part with sign (-1)^s
            if C.rank(t - 1):
                r0 = pos[(s, t - 1)]
                dV = C.diff(t)
                sgn = -1 if s % 2 else 1
                for i in range(C.rank(t - 1)):
                    for j in range(C.rank(t)):
                        if dV[i][j]:
                            M[r0 + i][c0 + j] += sgn * dV[i][j]
            # horizontal part
            h = horizontal_maps.get(s)
            if h is not None and s - 1 in columns and columns[s - 1].rank(t):
                r0 = pos[(s - 1, t)]
                H = h.mat(t)
                for i in range(columns[s - 1].rank(t)):
                    for j in range(C.rank(t)):
                        if H[i][j]:
                            M[r0 + i][c0 + j] += H[i][j]
        diffs[d] = M
    return ChainComplex(ranks, diffs, name=name), pos


def moore_total(levels, face_maps, name="moore"):
    """Moore totalization of a truncated simplicial object of complexes:
    horizontal differential the alternating sum of faces, after dividing
    out the degenerate part is NOT done here -- pass normalized levels.

    levels: list of ChainComplex (index = simplicial degree s).
    face_maps: dict (s, i) -> ChainMap levels[s] -> levels[s-1].
    """
    columns = {s: levels[s] for s in range(len(levels))}
    hmaps = {}
    for s in range(1, len(levels)):
        m = None
        for i in range(s + 1):
            f = face_maps[(s, i)]
            f = f if i % 2 == 0 else f.scale(-1)
            m = f if m is None else m.add(f)
        hmaps[s] = m
    return total_complex(columns, hmaps, name=name)


# -- connectivity certificates -------------------------------------------------


def certified_connectivity(X, cache=True):
    """Exact connectivity certificate for a finite pointed simplicial set.

    Combines the combinatorial reducedness bound with a Hurewicz bound:
    when the set is reduced and the edge-path group is certified trivial,
    X is c-connected iff its reduced homology vanishes through degree c.
    Returns None when nothing can be certified (e.g. two vertices).
    """
    from .simplicial import UNBOUNDED_CONN
    cached = getattr(X, "_cert_conn", None)
    if cached is not None:
        return cached
    base = X.connectivity_bound()
    if base is None:
        return None
    result = base
    if base < X.top_dimension and X.simply_connected_certificate():
        C = normalized_chains(X)
        c = 0
        d = 1
        while d <= X.top_dimension and C.homology(d).is_zero():
            c = d
            d += 1
        if d > X.top_dimension:
            c = UNBOUNDED_CONN  # simply connected and acyclic: contractible
        result = max(base, c)
    if cache:
        X._cert_conn = result
    return result


# -- comparisons --------------------------------------------------------------


def is_quasi_iso_in_range(f, lo, hi):
    """Per-degree verdicts: cone(f) acyclic in the relevant degrees."""
    cone = f.cone()
    return {d: cone.homology(d).is_zero() and cone.homology(d + 1).is_zero()
            for d in range(lo, hi + 1)}


UNCERTIFIED = "UNCERTIFIED"


class RangeCertified:
    """A chain complex with a homology-validity certificate: homology is
    trusted in degrees <= valid_degree.  Operations may shrink or
    propagate the certificate, never silently enlarge it."""

    UNBOUNDED = 10 ** 6

    def __init__(self, complex, valid_degree, provenance=""):
        self.complex = complex
        self.valid_degree = valid_degree
        self.provenance = provenance

    def restrict(self, new_degree, note=""):
        if new_degree > self.valid_degree:
            raise ValueError("certificates cannot grow without a cited bound")
        return RangeCertified(self.complex, new_degree,
                              self.provenance + ("; " + note if note else ""))

    @staticmethod
    def combine(parts, note=""):
        v = min(p.valid_degree for p in parts) if parts else RangeCertified.UNBOUNDED
        return v

    def homology(self, d):
        if d > self.valid_degree:
            return UNCERTIFIED
        return self.complex.homology(d)


def is_homology_iso_in_range(f, src_cert, tgt_cert, r):
    """Verdicts per degree <= min(r, certificates): True/False/UNCERTIFIED."""
    top = min(r, src_cert.valid_degree, tgt_cert.valid_degree)
    verdicts = {}
    cone = f.cone()
    for d in range(min(0, top), r + 1):
        if d > top:
            verdicts[d] = UNCERTIFIED
        else:
            verdicts[d] = cone.homology(d).is_zero() and \
                cone.homology(d + 1).is_zero()
    return verdicts
