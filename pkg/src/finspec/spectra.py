"""Symmetric spectra: truncated symmetric sequences with structure maps.

A spectrum stores levels 0..N, adjacent-transposition actions, and the
single-suspension structure maps sigma_n: S^1 ^ X_n -> X_{n+1} (the new
suspension coordinate always lands leftmost).  Free spectra, monoid ring
spectra, shifts, spectrum maps, spectrum homology with stabilization
certificates, and semistability checks live here.
"""

from __future__ import annotations

from itertools import combinations

from . import intlinalg as la
from .chains import (
    certified_connectivity, chain_map_of, is_quasi_iso_in_range,
    normalized_chains, suspension_injection,
)
from .simplicial import (
    PointedMap, SGEN, circle, discrete, identity_map, point, smash,
    smash_normal, smash_permute, sphere, sphere0, wedge, word_apply,
)
from .symseq import (
    Permutation, SymmetricSequence, expand_components, part_expr,
)

CIRCLE = circle()


def injections(n, m):
    """All injections {1..n} -> {1..m} as image tuples."""
    out = []

    def rec(i, used, acc):
        if i > n:
            out.append(tuple(acc))
            return
        for v in range(1, m + 1):
            if v not in used:
                rec(i + 1, used | {v}, acc + [v])

    rec(1, frozenset(), [])
    return out


def placement_permutation(m, idx):
    """The cycle in Sigma_m sending 1 to position idx and shifting
    2..idx down by one; coordinates above idx are fixed."""
    imgs = []
    for j in range(1, m + 1):
        if j == 1:
            imgs.append(idx)
        elif j <= idx:
            imgs.append(j - 1)
        else:
            imgs.append(j)
    return Permutation(imgs)


def extension_permutation(f, m):
    """Canonical extension of an injection f: n -> m to a permutation of
    {1..m}: complement values are listed in increasing order first, the
    image values follow in the order f(1), ..., f(n).  The sphere block of
    a free-spectrum summand sits at coordinates 1..m-n."""
    n = len(f)
    comp = [v for v in range(1, m + 1) if v not in set(f)]
    return Permutation(tuple(comp) + tuple(f))


class SymmetricSpectrum(SymmetricSequence):
    """Symmetric sequence with structure maps sigma[n]: S^1 ^ X_n -> X_{n+1}
    for n < N.  sigma[n].source must be smash([CIRCLE, X_n])."""

    def __init__(self, levels, transpositions, sigmas, name=""):
        super().__init__(levels, transpositions, name)
        self.sigmas = sigmas
        self.suspension_like_from = None  # structural sigma-iso tag

    def sigma(self, n):
        return self.sigmas[n]

    def suspension_source(self, n):
        return self.sigmas[n].source

    def iterated_structure(self, p, q):
        """sigma^p: S^p ^ X_q -> X_{p+q} as a map from
        smash([circle]*p + [X_q]); new coordinates enter leftmost."""
        if p == 0:
            return identity_map(self.level(q))
        if p == 1:
            return self.sigma(q)
        inner = self.iterated_structure(p - 1, q)
        src = smash([CIRCLE] * p + [self.level(q)])
        assign = {}
        for g, d in src.dim_of.items():
            if g == src.basepoint:
                continue
            inner_expr = part_expr(inner.source, g[1:], d)
            mid = inner(inner_expr)
            parts = [g[0]] + expand_components(self.level(p - 1 + q), mid)
            outer_src = self.suspension_source(p - 1 + q)
            assign[g] = self.sigma(p - 1 + q)(
                smash_normal(outer_src, parts, d))
        return PointedMap(src, self.level(p + q), assign)

    def validate_spectrum(self, pmax=2):
        """Structure maps are pointed maps; iterated structure maps are
        Sigma_p x Sigma_q equivariant (checked through p <= pmax)."""
        for n in range(self.N):
            self.sigma(n).validate()
        err = self.check_action()
        if err:
            raise AssertionError(err)
        for q in range(self.N + 1):
            for p in range(1, pmax + 1):
                if p + q > self.N:
                    continue
                sig = self.iterated_structure(p, q)
                src = sig.source
                # Sigma_q equivariance (block 1 x rho)
                for i in range(1, q):
                    rho = Permutation.transposition(q, i)
                    inner = self.action(q, rho)
                    src_auto = _smash_block_map(src, p, inner)
                    lhs = sig.compose(src_auto)
                    blk = Permutation.block(p, q, Permutation.identity(p), rho)
                    rhs = self.action(p + q, blk).compose(sig)
                    if not lhs.same_assignment(rhs):
                        raise AssertionError(
                            "sigma^%d not Sigma_%d-equivariant at level %d"
                            % (p, q, q))
                # Sigma_p equivariance (sphere coordinates)
                for i in range(1, p):
                    perm = list(range(p))
                    perm[i - 1], perm[i] = perm[i], perm[i - 1]
                    src_auto = smash_permute(
                        src, src, perm + list(range(p, len(src.smash_factors))))
                    lhs = sig.compose(src_auto)
                    tau = Permutation.block(
                        p, q, Permutation.transposition(p, i),
                        Permutation.identity(q))
                    rhs = self.action(p + q, tau).compose(sig)
                    if not lhs.same_assignment(rhs):
                        raise AssertionError(
                            "sigma^%d not Sigma_%d-equivariant on spheres"
                            % (p, p))
        return True


def _smash_block_map(sm, p, inner_map):
    """Automorphism of smash([c]*p + [X]) applying inner_map to the X-part."""
    assign = {}
    for g, d in sm.dim_of.items():
        if g == sm.basepoint:
            continue
        img = inner_map(part_expr(inner_map.source, g[p:], d))
        parts = list(g[:p]) + expand_components(inner_map.target, img)
        assign[g] = smash_normal(sm, parts, d)
    return PointedMap(sm, sm, assign)


class SpectrumMap:
    """Map of symmetric spectra: levelwise pointed maps."""

    def __init__(self, source, target, level_maps, name=""):
        self.source = source
        self.target = target
        self.level_maps = list(level_maps)
        self.name = name

    def level(self, n):
        return self.level_maps[n]

    def validate(self, check_equivariance=True):
        X, Y = self.source, self.target
        for n in range(min(X.N, Y.N) + 1):
            self.level(n).validate()
        for n in range(min(X.N, Y.N)):
            # naturality with sigma: f_{n+1} o sigma^X = sigma^Y o (1 ^ f_n)
            src = X.suspension_source(n)
            lhs = self.level(n + 1).compose(X.sigma(n))
            smap = _smash_circle_map(src, Y.suspension_source(n), self.level(n))
            rhs = Y.sigma(n).compose(smap)
            if not lhs.same_assignment(rhs):
                raise AssertionError("structure maps not respected at %d" % n)
        if check_equivariance:
            for n in range(min(X.N, Y.N) + 1):
                for i in range(1, n):
                    rho = Permutation.transposition(n, i)
                    lhs = self.level(n).compose(X.action(n, rho))
                    rhs = Y.action(n, rho).compose(self.level(n))
                    if not lhs.same_assignment(rhs):
                        raise AssertionError(
                            "not equivariant at level %d" % n)
        return True

    def compose(self, other):
        return SpectrumMap(other.source, self.target,
                           [self.level(n).compose(other.level(n))
                            for n in range(min(self.target.N,
                                               other.source.N) + 1)])

    def is_level_iso(self):
        return all(self.level(n).is_isomorphism()
                   for n in range(min(self.source.N, self.target.N) + 1))


def _smash_circle_map(src_sm, tgt_sm, f):
    """smash([circle, X]) -> smash([circle, Y]) induced by f: X -> Y."""
    assign = {}
    for g, d in src_sm.dim_of.items():
        if g == src_sm.basepoint:
            continue
        img = f(part_expr(f.source, g[1:], d))
        parts = [g[0]] + expand_components(f.target, img)
        assign[g] = smash_normal(tgt_sm, parts, d)
    return PointedMap(src_sm, tgt_sm, assign)


def identity_spectrum_map(X):
    return SpectrumMap(X, X, [identity_map(X.level(n))
                              for n in range(X.N + 1)], "id")


# -- free spectra -------------------------------------------------------------


class FreeSpectrum(SymmetricSpectrum):
    """F_n K: level m is a wedge over injections f: n -> m of
    S^{m-n} ^ K; the sphere coordinates correspond to the complement of
    the image of f in increasing order, the K-part comes last."""

    def __init__(self, n, K, N, name=None):
        self.n = n
        self.K = K
        levels, summand_space, summand_incl = [], [], []
        for m in range(N + 1):
            if m < n:
                levels.append(point())
                summand_space.append(None)
                summand_incl.append({})
                continue
            sm = smash([CIRCLE] * (m - n) + [K]) if m > n else smash([K])
            injs = injections(n, m)
            W, incs = wedge([sm] * len(injs), tags=[("inj", f) for f in injs])
            levels.append(W)
            summand_space.append(sm)
            summand_incl.append({f: inc for f, inc in zip(injs, incs)})
        self.summand_space = summand_space
        self.summand_incl = summand_incl

        transpositions = []
        for m in range(N + 1):
            ts = []
            for i in range(1, m):
                ts.append(self._transposition_map(m, i, levels[m]))
            transpositions.append(ts)

        sigmas = []
        for m in range(N):
            sigmas.append(self._structure_map(m, levels))
        super().__init__(levels, transpositions, sigmas,
                         name or "F_%d" % n)
        if n == 0:
            self.suspension_like_from = 0

    def _transposition_map(self, m, i, W):
        if m < self.n:
            return identity_map(W)
        gamma = Permutation.transposition(m, i)
        assign = {}
        sm = self.summand_space[m]
        for f in self.summand_incl[m]:
            gf = tuple(gamma(v) for v in f)
            comp_src = [v for v in range(1, m + 1) if v not in set(f)]
            comp_tgt = [v for v in range(1, m + 1) if v not in set(gf)]
            pos_tgt = {v: i2 for i2, v in enumerate(comp_tgt)}
            k = m - self.n
            # target sphere coordinate j comes from source coordinate
            # index of gamma^{-1}(comp_tgt[j]) in comp_src
            perm = [comp_src.index(gamma.inverse()(comp_tgt[j]))
                    for j in range(k)]
            nk = len(sm.smash_factors)
            perm += list(range(k, nk))
            auto = smash_permute(sm, sm, perm)
            src_inc = self.summand_incl[m][f]
            tgt_inc = self.summand_incl[m][gf]
            for g in sm.dim_of:
                src = src_inc(SGEN(g))
                if src[1] == () and src[0] != W.basepoint:
                    assign[src[0]] = tgt_inc(auto(SGEN(g)))
        return PointedMap(W, W, assign, "s%d" % i)

    def _structure_map(self, m, levels):
        W = levels[m]
        src = smash([CIRCLE, W])
        tgt = levels[m + 1]
        assign = {}
        if m < self.n:
            if m + 1 == self.n:
                # S^1 ^ point -> level n is constant
                return PointedMap(src, tgt,
                                  {g: tgt.base_expr(src.dim_of[g])
                                   for g in src.dim_of})
            return PointedMap(src, tgt,
                              {g: tgt.base_expr(src.dim_of[g])
                               for g in src.dim_of})
        sm = self.summand_space[m]
        sm2 = self.summand_space[m + 1]
        for g, d in src.dim_of.items():
            if g == src.basepoint:
                continue
            e_comp = g[0]
            wg, ww = g[1]
            if wg == W.basepoint:
                assign[g] = tgt.base_expr(d)
                continue
            tag, cell = wg
            f = tag[1]
            fplus = tuple(v + 1 for v in f)
            inner = word_apply(ww, (cell, ()))
            comps = expand_components(sm, inner)
            parts = [e_comp] + comps
            expr = smash_normal(sm2, parts, d)
            assign[g] = self.summand_incl[m + 1][fplus](expr)
        return PointedMap(src, tgt, assign, "sigma")


def free_spectrum(n, K, N):
    return FreeSpectrum(n, K, N)


def suspension_spectrum(K, N):
    return FreeSpectrum(0, K, N)


def sphere_spectrum(N):
    return FreeSpectrum(0, sphere0(), N, name="S")


def free_spectrum_map(F, Z, level_map, name=""):
    """The spectrum map F_n K -> Z adjoint to level_map: K -> Z_n."""
    n, K = F.n, F.K
    maps = []
    for m in range(min(F.N, Z.N) + 1):
        W = F.level(m)
        if m < n:
            maps.append(PointedMap(W, Z.level(m),
                                   {g: Z.level(m).base_expr(W.dim_of[g])
                                    for g in W.dim_of}))
            continue
        sig = Z.iterated_structure(m - n, n)
        assign = {}
        sm = F.summand_space[m]
        for f in F.summand_incl[m]:
            rho = extension_permutation(f, m)
            act = Z.action(m, rho)
            inc = F.summand_incl[m][f]
            for g in sm.dim_of:
                src = inc(SGEN(g))
                if src[1] != () or src[0] == W.basepoint:
                    continue
                d = sm.dim_of[g]
                k_expr = part_expr(K, g[m - n:], d) if m > n else \
                    part_expr(K, g, d)
                zimg = level_map(k_expr)
                parts = list(g[:m - n]) + expand_components(Z.level(n), zimg)
                mid = sig(smash_normal(sig.source, parts, d)) if m > n \
                    else zimg
                assign[src[0]] = act(mid)
        maps.append(PointedMap(W, Z.level(m), assign))
    return SpectrumMap(F, Z, maps, name)


# -- monoid ring spectra -------------------------------------------------------


class MonoidRing(SymmetricSpectrum):
    """S[G]: level n is S^n ^ G+ (sphere coordinates first, the monoid
    label last)."""

    def __init__(self, table, unit, N, name=None, twist_defect=None):
        self.table = dict(table)
        self.unit_element = unit
        self.elements = sorted({a for a, _ in table} | {unit}, key=repr)
        for a in self.elements:
            for b in self.elements:
                for c in self.elements:
                    if self.mult(self.mult(a, b), c) != self.mult(a, self.mult(b, c)):
                        raise ValueError("non-associative table")
        G = discrete(self.elements)
        self.label_space = G
        levels = [smash([G])] + \
            [smash([CIRCLE] * n + [G]) for n in range(1, N + 1)]
        transpositions = []
        for n in range(N + 1):
            ts = []
            for i in range(1, n):
                perm = list(range(n))
                perm[i - 1], perm[i] = perm[i], perm[i - 1]
                perm += [n]
                ts.append(smash_permute(levels[n], levels[n], perm, "s%d" % i))
            transpositions.append(ts)
        sigmas = []
        for n in range(N):
            src = smash([CIRCLE, levels[n]])
            assign = {}
            for g, d in src.dim_of.items():
                if g == src.basepoint:
                    continue
                parts = [g[0]] + list(g[1:])
                assign[g] = smash_normal(levels[n + 1], parts, d)
            sigmas.append(PointedMap(src, levels[n + 1], assign, "sigma"))
        super().__init__(levels, transpositions, sigmas, name or "S[G]")
        self.suspension_like_from = 0
        self.commutative = all(self.mult(a, b) == self.mult(b, a)
                               for a in self.elements for b in self.elements)
        self.twist_defect = twist_defect

    def mult(self, a, b):
        if a == self.unit_element:
            return b
        if b == self.unit_element:
            return a
        return self.table[(a, b)]

    def multiplication(self, p, q):
        cache = getattr(self, "_mu_cache", None)
        if cache is None:
            cache = self._mu_cache = {}
        if (p, q) not in cache:
            cache[(p, q)] = self._multiplication(p, q)
        return cache[(p, q)]

    def _multiplication(self, p, q):
        """mu_{p,q}: R_p ^ R_q -> R_{p+q}: concatenate sphere coordinates
        and multiply labels."""
        src = smash([self.level(p), self.level(q)])
        tgt = self.level(p + q)
        assign = {}
        for g, d in src.dim_of.items():
            if g == src.basepoint:
                continue
            xs = g[:p]
            (ga, wa) = g[p]
            ys = g[p + 1:p + 1 + q]
            (gb, wb) = g[p + 1 + q]
            a, b = ga[1], gb[1]
            c = self.mult(a, b)
            label = ((("pt", c)), tuple(range(d - 1, -1, -1)))
            parts = list(xs) + list(ys) + [label]
            expr = smash_normal(tgt, parts, d)
            if self.twist_defect is not None and (p, q) == (1, 1) \
                    and a == self.twist_defect and expr[0] != tgt.basepoint:
                # deliberately broken multiplication for negative controls:
                # flip the two sphere coordinates on this summand only
                flip = smash_permute(tgt, tgt, [1, 0, 2])
                expr = flip(expr)
            assign[g] = expr
        return PointedMap(src, tgt, assign, "mu")

    def unit_map(self, n):
        """eta_n: S^n -> R_n."""
        cache = getattr(self, "_eta_cache", None)
        if cache is None:
            cache = self._eta_cache = {}
        if n in cache:
            return cache[n]
        S = sphere(n)
        tgt = self.level(n)
        assign = {}
        for g, d in S.dim_of.items():
            if g == S.basepoint:
                continue
            label = (("pt", self.unit_element), tuple(range(d - 1, -1, -1)))
            comps = list(g) if S.smash_factors else [(g, ())]
            if n == 0:
                parts = [label]
            else:
                parts = comps + [label]
            assign[g] = smash_normal(tgt, parts, d)
        out = PointedMap(S, tgt, assign, "eta")
        cache[n] = out
        return out

    def augmentation_to_sphere(self, Ssp):
        """The ring map S[G] -> S = F_0 S^0 collapsing all labels."""
        maps = []
        for n in range(min(self.N, Ssp.N) + 1):
            src = self.level(n)
            tgt = Ssp.level(n)
            sm = Ssp.summand_space[n]
            inc = Ssp.summand_incl[n][()]
            assign = {}
            for g, d in src.dim_of.items():
                if g == src.basepoint:
                    continue
                pexpr = ("p", tuple(range(d - 1, -1, -1)))
                parts = list(g[:n]) + [pexpr]
                assign[g] = inc(smash_normal(sm, parts, d))
            maps.append(PointedMap(src, tgt, assign))
        return SpectrumMap(self, Ssp, maps, "augment")


def monoid_ring(table, unit, N, name=None, twist_defect=None):
    return MonoidRing(table, unit, N, name, twist_defect)


def cyclic_group_table(k):
    els = ["g%d" % i for i in range(k)]
    table = {}
    for i in range(k):
        for j in range(k):
            table[(els[i], els[j])] = els[(i + j) % k]
    return table, els[0]


# -- ring axiom checks ----------------------------------------------------------


def check_ring_axioms(R, pmax=2, qmax=2):
    """Associativity, units, equivariance, centrality for a MonoidRing,
    checked exhaustively on levels p + q (+ r) <= the given bounds.
    Returns a list of failure reports (empty when all pass)."""
    failures = []
    N = R.N
    # unit laws: mu_{0,q} o (eta_0 ^ 1) = canonical iso, and symmetrically
    for q in range(min(qmax + 1, N + 1)):
        mu = R.multiplication(0, q)
        eta = R.unit_map(0)
        src = smash([sphere(0), R.level(q)])
        assign = {}
        for g, d in src.dim_of.items():
            if g == src.basepoint:
                continue
            eimg = eta(part_expr(sphere(0), g[:1], d))
            parts = expand_components(R.level(0), eimg) + list(g[1:])
            assign[g] = smash_normal(mu.source, parts, d)
        lift = PointedMap(src, mu.source, assign)
        comp = mu.compose(lift)
        # canonical identification S^0 ^ R_q -> R_q
        canon = {}
        for g, d in src.dim_of.items():
            if g == src.basepoint:
                continue
            canon[g] = part_expr(R.level(q), g[1:], d)
        canon_map = PointedMap(src, R.level(q), canon)
        if not comp.same_assignment(canon_map):
            failures.append(("unit-left", q, None))
    # associativity on R_p ^ R_q ^ R_r
    for p in range(pmax + 1):
        for q in range(qmax + 1):
            for r in range(qmax + 1):
                if p + q + r > N or p + q + r > pmax + qmax:
                    continue
                src = smash([R.level(p), R.level(q), R.level(r)])
                lhs = _triple_mult(R, src, p, q, r, left_first=True)
                rhs = _triple_mult(R, src, p, q, r, left_first=False)
                if not lhs.same_assignment(rhs):
                    failures.append(("associativity", (p, q, r),
                                     _witness(lhs, rhs)))
    # centrality: chi o mu_{q,p} o (1 ^ eta_p) o tw = mu_{p,q} o (eta_p ^ 1)
    # on S^p ^ R_q, where chi is the block permutation aligning the level
    # coordinates of the two smash orders
    for p in range(1, pmax + 1):
        for q in range(qmax + 1):
            if p + q > N:
                continue
            src = smash([sphere(p), R.level(q)])
            eta = R.unit_map(p)
            # right side: eta ^ 1 then mu_{p,q}
            mu_pq = R.multiplication(p, q)
            assign = {}
            for g, d in src.dim_of.items():
                if g == src.basepoint:
                    continue
                ei = eta(part_expr(sphere(p), g[:p], d))
                parts = expand_components(R.level(p), ei) + list(g[p:])
                assign[g] = smash_normal(mu_pq.source, parts, d)
            rhs = mu_pq.compose(PointedMap(src, mu_pq.source, assign))
            # left side: tw then 1 ^ eta then mu_{q,p} then chi
            mu_qp = R.multiplication(q, p)
            assign2 = {}
            for g, d in src.dim_of.items():
                if g == src.basepoint:
                    continue
                ei = eta(part_expr(sphere(p), g[:p], d))
                parts = list(g[p:]) + expand_components(R.level(p), ei)
                assign2[g] = smash_normal(mu_qp.source, parts, d)
            chi = Permutation(tuple(list(range(p + 1, p + q + 1)) +
                                    list(range(1, p + 1))))
            lhs = R.action(p + q, chi).compose(
                mu_qp.compose(PointedMap(src, mu_qp.source, assign2)))
            if not lhs.same_assignment(rhs):
                failures.append(("centrality", (p, q), _witness(lhs, rhs)))
    # commutativity flag check
    if R.commutative and R.twist_defect is None:
        p = q = 1
        if 2 <= N:
            src = smash([R.level(1), R.level(1)])
            mu = R.multiplication(1, 1)
            tw_assign = {}
            for g, d in src.dim_of.items():
                if g == src.basepoint:
                    continue
                half = len(src.smash_factors) // 2
                parts = list(g[half:]) + list(g[:half])
                tw_assign[g] = smash_normal(src, parts, d)
            tw = PointedMap(src, src, tw_assign)
            blk = R.action(2, Permutation((2, 1)))
            lhs = blk.compose(mu.compose(tw))
            if not lhs.same_assignment(mu):
                failures.append(("commutativity", (1, 1), _witness(lhs, mu)))
    return failures


def _triple_mult(R, src, p, q, r, left_first):
    assign = {}
    if left_first:
        mu1 = R.multiplication(p, q)
        mu2 = R.multiplication(p + q, r)
    else:
        mu1 = R.multiplication(q, r)
        mu2 = R.multiplication(p, q + r)
    for g, d in src.dim_of.items():
        if g == src.basepoint:
            continue
        # components: p spheres + label, q spheres + label, r spheres + label
        a = g[:p + 1]
        b = g[p + 1:p + q + 2]
        c = g[p + q + 2:]
        if left_first:
            m1 = mu1(smash_normal(mu1.source, list(a) + list(b), d))
            parts = expand_components(R.level(p + q), m1) + list(c)
            assign[g] = mu2(smash_normal(mu2.source, parts, d))
        else:
            m1 = mu1(smash_normal(mu1.source, list(b) + list(c), d))
            parts = list(a) + expand_components(R.level(q + r), m1)
            assign[g] = mu2(smash_normal(mu2.source, parts, d))
    return PointedMap(src, R.level(p + q + r), assign)


def _witness(f, g):
    for gen in f.source.dim_of:
        if f(SGEN(gen)) != g(SGEN(gen)):
            return gen
    return None


# -- shift and evaluation --------------------------------------------------------


def ev(X, n):
    return X.level(n)


class ShiftSpectrum(SymmetricSpectrum):
    """sh_n X: level k = X_{n+k}; Sigma_k acts through the last block;
    the structure map reroutes the new suspension coordinate to slot n+1."""

    def __init__(self, X, n):
        self.base = X
        self.shift_by = n
        N = X.N - n
        levels = [X.level(n + k) for k in range(N + 1)]
        transpositions = []
        for k in range(N + 1):
            ts = []
            for i in range(1, k):
                blk = Permutation.block(n, k, Permutation.identity(n),
                                        Permutation.transposition(k, i))
                ts.append(X.action(n + k, blk))
            transpositions.append(ts)
        sigmas = []
        for k in range(N):
            base_sigma = X.sigma(n + k)
            gamma = placement_permutation(n + k + 1, n + 1)
            sigmas.append(X.action(n + k + 1, gamma).compose(base_sigma))
        super().__init__(levels, transpositions, sigmas,
                         "sh_%d %s" % (n, X.name))


def shift(X, n):
    return ShiftSpectrum(X, n)


# -- spectrum homology ------------------------------------------------------------


class HomologyTable:
    """Per-degree stable homology values with stabilization data."""

    def __init__(self):
        self.rows = {}  # degree -> dict(value, stabilized_at, certified, note)

    def set(self, k, value, stabilized_at, certified, note=""):
        self.rows[k] = {"value": value, "stabilized_at": stabilized_at,
                        "certified": certified, "note": note}

    def value(self, k):
        return self.rows[k]["value"]

    def certified(self, k):
        return self.rows[k]["certified"]

    def csv(self):
        lines = ["degree,free_rank,torsion_factors,certified"]
        for k in sorted(self.rows):
            v = self.rows[k]["value"]
            tf = ";".join(str(t) for t in v.factors) if v.factors else "-"
            lines.append("%d,%d,%s,%s" % (k, v.free_rank, tf,
                                          str(self.rows[k]["certified"]).lower()))
        return "\n".join(lines) + "\n"


def transition_chain_map(X, l):
    """C(X_l)[1] -> C(X_{l+1}): suspension shuffle followed by sigma."""
    SX = X.suspension_source(l)
    CX = normalized_chains(X.level(l))
    CSX = normalized_chains(SX)
    inj = suspension_injection(X.level(l), SX, CX, CSX)
    sig = chain_map_of(X.sigma(l), CSX, normalized_chains(X.level(l + 1)))
    return sig.compose(inj)


def sigma_iso_from(X):
    """Smallest n0 <= N such that sigma_l is an isomorphism for all
    computed levels l >= n0, or None."""
    good = X.N
    for l in range(X.N - 1, -1, -1):
        if X.sigma(l).is_isomorphism():
            good = l
        else:
            break
    return good if good < X.N else None


def spectrum_homology(X, kmax, certify=True):
    """colim_l H_{k+l}(X_l) for k = 0..kmax, with stabilization
    certificates.

    Certified entries require the structure maps to be isomorphisms from
    some level on (verified on all computed levels) together with the
    construction-level suspension tag, which guarantees the remaining
    transition maps are suspension isomorphisms.  Otherwise the entry is
    the value at the truncation and flagged stable-so-far.
    """
    table = HomologyTable()
    n0 = sigma_iso_from(X)
    structural = X.suspension_like_from is not None
    chain_cache = {}

    def chains(l):
        if l not in chain_cache:
            chain_cache[l] = normalized_chains(X.level(l))
        return chain_cache[l]

    stable_from = n0 if n0 is not None else X.N
    for k in range(kmax + 1):
        value = chains(stable_from).homology(k + stable_from)
        certified = certify and n0 is not None and structural
        note = "sigma-iso from %s" % n0 if n0 is not None else "truncated"
        table.set(k, value, stable_from, certified, note)
    return table


def homology_colimit_rank(X, k):
    """Rank of H_{k+N}(X_N): the colimit of the truncated system at the
    truncation (the last object of a finite directed system)."""
    C = normalized_chains(X.level(X.N))
    return C.homology(k + X.N)


def certify_pi_iso(f, kmax):
    """Homology surrogate for a stable-homotopy isomorphism check.

    Compares H_{k+l}(f_l) at the stabilized levels of source and target.
    CERTIFIED-PI-ISO needs both sides certified and simply connected
    levels in range; otherwise reports the homology verdict only.
    """
    X, Y = f.source, f.target
    tx = spectrum_homology(X, kmax)
    ty = spectrum_homology(Y, kmax)
    per_degree = {}
    certified_all = True
    iso_all = True
    for k in range(kmax + 1):
        l = max(tx.rows[k]["stabilized_at"], ty.rows[k]["stabilized_at"])
        l = min(l, X.N, Y.N)
        fc = chain_map_of(f.level(l))
        verdict = is_quasi_iso_in_range(fc, k + l, k + l)[k + l]
        cert = tx.certified(k) and ty.certified(k)
        if cert:
            cx = certified_connectivity(X.level(l))
            cy = certified_connectivity(Y.level(l))
            if cx is None or cy is None or cx < 1 or cy < 1:
                cert = False
        per_degree[k] = {"h_iso": verdict, "certified": cert, "level": l}
        certified_all = certified_all and cert
        iso_all = iso_all and verdict
    status = "CERTIFIED-PI-ISO" if (iso_all and certified_all) else \
        ("H-ISO-UNCERTIFIED" if iso_all else "NOT-ISO")
    return {"status": status, "per_degree": per_degree}


def semistability_certificate(X, alpha=1, kmax=2):
    """Checks the suspension-map surrogate H_k(X_n) -> H_{k+1}(X_{n+1})
    iso for k <= alpha * n across available levels, with connectivity
    hypotheses.  Returns SEMISTABLE-CERTIFIED or INCONCLUSIVE plus the
    failure list."""
    failures = []
    checked = 0
    for n in range(X.N):
        t = transition_chain_map(X, n)
        for k in range(0, min(kmax, alpha * n) + 1):
            checked += 1
            ok = is_quasi_iso_in_range(t, k + n + 1, k + n + 1)[k + n + 1]
            if not ok:
                failures.append((n, k))
    if failures or checked == 0:
        return {"status": "INCONCLUSIVE", "failures": failures}
    conns = [certified_connectivity(X.level(n)) for n in range(1, X.N + 1)]
    conn_ok = all(c is not None and c >= 0 for c in conns)
    return {"status": "SEMISTABLE-CERTIFIED" if conn_ok else "INCONCLUSIVE",
            "failures": []}
