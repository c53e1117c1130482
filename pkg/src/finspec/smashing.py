"""Smash products of symmetric spectra over the sphere.

The tensor product of spectra is a wedge of smash products of levels
indexed by ordered set partitions; the smash over S is its quotient by
the congruence generated by single sphere insertions acting on either
side of each gap.  Balanced products over a ring (two-sided bar-type
quotients) reuse the same machinery with extra seed families.

All induced structure (symmetric group actions, structure maps, and the
maps between these quotients: multiplications, bar faces, rotations,
unit insertions) is defined on the tensor wedge and factored through the
congruence with a complete well-definedness check.
"""

from __future__ import annotations

from itertools import combinations

from .simplicial import (
    Congruence, PointedMap, SGEN, identity_map, point, smash, smash_normal,
    wedge, word_apply,
)
from .spectra import CIRCLE, SymmetricSpectrum, SpectrumMap, placement_permutation
from .symseq import Permutation, expand_components, part_expr


def compositions(n, k):
    """Ordered compositions of n into k nonnegative parts."""
    if k == 0:
        return [()] if n == 0 else []
    if k == 1:
        return [(n,)]
    out = []
    for first in range(n + 1):
        for rest in compositions(n - first, k - 1):
            out.append((first,) + rest)
    return out


def ordered_partitions(universe, sizes):
    """Ordered partitions of the (sorted tuple) universe into blocks of
    the given sizes, each block sorted."""
    if not sizes:
        yield ()
        return
    first, rest = sizes[0], sizes[1:]
    for block in combinations(universe, first):
        remaining = tuple(x for x in universe if x not in set(block))
        for tail in ordered_partitions(remaining, rest):
            yield (block,) + tail


def interleave_perm(A, B):
    """Permutation of 1..|A|+|B| sending slot s <= |A| to the rank of
    A[s] in the merged sorted set, and |A|+t to the rank of B[t]."""
    merged = sorted(A + B)
    rank = {v: i + 1 for i, v in enumerate(merged)}
    imgs = [rank[v] for v in A] + [rank[v] for v in B]
    return Permutation(imgs)


class TensorLevel:
    """Level n of the tensor product of a list of spectra: a wedge over
    (composition, ordered partition) of smashes of the levels."""

    def __init__(self, spectra, n):
        self.spectra = spectra
        self.n = n
        k = len(spectra)
        smash_cache = {}
        parts, tags = [], []
        for p_vec in compositions(n, k):
            if any(_is_point(spectra[i].level(p_vec[i])) for i in range(k)):
                continue
            if p_vec not in smash_cache:
                smash_cache[p_vec] = smash(
                    [spectra[i].level(p_vec[i]) for i in range(k)])
            sm = smash_cache[p_vec]
            if len(sm.dim_of) == 1:
                continue
            for A_vec in ordered_partitions(tuple(range(1, n + 1)), p_vec):
                parts.append(sm)
                tags.append((p_vec, A_vec))
        if parts:
            W, incs = wedge(parts, tags=tags)
        else:
            W, incs = point(), []
        self.wedge = W
        self.summands = list(zip(tags, parts))
        self.inclusions = {t: inc for t, inc in zip(tags, incs)}
        self.smash_cache = smash_cache

    def factor_offsets(self, p_vec):
        """Start index of each factor's flattened coordinates inside the
        summand smash for the given composition."""
        sm = self.smash_cache[p_vec]
        offs, pos = [], 0
        for i in range(len(self.spectra)):
            offs.append(pos)
            lvl = self.spectra[i].level(p_vec[i])
            pos += len(lvl.smash_factors) if lvl.smash_factors else 1
        offs.append(pos)
        return offs

    def include(self, tag, expr):
        return self.inclusions[tag](expr)


def _is_point(X):
    return len(X.dim_of) == 1


def factor_through(pi, F, name=""):
    """Given pi: A -> B surjective on nondegenerate cells and F: A -> C
    constant on pi-fibers, the induced map B -> C (fully checked)."""
    A, B, C = pi.source, pi.target, F.target
    assign = {}
    for g in A.dim_of:
        img = pi(SGEN(g))
        if img[1] == () and img[0] != B.basepoint and img[0] not in assign:
            assign[img[0]] = F(SGEN(g))
    m = PointedMap(B, C, assign, name)
    for g in A.dim_of:
        if m(pi(SGEN(g))) != F(SGEN(g)):
            raise AssertionError("map does not factor through the quotient")
    return m


class SmashSpectrum(SymmetricSpectrum):
    """Iterated smash over S of a list of spectra, with optional extra
    balanced-product seed families (for quotients over a ring)."""

    def __init__(self, spectra, N, extra_seeds=None, name=""):
        self.factors_spectra = spectra
        self.tensor_levels = []
        self.projections = []
        levels = []
        for n in range(N + 1):
            T = TensorLevel(spectra, n)
            cong = Congruence(T.wedge)
            for a, b in self._insertion_seeds(T):
                cong.add_seed(a, b)
            if extra_seeds is not None:
                for a, b in extra_seeds(T):
                    cong.add_seed(a, b)
            Q, proj = cong.quotient("smash_S level %d" % n)
            self.tensor_levels.append(T)
            self.projections.append(proj)
            levels.append(Q)
        transpositions = [[self._induced_transposition(n, i)
                           for i in range(1, n)] for n in range(N + 1)]
        sigmas = [self._induced_sigma(n, levels) for n in range(N)]
        super().__init__(levels, transpositions, sigmas, name)
        if all(X.suspension_like_from is not None for X in spectra):
            from .spectra import sigma_iso_from
            n0 = sigma_iso_from(self)
            if n0 is not None:
                self.suspension_like_from = n0

    # -- tensor-level structure ------------------------------------------

    def _insertion_seeds(self, T):
        """Pairs identifying the two sphere actions across each gap."""
        spectra = self.spectra_list = self.factors_spectra
        n = T.n
        k = len(spectra)
        seeds = []
        for gap in range(1, k):
            for p_vec in compositions(n - 1, k):
                left, right = spectra[gap - 1], spectra[gap]
                Xl = left.level(p_vec[gap - 1])
                Xr = right.level(p_vec[gap])
                if _is_point(Xl) and _is_point(Xr):
                    continue
                if any(_is_point(spectra[i].level(p_vec[i])) for i in range(k)):
                    continue
                factor_spaces = [spectra[i].level(p_vec[i]) for i in range(gap)] \
                    + [CIRCLE] + [spectra[i].level(p_vec[i]) for i in range(gap, k)]
                sm = smash(factor_spaces)
                if len(sm.dim_of) == 1:
                    continue
                sizes = list(p_vec[:gap]) + [1] + list(p_vec[gap:])
                offs = []
                pos = 0
                for X in factor_spaces:
                    offs.append(pos)
                    pos += len(X.smash_factors) if X.smash_factors else 1
                offs.append(pos)
                for B_vec in ordered_partitions(tuple(range(1, n + 1)), sizes):
                    b = B_vec[gap][0]
                    for g, d in sm.dim_of.items():
                        if g == sm.basepoint:
                            continue
                        comps = [g[offs[i]:offs[i + 1]]
                                 for i in range(len(factor_spaces))]
                        u = self._act_left_block(
                            T, p_vec, B_vec, gap, comps, d, b)
                        v = self._act_right_block(
                            T, p_vec, B_vec, gap, comps, d, b)
                        seeds.append((u, v))
        return seeds

    def _act_left_block(self, T, p_vec, B_vec, gap, comps, d, b):
        """Sphere at the gap acts on the factor to its left (through the
        twist): target summand merges the sphere index into block gap-1."""
        spectra = self.factors_spectra
        i = gap - 1
        p = p_vec[i]
        X = spectra[i]
        e_comp = comps[gap][0]
        # sigma: prepend the circle to X's level p, then place it properly
        sig = X.sigma(p)
        src = X.suspension_source(p)
        inner = smash_normal(src, [e_comp] + list(comps[i]), d)
        img = sig(inner)
        A = B_vec[i]
        merged = tuple(sorted(A + (b,)))
        idx = merged.index(b) + 1
        gamma = placement_permutation(p + 1, idx)
        img = X.action(p + 1, gamma)(img)
        new_p = list(p_vec)
        new_p[i] = p + 1
        new_A = list(B_vec[:gap]) + list(B_vec[gap + 1:])
        new_A[i] = merged
        tag = (tuple(new_p), tuple(new_A))
        sm_t = T.smash_cache.get(tuple(new_p))
        if sm_t is None:
            sm_t = smash([spectra[t].level(new_p[t]) for t in range(len(spectra))])
            T.smash_cache[tuple(new_p)] = sm_t
        parts = []
        for t in range(len(spectra)):
            if t == i:
                parts.extend(expand_components(X.level(p + 1), img))
            else:
                parts.extend(comps[t if t < gap else t + 1])
        expr = smash_normal(sm_t, parts, d)
        if expr[0] == sm_t.basepoint or tag not in T.inclusions:
            return T.wedge.base_expr(d)
        return T.include(tag, expr)

    def _act_right_block(self, T, p_vec, B_vec, gap, comps, d, b):
        """Sphere at the gap acts on the factor to its right."""
        spectra = self.factors_spectra
        i = gap
        p = p_vec[i]
        X = spectra[i]
        e_comp = comps[gap][0]
        sig = X.sigma(p)
        src = X.suspension_source(p)
        inner = smash_normal(src, [e_comp] + list(comps[i + 1]), d)
        img = sig(inner)
        A = B_vec[gap + 1]
        merged = tuple(sorted((b,) + A))
        idx = merged.index(b) + 1
        gamma = placement_permutation(p + 1, idx)
        img = X.action(p + 1, gamma)(img)
        new_p = list(p_vec)
        new_p[i] = p + 1
        new_A = list(B_vec[:gap]) + list(B_vec[gap + 1:])
        new_A[i] = merged
        tag = (tuple(new_p), tuple(new_A))
        sm_t = T.smash_cache.get(tuple(new_p))
        if sm_t is None:
            sm_t = smash([spectra[t].level(new_p[t]) for t in range(len(spectra))])
            T.smash_cache[tuple(new_p)] = sm_t
        parts = []
        for t in range(len(spectra)):
            if t == i:
                parts.extend(expand_components(X.level(p + 1), img))
            else:
                parts.extend(comps[t if t < gap else t + 1])
        return T.include(tag, smash_normal(sm_t, parts, d))

    def tensor_transposition(self, n, j):
        """Action of the adjacent transposition (j, j+1) on the tensor
        wedge at level n."""
        T = self.tensor_levels[n]
        tau = Permutation.transposition(n, j)
        W = T.wedge
        assign = {}
        for (tag, sm) in T.summands:
            p_vec, A_vec = tag
            offs = T.factor_offsets(p_vec)
            B_vec = tuple(tuple(sorted(tau(a) for a in A)) for A in A_vec)
            residuals = []
            for A, B in zip(A_vec, B_vec):
                rank = {v: t + 1 for t, v in enumerate(B)}
                residuals.append(Permutation(
                    tuple(rank[tau(a)] for a in A)) if A else
                    Permutation(()))
            tgt_tag = (p_vec, B_vec)
            inc = T.inclusions[tgt_tag]
            acts = [self.factors_spectra[i].action(p_vec[i], residuals[i])
                    for i in range(len(p_vec))]
            for g, d in sm.dim_of.items():
                if g == sm.basepoint:
                    continue
                parts = []
                for i in range(len(p_vec)):
                    comp = g[offs[i]:offs[i + 1]]
                    lvl = self.factors_spectra[i].level(p_vec[i])
                    img = acts[i](part_expr(lvl, comp, d))
                    parts.extend(expand_components(lvl, img))
                src = T.inclusions[tag](SGEN(g))
                if src[1] == () and src[0] != W.basepoint:
                    assign[src[0]] = inc(smash_normal(sm, parts, d))
        return PointedMap(W, W, assign)

    def _induced_transposition(self, n, j):
        proj = self.projections[n]
        raw = self.tensor_transposition(n, j)
        return factor_through(proj, proj.compose(raw), "s%d" % j)

    def _induced_sigma(self, n, levels):
        """S^1 ^ Q_n -> Q_{n+1} induced from prepending the suspension
        coordinate to the first block."""
        T, T1 = self.tensor_levels[n], self.tensor_levels[n + 1]
        proj, proj1 = self.projections[n], self.projections[n + 1]
        spectra = self.factors_spectra
        src_T = smash([CIRCLE, T.wedge])
        assign = {}
        for g, d in src_T.dim_of.items():
            if g == src_T.basepoint:
                continue
            e_comp = g[0]
            wq, ww = g[1]
            if wq == T.wedge.basepoint:
                assign[g] = T1.wedge.base_expr(d)
                continue
            tag, cell = wq
            p_vec, A_vec = tag
            offs = T.factor_offsets(p_vec)
            inner = word_apply(ww, (cell, ()))
            sm = T.smash_cache[p_vec]
            comps = expand_components(sm, inner)
            X0 = spectra[0]
            p0 = p_vec[0]
            sig = X0.sigma(p0)
            simg = sig(smash_normal(sig.source,
                                    [e_comp] + comps[offs[0]:offs[1]], d))
            new_p = (p0 + 1,) + tuple(p_vec[1:])
            new_A = ((1,) + tuple(a + 1 for a in A_vec[0]),) + \
                tuple(tuple(a + 1 for a in A) for A in A_vec[1:])
            sm_t = T1.smash_cache.get(new_p)
            if sm_t is None:
                sm_t = smash([spectra[t].level(new_p[t])
                              for t in range(len(spectra))])
                T1.smash_cache[new_p] = sm_t
            parts = list(expand_components(X0.level(p0 + 1), simg))
            for i in range(1, len(spectra)):
                parts.extend(comps[offs[i]:offs[i + 1]])
            expr = smash_normal(sm_t, parts, d)
            if expr[0] == sm_t.basepoint or (new_p, new_A) not in T1.inclusions:
                assign[g] = T1.wedge.base_expr(d)
            else:
                assign[g] = T1.include((new_p, new_A), expr)
        raw = PointedMap(src_T, T1.wedge, assign)
        # factor through smash(CIRCLE, proj)
        src_Q = smash([CIRCLE, levels[n]])
        pi_assign = {}
        for g, d in src_T.dim_of.items():
            if g == src_T.basepoint:
                continue
            pi_assign[g] = smash_normal(src_Q, [g[0], proj(g[1])], d)
        pi = PointedMap(src_T, src_Q, pi_assign)
        return factor_through(pi, proj1.compose(raw), "sigma")


def smash_over_S(spectra, N, name=""):
    return SmashSpectrum(spectra, N, name=name or "smash")


# -- canonical comparison maps -------------------------------------------------


def unit_iso(Q, X):
    """The canonical map (S smash_S X) -> X for Q = smash_over_S([S, X])
    with S the sphere spectrum F_0 S^0."""
    S = Q.factors_spectra[0]
    maps = []
    for n in range(X.N + 1 if X.N < Q.N else Q.N + 1):
        T = Q.tensor_levels[n]
        proj = Q.projections[n]
        assign = {}
        for (tag, sm) in T.summands:
            (p, q), (A, B) = tag
            offs = T.factor_offsets((p, q))
            sig = X.iterated_structure(p, q)
            gamma = Permutation(tuple(A) + tuple(B)) if (A or B) else None
            act = X.action(n, Permutation(tuple(A) + tuple(B))) if n else \
                identity_map(X.level(0))
            for g, d in sm.dim_of.items():
                if g == sm.basepoint:
                    continue
                scomp = g[offs[0]:offs[1]]
                xcomp = g[offs[1]:offs[2]]
                # S-level p is the wedge-wrapped S^p: resolve its sphere
                # coordinates through the single summand
                s_expr = part_expr(S.level(p), scomp, d)
                sg, sw = s_expr
                if sg == S.level(p).basepoint:
                    wexpr = T.inclusions[tag](SGEN(g))
                    if wexpr[1] == ():
                        assign[wexpr[0]] = X.level(n).base_expr(d)
                    continue
                inner = word_apply(sw, (sg[1], ()))
                sphere_comps = expand_components(S.summand_space[p], inner)
                # drop the trailing S^0 point coordinate
                sphere_comps = sphere_comps[:-1]
                parts = list(sphere_comps) + list(xcomp)
                mid = sig(smash_normal(sig.source, list(parts), d)) \
                    if p else part_expr(X.level(n), list(parts), d)
                img = act(mid)
                wexpr = T.inclusions[tag](SGEN(g))
                if wexpr[1] == () and wexpr[0] != T.wedge.basepoint:
                    assign[wexpr[0]] = img
        raw = PointedMap(T.wedge, X.level(n), assign)
        maps.append(factor_through(proj, raw, "unit"))
    return SpectrumMap(Q, X, maps, "unit_iso")


def smash_twist(Q_XY, Q_YX):
    """The twist X smash_S Y -> Y smash_S X."""
    maps = []
    for n in range(Q_XY.N + 1):
        T, Tt = Q_XY.tensor_levels[n], Q_YX.tensor_levels[n]
        proj, projt = Q_XY.projections[n], Q_YX.projections[n]
        assign = {}
        for (tag, sm) in T.summands:
            (p, q), (A, B) = tag
            offs = T.factor_offsets((p, q))
            tgt_tag = ((q, p), (B, A))
            sm_t = Tt.smash_cache[(q, p)]
            for g, d in sm.dim_of.items():
                if g == sm.basepoint:
                    continue
                parts = list(g[offs[1]:offs[2]]) + list(g[offs[0]:offs[1]])
                src = T.inclusions[tag](SGEN(g))
                if src[1] == () and src[0] != T.wedge.basepoint:
                    assign[src[0]] = Tt.include(
                        tgt_tag, smash_normal(sm_t, parts, d))
        raw = PointedMap(T.wedge, Tt.wedge, assign)
        maps.append(factor_through(proj, projt.compose(raw), "twist"))
    return SpectrumMap(Q_XY, Q_YX, maps, "twist")


def free_smash_comparison(Q, F_target):
    """The canonical map F_{n+m}(K ^ L) -> F_n K smash_S F_m L, adjoint
    to the inclusion of the identity-coset cell at level n + m."""
    from .spectra import free_spectrum_map
    FA, FB = Q.factors_spectra
    n, m = FA.n, FB.n
    KL = F_target.K
    lvl = n + m
    T = Q.tensor_levels[lvl]
    proj = Q.projections[lvl]
    p_vec = (n, m)
    A_vec = (tuple(range(1, n + 1)), tuple(range(n + 1, n + m + 1)))
    sm = T.smash_cache[p_vec]
    offs = T.factor_offsets(p_vec)
    nk = len(KL.smash_factors) if KL.smash_factors else 1
    nka = len(FA.K.smash_factors) if FA.K.smash_factors else 1
    assign = {}
    for g, d in KL.dim_of.items():
        if g == KL.basepoint:
            continue
        comps = expand_components(KL, (g, ()))
        ka, kb = comps[:nka], comps[nka:]
        ida = tuple(range(1, n + 1))
        idb = tuple(range(1, m + 1))
        acell = FA.summand_incl[n][ida](
            part_expr(FA.summand_space[n], ka, d))
        bcell = FB.summand_incl[m][idb](
            part_expr(FB.summand_space[m], kb, d))
        parts = expand_components(FA.level(n), acell) + \
            expand_components(FB.level(m), bcell)
        cell = T.include((p_vec, A_vec), smash_normal(sm, parts, d))
        assign[g] = proj(cell)
    level_map = PointedMap(KL, Q.level(lvl), assign)
    return free_spectrum_map(F_target, Q, level_map, "free_smash")


# -- bar-type structure maps between smash spectra -------------------------------


def _summand_components(T, tag, g, d):
    p_vec = tag[0]
    offs = T.factor_offsets(p_vec)
    return [g[offs[i]:offs[i + 1]] for i in range(len(p_vec))]


def _rebuild(T, tag, comp_lists, d):
    """Assemble a target wedge expression from per-block component lists."""
    p_vec = tag[0]
    sm = T.smash_cache.get(p_vec)
    if sm is None:
        sm = smash([T.spectra[i].level(p_vec[i]) for i in range(len(p_vec))])
        T.smash_cache[p_vec] = sm
    parts = []
    for cl in comp_lists:
        parts.extend(cl)
    expr = smash_normal(sm, parts, d)
    if expr[0] == sm.basepoint or tag not in T.inclusions:
        return T.wedge.base_expr(d)
    return T.include(tag, expr)


def merge_spectrum_map(Q_src, Q_tgt, i, pairing, name="merge"):
    """Map of smash spectra merging blocks i and i+1 of the source via the
    pairing maps pairing(p, q): X_i(p) ^ X_{i+1}(q) -> Z(p+q), whose
    output coordinates are the block-i coordinates followed by the
    block-(i+1) coordinates.  Z must be the factor at position i of the
    target."""
    maps = []
    Z = Q_tgt.factors_spectra[i]
    for n in range(min(Q_src.N, Q_tgt.N) + 1):
        T, Tt = Q_src.tensor_levels[n], Q_tgt.tensor_levels[n]
        proj, projt = Q_src.projections[n], Q_tgt.projections[n]
        assign = {}
        for (tag, sm) in T.summands:
            p_vec, A_vec = tag
            p, q = p_vec[i], p_vec[i + 1]
            pair = pairing(p, q)
            merged = tuple(sorted(A_vec[i] + A_vec[i + 1]))
            gamma = interleave_perm(A_vec[i], A_vec[i + 1])
            act = Z.action(p + q, gamma)
            new_p = p_vec[:i] + (p + q,) + p_vec[i + 2:]
            new_A = A_vec[:i] + (merged,) + A_vec[i + 2:]
            for g, d in sm.dim_of.items():
                if g == sm.basepoint:
                    continue
                comps = _summand_components(T, tag, g, d)
                img = pair(smash_normal(pair.source,
                                        list(comps[i]) + list(comps[i + 1]), d))
                img = act(img)
                cls = comps[:i] + [expand_components(Z.level(p + q), img)] + \
                    comps[i + 2:]
                src = T.inclusions[tag](SGEN(g))
                if src[1] == () and src[0] != T.wedge.basepoint:
                    assign[src[0]] = _rebuild(Tt, (new_p, new_A), cls, d)
        raw = PointedMap(T.wedge, Tt.wedge, assign)
        maps.append(factor_through(proj, projt.compose(raw), name))
    return SpectrumMap(Q_src, Q_tgt, maps, name)


def cyclic_merge_map(Q_src, Q_tgt, left_pairing, name="cyclic"):
    """The last face of the cyclic bar shape: rotate the last block to
    the front, then merge it into block 0 via left_pairing(p_last, p_0):
    X_last(p) ^ M(q) -> M(p+q)."""
    maps = []
    Z = Q_tgt.factors_spectra[0]
    for n in range(min(Q_src.N, Q_tgt.N) + 1):
        T, Tt = Q_src.tensor_levels[n], Q_tgt.tensor_levels[n]
        proj, projt = Q_src.projections[n], Q_tgt.projections[n]
        assign = {}
        for (tag, sm) in T.summands:
            p_vec, A_vec = tag
            k = len(p_vec)
            p, q = p_vec[k - 1], p_vec[0]
            pair = left_pairing(p, q)
            merged = tuple(sorted(A_vec[k - 1] + A_vec[0]))
            gamma = interleave_perm(A_vec[k - 1], A_vec[0])
            act = Z.action(p + q, gamma)
            new_p = (p + q,) + p_vec[1:k - 1]
            new_A = (merged,) + A_vec[1:k - 1]
            for g, d in sm.dim_of.items():
                if g == sm.basepoint:
                    continue
                comps = _summand_components(T, tag, g, d)
                img = pair(smash_normal(
                    pair.source, list(comps[k - 1]) + list(comps[0]), d))
                img = act(img)
                cls = [expand_components(Z.level(p + q), img)] + \
                    comps[1:k - 1]
                src = T.inclusions[tag](SGEN(g))
                if src[1] == () and src[0] != T.wedge.basepoint:
                    assign[src[0]] = _rebuild(Tt, (new_p, new_A), cls, d)
        raw = PointedMap(T.wedge, Tt.wedge, assign)
        maps.append(factor_through(proj, projt.compose(raw), name))
    return SpectrumMap(Q_src, Q_tgt, maps, name)


def insert_unit_map(Q_src, Q_tgt, pos, unit_component, name="degeneracy"):
    """Insert a fresh p = 0 block at index pos carrying the unit cell of
    the ring (unit_component(d) gives its fully degenerate component
    expressions in dimension d)."""
    maps = []
    for n in range(min(Q_src.N, Q_tgt.N) + 1):
        T, Tt = Q_src.tensor_levels[n], Q_tgt.tensor_levels[n]
        proj, projt = Q_src.projections[n], Q_tgt.projections[n]
        assign = {}
        for (tag, sm) in T.summands:
            p_vec, A_vec = tag
            new_p = p_vec[:pos] + (0,) + p_vec[pos:]
            new_A = A_vec[:pos] + ((),) + A_vec[pos:]
            for g, d in sm.dim_of.items():
                if g == sm.basepoint:
                    continue
                comps = _summand_components(T, tag, g, d)
                cls = comps[:pos] + [unit_component(d)] + comps[pos:]
                src = T.inclusions[tag](SGEN(g))
                if src[1] == () and src[0] != T.wedge.basepoint:
                    assign[src[0]] = _rebuild(Tt, (new_p, new_A), cls, d)
        raw = PointedMap(T.wedge, Tt.wedge, assign)
        maps.append(factor_through(proj, projt.compose(raw), name))
    return SpectrumMap(Q_src, Q_tgt, maps, name)


def bimodule_balance_seeds(R, k_chain):
    """Extra congruence seeds realizing M ^_{R^e} (X_1 ^ ... ^ X_k) as a
    quotient of the plain smash M ^_S X_1 ^ ... ^ X_k, for M = R and all
    chain factors equal to R (monoid ring corpus).  Two families: an R
    factor between M and the chain acts on M from the right or multiplies
    into the chain head; an R factor after the chain multiplies the chain
    tail from the right or acts on M from the left (cyclically)."""

    def seeds(T):
        n = T.n
        out = []
        k = k_chain
        spectra = [R] * (k + 2)  # M, extra, chain... or M, chain..., extra
        for family in ("head", "tail"):
            for p_vec in compositions(n, k + 2):
                if any(_is_point(R.level(p)) for p in p_vec):
                    continue
                sm = smash([R.level(p) for p in p_vec])
                if len(sm.dim_of) == 1:
                    continue
                offs = []
                pos = 0
                for p in p_vec:
                    offs.append(pos)
                    lvl = R.level(p)
                    pos += len(lvl.smash_factors) if lvl.smash_factors else 1
                offs.append(pos)
                for A_vec in ordered_partitions(tuple(range(1, n + 1)), p_vec):
                    for g, d in sm.dim_of.items():
                        if g == sm.basepoint:
                            continue
                        comps = [g[offs[t]:offs[t + 1]]
                                 for t in range(k + 2)]
                        if family == "head":
                            # blocks: M, a, X1..Xk
                            u = _merge_into(T, R, p_vec, A_vec, comps, d,
                                            0, 1, drop=1)
                            v = _merge_into(T, R, p_vec, A_vec, comps, d,
                                            1, 2, drop=1)
                        else:
                            # blocks: M, X1..Xk, b
                            u = _merge_into(T, R, p_vec, A_vec, comps, d,
                                            k, k + 1, drop=k + 1)
                            v = _merge_cyclic(T, R, p_vec, A_vec, comps, d)
                        out.append((u, v))
        return out

    return seeds


def _merge_into(T, R, p_vec, A_vec, comps, d, i, j, drop):
    """Merge blocks i and j (j = i + 1) via mu, landing in the tensor of
    one fewer factor; `drop` is the index removed from the block list."""
    p, q = p_vec[i], p_vec[j]
    pair = R.multiplication(p, q)
    img = pair(smash_normal(pair.source, list(comps[i]) + list(comps[j]), d))
    gamma = interleave_perm(A_vec[i], A_vec[j])
    img = R.action(p + q, gamma)(img)
    merged_A = tuple(sorted(A_vec[i] + A_vec[j]))
    new_p, new_A, cls = [], [], []
    for t in range(len(p_vec)):
        if t == drop:
            continue
        if t == (i if drop == j else j):
            new_p.append(p + q)
            new_A.append(merged_A)
            cls.append(expand_components(R.level(p + q), img))
        else:
            new_p.append(p_vec[t])
            new_A.append(A_vec[t])
            cls.append(comps[t])
    return _rebuild(T, (tuple(new_p), tuple(new_A)), cls, d)


def _merge_cyclic(T, R, p_vec, A_vec, comps, d):
    """Last block acts on block 0 from the left (cyclic balance)."""
    k = len(p_vec) - 1
    p, q = p_vec[k], p_vec[0]
    pair = R.multiplication(p, q)
    img = pair(smash_normal(pair.source, list(comps[k]) + list(comps[0]), d))
    gamma = interleave_perm(A_vec[k], A_vec[0])
    img = R.action(p + q, gamma)(img)
    merged_A = tuple(sorted(A_vec[k] + A_vec[0]))
    new_p = (p + q,) + tuple(p_vec[1:k])
    new_A = (merged_A,) + tuple(A_vec[1:k])
    cls = [expand_components(R.level(p + q), img)] + \
        [comps[t] for t in range(1, k)]
    return _rebuild(T, (new_p, new_A), cls, d)


def single_unwrap(Q, X):
    """Canonical isomorphism smash_over_S([X]) -> X."""
    maps = []
    for n in range(min(Q.N, X.N) + 1):
        T = Q.tensor_levels[n]
        proj = Q.projections[n]
        assign = {}
        for (tag, sm) in T.summands:
            for g, d in sm.dim_of.items():
                if g == sm.basepoint:
                    continue
                src = T.inclusions[tag](SGEN(g))
                if src[1] == () and src[0] != T.wedge.basepoint:
                    assign[src[0]] = part_expr(X.level(n), list(g), d)
        raw = PointedMap(T.wedge, X.level(n), assign)
        maps.append(factor_through(proj, raw, "unwrap"))
    return SpectrumMap(Q, X, maps, "unwrap")
