"""Topological Hochschild homology constructions.

Three models are provided: the Hochschild-style simplicial spectrum with
s-simplices M ^_S R^{^s} (faces multiply adjacent factors, the last one
cyclically), the balanced smash tk(R; M) = M ^_{R^e} R, and the
two-sided bar construction.  The cyclic bar construction of a finite
monoid is the independent oracle for monoid rings.

Rings here are monoid rings (levelwise wedges of spheres), which are
cofibrant enough for every comparison exercised by the acceptance
criteria; modules are the rings themselves over their enveloping ring.
"""

from __future__ import annotations

from .chains import (
    ChainComplex, ChainMap, chain_map_of, moore_total, normalized_chains,
)
from . import intlinalg as la
from .simplicial import (
    PointedMap, SGEN, SimplicialObject, diagonal, identity_map, smash,
    smash_normal, word_apply,
)
from .smashing import (
    SmashSpectrum, bimodule_balance_seeds, cyclic_merge_map,
    insert_unit_map, merge_spectrum_map, smash_over_S,
)
from .spectra import CIRCLE, SpectrumMap, SymmetricSpectrum, sigma_iso_from
from .symseq import expand_components, part_expr


class SimplicialSpectrum:
    """A simplicial object in symmetric spectra, truncated at smax."""

    def __init__(self, levels, face_maps, degeneracy_maps, name=""):
        self.levels = levels                  # s -> SymmetricSpectrum
        self.face_maps = face_maps            # (s, i) -> SpectrumMap
        self.degeneracy_maps = degeneracy_maps
        self.smax = len(levels) - 1
        self.name = name

    def validate(self):
        """Simplicial identities as maps, checked by structural equality
        of composites on generators, levelwise."""
        for l in range(min(X.N for X in self.levels) + 1):
            levels = [self.levels[s].level(l) for s in range(self.smax + 1)]
            faces = {(s, i): self.face_maps[(s, i)].level(l)
                     for (s, i) in self.face_maps}
            degs = {(s, i): self.degeneracy_maps[(s, i)].level(l)
                    for (s, i) in self.degeneracy_maps}
            SimplicialObject(levels, faces, degs).validate()
        return True

    def level_simplicial_object(self, l):
        levels = [self.levels[s].level(l) for s in range(self.smax + 1)]
        faces = {(s, i): self.face_maps[(s, i)].level(l)
                 for (s, i) in self.face_maps}
        degs = {(s, i): self.degeneracy_maps[(s, i)].level(l)
                for (s, i) in self.degeneracy_maps}
        return SimplicialObject(levels, faces, degs)


def hochschild_complex(R, M, smax, N):
    """The simplicial spectrum with s-simplices M ^_S R^{^s}; d_0 is the
    right action, middle faces multiply adjacent ring factors, the last
    face rotates cyclically through the left action; degeneracies insert
    the unit.  M must be R itself (the bimodule the corpus uses)."""
    if M is not R:
        raise NotImplementedError("bimodule corpus is M = R")
    levels = []
    for s in range(smax + 1):
        levels.append(smash_over_S([M] + [R] * s, N,
                                   name="hh_%d" % s))
    face_maps = {}
    degeneracy_maps = {}
    for s in range(1, smax + 1):
        for i in range(s + 1):
            if i < s:
                face_maps[(s, i)] = merge_spectrum_map(
                    levels[s], levels[s - 1], i, R.multiplication,
                    "d%d" % i)
            else:
                face_maps[(s, i)] = cyclic_merge_map(
                    levels[s], levels[s - 1], R.multiplication, "d%d" % i)
    unit_comp = _unit_component(R)
    for s in range(smax):
        for i in range(s + 1):
            degeneracy_maps[(s, i)] = insert_unit_map(
                levels[s], levels[s + 1], i + 1, unit_comp, "s%d" % i)
    return SimplicialSpectrum(levels, face_maps, degeneracy_maps,
                              "tHH(%s)" % R.name)


def _unit_component(R):
    def unit_component(d):
        return [((("pt", R.unit_element)), tuple(range(d - 1, -1, -1)))]
    return unit_component


class RealizationSpectrum(SymmetricSpectrum):
    """Levelwise diagonal of a simplicial spectrum."""

    def __init__(self, ss, name=""):
        self.simplicial = ss
        N = min(X.N for X in ss.levels)
        sobjs = [ss.level_simplicial_object(l) for l in range(N + 1)]
        levels = [diagonal(sobjs[l], name="|%s|_%d" % (ss.name, l))
                  for l in range(N + 1)]
        self._sobjs = sobjs
        transpositions = []
        for n in range(N + 1):
            ts = []
            for i in range(1, n):
                per_level = [ss.levels[s].transpositions[n][i - 1]
                             for s in range(ss.smax + 1)]
                ts.append(_diagonal_map(levels[n], levels[n], sobjs[n],
                                        sobjs[n], per_level))
            transpositions.append(ts)
        sigmas = []
        for n in range(N):
            sigmas.append(self._diag_sigma(ss, sobjs, levels, n))
        super().__init__(levels, transpositions, sigmas,
                         name or "|%s|" % ss.name)
        n0 = sigma_iso_from(self)
        if n0 is not None and all(X.suspension_like_from is not None
                                  for X in ss.levels):
            self.suspension_like_from = n0

    def _diag_sigma(self, ss, sobjs, levels, n):
        src = smash([CIRCLE, levels[n]])
        tgt_sobj = sobjs[n + 1]
        tgt = levels[n + 1]
        nf = tgt.diag_nf
        assign = {}
        for g, d in src.dim_of.items():
            if g == src.basepoint:
                continue
            e_comp = g[0]
            dgen, dword = g[1]
            _, p, cell, V, W = dgen
            hw = word_apply(dword, ("h", V))[1]
            vexpr = word_apply(dword, (cell, W))
            sig = ss.levels[p].sigma(n)
            img = sig(smash_normal(sig.source,
                                   [e_comp] + expand_components(
                                       ss.levels[p].level(n), vexpr), d))
            assign[g] = nf(p, hw, img, d)
        return PointedMap(src, tgt, assign, "sigma")


def _diagonal_map(src_diag, tgt_diag, src_sobj, tgt_sobj, per_level_maps,
                  name=""):
    """Map of diagonals induced by a simplicial map (given levelwise)."""
    nf = tgt_diag.diag_nf
    assign = {}
    for g, d in src_diag.dim_of.items():
        if g == src_diag.basepoint:
            continue
        _, p, cell, V, W = g
        img = per_level_maps[p]((cell, W))
        assign[g] = nf(p, V, img, d)
    return PointedMap(src_diag, tgt_diag, assign, name)


def realize(ss, name=""):
    """Levelwise diagonal of a simplicial spectrum, as a spectrum."""
    return RealizationSpectrum(ss, name)


def realization_moore_complex(ss, l):
    """Normalized Moore total complex of the level-l chains of a
    simplicial spectrum (the Eilenberg-Zilber cross-check for the
    diagonal)."""
    chains = [normalized_chains(ss.levels[s].level(l))
              for s in range(ss.smax + 1)]
    # normalized: drop cells hit by a degeneracy map
    norm = []
    for s in range(ss.smax + 1):
        if s == 0:
            norm.append(chains[0])
            continue
        degenerate = set()
        for i in range(s):
            m = ss.degeneracy_maps[(s - 1, i)].level(l)
            for g in m.source.dim_of:
                img = m(SGEN(g))
                if img[1] == ():
                    degenerate.add(img[0])
        norm.append(_restrict_complex(chains[s], degenerate))
    face_chain = {}
    for s in range(1, ss.smax + 1):
        for i in range(s + 1):
            f = chain_map_of(ss.face_maps[(s, i)].level(l),
                             chains[s], chains[s - 1])
            face_chain[(s, i)] = _restrict_map(f, norm[s], norm[s - 1])
    T, _ = moore_total(norm, face_chain)
    return T


def _restrict_complex(C, dropped):
    """Quotient of a labelled complex by the coordinate subcomplex
    spanned by the dropped labels."""
    ranks, labels, diffs = {}, {}, {}
    index = {}
    for d in C.degrees():
        keep = [g for g in C.labels[d] if g not in dropped]
        if keep:
            ranks[d] = len(keep)
            labels[d] = keep
            index[d] = {g: i for i, g in enumerate(keep)}
    for d in C.degrees():
        if not ranks.get(d) or not ranks.get(d - 1):
            continue
        M = la.zeros(ranks[d - 1], ranks[d])
        full = C.diff(d)
        rows = {g: i for i, g in enumerate(C.labels[d - 1])}
        for j, g in enumerate(labels[d]):
            jfull = C.labels[d].index(g)
            for gr, ifull in rows.items():
                if gr in index[d - 1] and full[ifull][jfull]:
                    M[index[d - 1][gr]][j] = full[ifull][jfull]
        diffs[d] = M
    return ChainComplex(ranks, diffs, labels, C.name + "/degen")


def _restrict_map(f, normS, normT):
    mats = {}
    for d in normS.degrees():
        if not normT.rank(d):
            continue
        rows_full = {g: i for i, g in enumerate(f.target.labels.get(d, []))}
        cols_full = {g: i for i, g in enumerate(f.source.labels.get(d, []))}
        M = la.zeros(normT.rank(d), normS.rank(d))
        F = f.mat(d)
        for j, g in enumerate(normS.labels[d]):
            jf = cols_full[g]
            for i, gt in enumerate(normT.labels[d]):
                if gt in rows_full:
                    M[i][j] = F[rows_full[gt]][jf]
        mats[d] = M
    return ChainMap(normS, normT, mats)


# -- balanced products -----------------------------------------------------------


def tk(R, M, N):
    """tk(R; M) = M ^_{R^e} R, computed as the quotient of M ^_S R by the
    two-sided balance congruence.  Corpus: M = R."""
    if M is not R:
        raise NotImplementedError("bimodule corpus is M = R")
    return SmashSpectrum([M, R], N,
                         extra_seeds=bimodule_balance_seeds(R, 1),
                         name="tk(%s)" % R.name)


def balanced_bar_level(R, s, N):
    """M ^_{R^e} B_s(R, R, R) = M ^_{R^e} R^{^(s+2)} for M = R."""
    return SmashSpectrum([R] * (s + 3), N,
                         extra_seeds=bimodule_balance_seeds(R, s + 2),
                         name="MB_%d" % s)


def balanced_bar(R, smax, N):
    """The simplicial spectrum s -> M ^_{R^e} B_s(R,R,R) with the inner
    bar faces/degeneracies, M = R.  Its realization is the derived-smash
    model of topological Hochschild homology."""
    levels = [balanced_bar_level(R, s, N) for s in range(smax + 1)]
    face_maps = {}
    degeneracy_maps = {}
    for s in range(1, smax + 1):
        # blocks: M, R_0 .. R_{s+1}; inner bar faces multiply chain blocks
        # i+1, i+2 (0-indexed d_i multiplies bar entries i and i+1)
        for i in range(s + 1):
            face_maps[(s, i)] = merge_spectrum_map(
                levels[s], levels[s - 1], i + 1, R.multiplication, "d%d" % i)
    unit_comp = _unit_component(R)
    for s in range(smax):
        for i in range(s + 1):
            degeneracy_maps[(s, i)] = insert_unit_map(
                levels[s], levels[s + 1], i + 2, unit_comp, "s%d" % i)
    return SimplicialSpectrum(levels, face_maps, degeneracy_maps,
                              "M^B(%s)" % R.name)


def monoid_bar(R, Raug, aug, smax, N):
    """B(R, R, S'): the two-sided bar construction of a monoid ring R
    acting on the target S' of a ring map aug: R -> S' (levelwise).

    Implemented with all blocks R except the last, which is S'; the last
    face multiplies into S' through aug.  Returns the simplicial
    spectrum together with the augmentation map from its realization
    candidate level 0 (B_0 = R ^_S S') to S' via action.
    """
    levels = []
    for s in range(smax + 1):
        levels.append(smash_over_S([R] * (s + 1) + [Raug], N,
                                   name="B_%d" % s))

    def last_pairing(p, q):
        # R_p ^ S'_q -> S'_{p+q}: apply aug levelwise then multiply in S'
        mu = Raug.multiplication(p, q)
        src = smash([R.level(p), Raug.level(q)])
        assign = {}
        for g, d in src.dim_of.items():
            if g == src.basepoint:
                continue
            na = len(R.level(p).smash_factors) if R.level(p).smash_factors else 1
            aimg = aug.level(p)(part_expr(R.level(p), g[:na], d))
            parts = expand_components(Raug.level(p), aimg) + list(g[na:])
            assign[g] = mu(smash_normal(mu.source, parts, d))
        return PointedMap(src, Raug.level(p + q), assign)

    face_maps = {}
    degeneracy_maps = {}
    for s in range(1, smax + 1):
        for i in range(s + 1):
            if i < s:
                face_maps[(s, i)] = merge_spectrum_map(
                    levels[s], levels[s - 1], i, R.multiplication, "d%d" % i)
            else:
                face_maps[(s, i)] = merge_spectrum_map(
                    levels[s], levels[s - 1], s, last_pairing, "d%d" % i)
    unit_comp = _unit_component(R)
    for s in range(smax):
        for i in range(s + 1):
            degeneracy_maps[(s, i)] = insert_unit_map(
                levels[s], levels[s + 1], i + 1, unit_comp, "s%d" % i)
    ss = SimplicialSpectrum(levels, face_maps, degeneracy_maps,
                            "B(%s,%s,S')" % (R.name, R.name))
    ss.last_pairing = last_pairing
    return ss


def bar_extra_degeneracy(ss, R, smax):
    """The extra degeneracy s_{-1}: B_s -> B_{s+1} inserting the unit in
    front; provides the simplicial contraction of B(R, R, N')."""
    unit_comp = _unit_component(R)
    out = {}
    for s in range(smax):
        out[s] = insert_unit_map(ss.levels[s], ss.levels[s + 1], 0,
                                 unit_comp, "s_-1")
    return out


# -- cyclic bar oracle -------------------------------------------------------------


def cyclic_bar_complex(table, unit, top):
    """Normalized chains of the cyclic bar construction of a finite
    monoid: degree s basis = tuples (g_0, .., g_s) with g_i != unit for
    i >= 1; faces multiply neighbours, the last one cyclically."""
    elements = sorted({a for a, _ in table} | {unit}, key=repr)

    def mult(a, b):
        if a == unit:
            return b
        if b == unit:
            return a
        return table[(a, b)]

    basis = {0: [(g,) for g in elements]}
    for s in range(1, top + 1):
        basis[s] = [t + (g,) for t in basis[s - 1] for g in elements
                    if g != unit]
    index = {s: {t: i for i, t in enumerate(basis[s])} for s in basis}
    ranks = {s: len(basis[s]) for s in basis}
    diffs = {}
    for s in range(1, top + 1):
        M = la.zeros(ranks[s - 1], ranks[s])
        for j, t in enumerate(basis[s]):
            sign = 1
            for i in range(s + 1):
                if i < s:
                    face = t[:i] + (mult(t[i], t[i + 1]),) + t[i + 2:]
                else:
                    face = (mult(t[s], t[0]),) + t[1:s]
                # normalize: drop if a unit appears in positions >= 1
                if all(x != unit for x in face[1:]):
                    M[index[s - 1][face]][j] += sign
                sign = -sign
        diffs[s] = M
    return ChainComplex(ranks, diffs, {s: list(b) for s, b in basis.items()},
                        "Bcy")
