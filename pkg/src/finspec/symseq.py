"""Symmetric groups, symmetric sequences, and the induction tensor product.

A symmetric sequence is a truncated list of pointed simplicial sets with
a symmetric group action on each level, stored on adjacent transpositions
and extended to arbitrary permutations along reduced words.  The tensor
product of two sequences is a wedge of smash products indexed by subset
coset representatives, with the block action computed by subset algebra.
"""

from __future__ import annotations

from .simplicial import (
    PointedMap, SGEN, identity_map, point, smash, smash_normal,
    smash_permute, sphere, sphere0, wedge, word_apply,
)


class Permutation:
    """Permutation of {1..n}, stored as the image tuple."""

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError("not a permutation of 1..n")
        self.images = images
        self.n = len(images)

    def __call__(self, i):
        return self.images[i - 1]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Perm%r" % (self.images,)

    def compose(self, other):
        """self after other."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self):
        inv = [0] * self.n
        for i, v in enumerate(self.images):
            inv[v - 1] = i + 1
        return Permutation(inv)

    def sign(self):
        seen = [False] * self.n
        sgn = 1
        for i in range(self.n):
            if seen[i]:
                continue
            j = i
            clen = 0
            while not seen[j]:
                seen[j] = True
                j = self.images[j] - 1
                clen += 1
            if clen % 2 == 0:
                sgn = -sgn
        return sgn

    def reduced_word(self):
        """Adjacent transposition word (indices i meaning swap i, i+1,
        1-based): self = t_{w_k} o ... o t_{w_1} with w_1 first, i.e. the
        first listed transposition acts first."""
        imgs = list(self.images)
        word = []
        changed = True
        while changed:
            changed = False
            for i in range(self.n - 1):
                if imgs[i] > imgs[i + 1]:
                    imgs[i], imgs[i + 1] = imgs[i + 1], imgs[i]
                    word.append(i + 1)
                    changed = True
        return word

    @staticmethod
    def identity(n):
        return Permutation(range(1, n + 1))

    @staticmethod
    def transposition(n, i):
        imgs = list(range(1, n + 1))
        imgs[i - 1], imgs[i] = imgs[i], imgs[i - 1]
        return Permutation(imgs)

    @staticmethod
    def from_mapping(n, mapping):
        return Permutation(tuple(mapping[i] for i in range(1, n + 1)))

    @staticmethod
    def block(p, q, first, second):
        """Block sum: first acts on 1..p, second on p+1..p+q."""
        imgs = list(first.images) + [p + v for v in second.images]
        return Permutation(imgs)

    @staticmethod
    def all_permutations(n):
        from itertools import permutations as iperm
        return [Permutation(p) for p in iperm(range(1, n + 1))]


def shuffle_coset_rep(n, subset):
    """The (p, q)-shuffle permutation sending {1..p} to the sorted subset
    and {p+1..n} to the sorted complement."""
    subset = sorted(subset)
    comp = [i for i in range(1, n + 1) if i not in set(subset)]
    return Permutation(tuple(subset + comp))


class SymmetricSequence:
    """Levels 0..N of pointed simplicial sets with symmetric group
    actions stored on adjacent transpositions."""

    def __init__(self, levels, transpositions, name=""):
        self.levels = list(levels)
        self.N = len(self.levels) - 1
        # transpositions[n] = list of maps for s_1 .. s_{n-1} on level n
        self.transpositions = transpositions
        self.name = name

    def level(self, n):
        return self.levels[n]

    def action(self, n, perm):
        """The automorphism of level n given by a permutation, composed
        along a reduced word."""
        m = identity_map(self.levels[n])
        for i in perm.reduced_word():
            m = self.transpositions[n][i - 1].compose(m)
        return m

    def check_action(self):
        """Coxeter relations levelwise; reports the first violation."""
        for n in range(self.N + 1):
            ts = self.transpositions[n]
            if len(ts) != max(n - 1, 0):
                return "level %d: expected %d transpositions" % (n, n - 1)
            idm = identity_map(self.levels[n])
            for i, t in enumerate(ts):
                if not t.compose(t).same_assignment(idm):
                    return "level %d: s_%d^2 != 1" % (n, i + 1)
            for i in range(len(ts)):
                for j in range(i + 2, len(ts)):
                    lhs = ts[i].compose(ts[j])
                    rhs = ts[j].compose(ts[i])
                    if not lhs.same_assignment(rhs):
                        return "level %d: s_%d s_%d commuting fails" % (n, i + 1, j + 1)
            for i in range(len(ts) - 1):
                lhs = ts[i].compose(ts[i + 1]).compose(ts[i])
                rhs = ts[i + 1].compose(ts[i]).compose(ts[i + 1])
                if not lhs.same_assignment(rhs):
                    return "level %d: braid s_%d s_%d fails" % (n, i + 1, i + 2)
        return None


def sphere_sequence(N):
    """The sequence S = (S^0, S^1, ...) with coordinate permutation
    actions; level n is the n-fold smash power of the circle."""
    levels = [sphere(n) for n in range(N + 1)]
    transpositions = []
    for n in range(N + 1):
        ts = []
        for i in range(1, n):
            perm = list(range(n))
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
            ts.append(smash_permute(levels[n], levels[n], perm, "s%d" % i))
        transpositions.append(ts)
    return SymmetricSequence(levels, transpositions, "S")


def g_sequence(n, K, N):
    """G_n K: the free symmetric sequence on K at level n: Sigma_n+ ^ K
    there, basepoint elsewhere.  Summands are indexed by permutations
    acting by postcomposition."""
    perms = Permutation.all_permutations(n)
    levels = []
    incl = None
    for m in range(N + 1):
        if m != n:
            levels.append(point())
        else:
            W, incs = wedge([K] * len(perms),
                            tags=[("perm", p.images) for p in perms])
            levels.append(W)
            incl = {p.images: inc for p, inc in zip(perms, incs)}
    transpositions = []
    for m in range(N + 1):
        ts = []
        for i in range(1, m):
            if m != n:
                ts.append(identity_map(levels[m]))
            else:
                t = Permutation.transposition(n, i)
                assign = {}
                for p in perms:
                    tp = t.compose(p)
                    src_inc = incl[p.images]
                    tgt_inc = incl[tp.images]
                    for g in K.dim_of:
                        img = tgt_inc(SGEN(g))
                        src = src_inc(SGEN(g))
                        if src[1] == ():
                            assign[src[0]] = img
                ts.append(PointedMap(levels[m], levels[m], assign, "s%d" % i))
        transpositions.append(ts)
    seq = SymmetricSequence(levels, transpositions, "G_%d" % n)
    seq.g_inclusions = incl
    return seq


def unit_sequence(N):
    """The tensor unit: S^0 at level 0, points above."""
    levels = [sphere0()] + [point() for _ in range(N)]
    transpositions = [[] if n == 0 else [identity_map(levels[n])
                                         for _ in range(n - 1)]
                      for n in range(N + 1)]
    return SymmetricSequence(levels, transpositions, "unit")


class TensorSequence(SymmetricSequence):
    """Tensor product of two symmetric sequences.

    Level n is the wedge over p + q = n and p-subsets A of {1..n} of
    X_p ^ Y_q; the subset indexes the coset of the canonical
    (p, q)-shuffle.  A permutation rho sends the (A, z) summand to
    (rho(A), (rho_1 ^ rho_2) z) where rho_1, rho_2 are the relative
    permutations of rho on A and its complement.
    """

    def __init__(self, X, Y):
        if X.N != Y.N:
            raise ValueError("truncation mismatch")
        N = X.N
        self.X, self.Y = X, Y
        from itertools import combinations
        levels = []
        summands = []  # per level: list of (p, A, smash(X_p, Y_q))
        inclusions = []
        for n in range(N + 1):
            parts, tags = [], []
            for p in range(n + 1):
                q = n - p
                if X.level(p).cell_counts() == [1] or \
                   Y.level(q).cell_counts() == [1]:
                    continue
                sm = smash([X.level(p), Y.level(q)])
                if len(sm.dim_of) == 1:
                    continue
                for A in combinations(range(1, n + 1), p):
                    parts.append(sm)
                    tags.append((p, A))
            if parts:
                W, incs = wedge(parts, tags=tags)
            else:
                W, incs = point(), []
            levels.append(W)
            summands.append(list(zip(tags, parts)) if parts else [])
            inclusions.append({t: inc for t, inc in zip(tags, incs)})
        self.summands = summands
        self.inclusions = inclusions

        transpositions = []
        for n in range(N + 1):
            ts = []
            for i in range(1, n):
                rho = Permutation.transposition(n, i)
                ts.append(self._action_map(n, rho, levels, X, Y))
            transpositions.append(ts)
        super().__init__(levels, transpositions,
                         "(%s@%s)" % (X.name, Y.name))

    def _action_map(self, n, rho, levels, X, Y):
        assign = {}
        W = levels[n]
        for (tag, sm) in self.summands[n]:
            p, A = tag
            q = n - p
            B = tuple(sorted(rho(a) for a in A))
            shA = shuffle_coset_rep(n, A)
            shB = shuffle_coset_rep(n, B)
            resid = shB.inverse().compose(rho).compose(shA)
            rho1 = Permutation(resid.images[:p])
            rho2 = Permutation(tuple(v - p for v in resid.images[p:]))
            mapX = X.action(p, rho1)
            mapY = Y.action(q, rho2)
            tgt_sm = dict(self.summands[n])[(p, B)]
            comp = smash_map2(sm, tgt_sm, mapX, mapY)
            src_inc = self.inclusions[n][(p, A)]
            tgt_inc = self.inclusions[n][(p, B)]
            for g in sm.dim_of:
                src = src_inc(SGEN(g))
                if src[1] == () and src[0] != W.basepoint:
                    assign[src[0]] = tgt_inc(comp(SGEN(g)))
        return PointedMap(W, W, assign, "rho")


def expand_components(space, expr):
    """Component expressions of a simplex of a (possibly smash-built)
    pointed set: a list with one expression per flattened coordinate."""
    g, w = expr
    d = space.expr_dim(expr)
    if not space.smash_factors:
        return [expr]
    if g == space.basepoint:
        return [f.base_expr(d) for f in space.smash_factors]
    return [word_apply(w, comp) for comp in g]


def part_expr(space, comps, dim):
    """Normal form of a component tuple in a possibly-smash space."""
    if not space.smash_factors:
        return comps[0]
    return smash_normal(space, list(comps), dim)


def smash_map2(sm_src, sm_tgt, mapX, mapY):
    """Induced map on a binary smash from maps of the two factors."""
    nx = len(mapX.source.smash_factors) if mapX.source.smash_factors else 1
    assign = {}
    for g, d in sm_src.dim_of.items():
        if g == sm_src.basepoint:
            continue
        ximg = mapX(part_expr(mapX.source, g[:nx], d))
        yimg = mapY(part_expr(mapY.source, g[nx:], d))
        parts = expand_components(mapX.target, ximg) + \
            expand_components(mapY.target, yimg)
        assign[g] = smash_normal(sm_tgt, parts, d)
    return PointedMap(sm_src, sm_tgt, assign)


def wedge_out(W, summands, inclusions, leg_maps, target):
    """Map out of a wedge given one map per summand tag."""
    assign = {}
    for (tag, factor) in summands:
        leg = leg_maps[tag]
        for g in factor.dim_of:
            src = inclusions[tag](SGEN(g))
            if src[1] == () and src[0] != W.basepoint:
                assign[src[0]] = leg(SGEN(g))
    return PointedMap(W, target, assign)


def tensor(X, Y):
    return TensorSequence(X, Y)


def tensor_twist(T_XY, T_YX, n):
    """The level-n twist (X tensor Y)_n -> (Y tensor X)_n: the (p, A)
    summand X_p ^ Y_q goes to the (q, complement A) summand by the smash
    twist; the shuffle coset representatives absorb the block swap."""
    X, Y = T_XY.X, T_XY.Y
    leg_maps = {}
    for (tag, sm) in T_XY.summands[n]:
        p, A = tag
        q = n - p
        comp = tuple(i for i in range(1, n + 1) if i not in set(A))
        tgt_tag = (q, comp)
        tgt_sm = dict(T_YX.summands[n])[tgt_tag]
        nx = len(X.level(p).smash_factors) if X.level(p).smash_factors else 1
        assign = {}
        for g, d in sm.dim_of.items():
            if g == sm.basepoint:
                continue
            parts = list(g[nx:]) + list(g[:nx])
            assign[g] = smash_normal(tgt_sm, parts, d)
        swap = PointedMap(sm, tgt_sm, assign)
        leg_maps[tag] = T_YX.inclusions[n][tgt_tag].compose(swap)
    return wedge_out(T_XY.level(n), T_XY.summands[n], T_XY.inclusions[n],
                     leg_maps, T_YX.level(n))


def tensor_unit_iso(T, n, unit_first=True):
    """Canonical level-n isomorphism (unit tensor X)_n -> X_n (or
    (X tensor unit)_n -> X_n)."""
    X = T.Y if unit_first else T.X
    leg_maps = {}
    for (tag, sm) in T.summands[n]:
        p, A = tag
        # only the summand with the unit factor in degree 0 is nontrivial
        assign = {}
        n0 = 1  # the unit factor S^0 contributes one coordinate
        for g, d in sm.dim_of.items():
            if g == sm.basepoint:
                continue
            parts = g[n0:] if unit_first else g[:-n0]
            assign[g] = part_expr(X.level(n), list(parts), d)
        leg_maps[tag] = PointedMap(sm, X.level(n), assign)
    return wedge_out(T.level(n), T.summands[n], T.inclusions[n],
                     leg_maps, X.level(n))


def tensor_associator(T_XY_Z, T_X_YZ, n):
    """Level-n associativity isomorphism ((X@Y)@Z)_n -> (X@(Y@Z))_n via
    subset reindexing."""
    XY = T_XY_Z.X
    Z = T_XY_Z.Y
    X = T_X_YZ.X
    YZ = T_X_YZ.Y
    leg_maps = {}
    for (tag, sm) in T_XY_Z.summands[n]:
        m, C = tag   # (X@Y)_m ^ Z_{n-m} indexed by the m-subset C
        r = n - m
        Cl = list(C)
        # sm = smash(XY.level(m), Z.level(r)); XY.level(m) is a wedge
        nxy = 1  # wedge levels are not smash-built: one coordinate
        assign = {}
        for g, d in sm.dim_of.items():
            if g == sm.basepoint:
                continue
            xy_expr = part_expr(XY.level(m), g[:1], d)
            z_comps = g[1:]
            # resolve the wedge coordinate of (X@Y)_m
            gxy, wxy = xy_expr
            if gxy == XY.level(m).basepoint:
                assign[g] = T_X_YZ.level(n).base_expr(d)
                continue
            inner_tag, inner_g = gxy
            p, A = inner_tag
            q = m - p
            inner_sm = dict(XY.summands[m])[inner_tag]
            inner_expr = word_apply(wxy, (inner_g, ()))
            comps = expand_components(inner_sm, inner_expr)
            npx = len(X.level(p).smash_factors) if X.level(p).smash_factors else 1
            x_comps = comps[:npx]
            y_comps = comps[npx:]
            # target indexing: A' = C[A], B' = C[complement of A]
            Aprime = tuple(sorted(Cl[a - 1] for a in A))
            comp_in_m = [i for i in range(1, m + 1) if i not in set(A)]
            Bprime = tuple(sorted(Cl[b - 1] for b in comp_in_m))
            rest = [i for i in range(1, n + 1) if i not in set(Aprime)]
            pos = {v: i + 1 for i, v in enumerate(rest)}
            Bsecond = tuple(sorted(pos[v] for v in Bprime))
            # assemble the target element
            yz_tag = (q, Bsecond)
            yz_lookup = dict(YZ.summands[n - p])
            tgt_lookup = dict(T_X_YZ.summands[n])
            tgt_tag = (p, Aprime)
            if yz_tag not in yz_lookup or tgt_tag not in tgt_lookup:
                assign[g] = T_X_YZ.level(n).base_expr(d)
                continue
            yz_sm = yz_lookup[yz_tag]
            yz_expr = smash_normal(yz_sm, list(y_comps) + list(z_comps), d)
            yz_in = YZ.inclusions[n - p][yz_tag](yz_expr)
            tgt_sm = tgt_lookup[tgt_tag]
            tgt_expr = smash_normal(tgt_sm, list(x_comps) + [yz_in], d)
            assign[g] = T_X_YZ.inclusions[n][tgt_tag](tgt_expr)
        leg_maps[tag] = PointedMap(sm, T_X_YZ.level(n), assign)
    return wedge_out(T_XY_Z.level(n), T_XY_Z.summands[n],
                     T_XY_Z.inclusions[n], leg_maps, T_X_YZ.level(n))
