"""Finite pointed simplicial sets.

A simplicial set is stored by its nondegenerate simplices ("generators")
plus, for every generator of positive dimension, the Eilenberg-Zilber
normal form of each face: a generator together with a strictly decreasing
degeneracy word.  Degenerate simplices never appear explicitly; the word
calculus below recovers any face or degeneracy of any simplex.

An expression (g, word) with word = (i_k > ... > i_1) denotes
s_{i_k} ... s_{i_1} g.  The basepoint class in dimension d is the fully
degenerate expression on the basepoint generator.

Constructions: wedges, n-ary smash products (cells are tuples of
component expressions whose degeneracy words have empty total
intersection), quotients by pointed subobjects, pushouts and general
identification quotients via a simplicial congruence closure, and
diagonals of simplicial objects.
"""

from __future__ import annotations

from itertools import combinations

UNBOUNDED_CONN = 10 ** 6


def word_insert(word, j):
    """Normal form of s_j applied outside the strictly decreasing word."""
    out = []
    k = 0
    while k < len(word) and j <= word[k]:
        out.append(word[k] + 1)
        k += 1
    out.append(j)
    out.extend(word[k:])
    return tuple(out)


def word_remove(word, j):
    """Word of d_j s_word when j occurs in word (the cancellation case)."""
    out = []
    seen = False
    for w in word:
        if not seen and w == j:
            seen = True
        elif not seen:
            out.append(w - 1)
        else:
            out.append(w)
    if not seen:
        raise ValueError("letter not present")
    return tuple(out)


def word_apply(word, expr):
    """Apply a degeneracy word (outermost letter first) to an expression."""
    g, w = expr
    for a in reversed(word):
        w = word_insert(w, a)
    return (g, w)


class SimplicialSet:
    """Finite pointed simplicial set given by nondegenerate generators."""

    def __init__(self, name=""):
        self.name = name
        self.gens = {}       # dim -> ordered list of generator ids
        self.dim_of = {}     # id -> dim
        self.faces = {}      # id -> tuple of face expressions
        self.basepoint = None
        self.smash_factors = None
        self._conn = None

    def add_generator(self, gid, dim, faces=None):
        if gid in self.dim_of:
            raise ValueError("duplicate generator %r" % (gid,))
        self.dim_of[gid] = dim
        self.gens.setdefault(dim, []).append(gid)
        if dim > 0:
            if faces is None or len(faces) != dim + 1:
                raise ValueError("generator %r needs %d faces" % (gid, dim + 1))
            self.faces[gid] = tuple(faces)
        return gid

    def set_basepoint(self, gid):
        if self.dim_of.get(gid) != 0:
            raise ValueError("basepoint must be a 0-generator")
        self.basepoint = gid

    @property
    def top_dimension(self):
        return max(self.gens) if self.gens else 0

    def generators(self, dim):
        return self.gens.get(dim, [])

    def cell_counts(self):
        return [len(self.gens.get(d, [])) for d in range(self.top_dimension + 1)]

    def base_expr(self, dim):
        return (self.basepoint, tuple(range(dim - 1, -1, -1)))

    def is_base_expr(self, expr):
        return expr[0] == self.basepoint

    def expr_dim(self, expr):
        return self.dim_of[expr[0]] + len(expr[1])

    def face(self, expr, i):
        """d_i of an expression, in normal form."""
        g, word = expr
        outer = []
        idx = i
        pos = 0
        while pos < len(word):
            w = word[pos]
            if idx < w:
                outer.append(w - 1)
                pos += 1
            elif idx == w or idx == w + 1:
                res = (g, word[pos + 1:])
                for a in reversed(outer):
                    res = (res[0], word_insert(res[1], a))
                return res
            else:
                outer.append(w)
                idx -= 1
                pos += 1
        if self.dim_of[g] == 0:
            raise ValueError("face of a 0-simplex")
        res = self.faces[g][idx]
        for a in reversed(outer):
            res = (res[0], word_insert(res[1], a))
        return res

    def degeneracy(self, expr, j):
        return (expr[0], word_insert(expr[1], j))

    def validate(self):
        """Simplicial identities d_i d_j = d_{j-1} d_i (i < j) on all
        generators, face well-formedness, basepoint present."""
        if self.basepoint is None or self.dim_of.get(self.basepoint) != 0:
            raise AssertionError("missing basepoint")
        for gid, dim in self.dim_of.items():
            if dim == 0:
                continue
            for (g, w) in self.faces[gid]:
                if g not in self.dim_of:
                    raise AssertionError("unknown face target %r" % (g,))
                if any(w[k] <= w[k + 1] for k in range(len(w) - 1)):
                    raise AssertionError("degeneracy word not decreasing")
                if self.dim_of[g] + len(w) != dim - 1:
                    raise AssertionError("face dimension mismatch on %r" % (gid,))
            if dim >= 2:
                expr = (gid, ())
                for j in range(1, dim + 1):
                    for i in range(j):
                        if self.face(self.face(expr, j), i) != \
                                self.face(self.face(expr, i), j - 1):
                            raise AssertionError(
                                "d_%d d_%d failed on %r" % (i, j, gid))
        return True

    def euler_characteristic(self):
        return sum(((-1) ** d) * len(g) for d, g in self.gens.items())

    def connectivity_bound(self):
        """Largest c with the set combinatorially certified c-connected
        (single vertex, no nondegenerate cells in dims 1..c).  None when
        not reduced; UNBOUNDED_CONN for a point."""
        if self._conn is not None:
            return self._conn
        if len(self.gens.get(0, [])) != 1:
            return None
        top = self.top_dimension
        c = 0
        d = 1
        while d <= top:
            if self.gens.get(d):
                break
            c = d
            d += 1
        else:
            c = UNBOUNDED_CONN
        self._conn = c
        return c

    def simplices(self, dim):
        """All simplices of the given dimension (degenerate included)."""
        out = []
        for d in range(dim + 1):
            for g in self.gens.get(d, []):
                for w in combinations(range(dim - 1, -1, -1), dim - d):
                    out.append((g, w))
        return out

    def simply_connected_certificate(self):
        """Sound, incomplete check that the edge-path group is trivial.

        Requires a reduced set (single vertex, so 1-cells are loops).
        Generators are the nondegenerate 1-cells; every 2-cell imposes
        [d_1] = [d_2][d_0].  Triviality is propagated until every
        generator is killed; returns False when the closure stalls."""
        if len(self.gens.get(0, [])) != 1:
            return False
        loops = set(self.gens.get(1, []))
        if not loops:
            return True
        trivial = set()

        def entry(expr):
            g, w = expr
            if w or g == self.basepoint:
                return None  # degenerate edge, trivial in the group
            return g

        relations = []
        for g in self.gens.get(2, []):
            expr = (g, ())
            a = entry(self.face(expr, 1))
            b = entry(self.face(expr, 2))
            c = entry(self.face(expr, 0))
            relations.append((a, b, c))  # a = b * c
        changed = True
        while changed and trivial != loops:
            changed = False
            for (a, b, c) in relations:
                known = [(x in trivial or x is None) for x in (a, b, c)]
                if sum(known) == 2:
                    for x, k in zip((a, b, c), known):
                        if not k:
                            trivial.add(x)
                            changed = True
        return trivial == loops


# -- elementary objects ---------------------------------------------------


def point():
    ss = SimplicialSet("point")
    ss.add_generator("*", 0)
    ss.set_basepoint("*")
    return ss


def sphere0():
    ss = SimplicialSet("S0")
    ss.add_generator("*", 0)
    ss.add_generator("p", 0)
    ss.set_basepoint("*")
    return ss


def circle():
    ss = SimplicialSet("S1")
    ss.add_generator("*", 0)
    ss.add_generator("e", 1, [("*", ()), ("*", ())])
    ss.set_basepoint("*")
    return ss


def _subset_complex(name, subsets):
    ss = SimplicialSet(name)
    ss.add_generator("*", 0)
    ss.set_basepoint("*")
    for sub in subsets:
        d = len(sub) - 1
        if d == 0:
            ss.add_generator(sub, 0)
        else:
            ss.add_generator(sub, d,
                             [(sub[:i] + sub[i + 1:], ()) for i in range(d + 1)])
    return ss


def standard_simplex(k):
    """Delta[k]+ (disjoint basepoint added)."""
    subs = [s for d in range(k + 1) for s in combinations(range(k + 1), d + 1)]
    return _subset_complex("Delta[%d]+" % k, subs)


def boundary_simplex(k):
    """Boundary of Delta[k], plus a disjoint basepoint."""
    subs = [s for d in range(k) for s in combinations(range(k + 1), d + 1)]
    return _subset_complex("dDelta[%d]+" % k, subs)


def horn(k, l):
    """The horn with the l-th face removed, plus a disjoint basepoint."""
    omit = tuple(v for v in range(k + 1) if v != l)
    subs = [s for d in range(k) for s in combinations(range(k + 1), d + 1)
            if s != omit]
    return _subset_complex("Horn[%d,%d]+" % (k, l), subs)


def discrete(points):
    """Pointed discrete simplicial set on the given labels."""
    ss = SimplicialSet("discrete")
    ss.add_generator("*", 0)
    ss.set_basepoint("*")
    for p in points:
        ss.add_generator(("pt", p), 0)
    return ss


# -- pointed maps ----------------------------------------------------------


def SGEN(g):
    return (g, ())


class PointedMap:
    """Map of pointed simplicial sets, stored on generators."""

    def __init__(self, source, target, assignment, name=""):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        self.name = name
        self.assignment.setdefault(source.basepoint, (target.basepoint, ()))

    def __call__(self, expr):
        g, word = expr
        return word_apply(word, self.assignment[g])

    def same_assignment(self, other):
        return all(self(SGEN(g)) == other(SGEN(g)) for g in self.source.dim_of)

    def validate(self):
        src, tgt = self.source, self.target
        if self.assignment[src.basepoint][0] != tgt.basepoint:
            raise AssertionError("basepoint not preserved")
        for g, d in src.dim_of.items():
            img = self.assignment[g]
            if tgt.expr_dim(img) != d:
                raise AssertionError("dimension mismatch at %r" % (g,))
            if d == 0:
                continue
            for i in range(d + 1):
                if tgt.face(self(SGEN(g)), i) != self(src.face(SGEN(g), i)):
                    raise AssertionError("face %d mismatch at %r" % (i, g))
        return True

    def compose(self, other):
        """self after other."""
        assign = {g: self(other(SGEN(g))) for g in other.source.dim_of}
        return PointedMap(other.source, self.target, assign)

    def is_isomorphism(self):
        src, tgt = self.source, self.target
        for d in set(src.gens) | set(tgt.gens):
            imgs = set()
            for g in src.gens.get(d, []):
                img = self.assignment[g]
                if img[1] != ():
                    return False
                imgs.add(img[0])
            if len(imgs) != len(src.gens.get(d, [])):
                return False
            if imgs != set(tgt.gens.get(d, [])):
                return False
        return True

    def is_mono(self):
        """Levelwise injectivity through the top source dimension."""
        src = self.source
        for d in range(src.top_dimension + 1):
            seen = {}
            for sx in src.simplices(d):
                img = self(sx)
                if img in seen and seen[img] != sx:
                    return False
                seen[img] = sx
        return True


def identity_map(ss):
    return PointedMap(ss, ss, {g: (g, ()) for g in ss.dim_of}, "id")


def constant_map(src, tgt):
    return PointedMap(src, tgt,
                      {g: tgt.base_expr(src.dim_of[g]) for g in src.dim_of},
                      "const")


# -- wedge -----------------------------------------------------------------


def wedge(factors, tags=None):
    """Wedge of pointed simplicial sets; returns (W, inclusions)."""
    if tags is None:
        tags = list(range(len(factors)))
    ss = SimplicialSet("wedge")
    ss.add_generator("*", 0)
    ss.set_basepoint("*")
    inclusions = []
    for tag, X in zip(tags, factors):
        def conv(expr, tag=tag, X=X):
            g, w = expr
            if g == X.basepoint:
                return word_apply(w, ("*", ())) if w else ("*", ())
            return ((tag, g), w)
        assign = {}
        for d in sorted(X.gens):
            for g in X.gens[d]:
                if g == X.basepoint:
                    assign[g] = ("*", ())
                    continue
                gid = (tag, g)
                if d == 0:
                    ss.add_generator(gid, 0)
                else:
                    ss.add_generator(gid, d, [conv(f) for f in X.faces[g]])
                assign[g] = (gid, ())
        inclusions.append(PointedMap(X, ss, assign))
    return ss, inclusions


# -- n-ary smash products --------------------------------------------------


def _tuple_strip(ss_list, exprs):
    """Strip common degeneracy letters from a tuple of expressions.
    Returns (word, core) with the tuple equal to s_word applied to core."""
    exprs = list(exprs)
    letters = []
    while True:
        common = set(exprs[0][1])
        for e in exprs[1:]:
            common &= set(e[1])
        if not common:
            break
        j = max(common)
        exprs = [ss.face(e, j) for ss, e in zip(ss_list, exprs)]
        letters.append(j)
    word = ()
    for j in reversed(letters):
        word = word_insert(word, j)
    return word, tuple(exprs)


def smash_normal(sm, exprs, dim):
    """Normal form of a component tuple as an expression of the smash."""
    factors = sm.smash_factors
    for X, e in zip(factors, exprs):
        if X.is_base_expr(e):
            return sm.base_expr(dim)
    word, core = _tuple_strip(factors, exprs)
    return (core, word)


def _words_with_empty_intersection(n, sizes):
    """Tuples of strictly decreasing words over {0..n-1} with the given
    sizes and empty total intersection."""
    k = len(sizes)

    def rec(i, acc):
        if i == k:
            inter = set(acc[0]) if acc else set()
            for w in acc[1:]:
                inter &= set(w)
            if not inter or not acc:
                yield tuple(acc)
            return
        for sub in combinations(range(n - 1, -1, -1), sizes[i]):
            yield from rec(i + 1, acc + [sub])

    yield from rec(0, [])


def smash(factors, name="smash"):
    """Reduced smash product of pointed simplicial sets.

    Generators are tuples of component expressions with empty total
    intersection of degeneracy words and no component at the basepoint.
    Smash-built factors are flattened, so iterated smashes associate on
    the nose.
    """
    flat = []
    for X in factors:
        if X.smash_factors:
            flat.extend(X.smash_factors)
        else:
            flat.append(X)
    factors = flat
    k = len(factors)
    ss = SimplicialSet(name)
    ss.add_generator("*", 0)
    ss.set_basepoint("*")
    ss.smash_factors = factors

    cell_lists = []
    for X in factors:
        cells = []
        for d in sorted(X.gens):
            for g in X.gens[d]:
                if g != X.basepoint:
                    cells.append((g, d))
        cell_lists.append(cells)

    def rec(i, chosen):
        if i == k:
            yield tuple(chosen)
            return
        for gd in cell_lists[i]:
            yield from rec(i + 1, chosen + [gd])

    new_gens = []
    for choice in rec(0, []):
        dims = [d for _, d in choice]
        for n in range(max(dims), sum(dims) + 1):
            sizes = [n - d for d in dims]
            for words in _words_with_empty_intersection(n, sizes):
                gid = tuple((g, w) for (g, _), w in zip(choice, words))
                new_gens.append((n, gid))
    new_gens.sort(key=lambda t: (t[0], repr(t[1])))
    for n, gid in new_gens:
        if n == 0:
            ss.add_generator(gid, 0)
            continue
        faces = []
        for i in range(n + 1):
            fexprs = [factors[t].face(gid[t], i) for t in range(k)]
            faces.append(smash_normal(ss, fexprs, n - 1))
        ss.add_generator(gid, n, faces)
    return ss


def smash_map(sm_src, sm_tgt, component_maps, name=""):
    """Map of smash products induced by maps of corresponding factors."""
    assign = {}
    for g, d in sm_src.dim_of.items():
        if g == "*":
            continue
        imgs = [component_maps[i](g[i]) for i in range(len(component_maps))]
        assign[g] = smash_normal(sm_tgt, imgs, d)
    return PointedMap(sm_src, sm_tgt, assign, name)


def smash_permute(sm_src, sm_tgt, perm, name="permute"):
    """Coordinate permutation map: target coordinate i is source
    coordinate perm[i]."""
    k = len(sm_tgt.smash_factors)
    assign = {}
    for g, d in sm_src.dim_of.items():
        if g == "*":
            continue
        imgs = [g[perm[i]] for i in range(k)]
        assign[g] = smash_normal(sm_tgt, imgs, d)
    return PointedMap(sm_src, sm_tgt, assign, name)


def twist(X, Y):
    """Twist isomorphism smash([X, Y]) -> smash([Y, X]).
    Returns (map, source_smash, target_smash)."""
    sxy = smash([X, Y])
    syx = smash([Y, X])
    nx = len(X.smash_factors) if X.smash_factors else 1
    k = len(sxy.smash_factors)
    perm = list(range(nx, k)) + list(range(nx))
    return smash_permute(sxy, syx, perm, "twist"), sxy, syx


def sphere(n):
    """S^0 for n = 0, else the n-fold smash power of the circle."""
    if n == 0:
        return sphere0()
    return smash([circle() for _ in range(n)], name="S%d" % n)


# -- quotients --------------------------------------------------------------


def quotient(X, subgens, name="quotient"):
    """Collapse the pointed subobject spanned by the given generators
    (closed under faces) to the basepoint.  Returns (Q, collapse map)."""
    sub = set(subgens)
    sub.add(X.basepoint)
    for g in sub:
        if g not in X.dim_of:
            raise ValueError("unknown generator %r" % (g,))
        if X.dim_of[g] > 0:
            for (fg, _) in X.faces[g]:
                if fg not in sub:
                    raise ValueError("subobject not closed under faces")
    ss = SimplicialSet(name)
    ss.add_generator("*", 0)
    ss.set_basepoint("*")

    def conv(expr):
        g, w = expr
        if g in sub:
            d = X.dim_of[g] + len(w)
            return ss.base_expr(d)
        return (g, w)

    assign = {}
    for d in sorted(X.gens):
        for g in X.gens[d]:
            if g in sub:
                assign[g] = ss.base_expr(d)
                continue
            if d == 0:
                ss.add_generator(g, 0)
            else:
                ss.add_generator(g, d, [conv(f) for f in X.faces[g]])
            assign[g] = (g, ())
    return ss, PointedMap(X, ss, assign, "collapse")


def half_smash(points, X):
    """P+ smash X as a wedge of labelled copies of X.
    Returns (W, dict label -> inclusion)."""
    W, incs = wedge([X] * len(points), tags=[("copy", p) for p in points])
    return W, {p: inc for p, inc in zip(points, incs)}


# -- congruence quotients ----------------------------------------------------


class Congruence:
    """Simplicial congruence closure on a finite pointed simplicial set:
    the equivalence generated by seed pairs, closed under all faces and
    degeneracies up to the top generator dimension."""

    def __init__(self, ss):
        self.ss = ss
        self.parent = {}
        self.maxdim = ss.top_dimension
        self.pending = []

    def find(self, x):
        p = self.parent
        root = x
        while p.get(root, root) != root:
            root = p[root]
        while p.get(x, x) != x:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.ss.is_base_expr(rb) or \
                (not self.ss.is_base_expr(ra) and repr(rb) < repr(ra)):
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.pending.append((ra, rb))

    def add_seed(self, a, b):
        self.union(a, b)

    def close(self):
        ss = self.ss
        while self.pending:
            a, b = self.pending.pop()
            d = ss.expr_dim(a)
            if d > 0:
                for i in range(d + 1):
                    self.union(ss.face(a, i), ss.face(b, i))
            if d < self.maxdim:
                for j in range(d + 1):
                    self.union(ss.degeneracy(a, j), ss.degeneracy(b, j))

    def quotient(self, name="coequalizer"):
        """Build the quotient simplicial set.  Returns (Q, projection)."""
        ss = self.ss
        self.close()
        members = {}
        for x in list(self.parent):
            members.setdefault(self.find(x), []).append(x)
        for r in members:
            if r not in members[r]:
                members[r].append(r)

        def class_members(root):
            return members.get(root, [root])

        def is_base_class(root):
            return any(ss.is_base_expr(m) for m in class_members(root))

        def class_letters(root):
            letters = set()
            for m in class_members(root):
                letters |= set(m[1])
            return letters

        Q = SimplicialSet(name)
        Q.add_generator("*", 0)
        Q.set_basepoint("*")

        norm_cache = {}

        def normal_form(root, dim):
            if root in norm_cache:
                return norm_cache[root]
            if is_base_class(root):
                res = Q.base_expr(dim)
            else:
                letters = class_letters(root)
                if not letters:
                    res = (("cls", root), ())
                else:
                    j = max(letters)
                    member = next(m for m in class_members(root) if j in m[1])
                    inner = self.find(ss.face(member, j))
                    g, w = normal_form(inner, dim - 1)
                    res = (g, word_insert(w, j))
            norm_cache[root] = res
            return res

        assign = {}
        for d in sorted(ss.gens):
            for g in ss.gens[d]:
                expr = (g, ())
                root = self.find(expr)
                if is_base_class(root) or class_letters(root):
                    continue
                qid = ("cls", root)
                if qid in Q.dim_of:
                    continue
                if d == 0:
                    Q.add_generator(qid, 0)
                else:
                    faces = [normal_form(self.find(ss.face(expr, i)), d - 1)
                             for i in range(d + 1)]
                    Q.add_generator(qid, d, faces)
        for d in sorted(ss.gens):
            for g in ss.gens[d]:
                assign[g] = normal_form(self.find((g, ())), d)
        return Q, PointedMap(ss, Q, assign, "proj")


def pushout(f, g, name="pushout"):
    """Pushout of X <-f- A -g-> Y.  Returns (P, map from X, map from Y)."""
    A = f.source
    W, (ix, iy) = wedge([f.target, g.target], tags=["l", "r"])
    cong = Congruence(W)
    for a in A.dim_of:
        cong.add_seed(ix(f(SGEN(a))), iy(g(SGEN(a))))
    Q, proj = cong.quotient(name)
    return Q, proj.compose(ix), proj.compose(iy)


def induced_map_on_quotient(proj_src, proj_tgt, raw_map, check=True):
    """Given projections p: X -> X/~ and q: Y -> Y/~ and a map f: X -> Y,
    return the induced map X/~ -> Y/~, verifying well-definedness."""
    Q1, Q2 = proj_src.target, proj_tgt.target
    X = proj_src.source
    assign = {}
    for g in X.dim_of:
        qx = proj_src(SGEN(g))
        img = proj_tgt(raw_map(SGEN(g)))
        if qx[1] == () and qx[0] not in assign:
            assign[qx[0]] = img
        elif check:
            got = word_apply(qx[1], assign[qx[0]]) if qx[0] in assign else None
            if got is not None and got != img:
                raise AssertionError("map does not descend to the quotient")
    m = PointedMap(Q1, Q2, assign)
    if check:
        for g in X.dim_of:
            if m(proj_src(SGEN(g))) != proj_tgt(raw_map(SGEN(g))):
                raise AssertionError("map does not descend to the quotient")
    return m


# -- diagonal of a simplicial object -----------------------------------------


class SimplicialObject:
    """Simplicial object in pointed simplicial sets, truncated at smax."""

    def __init__(self, levels, face_maps, degeneracy_maps):
        self.levels = levels
        self.face_maps = face_maps            # (s, i): X_s -> X_{s-1}
        self.degeneracy_maps = degeneracy_maps  # (s, i): X_s -> X_{s+1}
        self.smax = len(levels) - 1

    def validate(self):
        """All simplicial identities that stay inside the truncation."""
        F, S = self.face_maps, self.degeneracy_maps
        idm = {s: identity_map(self.levels[s]) for s in range(self.smax + 1)}
        for s in range(self.smax + 1):
            for j in range(s + 1):
                for i in range(j):
                    if s >= 2:
                        if not F[(s - 1, i)].compose(F[(s, j)]).same_assignment(
                                F[(s - 1, j - 1)].compose(F[(s, i)])):
                            raise AssertionError(
                                "d_%d d_%d fails at level %d" % (i, j, s))
        for s in range(self.smax):
            for j in range(s + 1):
                for i in range(s + 2):
                    comp = F[(s + 1, i)].compose(S[(s, j)])
                    if i < j:
                        if s >= 1:
                            other = S[(s - 1, j - 1)].compose(F[(s, i)])
                            if not comp.same_assignment(other):
                                raise AssertionError("d_%d s_%d fails" % (i, j))
                    elif i in (j, j + 1):
                        if not comp.same_assignment(idm[s]):
                            raise AssertionError("d_%d s_%d != id" % (i, j))
                    else:
                        if s >= 1:
                            other = S[(s - 1, j)].compose(F[(s, i - 1)])
                            if not comp.same_assignment(other):
                                raise AssertionError("d_%d s_%d fails" % (i, j))
        for s in range(self.smax - 1):
            for j in range(s + 1):
                for i in range(j + 1):
                    lhs = S[(s + 1, i)].compose(S[(s, j)])
                    rhs = S[(s + 1, j + 1)].compose(S[(s, i)])
                    if not lhs.same_assignment(rhs):
                        raise AssertionError("s_%d s_%d fails" % (i, j))
        return True


def diagonal(sobj, name="diagonal"):
    """Diagonal simplicial set of a simplicial object in pointed
    simplicial sets (truncated at sobj.smax in the object direction;
    exact in dimensions below smax)."""
    levels = sobj.levels
    smax = sobj.smax

    def h_face(p, i, x):
        return sobj.face_maps[(p, i)](x)

    def h_deg(p, i, x):
        return sobj.degeneracy_maps[(p, i)](x)

    ss = SimplicialSet(name)
    ss.add_generator("*", 0)
    ss.set_basepoint("*")

    def strip_horizontal(p, x):
        """Largest horizontal destrip: returns (word, p0, x0)."""
        letters = []
        while p > 0:
            found = None
            for j in range(p - 1, -1, -1):
                y = h_face(p, j, x)
                if h_deg(p - 1, j, y) == x:
                    found = (j, y)
                    break
            if found is None:
                break
            j, y = found
            letters.append(j)
            p -= 1
            x = y
        word = ()
        for j in reversed(letters):
            word = word_insert(word, j)
        return word, p, x

    def nf(p, hw, x, dim):
        """Normal form of s^h_{hw} x, x an expression of levels[p], as a
        diagonal expression of total dimension dim.  Letters common to
        the horizontal and vertical words are diagonal degeneracies and
        are recorded in the word of the result."""
        letters = []
        while True:
            if levels[p].is_base_expr(x):
                return ss.base_expr(dim)
            common = set(hw) & set(x[1])
            if common:
                j = max(common)
                letters.append(j)
                hw = word_remove(hw, j)
                x = levels[p].face(x, j)
                continue
            extra, p0, x0 = strip_horizontal(p, x)
            if p0 != p:
                comb = extra
                for a in reversed(hw):
                    comb = word_insert(comb, a)
                hw, p, x = comb, p0, x0
                continue
            break
        g, vw = x
        diag_word = ()
        for j in reversed(letters):
            diag_word = word_insert(diag_word, j)
        core_id = ("dg", p, g, tuple(hw), tuple(vw))
        return (core_id, diag_word)

    def h_expr_face(p, V, x, i):
        """d_i of the horizontal part s^h_V applied to element x of
        levels[p]; returns (p', V', x')."""
        outer = []
        idx = i
        pos = 0
        V = tuple(V)
        while pos < len(V):
            w = V[pos]
            if idx < w:
                outer.append(w - 1)
                pos += 1
            elif idx == w or idx == w + 1:
                res = V[pos + 1:]
                for a in reversed(outer):
                    res = word_insert(res, a)
                return p, res, x
            else:
                outer.append(w)
                idx -= 1
                pos += 1
        y = h_face(p, idx, x)
        res = ()
        for a in reversed(outer):
            res = word_insert(res, a)
        return p - 1, res, y

    # bi-nondegenerate cells
    bi_cells = []
    for p in range(smax + 1):
        X = levels[p]
        for q in sorted(X.gens):
            for g in X.gens[q]:
                if g == X.basepoint:
                    continue
                word, p0, _ = strip_horizontal(p, (g, ()))
                if p0 != p or word:
                    continue
                bi_cells.append((p, q, g))

    cells = []
    for (p, q, g) in bi_cells:
        for n in range(max(p, q), p + q + 1):
            for V in combinations(range(n - 1, -1, -1), n - p):
                rest = tuple(j for j in range(n - 1, -1, -1) if j not in V)
                for W in combinations(rest, n - q):
                    cells.append((n, p, q, g, V, W))
    cells.sort(key=lambda c: (c[0], repr(c)))
    for (n, p, q, g, V, W) in cells:
        gid = ("dg", p, g, V, W)
        if n == 0:
            ss.add_generator(gid, 0)
            continue
        faces = []
        for i in range(n + 1):
            xv = levels[p].face((g, W), i)
            p2, V2, xv2 = h_expr_face(p, V, xv, i)
            faces.append(nf(p2, tuple(V2), xv2, n - 1))
        ss.add_generator(gid, n, faces)
    ss.diag_nf = nf
    return ss
