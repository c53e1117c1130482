"""Sparse exact integer elimination.

Columns are dicts row -> nonzero int.  Elimination picks, among the rows
of minimal remaining support, a pivot entry of minimal magnitude, and
gcd-reduces the row; this keeps fill-in and coefficient growth low on
the boundary matrices produced by chain complexes (a handful of +-1
entries per column).  All operations are exact; kernels are saturated
lattices.
"""

from __future__ import annotations


def cols_from_dense(M):
    cols = []
    rows = len(M)
    ncols = len(M[0]) if rows else 0
    for j in range(ncols):
        col = {}
        for i in range(rows):
            if M[i][j]:
                col[i] = M[i][j]
        cols.append(col)
    return cols


def dense_from_cols(cols, nrows):
    M = [[0] * len(cols) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            M[i][j] = v
    return M


class Eliminator:
    """Incremental sparse column echelonization with optional tracking."""

    def __init__(self, cols, track=False):
        self.cols = [dict(c) for c in cols]
        self.n = len(self.cols)
        self.track = track
        self.V = [{j: 1} for j in range(self.n)] if track else None
        self.row_support = {}
        for j, col in enumerate(self.cols):
            for r in col:
                self.row_support.setdefault(r, set()).add(j)
        self.active = set(range(self.n))
        self.pivots = []  # (row, col) in creation order
        self.pivot_of_row = {}

    def _axpy(self, j, j0, q):
        """col_j -= q * col_j0 (and tracking)."""
        col0 = self.cols[j0]
        col = self.cols[j]
        for r, v in col0.items():
            nv = col.get(r, 0) - q * v
            if nv:
                if r not in col:
                    self.row_support.setdefault(r, set()).add(j)
                col[r] = nv
            elif r in col:
                del col[r]
                s = self.row_support.get(r)
                if s is not None:
                    s.discard(j)
        if self.track:
            V0, Vj = self.V[j0], self.V[j]
            for r, v in V0.items():
                nv = Vj.get(r, 0) - q * v
                if nv:
                    Vj[r] = nv
                elif r in Vj:
                    del Vj[r]

    def run(self):
        while True:
            best_row = None
            best_size = None
            for r, s in self.row_support.items():
                live = s & self.active
                if not live:
                    continue
                if best_size is None or len(live) < best_size or \
                        (len(live) == best_size and r < best_row):
                    best_row, best_size = r, len(live)
                    if best_size == 1:
                        break
            if best_row is None:
                break
            r = best_row
            while True:
                live = sorted(self.row_support.get(r, set()) & self.active)
                if not live:
                    break
                if len(live) == 1:
                    j0 = live[0]
                    self._finish_pivot(r, j0)
                    break
                j0 = min(live, key=lambda j: (abs(self.cols[j][r]),
                                              len(self.cols[j]), j))
                a = self.cols[j0][r]
                done = True
                for j in live:
                    if j == j0:
                        continue
                    q = self.cols[j][r] // a
                    if q:
                        self._axpy(j, j0, q)
                    if r in self.cols[j]:
                        done = False
                if done:
                    self._finish_pivot(r, j0)
                    break
        return self

    def _finish_pivot(self, r, j0):
        if self.cols[j0][r] < 0:
            self.cols[j0] = {k: -v for k, v in self.cols[j0].items()}
            if self.track:
                self.V[j0] = {k: -v for k, v in self.V[j0].items()}
        self.active.discard(j0)
        self.pivots.append((r, j0))
        self.pivot_of_row[r] = j0

    def kernel_columns(self):
        """Indices (into V) of columns reduced to zero."""
        return [j for j in sorted(self.active) if not self.cols[j]]

    def reduce_vector(self, b):
        """Reduce a column dict against the pivots in creation order;
        returns (coefficients dict col->q, residue)."""
        b = dict(b)
        coeff = {}
        for (r, j0) in self.pivots:
            if r not in b:
                continue
            a = self.cols[j0][r]
            if b[r] % a != 0:
                return None, b
            q = b[r] // a
            coeff[j0] = q
            for rr, v in self.cols[j0].items():
                nv = b.get(rr, 0) - q * v
                if nv:
                    b[rr] = nv
                elif rr in b:
                    del b[rr]
        return coeff, b


def kernel_basis_sparse(cols, ncols=None):
    """Saturated kernel lattice of the matrix with the given columns.
    Returns a list of dict-columns in the source coordinates."""
    if ncols is None:
        ncols = len(cols)
    elim = Eliminator(cols, track=True).run()
    return [elim.V[j] for j in elim.kernel_columns()]


def rank_sparse(cols):
    elim = Eliminator(cols, track=False).run()
    return len(elim.pivots)


def solve_sparse(cols, rhs_list):
    """Solve A x = b for each b in rhs_list (dict columns).  Returns a
    list of dict solutions or None if any has no integral solution."""
    elim = Eliminator(cols, track=True).run()
    out = []
    for b in rhs_list:
        coeff, residue = elim.reduce_vector(b)
        if coeff is None or residue:
            return None
        x = {}
        for j0, q in coeff.items():
            for r, v in elim.V[j0].items():
                nv = x.get(r, 0) + q * v
                if nv:
                    x[r] = nv
                elif r in x:
                    del x[r]
        out.append(x)
    return out


class IncrementalSpan:
    """Incrementally maintained sparse echelon span with exact integer
    membership tests."""

    def __init__(self):
        self.elim = Eliminator([], track=False)

    def add(self, col):
        j = self.elim.n
        self.elim.cols.append(dict(col))
        self.elim.n += 1
        for r in col:
            self.elim.row_support.setdefault(r, set()).add(j)
        self.elim.active.add(j)

    def close(self):
        self.elim.run()

    def contains(self, col):
        coeff, residue = self.elim.reduce_vector(col)
        return coeff is not None and not residue
