"""Exact integer linear algebra: Smith normal form, kernels, solving.

All matrices are dense lists of lists of Python ints (arbitrary precision).
Rows index the target, columns the source, so a matrix M sends the j-th
basis vector of the source to sum_i M[i][j] e_i.

Pivoting always picks a smallest-magnitude nonzero entry, which keeps
coefficient growth tame on the sparse, mostly-unimodular matrices produced
by chain complexes.  Everything is deterministic for a fixed input.
"""

from __future__ import annotations


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def identity(n):
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = 1
    return M


def mat_mul(A, B):
    m = len(A)
    k = len(B)
    n = len(B[0]) if k else 0
    C = zeros(m, n)
    for i in range(m):
        Ai = A[i]
        Ci = C[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(n):
                    b = Bt[j]
                    if b:
                        Ci[j] += a * b
    return C


def mat_vec(A, v):
    return [sum(A[i][j] * v[j] for j in range(len(v)) if v[j]) for i in range(len(A))]


def transpose(A):
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def is_zero_matrix(A):
    return all(all(x == 0 for x in row) for row in A)


def _pivot(A, r, rows, cols):
    best = None
    for i in range(r, rows):
        Ai = A[i]
        for j in range(r, cols):
            x = Ai[j]
            if x:
                if best is None or abs(x) < best[0]:
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        return best
    return best


def smith_normal_form(M):
    """Return (D, U, V) with U*M*V = D, U, V unimodular and D diagonal
    with d_i | d_{i+1} and d_i >= 0."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    D = [list(row) for row in M]
    U = identity(rows)
    V = identity(cols)
    r = 0
    while True:
        piv = _pivot(D, r, rows, cols)
        if piv is None:
            break
        _, pi, pj = piv
        if pi != r:
            D[r], D[pi] = D[pi], D[r]
            U[r], U[pi] = U[pi], U[r]
        if pj != r:
            for row in D:
                row[r], row[pj] = row[pj], row[r]
            for row in V:
                row[r], row[pj] = row[pj], row[r]
        # clear row and column r
        clean = True
        for i in range(r + 1, rows):
            a = D[i][r]
            if a:
                q = a // D[r][r]
                if q:
                    Dr, Di, Ur, Ui = D[r], D[i], U[r], U[i]
                    for j in range(cols):
                        if Dr[j]:
                            Di[j] -= q * Dr[j]
                    for j in range(rows):
                        if Ur[j]:
                            Ui[j] -= q * Ur[j]
                if D[i][r]:
                    clean = False
        for j in range(r + 1, cols):
            a = D[r][j]
            if a:
                q = a // D[r][r]
                if q:
                    for row in D:
                        if row[r]:
                            row[j] -= q * row[r]
                    for row in V:
                        if row[r]:
                            row[j] -= q * row[r]
                if D[r][j]:
                    clean = False
        if not clean:
            continue
        r += 1
    # enforce divisibility chain
    n = r
    i = 0
    while i < n - 1:
        a, b = D[i][i], D[i + 1][i + 1]
        if b % a != 0:
            # column add then restart the 2x2 block
            for row in D:
                row[i] += row[i + 1]
            for row in V:
                row[i] += row[i + 1]
            # re-clear block
            r2 = i
            while True:
                piv = _pivot(D, r2, rows, cols)
                if piv is None or r2 >= n:
                    break
                _, pi, pj = piv
                if pi != r2:
                    D[r2], D[pi] = D[pi], D[r2]
                    U[r2], U[pi] = U[pi], U[r2]
                if pj != r2:
                    for row in D:
                        row[r2], row[pj] = row[pj], row[r2]
                    for row in V:
                        row[r2], row[pj] = row[pj], row[r2]
                clean = True
                for ii in range(r2 + 1, rows):
                    a2 = D[ii][r2]
                    if a2:
                        q = a2 // D[r2][r2]
                        if q:
                            for j in range(cols):
                                if D[r2][j]:
                                    D[ii][j] -= q * D[r2][j]
                            for j in range(rows):
                                if U[r2][j]:
                                    U[ii][j] -= q * U[r2][j]
                        if D[ii][r2]:
                            clean = False
                for jj in range(r2 + 1, cols):
                    a2 = D[r2][jj]
                    if a2:
                        q = a2 // D[r2][r2]
                        if q:
                            for row in D:
                                if row[r2]:
                                    row[jj] -= q * row[r2]
                            for row in V:
                                if row[r2]:
                                    row[jj] -= q * row[r2]
                        if D[r2][jj]:
                            clean = False
                if clean:
                    r2 += 1
            i = max(i - 1, 0)
        else:
            i += 1
    for i in range(n):
        if D[i][i] < 0:
            for j in range(rows):
                U[i][j] = -U[i][j]
            D[i][i] = -D[i][i]
    return D, U, V


def column_echelon(M, track=False):
    """Bring M to column echelon form by unimodular column operations.

    Returns (E, V, pivots) with M*V = E (V unimodular when track=True,
    else V is None).  pivots maps pivot row -> column index in E.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    E = [list(row) for row in M]
    V = identity(cols) if track else None
    pc = 0
    pivots = {}
    for i in range(rows):
        if pc >= cols:
            break
        # gcd-reduce row i among columns >= pc
        while True:
            best = None
            for j in range(pc, cols):
                x = E[i][j]
                if x:
                    if best is None or abs(x) < abs(E[i][best]):
                        best = j
            if best is None:
                break
            done = True
            for j in range(pc, cols):
                if j != best and E[i][j]:
                    q = E[i][j] // E[i][best]
                    if q:
                        for t in range(rows):
                            if E[t][best]:
                                E[t][j] -= q * E[t][best]
                        if track:
                            for t in range(cols):
                                if V[t][best]:
                                    V[t][j] -= q * V[t][best]
                    if E[i][j]:
                        done = False
            if done:
                if best != pc:
                    for t in range(rows):
                        E[t][pc], E[t][best] = E[t][best], E[t][pc]
                    if track:
                        for t in range(cols):
                            V[t][pc], V[t][best] = V[t][best], V[t][pc]
                if E[i][pc] < 0:
                    for t in range(rows):
                        E[t][pc] = -E[t][pc]
                    if track:
                        for t in range(cols):
                            V[t][pc] = -V[t][pc]
                pivots[i] = pc
                pc += 1
                break
    return E, V, pivots


def kernel_basis(M, cols=None):
    """Basis of the integer kernel lattice {x : Mx = 0} as a list of columns.
    The lattice is saturated, so any rational kernel vector is a rational
    combination of the basis."""
    from . import sparse
    rows = len(M)
    if cols is None:
        cols = len(M[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    ker = sparse.kernel_basis_sparse(sparse.cols_from_dense(M), cols)
    return [[col.get(i, 0) for i in range(cols)] for col in ker]


def matrix_rank(M):
    from . import sparse
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if rows == 0 or cols == 0:
        return 0
    return sparse.rank_sparse(sparse.cols_from_dense(M))


def solve_columns(A, B):
    """Solve A*X = B over the integers.  B is given as a list of column
    vectors; returns X as a list of column vectors or None if some column
    has no integral solution."""
    from . import sparse
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if not B:
        return []
    if cols == 0:
        if any(any(x for x in b) for b in B):
            return None
        return [[] for _ in B]
    rhs = [{i: v for i, v in enumerate(b) if v} for b in B]
    sols = sparse.solve_sparse(sparse.cols_from_dense(A), rhs)
    if sols is None:
        return None
    return [[x.get(i, 0) for i in range(cols)] for x in sols]


def in_lattice(basis_cols, v):
    """Is v in the integer span of the given column vectors?"""
    if not basis_cols:
        return all(x == 0 for x in v)
    A = [[col[i] for col in basis_cols] for i in range(len(v))]
    return solve_columns(A, [list(v)]) is not None


class Lattice:
    """A sublattice of Z^n maintained in column echelon (HNF-like) form,
    supporting incremental vector insertion and membership tests."""

    def __init__(self, n):
        self.n = n
        self.cols = []  # echelon columns, each a list of ints
        self.pivots = {}  # pivot row -> column index

    def rank(self):
        return len(self.cols)

    def contains(self, v):
        r = list(v)
        for i in range(self.n):
            if r[i] == 0:
                continue
            j = self.pivots.get(i)
            if j is None:
                return False
            c = self.cols[j]
            if r[i] % c[i] != 0:
                return False
            q = r[i] // c[i]
            for t in range(i, self.n):
                if c[t]:
                    r[t] -= q * c[t]
        return not any(r)

    def add(self, v):
        """Insert v; returns True if the lattice grew."""
        r = list(v)
        grew = False
        i = 0
        while i < self.n:
            if r[i] == 0:
                i += 1
                continue
            j = self.pivots.get(i)
            if j is None:
                if r[i] < 0:
                    r = [-x for x in r]
                self.pivots[i] = len(self.cols)
                self.cols.append(r)
                return True
            c = self.cols[j]
            if r[i] % c[i] == 0:
                q = r[i] // c[i]
                for t in range(i, self.n):
                    if c[t]:
                        r[t] -= q * c[t]
                i += 1
            else:
                # gcd step: replace column by gcd combination, re-add remainder
                import math
                g = math.gcd(c[i], r[i])
                # extended gcd
                a, b = c[i], r[i]
                x0, x1, y0, y1 = 1, 0, 0, 1
                aa, bb = a, b
                while bb:
                    q2 = aa // bb
                    aa, bb = bb, aa - q2 * bb
                    x0, x1 = x1, x0 - q2 * x1
                    y0, y1 = y1, y0 - q2 * y1
                new_c = [x0 * c[t] + y0 * r[t] for t in range(self.n)]
                assert new_c[i] == g or new_c[i] == -g
                old_c = c
                self.cols[j] = new_c if new_c[i] > 0 else [-x for x in new_c]
                # reduce the two residues against the new column
                for w in (old_c, r):
                    pass
                c = self.cols[j]
                q_old = old_c[i] // c[i]
                rem_old = [old_c[t] - q_old * c[t] for t in range(self.n)]
                q_new = r[i] // c[i]
                r = [r[t] - q_new * c[t] for t in range(self.n)]
                grew = True
                if any(rem_old):
                    self.add(rem_old)
        return grew

    def basis(self):
        return [list(c) for c in self.cols]
