import pytest

from finspec import intlinalg as la
from finspec.chains import chain_map_of, normalized_chains
from finspec.simplicial import SGEN, circle, sphere, sphere0
from finspec.symseq import (
    Permutation, g_sequence, sphere_sequence, tensor, tensor_associator,
    tensor_twist, tensor_unit_iso, unit_sequence,
)


def test_permutation_basics():
    p = Permutation((2, 3, 1))
    assert p.sign() == 1
    assert Permutation((2, 1, 3)).sign() == -1
    assert p.compose(p.inverse()) == Permutation.identity(3)
    # reduced word reconstructs the permutation
    q = Permutation.identity(3)
    for i in p.reduced_word():
        q = Permutation.transposition(3, i).compose(q)
    assert q == p


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_sphere_sequence_action(n):
    S = sphere_sequence(3)
    assert S.check_action() is None
    # action extension is a homomorphism on level 3
    import random
    rng = random.Random(0)
    perms = Permutation.all_permutations(3)
    for _ in range(4):
        a, b = rng.choice(perms), rng.choice(perms)
        lhs = S.action(3, a).compose(S.action(3, b))
        rhs = S.action(3, a.compose(b))
        assert lhs.same_assignment(rhs)


def test_transposition_acts_by_sign_on_top_homology():
    S = sphere_sequence(2)
    tau = S.action(2, Permutation.transposition(2, 1))
    C = normalized_chains(S.level(2))
    f = chain_map_of(tau, C, C)
    # H_2 generated by (1, -1); the action negates it
    assert la.mat_vec(f.mat(2), [1, -1]) == [-1, 1]


def test_g_sequence_levels():
    g0 = g_sequence(0, sphere0(), 2)
    assert g0.level(0).cell_counts() == [2]
    assert g0.level(1).cell_counts() == [1]
    g1 = g_sequence(1, sphere0(), 2)
    assert g1.level(1).cell_counts() == [2]
    g2 = g_sequence(2, sphere0(), 3)
    # hom_I(2,2) = Sigma_2: two non-base points, free action
    assert g2.level(2).cell_counts() == [3]
    assert g2.check_action() is None
    tau = g2.action(2, Permutation.transposition(2, 1))
    pts = [g for g in g2.level(2).dim_of if g != "*"]
    imgs = {g: tau(SGEN(g))[0] for g in pts}
    assert all(imgs[g] != g for g in pts)  # free action


def test_tensor_level_counts():
    # (G_1 S^0 tensor G_1 S^0)_2 = Sigma_2+ ^ S^0: two non-base points
    g1 = g_sequence(1, sphere0(), 2)
    T = tensor(g1, g1)
    assert T.level(2).cell_counts() == [3]
    assert T.level(0).cell_counts() == [1]
    assert T.level(1).cell_counts() == [1]
    assert T.check_action() is None


def test_tensor_cell_count_formula():
    # rank of nondegenerate cells of (X@Y)_n equals
    # sum_{p+q=n} C(n,p) * cells(X_p ^ Y_q)
    from math import comb
    from finspec.simplicial import smash
    S2 = sphere_sequence(2)
    g1 = g_sequence(1, circle(), 2)
    T = tensor(S2, g1)
    for n in range(3):
        total = 0
        for p in range(n + 1):
            sm = smash([S2.level(p), g1.level(n - p)])
            cells = len(sm.dim_of) - 1
            total += comb(n, p) * cells
        assert len(T.level(n).dim_of) - 1 == total
        assert T.check_action() is None


def test_tensor_unit_law():
    S = sphere_sequence(2)
    U = unit_sequence(2)
    T = tensor(U, S)
    for n in range(3):
        iso = tensor_unit_iso(T, n, unit_first=True)
        iso.validate()
        assert iso.is_isomorphism()


def test_tensor_twist_iso_and_equivariance():
    g1 = g_sequence(1, sphere0(), 3)
    g2 = g_sequence(2, circle(), 3)
    T12 = tensor(g1, g2)
    T21 = tensor(g2, g1)
    for n in range(4):
        tw = tensor_twist(T12, T21, n)
        tw.validate()
        assert tw.is_isomorphism()
        # equivariance: conjugating by each adjacent transposition
        for i in range(1, n):
            rho = Permutation.transposition(n, i)
            lhs = T21.action(n, rho).compose(tw)
            rhs = tw.compose(T12.action(n, rho))
            assert lhs.same_assignment(rhs)


def test_tensor_associator_iso():
    g1 = g_sequence(1, sphere0(), 3)
    S = sphere_sequence(3)
    A = tensor(tensor(g1, S), g1)
    B = tensor(g1, tensor(S, g1))
    for n in range(4):
        assoc = tensor_associator(A, B, n)
        assoc.validate()
        assert assoc.is_isomorphism()
