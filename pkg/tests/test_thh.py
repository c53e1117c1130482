import pytest

from finspec.chains import AbelianGroup, normalized_chains
from finspec.spectra import (
    cyclic_group_table, monoid_ring, spectrum_homology, sphere_spectrum,
)
from finspec.thh import (
    balanced_bar, cyclic_bar_complex, hochschild_complex, realize,
    realization_moore_complex, tk,
)

NT = 2  # spectrum truncation for THH fixtures


@pytest.fixture(scope="module")
def C2():
    table, unit = cyclic_group_table(2)
    return monoid_ring(table, unit, NT, name="S[C2]")


@pytest.fixture(scope="module")
def trivial_ring():
    return monoid_ring({}, "e", NT, name="S[e]")


def test_cyclic_bar_trivial_group():
    C = cyclic_bar_complex({}, "e", 3)
    assert C.homology(0) == AbelianGroup(1)  # one conjugacy class
    assert C.homology(1) == AbelianGroup(0)
    assert C.homology(2) == AbelianGroup(0)


def test_cyclic_bar_c2():
    table, unit = cyclic_group_table(2)
    C = cyclic_bar_complex(table, unit, 4)
    assert C.homology(0) == AbelianGroup(2)
    assert C.homology(1) == AbelianGroup(0, (2, 2))
    # free loop space of BC2: both components contribute Z/2 in odd degrees
    assert C.homology(2) == AbelianGroup(0)


def test_tk_trivial_ring(trivial_ring):
    Q = tk(trivial_ring, trivial_ring, 2)
    t = spectrum_homology(Q, 1)
    assert t.value(0) == AbelianGroup(1)
    assert t.value(1) == AbelianGroup(0)


def test_tk_c2(C2):
    Q = tk(C2, C2, 2)
    t = spectrum_homology(Q, 0)
    # pi_0-level conjugacy count of C2
    assert t.value(0) == AbelianGroup(2)


def test_hochschild_trivial_ring(trivial_ring):
    hh = hochschild_complex(trivial_ring, trivial_ring, 2, 2)
    hh.validate()
    X = realize(hh)
    t = spectrum_homology(X, 1)
    assert t.value(0) == AbelianGroup(1)
    assert t.value(1) == AbelianGroup(0)


def test_hochschild_c2_matches_cyclic_bar(C2):
    hh = hochschild_complex(C2, C2, 3, NT)
    hh.validate()
    X = realize(hh)
    t = spectrum_homology(X, 1)
    assert t.value(0) == AbelianGroup(2)
    assert t.value(1) == AbelianGroup(0, (2, 2))


def test_moore_total_cross_check(C2):
    # Eilenberg-Zilber: diagonal chains and the normalized Moore total
    # complex agree in homology
    hh = hochschild_complex(C2, C2, 3, NT)
    X = realize(hh)
    l = 2
    Cd = normalized_chains(X.level(l))
    Tm = realization_moore_complex(hh, l)
    for d in range(l + 2):
        assert Cd.homology(d) == Tm.homology(d), d


def test_balanced_bar_c2(C2):
    bb = balanced_bar(C2, 3, NT)
    bb.validate()
    X = realize(bb)
    t = spectrum_homology(X, 1)
    assert t.value(0) == AbelianGroup(2)
    assert t.value(1) == AbelianGroup(0, (2, 2))
