import itertools

import pytest
from hypothesis import given, settings

from latrepr.core import (
    FinitePoset,
    boolean_lattice,
    chain,
    direct_product,
    is_distributive,
    is_isomorphic,
    m3,
    n5,
    poset_from_hasse,
)
from latrepr.errors import NotDistributive
from latrepr.generate import all_lattices
from latrepr.irreducibles import (
    birkhoff_roundtrip,
    canonical_extension,
    canonical_extension_with_embedding,
    downset_lattice,
    downsets,
    induced_poset,
    irreducibles,
    is_doubly_algebraic,
    is_join_dense,
    is_meet_dense,
    join_irreducibles,
    meet_irreducibles,
    upset_lattice,
)
from latrepr.representation import represent, verify_join_complete, verify_meet_complete

from conftest import lattices

SMALL = all_lattices(8)
SMALL_DISTRIBUTIVE = [L for L in SMALL if is_distributive(L)]


def test_two_chain():
    r = irreducibles(chain(2))
    assert r.join_irr == r.completely_join_irr == {1}
    assert r.meet_irr == {0}


def test_ba4(ba4):
    assert irreducibles(ba4).join_irr == {1, 2}


def test_four_chain():
    assert set(join_irreducibles(chain(4))) == {1, 2, 3}
    assert set(meet_irreducibles(chain(4))) == {0, 1, 2}


def test_m3_irreducibles():
    r = irreducibles(m3())
    assert r.join_irr == r.meet_irr == {1, 2, 3}


def test_shortcut_above_cap():
    r = irreducibles(chain(6), cap=4)
    assert r.shortcut and r.completely_join_irr == r.join_irr


def test_definitional_path_matches_binary_on_all_small_lattices():
    for L in SMALL:
        r = irreducibles(L)
        assert not r.shortcut
        assert r.join_irr == r.completely_join_irr and r.meet_irr == r.completely_meet_irr


def test_join_density(ba4):
    assert is_join_dense(ba4, range(4))
    assert is_join_dense(ba4, [1, 2])
    assert not is_join_dense(ba4, [1])


def test_irreducibles_are_dense_everywhere():
    for L in SMALL:
        assert is_join_dense(L, join_irreducibles(L)) and is_meet_dense(L, meet_irreducibles(L))


# -- downsets -----------------------------------------------------------------

def test_downset_lattice_examples():
    assert is_isomorphic(downset_lattice(poset_from_hasse(1, [])), chain(2))
    assert is_isomorphic(downset_lattice(FinitePoset((0b01, 0b10))), boolean_lattice(2))
    assert is_isomorphic(downset_lattice(chain(2).poset), chain(3))


def test_downsets_sorted_and_closed():
    p = n5().poset
    ds = downsets(p)
    assert ds == sorted(ds)
    assert all(p.is_downset(d) for d in ds)
    # brute force
    assert ds == [m for m in range(1 << p.n) if p.is_downset(m)]


def test_upset_lattice_is_dual_of_downsets():
    p = chain(2).poset
    assert is_isomorphic(upset_lattice(p), downset_lattice(p))


# -- Birkhoff -----------------------------------------------------------------

def test_birkhoff_examples(ba4):
    assert len(birkhoff_roundtrip(chain(2))) == 2
    phi = birkhoff_roundtrip(ba4)
    assert sorted(phi) == [0, 1, 2, 3]
    with pytest.raises(NotDistributive):
        birkhoff_roundtrip(m3())


def test_m3_downsets_of_irreducibles_has_eight_elements():
    J = sorted(join_irreducibles(m3()))
    assert downset_lattice(induced_poset(m3(), J)).n == 8


def test_birkhoff_all_distributive_up_to_eight():
    for L in SMALL_DISTRIBUTIVE:
        phi = birkhoff_roundtrip(L)
        J = sorted(join_irreducibles(L))
        D = downset_lattice(induced_poset(L, J))
        for a, b in itertools.product(range(L.n), repeat=2):
            assert phi[L.meet(a, b)] == D.meet(phi[a], phi[b])
            assert phi[L.join(a, b)] == D.join(phi[a], phi[b])
        assert phi[L.bottom] == D.bottom and phi[L.top] == D.top


# -- canonical extension --------------------------------------------------------

@pytest.mark.parametrize("L", [chain(2), chain(3), boolean_lattice(2)])
def test_canonical_extension_examples(L):
    assert is_isomorphic(canonical_extension(L), L)


def test_canonical_extension_needs_distributivity():
    with pytest.raises(NotDistributive):
        canonical_extension(n5())


def test_canonical_extension_all_distributive_up_to_eight():
    for L in SMALL_DISTRIBUTIVE:
        C = canonical_extension(L)
        assert is_isomorphic(C, L)
        h = represent(C)
        assert h.is_valid() and verify_meet_complete(h).ok and verify_join_complete(h).ok


def test_canonical_extension_embedding_is_homomorphic():
    for L in SMALL_DISTRIBUTIVE:
        ce = canonical_extension_with_embedding(L)
        e, C = ce.embedding, ce.lattice
        assert len(set(e)) == L.n
        for a, b in itertools.product(range(L.n), repeat=2):
            assert e[L.meet(a, b)] == C.meet(e[a], e[b])
            assert e[L.join(a, b)] == C.join(e[a], e[b])


# -- doubly algebraic -----------------------------------------------------------

def test_doubly_algebraic_examples():
    assert is_doubly_algebraic(chain(2))
    assert not is_doubly_algebraic(m3())
    assert is_doubly_algebraic(direct_product([chain(2), chain(3)]))


def test_doubly_algebraic_iff_distributive_on_small():
    for L in SMALL:
        assert is_doubly_algebraic(L) == is_distributive(L)


@settings(max_examples=40, deadline=None)
@given(lattices())
def test_irreducible_report_invariants(L):
    r = irreducibles(L)
    assert r.completely_join_irr <= r.join_irr and r.completely_meet_irr <= r.meet_irr
    assert L.bottom not in r.join_irr and L.top not in r.meet_irr
