import json

import pytest
from hypothesis import given, settings

from latrepr.core import bits, boolean_lattice, chain, is_distributive, m3, n5
from latrepr.errors import CarrierTooLarge, ParseError
from latrepr.filters import classify_filter, enumerate_prime_filters, is_distinguishing
from latrepr.generate import all_lattices, distributive_lattices
from latrepr.modelcheck import (
    TwoSortedStructure,
    canonical_model,
    check_theory,
    eval_C,
    eval_I,
    eval_P,
    generated_model,
    intersection_closure,
    reduct,
    separating_members,
    strict_upset,
    structure_from_dict,
    structure_to_dict,
)

from conftest import lattices


def _index(M, members):
    return M.ssort.index(sum(1 << x for x in members))


# -- predicates -------------------------------------------------------------------

def test_eval_P(ba4):
    C = canonical_model(chain(3))
    assert eval_P(C, _index(C, [2]))
    M = canonical_model(ba4)
    assert not eval_P(M, _index(M, [3]))  # a v b = 1 with neither a nor b inside
    assert eval_P(M, _index(M, []))
    assert eval_P(M, _index(M, [1, 3]))
    assert not eval_P(M, _index(M, [1, 2, 3]))


def test_eval_I_on_empty_set_needs_top(ba4):
    M = canonical_model(ba4)
    empty = _index(M, [])
    assert not eval_I(M, ba4.bottom, empty)
    assert eval_I(M, ba4.top, empty)


def test_eval_I_examples(ba4):
    M = canonical_model(ba4)
    assert eval_I(M, 1, _index(M, [1]))
    assert eval_I(M, 0, _index(M, [1, 2]))
    assert not eval_I(M, 1, _index(M, [1, 2]))


def test_eval_C_small_sort(ba4):
    M = TwoSortedStructure(ba4, (0, 0b1010))
    assert eval_C(M, 1)  # the only inf of a member inside {a,1} is top for the empty member


def test_eval_C_whole_carrier(ba4):
    M = canonical_model(ba4)
    assert eval_C(M, _index(M, range(4)))


def test_eval_C_prime_filters_in_canonical_model():
    for L in (chain(3), boolean_lattice(2)):
        M = canonical_model(L)
        for f in enumerate_prime_filters(L):
            assert eval_C(M, M.ssort.index(f.carrier))


def test_eval_C_agrees_with_completeness_on_filters():
    for L in all_lattices(5):
        M = canonical_model(L)
        for s, S in enumerate(M.ssort):
            rec = classify_filter(L, S)
            if rec.is_filter:
                assert eval_C(M, s) == rec.is_complete
            # in the powerset model C means closed under all meets
            closed = all(S >> L.meet_mask(T) & 1 for T in range(1 << L.n) if T & ~S == 0)
            assert eval_C(M, s) == closed


def test_membership_relation_agrees_with_family(ba4):
    M = TwoSortedStructure.from_membership(ba4, 2, [(1, 0), (3, 0), (2, 1)])
    assert M.ssort == (0b1010, 0b0100)
    assert M.membership() == {(1, 0), (3, 0), (2, 1)}
    assert M.member(3, 0) and not M.member(3, 1)


# -- theory -------------------------------------------------------------------------

def test_canonical_three_chain_passes():
    r = check_theory(canonical_model(chain(3)))
    assert r.ok and r.failed == []


def test_canonical_two_chain():
    M = canonical_model(chain(2))
    assert len(M.ssort) == 4 and check_theory(M).ok


@pytest.mark.parametrize("L", [m3(), n5()])
def test_non_distributive_canonical_models(L):
    r = check_theory(canonical_model(L))
    # distributivity fails, and the prime filters cannot separate every pair
    assert r.failed == ["T", "I"]
    assert r["T"].detail == "distributivity"
    x, y = r["I"].witness
    assert x != y
    assert all(bool(S >> x & 1) == bool(S >> y & 1) for S in separating_members(canonical_model(L)))


def test_removing_a_filter_breaks_axiom_I(ba4):
    # keep axioms II and III by closing the remaining members under intersection
    up_b = [f.carrier for f in enumerate_prime_filters(ba4) if f.generator == 2]
    M = generated_model(ba4, up_b)
    r = check_theory(M)
    assert r["II"].ok and r["III"].ok
    assert not r["I"].ok and set(r["I"].witness) == {0, 1}


def test_generated_model_with_all_primes_passes():
    for L in distributive_lattices(8):
        M = generated_model(L, [f.carrier for f in enumerate_prime_filters(L)])
        assert check_theory(M).ok


def test_axiom_II_failure():
    L = chain(3)
    M = TwoSortedStructure(L, (0b111, 0b110))
    r = check_theory(M)
    assert not r["II"].ok


def test_axiom_III_failure(ba4):
    M = TwoSortedStructure(ba4, (0b1111, 0b1110, 0b1000, 0b0000, 0b1011, 0b1101))
    r = check_theory(M)
    assert not r["III"].ok


def test_extensional_duplicates_allowed(ba4):
    base = canonical_model(ba4).ssort
    assert check_theory(TwoSortedStructure(ba4, base + base[:3])).ok


def test_separating_members_distinguish():
    for L in distributive_lattices(8):
        M = canonical_model(L)
        assert is_distinguishing(L, separating_members(M))


def test_canonical_model_cap():
    with pytest.raises(CarrierTooLarge):
        canonical_model(chain(17))


def test_intersection_closure():
    assert intersection_closure([0b110, 0b011]) == [0b010, 0b011, 0b110]


def test_strict_upset():
    assert strict_upset(chain(3), 0) == 0b110


# -- reduct and JSON ----------------------------------------------------------------

def test_reduct(ba4):
    M = canonical_model(ba4)
    assert reduct(M) == ba4
    assert reduct(TwoSortedStructure(m3(), ())) == m3()


def test_structure_json_roundtrip(ba4):
    M = generated_model(ba4, [0b1010])
    d = json.loads(json.dumps(structure_to_dict(M)))
    M2 = structure_from_dict(d)
    assert M2.ssort == M.ssort and M2.lsort == M.lsort


@pytest.mark.parametrize("bad", [[], {"lattice": {"n": 1, "covers": []}},
                                 {"lattice": {"n": 1, "covers": []}, "ssort": [[3]]}])
def test_bad_structure_json(bad):
    with pytest.raises(ParseError):
        structure_from_dict(bad)


@settings(max_examples=25, deadline=None)
@given(lattices(max_n=7))
def test_canonical_model_passes_iff_distributive(L):
    assert check_theory(canonical_model(L)).ok == is_distributive(L)
