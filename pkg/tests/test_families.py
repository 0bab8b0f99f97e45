import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latrepr.core import boolean_lattice, chain, is_isomorphic
from latrepr.errors import BudgetExhausted, LatticeError, MalformedInterval, UnknownFamily
from latrepr.families import (
    REGISTRY,
    Candidate,
    FilterDescriptor,
    check_descriptor,
    confirm_bound,
    finite_cofinite_ba,
    get_family,
    nbar_squared_over_nats,
    nbar_squared_with_bottom,
    probe_complete,
    rational_interval_ba,
    truncate,
    unit_interval_rationals,
    verdict_to_dict,
)
from latrepr.families.boolean import FC, cof, fin, normalize
from latrepr.families.grids import Nat
from latrepr.families.qunit import SURDS, QuadraticSurd


# -- individual families ------------------------------------------------------------

def test_qunit_basics():
    Q = unit_interval_rationals()
    assert Q.leq(Fraction(1, 3), Fraction(1, 2))
    assert Q.join(Fraction(1, 3), Fraction(1, 2)) == Fraction(1, 2)


def test_irrational_cut_membership():
    d = unit_interval_rationals().descriptor("cut>sqrt2/2")
    assert d.membership(Fraction(3, 4)) and not d.membership(Fraction(2, 3))


def test_surd_comparison_is_exact():
    r = SURDS["sqrt2/2"]
    assert r.below(Fraction(7072, 10000)) and not r.below(Fraction(7071, 10000))
    for lo, hi in r.brackets()[:40]:
        assert not r.below(lo) and r.below(hi)
    with pytest.raises(LatticeError):
        QuadraticSurd(Fraction(0), Fraction(1), 4)


def test_nbar2bot_operations():
    G = nbar_squared_with_bottom()
    assert G.meet((-1, -2), (-2, -1)) == (-2, -2)
    assert G.join((-1, -2), (-2, -1)) == (-1, -1)
    assert G.meet(None, (0, 0)) is None


def test_nbar2bot_descending_chain_has_only_bottom_below():
    G = nbar_squared_with_bottom()
    d = G.descriptor("x>=-1")
    v = probe_complete(G, d)
    assert v.refuted and v.witness.kind == "descending"
    assert v.witness.bound is None
    lower = [z for z in G.window() if all(G.leq(z, p) for p in v.witness.elements)]
    assert lower == [None]


def test_nbar2nat_operations():
    N = nbar_squared_over_nats()
    assert N.leq(Nat(5), (-3, -7))
    assert not N.leq((-3, -7), Nat(5))
    assert N.descriptor("x>=-2").membership((-2, -9))
    assert not N.descriptor("x>=-2").membership(Nat(3))


def test_nbar2nat_density_refuter():
    N = nbar_squared_over_nats()
    for target in [(-1, -1), (0, 0), (-3, 0)]:
        v = N.density_refuter(target)
        assert v.refuted
        assert N.lt(v.witness.bound, target)
        assert all(N.leq(m, v.witness.bound) for m in v.witness.elements)


def test_nbar2nat_grid_points_are_not_join_irreducible():
    N = nbar_squared_over_nats()
    for e in [(0, 0), (-2, -1)]:
        a, b = N.join_decomposition(e)
        assert N.join(a, b) == e and N.lt(a, e) and N.lt(b, e)
    assert N.join_decomposition(Nat(4)) is None


def test_fincofin_complement():
    B = finite_cofinite_ba()
    assert B.complement(fin(0, 1)) == cof(0, 1)
    assert 5 in cof(0, 1) and 0 not in cof(0, 1)
    assert B.join(fin(0), cof(0, 1)) == cof(1)
    assert B.meet(cof(0), cof(1)) == cof(0, 1)


def test_frechet_witness_is_descending_cofinite():
    B = finite_cofinite_ba()
    out = check_descriptor(B, B.descriptor("cofinite"))
    w = out["complete"].witness
    assert out["complete"].refuted and w.kind == "descending" and w.bound == fin()
    assert all(e.cofinite for e in w.elements)


def test_ratint_normalization():
    R = rational_interval_ba()
    half = Fraction(1, 2)
    assert R.join(normalize([(0, half)]), normalize([(half, 1)])) == R.top
    assert normalize([(0, Fraction(1, 3)), (Fraction(1, 4), half)]) == ((0, half),)
    assert R.complement(normalize([(Fraction(1, 3), half)])) == ((0, Fraction(1, 3)), (half, 1))
    with pytest.raises(MalformedInterval):
        normalize([(half, Fraction(1, 3))])
    with pytest.raises(MalformedInterval):
        normalize([(0, 2)])


def test_ratint_codec():
    R = rational_interval_ba()
    e = normalize([(0, Fraction(1, 3)), (Fraction(1, 2), 1)])
    assert R.decode(R.encode(e)) == e
    assert R.decode("empty") == ()
    with pytest.raises(MalformedInterval):
        R.decode("(0,1)")


# -- truncations ----------------------------------------------------------------------

def test_truncation_examples():
    T = truncate(nbar_squared_with_bottom(), 2)
    assert T.n == 5 and T.label(T.bottom) == "bot"
    Q = truncate(unit_interval_rationals(), 3)
    assert is_isomorphic(Q, chain(5))  # 0, 1/3, 1/2, 2/3, 1
    assert is_isomorphic(truncate(finite_cofinite_ba(), 2), boolean_lattice(2))
    assert truncate(rational_interval_ba(), 3).n == 8
    assert truncate(nbar_squared_over_nats(), 2).n == 6


@pytest.mark.parametrize("fid", list(REGISTRY))
def test_truncation_coherence(fid):
    F = get_family(fid)
    depth = 3
    T = F.truncate(depth)
    elems = [F.decode(T.label(i)) for i in range(T.n)]
    index = {e: i for i, e in enumerate(elems)}
    rng = random.Random(fid)
    for _ in range(10 ** 4):
        i, j = rng.randrange(T.n), rng.randrange(T.n)
        a, b = elems[i], elems[j]
        assert T.leq(i, j) == F.leq(a, b)
        m, jn = F.meet(a, b), F.join(a, b)
        if m in index:
            assert T.meet(i, j) == index[m]
        if jn in index:
            assert T.join(i, j) == index[jn]


@pytest.mark.parametrize("fid", list(REGISTRY))
def test_codec_roundtrip(fid):
    F = get_family(fid)
    for e in F.window():
        assert F.decode(F.encode(e)) == e


@pytest.mark.parametrize("fid", list(REGISTRY))
def test_oracle_is_a_lattice_on_window(fid):
    F = get_family(fid)
    win = F.window()
    for a in win[:20]:
        assert F.leq(F.bottom, a) and F.leq(a, F.top)
        for b in win[:20]:
            m, j = F.meet(a, b), F.join(a, b)
            assert F.leq(m, a) and F.leq(m, b) and F.leq(a, j) and F.leq(b, j)
            for c in win:
                if F.leq(c, a) and F.leq(c, b):
                    assert F.leq(c, m)
                if F.leq(a, c) and F.leq(b, c):
                    assert F.leq(j, c)


@pytest.mark.parametrize("fid", list(REGISTRY))
def test_descriptors_are_proper_filters(fid):
    F = get_family(fid)
    win = F.window()
    for d in F.catalog():
        assert d.membership(F.top) and not d.membership(F.bottom)
        for a in win:
            for b in win:
                if d.membership(a) and F.leq(a, b):
                    assert d.membership(b)
                if d.membership(a) and d.membership(b):
                    assert d.membership(F.meet(a, b))


# -- catalogs -------------------------------------------------------------------------

@pytest.mark.parametrize("fid", list(REGISTRY))
def test_every_claim_reproduced(fid):
    F = get_family(fid)
    for d in F.catalog():
        for flag, v in check_descriptor(F, d).items():
            assert v.matches, (fid, d.name, flag, v.status)
            if v.refuted:
                assert v.witness is not None
            else:
                assert v.budget == 1000


def test_grid_with_bottom_catalog():
    G = nbar_squared_with_bottom()
    for d in G.catalog():
        out = check_descriptor(G, d)
        assert out["complete"].refuted and out["completely_prime"].verified


def test_qunit_closed_filters_refuted_by_lower_part():
    Q = unit_interval_rationals()
    for d in Q.catalog():
        if not d.parameters["closed"]:
            continue
        v = check_descriptor(Q, d)["completely_prime"]
        w = v.witness
        assert v.refuted and w.bound == d.parameters["inf"]
        assert all(e < d.parameters["inf"] for e in w.elements)


def test_unconfirmed_bound_raises():
    Q = unit_interval_rationals()
    bogus = Candidate("descending", "wrong bound", tuple(Fraction(1, k) for k in range(2, 20)),
                      Fraction(1, 2), infinite=True)
    assert not confirm_bound(Q, bogus, "inf")


def test_wrong_claim_raises_budget_exhausted():
    Q = unit_interval_rationals()
    d = Q.descriptor("closed[1/2,1]")
    wrong = FilterDescriptor(d.name, d.membership, d.parameters,
                             {"prime": True, "complete": False}, "deliberately wrong")
    with pytest.raises(BudgetExhausted) as exc:
        check_descriptor(Q, wrong, budget=50)
    assert exc.value.verdicts["complete"].verified


def test_verdict_serialises():
    G = nbar_squared_with_bottom()
    v = check_descriptor(G, G.descriptor("nonzero"))["complete"]
    d = verdict_to_dict(G, v)
    assert d["status"] == "refuted" and d["witness"]["elements"][0] == "0,0"


def test_unknown_family():
    with pytest.raises(UnknownFamily):
        get_family("reals")


@settings(max_examples=50, deadline=None)
@given(st.fractions(0, 1), st.fractions(0, 1))
def test_qunit_lattice_laws(a, b):
    Q = unit_interval_rationals()
    assert Q.meet(a, Q.join(a, b)) == a
    assert Q.leq(a, b) == (Q.meet(a, b) == a)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12)), max_size=4),
       st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12)), max_size=4))
def test_ratint_boolean_laws(xs, ys):
    R = rational_interval_ba()

    def build(pairs):
        return normalize((Fraction(min(p), 12), Fraction(max(p), 12)) for p in pairs)

    a, b = build(xs), build(ys)
    assert R.join(a, R.complement(a)) == R.top and R.meet(a, R.complement(a)) == R.bottom
    assert R.complement(R.join(a, b)) == R.meet(R.complement(a), R.complement(b))
    assert R.complement(R.complement(a)) == a


@settings(max_examples=100, deadline=None)
@given(st.booleans(), st.frozensets(st.integers(0, 8), max_size=4),
       st.booleans(), st.frozensets(st.integers(0, 8), max_size=4))
def test_fincofin_laws(ca, ia, cb, ib):
    B = finite_cofinite_ba()
    a, b = FC(ca, ia), FC(cb, ib)
    for k in range(10):
        assert (k in B.meet(a, b)) == (k in a and k in b)
        assert (k in B.join(a, b)) == (k in a or k in b)
    assert B.leq(a, b) == all(k in b for k in range(10) if k in a)
