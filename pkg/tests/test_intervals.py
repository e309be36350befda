import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycontact import intervals as iv
from sc_oracle import interval_sc_oracle

P = iv.parse_intervals


def test_touching_pieces_merge():
    assert iv.canonicalize([(F(0), F(1)), (F(1), F(2))]) == P("[0,2]")


def test_single_point_dropped():
    assert iv.canonicalize([(F(3), F(3))]).is_empty()


def test_overlap_merge_and_sort():
    got = iv.canonicalize([(F(0), F(2)), (F(1), F(5)), (None, F(-1))])
    assert got == P("(-inf,-1]; [0,5]")


def test_reversed_piece_rejected():
    with pytest.raises(ValueError):
        iv.canonicalize([(F(2), F(1))])


def test_complement_examples():
    assert P("[0,1]").complement() == P("(-inf,0]; [1,inf)")
    assert iv.EMPTY.complement() == iv.ALL
    assert P("(-inf,1]; [2,inf)").complement() == P("[1,2]")


def test_reg_meet_examples():
    assert P("[0,1]").reg_meet(P("[1,2]")).is_empty()
    assert P("[0,2]").reg_meet(P("[1,3]")) == P("[1,2]")
    assert P("[0,1]").union(P("[2,3]")) == P("[0,1]; [2,3]")


def test_contact_triples():
    a, b = P("[0,1]"), P("[1,2]")
    assert a.contact_c(b) and a.contact_sc(b) and not a.overlap(b)
    c = P("[2,3]")
    a2 = P("[0,1]")
    assert not a2.contact_c(c) and not a2.contact_sc(c) and not a2.overlap(c)
    assert a.contact_c(a) and a.contact_sc(a) and a.overlap(a)


rationals = st.fractions(min_value=-8, max_value=8, max_denominator=8)


@st.composite
def interval_polytopes(draw):
    pieces = []
    for _ in range(draw(st.integers(0, 3))):
        a, b = sorted([draw(rationals), draw(rationals)])
        pieces.append((a, b))
    if draw(st.booleans()):
        pieces.append((None, draw(rationals)))
    if draw(st.booleans()):
        pieces.append((draw(rationals), None))
    return iv.canonicalize(pieces)


@settings(max_examples=200, deadline=None)
@given(interval_polytopes(), interval_polytopes(), interval_polytopes())
def test_contact_axioms(x, y, z):
    # C1..C4 for strong contact on the line
    assert not iv.EMPTY.contact_sc(x)
    assert x.contact_sc(y.union(z)) == (x.contact_sc(y) or x.contact_sc(z))
    assert x.contact_sc(y) == y.contact_sc(x)
    if not x.is_empty():
        assert x.contact_sc(x)


@settings(max_examples=200, deadline=None)
@given(interval_polytopes(), interval_polytopes(), interval_polytopes())
def test_boolean_laws(x, y, z):
    assert x.union(y) == y.union(x)
    assert x.reg_meet(y) == y.reg_meet(x)
    assert x.union(x.reg_meet(y)) == x
    assert x.reg_meet(x.union(y)) == x
    assert x.reg_meet(y.union(z)) == x.reg_meet(y).union(x.reg_meet(z))
    assert x.union(y.reg_meet(z)) == x.union(y).reg_meet(x.union(z))
    assert x.union(x.complement()) == iv.ALL
    assert x.reg_meet(x.complement()) == iv.EMPTY
    assert x.complement().complement() == x


@settings(max_examples=200, deadline=None)
@given(interval_polytopes(), interval_polytopes())
def test_overlap_implies_contact(x, y):
    if x.overlap(y):
        assert x.contact_sc(y)


@settings(max_examples=200, deadline=None)
@given(interval_polytopes())
def test_connectedness(x):
    if not x.is_empty() and not x.is_all():
        assert x.contact_sc(x.complement())


def test_sc_is_c_and_matches_definition_oracle():
    rng = random.Random(99)
    for _ in range(400):
        a = iv.random_interval_polytope(rng)
        b = iv.random_interval_polytope(rng)
        assert a.contact_sc(b) == a.contact_c(b) == interval_sc_oracle(a, b)


def test_contact_witness_is_inside_union():
    rng = random.Random(31)
    for _ in range(300):
        a = iv.random_interval_polytope(rng)
        b = iv.random_interval_polytope(rng)
        w = iv.contact_witness(a, b)
        assert (w is not None) == a.contact_c(b)
        if w is not None:
            lo, hi = w
            assert lo < hi
            union = a.union(b)
            # the open interval sits inside one maximal piece and meets both
            assert union.contains(lo) and union.contains(hi)
            assert any((plo is None or plo <= lo) and (phi is None or hi <= phi)
                       for plo, phi in union.pieces)
            mid = (lo + hi) / 2
            assert a.contains(lo) or a.contains(hi) or a.contains(mid)
            assert b.contains(lo) or b.contains(hi) or b.contains(mid)


class TestTextFormat:
    def test_round_trip(self):
        text = "(-inf,0]; [1/2,3]; [5,inf)"
        assert iv.format_intervals(P(text)) == text
        assert iv.format_intervals(iv.EMPTY) == "empty"
        assert iv.format_intervals(iv.ALL) == "all"

    def test_round_trip_random(self):
        rng = random.Random(13)
        for _ in range(200):
            p = iv.random_interval_polytope(rng)
            assert P(iv.format_intervals(p)) == p

    def test_bad_syntax(self):
        with pytest.raises(iv.IntervalFormatError):
            P("[1,2); [3,4]")
        with pytest.raises(iv.IntervalFormatError):
            P("(0,1]")
        with pytest.raises(iv.IntervalFormatError):
            P("[a,b]")
