from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from a2tilde import gf, pds
from a2tilde.errors import NotAMultiplierError, NotAPdsError, NotRelatedError
from a2tilde.pds import DiffSet

Q2 = gf.make_field(2, 1, [1, 1, 0, 1])


def brute_fixed_by_q(q):
    # independent oracle: scan every (q+1)-subset
    v = pds.order_v(q)
    out = []
    for c in combinations(range(v), q + 1):
        if set(c) == {q * x % v for x in c} and pds.verify_pds(c, q):
            out.append(c)
    return out


def test_singer_q2():
    D = pds.singer_trace_pds(Q2)
    assert D.elems == (1, 2, 4)
    assert D.scale(2) == D


def test_singer_fixed_by_q_all_targets():
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13):
        ctx = gf.make_field(*gf.prime_power(q))
        D = pds.singer_trace_pds(ctx)
        assert D.scale(q) == D
        assert pds.verify_pds(D.elems, q)


def test_singer_q3_related_to_table():
    ctx = gf.make_field(3, 1)
    D = pds.singer_trace_pds(ctx)
    pds.find_transformation(D, DiffSet(3, (0, 1, 3, 9)))


def test_halberstam_laxton_q2():
    D = pds.halberstam_laxton_pds(Q2)
    assert D.elems == (0, 1, 3)
    assert pds.multiplier_shift(D, 2) == 6
    assert D.scale(2) != D


def test_halberstam_laxton_is_pds():
    for q in (3, 4, 5, 7):
        ctx = gf.make_field(*gf.prime_power(q))
        assert len(pds.halberstam_laxton_pds(ctx)) == q + 1


def test_verify_pds():
    assert pds.verify_pds([1, 2, 4], 2)
    bad = pds.verify_pds([0, 1, 2], 2)
    assert not bad and 1 in bad.duplicated
    assert pds.verify_pds([7, 9, 14, 15, 18], 4)
    assert not pds.verify_pds([1, 2], 2)
    with pytest.raises(NotAPdsError):
        pds.as_pds([0, 1, 2], 2)


def test_difference_table_013():
    diffs = sorted((a - b) % 7 for a in (0, 1, 3) for b in (0, 1, 3) if a != b)
    assert diffs == [1, 2, 3, 4, 5, 6]


def test_multiplier_reports():
    rep = pds.multiplier_report(DiffSet(2, (1, 2, 4)))
    assert rep.multipliers == {2: 0, 4: 0}
    rep = pds.multiplier_report(DiffSet(4, (0, 2, 7, 8, 11)))
    assert rep.fixed_by == {4, 16}
    assert rep.multipliers[2] != 0 and rep.multipliers[8] != 0
    rep = pds.multiplier_report(DiffSet(7, (0, 11, 19, 20, 24, 26, 36, 54)))
    assert rep.fixed_by >= {7, 49}


def test_multiplier_shifts_witness():
    D = DiffSet(4, (0, 1, 4, 14, 16))
    for m, s in pds.multiplier_report(D).multipliers.items():
        assert gcd(m, D.v) == 1
        assert D.scale(m) == D.shift(s)


def test_fixed_shifts_examples():
    assert pds.fixed_shifts(DiffSet(2, (1, 2, 4)), 2) == [0]
    assert pds.fixed_shifts(DiffSet(4, (7, 9, 14, 15, 18)), 4) == [0, 7, 14]
    assert pds.fixed_shifts(DiffSet(3, (0, 1, 3, 9)), 3) == [0]
    with pytest.raises(NotAMultiplierError):
        pds.fixed_shifts(DiffSet(2, (1, 2, 4)), 3)


def test_classification():
    assert pds.classify_fixed_by_all(2).count == 1
    assert pds.classify_fixed_by_all(4).count == 1
    assert pds.classify_fixed_by_all(7).count == 3
    assert len(pds.shifts_fixed_by_all(DiffSet(7, (0, 1, 5, 7, 17, 35, 38, 49)))) == 3
    s = pds.shifts_fixed_by_all(DiffSet(4, (0, 1, 4, 14, 16)))
    assert len(s) == 1
    assert DiffSet(4, (0, 1, 4, 14, 16)).shift(s[0]).elems == (7, 9, 14, 15, 18)


def test_enumeration_q2():
    assert [D.elems for D in pds.enumerate_pds_fixed_by_q(2)] == [(1, 2, 4), (3, 5, 6)]


@pytest.mark.parametrize("q", [2, 3, 4])
def test_enumeration_matches_brute_force(q):
    assert [D.elems for D in pds.enumerate_pds_fixed_by_q(q)] == brute_fixed_by_q(q)


def test_enumeration_includes_table_sets():
    assert (0, 1, 3, 9) in [D.elems for D in pds.enumerate_pds_fixed_by_q(3)]
    assert (1, 5, 17, 22, 23, 25) in [D.elems for D in pds.enumerate_pds_fixed_by_q(5)]


def test_enumeration_counts_regression():
    # no reference values beyond q=2; pinned from this implementation
    counts = {q: len(pds.enumerate_pds_fixed_by_q(q)) for q in (2, 3, 4, 5, 7, 8, 9)}
    assert counts == {2: 2, 3: 4, 4: 6, 5: 10, 7: 36, 8: 8, 9: 12}


def test_find_transformation():
    assert pds.find_transformation(DiffSet(2, (0, 1, 3)), DiffSet(2, (1, 2, 4))) == (1, 1)
    assert pds.find_transformation(DiffSet(2, (1, 2, 4)), DiffSet(2, (3, 5, 6))) == (3, 0)
    D = DiffSet(3, (0, 1, 3, 9))
    assert pds.find_transformation(D, D) == (1, 0)
    with pytest.raises(NotRelatedError):
        pds.find_transformation(D, DiffSet(3, (0, 1, 2, 3)))


def test_json_round_trip():
    D = DiffSet(5, (1, 5, 17, 22, 23, 25))
    assert D.to_json() == {"q": 5, "v": 31, "elems": [1, 5, 17, 22, 23, 25]}
    assert DiffSet.from_json(D.to_json()) == D


BASES = [DiffSet(3, (0, 1, 3, 9)), DiffSet(4, (0, 1, 4, 14, 16)),
         DiffSet(5, (1, 5, 17, 22, 23, 25)), DiffSet(7, (0, 1, 5, 7, 17, 35, 38, 49))]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(BASES), st.integers(0, 10 ** 4), st.integers(1, 10 ** 4))
def test_shift_and_unit_closure(D, s, u):
    assert pds.verify_pds(D.shift(s).elems, D.q)
    if gcd(u, D.v) == 1:
        assert pds.verify_pds(D.scale(u).elems, D.q)
