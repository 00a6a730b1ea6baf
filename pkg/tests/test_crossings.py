import itertools

import pytest

from ordercalc.crossings import (
    CrossingCandidate,
    CrossingError,
    DoubleCrossingCandidate,
    Move,
    ReinforcedCandidate,
    as_crossing,
    crossing_from_n2_violation,
    crossing_from_nonconradian,
    nonconradian_from_crossing,
    refine_between,
    search_crossings,
    search_double_crossings,
    to_reinforced,
    transform_crossing,
    verify_crossing,
    verify_double_crossing,
    verify_reinforced,
)
from ordercalc.orderings import EXOTIC_C, KleinCone, OrderingError, Sign, ball, compare, conjugate_ordering, less
from ordercalc.words import FREE2, KLEIN, Word, parse_word


def F(s):
    return parse_word(s, FREE2)


BASE = CrossingCandidate(F("Y"), F("x"), F("1"), F("yx"), F("xx"), M=3, N=1)


def test_nonconradian_candidate():
    assert crossing_from_nonconradian(EXOTIC_C, F("Y"), F("x")) == BASE
    r = verify_crossing(EXOTIC_C, BASE, 25)
    assert (r.status, r.n, r.to_json()) == ("verified_up_to", 25, {"status": "verified_up_to", "n": 25})


def test_refutations():
    r = verify_crossing(EXOTIC_C, CrossingCandidate(F("Y"), F("x"), F("y"), F("y"), F("xx"), M=3))
    assert (r.status, r.condition) == ("refuted", 1)
    bad_w = CrossingCandidate(F("Y"), F("x"), F("1"), F("yx"), F("xxxxx"), M=3, N=1)
    r = verify_crossing(EXOTIC_C, bad_w, 25)
    assert (r.condition, r.witness["comparison"]) == (3, "w < g^M u")
    assert r.to_json() == {"status": "refuted", "condition": 3, "witness": {"comparison": "w < g^M u"}}
    assert "refuted condition 3" in str(r)


def test_condition_two_witness_carries_n():
    # u < w < v and condition 3 hold, but x^n pushes 1 past v eventually
    c = CrossingCandidate(F("Y"), F("x"), F("1"), F("xxx"), F("xx"), M=3, N=1)
    r = verify_crossing(EXOTIC_C, c, 25)
    assert r.status == "refuted"
    if r.condition == 2:
        g_n_u = F("x") ** r.witness["n"]
        assert not less(EXOTIC_C, g_n_u, c.v) or not less(EXOTIC_C, c.u, c.f ** r.witness["n"] * c.v)


def test_verify_bounds_and_tags():
    with pytest.raises(CrossingError):
        verify_crossing(EXOTIC_C, BASE, 2)
    with pytest.raises(OrderingError):
        verify_crossing(KleinCone(1, 1), BASE, 25)
    with pytest.raises(CrossingError):
        CrossingCandidate(F("x"), F("x"), F("1"), F("1"), F("1"), M=0)
    with pytest.raises(Exception):
        CrossingCandidate(F("x"), parse_word("a", KLEIN), F("1"), F("1"), F("1"))


def test_json_roundtrip():
    data = BASE.to_json()
    assert list(data) == ["f", "g", "u", "v", "w", "M", "N"]
    assert CrossingCandidate.from_json(data, FREE2) == BASE
    with pytest.raises(CrossingError):
        CrossingCandidate.from_json('{"f": "x"}', FREE2)


def test_reinforced():
    r = to_reinforced(BASE)
    assert isinstance(r, ReinforcedCandidate)
    fN, gM = BASE.f, BASE.g**3
    assert r.words() == (fN * gM, gM * fN, fN * BASE.w, gM * BASE.w, BASE.w)
    assert verify_reinforced(EXOTIC_C, r).status == "exact_verified"
    twice = to_reinforced(r)
    assert twice.words() != r.words()
    assert verify_crossing(EXOTIC_C, as_crossing(r), 25).ok
    f_one = CrossingCandidate(F("1"), r.g, r.u, r.v, r.w, M=r.M, N=r.N)
    assert verify_reinforced(EXOTIC_C, f_one).witness["comparison"] == "f u > u"
    swapped = CrossingCandidate(r.f, r.g, r.v, r.u, r.w, M=r.M, N=r.N)
    assert verify_reinforced(EXOTIC_C, swapped).condition == 1


def test_identity_f_or_g_never_crosses():
    one = F("1")
    for u, v, w in itertools.product(ball(FREE2, 1), repeat=3):
        for f, g in ((one, F("x")), (F("Y"), one)):
            c = CrossingCandidate(f, g, u, v, w, M=2, N=2)
            assert not verify_crossing(EXOTIC_C, c, 5).ok
            assert not verify_reinforced(EXOTIC_C, c).ok


def test_moves():
    assert transform_crossing(EXOTIC_C, BASE, Move.conjugate(F("1"))) == BASE
    h = F("xY")
    there = transform_crossing(EXOTIC_C, BASE, Move.conjugate(h))
    assert transform_crossing(EXOTIC_C, there, Move.conjugate(~h)) == BASE
    shifted = transform_crossing(EXOTIC_C, BASE, Move("shift_w_g", 1))
    assert shifted.M == 4 and shifted.w == F("xxx")
    assert verify_crossing(EXOTIC_C, shifted, 24).status == "verified_up_to"
    for kind in ("shift_w_f", "extend_u", "extend_v"):
        for n in (1, 2):
            moved = transform_crossing(EXOTIC_C, BASE, Move(kind, n))
            assert verify_crossing(EXOTIC_C, moved, 25 - n).ok, (kind, n)
    with pytest.raises(CrossingError):
        Move("shift_w_g", 0)
    with pytest.raises(CrossingError):
        Move("teleport")
    with pytest.raises(CrossingError):
        Move("conjugate")


def test_conjugation_equivariance():
    # the lemma move keeps a crossing for the same ordering; conjugating all
    # five entries gives a crossing for the conjugate ordering
    base = verify_crossing(EXOTIC_C, BASE, 10).status
    for h in ball(FREE2, 2):
        moved = transform_crossing(EXOTIC_C, BASE, Move.conjugate(h))
        assert verify_crossing(EXOTIC_C, moved, 10).status == base
        full = CrossingCandidate(*(h * x * ~h for x in BASE.words()), M=BASE.M, N=BASE.N)
        assert verify_crossing(conjugate_ordering(EXOTIC_C, ~h), full, 10).status == base


def test_moved_crossing_is_not_equivariant_for_conjugate_order():
    statuses = {
        verify_crossing(conjugate_ordering(EXOTIC_C, ~h), transform_crossing(EXOTIC_C, BASE, Move.conjugate(h)), 10).ok
        for h in ball(FREE2, 2)
    }
    assert statuses == {True, False}


def test_witness_round_trip():
    pair = nonconradian_from_crossing(EXOTIC_C, BASE, 25)
    assert pair.h == ~BASE.w * F("xxxY") * BASE.w
    assert pair.h_bar == F("xxx")
    assert pair.n_checked == 25
    again = crossing_from_nonconradian(EXOTIC_C, pair.h, pair.h_bar)
    assert verify_crossing(EXOTIC_C, again, 25).ok
    with pytest.raises(CrossingError):
        nonconradian_from_crossing(EXOTIC_C, CrossingCandidate(F("Y"), F("x"), F("y"), F("y"), F("xx")), 5)


def test_constructor_errors():
    with pytest.raises(CrossingError):
        crossing_from_nonconradian(EXOTIC_C, F("1"), F("x"))
    with pytest.raises(CrossingError):
        crossing_from_nonconradian(EXOTIC_C, F("y"), F("x"))


def test_n2_variant():
    c = crossing_from_n2_violation(EXOTIC_C, F("Y"), F("x"))
    assert (c.f, c.g, c.u, c.v, c.w, c.M, c.N) == (F("Y"), F("Yx"), F("1"), F("x"), F("Yx"), 2, 2)
    assert verify_crossing(EXOTIC_C, c, 25).ok
    # the tuple with v and w the other way round is not a crossing
    literal = CrossingCandidate(F("Y"), F("Yx"), F("1"), F("Yx"), F("x"), M=2, N=2)
    assert verify_crossing(EXOTIC_C, literal, 25).witness["comparison"] == "w < v"
    with pytest.raises(CrossingError):
        crossing_from_n2_violation(EXOTIC_C, F("x"), F("x"))


def test_refine_between():
    c = refine_between(EXOTIC_C, BASE, F("1"), F("xxx"), 25)
    assert less(EXOTIC_C, F("1"), c.u) and less(EXOTIC_C, c.v, F("xxx"))
    assert verify_crossing(EXOTIC_C, c, 21).ok
    again = refine_between(EXOTIC_C, c, F("1"), F("xxx"), 21)
    assert verify_crossing(EXOTIC_C, again, 17).ok
    with pytest.raises(CrossingError):
        refine_between(EXOTIC_C, BASE, F("1"), F("xx"), 25)


def test_refine_below_x_from_search():
    one, x = F("1"), F("x")
    found = search_crossings(
        EXOTIC_C, 3, 4, 4, 10, limit=1,
        u_filter=lambda u: not less(EXOTIC_C, u, one),
        w_filter=lambda w: less(EXOTIC_C, w, x),
    )
    assert found
    c = refine_between(EXOTIC_C, found[0][0], one, x, 25)
    assert less(EXOTIC_C, c.v, x) and less(EXOTIC_C, one, c.u)


def _brute_force(ord, radius, M_max, N_max, n_max):
    # every 5-tuple over the ball with its least M and least N, by direct verification
    b = ball(ord.tag, radius)
    triples = [(u, v, w) for u, v, w in itertools.product(b, repeat=3) if less(ord, u, w) and less(ord, w, v)]
    found = []
    for f, g in itertools.product([x for x in b if not x.is_identity()], repeat=2):
        for u, v, w in triples:
            Ns = [N for N in range(1, N_max + 1) if less(ord, f**N * v, w)]
            Ms = [M for M in range(1, M_max + 1) if less(ord, w, g**M * u)]
            if not Ns or not Ms:
                continue
            c = CrossingCandidate(f, g, u, v, w, M=Ms[0], N=Ns[0])
            if verify_crossing(ord, c, n_max).ok:
                found.append(c)
    found.sort(key=lambda c: (c.total_length(), tuple(x.canonical_key() for x in c.words())))
    return found


def test_search_matches_brute_force_exotic():
    assert _brute_force(EXOTIC_C, 1, 2, 2, 4) == []
    assert search_crossings(EXOTIC_C, 1, 2, 2, 4, limit=100) == []
    expected = _brute_force(EXOTIC_C, 2, 2, 2, 4)
    got = [c for c, _ in search_crossings(EXOTIC_C, 2, 2, 2, 4, limit=10**6)]
    assert got == expected and got
    assert [c for c, _ in search_crossings(EXOTIC_C, 2, 2, 2, 4, limit=3)] == expected[:3]


def test_search_matches_brute_force_klein():
    assert _brute_force(KleinCone(1, -1), 2, 2, 2, 4) == []
    assert search_crossings(KleinCone(1, -1), 2, 2, 2, 4, limit=10) == []


def test_search_examples():
    assert search_crossings(EXOTIC_C, 3, 4, 4, 10, limit=0) == []
    hits = search_crossings(EXOTIC_C, 3, 4, 4, 10, limit=1)
    assert len(hits) == 1 and hits[0][1].status == "verified_up_to"
    assert search_crossings(KleinCone(1, 1), 4, 3, 3, 10, limit=10) == []
    with pytest.raises(CrossingError):
        search_crossings(EXOTIC_C, 0, 1, 1, 5)
    with pytest.raises(CrossingError):
        search_crossings(EXOTIC_C, 2, 5, 1, 3)


def test_search_deterministic():
    a = search_crossings(EXOTIC_C, 2, 3, 3, 8, limit=5)
    b = search_crossings(EXOTIC_C, 2, 3, 3, 8, limit=5)
    assert a == b


def test_double_crossing_examples():
    w = F("x")
    same = DoubleCrossingCandidate(F("Y"), F("x"), F("1"), F("xx"), w, w)
    assert verify_double_crossing(EXOTIC_C, same).witness["comparison"] == "w1 < w2"
    ranked = sorted(ball(FREE2, 1), key=lambda t: sum(1 for s in ball(FREE2, 1) if less(EXOTIC_C, s, t)))
    u, w1, w2, v = ranked[:4]
    f_one = DoubleCrossingCandidate(F("1"), F("x"), u, v, w1, w2)
    assert not verify_double_crossing(EXOTIC_C, f_one).ok
    for c in search_double_crossings(EXOTIC_C, 2, limit=5):
        assert verify_double_crossing(EXOTIC_C, c).status == "exact_verified"
