"""Slope regimes, greater cables and diamonds, twisted copies, lesser cables."""

import pytest

from legcable import (
    CableClass,
    Generic,
    Named,
    NEG,
    POS,
    Regime,
    builtin_atlas,
    cable_equal,
    cable_invariants,
    cable_mountain_range,
    cable_stabilize,
    greater_cable,
    invariants,
    lesser_cable,
    lesser_invariants,
    lesser_mountain_range,
    lesser_thresholds,
    regime,
    stabilize,
    twisted_copy,
    window_classes,
)
from legcable.cables import integer_component_invariants
from legcable.errors import NotReduced, SlopeMismatch, WrongRegime, WrongWindow
from legcable.oracle import brute_cable_mountain_range


def test_regime_examples():
    un = builtin_atlas("unknot")
    tw2 = builtin_atlas("twist-even-2")
    assert regime(un, 2, 1) is Regime.GREATER
    assert regime(tw2, 2, -3) is Regime.NONINTEGER_LESSER
    assert regime(tw2, 1, 0) is Regime.INTEGER_LESSER
    assert regime(tw2, 1, 1) is Regime.INTEGER_LESSER  # maximal-slope integer cable
    # the unknot is not uniformly thick: no non-integer lesser regime
    assert regime(un, 2, -3) is Regime.UNSUPPORTED_WINDOW


def test_regime_unsupported_window():
    from legcable import make_atlas

    # width ceiling above tbb: slopes in between are out of reach
    atl = make_atlas(
        {
            "name": "wide",
            "generators": [{"id": "g", "rot": 0, "tb": -3}],
            "rules": [
                {"src": "g", "da": 1, "db": 0, "dst": "generic"},
                {"src": "g", "da": 0, "db": 1, "dst": "generic"},
            ],
            "tbb": -3,
            "width_ceiling": -1,
            "uniformly_thick": False,
        }
    )
    assert regime(atl, 1, -2) is Regime.UNSUPPORTED_WINDOW
    assert regime(atl, 2, -5) is Regime.UNSUPPORTED_WINDOW
    assert regime(atl, 2, -7) is Regime.UNSUPPORTED_WINDOW  # lesser needs thickness
    assert regime(atl, 1, -3) is Regime.INTEGER_LESSER
    assert regime(atl, 1, 0) is Regime.GREATER


def test_regime_rejects_unreduced_slopes():
    un = builtin_atlas("unknot")
    with pytest.raises(NotReduced):
        regime(un, 2, 4)
    with pytest.raises(NotReduced):
        regime(un, 0, 1)


def test_greater_cable_formulas():
    un = builtin_atlas("unknot")
    c = greater_cable(un, Named("U"), 2, 3)
    assert cable_invariants(un, c) == (0, 1)  # 6 - 5
    k5 = builtin_atlas("k-minus-5")
    assert cable_invariants(k5, greater_cable(k5, Named("A"), 2, 1)) == (0, -5)
    # a (1, q) greater cable carries the invariants of the core
    c1 = greater_cable(un, Named("U"), 1, 3)
    assert cable_invariants(un, c1) == invariants(un, Named("U"))


def test_greater_cable_wrong_regime():
    tw2 = builtin_atlas("twist-even-2")
    with pytest.raises(WrongRegime):
        greater_cable(tw2, Named("P1"), 2, -3)


def test_cable_stabilize_pushes_after_p_steps():
    k5 = builtin_atlas("k-minus-5")
    c = greater_cable(k5, Named("A"), 2, 1)
    twice = cable_stabilize(k5, c, POS, 2)
    assert cable_equal(k5, twice, greater_cable(k5, stabilize(k5, Named("A"), POS, 1), 2, 1))
    once = cable_stabilize(k5, c, POS, 1)
    assert (once.i, once.j) == (1, 0)
    assert cable_invariants(k5, once) == (1, -6)
    # p = 1: every stabilization pushes straight into the underlying knot
    un = builtin_atlas("unknot")
    c1 = cable_stabilize(un, greater_cable(un, Named("U"), 1, 3), POS, 1)
    assert (c1.i, c1.j) == (0, 0)
    assert is_stabilized_core(un, c1)


def is_stabilized_core(atlas, c):
    return invariants(atlas, c.u) == (1, -2)


def test_cable_equal_examples():
    k5 = builtin_atlas("k-minus-5")
    a = CableClass(Named("A"), 2, 1, 1, 0)
    b = CableClass(Named("B"), 2, 1, 1, 0)
    assert not cable_equal(k5, a, b)
    pushed = CableClass(Named("A"), 2, 1, 2, 0)
    resolved = cable_stabilize(k5, CableClass(Named("A"), 2, 1, 0, 0), POS, 2)
    assert cable_equal(k5, resolved, greater_cable(k5, stabilize(k5, Named("A"), POS, 1), 2, 1))
    assert cable_equal(k5, a, a)
    with pytest.raises(SlopeMismatch):
        cable_equal(k5, a, CableClass(Named("A"), 2, 3, 1, 0))


def test_diamond_has_p_squared_distinct_classes():
    k5 = builtin_atlas("k-minus-5")
    for p, q in ((2, 1), (3, 1), (4, 1)):
        seen = set()
        for i in range(p):
            for j in range(p):
                seen.add(cable_invariants(k5, CableClass(Named("A"), p, q, i, j)))
        assert len(seen) == p * p


def test_cable_mountain_range_fixtures():
    k5 = builtin_atlas("k-minus-5")
    got = cable_mountain_range(k5, 2, 1, -7).entries
    assert got[(0, -5)] == 2 and got[(1, -6)] == 2 and got[(-1, -6)] == 2
    assert got[(0, -7)] == 2
    un = builtin_atlas("unknot")
    assert cable_mountain_range(un, 2, 3, 1).entries == {(0, 1): 1}
    # (3,2) of the unknot, cross-checked against the brute-force oracle
    greedy = cable_mountain_range(un, 3, 2, -2).entries
    brute = brute_cable_mountain_range(un, 3, 2, -2).entries
    assert greedy == brute
    assert greedy[(0, 1)] == 1  # 6 - |3(-1) - 2| = 1


def test_cable_mountain_range_wrong_regime():
    tw2 = builtin_atlas("twist-even-2")
    with pytest.raises(WrongRegime):
        cable_mountain_range(tw2, 2, -3, -8)


def test_greater_stabilization_consistency_up_to_p4():
    for name in ("unknot", "k-minus-5", "twist-even-2"):
        atlas = builtin_atlas(name)
        from math import gcd

        for g in atlas.generators:
            for p in (2, 3, 4):
                q = p * atlas.width_ceiling + 1
                while gcd(p, q) != 1:
                    q += 1
                for sign in (POS, NEG):
                    lhs = cable_stabilize(atlas, greater_cable(atlas, Named(g.id), p, q), sign, p)
                    rhs = greater_cable(atlas, stabilize(atlas, Named(g.id), sign, 1), p, q)
                    assert cable_invariants(atlas, lhs) == cable_invariants(atlas, rhs)
                    assert cable_equal(atlas, lhs, rhs)


def test_twisted_copy_component_invariants():
    tw2 = builtin_atlas("twist-even-2")
    base = twisted_copy(tw2, Named("P1"), 2, 1)
    assert integer_component_invariants(tw2, base) == [(0, 1), (0, -1)]
    un = builtin_atlas("unknot")
    base = twisted_copy(un, Named("U"), 2, 2)
    assert integer_component_invariants(un, base) == [(0, -1), (0, -5)]
    ncopy = twisted_copy(un, Named("U"), 3, 0)
    assert integer_component_invariants(un, ncopy) == [(0, -1)] * 3
    assert ncopy.q == -1


def test_twisted_copy_satisfies_both_stabilization_identities():
    # component invariants of T^t(nL) match both sign instances of the
    # twisted-copy stabilization relation
    tw2 = builtin_atlas("twist-even-2")
    for t in (1, 2, 3):
        for n in (2, 3):
            base = twisted_copy(tw2, Named("P1"), n, t)
            lhs = integer_component_invariants(tw2, base)
            for sign in (POS, NEG):
                up = twisted_copy(tw2, stabilize(tw2, Named("P1"), sign, 1), n, t - 1)
                rhs = integer_component_invariants(tw2, up)
                # comp 1 stabilized on the left, comps 2..n on the right
                got_l = [(lhs[0][0] + sign, lhs[0][1] - 1)] + lhs[1:]
                got_r = [rhs[0]] + [(r - sign, tb - 1) for r, tb in rhs[1:]]
                assert got_l == got_r


def test_lesser_cable_examples():
    tw2 = builtin_atlas("twist-even-2")
    c = lesser_cable(tw2, Generic(0, -1), POS, 2, -3)
    assert lesser_invariants(tw2, c) == (1, -6)
    right = Named("R1", 1, 0)  # the right-edge class at tb = -1
    assert lesser_invariants(tw2, lesser_cable(tw2, right, POS, 2, -3)) == (5, -6)
    assert lesser_invariants(tw2, lesser_cable(tw2, right, NEG, 2, -3)) == (3, -6)


def test_lesser_cable_window_and_regime_errors():
    tw2 = builtin_atlas("twist-even-2")
    with pytest.raises(WrongWindow):
        lesser_cable(tw2, Named("P1"), POS, 2, -3)  # tb 1, window is -1
    un = builtin_atlas("unknot")
    with pytest.raises(WrongRegime):
        lesser_cable(un, Named("U"), POS, 2, -3)
    with pytest.raises(WrongRegime):
        lesser_mountain_range(un, 2, -3, -8)


def test_lesser_rotation_window_property():
    tw2 = builtin_atlas("twist-even-2")
    for p, q in ((2, -3), (3, -4), (2, 1)):
        if regime(tw2, p, q) is not Regime.NONINTEGER_LESSER:
            continue
        for w in window_classes(tw2, p, q):
            rot_w, tb_w = invariants(tw2, w)
            for sign in (POS, NEG):
                c = lesser_cable(tw2, w, sign, p, q)
                rot, tb = lesser_invariants(tw2, c)
                assert abs(rot - p * rot_w) == p * tb_w - q
                assert 0 < p * tb_w - q < p
                assert (rot + tb) % 2 == 1


def test_lesser_canonical_form_reaches_ruling():
    from legcable import lesser_canonical_form, lesser_stabilize
    from legcable.links import RULING

    tw2 = builtin_atlas("twist-even-2")
    c = lesser_cable(tw2, Generic(0, -1), POS, 2, -3)
    th0, _ = lesser_thresholds(tw2, 2, -3)
    deep = lesser_stabilize(tw2, c, NEG, th0)
    form = lesser_canonical_form(tw2, deep)
    assert form.form == RULING and form.vec == ((0, 0),)
    shallow = lesser_canonical_form(tw2, c)
    assert shallow.form == "divide" and shallow.sign == POS


def test_lesser_thresholds_sum_to_p():
    tw2 = builtin_atlas("twist-even-2")
    for p, q in ((2, -3), (3, -4), (2, 1), (3, 2)):
        th0, th1 = lesser_thresholds(tw2, p, q)
        assert th0 + th1 == p
        assert 0 < th0 < p


def test_parity_of_all_cable_constructions():
    k5 = builtin_atlas("k-minus-5")
    for i in range(2):
        for j in range(2):
            rot, tb = cable_invariants(k5, CableClass(Named("A"), 2, 1, i, j))
            assert (rot + tb) % 2 == 1
    tw2 = builtin_atlas("twist-even-2")
    for w in window_classes(tw2, 2, -3):
        for sign in (POS, NEG):
            rot, tb = lesser_invariants(tw2, lesser_cable(tw2, w, sign, 2, -3))
            assert (rot + tb) % 2 == 1
