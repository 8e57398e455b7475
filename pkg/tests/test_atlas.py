"""Atlas construction, normalization, invariants, and mountain ranges."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legcable import (
    Generic,
    Named,
    NEG,
    POS,
    atlas_from_json,
    atlas_to_json_str,
    builtin_atlas,
    classes_at_tb,
    invariants,
    is_equal,
    make_atlas,
    mountain_range,
    normalize,
    peaks,
    stabilize,
)
from legcable.errors import (
    CutoffAbovePeak,
    DuplicateId,
    InvariantMismatch,
    MetadataInconsistent,
    ParityViolation,
    UnknownGenerator,
    UnsupportedKind,
)

UNKNOT_SPEC = {
    "name": "unknot",
    "generators": [{"id": "U", "name": "U", "rot": 0, "tb": -1}],
    "rules": [
        {"src": "U", "da": 1, "db": 0, "dst": "generic"},
        {"src": "U", "da": 0, "db": 1, "dst": "generic"},
    ],
    "tbb": -1,
    "width_ceiling": -1,
    "uniformly_thick": False,
}


def test_make_atlas_accepts_unknot_spec():
    atlas = make_atlas(UNKNOT_SPEC)
    assert atlas.tbb == -1
    assert [g.id for g in atlas.generators] == ["U"]


def test_make_atlas_rejects_inconsistent_rule():
    spec = {
        "name": "bad",
        "generators": [
            {"id": "g", "name": "g", "rot": 0, "tb": 1},
            {"id": "h", "name": "h", "rot": 3, "tb": 0},  # rot(h) != rot(g) + 1
        ],
        "rules": [{"src": "g", "da": 1, "db": 0, "dst": "h"}],
        "tbb": 1,
    }
    with pytest.raises(InvariantMismatch):
        make_atlas(spec)


def test_make_atlas_rejects_duplicate_and_parity_and_metadata():
    with pytest.raises(DuplicateId):
        make_atlas(
            {
                "generators": [
                    {"id": "g", "rot": 0, "tb": 1},
                    {"id": "g", "rot": 0, "tb": 1},
                ],
                "tbb": 1,
            }
        )
    with pytest.raises(ParityViolation):
        make_atlas({"generators": [{"id": "g", "rot": 0, "tb": 2}], "tbb": 2})
    with pytest.raises(MetadataInconsistent):
        make_atlas(
            {
                "generators": [{"id": "g", "rot": 0, "tb": 1}],
                "tbb": 1,
                "width_ceiling": 2,
                "uniformly_thick": True,
            }
        )
    with pytest.raises(MetadataInconsistent):
        make_atlas({"generators": [{"id": "g", "rot": 0, "tb": 1}], "tbb": 0})


def test_builtin_twist_even_2_shape():
    atlas = builtin_atlas("twist-even-2")
    ps = [g for g in atlas.generators if g.id.startswith("P")]
    rs = [g for g in atlas.generators if g.id.startswith("R")]
    ls = [g for g in atlas.generators if g.id.startswith("L")]
    assert len(ps) == 2 and len(rs) == 1 and len(ls) == 1
    assert all(g.rot_tb == (0, 1) for g in ps)
    assert rs[0].rot_tb == (1, 0) and ls[0].rot_tb == (-1, 0)


def test_builtin_sizes_scale_with_n():
    atlas = builtin_atlas("twist-even-4")
    assert len([g for g in atlas.generators if g.id.startswith("P")]) == 8
    assert len([g for g in atlas.generators if g.id.startswith("R")]) == 2


def test_builtin_k_minus_5_and_unknot():
    k5 = builtin_atlas("k-minus-5")
    assert sorted(g.id for g in peaks(k5)) == ["A", "B"]
    assert all(g.rot_tb == (0, -3) for g in k5.generators)
    un = builtin_atlas("unknot")
    assert [g.id for g in peaks(un)] == ["U"]
    assert not un.uniformly_thick


def test_builtin_rejects_unknown_kind():
    with pytest.raises(UnsupportedKind):
        builtin_atlas("twist-even-1")
    with pytest.raises(UnsupportedKind):
        builtin_atlas("granny")


def test_normalize_examples():
    atlas = builtin_atlas("twist-even-2")
    assert normalize(atlas, Named("P1", 1, 0)) == Named("R1")
    assert normalize(atlas, Named("P1", 1, 1)) == Generic(0, -1)
    assert normalize(atlas, Named("P1")) == Named("P1")


def test_normalize_unknown_generator():
    atlas = builtin_atlas("unknot")
    with pytest.raises(UnknownGenerator):
        normalize(atlas, Named("Z", 1, 0))


def test_stabilize_examples():
    k5 = builtin_atlas("k-minus-5")
    assert stabilize(k5, Named("A"), POS, 1) == Generic(1, -4)
    assert stabilize(k5, Generic(0, -1), NEG, 2) == Generic(-2, -3)
    tw2 = builtin_atlas("twist-even-2")
    assert stabilize(tw2, Named("R1"), POS, 3) == Named("R1", 3, 0)


def test_invariants_examples():
    tw2 = builtin_atlas("twist-even-2")
    assert invariants(tw2, Named("P1")) == (0, 1)
    assert invariants(tw2, Named("R1", 2, 0)) == (3, -2)
    assert invariants(tw2, Generic(-2, -3)) == (-2, -3)


def test_is_equal_examples():
    k5 = builtin_atlas("k-minus-5")
    assert is_equal(k5, stabilize(k5, Named("A"), POS, 1), stabilize(k5, Named("B"), POS, 1))
    tw2 = builtin_atlas("twist-even-2")
    assert not is_equal(tw2, Named("P1"), Named("P2"))
    one = stabilize(tw2, stabilize(tw2, Named("P1"), POS, 1), NEG, 1)
    other = stabilize(tw2, stabilize(tw2, Named("P1"), NEG, 1), POS, 1)
    assert is_equal(tw2, one, other)


def test_peaks_exclude_edge_bases():
    tw2 = builtin_atlas("twist-even-2")
    assert sorted(g.id for g in peaks(tw2)) == ["P1", "P2"]


def test_mountain_range_fixtures():
    tw2 = builtin_atlas("twist-even-2")
    assert mountain_range(tw2, -1).entries == {
        (0, 1): 2,
        (1, 0): 1,
        (-1, 0): 1,
        (0, -1): 1,
        (2, -1): 1,
        (-2, -1): 1,
    }
    k5 = builtin_atlas("k-minus-5")
    assert mountain_range(k5, -4).entries == {
        (0, -3): 2,
        (1, -4): 1,
        (-1, -4): 1,
    }
    un = builtin_atlas("unknot")
    assert mountain_range(un, -3).entries == {
        (0, -1): 1,
        (1, -2): 1,
        (-1, -2): 1,
        (0, -3): 1,
        (2, -3): 1,
        (-2, -3): 1,
    }


def test_mountain_range_cutoff_above_peak():
    with pytest.raises(CutoffAbovePeak):
        mountain_range(builtin_atlas("unknot"), 0)


def test_mountain_range_symmetry_for_twist_atlases():
    for n in (2, 3, 4):
        atlas = builtin_atlas(f"twist-even-{n}")
        entries = mountain_range(atlas, -4).entries
        assert all(entries[(r, t)] == entries[(-r, t)] for (r, t) in entries)


def test_normalization_preserves_invariants_exhaustively():
    # every presentation with a + b <= 8 over every builtin atlas
    for name in ("unknot", "k-minus-5", "twist-even-2", "twist-even-3"):
        atlas = builtin_atlas(name)
        for g in atlas.generators:
            for total in range(9):
                for a in range(total + 1):
                    c = Named(g.id, a, total - a)
                    assert invariants(atlas, normalize(atlas, c)) == invariants(atlas, c)


def test_normalization_rules_strictly_decrease():
    # rules with da + db = 0 are rejected, so rewriting terminates
    with pytest.raises(InvariantMismatch):
        make_atlas(
            {
                "generators": [
                    {"id": "g", "rot": 0, "tb": 1},
                    {"id": "h", "rot": 0, "tb": 1},
                ],
                "rules": [{"src": "g", "da": 0, "db": 0, "dst": "h"}],
                "tbb": 1,
            }
        )


@settings(max_examples=80)
@given(st.integers(0, 5), st.integers(0, 5), st.sampled_from(["unknot", "k-minus-5", "twist-even-2"]))
def test_stabilization_commutes(a, b, name):
    atlas = builtin_atlas(name)
    for g in atlas.generators:
        start = Named(g.id, a, b)
        one = stabilize(atlas, stabilize(atlas, start, POS, 1), NEG, 1)
        other = stabilize(atlas, stabilize(atlas, start, NEG, 1), POS, 1)
        assert is_equal(atlas, one, other)


@settings(max_examples=80)
@given(st.integers(0, 6), st.integers(0, 6))
def test_parity_preserved_by_stabilization(a, b):
    atlas = builtin_atlas("twist-even-3")
    for g in atlas.generators:
        rot, tb = invariants(atlas, normalize(atlas, Named(g.id, a, b)))
        assert (rot + tb) % 2 == 1


def test_classes_at_tb_counts():
    tw3 = builtin_atlas("twist-even-3")  # l = 5, k = 2
    assert len(classes_at_tb(tw3, 1)) == 5
    assert len(classes_at_tb(tw3, 0)) == 4  # two edge families per side
    assert len(classes_at_tb(tw3, -1)) == 5  # edges + one interior point


def test_atlas_json_round_trip_is_byte_stable():
    for name in ("unknot", "k-minus-5", "twist-even-3"):
        atlas = builtin_atlas(name)
        text = atlas_to_json_str(atlas)
        again = atlas_to_json_str(atlas_from_json(json.loads(text)))
        assert text == again
        assert atlas_from_json(json.loads(text)) == atlas
