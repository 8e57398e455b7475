"""Knot atlases: finite rewrite presentations of Legendrian classifications.

An atlas lists named generators with classical invariants (rot, tb) and
rewrite rules that identify stabilizations of one generator with another
class.  A Legendrian isotopy class is either Named(gen, a, b) -- the
generator stabilized a times positively and b times negatively -- or
Generic(rot, tb), a class determined by its invariants alone.  Equality of
classes is equality of rewrite normal forms; every rule strictly decreases
a + b, so normalization terminates, and confluence is checked separately by
the oracle module before an atlas is trusted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union

from .errors import (
    CutoffAbovePeak,
    DuplicateId,
    InvariantMismatch,
    MetadataInconsistent,
    ParityViolation,
    UnknownGenerator,
    UnsupportedKind,
)
from .mountain import MountainRange

POS = 1
NEG = -1

SURGERY_VALUES = ("yes", "no", "unknown")


class RotTb(NamedTuple):
    rot: int
    tb: int


@dataclass(frozen=True)
class Named:
    """A generator stabilized ``plus`` times positively, ``minus`` negatively."""

    gen: str
    plus: int = 0
    minus: int = 0


@dataclass(frozen=True)
class Generic:
    """A class determined by its classical invariants."""

    rot: int
    tb: int


LegClass = Union[Named, Generic]


@dataclass(frozen=True)
class Generator:
    id: str
    name: str
    rot: int
    tb: int

    @property
    def rot_tb(self) -> RotTb:
        return RotTb(self.rot, self.tb)


@dataclass(frozen=True)
class RewriteRule:
    """Named(src, a, b) with a >= da and b >= db rewrites toward ``dst``.

    ``dst`` is a generator id, or None for the invariant-determined Generic
    class.  Invariant consistency (da + db stabilizations worth of rot/tb
    drop) is enforced at atlas construction.
    """

    src: str
    da: int
    db: int
    dst: Optional[str]


@dataclass
class KnotAtlas:
    """Validated atlas; treat as immutable after construction.

    ``surgery_distinct`` holds the partial relation "Legendrian surgery on
    these two generators yields distinct contact manifolds"; the relation is
    read family-wise, i.e. it also answers for Named(g, a, b) vs
    Named(h, a, b) with equal stabilization counts.  ``both_signs_determined``
    records that stabilized n-copies whose components have all been
    stabilized both positively and negatively are determined by their
    classical invariants (true for the builtin twist atlases and the
    unknot, unknown in general).
    """

    name: str
    generators: tuple[Generator, ...]
    rules: tuple[RewriteRule, ...]
    tbb: int
    width_ceiling: int
    uniformly_thick: bool
    surgery_distinct: tuple[tuple[str, str, str], ...] = ()
    sigma_plus: tuple[str, ...] = ()
    sigma_minus: tuple[str, ...] = ()
    both_signs_determined: bool = False
    _by_id: dict = field(default_factory=dict, repr=False, compare=False)
    _rules_by_src: dict = field(default_factory=dict, repr=False, compare=False)
    _surgery: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._by_id = {g.id: g for g in self.generators}
        self._rules_by_src = {}
        for rule in self.rules:
            self._rules_by_src.setdefault(rule.src, []).append(rule)
        self._surgery = {
            frozenset((a, b)): value for (a, b, value) in self.surgery_distinct
        }

    def generator(self, gid: str) -> Generator:
        try:
            return self._by_id[gid]
        except KeyError:
            raise UnknownGenerator(f"atlas {self.name!r} has no generator {gid!r}")

    def has_generator(self, gid: str) -> bool:
        return gid in self._by_id

    def rules_for(self, gid: str) -> list[RewriteRule]:
        return self._rules_by_src.get(gid, [])

    def surgery_value(self, a: str, b: str) -> str:
        if a == b:
            return "no"  # surgery on one class compared with itself
        return self._surgery.get(frozenset((a, b)), "unknown")


# ---------------------------------------------------------------------------
# Construction and validation


def make_atlas(spec: dict) -> KnotAtlas:
    """Build and validate an atlas from a plain description dict.

    Expected keys: name, generators [{id, name, rot, tb}], rules
    [{src, da, db, dst}] with dst a generator id or "generic", tbb,
    width_ceiling, uniformly_thick, and optionally surgery_distinct
    [{a, b, value}], sigma_plus, sigma_minus, both_signs_determined.
    """
    gens = []
    seen = set()
    for g in spec.get("generators", []):
        gid = str(g["id"])
        if gid in seen:
            raise DuplicateId(f"generator id {gid!r} appears twice")
        seen.add(gid)
        rot, tb = int(g["rot"]), int(g["tb"])
        if (rot + tb) % 2 == 0:
            raise ParityViolation(f"generator {gid!r} has even rot + tb = {rot + tb}")
        gens.append(Generator(gid, str(g.get("name", gid)), rot, tb))
    by_id = {g.id: g for g in gens}

    rules = []
    for r in spec.get("rules", []):
        src, da, db = str(r["src"]), int(r["da"]), int(r["db"])
        dst = r["dst"]
        dst = None if dst in (None, "generic") else str(dst)
        if src not in by_id:
            raise UnknownGenerator(f"rule source {src!r} is not a generator")
        if da < 0 or db < 0 or da + db < 1:
            raise InvariantMismatch(f"rule ({src},{da},{db}) needs da,db >= 0, da+db >= 1")
        if dst is not None:
            if dst not in by_id:
                raise UnknownGenerator(f"rule target {dst!r} is not a generator")
            want = RotTb(by_id[src].rot + da - db, by_id[src].tb - da - db)
            got = by_id[dst].rot_tb
            if want != got:
                raise InvariantMismatch(
                    f"rule ({src},{da},{db})->{dst}: target invariants {tuple(got)} "
                    f"differ from {tuple(want)}"
                )
        rules.append(RewriteRule(src, da, db, dst))

    if not gens:
        raise InvariantMismatch("an atlas needs at least one generator")
    tbb = int(spec["tbb"])
    if tbb != max(g.tb for g in gens):
        raise MetadataInconsistent(
            f"tbb={tbb} but the maximal generator tb is {max(g.tb for g in gens)}"
        )
    width_ceiling = int(spec.get("width_ceiling", tbb))
    uniformly_thick = bool(spec.get("uniformly_thick", False))
    if uniformly_thick and width_ceiling != tbb:
        raise MetadataInconsistent(
            f"uniformly thick atlases must have width_ceiling == tbb, "
            f"got {width_ceiling} != {tbb}"
        )
    if width_ceiling < tbb:
        raise MetadataInconsistent(f"width_ceiling {width_ceiling} below tbb {tbb}")

    surgery = []
    for s in spec.get("surgery_distinct", []):
        a, b, value = str(s["a"]), str(s["b"]), str(s["value"])
        if a not in by_id or b not in by_id:
            raise UnknownGenerator(f"surgery_distinct names unknown generator in {s}")
        if value not in SURGERY_VALUES:
            raise InvariantMismatch(f"surgery_distinct value {value!r} not in {SURGERY_VALUES}")
        surgery.append((a, b, value))

    for sig in ("sigma_plus", "sigma_minus"):
        for gid in spec.get(sig, []):
            if str(gid) not in by_id:
                raise UnknownGenerator(f"{sig} names unknown generator {gid!r}")

    return KnotAtlas(
        name=str(spec.get("name", "atlas")),
        generators=tuple(gens),
        rules=tuple(rules),
        tbb=tbb,
        width_ceiling=width_ceiling,
        uniformly_thick=uniformly_thick,
        surgery_distinct=tuple(surgery),
        sigma_plus=tuple(str(x) for x in spec.get("sigma_plus", [])),
        sigma_minus=tuple(str(x) for x in spec.get("sigma_minus", [])),
        both_signs_determined=bool(spec.get("both_signs_determined", False)),
    )


def ceil_div(q: int, p: int) -> int:
    return -((-q) // p)


def twist_even_atlas(
    n: int,
    sigma_plus: Optional[list[int]] = None,
    sigma_minus: Optional[list[int]] = None,
    peak_surgery: str = "unknown",
    name: Optional[str] = None,
) -> KnotAtlas:
    """Atlas of the negative even twist knot with 2n crossings, n >= 2.

    Peaks P1..Pl at (0, 1) with l = ceil(n^2/2); persistent boundary edge
    families R1..Rk at (1, 0) and L1..Lk at (-1, 0) with k = ceil(n/2).
    A positive stabilization of a peak lands on a right-edge base via
    sigma_plus (default: index mod k), negatives go left via sigma_minus;
    one further stabilization of the wrong sign pushes an edge class into
    the invariant-determined interior.  ``peak_surgery`` optionally marks
    peak pairs as surgery-distinct ("yes"), which is the hypothesis needed
    for cables with slope in (0, 1).
    """
    if n < 2:
        raise UnsupportedKind(f"twist-even atlas needs n >= 2, got {n}")
    l = ceil_div(n * n, 2)
    k = ceil_div(n, 2)
    sp = sigma_plus if sigma_plus is not None else [((i - 1) % k) + 1 for i in range(1, l + 1)]
    sm = sigma_minus if sigma_minus is not None else [((i - 1) % k) + 1 for i in range(1, l + 1)]
    if len(sp) != l or len(sm) != l:
        raise InvariantMismatch(f"sigma maps must assign all {l} peaks")
    if sorted(set(sp)) != list(range(1, k + 1)) or sorted(set(sm)) != list(range(1, k + 1)):
        raise InvariantMismatch("sigma maps must be surjections onto the edge bases")

    generators = (
        [{"id": f"P{i}", "name": f"P{i}", "rot": 0, "tb": 1} for i in range(1, l + 1)]
        + [{"id": f"R{j}", "name": f"R{j}", "rot": 1, "tb": 0} for j in range(1, k + 1)]
        + [{"id": f"L{j}", "name": f"L{j}", "rot": -1, "tb": 0} for j in range(1, k + 1)]
    )
    rules = (
        [{"src": f"P{i}", "da": 1, "db": 0, "dst": f"R{sp[i - 1]}"} for i in range(1, l + 1)]
        + [{"src": f"P{i}", "da": 0, "db": 1, "dst": f"L{sm[i - 1]}"} for i in range(1, l + 1)]
        + [{"src": f"R{j}", "da": 0, "db": 1, "dst": "generic"} for j in range(1, k + 1)]
        + [{"src": f"L{j}", "da": 1, "db": 0, "dst": "generic"} for j in range(1, k + 1)]
    )
    edges = [f"R{j}" for j in range(1, k + 1)] + [f"L{j}" for j in range(1, k + 1)]
    surgery = [
        {"a": edges[i], "b": edges[j], "value": "yes"}
        for i in range(len(edges))
        for j in range(i + 1, len(edges))
    ]
    if peak_surgery not in SURGERY_VALUES:
        raise InvariantMismatch(f"peak_surgery must be one of {SURGERY_VALUES}")
    if peak_surgery != "unknown":
        surgery += [
            {"a": f"P{i}", "b": f"P{j}", "value": peak_surgery}
            for i in range(1, l + 1)
            for j in range(i + 1, l + 1)
        ]
    return make_atlas(
        {
            "name": name or f"twist-even-{n}" + ("-surgery" if peak_surgery == "yes" else ""),
            "generators": generators,
            "rules": rules,
            "tbb": 1,
            "width_ceiling": 1,
            "uniformly_thick": True,
            "surgery_distinct": surgery,
            "sigma_plus": [f"R{j}" for j in sp],
            "sigma_minus": [f"L{j}" for j in sm],
            "both_signs_determined": True,
        }
    )


def unknot_atlas() -> KnotAtlas:
    """The unknot: a single peak at (0, -1), everything below is generic."""
    return make_atlas(
        {
            "name": "unknot",
            "generators": [{"id": "U", "name": "U", "rot": 0, "tb": -1}],
            "rules": [
                {"src": "U", "da": 1, "db": 0, "dst": "generic"},
                {"src": "U", "da": 0, "db": 1, "dst": "generic"},
            ],
            "tbb": -1,
            "width_ceiling": -1,
            "uniformly_thick": False,
            "both_signs_determined": True,
        }
    )


def k_minus_5_atlas() -> KnotAtlas:
    """The -5 twist knot: two peaks A, B at (0, -3) that merge after one stab."""
    return make_atlas(
        {
            "name": "k-minus-5",
            "generators": [
                {"id": "A", "name": "A", "rot": 0, "tb": -3},
                {"id": "B", "name": "B", "rot": 0, "tb": -3},
            ],
            "rules": [
                {"src": "A", "da": 1, "db": 0, "dst": "generic"},
                {"src": "A", "da": 0, "db": 1, "dst": "generic"},
                {"src": "B", "da": 1, "db": 0, "dst": "generic"},
                {"src": "B", "da": 0, "db": 1, "dst": "generic"},
            ],
            "tbb": -3,
            "width_ceiling": -3,
            "uniformly_thick": True,
            "surgery_distinct": [{"a": "A", "b": "B", "value": "unknown"}],
        }
    )


def builtin_atlas(kind: str) -> KnotAtlas:
    """Builtin atlases by name: unknot, k-minus-5, twist-even-N[-surgery]."""
    if kind == "unknot":
        return unknot_atlas()
    if kind == "k-minus-5":
        return k_minus_5_atlas()
    if kind.startswith("twist-even-"):
        rest = kind[len("twist-even-"):]
        surgery = rest.endswith("-surgery")
        if surgery:
            rest = rest[: -len("-surgery")]
        if rest.isdigit() and int(rest) >= 2:
            return twist_even_atlas(int(rest), peak_surgery="yes" if surgery else "unknown")
    raise UnsupportedKind(f"no builtin atlas named {kind!r}")


BUILTIN_NAMES = ("unknot", "k-minus-5", "twist-even-2", "twist-even-3", "twist-even-4")


# ---------------------------------------------------------------------------
# Core operations


def invariants(atlas: KnotAtlas, c: LegClass) -> RotTb:
    if isinstance(c, Generic):
        return RotTb(c.rot, c.tb)
    g = atlas.generator(c.gen)
    return RotTb(g.rot + c.plus - c.minus, g.tb - c.plus - c.minus)


def normalize(atlas: KnotAtlas, c: LegClass) -> LegClass:
    """Apply rewrite rules until no rule triggers; Generic is already normal."""
    while isinstance(c, Named):
        atlas.generator(c.gen)  # raises UnknownGenerator early
        for rule in atlas.rules_for(c.gen):
            if c.plus >= rule.da and c.minus >= rule.db:
                if rule.dst is None:
                    rot, tb = invariants(atlas, c)
                    return Generic(rot, tb)
                c = Named(rule.dst, c.plus - rule.da, c.minus - rule.db)
                break
        else:
            return c
    return c


def stabilize(atlas: KnotAtlas, c: LegClass, sign: int, count: int = 1) -> LegClass:
    """Stabilize ``count`` times with ``sign`` (+1 or -1), then normalize."""
    if sign not in (POS, NEG):
        raise InvariantMismatch(f"sign must be +1 or -1, got {sign!r}")
    if count < 0:
        raise InvariantMismatch(f"count must be >= 0, got {count}")
    if isinstance(c, Generic):
        return Generic(c.rot + sign * count, c.tb - count)
    if sign == POS:
        return normalize(atlas, Named(c.gen, c.plus + count, c.minus))
    return normalize(atlas, Named(c.gen, c.plus, c.minus + count))


def is_equal(atlas: KnotAtlas, c1: LegClass, c2: LegClass) -> bool:
    """Equality of normal forms; Generics compare by invariants."""
    n1, n2 = normalize(atlas, c1), normalize(atlas, c2)
    if isinstance(n1, Generic) and isinstance(n2, Generic):
        return (n1.rot, n1.tb) == (n2.rot, n2.tb)
    return n1 == n2


def class_key(atlas: KnotAtlas, c: LegClass) -> tuple:
    """Deterministic sort/identity key of a normal form."""
    c = normalize(atlas, c)
    if isinstance(c, Named):
        order = {g.id: i for i, g in enumerate(atlas.generators)}
        return (0, order[c.gen], c.plus, c.minus)
    return (1, c.rot, c.tb)


def class_label(atlas: KnotAtlas, c: LegClass) -> str:
    c = normalize(atlas, c)
    if isinstance(c, Generic):
        return f"({c.rot},{c.tb})"
    name = atlas.generator(c.gen).name
    if c.plus == 0 and c.minus == 0:
        return name
    return f"{name}+{c.plus}-{c.minus}"


def _stab_counts_for(g: Generator, rot: int, tb: int) -> Optional[tuple[int, int]]:
    """The unique (a, b) with Named(g, a, b) at (rot, tb), if it exists."""
    total = g.tb - tb
    diff = rot - g.rot
    if total < 0 or (total + diff) % 2 != 0:
        return None
    a = (total + diff) // 2
    b = (total - diff) // 2
    if a < 0 or b < 0:
        return None
    return a, b


def classes_at_tb(atlas: KnotAtlas, tb: int) -> list[LegClass]:
    """All distinct classes of the atlas at one tb level, sorted."""
    found = {}
    for g in atlas.generators:
        total = g.tb - tb
        if total < 0:
            continue
        for a in range(total + 1):
            nf = normalize(atlas, Named(g.id, a, total - a))
            found[class_key(atlas, nf)] = nf
    return [found[k] for k in sorted(found)]


def classes_at(atlas: KnotAtlas, rot: int, tb: int) -> list[LegClass]:
    """All distinct classes of the atlas at one lattice point, sorted."""
    found = {}
    for g in atlas.generators:
        ab = _stab_counts_for(g, rot, tb)
        if ab is None:
            continue
        nf = normalize(atlas, Named(g.id, *ab))
        found[class_key(atlas, nf)] = nf
    return [found[k] for k in sorted(found)]


def peaks(atlas: KnotAtlas) -> list[Generator]:
    """Generators that are not the image of any stabilization."""
    targets = {rule.dst for rule in atlas.rules if rule.dst is not None}
    result = []
    for g in atlas.generators:
        if g.id in targets:
            continue
        reachable = False
        for h in atlas.generators:
            ab = _stab_counts_for(h, g.rot, g.tb)
            if ab is None or ab == (0, 0):
                continue
            if normalize(atlas, Named(h.id, *ab)) == Named(g.id, 0, 0):
                reachable = True
                break
        if not reachable:
            result.append(g)
    return result


def mountain_range(atlas: KnotAtlas, tb_min: int) -> MountainRange:
    """Multiplicities of distinct classes per (rot, tb) down to tb_min."""
    if tb_min > atlas.tbb:
        raise CutoffAbovePeak(f"tb_min={tb_min} above the peak row tb={atlas.tbb}")
    entries: dict[tuple[int, int], int] = {}
    labels: dict[tuple[int, int], tuple[str, ...]] = {}
    for tb in range(atlas.tbb, tb_min - 1, -1):
        by_point: dict[tuple[int, int], list[LegClass]] = {}
        for cls in classes_at_tb(atlas, tb):
            rot, _ = invariants(atlas, cls)
            by_point.setdefault((rot, tb), []).append(cls)
        for point, classes in by_point.items():
            entries[point] = len(classes)
            labels[point] = tuple(class_label(atlas, c) for c in classes)
    truncated = any(t == tb_min for (_, t) in entries)
    return MountainRange(entries=entries, tb_min=tb_min, labels=labels, truncated=truncated)


def destabilizations(atlas: KnotAtlas, c: LegClass, sign: int) -> list[LegClass]:
    """Classes one level up whose ``sign``-stabilization equals ``c``."""
    c = normalize(atlas, c)
    _, tb = invariants(atlas, c)
    if tb + 1 > atlas.tbb:
        return []
    out = []
    for cand in classes_at_tb(atlas, tb + 1):
        if is_equal(atlas, stabilize(atlas, cand, sign, 1), c):
            out.append(cand)
    return out


# ---------------------------------------------------------------------------
# Interchange format


def class_to_json(c: LegClass) -> dict:
    if isinstance(c, Named):
        return {"gen": c.gen, "plus": c.plus, "minus": c.minus}
    return {"rot": c.rot, "tb": c.tb}


def class_from_json(doc: dict) -> LegClass:
    if "gen" in doc:
        return Named(str(doc["gen"]), int(doc.get("plus", 0)), int(doc.get("minus", 0)))
    return Generic(int(doc["rot"]), int(doc["tb"]))


def atlas_to_json(atlas: KnotAtlas) -> dict:
    return {
        "name": atlas.name,
        "generators": [
            {"id": g.id, "name": g.name, "rot": g.rot, "tb": g.tb}
            for g in atlas.generators
        ],
        "rules": [
            {"src": r.src, "da": r.da, "db": r.db, "dst": r.dst if r.dst else "generic"}
            for r in atlas.rules
        ],
        "tbb": atlas.tbb,
        "width_ceiling": atlas.width_ceiling,
        "uniformly_thick": atlas.uniformly_thick,
        "surgery_distinct": [
            {"a": a, "b": b, "value": v} for (a, b, v) in atlas.surgery_distinct
        ],
        "sigma_plus": list(atlas.sigma_plus),
        "sigma_minus": list(atlas.sigma_minus),
        "both_signs_determined": atlas.both_signs_determined,
    }


def atlas_from_json(doc: dict) -> KnotAtlas:
    return make_atlas(doc)


def atlas_to_json_str(atlas: KnotAtlas) -> str:
    """Byte-stable serialization: sorted keys, fixed separators."""
    return json.dumps(atlas_to_json(atlas), sort_keys=True, indent=2) + "\n"
