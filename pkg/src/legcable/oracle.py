"""Brute-force bounded-depth ground truth for the greedy deciders.

``closure_equal`` runs a breadth-first search over every identification the
engine's data admits -- atlas rewrite rules in both directions, diamond
pushes of greater cables, twisted-copy presentation moves, and the lesser
threshold rewrites -- operating on raw presentations rather than normal
forms, so it is independent of the greedy canonicalizations it validates.

Because the move sets generate the full isotopy relation only for atlas
classes, greater cables, and greater links, a disjoint fully-explored pair
is reported NotIsotopic only in those regimes (or when component invariants
already differ).  Integer and lesser pairs whose distinctness rests on the
classification's side conditions come back Unknown: the oracle never
overclaims, since it is the trust anchor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .atlas import (
    Generic,
    KnotAtlas,
    LegClass,
    Named,
    NEG,
    POS,
    _stab_counts_for,
    ceil_div,
    class_label,
    invariants,
    peaks,
)
from .cables import CableClass, cable_invariants, lesser_thresholds, window_classes
from .errors import BudgetExceeded, KindMismatch
from .links import (
    DIVIDE,
    GreaterLink,
    IntegerLink,
    LesserLink,
    RULING,
    Verdict,
    component_invariants,
    int_state,
    integer_moves,
)
from .mountain import MountainRange


@dataclass(frozen=True)
class SearchBudget:
    """Caps for closure searches; exceeding them yields Unknown, never a guess."""

    depth: int = 64
    node_cap: int = 50000


# ---------------------------------------------------------------------------
# Raw presentation moves


def _raw_stab(c: LegClass, sign: int) -> LegClass:
    if isinstance(c, Generic):
        return Generic(c.rot + sign, c.tb - 1)
    if sign == POS:
        return Named(c.gen, c.plus + 1, c.minus)
    return Named(c.gen, c.plus, c.minus + 1)


def _raw_destabs(atlas: KnotAtlas, c: LegClass, sign: int) -> list[LegClass]:
    # Destabilizations across rule identifications are reached by composing
    # backward rule moves with these in-cone destabilizations; spurious
    # Generic presentations this creates are dead ends, never bridges.  No
    # class sits above tbb, so lifts past it are cut to keep orbits finite.
    if isinstance(c, Generic):
        if c.tb + 1 > atlas.tbb:
            return []
        return [Generic(c.rot - sign, c.tb + 1)]
    if sign == POS and c.plus >= 1:
        return [Named(c.gen, c.plus - 1, c.minus)]
    if sign == NEG and c.minus >= 1:
        return [Named(c.gen, c.plus, c.minus - 1)]
    return []


def legclass_moves(atlas: KnotAtlas, c: LegClass) -> list[LegClass]:
    """One rewrite step, forward or backward."""
    out = []
    if isinstance(c, Named):
        for rule in atlas.rules_for(c.gen):
            if c.plus >= rule.da and c.minus >= rule.db:
                if rule.dst is None:
                    out.append(Generic(*invariants(atlas, c)))
                else:
                    out.append(Named(rule.dst, c.plus - rule.da, c.minus - rule.db))
    rot, tb = invariants(atlas, c)
    for rule in atlas.rules:
        if rule.dst is None:
            if isinstance(c, Generic):
                ab = _stab_counts_for(atlas.generator(rule.src), rot, tb)
                if ab is not None and ab[0] >= rule.da and ab[1] >= rule.db:
                    out.append(Named(rule.src, *ab))
        elif isinstance(c, Named) and rule.dst == c.gen:
            out.append(Named(rule.src, c.plus + rule.da, c.minus + rule.db))
    return out


def _cable_moves(atlas: KnotAtlas, state: CableClass) -> list[CableClass]:
    u, p, q, i, j = state.u, state.p, state.q, state.i, state.j
    out = [CableClass(u2, p, q, i, j) for u2 in legclass_moves(atlas, u)]
    if i >= p:
        out.append(CableClass(_raw_stab(u, POS), p, q, i - p, j))
    if j >= p:
        out.append(CableClass(_raw_stab(u, NEG), p, q, i, j - p))
    for x in _raw_destabs(atlas, u, POS):
        out.append(CableClass(x, p, q, i + p, j))
    for x in _raw_destabs(atlas, u, NEG):
        out.append(CableClass(x, p, q, i, j + p))
    return out


def _greater_state(link: GreaterLink) -> tuple:
    return ("greater", link.u, link.p, link.q, tuple(sorted(link.vec)))


def _greater_moves(atlas: KnotAtlas, state: tuple) -> list[tuple]:
    _, u, p, q, vec = state
    out = [("greater", u2, p, q, vec) for u2 in legclass_moves(atlas, u)]
    if all(a >= p for a, _ in vec):
        pushed = tuple(sorted((a - p, b) for a, b in vec))
        out.append(("greater", _raw_stab(u, POS), p, q, pushed))
    if all(b >= p for _, b in vec):
        pushed = tuple(sorted((a, b - p) for a, b in vec))
        out.append(("greater", _raw_stab(u, NEG), p, q, pushed))
    lifted_a = tuple(sorted((a + p, b) for a, b in vec))
    for x in _raw_destabs(atlas, u, POS):
        out.append(("greater", x, p, q, lifted_a))
    lifted_b = tuple(sorted((a, b + p) for a, b in vec))
    for x in _raw_destabs(atlas, u, NEG):
        out.append(("greater", x, p, q, lifted_b))
    return out


def _lesser_state(link: LesserLink) -> tuple:
    return ("lesser", link.form, link.base, link.sign, link.p, link.q,
            tuple(sorted(link.vec)))


def _lesser_moves(atlas: KnotAtlas, state: tuple) -> list[tuple]:
    _, form, base, sign, p, q, vec = state
    window = ceil_div(q, p)
    th0, th1 = lesser_thresholds(atlas, p, q)
    out = [("lesser", form, b2, sign, p, q, vec) for b2 in legclass_moves(atlas, base)]
    _, tb_b = invariants(atlas, base)

    def rul(newbase, newvec):
        return ("lesser", RULING, newbase, 0, p, q, tuple(sorted(newvec)))

    def div(newbase, newsign, newvec):
        return ("lesser", DIVIDE, newbase, newsign, p, q, tuple(sorted(newvec)))

    if form == DIVIDE:
        if sign == POS:
            if all(b >= th0 for _, b in vec):
                out.append(rul(base, ((a, b - th0) for a, b in vec)))
            if all(a >= th1 for a, _ in vec):
                out.append(rul(_raw_stab(base, POS), ((a - th1, b) for a, b in vec)))
        else:
            if all(a >= th0 for a, _ in vec):
                out.append(rul(base, ((a - th0, b) for a, b in vec)))
            if all(b >= th1 for _, b in vec):
                out.append(rul(_raw_stab(base, NEG), ((a, b - th1) for a, b in vec)))
        return out
    # ruling form
    if tb_b == window:
        out.append(div(base, POS, ((a, b + th0) for a, b in vec)))
        out.append(div(base, NEG, ((a + th0, b) for a, b in vec)))
        if all(a >= th1 for a, _ in vec):
            out.append(rul(_raw_stab(base, POS), ((a - th1, b + th0) for a, b in vec)))
        if all(b >= th1 for _, b in vec):
            out.append(rul(_raw_stab(base, NEG), ((a + th0, b - th1) for a, b in vec)))
    else:
        if all(a >= p for a, _ in vec):
            out.append(rul(_raw_stab(base, POS), ((a - p, b) for a, b in vec)))
        if all(b >= p for _, b in vec):
            out.append(rul(_raw_stab(base, NEG), ((a, b - p) for a, b in vec)))
        for x in _raw_destabs(atlas, base, POS):
            _, tb_x = invariants(atlas, x)
            if tb_x == window:
                out.append(div(x, POS, ((a + th1, b) for a, b in vec)))
                if all(b >= th0 for _, b in vec):
                    out.append(rul(x, ((a + th1, b - th0) for a, b in vec)))
            else:
                out.append(rul(x, ((a + p, b) for a, b in vec)))
        for x in _raw_destabs(atlas, base, NEG):
            _, tb_x = invariants(atlas, x)
            if tb_x == window:
                out.append(div(x, NEG, ((a, b + th1) for a, b in vec)))
                if all(a >= th0 for a, _ in vec):
                    out.append(rul(x, ((a - th0, b + th1) for a, b in vec)))
            else:
                out.append(rul(x, ((a, b + p) for a, b in vec)))
    return out


# ---------------------------------------------------------------------------
# Orbit search


def _dispatch(atlas, obj):
    """(state, moves function, kind tag, slope signature) for an object."""
    if isinstance(obj, (Named, Generic)):
        return obj, legclass_moves, "class", ()
    if isinstance(obj, CableClass):
        return obj, _cable_moves, "cable", (obj.p, obj.q)
    if isinstance(obj, GreaterLink):
        return _greater_state(obj), _greater_moves, "greater-link", (obj.n, obj.p, obj.q)
    if isinstance(obj, IntegerLink):
        state = int_state(atlas, obj.base.L, obj.base.t, obj.vec)
        return state, integer_moves, "integer-link", (obj.base.n, obj.base.q)
    if isinstance(obj, LesserLink):
        return _lesser_state(obj), _lesser_moves, "lesser-link", (obj.n, obj.p, obj.q)
    raise KindMismatch(f"cannot search over {type(obj).__name__}")


def _orbit(atlas, state, moves, budget: SearchBudget):
    """(parents map over the orbit, fully-explored flag)."""
    parents = {state: None}
    frontier = [state]
    complete = True
    for _ in range(budget.depth):
        if not frontier:
            break
        nxt = []
        for s in frontier:
            for m in moves(atlas, s):
                if m in parents:
                    continue
                if len(parents) >= budget.node_cap:
                    complete = False
                    continue
                parents[m] = s
                nxt.append(m)
        frontier = nxt
    else:
        if frontier:
            complete = False
    return parents, complete


def _path(parents, state) -> list:
    out = []
    while state is not None:
        out.append(state)
        state = parents[state]
    return list(reversed(out))


def _state_label(atlas, state) -> str:
    # raw presentation labels: the path must show the states as explored
    if isinstance(state, Named):
        return f"{state.gen}+{state.plus}-{state.minus}"
    if isinstance(state, Generic):
        return f"({state.rot},{state.tb})"
    return repr(state)


def closure_equal(atlas, obj1, obj2, budget: Optional[SearchBudget] = None) -> Verdict:
    """Ground-truth equality by bidirectional rewrite-closure search."""
    budget = budget or SearchBudget()
    s1, moves1, kind1, sig1 = _dispatch(atlas, obj1)
    s2, moves2, kind2, sig2 = _dispatch(atlas, obj2)
    if kind1 != kind2 or sig1 != sig2:
        raise KindMismatch(f"{kind1}{sig1} vs {kind2}{sig2}")
    orbit1, ok1 = _orbit(atlas, s1, moves1, budget)
    if s2 in orbit1:
        path = [_state_label(atlas, s) for s in _path(orbit1, s2)]
        return Verdict.yes("rewrite path found", {"path": path})
    orbit2, ok2 = _orbit(atlas, s2, moves2, budget)
    if orbit1.keys() & orbit2.keys():
        return Verdict.yes("orbits intersect")
    if not ok1 or not ok2:
        return Verdict.maybe("budget exceeded before both orbits were explored")
    if kind1 in ("class", "cable", "greater-link"):
        return Verdict.no("orbits disjoint and fully explored")
    if kind1 == "integer-link":
        if _inv_key(atlas, obj1) != _inv_key(atlas, obj2):
            return Verdict.no("component invariants differ")
        if not any(s[1] == 0 for s in orbit1) and not any(s[1] == 0 for s in orbit2):
            return Verdict.no(
                "orbits disjoint, fully explored, and away from the n-copy sector"
            )
        return Verdict.maybe(
            "orbits disjoint but the n-copy sector merges lie outside the move set"
        )
    if _inv_key(atlas, obj1) != _inv_key(atlas, obj2):
        return Verdict.no("component invariants differ")
    return Verdict.maybe(
        "orbits disjoint; distinctness of lesser cables rests on side conditions "
        "outside the move set"
    )


def _inv_key(atlas, obj) -> tuple:
    if isinstance(obj, (Named, Generic)):
        return tuple(invariants(atlas, obj))
    if isinstance(obj, CableClass):
        return tuple(cable_invariants(atlas, obj))
    return tuple(sorted(component_invariants(atlas, obj)))


def closure_report(atlas, pairs, budget: Optional[SearchBudget] = None) -> list[dict]:
    """Batch interface: one {input, verdict, path-witness} entry per pair."""
    out = []
    for obj1, obj2 in pairs:
        verdict = closure_equal(atlas, obj1, obj2, budget)
        out.append(
            {
                "input": [repr(obj1), repr(obj2)],
                "verdict": verdict.kind,
                "path-witness": (verdict.witness or {}).get("path"),
            }
        )
    return out


# ---------------------------------------------------------------------------
# Confluence


@dataclass
class ConfluenceReport:
    atlas: str
    depth: int
    divergences: list

    @property
    def ok(self) -> bool:
        return not self.divergences

    def to_json(self) -> dict:
        return {
            "atlas": self.atlas,
            "depth": self.depth,
            "ok": self.ok,
            "divergences": self.divergences,
        }


def _all_normal_forms(atlas, c: LegClass, memo: dict) -> frozenset:
    """Normal forms over every maximal rewrite sequence from c."""
    if c in memo:
        return memo[c]
    nexts = []
    if isinstance(c, Named):
        for rule in atlas.rules_for(c.gen):
            if c.plus >= rule.da and c.minus >= rule.db:
                if rule.dst is None:
                    nexts.append(Generic(*invariants(atlas, c)))
                else:
                    nexts.append(Named(rule.dst, c.plus - rule.da, c.minus - rule.db))
    if not nexts:
        memo[c] = frozenset([c])
        return memo[c]
    memo[c] = frozenset().union(*(_all_normal_forms(atlas, n, memo) for n in nexts))
    return memo[c]


def check_confluence(atlas, budget: Optional[SearchBudget] = None) -> ConfluenceReport:
    """Verify every bounded presentation has a unique normal form."""
    budget = budget or SearchBudget(depth=8)
    memo: dict = {}
    divergences = []
    for g in atlas.generators:
        for total in range(budget.depth + 1):
            for a in range(total + 1):
                start = Named(g.id, a, total - a)
                forms = _all_normal_forms(atlas, start, memo)
                if len(forms) > 1:
                    divergences.append(
                        {
                            "input": f"{g.id}+{a}-{total - a}",
                            "normal_forms": sorted(class_label(atlas, f) for f in forms),
                        }
                    )
    return ConfluenceReport(atlas=atlas.name, depth=budget.depth, divergences=divergences)


# ---------------------------------------------------------------------------
# Brute-force mountain ranges


def _quotient_count(atlas, presentations, moves, budget) -> int:
    """Number of closure components among the given presentations."""
    remaining = list(presentations)
    count = 0
    seen: set = set()
    for pres in remaining:
        if pres in seen:
            continue
        orbit, complete = _orbit(atlas, pres, moves, budget)
        if not complete:
            raise BudgetExceeded("orbit search exceeded the budget")
        seen.update(orbit.keys())
        count += 1
    return count


def brute_mountain_range(atlas, tb_min: int, budget: Optional[SearchBudget] = None) -> MountainRange:
    """Atlas mountain range recomputed from peak cones and rewrite closure."""
    budget = budget or SearchBudget()
    buckets: dict[tuple[int, int], list] = {}
    for g in peaks(atlas):
        for total in range(g.tb - tb_min + 1):
            for a in range(total + 1):
                pres = Named(g.id, a, total - a)
                rot, tb = invariants(atlas, pres)
                buckets.setdefault((rot, tb), []).append(pres)
    entries = {
        point: _quotient_count(atlas, pres_list, legclass_moves, budget)
        for point, pres_list in buckets.items()
    }
    truncated = any(t == tb_min for (_, t) in entries)
    return MountainRange(entries=entries, tb_min=tb_min, truncated=truncated)


def brute_cable_mountain_range(
    atlas, p: int, q: int, tb_min: int, budget: Optional[SearchBudget] = None
) -> MountainRange:
    """Greater-cable range from stabilizations of peak cables plus closure."""
    budget = budget or SearchBudget()
    buckets: dict[tuple[int, int], list] = {}
    for g in peaks(atlas):
        top = CableClass(Named(g.id), p, q, 0, 0)
        _, tb_top = cable_invariants(atlas, top)
        for i in range(tb_top - tb_min + 1):
            for j in range(tb_top - tb_min - i + 1):
                pres = CableClass(Named(g.id), p, q, i, j)
                rot, tb = cable_invariants(atlas, pres)
                if tb < tb_min:
                    continue
                buckets.setdefault((rot, tb), []).append(pres)
    entries = {
        point: _quotient_count(atlas, pres_list, _cable_moves, budget)
        for point, pres_list in buckets.items()
    }
    truncated = any(t == tb_min for (_, t) in entries)
    return MountainRange(entries=entries, tb_min=tb_min, truncated=truncated)


def brute_lesser_mountain_range(
    atlas, p: int, q: int, tb_min: int, budget: Optional[SearchBudget] = None
) -> MountainRange:
    """Lesser-cable knot range from stabilized standard cables plus closure."""
    budget = budget or SearchBudget()
    buckets: dict[tuple[int, int], list] = {}
    peak_tb = p * q
    for w in window_classes(atlas, p, q):
        for sign in (POS, NEG):
            for total in range(peak_tb - tb_min + 1):
                for a in range(total + 1):
                    pres = ("lesser", DIVIDE, w, sign, p, q, ((a, total - a),))
                    rot = _lesser_pres_rot(atlas, pres)
                    tb = peak_tb - total
                    buckets.setdefault((rot, tb), []).append(pres)
    entries = {
        point: _quotient_count(atlas, pres_list, _lesser_moves, budget)
        for point, pres_list in buckets.items()
    }
    truncated = any(t == tb_min for (_, t) in entries)
    return MountainRange(entries=entries, tb_min=tb_min, truncated=truncated)


def _lesser_pres_rot(atlas, state) -> int:
    _, form, base, sign, p, q, vec = state
    rot_b, tb_b = invariants(atlas, base)
    a, b = vec[0]
    if form == DIVIDE:
        return p * rot_b + sign * (p * tb_b - q) + a - b
    return p * rot_b + a - b
