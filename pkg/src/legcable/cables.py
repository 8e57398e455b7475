"""Slope-regime arithmetic and the three cable constructions.

Greater-sloped cables (q/p above the width ceiling) come with a p-by-p
diamond of stabilization classes over the underlying knot; integer-sloped
lesser cables are twisted n-copies; non-integer lesser-sloped cables of
uniformly thick knot types come as +/- standard cables of the classes in
the tb = ceil(q/p) window.  Only exact integer arithmetic is used.

Sign conventions.  The cable slope is always the actual pair (p, q) with
gcd(p, q) = 1 and p >= 1; q may be negative.  A greater cable of u has
tb = pq - (q - p tb(u)) and rot = p rot(u); the rotation number p rot(u)
is forced by the stabilization relation S_+/-^p(cable(u)) = cable(S_+/-(u))
and by the p = 1 case, where the cable is the core.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd

from .atlas import (
    KnotAtlas,
    LegClass,
    Named,
    NEG,
    POS,
    RotTb,
    ceil_div,
    class_label,
    classes_at_tb,
    invariants,
    normalize,
    peaks,
    stabilize,
)
from .errors import NotReduced, SlopeMismatch, WrongRegime, WrongWindow
from .mountain import MountainRange


class Regime(Enum):
    GREATER = "greater"
    INTEGER_LESSER = "integer-lesser"
    NONINTEGER_LESSER = "noninteger-lesser"
    UNSUPPORTED_WINDOW = "unsupported-window"


def check_slope(p: int, q: int) -> None:
    if p < 1 or gcd(p, q) != 1:
        raise NotReduced(f"slope ({p},{q}) must have p >= 1 and gcd(p,q) = 1")


def regime(atlas: KnotAtlas, p: int, q: int) -> Regime:
    """Classify the cabling slope q/p against the atlas metadata."""
    check_slope(p, q)
    if q > p * atlas.width_ceiling:
        return Regime.GREATER
    if p == 1 and q <= atlas.tbb:
        return Regime.INTEGER_LESSER
    if p > 1 and q < p * atlas.tbb and atlas.uniformly_thick:
        return Regime.NONINTEGER_LESSER
    return Regime.UNSUPPORTED_WINDOW


# ---------------------------------------------------------------------------
# Greater-sloped cables


@dataclass(frozen=True)
class CableClass:
    """A greater cable of ``u`` with diamond coordinates (i, j) in [0, p)^2."""

    u: LegClass
    p: int
    q: int
    i: int = 0
    j: int = 0


def greater_cable(atlas: KnotAtlas, u: LegClass, p: int, q: int) -> CableClass:
    if regime(atlas, p, q) is not Regime.GREATER:
        raise WrongRegime(f"({p},{q}) is not a greater slope for {atlas.name}")
    return CableClass(normalize(atlas, u), p, q, 0, 0)


def cable_invariants(atlas: KnotAtlas, c: CableClass) -> RotTb:
    rot_u, tb_u = invariants(atlas, c.u)
    tb = c.p * c.q - (c.q - c.p * tb_u) - c.i - c.j
    rot = c.p * rot_u + c.i - c.j
    return RotTb(rot, tb)


def cable_stabilize(atlas: KnotAtlas, c: CableClass, sign: int, count: int = 1) -> CableClass:
    """Stabilize; every p same-sign stabilizations push into the underlying knot."""
    u, i, j = c.u, c.i, c.j
    if sign == POS:
        i += count
        while i >= c.p:
            i -= c.p
            u = stabilize(atlas, u, POS, 1)
    else:
        j += count
        while j >= c.p:
            j -= c.p
            u = stabilize(atlas, u, NEG, 1)
    return CableClass(normalize(atlas, u), c.p, c.q, i, j)


def cable_equal(atlas: KnotAtlas, c1: CableClass, c2: CableClass) -> bool:
    """Diamonds of non-isotopic underlying knots are disjoint."""
    if (c1.p, c1.q) != (c2.p, c2.q):
        raise SlopeMismatch(f"({c1.p},{c1.q}) vs ({c2.p},{c2.q})")
    from .atlas import is_equal

    return is_equal(atlas, c1.u, c2.u) and c1.i == c2.i and c1.j == c2.j


def cable_label(atlas: KnotAtlas, c: CableClass) -> str:
    base = f"{class_label(atlas, c.u)}({c.p},{c.q})"
    if c.i == 0 and c.j == 0:
        return base
    return f"{base}+{c.i}-{c.j}"


def cable_mountain_range(atlas: KnotAtlas, p: int, q: int, tb_min: int) -> MountainRange:
    """Distinct greater-cable classes per lattice point down to tb_min."""
    if regime(atlas, p, q) is not Regime.GREATER:
        raise WrongRegime(f"({p},{q}) is not a greater slope for {atlas.name}")
    entries: dict[tuple[int, int], int] = {}
    labels: dict[tuple[int, int], tuple[str, ...]] = {}
    by_point: dict[tuple[int, int], list[str]] = {}
    # Underlying classes with tb_u below this floor cannot reach tb_min even
    # with i = j = 0.
    floor = ceil_div(tb_min - p * q + q, p)
    tb_u = atlas.tbb
    while tb_u >= floor:
        for u in classes_at_tb(atlas, tb_u):
            for i in range(p):
                for j in range(p):
                    c = CableClass(u, p, q, i, j)
                    rot, tb = cable_invariants(atlas, c)
                    if tb < tb_min:
                        continue
                    by_point.setdefault((rot, tb), []).append(cable_label(atlas, c))
        tb_u -= 1
    for point, names in by_point.items():
        entries[point] = len(names)
        labels[point] = tuple(sorted(names))
    truncated = any(t == tb_min for (_, t) in entries)
    return MountainRange(entries=entries, tb_min=tb_min, labels=labels, truncated=truncated)


# ---------------------------------------------------------------------------
# Integer lesser-sloped cables (twisted n-copies)


@dataclass(frozen=True)
class IntegerLinkBase:
    """The t-twisted n-copy of L: the (n, nq)-cable with q = tb(L) - t.

    Component 1 is the core; components 2..n are ruling curves of slope
    tb(L) - t, each in the class of L stabilized t times with both signs,
    so their invariants are (rot(L), tb(L) - 2t).  Components are ordered
    cyclically as they occur on the torus, in construction order.
    """

    L: LegClass
    n: int
    t: int
    q: int


def twisted_copy(atlas: KnotAtlas, L: LegClass, n: int, t: int) -> IntegerLinkBase:
    if n < 1 or t < 0:
        raise WrongRegime(f"twisted copy needs n >= 1 and t >= 0, got n={n}, t={t}")
    L = normalize(atlas, L)
    _, tb = invariants(atlas, L)
    return IntegerLinkBase(L=L, n=n, t=t, q=tb - t)


def integer_component_invariants(atlas: KnotAtlas, base: IntegerLinkBase) -> list[RotTb]:
    rot, tb = invariants(atlas, base.L)
    return [RotTb(rot, tb)] + [RotTb(rot, tb - 2 * base.t)] * (base.n - 1)


# ---------------------------------------------------------------------------
# Non-integer lesser-sloped cables


@dataclass(frozen=True)
class LesserClass:
    """A +/- standard (p, q)-cable of a tb = ceil(q/p) window class.

    Before stabilization tb = pq and rot = p rot(base) + sign (p tb(base) - q).
    """

    base: LegClass
    sign: int
    p: int
    q: int
    a: int = 0
    b: int = 0


def lesser_thresholds(atlas: KnotAtlas, p: int, q: int) -> tuple[int, int]:
    """(theta0, theta1) for the tb = ceil(q/p) window; theta0 + theta1 = p."""
    tb_w = ceil_div(q, p)
    theta0 = p * tb_w - q
    return theta0, p - theta0


def lesser_cable(atlas: KnotAtlas, base: LegClass, sign: int, p: int, q: int) -> LesserClass:
    if regime(atlas, p, q) is not Regime.NONINTEGER_LESSER:
        raise WrongRegime(f"({p},{q}) is not a non-integer lesser slope for {atlas.name}")
    base = normalize(atlas, base)
    _, tb = invariants(atlas, base)
    if tb != ceil_div(q, p):
        raise WrongWindow(f"base tb={tb} but the window is tb={ceil_div(q, p)}")
    if sign not in (POS, NEG):
        raise WrongWindow(f"sign must be +1 or -1, got {sign!r}")
    return LesserClass(base=base, sign=sign, p=p, q=q)


def lesser_invariants(atlas: KnotAtlas, c: LesserClass) -> RotTb:
    rot_b, tb_b = invariants(atlas, c.base)
    rot = c.p * rot_b + c.sign * (c.p * tb_b - c.q) + c.a - c.b
    tb = c.p * c.q - c.a - c.b
    return RotTb(rot, tb)


def lesser_stabilize(atlas: KnotAtlas, c: LesserClass, sign: int, count: int = 1) -> LesserClass:
    if sign == POS:
        return LesserClass(c.base, c.sign, c.p, c.q, c.a + count, c.b)
    return LesserClass(c.base, c.sign, c.p, c.q, c.a, c.b + count)


def lesser_canonical_form(atlas: KnotAtlas, c: LesserClass):
    """The deeper canonical presentation of a stabilized lesser cable.

    Returns the n = 1 link-level form: still a standard cable below the
    thresholds, a ruling form over a (possibly stabilized) class beyond them.
    """
    from . import links

    one = links.LesserLink(links.DIVIDE, c.base, c.sign, 1, c.p, c.q, ((c.a, c.b),))
    return links.canonicalize(atlas, one)


def lesser_mountain_range(atlas: KnotAtlas, p: int, q: int, tb_min: int) -> MountainRange:
    """Distinct lesser-cable classes per lattice point, after all merges.

    Delegates to the link module's canonical forms with n = 1; the peak row
    tb = pq carries exactly two classes per window class.
    """
    from . import links

    return links.lesser_knot_mountain_range(atlas, p, q, tb_min)


def window_classes(atlas: KnotAtlas, p: int, q: int) -> list[LegClass]:
    """The distinct classes at tb = ceil(q/p), the lesser-cable bases."""
    return classes_at_tb(atlas, ceil_div(q, p))


def greater_bases(atlas: KnotAtlas, p: int, q: int) -> list[CableClass]:
    """Standard cables of the non-destabilizable classes (the diamond tops)."""
    return [greater_cable(atlas, Named(g.id), p, q) for g in peaks(atlas)]
