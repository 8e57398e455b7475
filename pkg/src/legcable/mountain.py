"""Mountain ranges: multiplicities of isotopy classes over the (rot, tb) lattice."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParityViolation


@dataclass
class MountainRange:
    """Association from lattice points (rot, tb) to class multiplicities.

    Entries only occupy points with rot + tb odd.  ``tb_min`` records the
    cutoff row; ``truncated`` is set when families continue below it (for
    stabilization cones that is always the case once the bottom row is
    occupied).  ``labels`` optionally names the classes at a point.
    """

    entries: dict[tuple[int, int], int]
    tb_min: int
    labels: dict[tuple[int, int], tuple[str, ...]] = field(default_factory=dict)
    truncated: bool = True

    def __post_init__(self) -> None:
        for (rot, tb), mult in self.entries.items():
            if (rot + tb) % 2 == 0:
                raise ParityViolation(f"entry at ({rot}, {tb}) has even rot + tb")
            if mult < 1:
                raise InvalidMultiplicity(rot, tb, mult)

    def multiplicity(self, rot: int, tb: int) -> int:
        return self.entries.get((rot, tb), 0)

    def points(self) -> list[tuple[int, int]]:
        """Occupied lattice points, top row first, left to right."""
        return sorted(self.entries, key=lambda pt: (-pt[1], pt[0]))

    def row(self, tb: int) -> dict[int, int]:
        """Multiplicities of one tb row, keyed by rot."""
        return {r: m for (r, t), m in self.entries.items() if t == tb}

    def total(self) -> int:
        return sum(self.entries.values())

    def to_json(self) -> dict:
        doc = {
            "tb_min": self.tb_min,
            "truncated": self.truncated,
            "entries": [
                {"rot": r, "tb": t, "multiplicity": self.entries[(r, t)]}
                for (r, t) in self.points()
            ],
        }
        if self.labels:
            doc["labels"] = [
                {"rot": r, "tb": t, "classes": list(self.labels[(r, t)])}
                for (r, t) in sorted(self.labels, key=lambda pt: (-pt[1], pt[0]))
            ]
        return doc


class InvalidMultiplicity(ValueError):
    def __init__(self, rot: int, tb: int, mult: int) -> None:
        super().__init__(f"multiplicity {mult} at ({rot}, {tb}) must be >= 1")
