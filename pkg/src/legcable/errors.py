"""Exception types shared across the engine.

Every error raised on purpose derives from EngineError so callers (and the
CLI) can separate engine-level validation failures from genuine bugs.
"""


class EngineError(Exception):
    """Base class for all engine errors."""


class DuplicateId(EngineError):
    """Two generators in one atlas share an id."""


class InvariantMismatch(EngineError):
    """A rewrite rule or constructed value violates (rot, tb) bookkeeping."""


class ParityViolation(EngineError):
    """rot + tb must be odd for every class handled by this engine."""


class MetadataInconsistent(EngineError):
    """Atlas metadata (tbb, width ceiling, thickness flag) disagrees."""


class UnsupportedKind(EngineError):
    """Unknown builtin atlas name."""


class UnknownGenerator(EngineError):
    """A class refers to a generator id the atlas does not define."""


class CutoffAbovePeak(EngineError):
    """Mountain-range cutoff lies above the atlas peak row."""


class NotReduced(EngineError):
    """Cabling slope (p, q) must satisfy p >= 1 and gcd(p, q) == 1."""


class WrongRegime(EngineError):
    """Operation called with a slope outside its regime."""


class WrongWindow(EngineError):
    """Lesser-cable base class does not sit at tb = ceil(q/p)."""


class SlopeMismatch(EngineError):
    """Cable classes compared across different slopes."""


class RegimeMismatch(EngineError):
    """Links compared across regimes, slopes, or component counts."""


class LengthMismatch(EngineError):
    """Stabilization vector length differs from the component count."""


class BadIndex(EngineError):
    """Component index out of range."""


class NotAPermutation(EngineError):
    """Sequence passed as a permutation is not one."""


class KindMismatch(EngineError):
    """Oracle asked to compare objects of different kinds or slope data."""


class BudgetExceeded(EngineError):
    """Search budget exhausted before the answer was certain."""


class EmptyRange(EngineError):
    """Renderer called on a mountain range with no entries."""
