"""Enumerations used across models."""

from enum import Enum


class TokenKind(str, Enum):
    """Enum for the kind of a token in a decode sequence.

    ``BOS`` and ``EOS`` are the sentence boundary symbols that open and
    close every sequence.  ``PLACEHOLDER`` is the temporary slot created by
    placeholder insertion and replaced by a real token during filling.
    Everything else is ``REGULAR``.
    """

    REGULAR = "regular"
    BOS = "bos"
    EOS = "eos"
    PLACEHOLDER = "placeholder"


class DecodeMode(str, Enum):
    """Constraint enforcement level, one per ablation row.

    Each level includes all previous ones: ``NO_INSERT`` implies
    ``NO_DELETE`` which implies ``CONSTRAINT_INSERTION``.  The values are the
    CLI spellings; the long names are accepted as aliases.
    """

    BASELINE = "baseline"
    CONSTRAINT_INSERTION = "insert"
    NO_DELETE = "no-del"
    NO_INSERT = "no-ins"

    @classmethod
    def _missing_(cls, value: object) -> "DecodeMode | None":
        if isinstance(value, str):
            return _MODE_ALIASES.get(value.strip().lower())
        return None

    @property
    def rank(self) -> int:
        return _MODE_ORDER.index(self)

    def includes(self, other: "DecodeMode") -> bool:
        """Return True when this mode enables everything ``other`` enables."""
        return self.rank >= other.rank

    @property
    def label(self) -> str:
        """Row label used in report tables."""
        return _MODE_LABELS[self]


_MODE_ORDER = [
    DecodeMode.BASELINE,
    DecodeMode.CONSTRAINT_INSERTION,
    DecodeMode.NO_DELETE,
    DecodeMode.NO_INSERT,
]

_MODE_ALIASES = {
    "constraint-insertion": DecodeMode.CONSTRAINT_INSERTION,
    "no-delete": DecodeMode.NO_DELETE,
    "no-insert": DecodeMode.NO_INSERT,
}

_MODE_LABELS = {
    DecodeMode.BASELINE: "Baseline LevT",
    DecodeMode.CONSTRAINT_INSERTION: "+ Constr. Ins.",
    DecodeMode.NO_DELETE: "+ No Del.",
    DecodeMode.NO_INSERT: "+ No Ins.",
}


class Termination(str, Enum):
    """Why a decode loop stopped."""

    FIXPOINT = "fixpoint"
    ITERATION_CAP = "iteration-cap"
    LENGTH_LIMIT = "length-limit"


class MatchLevel(str, Enum):
    """Granularity at which constraint phrases are searched in outputs."""

    SUBWORD = "subword"
    WORD = "word"
