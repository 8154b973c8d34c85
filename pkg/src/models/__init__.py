"""Expose commonly used model classes at the package level.

Importing these classes here allows consumers to write concise imports like::

    from src.models import Constraint, DecodeState, DecodeResult

Hot-path decode values are frozen dataclasses; records that are read from or
written to files are Pydantic models.
"""

from .decode_result import DecodeResult  # noqa: F401
from .decode_state import DecodeState  # noqa: F401
from .edit_script import EditScript  # noqa: F401
from .enums import DecodeMode, MatchLevel, Termination, TokenKind  # noqa: F401
from .eval_report import BenchReport, EvalReport, ModeSpeed  # noqa: F401
from .term_dictionary import (  # noqa: F401
    ConstraintRecord,
    ConstraintSet,
    DictionaryEntry,
    ExtractionSummary,
    TermDictionary,
)
from .token import BOS, EOS, PLH, Constraint, MaskEntry, Token, make_constraints, regular_tokens  # noqa: F401
