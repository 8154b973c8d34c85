"""Byte-pair encoding of target phrases and the ``@@`` joiner convention."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Optional

from loguru import logger
from subword_nmt.apply_bpe import BPE

from ..models.token import JOINER
from .error_handler import LoadError


def load_bpe_codes(path: str | Path) -> BPE:
    """Load a subword-nmt merges file."""
    try:
        with open(path, encoding="utf-8") as codes:
            bpe = BPE(codes, separator=JOINER)
    except OSError as exc:
        raise LoadError(str(path), f"cannot read BPE codes ({exc.strerror or exc})") from exc
    except (ValueError, IndexError) as exc:
        raise LoadError(str(path), f"malformed BPE codes: {exc}") from exc
    except SystemExit as exc:
        # subword-nmt exits on a merge line that is not two symbols
        raise LoadError(str(path), "malformed BPE codes") from exc
    logger.debug("Loaded {} BPE merges from {}", len(bpe.bpe_codes), path)
    return bpe


def segment_subwords(words: Iterable[str], bpe: Optional[BPE]) -> list[str]:
    """Split words into subwords; every non-final piece of a word ends in ``@@``.

    Without codes the words are returned as they are.
    """
    words = list(words)
    if bpe is None:
        return words
    return bpe.segment_tokens(words)


def join_subwords(tokens: Iterable[str]) -> list[str]:
    """Glue every token ending in ``@@`` to its successor."""
    words: list[str] = []
    pending = ""
    for token in tokens:
        if token.endswith(JOINER):
            pending += token[: -len(JOINER)]
            continue
        words.append(pending + token)
        pending = ""
    if pending:
        words.append(pending)
    return words
