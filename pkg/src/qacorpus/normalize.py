"""Arabic text canonicalization and tokenization.

Web pages spell the same Arabic word many ways: with or without short
vowels, with hamza seated on different carriers, with final ta marbuta
or ha. Matching answers and keywords across pages only works if both
sides are folded onto one canonical form first, so every comparison in
this package goes through :func:`normalize_text`.
"""
from __future__ import annotations

import re
import string
import unicodedata
from dataclasses import dataclass

# Short vowels, shadda and sukun (U+064B..U+0652). Removed outright.
_DIACRITICS = re.compile("[ً-ْ]")

_TATWEEL = "ـ"

# Orthographic folding: hamza carriers onto bare alef, alef maksura onto
# ya, ta marbuta onto ha, hamza on waw/ya onto the carrier letter.
_FOLD = str.maketrans({
    "أ": "ا",  # أ -> ا
    "إ": "ا",  # إ -> ا
    "آ": "ا",  # آ -> ا
    "ٱ": "ا",  # ٱ -> ا
    "ى": "ي",  # ى -> ي
    "ة": "ه",  # ة -> ه
    "ؤ": "و",  # ؤ -> و
    "ئ": "ي",  # ئ -> ي
})

_WS_RUN = re.compile(r"\s+")

_ASCII_PUNCT = frozenset(string.punctuation)


def normalize_text(s: str) -> str:
    """Fold *s* onto its canonical comparison form.

    Applied in order: drop diacritics, drop tatweel, fold hamza/ya/ha
    variants, lowercase Latin letters, collapse whitespace runs to a
    single space, trim. Idempotent.
    """
    s = _DIACRITICS.sub("", s)
    s = s.replace(_TATWEEL, "")
    s = s.translate(_FOLD)
    s = s.lower()
    s = _WS_RUN.sub(" ", s)
    return s.strip()


def _is_separator(ch: str) -> bool:
    if ch.isspace():
        return True
    if ch in _ASCII_PUNCT:
        return True
    cat = unicodedata.category(ch)
    # All Unicode punctuation splits tokens; so do control and format
    # characters, which keeps stray junk bytes out of tokens.
    return cat.startswith("P") or cat in ("Cc", "Cf")


@dataclass(frozen=True)
class TokenSpan:
    """A token plus its [start, end) character offsets in the source string."""

    text: str
    start: int
    end: int


def tokenize_with_offsets(s: str) -> list[TokenSpan]:
    """Split *s* into tokens, keeping character offsets for highlighting."""
    spans: list[TokenSpan] = []
    start = -1
    for i, ch in enumerate(s):
        if _is_separator(ch):
            if start >= 0:
                spans.append(TokenSpan(s[start:i], start, i))
                start = -1
        elif start < 0:
            start = i
    if start >= 0:
        spans.append(TokenSpan(s[start:], start, len(s)))
    return spans


def tokenize(s: str) -> list[str]:
    """Split *s* on whitespace and punctuation (Arabic and ASCII alike).

    Empty tokens are dropped. Joining the result with single spaces and
    re-tokenizing returns the same list.
    """
    return [t.text for t in tokenize_with_offsets(s)]
