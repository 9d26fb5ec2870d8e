"""Deciding whether a page answers a question, and cutting out passages.

All comparisons run over normalized tokens (see
:mod:`qacorpus.normalize`), so diacritics and hamza spelling never break
a match, while substring accidents like ايفلية matching ايفل cannot
happen: a gold answer matches only as a contiguous run of whole tokens.
"""
from __future__ import annotations

from dataclasses import dataclass

from .normalize import normalize_text, tokenize, tokenize_with_offsets
from .questions import Question

# Sentence boundary characters. Tokens never contain control characters,
# so \x1f is safe as a join sentinel in contains_answer.
_SENTENCE_BREAKS = frozenset(".!؟؛\n")  # . ! ؟ ؛ newline
_SENTINEL = "\x1f"


def contains_answer(clean_text: str, gold_answer: str) -> bool:
    """True when the normalized gold tokens occur contiguously in the
    normalized text tokens."""
    gold = tokenize(normalize_text(gold_answer))
    if not gold:
        return False
    text = tokenize(normalize_text(clean_text))
    if len(text) < len(gold):
        return False
    hay = _SENTINEL + _SENTINEL.join(text) + _SENTINEL
    needle = _SENTINEL + _SENTINEL.join(gold) + _SENTINEL
    return needle in hay


def keyword_coverage(clean_text: str, keywords: tuple[str, ...] | list[str]) -> int:
    """Number of distinct keywords present among the text's tokens."""
    if not keywords:
        return 0
    tokens = set(tokenize(normalize_text(clean_text)))
    hits = 0
    for kw in dict.fromkeys(normalize_text(k) for k in keywords):
        if not kw:
            continue
        if " " in kw:
            if contains_answer(clean_text, kw):
                hits += 1
        elif kw in tokens:
            hits += 1
    return hits


@dataclass(frozen=True)
class Passage:
    text: str
    sentence_span: tuple[int, int]
    coverage: int


@dataclass(frozen=True)
class CandidateText:
    url: str
    rank: int
    clean_text: str
    contains_gold: bool | None
    coverage: int
    passages: tuple[Passage, ...] = ()


@dataclass(frozen=True)
class AssembledText:
    question_id: str
    text: str
    passage_count: int
    source_urls: tuple[str, ...]


def split_sentences(text: str) -> list[str]:
    """Sentences split on . ! ؟ ؛ and newlines, trimmed, empties dropped.

    Break punctuation stays attached to its sentence so reassembled
    passages read naturally."""
    sentences: list[str] = []
    current: list[str] = []
    for ch in text:
        if ch in _SENTENCE_BREAKS:
            if ch != "\n":
                current.append(ch)
            sentence = "".join(current).strip()
            if sentence.strip("".join(_SENTENCE_BREAKS)):
                sentences.append(sentence)
            current = []
        else:
            current.append(ch)
    sentence = "".join(current).strip()
    if sentence:
        sentences.append(sentence)
    return sentences


def extract_passage(clean_text: str, question: Question) -> Passage | None:
    """Best answer-bearing window: the top-scoring sentence plus one
    sentence of context on each side.

    Sentences containing the gold answer outrank all others; among
    equals, higher keyword coverage wins, then earliest position. None
    when no sentence shows the gold answer or any keyword.
    """
    sentences = split_sentences(clean_text)
    if not sentences:
        return None
    keywords = question.keywords or ()
    gold = question.gold_answer
    best_idx = -1
    best_key = (0, 0)
    for i, sentence in enumerate(sentences):
        has_gold = 1 if gold and contains_answer(sentence, gold) else 0
        cov = keyword_coverage(sentence, keywords)
        key = (has_gold, cov)
        if key > best_key:
            best_key = key
            best_idx = i
    if best_idx < 0:
        return None
    start = max(0, best_idx - 1)
    end = min(len(sentences) - 1, best_idx + 1)
    window = " ".join(sentences[start:end + 1])
    return Passage(
        text=window,
        sentence_span=(start, end),
        coverage=keyword_coverage(window, keywords),
    )


def score_candidate(url: str, rank: int, clean_text: str, question: Question) -> CandidateText:
    """Judge one fetched page against a question."""
    gold = question.gold_answer
    contains = contains_answer(clean_text, gold) if gold is not None else None
    passage = extract_passage(clean_text, question)
    return CandidateText(
        url=url,
        rank=rank,
        clean_text=clean_text,
        contains_gold=contains,
        coverage=keyword_coverage(clean_text, question.keywords or ()),
        passages=(passage,) if passage is not None else (),
    )


def qualifies(candidate: CandidateText, question: Question) -> bool:
    """A candidate qualifies via the gold answer when one is known,
    otherwise by showing at least one keyword."""
    if question.gold_answer is not None:
        return bool(candidate.contains_gold)
    return candidate.coverage >= 1


def build_corpus_text(
    candidates: list[CandidateText],
    question: Question,
    max_passages: int = 9,
) -> AssembledText | None:
    """Concatenate passages from qualifying candidates, best ranks first,
    stopping after max_passages. None when nothing qualifies."""
    if max_passages < 1:
        raise ValueError("max_passages must be >= 1")
    chosen: list[Passage] = []
    urls: list[str] = []
    for candidate in sorted(candidates, key=lambda c: c.rank):
        if len(chosen) >= max_passages:
            break
        if not qualifies(candidate, question):
            continue
        if not candidate.passages:
            continue
        if candidate.url in urls:
            continue
        chosen.append(candidate.passages[0])
        urls.append(candidate.url)
    if not chosen:
        return None
    return AssembledText(
        question_id=question.id,
        text="\n\n".join(p.text for p in chosen),
        passage_count=len(chosen),
        source_urls=tuple(urls),
    )


def find_gold_spans(clean_text: str, gold_answer: str) -> list[tuple[int, int]]:
    """Character spans of every contiguous token run matching the gold
    answer, for highlighting in raw text."""
    gold = tokenize(normalize_text(gold_answer))
    if not gold:
        return []
    spans = tokenize_with_offsets(clean_text)
    norm = [(normalize_text(s.text), s) for s in spans]
    norm = [(n, s) for n, s in norm if n]
    out: list[tuple[int, int]] = []
    for i in range(len(norm) - len(gold) + 1):
        if all(norm[i + j][0] == gold[j] for j in range(len(gold))):
            out.append((norm[i][1].start, norm[i + len(gold) - 1][1].end))
    return out


def find_keyword_spans(
    clean_text: str, keywords: tuple[str, ...] | list[str]
) -> list[dict]:
    """Character spans of keyword occurrences, one dict per hit:
    {keyword, start, end}."""
    wanted = {normalize_text(k): k for k in keywords}
    wanted.pop("", None)
    out: list[dict] = []
    for span in tokenize_with_offsets(clean_text):
        norm = normalize_text(span.text)
        if norm in wanted:
            out.append({"keyword": wanted[norm], "start": span.start, "end": span.end})
    return out
