"""Question records: parsing, interrogative classification, keyword extraction.

A question file holds one record per line as tab-separated ``key=value``
fields::

    id=q1\ttext=من صمم برج ايفل؟\tdomain=HistoryIslam\tsource=Forum\tgold_answer=غوستاف ايفل

``id``, ``text``, ``domain`` and ``source`` are required; ``gold_answer``
is optional. Blank lines and lines starting with ``#`` are skipped.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .normalize import normalize_text, tokenize


class QuestionError(Exception):
    """Base class for question-bank failures."""


class UnsupportedQuestionError(QuestionError):
    """The question carries no supported interrogative."""


class EmptyKeywordsError(QuestionError):
    """Nothing is left after stopword removal."""


class QuestionFormatError(QuestionError):
    """A question file cannot be parsed; the message names the line."""


class QuestionType(Enum):
    WHO = "من"
    WHAT = "ما"
    WHEN = "متى"
    WHERE = "أين"
    HOW_MANY = "كم"


class AnswerType(Enum):
    PERSON = "person"
    ENTITY = "entity"
    DATE = "date"
    LOCATION = "location"
    NUMBER = "number"


class Domain(Enum):
    SPORT = "Sport"
    HISTORY_ISLAM = "HistoryIslam"
    CULTURE_DISCOVERIES = "CultureDiscoveries"
    WORLD_NEWS = "WorldNews"
    HEALTH_MEDICINE = "HealthMedicine"


ARABIC_DOMAIN_LABELS: dict[Domain, str] = {
    Domain.SPORT: "رياضة",
    Domain.HISTORY_ISLAM: "التاريخ والإسلام",
    Domain.CULTURE_DISCOVERIES: "ثقافة واكتشافات",
    Domain.WORLD_NEWS: "أخبار العالم",
    Domain.HEALTH_MEDICINE: "صحة وطب",
}


class Source(Enum):
    TREC = "TREC"
    CLEF = "CLEF"
    FORUM = "Forum"
    FAQ = "FAQ"


_ANSWER_TYPE_FOR: dict[QuestionType, AnswerType] = {
    QuestionType.WHO: AnswerType.PERSON,
    QuestionType.WHAT: AnswerType.ENTITY,
    QuestionType.WHEN: AnswerType.DATE,
    QuestionType.WHERE: AnswerType.LOCATION,
    QuestionType.HOW_MANY: AnswerType.NUMBER,
}

# Interrogative tokens on their normalized forms. ماذا classifies as WHAT.
_INTERROGATIVES: dict[str, QuestionType] = {
    normalize_text("من"): QuestionType.WHO,
    normalize_text("ما"): QuestionType.WHAT,
    normalize_text("ماذا"): QuestionType.WHAT,
    normalize_text("متى"): QuestionType.WHEN,
    normalize_text("أين"): QuestionType.WHERE,
    normalize_text("كم"): QuestionType.HOW_MANY,
}

_WHO_TOKEN = normalize_text("من")

_ID_RE = re.compile(r"^[A-Za-z0-9_\-]+$")


@dataclass(frozen=True)
class Question:
    id: str
    text: str
    domain: Domain
    source: Source
    gold_answer: str | None = None
    qtype: QuestionType | None = None
    keywords: tuple[str, ...] | None = None
    focus: str | None = None
    expected_answer: AnswerType | None = None


@lru_cache(maxsize=1)
def _stopwords() -> frozenset[str]:
    raw = resources.files("qacorpus.data").joinpath("stopwords.txt").read_text("utf-8")
    words = set()
    for line in raw.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(normalize_text(line))
    return frozenset(words)


def map_answer_type(qtype: QuestionType) -> AnswerType:
    return _ANSWER_TYPE_FOR[qtype]


def classify_interrogative(text: str) -> QuestionType:
    """Return the question type read off the first interrogative token.

    من counts as an interrogative only when it is the leading token;
    anywhere else it is the preposition "from" and is skipped. Questions
    with no interrogative (e.g. yes/no questions introduced by هل) raise
    UnsupportedQuestionError.
    """
    for i, tok in enumerate(tokenize(normalize_text(text))):
        if tok == _WHO_TOKEN and i > 0:
            continue
        qtype = _INTERROGATIVES.get(tok)
        if qtype is not None:
            return qtype
    raise UnsupportedQuestionError(f"no supported interrogative in: {text!r}")


def extract_keywords(text: str) -> tuple[str, ...]:
    """Content tokens of the normalized question, in original order.

    The interrogative and all stopwords are dropped. Raises
    EmptyKeywordsError when nothing survives.
    """
    stop = _stopwords()
    keywords = tuple(t for t in tokenize(normalize_text(text)) if t not in stop)
    if not keywords:
        raise EmptyKeywordsError(f"no keywords left in: {text!r}")
    return keywords


def analyze_question(q: Question) -> Question:
    """Fill qtype, keywords, focus and expected answer type from q.text.

    Pure recomputation from the text, so analyzing twice is a no-op.
    """
    qtype = classify_interrogative(q.text)
    keywords = extract_keywords(q.text)
    return replace(
        q,
        qtype=qtype,
        keywords=keywords,
        focus=keywords[0],
        expected_answer=map_answer_type(qtype),
    )


def _parse_record(line: str, lineno: int) -> Question:
    fields: dict[str, str] = {}
    for part in line.split("\t"):
        key, sep, value = part.partition("=")
        if not sep or not key:
            raise QuestionFormatError(f"line {lineno}: malformed field {part!r}")
        if key in fields:
            raise QuestionFormatError(f"line {lineno}: repeated field {key!r}")
        fields[key] = value
    missing = {"id", "text", "domain", "source"} - fields.keys()
    if missing:
        raise QuestionFormatError(f"line {lineno}: missing field(s) {sorted(missing)}")
    unknown = fields.keys() - {"id", "text", "domain", "source", "gold_answer"}
    if unknown:
        raise QuestionFormatError(f"line {lineno}: unknown field(s) {sorted(unknown)}")
    if not _ID_RE.match(fields["id"]):
        raise QuestionFormatError(f"line {lineno}: invalid id {fields['id']!r}")
    if not fields["text"].strip():
        raise QuestionFormatError(f"line {lineno}: empty question text")
    try:
        domain = Domain(fields["domain"])
    except ValueError:
        raise QuestionFormatError(
            f"line {lineno}: unknown domain {fields['domain']!r}"
        ) from None
    try:
        source = Source(fields["source"])
    except ValueError:
        raise QuestionFormatError(
            f"line {lineno}: unknown source {fields['source']!r}"
        ) from None
    gold = fields.get("gold_answer") or None
    return Question(fields["id"], fields["text"], domain, source, gold)


def load_questions(path: str | Path) -> list[Question]:
    """Load and analyze a question file, preserving record order."""
    questions: list[Question] = []
    seen: set[str] = set()
    text = Path(path).read_text("utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        q = _parse_record(line, lineno)
        if q.id in seen:
            raise QuestionFormatError(f"line {lineno}: duplicate question id {q.id!r}")
        seen.add(q.id)
        try:
            questions.append(analyze_question(q))
        except (UnsupportedQuestionError, EmptyKeywordsError) as exc:
            raise QuestionFormatError(f"line {lineno}: {exc}") from exc
    if not questions:
        raise QuestionFormatError(f"empty question bank: {path}")
    return questions
