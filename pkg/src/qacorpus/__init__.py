"""Build, curate, and evaluate Arabic question-answering corpora from the web."""

from .clock import FixedClock, SystemClock
from .evaluation import (
    EvalReport,
    UrlLabel,
    auto_labels,
    evaluation_report,
    load_labels,
    micro_precision,
)
from .extract import ExtractedText, filter_foreign_tokens, html_to_text
from .fetcher import FetchPolicy, FetchStatus, PageFetcher, PageRecord
from .matching import (
    AssembledText,
    CandidateText,
    Passage,
    build_corpus_text,
    contains_answer,
    extract_passage,
    keyword_coverage,
)
from .normalize import normalize_text, tokenize
from .questions import (
    AnswerType,
    Domain,
    Question,
    QuestionType,
    Source,
    analyze_question,
    classify_interrogative,
    extract_keywords,
    load_questions,
    map_answer_type,
)
from .search import (
    ProviderConfig,
    SearchQuery,
    UrlParts,
    UrlRecord,
    build_query,
    parse_url,
    search,
    url_hash,
)
from .store import (
    CorpusEntry,
    CorpusStats,
    CorpusStore,
    compute_stats,
    load_corpus,
    save_corpus,
)

__version__ = "0.1.0"
