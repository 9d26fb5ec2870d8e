import unicodedata

from hypothesis import given, settings
from hypothesis import strategies as st

from qacorpus.normalize import normalize_text, tokenize, tokenize_with_offsets

DIACRITICS = [chr(c) for c in range(0x064B, 0x0653)]

arabic_text = st.text(
    alphabet=st.sampled_from(
        list("ابتثجحخدذرزسشصضطظعغفقكلمنهوي أإآٱىةؤئ.!؟؛,0123456789abcXYZـ")
        + DIACRITICS
    ),
    max_size=60,
)
any_text = st.text(max_size=60)


def test_diacritics_and_folding():
    assert normalize_text("بُرْجُ إِيفل") == "برج ايفل"


def test_tatweel_removed():
    assert normalize_text("الجبــــال") == "الجبال"


def test_folds():
    assert normalize_text("أإآٱ") == "اااا"
    assert normalize_text("هدى") == "هدي"
    assert normalize_text("مدينة") == "مدينه"
    assert normalize_text("مسؤول") == "مسوول"
    assert normalize_text("مائئة") == "ماييه"


def test_lowercase_and_whitespace():
    assert normalize_text("  Gustave\t EIFFEL \n") == "gustave eiffel"


def test_empty_and_only_diacritics():
    assert normalize_text("") == ""
    assert normalize_text("ًٌٍَ") == ""


@given(any_text)
def test_idempotent(s):
    once = normalize_text(s)
    assert normalize_text(once) == once


@given(arabic_text, st.lists(st.sampled_from(DIACRITICS), max_size=8))
def test_diacritic_insertion_invariant(s, marks):
    # Splicing diacritics anywhere must not change the normalized form.
    decorated = s
    for i, mark in enumerate(marks):
        pos = (i * 7) % (len(decorated) + 1)
        decorated = decorated[:pos] + mark + decorated[pos:]
    assert normalize_text(decorated) == normalize_text(s)


def test_tokenize_examples():
    assert tokenize("من صمم برج ايفل؟") == ["من", "صمم", "برج", "ايفل"]
    assert tokenize("a,b;;c") == ["a", "b", "c"]
    assert tokenize("") == []
    assert tokenize("؟!.،") == []


def test_tokenize_keeps_tatweel_and_diacritics():
    # Neither is a separator; they stay inside the token.
    assert tokenize("الجبــال") == ["الجبــال"]
    assert tokenize("بُرْج") == ["بُرْج"]


def test_offsets_slice_back():
    s = "من صمم برج ايفل؟"
    for span in tokenize_with_offsets(s):
        assert s[span.start:span.end] == span.text


@given(any_text)
def test_offsets_agree_with_tokenize(s):
    spans = tokenize_with_offsets(s)
    assert [t.text for t in spans] == tokenize(s)
    # Spans are ordered and non-overlapping.
    for a, b in zip(spans, spans[1:]):
        assert a.end <= b.start


@settings(max_examples=200)
@given(any_text)
def test_normalization_never_creates_separators(s):
    # Normalizing each raw token and dropping empties must equal
    # tokenizing the normalized whole string.
    per_token = [normalize_text(t.text) for t in tokenize_with_offsets(s)]
    per_token = [t for t in per_token if t]
    # A normalized token may itself collapse to several? No: no separators
    # are ever introduced, so each stays a single token.
    for t in per_token:
        assert tokenize(t) == [t]
    assert per_token == tokenize(normalize_text(s))


def test_control_chars_are_separators():
    assert tokenize("ايفل\x1fبرج") == ["ايفل", "برج"]


def test_category_claims():
    # The folding set covers exactly the documented characters.
    assert unicodedata.category("ـ") == "Lm"
    for mark in DIACRITICS:
        assert unicodedata.category(mark) == "Mn"
