"""A tiny self-contained mini-web for demos and offline runs.

:func:`build_demo_fixture` writes a five-question bank plus a fixture
directory (search manifest and HTML pages) whose qualification outcome
is known by construction, so end-to-end runs have an answer key:
17 candidate URLs, 8 of them carrying the gold answer.

Run ``python -m qacorpus.fixtures <dir>`` to materialize it anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .search import url_hash

_PAGE_SHELL = """<html>
<head>
<meta charset="utf-8">
<title>{title}</title>
<style>body {{ margin: 0; }}</style>
<script>var tracker = "ANALYTICS_NOISE";</script>
</head>
<body>
<nav>Home | About | Contact</nav>
{body}
<!-- footer boilerplate -->
<footer>Copyright 2009 WebHost Inc</footer>
</body>
</html>
"""


@dataclass(frozen=True)
class DemoFixture:
    root: Path
    questions_path: Path
    fixture_dir: Path
    total_urls: int
    correct_urls: int
    per_question: dict[str, tuple[int, int]]  # id -> (correct, total)

    @property
    def micro_precision(self) -> Fraction:
        return Fraction(self.correct_urls, self.total_urls)


_QUESTIONS = [
    ("q1", "من صمم برج ايفل؟", "HistoryIslam", "Forum", "غوستاف ايفل"),
    ("q2", "متى تأسست الأمم المتحدة؟", "WorldNews", "TREC", "1945"),
    ("q3", "ما هو أسرع حيوان في العالم؟", "CultureDiscoveries", "CLEF", "الفهد"),
    ("q4", "كم عدد لاعبي كرة القدم؟", "Sport", "FAQ", "11"),
    ("q5", "أين يقع جبل إيفرست؟", "HealthMedicine", "Forum", "نيبال"),
]

# url -> page body paragraphs, or None for a dead link (404).
_PAGES: dict[str, list[str] | None] = {
    "http://q1-design.fixture.test/eiffel": [
        "برج ايفل معلم مشهور في مدينة باريس الفرنسية.",
        "صمم المهندس غوستاف ايفل البرج الحديدي عام 1889 بمناسبة المعرض العالمي. "
        "The tower was controversial at first.",
        "يزور البرج ملايين السياح كل عام.",
    ],
    "http://q1-history.fixture.test/tower": [
        "يقع البرج الحديدي في قلب العاصمة الفرنسية وقد صمم خصيصا للمعرض الدولي.",
        "ارتفاع البرج 324 مترا وكان الاعلى في العالم لعقود.",
    ],
    "http://q1-forum.fixture.test/thread/91": [
        "سأل احد الاعضاء: من صمم برج ايفل الشهير؟",
        "الجواب المعتمد: المهندس غُوسْتَاف ايفل هو من صمم البرج. welcome guest!",
    ],
    "http://q1-dead.fixture.test/gone": None,
    "http://q2-news.fixture.test/un": [
        "تأسست الأمم المتحدة عام 1945 بعد نهاية الحرب العالمية الثانية.",
        "مقر المنظمة الرئيسي في نيويورك.",
    ],
    "http://q2-wiki.fixture.test/history": [
        "الامم المتحدة منظمة دولية تضم معظم دول العالم.",
        "تاسست عصبة الامم قبلها عام 1920 ثم حلت مكانها المنظمة الجديدة.",
    ],
    "http://q2-archive.fixture.test/charter": [
        "وقع ميثاق الامم المتحدة في سان فرانسيسكو سنة 1945 ودخل حيز التنفيذ في اكتوبر.",
        "International charter archive, scanned copy available.",
    ],
    "http://q3-animals.fixture.test/cheetah": [
        "أسرع حيوان بري في العالم هو الفهد اذ تتجاوز سرعته 110 كيلومترات في الساعة.",
        "يعيش هذا الحيوان في السهول الافريقية المفتوحة.",
    ],
    "http://q3-blog.fixture.test/speed": [
        "تتنافس الحيوانات في السرعة، ومن اسرعها الصقور عند الانقضاض والغزلان عند الجري.",
        "سرعة الحيوان تعتمد على بنية جسمه وبيئته.",
    ],
    "http://q3-dead.fixture.test/removed": None,
    "http://q4-rules.fixture.test/football": [
        "كم عدد لاعبي كرة القدم في الفريق الواحد؟ القانون يحدد العدد بـ 11 لاعبا اساسيا.",
        "يمكن اجراء عدد محدود من التبديلات خلال المباراة.",
    ],
    "http://q4-club.fixture.test/team": [
        "يتكون فريق كرة القدم من لاعبين اساسيين واحتياطيين يجلسون على مقاعد البدلاء.",
        "football squad page under construction.",
    ],
    "http://q4-stats.fixture.test/players": [
        "سجل اللاعبون هذا الموسم ارقاما قياسية في عدد الاهداف والتمريرات.",
        "احصاءات كرة القدم تنشر اسبوعيا.",
    ],
    "http://q5-geo.fixture.test/everest": [
        "جبل ايفرست اعلى قمة في العالم ويقع في دولة نِيبَال على الحدود مع الصين.",
        "يبلغ ارتفاع القمة 8848 مترا فوق سطح البحر.",
    ],
    "http://q5-travel.fixture.test/nepal": [
        "يقصد المتسلقون جبل ايفرست من الجهة الجنوبية في نيبال حيث المعسكر الرئيسي.",
        "تستغرق الرحلة الى القمة عدة اسابيع. trekking permits required.",
    ],
    "http://q5-photos.fixture.test/gallery": [
        "صور بانورامية للجبــــال العالية المغطاة بالثلوج في قارة اسيا.",
        "معرض الصور يحدث شهريا.",
    ],
    "http://q5-dead.fixture.test/404": None,
}

_MANIFEST = [
    ("صمم برج ايفل", [
        "http://q1-design.fixture.test/eiffel",
        "http://q1-history.fixture.test/tower",
        "http://q1-forum.fixture.test/thread/91",
        "http://q1-dead.fixture.test/gone",
    ]),
    ("تاسست الامم المتحده", [
        "http://q2-news.fixture.test/un",
        "http://q2-wiki.fixture.test/history",
        "http://q2-archive.fixture.test/charter",
    ]),
    ("اسرع حيوان العالم", [
        "http://q3-animals.fixture.test/cheetah",
        "http://q3-blog.fixture.test/speed",
        "http://q3-dead.fixture.test/removed",
    ]),
    ("عدد لاعبي كره القدم", [
        "http://q4-rules.fixture.test/football",
        "http://q4-club.fixture.test/team",
        "http://q4-stats.fixture.test/players",
    ]),
    ("يقع جبل ايفرست", [
        "http://q5-geo.fixture.test/everest",
        "http://q5-travel.fixture.test/nepal",
        "http://q5-photos.fixture.test/gallery",
        "http://q5-dead.fixture.test/404",
    ]),
]

# (correct, total) per question, counting gold-bearing live pages.
_EXPECTED = {
    "q1": (2, 4),
    "q2": (2, 3),
    "q3": (1, 3),
    "q4": (1, 3),
    "q5": (2, 4),
}


def build_demo_fixture(root: str | Path) -> DemoFixture:
    root = Path(root)
    fixture_dir = root / "web"
    pages_dir = fixture_dir / "pages"
    pages_dir.mkdir(parents=True, exist_ok=True)

    records = []
    for qid, text, domain, source, gold in _QUESTIONS:
        records.append(
            f"id={qid}\ttext={text}\tdomain={domain}\tsource={source}\tgold_answer={gold}"
        )
    questions_path = root / "questions.txt"
    questions_path.write_text("\n".join(records) + "\n", encoding="utf-8", newline="\n")

    manifest_lines = [kws + "\t" + " ".join(urls) for kws, urls in _MANIFEST]
    (fixture_dir / "manifest").write_text(
        "\n".join(manifest_lines) + "\n", encoding="utf-8", newline="\n"
    )

    for url, paragraphs in _PAGES.items():
        if paragraphs is None:
            continue
        body = "\n".join(f"<p>{p}</p>" for p in paragraphs)
        page = _PAGE_SHELL.format(title=url, body=body)
        (pages_dir / f"{url_hash(url)}.html").write_text(
            page, encoding="utf-8", newline="\n"
        )

    return DemoFixture(
        root=root,
        questions_path=questions_path,
        fixture_dir=fixture_dir,
        total_urls=sum(t for _, t in _EXPECTED.values()),
        correct_urls=sum(c for c, _ in _EXPECTED.values()),
        per_question=dict(_EXPECTED),
    )


if __name__ == "__main__":
    import sys

    target = sys.argv[1] if len(sys.argv) > 1 else "demo-fixture"
    fixture = build_demo_fixture(target)
    print(f"questions: {fixture.questions_path}")
    print(f"fixture:   {fixture.fixture_dir}")
