"""Template-grammar corpus for desk-scale training runs.

Sentence shape: verb, quantity word, hazard phrase, "في", location.
"""

from typing import List

from src.corpus.models import AnnotatedSentence
from src.rng import Lcg64

VERBS = (
    "حجز", "ضبط", "اتلف", "صادر", "سحب", "منع", "رصد", "كشف", "اكتشف", "حجزت",
    "ضبطت", "اتلفت", "صادرت", "سحبت", "رصدت", "كشفت", "حجزوا", "ضبطوا", "منعت", "وجد",
)

QUANTITIES = (
    "قنطار", "طن", "كيلوغرام", "كلغ", "لتر", "صندوق", "علبة", "كيس", "قنطارين", "طنين",
    "رطل", "غرام", "برميل", "قارورة", "صفيحة", "حاوية", "شحنة", "دلو", "سلة", "كمية",
)

HAZARDS = (
    "اللحم الحمراء", "الدجاج الفاسد", "الحليب المنتهي الصلاحية", "المرقاز", "الاسماك الفاسدة",
    "الجبن الملوث", "الخبز المتعفن", "المشروبات الغازية", "الزيت المغشوش", "الطماطم المصبرة",
    "البيض الفاسد", "السكر الملوث", "العصير المنتهي الصلاحية", "اللحوم المجمدة", "الحلويات",
    "الفواكه المتعفنة", "التوابل المغشوشة", "الدقيق الملوث", "المياه المعدنية", "النقانق",
)

LOCATIONS = (
    "سطيف", "الجزائر", "وهران", "قسنطينة", "عنابة", "باتنة", "بجاية", "تلمسان", "البليدة", "بسكرة",
    "المسيلة", "جيجل", "سكيكدة", "تيارت", "الشلف", "ورقلة", "غرداية", "تبسة", "خنشلة", "قالمة",
)

PREPOSITION = "في"


def generate_synthetic_corpus(count: int = 300, seed: int = 7) -> List[AnnotatedSentence]:
    """Sample `count` annotated sentences from the template grammar."""
    rng = Lcg64(seed)
    sentences = []
    for i in range(count):
        hazard = rng.choice(HAZARDS).split()
        tokens = [rng.choice(VERBS), rng.choice(QUANTITIES), *hazard, PREPOSITION, rng.choice(LOCATIONS)]
        tags = ["O", "B-QUANT", "B-EVT", *["I-EVT"] * (len(hazard) - 1), "O", "B-LOC"]
        sentences.append(AnnotatedSentence(tokens=tuple(tokens), tags=tuple(tags), doc_id=f"synthetic-{i}"))
    return sentences
