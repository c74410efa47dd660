"""Published reference numbers the arithmetic of this package is checked against.

The annotated corpus behind them is not distributed, so only internal
consistency (harmonic means, TP ratios, table shapes) can be verified.
"""
from __future__ import annotations

from typing import Dict, List, Tuple

# (task, provenance) -> (precision, recall, f1), percentages
DETECTION_RESULTS: Dict[Tuple[str, str], Tuple[float, float, float]] = {
    ("danger", "base"): (40.8, 55.7, 47.1),
    ("danger", "embedding"): (38.5, 64.8, 48.3),
    ("danger", "conceptnet"): (30.3, 83.0, 44.4),
    ("fear", "base"): (44.5, 52.7, 48.3),
    ("fear", "embedding"): (46.3, 66.7, 54.6),
    ("fear", "conceptnet"): (35.4, 55.9, 43.3),
}

# list sizes per type and provenance (base, embedding, conceptnet)
WORDLIST_SIZES: Dict[str, Tuple[int, int, int]] = {
    "Fear": (49, 80, 157),
    "Danger": (153, 355, 596),
    "Abduction": (15, 35, 34),
    "Fire": (24, 58, 76),
    "Violence": (27, 83, 107),
    "War": (35, 76, 179),
    "Storm": (34, 69, 120),
    "Duel": (25, 51, 112),
}

LABEL_COUNTS: Dict[str, int] = {
    "DangerousSituationNatural": 36,
    "DangerousSituationOther": 14,
    "DangerousSituationDuel": 10,
    "DangerousSituationSupernatural": 12,
    "DangerousSituationAmbush": 16,
    "FearDescription": 104,
}

ANNOTATED_PARAGRAPHS = 391
AVERAGE_KAPPA_TYPED = 0.55
AVERAGE_KAPPA_ANY_DANGER = 0.61

# (word, tp, fp, tp_ratio)
DANGER_WORDS_HIGH_RATIO: List[Tuple[str, int, int, float]] = [
    ("würgen", 2, 0, 1.00),
    ("donnern", 2, 0, 1.00),
    ("brennend", 2, 0, 1.00),
    ("Bö", 3, 0, 1.00),
    ("rammen", 2, 0, 1.00),
    ("röcheln", 2, 0, 1.00),
    ("zuschlagen", 3, 0, 1.00),
    ("zerren", 4, 0, 1.00),
    ("Hagel", 2, 0, 1.00),
    ("Kampf", 6, 0, 1.00),
    ("Donner", 2, 0, 1.00),
    ("schießen", 8, 0, 1.00),
    ("verschlingen", 2, 0, 1.00),
    ("Sieger", 4, 0, 1.00),
    ("explodieren", 2, 0, 1.00),
    ("erwürgen", 2, 0, 1.00),
    ("Sturmwind", 2, 0, 1.00),
    ("entfliehen", 2, 0, 1.00),
    ("entstellt", 2, 0, 1.00),
    ("gefangen", 2, 0, 1.00),
    ("Sturm", 12, 1, 0.92),
    ("Fregatte", 10, 1, 0.91),
    ("Klinge", 18, 2, 0.90),
    ("Messer", 30, 4, 0.88),
    ("Blitz", 6, 1, 0.86),
    ("fliehen", 6, 1, 0.86),
    ("Wind", 22, 4, 0.85),
    ("Feuer", 10, 2, 0.83),
    ("packen", 4, 1, 0.80),
    ("zünden", 8, 2, 0.80),
    ("stoßen", 10, 3, 0.77),
    ("Waffe", 6, 2, 0.75),
    ("Opfer", 21, 7, 0.75),
    ("schlagen", 27, 12, 0.69),
    ("umbringen", 2, 1, 0.67),
    ("wild", 8, 4, 0.67),
    ("gegenüberstehen", 2, 1, 0.67),
    ("brennen", 6, 3, 0.67),
    ("schleudern", 6, 3, 0.67),
    ("Explosion", 2, 1, 0.67),
]

DANGER_WORDS_LOW_RATIO: List[Tuple[str, int, int, float]] = [
    ("Blut", 18, 12, 0.60),
    ("Wunde", 6, 5, 0.55),
    ("gegenüber", 4, 4, 0.50),
    ("Welle", 2, 3, 0.40),
    ("Regen", 2, 5, 0.29),
    ("töten", 2, 5, 0.29),
    ("blutend", 0, 1, 0.00),
    ("Stellung", 0, 1, 0.00),
    ("Streit", 0, 1, 0.00),
    ("beißen", 0, 1, 0.00),
    ("graben", 0, 1, 0.00),
    ("blutig", 0, 1, 0.00),
    ("ermorden", 0, 2, 0.00),
    ("flammen", 0, 1, 0.00),
    ("Pistole", 0, 1, 0.00),
    ("kämpfen", 0, 1, 0.00),
    ("Prasseln", 0, 1, 0.00),
    ("Feind", 0, 1, 0.00),
    ("Mord", 0, 9, 0.00),
    ("Gewitter", 0, 3, 0.00),
    ("Gewalt", 0, 2, 0.00),
    ("löschen", 0, 1, 0.00),
    ("morden", 0, 2, 0.00),
    ("durchbohren", 0, 1, 0.00),
    ("vergewaltigen", 0, 1, 0.00),
    ("regnen", 0, 3, 0.00),
    ("prasseln", 0, 1, 0.00),
    ("sperren", 0, 1, 0.00),
    ("überfallen", 0, 1, 0.00),
]

FEAR_WORDS: List[Tuple[str, int, int, float]] = [
    ("bedrohen", 5, 0, 1.00),
    ("widerlich", 1, 0, 1.00),
    ("ängstlich", 2, 0, 1.00),
    ("nervös", 1, 0, 1.00),
    ("höllisch", 1, 0, 1.00),
    ("Bedrohung", 1, 0, 1.00),
    ("verwirren", 1, 0, 1.00),
    ("erbärmlich", 1, 0, 1.00),
    ("Angstschweiß", 1, 0, 1.00),
    ("Panik", 1, 0, 1.00),
    ("zittern", 9, 1, 0.90),
    ("Furcht", 6, 1, 0.86),
    ("Angst", 20, 4, 0.83),
    ("schrecken", 3, 1, 0.75),
    ("Zittern", 5, 2, 0.71),
    ("ohnmächtig", 2, 1, 0.67),
    ("Schrecken", 3, 2, 0.60),
    ("erschrecken", 3, 3, 0.50),
    ("fürchten", 2, 2, 0.50),
    ("schrecklich", 15, 15, 0.50),
    ("Gänsehaut", 1, 1, 0.50),
    ("Schreck", 2, 2, 0.50),
    ("furchtbar", 3, 5, 0.38),
    ("gefährlich", 2, 4, 0.33),
    ("leiden", 2, 5, 0.29),
    ("Gefahr", 3, 9, 0.25),
    ("schlimm", 4, 13, 0.24),
    ("lähmen", 0, 1, 0.00),
    ("hoffnungslos", 0, 1, 0.00),
    ("grässlich", 0, 1, 0.00),
    ("schauerlich", 0, 1, 0.00),
    ("schocken", 0, 1, 0.00),
    ("fürchterlich", 0, 3, 0.00),
    ("wehrlos", 0, 1, 0.00),
    ("erschreckt", 0, 1, 0.00),
    ("unheimlich", 0, 4, 0.00),
    ("besorgt", 0, 1, 0.00),
    ("bedrohlich", 0, 1, 0.00),
    ("Leiden", 0, 1, 0.00),
    ("schwitzen", 0, 1, 0.00),
    ("überwältigen", 0, 1, 0.00),
]

DANGER_WORDS = DANGER_WORDS_HIGH_RATIO + DANGER_WORDS_LOW_RATIO

# heads of the ranked danger tables: (word, count)
TOP_FALSE_POSITIVES: List[Tuple[str, int]] = [("Blut", 12), ("schlagen", 12)]
TOP_TRUE_POSITIVES: List[Tuple[str, int]] = [("Messer", 30)]
