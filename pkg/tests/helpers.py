from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List


def write_jsonl(path: Path, records: List[Dict]) -> Path:
    path.write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records), encoding="utf-8")
    return path


def record(doc_id: str, unit_id: int, text: str, **annotations: Dict) -> Dict:
    return {"doc_id": doc_id, "unit_id": unit_id, "text": text, "annotations": annotations}


def label(*types: str, fear: bool = False) -> Dict:
    return {"danger_types": list(types), "fear": fear}
