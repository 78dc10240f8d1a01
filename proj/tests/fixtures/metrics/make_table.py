#!/usr/bin/env python3
# Reference scores for table.jsonl, computed with nltk (BLEU, smoothing
# method2) and rouge-score (ROUGE F1) using whitespace or per-character
# tokens. Requires: pip install nltk rouge-score
import json

from nltk.translate.bleu_score import SmoothingFunction, sentence_bleu
from rouge_score import rouge_scorer

PAIRS = [
    ("the patient was given metformin for type 2 diabetes",
     "metformin was prescribed for the patient with type 2 diabetes"),
    ("aspirin interacts with warfarin and increases bleeding risk",
     "aspirin interacts with warfarin"),
    ("fever and cough are common symptoms of influenza",
     "influenza often presents with fever cough and fatigue"),
    ("二甲双胍可以治疗二型糖尿病",
     "二型糖尿病常用二甲双胍治疗"),
    ("malaria is transmitted by mosquitoes",
     "malaria is transmitted by the bite of infected anopheles mosquitoes"),
]


def is_cjk(ch):
    cp = ord(ch)
    return (0x4E00 <= cp <= 0x9FFF or 0x3400 <= cp <= 0x4DBF or
            0x3040 <= cp <= 0x30FF or 0xAC00 <= cp <= 0xD7AF or
            0xF900 <= cp <= 0xFAFF or 0x20000 <= cp <= 0x2FA1F)


def tokenizer_for(cand, ref):
    chars = [c for c in cand + ref if not c.isspace()]
    cjk = sum(1 for c in chars if is_cjk(c))
    if cjk > len(chars) - cjk:
        return lambda s: [c for c in s if not c.isspace()]
    return lambda s: s.split()


class Tok:
    def __init__(self, fn):
        self.fn = fn

    def tokenize(self, text):
        return self.fn(text)


with open("table.jsonl", "w", encoding="utf-8") as f:
    for i, (cand, ref) in enumerate(PAIRS):
        tok = tokenizer_for(cand, ref)
        scorer = rouge_scorer.RougeScorer(["rouge1", "rouge2", "rougeL"], tokenizer=Tok(tok))
        r = scorer.score(ref, cand)
        bleu = sentence_bleu([tok(ref)], tok(cand),
                             smoothing_function=SmoothingFunction().method2)
        f.write(json.dumps({
            "id": f"m{i + 1}",
            "candidate": cand,
            "reference": ref,
            "rouge1": r["rouge1"].fmeasure * 100,
            "rouge2": r["rouge2"].fmeasure * 100,
            "rougeL": r["rougeL"].fmeasure * 100,
            "bleu4": bleu * 100,
        }, ensure_ascii=False) + "\n")
