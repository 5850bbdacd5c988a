"""Corpus-scale streaming aggregation.

Generates a synthetic line-delimited corpus (one document per line),
streams it through the scale subcommand with bounded memory, and prints
the global top phrases by summed score. The same machinery handles
million-line files; the line count here is kept small so the demo
finishes in seconds. Try it on your own corpus with:

    mergerank scale your_corpus.txt --global-top 20

    python demos/05_streaming_scale.py
"""

import random
import subprocess
import sys
import tempfile
import time
from pathlib import Path

rng = random.Random(11)
topics = [
    "growth hormone", "blood flow", "molecular weight", "rate constant",
    "arterial blood", "glutamine synthetase",
]
fillers = ("measured observed sample control study baseline subject tissue "
           "serum assay method result analysis").split()

with tempfile.TemporaryDirectory() as tmp:
    corpus = Path(tmp) / "corpus.txt"
    with corpus.open("w", encoding="utf-8") as fh:
        for _ in range(5000):
            words = []
            for _ in range(rng.randint(2, 4)):
                words.append(rng.choice(topics))
                words.extend(rng.choices(fillers, k=rng.randint(1, 3)))
            fh.write(" ".join(words) + "\n")

    print(f"streaming {sum(1 for _ in corpus.open())} documents through the scale pipeline...")
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "mergerank", "scale", str(corpus), "--global-top", "10"],
        capture_output=True, text=True, check=True,
    )
    print(f"done in {time.perf_counter() - start:.1f} s\n")
    print("global top phrases (summed per-document scores):")
    print(proc.stdout)
    print(proc.stderr.strip())
