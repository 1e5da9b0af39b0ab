"""Build data/synonyms.tsv from a WordNet 3.0 dict directory.

Usage: python3 tools/gen_lexicon.py <wordnet-dict-dir> <out.tsv>

Each output line is `token<TAB>syn1,syn2,...`. Keys are single lowercase
alphabetic lemmas; synonyms are the other lemmas of every synset the key
belongs to, in synset-file order, lowercased, with `_`/`-` turned into
spaces and anything outside [a-z ] removed.
"""

import re
import sys
from pathlib import Path

POS_FILES = ["data.noun", "data.verb", "data.adj", "data.adv"]
ADJ_MARKER = re.compile(r"\((a|p|ip)\)$")


def clean(lemma: str) -> str:
    lemma = ADJ_MARKER.sub("", lemma).lower().replace("_", " ").replace("-", " ")
    lemma = "".join(ch for ch in lemma if ch == " " or "a" <= ch <= "z")
    return " ".join(lemma.split())


def synsets(dict_dir: Path):
    for name in POS_FILES:
        with open(dict_dir / name, encoding="utf-8") as fh:
            for line in fh:
                if line.startswith("  "):
                    continue
                fields = line.split()
                count = int(fields[3], 16)
                yield [clean(fields[4 + 2 * i]) for i in range(count)]


def main() -> None:
    dict_dir, out = Path(sys.argv[1]), Path(sys.argv[2])
    table: dict[str, list[str]] = {}
    for lemmas in synsets(dict_dir):
        lemmas = [l for l in lemmas if l]
        for key in lemmas:
            if not key.isalpha():
                continue
            entry = table.setdefault(key, [])
            for syn in lemmas:
                if syn != key and syn not in entry:
                    entry.append(syn)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        for key in sorted(table):
            if table[key]:
                fh.write(f"{key}\t{','.join(table[key])}\n")


if __name__ == "__main__":
    main()
