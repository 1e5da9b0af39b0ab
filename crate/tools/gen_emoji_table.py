"""Build data/emoji.tsv from the `emoji` Python package (pip install emoji).

Usage: python3 tools/gen_emoji_table.py <out.tsv>

Each output line is `1F497<TAB>growing heart`: hyphen-joined uppercase hex
code points, then the English short name lowercased with colons dropped,
underscores turned into spaces and every non-alphanumeric character
replaced by a space.
"""

import sys

import emoji


def name_words(short_name: str) -> str:
    words = []
    for ch in short_name.strip(":").replace("_", " ").lower():
        words.append(ch if ch.isalnum() else " ")
    return " ".join("".join(words).split())


def main() -> None:
    rows = []
    for seq, data in emoji.EMOJI_DATA.items():
        name = name_words(data["en"])
        if not name:
            continue
        key = "-".join(f"{ord(c):X}" for c in seq)
        rows.append((key, name))
    rows.sort()
    with open(sys.argv[1], "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# generated from emoji {emoji.__version__}\n")
        for key, name in rows:
            fh.write(f"{key}\t{name}\n")


if __name__ == "__main__":
    main()
