"""Regenerate the JSON files under ``arrangements/``.

Two hand-checked instances plus a handful of seeded random ones. Run from
anywhere; the output directory is resolved relative to this file.
"""

from pathlib import Path

from toricenter import ToricArrangement, dump_arrangement, unit
from toricenter.corpus import random_corpus

OUT = Path(__file__).with_name("arrangements")

HAND_MADE = {
    "single.json": ToricArrangement.from_rows([[2, 4]], [unit("1/2")]),
    "pair.json": ToricArrangement.from_rows([[1, 2], [1, 1]], [unit("1/2"), unit(0)]),
    "centered.json": ToricArrangement.from_rows([[1, 0, 2], [0, 3, 1]], [unit(0), unit(0)]),
    "rank_deficient.json": ToricArrangement.from_rows([[1, 2], [2, 4]], [unit(0), unit(0)]),
}


def main():
    OUT.mkdir(exist_ok=True)
    for name, a in HAND_MADE.items():
        dump_arrangement(a, OUT / name)
    for k, a in enumerate(random_corpus(4, seed=2026)):
        dump_arrangement(a, OUT / f"random_{k}.json")
    for k, a in enumerate(random_corpus(2, seed=2027, complexified=True)):
        dump_arrangement(a, OUT / f"unit_{k}.json")
    print(f"wrote {len(list(OUT.glob('*.json')))} files to {OUT}")


if __name__ == "__main__":
    main()
