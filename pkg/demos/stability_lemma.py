"""Stable points of dimension theta(D4) under the King character, over F2 and F3."""

from __future__ import annotations

from qlie.cocycle import Orientation
from qlie.stability import stability_lemma_harness


def main():
    for text in ("0>1,0>2,0>3", "1>0,2>0,3>0"):
        rep = stability_lemma_harness("D4", (2, 1, 1, 1), Orientation.parse("D4", text))
        print(f"orientation {text}: one-part label <=> stable on all {len(rep.rows)} classes: {rep.ok}")
        for row in rep.rows[:6]:
            print("  q=%d  %s" % (row.q, row.line()))


if __name__ == "__main__":
    main()
