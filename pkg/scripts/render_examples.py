#!/usr/bin/env python3
"""Render a few showcase derivations to SVG and TikZ in ./renders/.

Usage: python scripts/render_examples.py [out_dir]
"""

import sys
from pathlib import Path

from discoccg import biclosed as bc
from discoccg.corpus import load_corpus
from discoccg.functor import DEFAULT_CONTEXT, lower
from discoccg.render import render_svg, render_tikz
from discoccg.rewrite import normalize, planarize

EXAMPLES = [
    "alice-likes-bob", "alice-likes-bob-raised", "big-bad-wolf-left",
    "np-shift", "bruce-puts-on-his-hat", "dutch-cross-serial",
]


def main() -> int:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("renders")
    out_dir.mkdir(parents=True, exist_ok=True)
    corpus = dict(load_corpus())
    for ident in EXAMPLES:
        diagram = lower(bc.lower_derivation(corpus[ident]), DEFAULT_CONTEXT)
        (out_dir / f"{ident}.svg").write_bytes(render_svg(diagram))
        (out_dir / f"{ident}.tikz").write_text(render_tikz(diagram))
        planar = normalize(planarize(diagram))
        (out_dir / f"{ident}.planar.svg").write_bytes(render_svg(planar))
    print(f"wrote {3 * len(EXAMPLES)} files to {out_dir}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
