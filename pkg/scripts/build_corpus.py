#!/usr/bin/env python3
"""Regenerate the bundled finite-group corpus as JSON files.

Each group lands in its own file so the verification suite treats it as an
independent subject.  Running this script is idempotent; the output matches
what ships inside the package under qgcalc/data/groups.
"""

import argparse
import os

from qgcalc.groups import standard_corpus
from qgcalc.serialize import group_to_obj, write_json

DEFAULT_OUT = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
    "src",
    "qgcalc",
    "data",
    "groups",
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=DEFAULT_OUT, help="output directory")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for name, g in standard_corpus().items():
        path = os.path.join(args.out, name.lower() + ".json")
        write_json(path, group_to_obj(g))
        print(f"wrote {path} (order {g.order})")


if __name__ == "__main__":
    main()
