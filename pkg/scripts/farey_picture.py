#!/usr/bin/env python3
"""Render the Farey horoball packing together with a bi-infinite geodesic
avoiding the shrunk family.  Writes farey.svg in the working directory."""

import argparse

from horoshadow import biinfinite_line, farey, glue_constants, sharp_shrink_time
from horoshadow.render import family_svg


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--qmax", type=int, default=30)
    ap.add_argument("--out", default="farey.svg")
    args = ap.parse_args()

    fam = farey(args.qmax, (0, 1), include_infinity=True)
    t = sharp_shrink_time(1) + glue_constants()["triangle"] + 0.01
    res = biinfinite_line(fam, t)
    print(f"avoiding line endpoints: {res.endpoints}, "
          f"margin {res.report.margin:.4f}, certified={res.report.ok}")
    with open(args.out, "w") as fh:
        fh.write(family_svg(fam, [res.line]))
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
