"""Rotation number of a degree-one PL circle map by a long plain orbit.

Usage: rotnum_oracle.py MAP.json [N]  ->  prints {"n": N, "rot": value}

The lift is F(x) = floor(x) + f(frac(x)) with f interpolating the
breakpoints and closing up with (1, y0 + 1). (F^N(0) - 0) / N is within
1/N of the rotation number.
"""
import bisect
import json
import math
import sys


def load(path):
    doc = json.load(open(path))
    if doc["degree"] != 1:
        raise SystemExit("only degree one maps")
    pts = sorted((float(x), float(y)) for x, y in doc["breakpoints"])
    pts.append((1.0, pts[0][1] + 1.0))
    return pts


def lift(pts, xs, x):
    k = math.floor(x)
    t = x - k
    i = bisect.bisect_right(xs, t) - 1
    (x0, y0), (x1, y1) = pts[i], pts[i + 1]
    return k + y0 + (y1 - y0) * (t - x0) / (x1 - x0)


def main():
    pts = load(sys.argv[1])
    n = int(sys.argv[2]) if len(sys.argv) > 2 else 2_000_000
    xs = [p[0] for p in pts]
    x = 0.0
    for _ in range(n):
        x = lift(pts, xs, x)
    print(json.dumps({"n": n, "rot": (x / n) % 1.0}))


if __name__ == "__main__":
    main()
