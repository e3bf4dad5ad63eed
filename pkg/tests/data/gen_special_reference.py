"""Regenerate special_reference.json with mpmath at 50 decimal digits.

Run from the repository root::

    python tests/data/gen_special_reference.py

The JSON is committed; mpmath is only needed to regenerate it.
"""

from __future__ import annotations

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50


def t_cdf(t, df):
    t, df = mp.mpf(t), mp.mpf(df)
    x = df / (df + t * t)
    tail = mp.betainc(df / 2, mp.mpf(1) / 2, 0, x, regularized=True) / 2
    return tail if t < 0 else 1 - tail


def chi2_cdf(x, df):
    return mp.gammainc(mp.mpf(df) / 2, 0, mp.mpf(x) / 2, regularized=True)


def f_cdf(x, d1, d2):
    x, d1, d2 = mp.mpf(x), mp.mpf(d1), mp.mpf(d2)
    return mp.betainc(d1 / 2, d2 / 2, 0, d1 * x / (d1 * x + d2), regularized=True)


T_POINTS = [
    (-6.0, 1), (-2.5, 1), (0.5, 1), (3.0, 1),
    (-1.8, 2), (1.2, 2), (-0.3, 3), (2.2584, 5),
    (-2.2584, 5), (0.7, 5), (4.0, 7), (-1.0, 8),
    (1.5, 12), (-3.5, 17), (2.0, 17), (0.05, 30),
    (-2.1, 60), (1.96, 120), (-0.675, 200), (5.5, 200),
]

CHI2_POINTS = [
    (0.1, 1), (1.0, 1), (3.84, 1), (0.5, 2),
    (2.0, 2), (5.99, 2), (1.0, 3), (7.81, 3),
    (2.5, 5), (11.07, 5), (4.0, 8), (15.5, 8),
    (9.0, 12), (21.0, 12), (15.0, 20), (31.4, 20),
    (40.0, 50), (67.5, 50), (90.0, 98), (124.3, 98),
]

F_POINTS = [
    (0.5, 1, 1), (4.0, 1, 1), (1.0, 1, 5), (6.61, 1, 5),
    (0.8, 2, 8), (4.46, 2, 8), (1.5, 3, 10), (3.71, 3, 10),
    (2.0, 4, 4), (6.39, 4, 4), (0.3, 5, 20), (2.71, 5, 20),
    (1.2, 6, 30), (2.42, 6, 30), (0.9, 8, 15), (2.64, 8, 15),
    (1.1, 10, 10), (2.98, 10, 10), (0.7, 12, 60), (1.92, 12, 60),
]

GAMMAINC_POINTS = [
    (0.5, 0.1), (0.5, 1.0), (0.5, 4.0), (1.0, 0.5),
    (1.0, 2.0), (2.5, 0.8), (2.5, 3.0), (2.5, 9.0),
    (5.0, 2.0), (5.0, 5.0), (5.0, 12.0), (9.0, 6.5),
    (9.0, 15.0), (20.0, 14.0), (20.0, 28.0), (50.0, 40.0),
    (50.0, 62.0), (100.0, 90.0), (100.0, 117.0), (250.0, 260.0),
]

BETAINC_POINTS = [
    (0.5, 0.5, 0.1), (0.5, 0.5, 0.7), (1.0, 3.0, 0.2), (2.0, 2.0, 0.5),
    (2.0, 5.0, 0.35), (3.5, 1.5, 0.8), (4.0, 4.0, 0.25), (5.0, 2.0, 0.9),
    (8.5, 8.5, 0.5), (8.5, 8.5, 0.05), (10.0, 3.0, 0.6), (0.25, 4.0, 0.02),
    (12.0, 30.0, 0.3), (30.0, 12.0, 0.7), (60.0, 60.0, 0.45), (1.5, 0.5, 0.99),
    (0.5, 9.0, 0.001), (9.0, 0.5, 0.999), (100.0, 1.0, 0.98), (2.5, 97.5, 0.03),
]

DIGAMMA_POINTS = [0.1, 0.5, 1.0, 1.4616, 2.0, 3.7, 5.0, 9.25, 20.0, 123.4]


def main() -> None:
    payload = {
        "t_cdf": [[t, df, float(t_cdf(t, df))] for t, df in T_POINTS],
        "chi2_cdf": [[x, df, float(chi2_cdf(x, df))] for x, df in CHI2_POINTS],
        "f_cdf": [[x, d1, d2, float(f_cdf(x, d1, d2))] for x, d1, d2 in F_POINTS],
        "gammainc_p": [
            [a, x, float(mp.gammainc(a, 0, x, regularized=True))]
            for a, x in GAMMAINC_POINTS
        ],
        "betainc": [
            [a, b, x, float(mp.betainc(a, b, 0, x, regularized=True))]
            for a, b, x in BETAINC_POINTS
        ],
        "digamma": [[x, float(mp.digamma(x))] for x in DIGAMMA_POINTS],
    }
    out = Path(__file__).with_name("special_reference.json")
    out.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
