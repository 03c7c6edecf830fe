#!/usr/bin/env python3
"""Regenerate the bundled case documents under data/ from tabular
MATPOWER-style bus/branch/gen data.

Only the fields used by the library are kept: series r/x per branch and
net p.u. power injections per bus (generation minus demand, divided by
base MVA). Shunts, taps and ratings are dropped.
"""
import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, os.pardir, "data")

# (name, base_mva, ref_bus, ref_vm, loads {bus: (Pd, Qd)}, gens {bus: (Pg, Qg)}, branches [(f, t, r, x)])
CASES = []

# --- case6ww: Wood & Wollenberg 6-bus test system -----------------------
case6ww = dict(
    name="case6ww",
    base_mva=100.0,
    ref_bus=1,
    ref_vm=1.05,
    loads={4: (70, 70), 5: (70, 70), 6: (70, 70)},
    gens={2: (50, 74.4), 3: (60, 89.6)},
    branches=[
        (1, 2, 0.10, 0.20),
        (1, 4, 0.05, 0.20),
        (1, 5, 0.08, 0.30),
        (2, 3, 0.05, 0.25),
        (2, 4, 0.05, 0.10),
        (2, 5, 0.10, 0.30),
        (2, 6, 0.07, 0.20),
        (3, 5, 0.12, 0.26),
        (3, 6, 0.02, 0.10),
        (4, 5, 0.20, 0.40),
        (5, 6, 0.10, 0.30),
    ],
    n_bus=6,
)

# --- case14: IEEE 14-bus ------------------------------------------------
case14 = dict(
    name="case14",
    base_mva=100.0,
    ref_bus=1,
    ref_vm=1.06,
    loads={
        2: (21.7, 12.7), 3: (94.2, 19.0), 4: (47.8, -3.9), 5: (7.6, 1.6),
        6: (11.2, 7.5), 9: (29.5, 16.6), 10: (9.0, 5.8), 11: (3.5, 1.8),
        12: (6.1, 1.6), 13: (13.5, 5.8), 14: (14.9, 5.0),
    },
    gens={2: (40.0, 42.4), 3: (0.0, 23.4), 6: (0.0, 12.2), 8: (0.0, 17.4)},
    branches=[
        (1, 2, 0.01938, 0.05917),
        (1, 5, 0.05403, 0.22304),
        (2, 3, 0.04699, 0.19797),
        (2, 4, 0.05811, 0.17632),
        (2, 5, 0.05695, 0.17388),
        (3, 4, 0.06701, 0.17103),
        (4, 5, 0.01335, 0.04211),
        (4, 7, 0.0, 0.20912),
        (4, 9, 0.0, 0.55618),
        (5, 6, 0.0, 0.25202),
        (6, 11, 0.09498, 0.19890),
        (6, 12, 0.12291, 0.25581),
        (6, 13, 0.06615, 0.13027),
        (7, 8, 0.0, 0.17615),
        (7, 9, 0.0, 0.11001),
        (9, 10, 0.03181, 0.08450),
        (9, 14, 0.12711, 0.27038),
        (10, 11, 0.08205, 0.19207),
        (12, 13, 0.22092, 0.19988),
        (13, 14, 0.17093, 0.34802),
    ],
    n_bus=14,
)

# --- case57: IEEE 57-bus ------------------------------------------------
case57 = dict(
    name="case57",
    base_mva=100.0,
    ref_bus=1,
    ref_vm=1.04,
    loads={
        1: (55, 17), 2: (3, 88), 3: (41, 21), 5: (13, 4), 6: (75, 2),
        8: (150, 22), 9: (121, 26), 10: (5, 2), 12: (377, 24),
        13: (18, 2.3), 14: (10.5, 5.3), 15: (22, 5), 16: (43, 3),
        17: (42, 8), 18: (27.2, 9.8), 19: (3.3, 0.6), 20: (2.3, 1),
        23: (6.3, 2.1), 25: (6.3, 3.2), 27: (9.3, 0.5), 28: (4.6, 2.3),
        29: (17, 2.6), 30: (3.6, 1.8), 31: (5.8, 2.9), 32: (1.6, 0.8),
        33: (3.8, 1.9), 35: (6, 3), 38: (14, 7), 41: (6.3, 3),
        42: (7.1, 4.4), 43: (2, 1), 44: (12, 1.8), 47: (29.7, 11.6),
        49: (18, 8.5), 50: (21, 10.5), 51: (18, 5.3), 52: (4.9, 2.2),
        53: (20, 10), 54: (4.1, 1.4), 55: (6.8, 3.4), 56: (7.6, 2.2),
        57: (6.7, 2),
    },
    gens={
        2: (0, -0.8), 3: (40, -1), 6: (0, 0.8), 8: (450, 62.1),
        9: (0, 2.2), 12: (310, 128.5),
    },
    branches=[
        (1, 2, 0.0083, 0.0280),
        (2, 3, 0.0298, 0.0850),
        (3, 4, 0.0112, 0.0366),
        (4, 5, 0.0625, 0.1320),
        (4, 6, 0.0430, 0.1480),
        (6, 7, 0.0200, 0.1020),
        (6, 8, 0.0339, 0.1730),
        (8, 9, 0.0099, 0.0505),
        (9, 10, 0.0369, 0.1679),
        (9, 11, 0.0258, 0.0848),
        (9, 12, 0.0648, 0.2950),
        (9, 13, 0.0481, 0.1580),
        (13, 14, 0.0132, 0.0434),
        (13, 15, 0.0269, 0.0869),
        (1, 15, 0.0178, 0.0910),
        (1, 16, 0.0454, 0.2060),
        (1, 17, 0.0238, 0.1080),
        (3, 15, 0.0162, 0.0530),
        (4, 18, 0.0, 0.5550),
        (4, 18, 0.0, 0.4300),
        (5, 6, 0.0302, 0.0641),
        (7, 8, 0.0139, 0.0712),
        (10, 12, 0.0277, 0.1262),
        (11, 13, 0.0223, 0.0732),
        (12, 13, 0.0178, 0.0580),
        (12, 16, 0.0180, 0.0813),
        (12, 17, 0.0397, 0.1790),
        (14, 15, 0.0171, 0.0547),
        (18, 19, 0.4610, 0.6850),
        (19, 20, 0.2830, 0.4340),
        (21, 20, 0.0, 0.7767),
        (21, 22, 0.0736, 0.1170),
        (22, 23, 0.0099, 0.0152),
        (23, 24, 0.1660, 0.2560),
        (24, 25, 0.0, 1.1820),
        (24, 25, 0.0, 1.2300),
        (24, 26, 0.0, 0.0473),
        (26, 27, 0.1650, 0.2540),
        (27, 28, 0.0618, 0.0954),
        (28, 29, 0.0418, 0.0587),
        (7, 29, 0.0, 0.0648),
        (25, 30, 0.1350, 0.2020),
        (30, 31, 0.3260, 0.4970),
        (31, 32, 0.5070, 0.7550),
        (32, 33, 0.0392, 0.0360),
        (34, 32, 0.0, 0.9530),
        (34, 35, 0.0520, 0.0780),
        (35, 36, 0.0430, 0.0537),
        (36, 37, 0.0290, 0.0366),
        (37, 38, 0.0651, 0.1009),
        (37, 39, 0.0239, 0.0379),
        (36, 40, 0.0300, 0.0466),
        (22, 38, 0.0192, 0.0295),
        (11, 41, 0.0, 0.7490),
        (41, 42, 0.2070, 0.3520),
        (41, 43, 0.0, 0.4120),
        (38, 44, 0.0289, 0.0585),
        (15, 45, 0.0, 0.1042),
        (14, 46, 0.0, 0.0735),
        (46, 47, 0.0230, 0.0680),
        (47, 48, 0.0182, 0.0233),
        (48, 49, 0.0834, 0.1290),
        (49, 50, 0.0801, 0.1280),
        (50, 51, 0.1386, 0.2200),
        (10, 51, 0.0, 0.0712),
        (13, 49, 0.0, 0.1910),
        (29, 52, 0.1442, 0.1870),
        (52, 53, 0.0762, 0.0984),
        (53, 54, 0.1878, 0.2320),
        (54, 55, 0.1732, 0.2265),
        (11, 43, 0.0, 0.1530),
        (44, 45, 0.0624, 0.1242),
        (40, 56, 0.0, 1.1950),
        (56, 41, 0.5530, 0.5490),
        (56, 42, 0.2125, 0.3540),
        (39, 57, 0.0, 1.3550),
        (57, 56, 0.1740, 0.2600),
        (38, 49, 0.1150, 0.1770),
        (38, 48, 0.0312, 0.0482),
        (9, 55, 0.0, 0.1205),
    ],
    n_bus=57,
)

CASES = [case6ww, case14, case57]


def emit(case):
    base = case["base_mva"]
    buses = []
    for b in range(1, case["n_bus"] + 1):
        pd, qd = case["loads"].get(b, (0.0, 0.0))
        pg, qg = case["gens"].get(b, (0.0, 0.0))
        buses.append({
            "id": b,
            "p": round((pg - pd) / base, 6),
            "q": round((qg - qd) / base, 6),
        })
    branches = [
        {"from": f, "to": t, "r": r, "x": x}
        for (f, t, r, x) in case["branches"]
    ]
    doc = {
        "name": case["name"],
        "base_mva": base,
        "ref_bus": case["ref_bus"],
        "ref_vm": case["ref_vm"],
        "buses": buses,
        "branches": branches,
    }
    path = os.path.join(OUT, case["name"] + ".json")
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    print(f"{path}: {len(buses)} buses, {len(branches)} branches")


if __name__ == "__main__":
    for case in CASES:
        emit(case)
