#!/usr/bin/env python3
"""Convert a MATPOWER case file (.m) into the JSON case format used here.

Only the fields this toolkit needs are extracted: net active/reactive bus
injections (generation minus load, in p.u.), branch endpoints with series
r/x, the reference bus, and its voltage setpoint. Shunts, taps, and line
limits are ignored; transformers are treated as plain series branches.

Usage: tools/convert_case.py case.m > case.json
"""
import argparse
import json
import re
import sys


def read_matrix(text, name):
    m = re.search(rf"mpc\.{name}\s*=\s*\[(.*?)\];", text, re.S)
    if not m:
        raise SystemExit(f"matrix mpc.{name} not found")
    rows = []
    for line in m.group(1).splitlines():
        line = line.split("%")[0].strip().rstrip(";")
        if not line:
            continue
        rows.append([float(tok) for tok in line.replace(",", " ").split()])
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("case_m")
    ap.add_argument("--tau", type=float, default=None,
                    help="per-branch D-FACTS limit to record (optional)")
    args = ap.parse_args()

    text = open(args.case_m).read()
    base = float(re.search(r"mpc\.baseMVA\s*=\s*([\d.]+)", text).group(1))
    bus = read_matrix(text, "bus")
    gen = read_matrix(text, "gen")
    branch = read_matrix(text, "branch")
    name_m = re.search(r"function\s+mpc\s*=\s*(\w+)", text)
    name = name_m.group(1) if name_m else "converted"

    gen_p = {}
    gen_q = {}
    for row in gen:
        b = int(row[0])
        if len(row) > 7 and row[7] == 0:  # out of service
            continue
        gen_p[b] = gen_p.get(b, 0.0) + row[1]
        gen_q[b] = gen_q.get(b, 0.0) + row[2]

    ref = None
    ref_vm = 1.0
    buses = []
    for row in bus:
        b, btype, pd, qd = int(row[0]), int(row[1]), row[2], row[3]
        if btype == 3:
            ref = b
            ref_vm = row[7]
        p = (gen_p.get(b, 0.0) - pd) / base
        q = (gen_q.get(b, 0.0) - qd) / base
        buses.append({"id": b, "p": round(p, 10), "q": round(q, 10)})
    if ref is None:
        raise SystemExit("no reference (type 3) bus found")

    branches = []
    for row in branch:
        if len(row) > 10 and row[10] == 0:  # out of service
            continue
        entry = {"from": int(row[0]), "to": int(row[1]),
                 "r": row[2], "x": row[3]}
        if args.tau is not None:
            entry["tau"] = args.tau
        branches.append(entry)

    doc = {"name": name, "base_mva": base, "ref_bus": ref, "ref_vm": ref_vm,
           "buses": buses, "branches": branches}
    json.dump(doc, sys.stdout, indent=1)
    print()


if __name__ == "__main__":
    main()
