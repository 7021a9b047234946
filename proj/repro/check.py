#!/usr/bin/env python3
"""Stochastic-tolerance checks for the repro outputs.

Byte equality is meaningless for Monte Carlo tables, so this applies the
qualitative and point checks the suite is expected to satisfy:
  table1-3: MSE at n=100 below MSE at n=10 for every estimator; the
            expected estimator is MSE-best where a best is pinned.
  table4:   monotone decrease in n per statistic; GD(20), GB(50), GV(10)
            near their reference points.
  table5:   KS power against A2 at n=30 near its reference; null rejection
            rates within +-0.01 of 0.05.
  table6:   three rows, finite estimates, model IV equal to rate^2/48.

Exit code = number of failed checks.
"""

import csv
import json
import math
import os
import sys

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out")
failures = []


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def load_csv(name):
    path = os.path.join(OUT, name)
    if not os.path.exists(path):
        return None
    with open(path) as f:
        return list(csv.DictReader(f))


def mse_table(name, best=None, best_at=()):
    rows = load_csv(name)
    if rows is None:
        print(f"skip {name} (not generated)")
        return
    mse = {(int(r["n"]), r["estimator"]): float(r["mse"]) for r in rows}
    estimators = sorted({r["estimator"] for r in rows})
    for e in estimators:
        check(mse[(100, e)] < mse[(10, e)], f"{name}: {e} MSE(100) < MSE(10)")
    for n in best_at:
        others = [e for e in estimators if e != best]
        check(all(mse[(n, best)] < mse[(n, o)] for o in others),
              f"{name}: {best} MSE-best at n={n}")


mse_table("table1.csv")
mse_table("table2.csv", best="kde-plugin", best_at=(20, 50, 100))
mse_table("table3.csv", best="kde-integral", best_at=(100,))

rows = load_csv("table4.csv")
if rows is None:
    print("skip table4.csv (not generated)")
else:
    crit = {(r["stat"], int(r["n"])): float(r["critical"]) for r in rows}
    for stat in ("GV", "GD", "GB"):
        ns = sorted(n for s, n in crit if s == stat)
        check(all(crit[(stat, a)] > crit[(stat, b)]
                  for a, b in zip(ns, ns[1:])),
              f"table4: {stat} decreasing in n")
    for stat, n, ref, tol in (("GD", 20, 0.0485, 0.1 * 0.0485),
                              ("GB", 50, 0.0226, 0.1 * 0.0226),
                              ("GV", 10, 0.9102, 0.05)):
        if (stat, n) in crit:
            check(abs(crit[(stat, n)] - ref) <= tol,
                  f"table4: {stat}(n={n}) = {crit[(stat, n)]:.4f} ~ {ref}")

rows = load_csv("table5.csv")
if rows is None:
    print("skip table5.csv (not generated)")
else:
    power = {(r["stat"], r["alt"], int(r["n"])): float(r["power"])
             for r in rows}
    if ("KS", "A2", 30) in power:
        check(abs(power[("KS", "A2", 30)] - 0.8751) <= 0.02,
              f"table5: KS/A2/30 = {power[('KS', 'A2', 30)]:.4f} ~ 0.8751")
    for stat in ("GV", "GD", "GB", "KS"):
        key = (stat, "uniform", 20)
        if key in power:
            check(abs(power[key] - 0.05) <= 0.01,
                  f"table5: size({stat},20) = {power[key]:.4f} ~ 0.05")

path = os.path.join(OUT, "table6.json")
if not os.path.exists(path):
    print("skip table6.json (not generated)")
else:
    with open(path) as f:
        doc = json.load(f)
    check(len(doc["rows"]) == 3, "table6: three windows")
    lam = doc["lambda"]
    for row in doc["rows"]:
        tag = f"table6 ({row['t1']},{row['t2']})"
        check(abs(row["model_iv_constant"] - lam * lam / 48) < 1e-12,
              f"{tag}: model IV is rate^2/48")
        for key in ("spacing", "kde_integral", "kde_plugin"):
            check(math.isfinite(row[key]), f"{tag}: {key} finite")

print(f"{len(failures)} check(s) failed")
sys.exit(len(failures))
