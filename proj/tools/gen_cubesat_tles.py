#!/usr/bin/env python3
"""Generate the bundled synthetic CubeSat TLE snapshot (data/cubesats.tle).

The element sets are synthetic but follow the orbit families CubeSats
occupy: sun-synchronous rideshare shells and ISS deployments.
"""
import argparse
import math
import random

MU = 398600.4418
RE = 6378.135


def checksum(line: str) -> int:
    total = 0
    for ch in line:
        if ch.isdigit():
            total += int(ch)
        elif ch == "-":
            total += 1
    return total % 10


def exp_field(value: float) -> str:
    if value == 0.0:
        return " 00000-0"
    sign = "-" if value < 0 else " "
    v = abs(value)
    exp = math.floor(math.log10(v)) + 1
    mant = round(v / 10**exp * 1e5)
    if mant >= 100000:
        mant //= 10
        exp += 1
    return f"{sign}{mant:05d}{'-' if exp < 0 else '+'}{abs(exp)}"


def mean_motion(alt_km: float) -> float:
    a = RE + alt_km
    return 86400.0 / (2 * math.pi * math.sqrt(a**3 / MU))


def tle(name, satnum, epoch_day, incl, raan, ecc, argp, ma, n, bstar):
    ndot = f"{0.00001:.8f}"[1:]
    l1 = (f"1 {satnum:05d}U {'25001A':<8s} 25{epoch_day:012.8f}  {ndot} {exp_field(0.0)} "
          f"{exp_field(bstar)} 0  999")
    l2 = (f"2 {satnum:05d} {incl:8.4f} {raan:8.4f} {round(ecc * 1e7):07d} {argp:8.4f} {ma:8.4f} "
          f"{n:11.8f}{1000:5d}")
    assert len(l1) == 68 and len(l2) == 68, (l1, l2)
    return name, l1 + str(checksum(l1)), l2 + str(checksum(l2))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--count", type=int, default=98)
    parser.add_argument("--seed", type=int, default=20250627)
    parser.add_argument("--out", default="data/cubesats.tle")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    records = []
    for i in range(args.count):
        if i % 5 < 3:
            incl = rng.uniform(97.3, 97.8)
            alt = rng.uniform(450.0, 600.0)
        else:
            incl = rng.uniform(51.55, 51.65)
            alt = rng.uniform(380.0, 420.0)
        records.append(tle(
            f"CUBESAT-{i + 1:03d}", 90001 + i, 177.5,
            incl, rng.uniform(0, 360), rng.uniform(0.0002, 0.002),
            rng.uniform(0, 360), rng.uniform(0, 360), mean_motion(alt), rng.uniform(1e-4, 8e-4)))

    with open(args.out, "w", encoding="ascii") as f:
        f.write("# Synthetic CubeSat snapshot, epoch 2025-06-26T12:00:00Z; regenerate with tools/gen_cubesat_tles.py\n")
        for name, l1, l2 in records:
            f.write(f"{name}\n{l1}\n{l2}\n")


if __name__ == "__main__":
    main()
