#!/usr/bin/env python3
"""Tick-by-tick hand simulation of the smoke scenario.

Written from the model definitions, sharing no code with the C++ library:
free-space path loss with the 1 m clamp, body loss zero (the visitor always
faces the beacon), no noise, windowed EWMA in integer tick units, the
arrival hold rule and the quest timing rules. Produces the expected game
event sequence (kind, time, quest, trend, zone) as JSON lines.

    smoke_walkthrough.py SCENARIO GOLDEN           # check GOLDEN matches
    smoke_walkthrough.py SCENARIO GOLDEN --write   # regenerate GOLDEN
"""

import argparse
import json
import math
import sys
from fractions import Fraction


def load(path):
    with open(path) as f:
        return json.load(f)


def simulate(sc):
    tick = Fraction(str(sc["tick"]))
    n_ticks = int(Fraction(str(sc["duration"])) / tick)

    radio = {"p_ref": -59.0, "n_pl": 2.2, "detect_floor": -95.0}
    radio.update({k: v for k, v in sc.get("radio", {}).items() if k in radio})
    for k in ("sigma_slow", "sigma_fast"):
        assert sc["radio"][k] == 0.0, "oracle assumes a noiseless channel"

    sens = {"half_life": 1.5, "window": 6.0, "trend_gap": 2.0, "trend_epsilon": 2.0,
            "lost_timeout": 4.0, "near_dbm": -65.0, "mid_dbm": -80.0,
            "arrival_dbm": -60.0, "arrival_hold": 3.0}
    sens.update(sc.get("sensing", {}))
    window = int(Fraction(str(sens["window"])) / tick)
    gap = int(Fraction(str(sens["trend_gap"])) / tick)
    hold = int(Fraction(str(sens["arrival_hold"])) / tick)
    lost_timeout = int(Fraction(str(sens["lost_timeout"])) / tick)

    q = sc["quests"]
    assert q["encounter_jitter"] == 0.0 and len(q["ghosts"]) == 1
    delay = int(Fraction(str(q["encounter_delay"])) / tick)
    period = int(Fraction(str(q.get("feedback_period", 2.0))) / tick)

    beacon = tuple(sc["floorplan"]["artifacts"][0]["position"])
    vx, vy = sc["visitor"]["position"]
    speed = sc["visitor"]["speed"]

    # Which steps walk: step k covers [(k-1) tick, k tick] and takes the
    # entry whose window [t, t + duration) contains its start time.
    (entry,) = sc["visitor_script"]
    assert entry["cmd"] == "walk" and entry["direction"] == 0.0
    start = Fraction(str(entry["t"]))
    stop = start + Fraction(str(entry["duration"]))

    rssi = {}
    x = vx
    for k in range(0, n_ticks + 1):
        if k >= 1 and start <= (k - 1) * tick < stop:
            x += speed * float(tick)
        d = max(1.0, math.hypot(beacon[0] - x, beacon[1] - vy))
        value = radio["p_ref"] - 10.0 * radio["n_pl"] * math.log10(d)
        rssi[k] = value if value >= radio["detect_floor"] else None

    def smoothed(k_now, j):
        # samples i retained at k_now and inside [k_now - window, j]
        num = den = 0.0
        for i in range(max(0, k_now - window), j + 1):
            if rssi[i] is None:
                continue
            w = 2.0 ** (-float((j - i) * tick) / sens["half_life"])
            num += w * rssi[i]
            den += w
        return num / den if den > 0 else None

    def estimate(k):
        now = smoothed(k, k)
        last = max((i for i in range(0, k + 1) if rssi[i] is not None), default=None)
        if now is None or last is None or k - last > lost_timeout:
            return "lost", "unknown"
        zone = "near" if now >= sens["near_dbm"] else "mid" if now >= sens["mid_dbm"] else "far"
        oldest = max(0, k - window)
        if k - oldest < gap:
            return zone, "unknown"
        before = smoothed(k, k - gap)
        if before is None:
            return zone, "unknown"
        delta = now - before
        trend = "warmer" if delta > sens["trend_epsilon"] else \
                "colder" if delta < -sens["trend_epsilon"] else "steady"
        return zone, trend

    def arrived(k):
        oldest = max(0, k - window)
        if oldest > k - hold:
            return False
        for j in range(k - hold, k + 1):
            v = smoothed(k, j)
            if v is None or v < sens["arrival_dbm"]:
                return False
        return True

    def t_of(k):
        return round(float(k * tick), 6)

    events = []
    seeking_from = None
    next_feedback = None
    completed_at = None
    for k in range(0, n_ticks + 1):
        if seeking_from is None:
            if k >= delay:
                events.append({"kind": "GhostAppeared", "t": t_of(k), "quest": 0})
                seeking_from = k
                next_feedback = k + period
            continue
        if completed_at is None:
            if arrived(k):
                events.append({"kind": "QuestCompleted", "t": t_of(k), "quest": 0})
                completed_at = k
            elif k >= next_feedback:
                zone, trend = estimate(k)
                events.append({"kind": "Feedback", "t": t_of(k), "quest": 0, "trend": trend, "zone": zone})
                next_feedback += period
            continue
        if k == completed_at + delay:
            for kind in ("AchievementUnlocked", "ShareOffered", "FinalGhostAppeared", "GameCompleted"):
                events.append({"kind": kind, "t": t_of(k)})
    return events


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("scenario")
    ap.add_argument("golden")
    ap.add_argument("--write", action="store_true")
    args = ap.parse_args()

    lines = [json.dumps(e, sort_keys=True) for e in simulate(load(args.scenario))]
    if args.write:
        with open(args.golden, "w") as f:
            f.write("\n".join(lines) + "\n")
        print(f"wrote {len(lines)} events to {args.golden}")
        return 0
    with open(args.golden) as f:
        committed = [ln.strip() for ln in f if ln.strip()]
    if committed != lines:
        print("golden file disagrees with the hand simulation:", file=sys.stderr)
        for a, b in zip(committed + [""] * len(lines), lines + [""] * len(committed)):
            if a != b:
                print(f"  golden: {a}\n  oracle: {b}", file=sys.stderr)
        return 1
    done = next(e for e in json.loads("[" + ",".join(lines) + "]") if e["kind"] == "QuestCompleted")
    print(f"ok: {len(lines)} events, quest 0 completes at t={done['t']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
