#!/usr/bin/env python3
"""Regenerates the bundled synthetic dataset under data/sample/.

Two short seasons of an eight-team league: a full single round robin in
2021 (28 fixtures) and three rounds of 2022 (12 fixtures) where Norwich
replaces Burnley and one Chelsea forward has moved to Arsenal. Goals are
drawn from team-strength Poisson rates, player stats are noisy functions of
the same rates, and correct-score odds are Poisson probabilities with a
bookmaker margin. Very unlikely scorelines are left unquoted.

Usage: gen_sample_data.py [out_dir]
"""

import csv
import math
import random
import sys
from datetime import datetime, timedelta
from pathlib import Path

SEED = 20230427

TEAMS_2021 = ["Arsenal", "Chelsea", "Liverpool", "Everton",
              "Leeds", "Fulham", "Brentford", "Burnley"]
TEAMS_2022 = TEAMS_2021[:-1] + ["Norwich"]
CODES = {"Arsenal": "ARS", "Chelsea": "CHE", "Liverpool": "LIV", "Everton": "EVE",
         "Leeds": "LEE", "Fulham": "FUL", "Brentford": "BRE", "Burnley": "BUR",
         "Norwich": "NOR"}
STRENGTH = {  # (attack, defence) multipliers; defence < 1 concedes less
    "Arsenal": (1.25, 0.85), "Chelsea": (1.30, 0.80), "Liverpool": (1.45, 0.75),
    "Everton": (0.95, 1.05), "Leeds": (1.00, 1.20), "Fulham": (0.90, 1.05),
    "Brentford": (0.95, 1.00), "Burnley": (0.75, 1.10), "Norwich": (0.70, 1.30),
}
SQUAD_SHAPE = [("GK", 2), ("DF", 6), ("MF", 5), ("FW", 3)]
LINEUP_SHAPE = {"GK": 1, "DF": 4, "MF": 4, "FW": 2}

OFF_DF = ["Gls", "Ast", "xG", "xA", "Sh", "SoT", "KP", "PrgP", "PrgC", "SCA", "GCA", "Crs", "LngCmp"]
OFF_MF = OFF_DF + ["CmpPct"]
OFF_FW = ["Gls", "Ast", "xG", "npxG", "xA", "Sh", "SoT", "KP", "PrgC", "PrgR", "SCA", "GCA", "TouchAttPen"]
DEF_GK = ["CS", "GA", "PSxG", "Saves", "SavePct"]
DEF_DF = ["TklW", "Int", "Blocks", "Clr", "Err", "AerialWon", "Recov"]
GROUP_STATS = {"GK": DEF_GK, "DF": OFF_DF + DEF_DF, "MF": OFF_MF, "FW": OFF_FW}

SLOT_OFFSETS = [timedelta(hours=12, minutes=30), timedelta(hours=15),
                timedelta(hours=17, minutes=30), timedelta(days=1, hours=14)]


def poisson(rng, lam):
    limit, k, p = math.exp(-lam), 0, 1.0
    while True:
        p *= rng.random()
        if p <= limit:
            return k
        k += 1


def poisson_pmf(k, lam):
    return math.exp(-lam) * lam ** k / math.factorial(k)


def round_robin(teams):
    """Circle method; returns a list of rounds of (home, away) pairs."""
    teams = list(teams)
    n = len(teams)
    rounds = []
    for r in range(n - 1):
        pairs = []
        for i in range(n // 2):
            a, b = teams[i], teams[n - 1 - i]
            pairs.append((a, b) if (r + i) % 2 == 0 else (b, a))
        rounds.append(pairs)
        teams = [teams[0]] + [teams[-1]] + teams[1:-1]
    return rounds


def build_squads():
    squads, positions = {}, {}
    for team, code in CODES.items():
        squad, num = [], 1
        for group, count in SQUAD_SHAPE:
            for _ in range(count):
                pid = f"{code}{num:02d}"
                squad.append(pid)
                positions[pid] = group
                num += 1
        squads[team] = squad
    return squads, positions


def pick_lineup(rng, squad, positions):
    lineup = []
    for group, count in LINEUP_SHAPE.items():
        pool = [p for p in squad if positions[p] == group]
        if group == "GK":
            lineup.append(pool[0] if rng.random() < 0.85 else pool[1])
        else:
            lineup.extend(sorted(rng.sample(pool, count)))
    return lineup


def r2(x):
    return round(max(0.0, x), 2)


def player_stats(rng, group, team_goals, opp_goals, att_rate, scorers, assisters, pid):
    gls = scorers.count(pid)
    ast = assisters.count(pid)
    share = {"DF": 0.08, "MF": 0.18, "FW": 0.32}.get(group, 0.0)
    stats = {}
    if group == "GK":
        saves = poisson(rng, 2.0 + 0.8 * opp_goals)
        stats = {
            "CS": 1.0 if opp_goals == 0 else 0.0,
            "GA": float(opp_goals),
            "PSxG": r2(opp_goals * 0.9 + rng.gauss(0.3, 0.35)),
            "Saves": float(saves),
            "SavePct": r2(100.0 * saves / (saves + opp_goals)) if saves + opp_goals else 100.0,
        }
        return stats
    xg = r2(share * att_rate * rng.uniform(0.6, 1.4) + 0.25 * gls)
    stats["Gls"] = float(gls)
    stats["Ast"] = float(ast)
    stats["xG"] = xg
    stats["xA"] = r2(share * 0.8 * att_rate * rng.uniform(0.5, 1.5) + 0.2 * ast)
    stats["Sh"] = float(poisson(rng, 4.0 * share * att_rate) + gls)
    stats["SoT"] = float(min(stats["Sh"], poisson(rng, 1.5 * share * att_rate) + gls))
    stats["KP"] = float(poisson(rng, 0.6 + 2.0 * share * att_rate) + ast)
    stats["PrgC"] = float(poisson(rng, 1.0 + 3.0 * share))
    stats["SCA"] = float(poisson(rng, 1.0 + 4.0 * share * att_rate) + gls + ast)
    stats["GCA"] = float(poisson(rng, 0.1 + 0.4 * share * team_goals) + ast)
    if group in ("DF", "MF"):
        stats["PrgP"] = float(poisson(rng, 3.0 if group == "DF" else 4.5))
        stats["Crs"] = float(poisson(rng, 1.2 if group == "DF" else 1.0))
        stats["LngCmp"] = float(poisson(rng, 3.5 if group == "DF" else 2.5))
    if group == "MF":
        stats["CmpPct"] = r2(rng.gauss(81.0 + 3.0 * (att_rate - 1.0), 5.0))
    if group == "FW":
        stats["npxG"] = r2(xg - (0.76 if rng.random() < 0.05 else 0.0))
        stats["PrgR"] = float(poisson(rng, 5.0 * att_rate))
        stats["TouchAttPen"] = float(poisson(rng, 3.0 * att_rate) + gls)
    if group == "DF":
        conceded_pressure = 1.0 + 0.3 * opp_goals
        stats["TklW"] = float(poisson(rng, 1.2 * conceded_pressure))
        stats["Int"] = float(poisson(rng, 1.0))
        stats["Blocks"] = float(poisson(rng, 0.9 * conceded_pressure))
        stats["Clr"] = float(poisson(rng, 2.5 * conceded_pressure))
        stats["Err"] = float(1 if rng.random() < 0.03 + 0.02 * opp_goals else 0)
        stats["AerialWon"] = float(poisson(rng, 1.8))
        stats["Recov"] = float(poisson(rng, 4.0))
    return stats


def choose_contributors(rng, lineup, positions, goals):
    weights = {"GK": 0.0, "DF": 0.1, "MF": 0.3, "FW": 0.6}
    outfield = [p for p in lineup if positions[p] != "GK"]
    w = [weights[positions[p]] for p in outfield]
    scorers = [rng.choices(outfield, w)[0] for _ in range(goals)]
    assisters = []
    for s in scorers:
        if rng.random() < 0.75:
            cand = [p for p in outfield if p != s]
            assisters.append(rng.choice(cand))
    return scorers, assisters


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "sample"
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)
    squads, positions = build_squads()

    # Chelsea's third forward joins Arsenal for 2022; Arsenal's third forward leaves.
    squads_2022 = {t: list(s) for t, s in squads.items()}
    squads_2022["Arsenal"] = [p for p in squads["Arsenal"] if p != "ARS16"] + ["CHE16"]
    squads_2022["Chelsea"] = [p for p in squads["Chelsea"] if p != "CHE16"]

    schedule = []
    start = datetime(2021, 8, 14)
    for r, pairs in enumerate(round_robin(TEAMS_2021)):
        schedule += [("2021", start + timedelta(weeks=r), pairs, squads)]
    start = datetime(2022, 8, 6)
    for r, pairs in enumerate(round_robin(TEAMS_2022)[:3]):
        schedule += [("2022", start + timedelta(weeks=r), pairs, squads_2022)]

    fixtures, stat_rows, odds_rows = [], [], []
    fid = 0
    for season, day, pairs, sq in schedule:
        for slot, (home, away) in enumerate(pairs):
            fid += 1
            fixture_id = f"F{fid:03d}"
            kickoff = day + SLOT_OFFSETS[slot]
            ha, hd = STRENGTH[home]
            aa, ad = STRENGTH[away]
            lam_h = 1.45 * ha * ad
            lam_a = 1.15 * aa * hd
            hg, ag = poisson(rng, lam_h), poisson(rng, lam_a)
            h_line = pick_lineup(rng, sq[home], positions)
            a_line = pick_lineup(rng, sq[away], positions)
            fixtures.append([fixture_id, season, kickoff.strftime("%Y-%m-%dT%H:%M:%SZ"),
                             home, away, hg, ag, ";".join(h_line), ";".join(a_line)])
            for lineup, goals, conceded, rate in ((h_line, hg, ag, lam_h), (a_line, ag, hg, lam_a)):
                scorers, assisters = choose_contributors(rng, lineup, positions, goals)
                for pid in lineup:
                    group = positions[pid]
                    stats = player_stats(rng, group, goals, conceded, rate, scorers, assisters, pid)
                    for name in GROUP_STATS[group]:
                        stat_rows.append([pid, fixture_id, group, name, f"{stats[name]:g}"])
            margin = 1.18
            for h in range(6):
                for a in range(6):
                    p = poisson_pmf(h, lam_h) * poisson_pmf(a, lam_a)
                    if p < 0.004:
                        continue
                    odds = max(1.01, round(1.0 / (p * margin), 2))
                    odds_rows.append([fixture_id, h, a, f"{odds:.2f}"])

    with open(out / "fixtures.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["fixture_id", "season", "kickoff", "home_team", "away_team",
                    "home_goals", "away_goals", "home_lineup", "away_lineup"])
        w.writerows(fixtures)
    with open(out / "player_stats.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["player_id", "fixture_id", "position_group", "stat_name", "value"])
        w.writerows(stat_rows)
    with open(out / "odds.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["fixture_id", "home_goals", "away_goals", "odds"])
        w.writerows(odds_rows)


if __name__ == "__main__":
    main()
