"""Independent reference values for the bundled sample dataset.

Run from the repository root: python3 tests/oracles/compute_oracles.py
The printed numbers are frozen in tests/test_oracles_sample.cpp.
"""
import numpy as np
import pandas as pd
from scipy.stats import kendalltau
from sklearn.feature_selection import chi2
from sklearn.preprocessing import MinMaxScaler

DATA = "data/sample"
TEST_SIZE = 8

fx = pd.read_csv(f"{DATA}/fixtures.csv", comment="#")
fx["kickoff"] = pd.to_datetime(fx["kickoff"])
fx = fx.sort_values(["kickoff", "fixture_id"]).reset_index(drop=True)
train, test = fx.iloc[:-TEST_SIZE], fx.iloc[-TEST_SIZE:]
stats = pd.read_csv(f"{DATA}/player_stats.csv", comment="#")
odds = pd.read_csv(f"{DATA}/odds.csv", comment="#")

print("fixture rows", len(fx))
print("stat records", stats.groupby(["player_id", "fixture_id"]).ngroups)
print("players", stats["player_id"].nunique())
per_player = stats.groupby("player_id")["fixture_id"].nunique()
print("records ARS01", per_player["ARS01"], "CHE16", per_player["CHE16"], "NOR05", per_player.get("NOR05"))
print("odds per fixture F001", (odds.fixture_id == "F001").sum(), "F040", (odds.fixture_id == "F040").sum())
print("test ids", list(test.fixture_id))


def table(frame, hg, ag):
    rows = {}
    for _, r in frame.iterrows():
        for team, gf, ga in ((r.home_team, r[hg], r[ag]), (r.away_team, r[ag], r[hg])):
            e = rows.setdefault(team, dict(team=team, pts=0, gf=0, ga=0))
            e["pts"] += 3 if gf > ga else (1 if gf == ga else 0)
            e["gf"] += gf
            e["ga"] += ga
    t = pd.DataFrame(rows.values())
    t["gd"] = t.gf - t.ga
    return t.sort_values(["pts", "gd", "gf", "team"], ascending=[False, False, False, True]).reset_index(drop=True)


print("\ntraining table")
print(table(train, "home_goals", "away_goals").to_string())

# Home Win fitness on the test split.
for side, raw in (("home", 1.0), ("away", 0.0)):
    y = test[f"{side}_goals"].to_numpy(float)
    p = np.full_like(y, raw)
    mae = np.mean(np.abs(p - y))
    rmse = np.sqrt(np.mean((p - y) ** 2))
    r2 = 1 - np.sum((p - y) ** 2) / np.sum((y - y.mean()) ** 2)
    print(f"home-win {side} mae={mae!r} rmse={rmse!r} r2={r2!r}")

actual = table(test, "home_goals", "away_goals")
print("\nactual test table")
print(actual.to_string())
pred = test.copy()
pred["ph"], pred["pa"] = 1, 0
predicted = table(pred, "ph", "pa")
print("\nhome-win predicted test table")
print(predicted.to_string())
merged = actual.merge(predicted, on="team", suffixes=("_a", "_p"))
tau = kendalltau(merged.pts_p, merged.pts_a, variant="b")
print("tau_b home-win vs actual", repr(tau.statistic))
top4 = len(set(actual.team[:4]) & set(predicted.team[:4])) / 4 * 100
bot3 = len(set(actual.team[-3:]) & set(predicted.team[-3:])) / 3 * 100
print("zones home-win", top4, bot3)

# Betting ledger for Home Win (skip unquoted scorelines).
quotes = {(r.fixture_id, r.home_goals, r.away_goals): r.odds for r in odds.itertuples()}
net, placed, won = 0.0, 0, 0
for r in test.itertuples():
    q = quotes.get((r.fixture_id, 1, 0))
    if q is None:
        continue
    placed += 1
    net -= 1.0
    if (r.home_goals, r.away_goals) == (1, 0):
        net += q
        won += 1
print("betting home-win net", repr(net), "placed", placed, "won", won)

# Recency trace for F020 (hand-checkable).
target = fx[fx.fixture_id == "F020"].iloc[0]
prior = fx[fx.kickoff < target.kickoff]


def last_goals(team):
    m = prior[(prior.home_team == team) | (prior.away_team == team)]
    if m.empty:
        return 1
    last = m.iloc[-1]
    return last.home_goals if last.home_team == team else last.away_goals


print("recency F020", target.home_team, target.away_team, last_goals(target.home_team), last_goals(target.away_team))

# Chi-squared on a fixed 6-feature matrix.
X = np.array([
    [0.0, 1.0, 3.0, 2.0, 5.0, 1.0],
    [1.0, 0.0, 2.5, 2.0, 4.0, 1.0],
    [2.0, 1.0, 0.5, 2.0, 1.0, 3.0],
    [3.0, 0.0, 0.0, 2.0, 0.0, 2.0],
    [4.0, 1.0, 4.0, 2.0, 2.0, 0.0],
    [5.0, 2.0, 1.0, 2.0, 3.0, 4.0],
    [6.0, 2.0, 1.5, 2.0, 6.0, 0.5],
])
y = np.array([0, 0, 1, 1, 2, 2, 3])
scores, _ = chi2(MinMaxScaler().fit_transform(X), y)
print("chi2 six-feature", [repr(s) for s in scores])

# Kendall tau-b, five teams with one tie.
a = np.array([10, 8, 8, 5, 1])
b = np.array([9, 10, 4, 4, 2])
print("tau_b five-team", repr(kendalltau(a, b, variant="b").statistic))
