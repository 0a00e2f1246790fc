# %% [markdown]
# # The command-line pipeline
#
# Every library step has a subcommand that writes plot-ready CSV/JSON. This
# script drives them in-process on a generated series; from a shell use
# `netextremes <subcommand> ...` (or `python -m netextremes`).
#
# To reproduce the index table, export daily closes as `date,close` CSVs,
# one per ticker, and run `netextremes evaluate data/*.csv --out results`.

# %%
import tempfile
from pathlib import Path

from netextremes.cli import run

work = Path(tempfile.mkdtemp(prefix="netextremes-"))
run(["synth", "--synthetic", "bubble", "--seed", "3", "--out", str(work)])
src = work / "synthetic-bubble-seed3.csv"

for argv in (
    ["indicator", str(src)],
    ["mark", str(src), "--threshold", "0.2"],
    ["extremes", str(src)],
    ["evaluate", str(src), "--null-trials", "50"],
    ["sweep", str(src), "--grid-S", "200", "260", "--grid-a", "30", "45", "--grid-b", "90", "131", "--kind", "peak"],
):
    code = run(argv + ["--out", str(work), "--no-timestamp"])
    print(f"$ netextremes {' '.join(argv[:1])} ... -> exit {code}")

for path in sorted(work.iterdir()):
    print(f"  {path.name}")
print((work / "summary.csv").read_text())
