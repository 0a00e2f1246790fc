# %% [markdown]
# # Peak and trough indicators on a planted-bubble series
#
# The peak indicator is the fraction of the last `S` days that are both
# lower than today and visible from it; the trough indicator mirrors it with
# absolute invisibility and higher days. Both sit near 1 during
# super-exponential moves.

# %%
from pathlib import Path

import numpy as np

from netextremes import bubble_spec, detect_peaks, detect_troughs, gen_synthetic, peak_indicator, trough_indicator

spec = bubble_spec(length=2000, n_bubbles=4, noise_scale=0.01, seed=0)
for seg in spec.segments[:4]:
    print(seg)
series = gen_synthetic(spec)
print("T =", series.T)

# %%
S = 262
peak = peak_indicator(series, S)
trough = trough_indicator(series, S)
print("first defined day:", peak.day_index[0])
print("peak indicator quantiles (50/90/99%):", np.quantile(peak.values, [0.5, 0.9, 0.99]).round(3))

# %% [markdown]
# Days where the indicator clears a threshold. Raising the threshold keeps a
# subset, concentrated next to the realized extremes.

# %%
peaks = detect_peaks(series, b=131, a=45)
troughs = detect_troughs(series, b=131, a=45)
print("realized peaks:  ", peaks.indices.tolist())
print("realized troughs:", troughs.indices.tolist())
for thr in (0.1, 0.2, 0.3):
    print(f"threshold {thr}: {peak.above(thr).size:4d} peak alarms, {trough.above(thr).size:4d} trough alarms")

# %%
near = [int(peak.above(0.2)[np.argmin(abs(peak.above(0.2) - p))]) for p in peaks.indices if p > S]
print("closest strong peak alarm to each realized peak:", near)

# %% [markdown]
# Optional figure (needs matplotlib).

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(3, 1, figsize=(10, 7), sharex=True)
    axes[0].plot(series.day_index, series.log_values, lw=0.8)
    axes[0].plot(peaks.indices, series.log_values[peaks.indices - 1], "ro", mfc="none")
    axes[0].plot(troughs.indices, series.log_values[troughs.indices - 1], "gx")
    axes[0].set_ylabel("log price")
    axes[1].plot(peak.day_index, peak.values, "r", lw=0.8)
    axes[1].set_ylabel("peak indicator")
    axes[2].plot(trough.day_index, trough.values, "g", lw=0.8)
    axes[2].set_ylabel("trough indicator")
    axes[2].set_xlabel("trading day")
    out = Path("notebook_output")
    out.mkdir(exist_ok=True)
    fig.savefig(out / "indicators.png", dpi=120, bbox_inches="tight")
    print("saved", out / "indicators.png")
