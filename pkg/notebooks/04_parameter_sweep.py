# %% [markdown]
# # Robustness over (S, a, b)
#
# The default grid is ten look-back scopes (200..470 step 30) times ten
# after-windows and ten before-windows (30..165 step 15): 1000 evaluations per
# series and extreme kind. Indicators are computed once per scope and
# extremes once per window pair, so a full sweep takes a couple of seconds.

# %%
import time

import numpy as np

from netextremes import bubble_spec, gen_synthetic, parameter_sweep

series = gen_synthetic(bubble_spec(length=5479, n_bubbles=11, noise_scale=0.01, seed=7))

for kind in ("peak", "trough"):
    start = time.perf_counter()
    res = parameter_sweep(series, kind=kind, jobs=4)
    took = time.perf_counter() - start
    st = res.stats
    print(f"{kind}: {len(res.grid)} triples ({len(res.invalid)} invalid) in {took:.1f}s")
    print(f"   Q1 {st.q1:.4f}  median {st.median:.4f}  Q3 {st.q3:.4f}  "
          f"whiskers [{st.whisker_low:.4f}, {st.whisker_high:.4f}]  outliers {len(st.outliers)}")
    worst = res.grid[int(np.argmax(res.p_values))]
    print(f"   worst triple (S, a, b) = {worst}: p = {res.p_values.max():.4f}")

# %% [markdown]
# Several series at once: the summary statistic is the mean over series of
# the per-series median p-value.

# %%
medians = {"peak": [], "trough": []}
for seed in range(4):
    s = gen_synthetic(bubble_spec(length=5479, n_bubbles=11, noise_scale=0.01, seed=seed))
    for kind in medians:
        medians[kind].append(parameter_sweep(s, kind=kind, jobs=4).stats.median)
for kind, meds in medians.items():
    print(f"mean of median {kind} p-values over {len(meds)} series: {np.mean(meds):.4f}")
