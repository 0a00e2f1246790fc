# %% [markdown]
# # Error diagrams and p-values
#
# Lower an alarm threshold through the distinct indicator values. Whenever a
# new extreme is caught, record (share of days under alarm, share of extremes
# still missed). Random alarms trace the anti-diagonal, so the area under the
# curve is the chance of doing at least this well by luck.

# %%
import numpy as np

from netextremes import (
    bubble_spec,
    detect_extremes,
    error_diagram,
    gen_synthetic,
    p_value,
    peak_indicator,
    shuffled_p_values,
    trough_indicator,
    with_values,
)

series = gen_synthetic(bubble_spec(length=2000, n_bubbles=4, noise_scale=0.01, seed=0))
S, b, a = 262, 131, 45

for kind, fn in (("peak", peak_indicator), ("trough", trough_indicator)):
    ind = fn(series, S)
    ext = detect_extremes(series, kind, b=b, a=a)
    d = error_diagram(ind, ext)
    print(f"{kind}: {d.total_extremes} extremes over {d.prediction_days} prediction days")
    for pt in d.points:
        print(f"   threshold {pt.threshold:.3f}  alarms {pt.alarm_fraction:.3f}  missed {pt.unpredicted_fraction:.3f}")
    print(f"   p = {p_value(d):.4f} (staircase), {p_value(d, 'trapezoid'):.4f} (trapezoid)")

# %% [markdown]
# ## What chance looks like
#
# Replacing the indicator with i.i.d. noise gives areas around 0.5. Shuffling
# the real indicator keeps its many ties, which push the staircase area a bit
# higher.

# %%
rng = np.random.default_rng(1)
ind = peak_indicator(series, S)
ext = detect_extremes(series, "peak", b=b, a=a)
uniform = [p_value(error_diagram(with_values(ind, rng.uniform(size=ind.values.size)), ext)) for _ in range(200)]
shuffled = shuffled_p_values(ind, ext, trials=200, seed=1)
print(f"uniform noise indicator: mean p = {np.mean(uniform):.3f}")
print(f"shuffled indicator:      mean p = {shuffled.mean():.3f}")
print(f"real indicator:               p = {p_value(error_diagram(ind, ext)):.3f}")

# %% [markdown]
# ## Alarm horizon
#
# By default an extreme counts only if its own day is under alarm. A forward
# horizon lets an alarm cover the next few days as well.

# %%
for h in (0, 2, 5, 10):
    print(f"horizon {h:2d}: p = {p_value(error_diagram(ind, ext, horizon=h)):.4f}")
