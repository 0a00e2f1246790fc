# %% [markdown]
# # Visibility and absolute-invisibility networks
#
# Every day of a price series is a wall whose height is the log-price. Two
# days are linked by the *visibility* rule when the straight line between
# their tops clears every wall in between, and by the *absolute invisibility*
# rule when every wall in between pokes above that line.

# %%
import numpy as np

from netextremes import (
    DirectionFilter,
    LinkKind,
    PriceSeries,
    brute_force_degree,
    build_network,
    degree_sequence,
    invisible,
    left_degree_scan,
    visible,
)

y = [0.0, 3.0, 1.0, 2.0, 0.5, 2.5, 2.6]
print("visible(1, 3):  ", visible(y, 1, 3))    # day 2 sticks up above the chord
print("invisible(1, 3):", invisible(y, 1, 3))
print("visible(2, 4):  ", visible(y, 2, 4))    # day 3 dips below the chord

# %% [markdown]
# Full networks are only needed for inspection; the indicator pipeline just
# counts links.

# %%
for kind in LinkKind:
    print(kind.value, build_network(y, kind))

# %% [markdown]
# ## Left-looking degrees
#
# For forecasting, day `i` only looks back at most `S` days, and only counts
# lower days (visibility) or higher days (absolute invisibility). The scan
# walks left once, tracking the steepest slope seen so far.

# %%
S = 3
print("day 4, lower-left visible links:",
      left_degree_scan(y, 4, S, LinkKind.VISIBILITY, DirectionFilter.REQUIRE_LOWER_LEFT))
seq = degree_sequence(y, S, LinkKind.VISIBILITY, DirectionFilter.REQUIRE_LOWER_LEFT)
print(dict(zip(seq.day_index.tolist(), seq.degrees.tolist())))

# %% [markdown]
# The scan is checked against a direct pairwise evaluation that tests every
# intermediate point of every pair.

# %%
rng = np.random.default_rng(0)
walk = PriceSeries.from_log_values(np.cumsum(rng.normal(0, 0.01, 500)))
bad = 0
for _ in range(500):
    i, scope = int(rng.integers(2, 501)), int(rng.integers(1, 200))
    kind = list(LinkKind)[rng.integers(2)]
    filt = list(DirectionFilter)[rng.integers(3)]
    bad += left_degree_scan(walk, i, scope, kind, filt) != brute_force_degree(walk, i, scope, kind, filt)
print("mismatches against the brute-force oracle:", bad)

# %% [markdown]
# A convex (super-exponential) rise is visible from its endpoint all the way
# back; a straight (exponential) rise is not, because every interior point sits
# exactly on the chord.

# %%
t = np.arange(60.0)
for label, logp in (("convex", 0.001 * t**2), ("linear", 0.01 * t)):
    deg = left_degree_scan(logp, 60, 50, LinkKind.VISIBILITY, DirectionFilter.REQUIRE_LOWER_LEFT)
    print(f"{label:7s} rise: {deg}/50 left days linked")
