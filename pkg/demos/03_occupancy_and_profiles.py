"""Occupancy fractions against the linear-programming optimum, and a search
for regular graphs beating both K_{d,d} and K_{d+1}.

Run with ``python3 demos/03_occupancy_and_profiles.py``.
"""
# %% Occupancy fraction of every connected cubic graph on at most 10 vertices
from fractions import Fraction

from extremal_regular import FamilySpec, maximizer_profile, occupancy_fraction, occupancy_lp_optimum, regular_graphs
from extremal_regular.graphcore import complete

lam = Fraction(1)
bound = lam / (1 + lam) * occupancy_lp_optimum(3, lam)
cubic = regular_graphs(FamilySpec.parse("d=3,connected,nmax=10"))
worst = max(occupancy_fraction(g, lam) for g in cubic)
print(f"LP bound {bound}, largest occupancy in family {worst}")

# %% Disjoint copies of K_4 as targets: the maximiser moves as k grows
profile = maximizer_profile(4, FamilySpec.parse("d=4,nmax=7"), complete(4), k_grid=[1, 10, 100, 1000])
for e in profile.entries:
    kind = "K_{4,4}" if e.is_kdd else "K_5" if e.is_kd1 else "other"
    print(f"k={e.k:5d}: argmax on {e.argmax_n} vertices ({kind}), hom = {e.value[0]}")
