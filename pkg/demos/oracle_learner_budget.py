"""The oracle learner's mistake budget on real classes.

The learner sees nothing but consistent-oracle answers, yet against any
adversary constrained to dimension d it stops making mistakes before
16 + 16^2 + ... + 16^(2d). On dimension-1 classes that budget is 271; in
practice a handful of mistakes suffices, which is the gap between a
worst-case guarantee and a greedy opponent.
"""

from oraclebench import (
    ClassGreedyAdversary,
    GameConfig,
    PredictLearner,
    SOALearner,
    ldim,
    mistake_bound,
    run_game,
)
from oraclebench.verification import random_classes_of_dimension, threshold_pair_classes

family = threshold_pair_classes(8) + random_classes_of_dimension(1, 40, seed=0)
print(f"{len(family)} dimension-1 classes "
      f"({len(threshold_pair_classes(8))} threshold pairs + 40 seeded random)")
print(f"budget for d=1: {mistake_bound(1)} mistakes")
print()

worst_oracle = worst_soa = 0
histogram: dict[int, int] = {}
for c in family:
    assert ldim(c) == 1
    t = run_game(PredictLearner(), ClassGreedyAdversary(c), GameConfig(d=1, round_cap=300))
    histogram[t.mistake_count] = histogram.get(t.mistake_count, 0) + 1
    worst_oracle = max(worst_oracle, t.mistake_count)
    ts = run_game(SOALearner(c), ClassGreedyAdversary(c), GameConfig(d=1, round_cap=300))
    worst_soa = max(worst_soa, ts.mistake_count)

print("oracle learner mistakes per class:",
      {k: histogram[k] for k in sorted(histogram)})
print(f"worst case: {worst_oracle} (budget {mistake_bound(1)})")
print(f"version-space learner worst case: {worst_soa} (dimension bound 1)")
print()
print("The oracle learner pays a constant factor for its ignorance of the")
print("class; the version-space learner reads the class directly and meets")
print("the dimension exactly.")
