"""
Records under the componentwise order
=====================================

For vectors, a record must dominate the current one in every coordinate, so
records become rarer as the dimension grows.
"""

from recordlaws import laws
from recordlaws.dist import UniformCont
from recordlaws.mc import McConfig, estimate_poset_transition, simulate_poset_batch

u = UniformCont(0, 1)
cfg = McConfig(20_000, 50, seed=4)
for dim in (1, 2, 3):
    pb = simulate_poset_batch(u, dim, cfg)
    print(f"d={dim}: mean records in 50 draws {pb.ordinal[:, -1].mean():.2f}")

# in one dimension the transition matches the real-line law
r = estimate_poset_transition(u, 1, 2, 3, McConfig(50_000, 3, seed=5))
print(f"d=1 P(next at 3 | record at 2) ~ {r.estimate:.4f} +- {r.stderr:.4f}, law {laws.record_time_transition_pmf(2, 3).value:.4f}")

# in two dimensions the second observation dominates the first w.p. 1/4
r = estimate_poset_transition(u, 2, 1, 2, McConfig(50_000, 2, seed=6))
print(f"d=2 P(second is a record) ~ {r.estimate:.4f} +- {r.stderr:.4f}")
