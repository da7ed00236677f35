"""
Simulating records
==================

Keyed simulation, so a fixed seed gives the same numbers on any number of
workers; estimates carry standard errors and the mass left undecided at the
horizon.
"""

import numpy as np
from scipy import stats

from recordlaws import laws
from recordlaws.dist import Exponential, UniformCont
from recordlaws.mc import (
    McConfig,
    gof_ks,
    gof_ks_two_sample,
    increment_independence,
    proportion_report,
    renyi_sample_records,
    simulate_record_batch,
)

cfg = McConfig(trials=100_000, horizon=10_000, seed=1)
batch = simulate_record_batch(UniformCont(0, 1), 2, cfg)
gap = batch.deltas[:, 0]
for k in (1, 2, 3):
    rep = proportion_report(batch.decided & (gap == k), cfg.seed, batch.truncation_mass)
    print(f"P(gap={k}) ~ {rep.estimate:.4f} +- {rep.stderr:.4f}   law {laws.interrecord_joint_pmf([k]).value:.4f}")
print("undecided at horizon:", batch.truncation_mass)

# exponential record increments look like iid exponentials
batch = simulate_record_batch(Exponential(2.0), 4, McConfig(20_000, 2**16, seed=2))
vals = batch.values[batch.decided]
inc = np.diff(vals, axis=1)
print(gof_ks(inc[:, 0], stats.expon(scale=0.5).cdf))
print(increment_independence(np.column_stack([vals[:, :1], inc])))

# the exponential representation gives record values without waiting
renyi = renyi_sample_records(Exponential(2.0), 4, McConfig(20_000, 1, seed=3))
print(gof_ks_two_sample(vals[:, 3], renyi[:, 3]))
