"""
Laws of record values
=====================

Continuous laws go through the cumulative hazard R = -log(1 - F); discrete
laws through hazards at the atoms.
"""

from fractions import Fraction

import numpy as np
from scipy import stats

from recordlaws import laws
from recordlaws.dist import Exponential, Geometric, UniformCont, uniform_on

# exponential records are Gamma distributed
e1 = Exponential(1.0)
x = np.linspace(0.5, 6, 5)
for n in (1, 2, 3):
    dens = [laws.record_value_marginal_pdf(e1, n, xi).value for xi in x]
    print(f"n={n}: density {np.round(dens, 4)}  gamma {np.round(stats.gamma(n).pdf(x), 4)}")

# joint density of the first three records of a uniform sample
u = UniformCont(0, 1)
print("joint density at (0.2, 0.5, 0.9):", laws.record_value_joint_pdf(u, (0.2, 0.5, 0.9)).value)

# skipping the middle record integrates it out
print("density of (X1, X3) at (1, 2):", laws.record_value_subvector_pdf(e1, (1, 3), (1.0, 2.0)).value)

# geometric records, exact
g = Geometric(Fraction(1, 2))
for ys in [(1, 2), (2, 5), (1, 3, 4)]:
    print(f"P(records = {ys}) = {laws.discrete_record_joint_pmf(g, ys).exact}")

# an atom at the upper endpoint can stop the record sequence
print("P(no second record) on {1..6}:", laws.prob_no_further_record(uniform_on(6)).exact)
