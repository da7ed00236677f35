"""
Exact enumeration and quadrature
================================

Two independent routes to the same numbers: dynamic-programming enumeration
over finite supports, and nested quadrature over ordered simplices.
"""

from recordlaws import laws
from recordlaws.dist import Exponential, UniformCont, uniform_on
from recordlaws.oracle import (
    EnumerationConfig,
    GammaKernel,
    HazardProduct,
    InterRecordPmf,
    NoFurtherRecord,
    QuadratureConfig,
    exact_record_query,
    simplex_quadrature,
)

# a fine discrete uniform mimics a continuous law; ties shrink as it grows
target = laws.interrecord_joint_pmf([2, 3]).value
for size in (20, 100, 500):
    prob, trunc = exact_record_query(EnumerationConfig(uniform_on(size), 6, InterRecordPmf((2, 3))))
    print(f"support {size:>3}: {prob:.6f}  (continuous {target:.6f})")

# bounded answers: the truth lies in [prob, prob + truncation]
prob, trunc = exact_record_query(EnumerationConfig(uniform_on(3), 30, NoFurtherRecord()))
print(f"no further record on {{1,2,3}}: {prob:.6f} + at most {trunc:.2e}")

# the simplex integral of F powers does not depend on F
for d in (UniformCont(0, 1), Exponential(1.0)):
    r = simplex_quadrature(QuadratureConfig(d, 3), GammaKernel((1, 2, 3)))
    print(f"{type(d).__name__:<12} {r.value:.12f}  exact {float(laws.gamma_integral((1, 2, 3))):.12f}")

# hazard products integrate to powers of R
r = simplex_quadrature(QuadratureConfig(Exponential(1.0), 2, (0.0, 2.0)), HazardProduct())
print("hazard product:", r.value, "closed form:", laws.hazard_simplex_integral(Exponential(1.0), 3, 0.0, 2.0))
