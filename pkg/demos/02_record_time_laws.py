"""
Laws of record times
====================

Gaps between records do not depend on the (continuous) distribution of the
observations. All values below are exact rationals.
"""

from recordlaws import laws

print("P(gap = k), k = 1..6:")
for k in range(1, 7):
    v = laws.interrecord_joint_pmf([k])
    print(f"  k={k}: {v.exact}")

# two gaps at once
print("P(gap2 = 2, gap3 = 3) =", laws.interrecord_joint_pmf([2, 3]).exact)

# the same event through record times U(2)=3, U(3)=6
print("P(U(2)=3, U(3)=6)   =", laws.record_times_joint_pmf([3, 6]).exact)

# record times form a Markov chain; transition probabilities out of k=3
row = [laws.record_time_transition_pmf(3, j).exact for j in range(4, 10)]
print("P(next record at j | record at 3), j=4..9:", [str(p) for p in row])

# the tail is heavy: partial sums of P(gap=k) approach 1 slowly
s = sum(laws.interrecord_joint_pmf([k]).value for k in range(1, 1001))
print(f"P(gap <= 1000) = {s:.6f}")
