"""
Independence sets in the golden mean shift
==========================================

The golden mean shift forbids two adjacent 1s.  For the pair
A = {x(0)=1}, B = {x(0)=0} a set of positions is independent when every
A/B assignment on it is realized by one point.  Adjacent positions cannot
both be 1, so the best we can do on [0, n) is every other position.
"""

import math

import numpy as np

from combindep import (
    ClopenSet,
    FullShift,
    IndependenceProblem,
    comb_entropy_profile,
    density_profile,
    golden_mean,
    is_independence_set,
    max_independence_subset,
)

gm = golden_mean()
pair = (ClopenSet.symbol_at(0, 1, 2), ClopenSet.symbol_at(0, 0, 2))
prob = IndependenceProblem(gm, pair)

print(is_independence_set(prob, {0, 1}))  # False: 11 is forbidden
print(is_independence_set(prob, {0, 2}))  # True

# largest independent subsets of [0, n)
for n in (4, 7, 10):
    print(n, max_independence_subset(prob, (0, n)))

# the density stays at 1/2, compare the full shift where it is 1
prof = density_profile(prob, 12)
print(prof.to_csv())
print(prof.hint, density_profile(IndependenceProblem(FullShift(2), pair), 12).hint)

# join counts N_n are Fibonacci numbers, rates decrease towards log(phi)
ent = comb_entropy_profile(gm, list(pair), 10)
rates = np.array(ent.rates)
print(ent.counts)
print(np.round(rates, 4), math.log((1 + math.sqrt(5)) / 2))
