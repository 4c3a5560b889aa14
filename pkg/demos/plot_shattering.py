"""
Trace sets, shattering and cover counts
=======================================

A trace set S is a finite set of patterns over a window of positions.  A
subwindow W is shattered when S restricted to W contains every
{1..k}-valued pattern.  F_S counts the fewest coordinate-complement boxes
covering S and H_S counts the shattered subwindows.
"""

import itertools
import math
import random

from combindep import TraceSet, count_shattered, f_s, key_lemma_constants, key_lemma_witness, largest_shattered

s = TraceSet((1, 2), 2, frozenset({(1, 1), (1, 2), (2, 1)}))
print(f_s(s), count_shattered(s), largest_shattered(s))

# Sauer-Shelah: more than sum_{i<m} C(n,i) binary patterns shatter an m-set
rng = random.Random(1)
n = 6
cube = list(itertools.product((1, 2), repeat=n))
for size in (1, 7, 22, 42, 57, 63):
    sub = frozenset(rng.sample(cube, size))
    w = largest_shattered(TraceSet(tuple(range(1, n + 1)), 2, sub))
    print(size, len(w), [sum(math.comb(n, i) for i in range(m)) for m in range(1, 5)])

# constants behind the large-cover-implies-large-shattered-set statement
c = key_lemma_constants(2, 1)
print(c.lam, round(c.b1, 4), round(c.t, 4), c.c)

rep = key_lemma_witness(TraceSet.full(2, (1, 2, 3, 4)), 0.5)
print(rep.holds_hypothesis, rep.f_s, rep.w, rep.ratio)
