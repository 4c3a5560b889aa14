"""
A Toeplitz subshift with slow independence growth
=================================================

The Toeplitz sequence is assembled level by level: level j fixes the values
on j * 2^j residues mod n_j, and the blocks of j residues carry every 0/1
pattern of length j.  Representatives of one block therefore form an
independence set of size j, while the lemma checks say that independence
sets cannot mix levels freely.
"""

from combindep import check_toeplitz_lemmas, is_independence_set, toeplitz_problem, toeplitz_window, verify_toeplitz
from combindep.serialize import load_corpus

# the shipped three-level spec (build_toeplitz(3) recomputes it in ~15 s)
spec = load_corpus("toeplitz_level3")
print(spec.periods)
print(verify_toeplitz(spec).ok)

# x on a window around 0; '?' marks positions decided by deeper levels
w = toeplitz_window(spec, -36, 36)
print(w.digits)
print(w.mask)

prob = toeplitz_problem(spec)
for j in (1, 2, 3):
    reps = [spec.representative(j, i) for i in range(1, j + 1)]
    print(j, reps, is_independence_set(prob, reps))

rep = check_toeplitz_lemmas(spec, (0, spec.period(2)))
for r in rep.results:
    print(r.name, r.instances, len(r.counterexamples))
