"""
A subshift with independence sets of every size
===============================================

Take positions m_k = 2^k grouped into blocks of sizes 1, 2, 3, ...  and
the orbit closure of all 0/1 configurations supported inside one block.
Every block is an independence set, so independence sets of any size
exist, but their density inside [0, n) tends to zero.
"""

from combindep import build_wap, density_profile, gap_condition, is_independence_set, wap_problem
from combindep.symbolic import format_word, language

spec, shift = build_wap(3)
print(spec.positions[:6], spec.block_sizes)
print(gap_condition(spec.positions[:8]))

print(sorted(format_word(w) for w in language(shift, 4)))

prob = wap_problem(spec)
for j in (1, 2, 3):
    print(spec.block(j), is_independence_set(prob, spec.block(j)))

prof = density_profile(prob, 64)
print(prof.rows[3], prof.rows[4], prof.rows[48], prof.rows[-1])
print(prof.hint)
