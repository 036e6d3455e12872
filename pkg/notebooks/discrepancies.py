# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Where computed splittings differ from the reference tables
#
# Builtin bundles carry a reference splitting table. Where the computation
# disagrees with it, both are reported. In every
# case the degree agrees, and an independent brute-force oracle sides with
# the computation.

# %%
from toric_seshadri import build_bott_tower, builtin, restriction_profile
from toric_seshadri.oracle import oracle_restriction_counting, oracle_restrictions_combined

for name, X in [
    ("hirz_indecomposable", build_bott_tower(2, {(1, 2): 1})),
    ("x3_indecomposable", build_bott_tower(3, {(1, 2): 1, (1, 3): 1, (2, 3): 1})),
]:
    E = builtin(name, X)
    prof = restriction_profile(E)
    for label, (computed, ref) in prof.discrepancies().items():
        C = X.curve(label)
        print(f"{name}: {label} computed {computed}, reference {ref}, "
              f"oracle {oracle_restriction_counting(E, C)}")

# %% [markdown]
# On D_2 of the Hirzebruch surface the wall ray's filtration is trivial and
# the two opposite rays jump along the distinct lines L_1 and L_3. The basis
# {L_1, L_3} is adapted to everything at once; each line jumps in exactly one
# opposite filtration, which gives O(1) + O(1). A summand O(2) would need a
# line jumping in both, that is L_1 = L_3.

# %%
X = build_bott_tower(2, {(1, 2): 1})
E = builtin("hirz_indecomposable", X)
print(oracle_restrictions_combined(E, X.curve("D_2")))
