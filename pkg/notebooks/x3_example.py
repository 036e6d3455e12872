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
# # A rank-2 bundle on a three-dimensional Bott tower
#
# The builtin `x3_indecomposable` is built from three distinct lines
# distributed over the six rays of X_3. Its twists by nef enough divisors
# satisfy every hypothesis of the closed formula, which takes the minimum
# slope on the curves Gamma^(i) passing through the point.

# %%
import itertools

from toric_seshadri import (
    DivisorClass,
    build_bott_tower,
    builtin,
    check_hypotheses,
    curve_class,
    make_point,
    restriction_profile,
    seshadri,
    twist,
)

X = build_bott_tower(3, {(1, 2): 1, (1, 3): 2, (2, 3): 1})
E = builtin("x3_indecomposable", X)
prof = restriction_profile(E)

# %% [markdown]
# Curve classes (coordinates are the intersection numbers with D_1, D_2, D_3)
# and splitting types.

# %%
for C in X.walls:
    print(f"{C.label:5} {C.divisor_label:12} {curve_class(X, C).gamma_coords}  {prof[C.label]}")

# %% [markdown]
# Hypotheses, condition by condition, for one twist.

# %%
tw = twist(prof, DivisorClass([2, 1, 1]))
for cond in check_hypotheses(tw).conditions:
    print(f"{'ok ' if cond.passed else 'NO '} {cond.name:22} {cond.requirement}")

# %% [markdown]
# The constant by Gamma-level, and the recursive computation through the
# Hirzebruch slice, which must agree with the closed form.

# %%
points = {1: "1:1:0:1:0:1", 2: "1:1:1:1:0:1", 3: "1:1:1:1:1:1"}
for a in itertools.islice(itertools.product((1, 2), (0, 1), (1, 2)), 6):
    tw = twist(prof, DivisorClass(a))
    row = []
    for level, pt in points.items():
        res = seshadri(tw, make_point(X, pt))
        row.append(str(res.value.value))
        assert res.cross_check["recursive"]["value"] == res.cross_check["closed_form"]
    print(a, row)
