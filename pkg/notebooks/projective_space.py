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
# # Seshadri constants on projective space
#
# The tangent bundle of P^n restricts to every invariant line as
# O(1)^(n-1) + O(2). Its Seshadri constant is 1 at every point, but only
# because the bundle is uniform: the minimum slope on the invariant lines then
# bounds the slope on *every* line. Without that certificate the library
# reports the lower bound and says so.

# %%
from fractions import Fraction

from toric_seshadri import (
    DivisorClass,
    build_projective_space,
    builtin,
    make_point,
    restriction_profile,
    seshadri,
    twist,
)

# %%
for n in (2, 3, 4):
    P = build_projective_space(n)
    prof = restriction_profile(builtin("tangent", P))
    print(f"P^{n}:", {lab: str(prof[lab]) for lab in prof.labels[:3]}, "...")

# %% [markdown]
# With the uniformity certificate the value is exact and point-independent.

# %%
P = build_projective_space(3)
T = restriction_profile(builtin("tangent", P))
for pt in ("1:0:0:0", "1:2:3:4", "1/2:-1:0:7"):
    print(pt, seshadri(T, make_point(P, pt), certificate=True).value)

# %% [markdown]
# The same data without a certificate: the answer is the interval
# [min mu, open), together with a note explaining why.

# %%
res = seshadri(twist(T, DivisorClass([2])), make_point(P, "1:1:1:1"))
print(res.value)
print(res.notes[0])
assert res.value.lower == Fraction(3)
