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
# # The tangent bundle of a Hirzebruch surface
#
# X_2 is the Bott tower with one Bott number c = c_{1,2}. The rays are
# v_1 = e_1, v_2 = e_2, v_3 = -e_1 + c e_2, v_4 = -e_2, and the invariant
# curves are the four divisors D'_1, D'_2, D_1, D_2.

# %%
from toric_seshadri import (
    DivisorClass,
    associated_characters,
    build_bott_tower,
    builtin,
    is_nef,
    make_point,
    restriction_profile,
    seshadri,
    twist,
)
from toric_seshadri.report import render_text, restrict_doc

c = 2
X = build_bott_tower(2, {(1, 2): c})
T = builtin("tangent", X)

# %% [markdown]
# Characters on each maximal cone: the dual basis of the cone's rays.

# %%
for ci, cone in enumerate(X.max_cones):
    print([X.ray_labels[r] for r in cone], associated_characters(T, ci))

# %% [markdown]
# Restrictions to the invariant curves. The curve D'_2 has self-intersection
# -c, so T is not nef.

# %%
prof = restriction_profile(T)
print(render_text(restrict_doc(T, prof)))
print(is_nef(prof))

# %% [markdown]
# Twisting by D = a_1 D_1 + a_2 D_2 with a_1 >= c makes it nef. The constant
# depends only on whether the point lies on the negative section
# (z_2 = 0) or not.

# %%
on, off = make_point(X, "1:1:0:1"), make_point(X, "1:1:1:1")
print(" a1 a2 | z2=0  z2!=0")
for a1 in range(c, c + 3):
    for a2 in range(3):
        tw = twist(prof, DivisorClass([a1, a2]))
        print(f"{a1:3}{a2:3} | {seshadri(tw, on).value.value!s:5} {seshadri(tw, off).value.value}")
