# coding: utf-8

# # The twisted cotangent bundle as Serre data
#
# A single reduced point Z with c1 = -1 and r = 1 gives the extension
# 0 -> O -> E(1) -> I_Z(1) -> 0, which is the twisted cotangent bundle of the plane.
# We compute its cohomology table, its resolution, and run every check on it.

# In[1]:

import random

from planebundles import (
    FieldSpec,
    SchemeSpec,
    bundle_resolution,
    cohomology_table,
    make_bundle,
    random_scheme,
    splits,
    verify_bundle,
)

F = FieldSpec.default()
Z = random_scheme(SchemeSpec.parse(1, "generic"), random.Random(0), F)
E = make_bundle(Z, c1=-1, r=1)
print(E.describe())


# The first cohomology is one-dimensional at k = -1 and vanishes elsewhere.

# In[2]:

table = cohomology_table(E)
print(table.format_text())


# The resolution reads 0 -> O(-2) -> 3 O(-1) -> E -> 0, which is the Euler sequence.

# In[3]:

print(bundle_resolution(E))
print("splits:", splits(E))


# In[4]:

for report in verify_bundle(E):
    print(f"{report.check_id:<24} {report.status}")
