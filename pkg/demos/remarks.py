# coding: utf-8

# # Three worked remarks
#
# The remark checks look at a point with r = 0, six general points with r = 2,
# and three points with r = 1. The last one is flagged on purpose: the computed
# h1(E) is 2, which contradicts the positivity claim it tests.

# In[1]:

import random

from planebundles import FieldSpec, verify_remarks

for report in verify_remarks(random.Random(3), FieldSpec.default()):
    print(f"{report.check_id:<22} {report.status:<5} {report.details}")
