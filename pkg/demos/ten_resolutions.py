# coding: utf-8

# # The ten resolution shapes of short schemes
#
# Ideals of zero-dimensional plane schemes of degree at most five fall into ten
# graded Betti shapes. We generate a scheme for each shape and print its
# generators, syzygies and Hilbert function.

# In[1]:

import random

from planebundles import FieldSpec, betti_summary, realize_ten_cases

F = FieldSpec.default()
cases = realize_ten_cases(random.Random(7), F)


# In[2]:

for label, Z in cases.items():
    s = betti_summary(Z)
    print(f"{label.value:<12} u={s['u']}  gens={s['generators']}  syz={s['syzygies']}  hilbert={s['hilbert']}")


# The same computation over the rationals gives the same integers.

# In[3]:

Q = FieldSpec.rationals()
rational = realize_ten_cases(random.Random(7), Q)
print(all(betti_summary(rational[k])["syzygies"] == betti_summary(cases[k])["syzygies"] for k in cases))
