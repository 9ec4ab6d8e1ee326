# coding: utf-8

# # h1(E(-1)) detects splitting
#
# For a normalized rank-two bundle given by Serre data, h1(E(-1)) equals deg Z
# when E is not stable and c2 when it is. Either way it vanishes exactly when Z
# is empty, i.e. when E is a sum of line bundles. It is also the largest value
# of h1 over all twists.

# In[1]:

from collections import Counter

from planebundles import EnsembleConfig, cohomology_table, run_trial

config = EnsembleConfig(trials=60, u_range=(0, 5), stability_mix=0.3, seed=11)


# In[2]:

rows = []
for i in range(config.trials):
    E, reports = run_trial(config, i)
    t = cohomology_table(E)
    h1 = [t.h1(k) for k in t.ks]
    expected = E.c2 if E.stable else E.Z.degree
    ok = all(r.status != "fail" for r in reports)
    rows.append((E.Z.degree, t.h1(-1), max(h1), E.stable, expected == t.h1(-1) == max(h1) and ok))

print(Counter(good for *_, good in rows))
print(Counter((deg == 0, u == 0) for deg, u, *_ in rows))


# In[3]:

for deg, u, top, stable, _ in rows[:10]:
    print(f"deg Z={deg}  h1(E(-1))={u}  max h1={top}  stable={stable}")
