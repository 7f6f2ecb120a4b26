# coding: utf-8

# # Dense divisors and practical numbers
#
# An integer n is t-dense when the ratio between consecutive divisors never
# exceeds t. Practical numbers are the ones whose divisors can be summed to
# every value up to sigma(n). Both sets come from the same chaining rule on
# the prime factorisation, so one enumerator handles them.

# In[1]:

import numpy as np
from densediv import ThetaRule, members

dense = members(ThetaRule.dense(2), 10**6)
practical = members(ThetaRule.practical(), 10**6)
print(dense.values[:15])
print(practical.values[:15])


# Every 2-dense number is practical. The converse fails, first at 78:
# its divisors run 1, 2, 3, 6, 13, ... and 13/6 is above 2, but 1+2+3+6 = 12
# already reaches 12, so every value up to sigma(78) is still a subset sum.

# In[2]:

print(np.isin(dense.values, practical.values).all())
print(np.setdiff1d(practical.values, dense.values)[:8])
print(len(dense.values), len(practical.values))


# Counts grow like x / log x. The ratio below settles slowly towards a
# constant, which is the practical-number analogue of the prime number theorem.

# In[3]:

for x in (10**3, 10**4, 10**5, 10**6):
    n = len(practical.upto(x).values)
    print(x, n, round(n * np.log(x) / x, 4))
