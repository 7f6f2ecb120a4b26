# coding: utf-8

# # The constants C, K, V and the root s_0(z)
#
# The mean of omega over dense numbers grows like C log log x, the variance
# like V log log x. Both constants fall out of a single analytic function whose
# zero s_0(z) moves away from -1 as z leaves 1.

# In[1]:

import cmath
from densediv import constants, find_s0, residue_Cz

k = constants()
print(f"C = {k.C:.9f}  K = {k.K:.9f}  V = {k.V:.9f}")


# Newton's method on the analytic continuation, for z on the unit circle.
# The cubic remainder after the quadratic model should look like a constant.

# In[2]:

for phi in (0.02, 0.05, 0.1, 0.2):
    z = cmath.exp(1j * phi)
    r = find_s0(z)
    model = -1 + k.C * (z - 1) + k.K * (z - 1) ** 2
    print(f"{phi:5.2f}  s0 = {r.s0:.8f}  remainder/|z-1|^3 = {abs(r.s0 - model) / abs(z - 1) ** 3:.4f}")


# The residue C_z tends to C as z -> 1.

# In[3]:

print(residue_Cz(1), residue_Cz(cmath.exp(0.05j)))
