# coding: utf-8

# # omega_z and d_z
#
# omega_z generalises Buchstab's function, d_z is the density function that
# describes the count of dense numbers weighted by z^nu. For z = 1 the
# former tends to exp(-gamma) and the latter behaves like C / (v + 1).

# In[1]:

import numpy as np
from densediv import constants, solve_dz, solve_omega
from densediv.special import EXP_NEG_GAMMA

om = solve_omega(1.0, 20)
u = np.array([1.5, 2.0, 3.0, 5.0, 10.0, 20.0])
print(np.c_[u, om(u).real])
print("limit", EXP_NEG_GAMMA)


# In[2]:

C = constants().C
d1 = solve_dz(1.0, 40)
v = np.array([2.0, 5.0, 10.0, 20.0, 40.0])
print(np.c_[v, d1(v).real, C / (v + 1)])


# A rotated z: the power of v is 1 + s_0(z), a complex exponent.

# In[3]:

dz = solve_dz(np.exp(0.05j), 40)
for x in (10.0, 20.0, 40.0):
    print(x, dz(x), dz.asymptotic(x))
