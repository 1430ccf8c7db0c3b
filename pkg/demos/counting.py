"""
Partial counts
==============

N_k counts the points of X whose i-th coordinate lies in F_{q^{d_i k}}.
With all d_i equal to 1 this is the ordinary count #X(F_{q^k}).
"""

from partialzeta.counting import count_classical, count_partial, count_partial_bruteforce
from partialzeta.varfile import loads_variety

X = loads_variety("""
label = mixed cubic
p = 2
vars = x1 x2
eq x2^2 + x1*x2 = x1^3 + 1
""")

# x1 over F_{2^k}, x2 over F_{4^k}
d = (1, 2)
for k in range(1, 7):
    print(k, count_partial(X, d, k), 2 ** (k + 1) - 1)

# the digit-arithmetic oracle agrees, but it looks at every point
print("oracle at k=3:", count_partial_bruteforce(X, d, 3))

# classical counts for comparison
print("classical:", [count_classical(X, m) for m in range(1, 6)])

# a surface with a dividing chain (1, 1, 2): N_k = 2 * 4^k
Y = loads_variety("p = 2\nvars = x1 x2 x3\neq x3^2 + x3 = x1*x2 + 1\n")
print([count_partial(Y, (1, 1, 2), k) for k in range(1, 5)])
