"""
q-adic divisibility of partial counts
=====================================

ord_q N_k >= k mu with mu the smallest nonnegative integer at least
(sum d_i - lcm(d) sum deg f_j) / max deg f_j.
"""

from partialzeta.padic import AxKatzInput, mu, ord_q, verify_axkatz
from partialzeta.varfile import loads_variety

# mu is only positive when the d_i outweigh the degrees
for d, degs in [((1, 1, 1), (2,)), ((1, 1, 1, 1, 1), (2,)), ((2, 2, 2, 2, 2), (1,)), ((1, 2), (3,))]:
    print(d, degs, mu(AxKatzInput(d, degs, 2)))

# a linear form in five variables over F_2: N_k = 2^(4k), mu = 4
X = loads_variety("p = 2\nvars = x1 x2 x3 x4 x5\neq x1 + x2 + x3 + x4 + x5 = 1\n")
res = verify_axkatz(X, (1, 1, 1, 1, 1), range(1, 3))
print(res["mu"], [(r["count"], r["ord_q"], r["bound"]) for r in res["checks"]])

print(ord_q(48, 2), ord_q(0, 3), ord_q(81, 3, 2))
