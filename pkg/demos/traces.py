"""
Traces of powers from symmetric and exterior powers
===================================================

Tr(phi^h) = sum_s (-1)^(h-s) s Tr(phi|Sym^s) Tr(phi|wedge^(h-s)),
checked in exact arithmetic against eigenvalue sums and matrix powers.
"""

from fractions import Fraction

from partialzeta import symident

eig = [2, -1, 3]
h = 4
hs, es = symident.spectrum_symmetric(eig, h)
print("h_s:", [str(x) for x in hs])
print("e_t:", [str(x) for x in es])
print("formula:", symident.universal_trace(hs, es, h), "direct:", sum(Fraction(x) ** h for x in eig))

M = [[1, 2, 0], [0, -1, 1], [3, 0, 2]]
es = symident.matrix_elementary(M, 5)
hs = symident.complete_from_elementary(es, 5)
print("matrix:", symident.universal_trace(hs, es, 5), symident.matrix_power_trace(M, 5))

# sign convention: with (-1)^(s-1) the 1 x 1 case at h = 2 comes out negated
hs, es = symident.spectrum_symmetric([3], 2)
print(symident.universal_trace(hs, es, 2), symident.universal_trace(hs, es, 2, printed_sign=True))

# Newton's identities both ways
p = [Fraction(sum(x ** s for x in eig)) for s in range(1, 6)]
print(symident.power_to_elementary(p))
print(symident.elementary_to_power(symident.power_to_elementary(p)) == p)
