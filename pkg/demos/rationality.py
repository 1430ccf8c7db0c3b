"""
Recurrences, roots and weights
==============================

Counts for a dividing chain satisfy a linear recurrence whose roots have
absolute values q^(w/2).  For other d the roots may pick up root-of-unity
coefficients; classify() reports which case was seen.
"""

from partialzeta import cfinite
from partialzeta.counting import count_partial
from partialzeta.report import analyze_variety
from partialzeta.series import zeta_series
from partialzeta.varfile import loads_variety

X = loads_variety("p = 2\nvars = x1 x2\neq x2^2 + x2 = x1^3\n")
counts = [count_partial(X, (1, 1), k) for k in range(1, 9)]
print("counts:", counts)

rec = cfinite.min_recurrence(counts, 3)
print("recurrence:", rec.coefficients)
print("next term:", cfinite.predict(rec, counts, 9), "fresh count:", count_partial(X, (1, 1), 9))

roots = cfinite.char_roots(rec)
for r, w in zip(roots, cfinite.rh_check(roots, 2)):
    print(f"root {r.value:.6f}  |root| {r.modulus:.6f}  weight {w.weight}")

data = cfinite.solve_coefficients(counts, roots)
print("coefficients:", [round(c.real, 9) for c in data.coefficients])
print(cfinite.classify(data.coefficients, 1).verdict)

# the zeta function as a rational function
R = cfinite.pade_reconstruct(zeta_series(counts), 2, 3)
print("numerator", R.numerator, "denominator", R.denominator)

# a non-dividing chain: x1 = x2 with d = (2, 3) counts F_{2^k}
Y = loads_variety("p = 2\nvars = x1 x2\neq x1 = x2\n")
rep, code = analyze_variety(Y, (2, 3), 4, faltings=False)
print(rep["counts"]["values"], rep["recurrence"]["coefficients"], rep["classification"]["verdict"])

# a near-rational coefficient: a primitive cube root of unity
print(cfinite.classify([complex(-0.5, 3 ** 0.5 / 2)], 3))
