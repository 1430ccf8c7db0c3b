"""
Finite fields and their subfields
=================================

Every partial count happens inside one ambient field F_{q^m}; the
coordinates are then restricted to subfields F_{q^s} with s | m.
"""

from partialzeta.ffield import build_ambient, field_spec, subfield_basis, subfield_indices

# F_2^6 contains F_2, F_4 and F_8 (but not F_16)
F = build_ambient(field_spec(2), 6)
print("modulus (lowest degree first):", F.modulus)

for s in (1, 2, 3, 6):
    print(f"F_(2^{s}) has {len(subfield_indices(F, s))} elements in F_(2^6)")

# a subfield is the fixed space of a^(q^s) = a, found by linear algebra
basis = subfield_basis(F, 3)
print("basis of F_8 over F_2:", [b.coeffs for b in basis])

a = F.element([0, 1])  # the class of x
print("x^(2^6) == x:", F.pow(a, 2 ** 6) == a)
print("x in F_8:", F.is_in_subfield(a, 3))
b = F.pow(a, 9)  # 9 = (2^6 - 1) / 7, so b generates F_8^*
print("x^9 in F_8:", F.is_in_subfield(b, 3))
