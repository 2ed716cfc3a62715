# Walk through the whole pipeline on the cone spanned by (1,0) and (1,2).
#
# Run from the repository root:  python3 demos/index_two_walkthrough.py

from stringcone.corpus import index_two_cone
from stringcone.decomposition import MINUS, PLUS, build_decomposition, decompose_point, direction_from_xi
from stringcone.pairing import build_pairing, check_nondegeneracy
from stringcone.quotient import build_presentation, make_forms, regularity_check
from stringcone.series import hilbert_numerator_truncated, s_polynomial, t_polynomial
from stringcone.triangulation import triangulate

cone = index_two_cone()
tri = triangulate(cone, seed=0)
print("simplices:", [s.indices for s in tri.simplices], "volume", tri.normalized_volume)

dec = build_decomposition(tri, direction_from_xi(tri, (1, 1)))
print("B+ :", [b.coords for b in dec.box_union(PLUS)])
print("B- :", [b.coords for b in dec.box_union(MINUS)])

for n in [(1, 1), (2, 2), (3, 5)]:
    r = decompose_point(dec, n)
    print(f"{n} = {r.base.coords} + {r.multiplicities} . e")

S, T = s_polynomial(dec), t_polynomial(dec)
print("S =", S, "   T =", T)
print("point-count numerators:", hilbert_numerator_truncated(cone, 6),
      hilbert_numerator_truncated(cone, 6, interior_only=True))

forms = make_forms(cone, seed=0)
pR = build_presentation(dec, forms)
pO = build_presentation(dec, forms, interior=True)
for p in (pR, pO):
    print(p.flavor, "dims by prefix:")
    for k, row in enumerate(p.dims):
        print("   k =", k, row)
    print("   regular:", regularity_check(p.dims, cone.rank).ok)

pairing = build_pairing(pR, pO)
for l, m in pairing.matrices.items():
    print(f"P_{l} =", m.to_strings())
print("non-degenerate:", check_nondegeneracy(pairing).ok)
