# Certify a batch of random graded cones and tabulate what comes out.
#
# Each cone gets its own seed for heights, xi and the linear forms; the table
# shows S, T and whether the quotient dimensions and pairing came out right.

import sys
import time

from stringcone.corpus import random_corpus
from stringcone.decomposition import MINUS, PLUS, build_decomposition, choose_xi, verify_partition
from stringcone.pairing import build_pairing, check_nondegeneracy
from stringcone.quotient import build_presentation, make_forms, regularity_check
from stringcone.series import check_duality, s_polynomial, t_polynomial
from stringcone.triangulation import triangulate

count = int(sys.argv[1]) if len(sys.argv) > 1 else 10

print(f"{'#':>2} {'r':>2} {'d':>2} {'vol':>4}  {'S':<14} {'T':<16} part  dual  reg   pair  secs")
for k, cone in enumerate(random_corpus(count)):
    t0 = time.perf_counter()
    tri = triangulate(cone, seed=k)
    dec = build_decomposition(tri, choose_xi(tri, k))
    D = 2 * cone.rank + 2
    part = verify_partition(dec, D, PLUS).ok and verify_partition(dec, D, MINUS).ok
    S, T = s_polynomial(dec), t_polynomial(dec)
    forms = make_forms(cone, k)
    pR = build_presentation(dec, forms)
    pO = build_presentation(dec, forms, interior=True)
    reg = regularity_check(pR.dims, cone.rank).ok and regularity_check(pO.dims, cone.rank).ok
    pair = check_nondegeneracy(build_pairing(pR, pO)).ok
    secs = time.perf_counter() - t0
    print(f"{k:>2} {cone.rank:>2} {cone.num_points:>2} {tri.normalized_volume:>4}  "
          f"{str(S.to_list()):<14} {str(T.to_list()):<16} {part!s:<5} "
          f"{check_duality(S, T, cone.rank)!s:<5} {reg!s:<5} {pair!s:<5} {secs:.2f}")
