# String-theoretic E-polynomial of a surface with a few isolated A_1 points.
#
# The E-polynomials of the strata are inputs.  Here X is a projective
# surface whose smooth part has E = 1 + 2uv + u^2v^2 - 3 (three points
# removed), and each removed point has the local cone over (1,0),(1,2).

from stringcone.corpus import index_two_cone
from stringcone.stringy import BivariatePolynomial, StratumRecord, string_e_polynomial, string_hodge_numbers

B = BivariatePolynomial.from_triples

smooth = StratumRecord(B([[0, 0, 1 - 3], [1, 1, 2], [2, 2, 1]]))
node = StratumRecord(B([[0, 0, 1]]), index_two_cone())

e_st = string_e_polynomial([smooth] + [node] * 3)
print("E_st =", " + ".join(f"{a} u^{p} v^{q}" for p, q, a in e_st.to_triples()))

hodge = string_hodge_numbers(e_st)
for p in range(3):
    print("  ".join(f"h^{p},{q}={hodge.get((p, q), 0)}" for q in range(3)))
