"""Counting independent sets, colourings and matchings exactly.

Run with ``python3 demos/01_counting_basics.py``.
"""
# %% Independent sets are homomorphisms into a looped edge
from extremal_regular import hom_count, independence_polynomial, matching_polynomial, parse_named
from extremal_regular.extremal import compare_normalized

c4 = parse_named("C:4")
h_ind = parse_named("H_ind")
print("i(C_4) =", hom_count(c4, h_ind))
print("P_{C_4} coefficients:", independence_polynomial(c4).coeffs)

# %% Per-vertex comparison without floating point
# i(K_4)^(1/4) against i(K_{3,3})^(1/6): compare 5^6 with 15^4
k4, k33 = parse_named("K:4"), parse_named("K:3,3")
a, b = independence_polynomial(k4)(1), independence_polynomial(k33)(1)
sign = compare_normalized(a, k4.n, b, k33.n)
print(f"i(K_4)={a}, i(K_3,3)={b}, normalised comparison: {sign:+d}")

# %% Colourings and matchings
print("proper 3-colourings of the Petersen graph:", hom_count(parse_named("petersen"), parse_named("K:3")))
print("matching polynomial of K_{3,3}:", matching_polynomial(k33).coeffs)
