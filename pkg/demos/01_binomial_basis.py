"""Moving a polynomial between the monomial basis and the binomial basis C(t+d-j, d).

The h*-coordinates of an Ehrhart polynomial are the numerator of its
generating function; Stanley non-negativity means all of them are >= 0.
"""

from snnroots import HStarVector, MonomialPolynomial, hstar_eval, hstar_to_monomial, is_snn, monomial_to_hstar

f = MonomialPolynomial((1.0, 2.0, 1.0))  # (t + 1)^2
h = monomial_to_hstar(f, 2)
print("(t+1)^2 in the degree-2 binomial basis:", h.coeffs)
print("back to monomials:", hstar_to_monomial(h).coeffs)

m2 = HStarVector.of([1, 0, 1])
print("M_2 = C(t+2,2) + C(t,2) expands to", hstar_to_monomial(m2).coeffs, "(t^2 + t + 1)")

# the same polynomial padded into a larger basis is no longer nonnegative
padded = monomial_to_hstar(f, 4)
print("(t+1)^2 viewed in degree 4:", padded.coeffs, "SNN:", is_snn(padded))

# evaluation directly in the binomial basis
print("h = (1,1,1) at t = 1:", hstar_eval(HStarVector.of([1, 1, 1]), 1))

# a degree-26 vector converts exactly; the rational coefficients ride along
big = HStarVector.of([1, 2, 3, 4, 6, 10, 16, 27, 43, 69, 112, 181, 293, 473, 762] + [0] * 12)
mono = hstar_to_monomial(big)
print("leading coefficient of the degree-26 example:", mono.exact[-1])
print("roundtrip exact:", monomial_to_hstar(mono, 26) == big)
