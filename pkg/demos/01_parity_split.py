"""Even and odd mass of a Bernoulli sum, and what conditioning on parity does."""

from fractions import Fraction as F

from fixedparity import parity

I = (F(1, 5), F(1, 3), F(2, 5), F(3, 4))

law = parity.poisson_binomial(I)
print("law of H(I):", [str(m) for m in law.masses])

split = parity.parity_split(I)
print("P[even] =", split.alpha, " P[odd] =", split.beta)

# a single fair coin makes the parity fair regardless of the rest
print("with a fair coin:", parity.parity_split(I + (F(1, 2),)).alpha)

for b in (parity.EVEN, parity.ODD):
    d = parity.conditional_parity_pmf(I, b)
    print("given parity", b, "->", [str(m) for m in d.masses])

# float backend shares the same code path
print("float alpha:", parity.parity_split(tuple(float(p) for p in I)).alpha)
