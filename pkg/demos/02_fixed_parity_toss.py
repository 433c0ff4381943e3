"""Roll a die, toss every other coin, then force the chosen coin to fix the parity."""

from fractions import Fraction as F

from fixedparity import parity

n, p = 6, F(1, 4)

even = parity.even_sum_toss(n, p)
odd = parity.odd_sum_toss(n, p)
print("A(6, 1/4):", [str(m) for m in even.masses])
print("P(6, 1/4):", [str(m) for m in odd.masses])

# constant biases: the die weights do not matter
skewed = parity.fixed_parity_toss_pmf((p,) * n, [F(1, 2), F(1, 10), F(1, 10), F(1, 10), F(1, 10), F(1, 10)], 0)
print("skewed die gives the same law:", skewed == even)

print("fair coins, closed form:", [str(m) for m in parity.fair_toss_closed_form(n, 0).masses])

# the toss law is a mixture of conditioned laws
print("mixture identity holds:", parity.verify_mixture_representation((p,) * n, None, 0))

# median stays above (n-1)p - 1
for n in (5, 20, 50):
    chk = parity.median_lower_bound_check(n, F(3, 10))
    print(f"n={n}: even median {chk.even_interval}, odd median {chk.odd_interval}, bound {float(chk.bound):.2f}")
