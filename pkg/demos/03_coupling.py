"""Couple a dependent trial sequence with independent coins so one sits pathwise below the other."""

from fractions import Fraction as F

import numpy as np

from fixedparity import coupling

rng = np.random.default_rng(11)
p = 0.3

# every conditional success probability is at least p
proc = coupling.ConditionalTrialProcess(4, lambda i, h: 0.3 + 0.15 * sum(h) / (i + 1))
u, v = coupling.coupled_samples(proc, p, coupling.LOWER, rng, 20_000)

print("samples where V exceeds U:", int((v > u).sum()))
print("mean of V per trial:", v.mean(axis=0).round(3))
print("mean of U per trial:", u.mean(axis=0).round(3))

# exact joint law needs rational probabilities
exact = coupling.ConditionalTrialProcess(3, lambda i, h: F(3, 10) + F(sum(h), 10))
atoms = coupling.verify_coupling_atoms(exact, F(3, 10), coupling.LOWER)
print("exact atom check:", atoms.ok)
