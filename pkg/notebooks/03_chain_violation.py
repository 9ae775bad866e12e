"""Sweep the chain length and block size and see where the quantum prediction breaks the bound.

The singlet rates are analytic here. The classical model is then sampled
to show that its chain stays comfortably satisfied.
"""

from ncdchain.inequality import evaluate_chain, minimal_violating_n

for k in (8, 9, 10, 12):
    print(f"k={k:2d}: smallest violating chain length = {minimal_violating_n(k)}")

print()
for n_settings in (2, 3, 4, 6):
    rep = evaluate_chain(n_settings, 9, "analytic", "singlet")
    print(f"N={n_settings}  lhs={rep.lhs:.3f}  rhs={rep.rhs_sum:.3f}  violated={rep.violated}")

lhv = evaluate_chain(3, 9, "monte_carlo", "lhv", n_bits=900_000, seed=7)
print(f"\nclassical N=3: lhs={lhv.lhs:.3f} rhs={lhv.rhs_sum:.3f} violated={lhv.violated}")
singlet = evaluate_chain(3, 9, "monte_carlo", "singlet", n_bits=900_000, seed=7)
print(f"sampled singlet N=3: lhs={singlet.lhs:.3f} rhs={singlet.rhs_sum:.3f} "
      f"violated={singlet.violated} (correction {singlet.correction:.5f})")
