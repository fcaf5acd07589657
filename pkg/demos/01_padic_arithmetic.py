"""Finite-precision p-adic integers: the arithmetic every other layer uses.

A value is a residue mod p^K plus the bookkeeping of how many digits are
known.  Precision shrinks under division by p and under mixing operands of
different precision, which is exactly the accounting the dynamical
arguments downstream need.
"""

from markoff_padic import PadicInt, legendre, newton_solve, sqrt
from markoff_padic.padic import valuation_str

p, K = 7, 4
a = PadicInt(p, K, 10)
b = PadicInt(p, K, 340)
print(f"10 + 340 mod 7^4          = {(a + b).residue}")

low = PadicInt(p, 2, 10)
prod = a * low
print(f"mixing K=4 with K=2 keeps = {prod.precision} digits (min rule)")

c = PadicInt(5, 3, 50)
print(f"val_5(50)                 = {c.valuation()}")
print(f"val of zero-at-precision  = {valuation_str(PadicInt(5, 3, 0))}")
print(f"50 / 5 loses a digit:       K={c.div_p_power(1).precision}, residue {c.div_p_power(1).residue}")

u = PadicInt(p, K, 3)
print(f"3^-1 mod 7^4              = {u.invert().residue}, check {(u * u.invert()).residue}")

# Legendre symbols extend to p-adic integers through the mod-p reduction.
print(f"legendre(9 mod 13)        = {legendre(PadicInt(13, 1, 9))}")
print(f"legendre(3 mod 7)         = {legendre(PadicInt(7, 1, 3))}")

# Square roots by Tonelli-Shanks mod p, then Hensel lifting; the branch
# whose mod-p residue lies in [1, (p-1)/2] is always chosen.
r = sqrt(PadicInt(p, K, 2))
print(f"sqrt(2) mod 7^4           = {r.residue}, square {(r * r).residue}, branch {r.residue % p}")

# Newton solving refines any simple root to full precision.
root = newton_solve([-2, 0, 1], PadicInt(p, K, 3))
print(f"x^2 = 2 via Newton        = {root.residue} (= sqrt above: {root.residue == r.residue})")
