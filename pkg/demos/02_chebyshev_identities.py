"""Monic Chebyshev polynomials and companion-matrix powers.

T_N and U_N drive everything quantitative here: C(x)^N has U-entries,
T_p is a contraction on each residue disk with a unique fixed point (a
trace of rational rotation), and high powers of C(x) are near-identity
with an explicit first-order term.
"""

from markoff_padic import (
    PadicInt,
    chebyshev_T,
    companion_power,
    fixed_point_Tp,
    rotation_order,
)
from markoff_padic.chebyshev import (
    verify_companion_estimates,
    verify_power_sum_identity,
)

p, K = 7, 3

print("T_5 =", dict(enumerate(chebyshev_T(5, p, K).coeffs)), "(x^5 - 5x^3 + 5x)")

x = PadicInt(11, 2, 3)
m = companion_power(x, 4)
print("C(3)^4 entries  =", [e.residue for e in m.entries()], " (U_4, -U_3, U_3, -U_2 at 3)")
print("det C(3)^4      =", m.det().residue)

# T_p fixed points: one per residue disk, found in exactly K-1 iterations.
x1 = fixed_point_Tp(PadicInt(p, 4, 1))
print(f"T_7 fixed point near 1   = {x1.residue} with rotation order {rotation_order(x1)}")
x3 = fixed_point_Tp(PadicInt(p, 4, 3))
print(f"T_7 fixed point near 3   = {x3.residue} with rotation order {rotation_order(x3)}")

# x^p collects into binomial-weighted T's; mod p only T_p survives.
rep = verify_power_sum_identity(p, 3)
print("binomial collection / Frobenius:", rep["binomial_collection"], rep["frobenius_mod_p"])

# Near-identity estimates for the (p^2-1)/2 power, exhaustive over u mod p.
rep = verify_companion_estimates(PadicInt(p, 3, 1), list(range(p)))
print("companion estimates at x0=1:", rep["passed"], f"({len(rep['samples'])} samples)")
rep = verify_companion_estimates(PadicInt(p, 3, 2), list(range(p)))
print("companion estimates at x0=2 (parabolic):", rep["passed"])
