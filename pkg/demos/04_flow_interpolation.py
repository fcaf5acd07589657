"""Interpolating the iterates of a near-identity map to p-adic time.

Any analytic self-map congruent to the identity mod p flows: its n-th
iterates extend to F(t, w) for every p-adic t, computed here by a truncated
Mahler series over forward differences of the orbit.  Integer times
reproduce iteration exactly; t = -1 inverts the map; the mod-p^2 shape is
the straight line w + (f(w) - w) t.
"""

from markoff_padic import PadicInt, mahler_flow, newton_inverse
from markoff_padic.flow import PointMap, verify_flow_mod_p2

p = 7


def ev(w):
    u, v = w
    one = PadicInt(p, u.precision, 1)
    return (u + (one + u * v).mul_p_power(1), v + (u * u).mul_p_power(1))


f = PointMap(p, ev, "identity")
w = (PadicInt(p, 12, 3), PadicInt(p, 12, 5))

five = w
for _ in range(5):
    five = f(five)
flowed = mahler_flow(f, 5, w, 4)
print("F(5, w) == f^5(w) mod p^4:", [a.residue_mod(4) for a in flowed] == [a.residue_mod(4) for a in five])

half_time = mahler_flow(f, PadicInt(p, 14, 12345), w, 4)
print("F(12345, w) mod p^4      =", [a.residue for a in half_time])

inv = mahler_flow(f, -1, w, 4)
print("f(F(-1, w)) == w mod p^4 :", [a.residue_mod(4) for a in map(lambda x: x, f(inv))] == [a.residue_mod(4) for a in w])
print("...matches Newton inverse:", [a.residue_mod(4) for a in newton_inverse(f, w)] == [a.residue for a in inv])

rep = verify_flow_mod_p2(f, [(t, w) for t in (1, 6, 48, 99)], additivity_samples=[(3, 9, w, 3)])
print("mod-p^2 closed form + additivity:", rep["passed"])
