"""Counting points over Z/p^k and partitioning them into orbits.

Level 1 comes from a vectorized brute scan; higher levels lift each
nonsingular mod-p point through its smooth fiber of p^{2(k-1)} points.
For p = 3 mod 4 and D = 0 the census confirms the p(p-3) count and the
p^k-divisibility of every Vieta orbit.
"""

from markoff_padic import (
    check_orbit_divisibility,
    check_transitivity,
    count_points,
    enumerate_points,
    orbits,
)

for p in (7, 11, 19):
    rep = count_points(p, 1, 0)
    print(f"|X_0*(Z/{p})| = {rep['count']:4d}   p(p-3) = {rep['formula_expected']}")

# p = 5 is 1 mod 4: the proposition's hypothesis fails and the count is p(p+3)
rep = count_points(5, 1, 0)
print(f"|X_0*(Z/5)| = {rep['count']} (formula not applicable: {not rep['formula_applicable']})")

print("level-2 set size over p=7:", len(enumerate_points(7, 2, 0)), "= 28 * 49")

part = orbits(7, 2, 0, gens="gamma")
print("Vieta orbits at level 2:", part.orbit_sizes, "-> divisible by 49:",
      all(s % 49 == 0 for s in part.orbit_sizes))

print("divisibility report p=11, k=2:", check_orbit_divisibility(11, 2, 0)["all_divisible"])

for k in (1, 2, 3):
    print(f"Aut transitive on X_0*(Z/7^{k}):", check_transitivity(7, k, 0, "aut"))
