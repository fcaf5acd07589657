"""Finite orbits and the exploratory strict-move obstruction.

A handful of parameters carry finite orbits; their exact sizes reproduce
at precision 4.  Along such an orbit the quantity P(T_p(word.point)) mod
p^2 never leaves D, which is precisely why minimality fails there; away
from them the scan finds witnesses immediately.
"""

from markoff_padic import check_XD, finite_orbit_catalog

for case, p in (("D2", 7), ("D3-sqrt2", 7), ("golden", 11), ("sqrtD", 7)):
    rep = finite_orbit_catalog(p, 4, case)
    for orb in rep["orbits"]:
        print(
            f"{case:9s} p={p}: point {orb['point']}, expected {orb['expected']:3d}, "
            f"Vieta orbit {orb['gamma_size']:3d}, full orbit {orb['aut_size']:3d}"
        )

print()
rep = check_XD(7, 3, 0, budget=4)
print(f"XD scan at (p=7, D=0): witness found = {rep['found']} "
      f"(word {rep['word']!r} at {rep['point']})")

rep = check_XD(7, 4, 2, budget=20, start=(1, 1, 1))
print(f"XD scan along the D=2 finite orbit: witness found = {rep['found']} "
      f"after scanning {rep['scanned']} points (minimality fails there)")
