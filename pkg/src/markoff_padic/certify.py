"""End-to-end certification that a level-1 polydisk is minimal.

The pipeline assembles, for an admissible (p, K, D): a base point whose
polydisk supports the analysis, a chart recentred at T_p-fixed coordinates,
a strict move (a Vieta word displacing the base point by exactly p^{-1}),
residual transitivity of the conjugated stabilizer generators on (Z/p)^2,
and a unit minimal-subdisk determinant.  Certificates are deterministic
and replayable: re-running the pipeline on the recorded parameters must
reproduce every recorded value.
"""

from __future__ import annotations

import json
from collections import deque

from . import census
from .chebyshev import Mat2, chebyshev_T_at
from .flow import local_minimality_det, twisted_minimality_det
from .padic import PadicInt, legendre, sqrt
from .polydisk import PolydiskChart, parametrize, recentre
from .surface import (
    AutWord,
    SurfacePoint,
    VIETA_LETTERS,
    apply_word,
    dist,
    eval_P,
    lift_point,
    reduce_point,
)

SCHEMA_VERSION = 1

_PAIR_FIXING = {"x": ("sy", "sz"), "y": ("sz", "sx"), "z": ("sx", "sy")}


def _coerce_D(D, p: int, k: int) -> PadicInt:
    if isinstance(D, PadicInt):
        if D.prime != p:
            raise ValueError("prime mismatch")
        if D.precision < k:
            raise ValueError(f"D must carry precision >= {k}")
        return D.truncate(k)
    return PadicInt(p, k, D)


def find_special_point(p: int, D, k: int) -> SurfacePoint:
    """A point with one coordinate at +-2 mod p and all partials units.

    Generic recipe: (2, t + sqrt(D-4), t) with the least residue t whose
    three exclusions hold.  For p = 5 with D = 3 mod 5 the recipe point is
    (sqrt(D-4), 2, 0) instead.
    """
    D = _coerce_D(D, p, k)
    if p == 5 and D.residue_mod(1) == 3:
        s = sqrt(D - 4)
        pt = SurfacePoint(s, PadicInt(p, k, 2), PadicInt(p, k, 0), D)
        return pt.validate()
    if p <= 3 or legendre(D - 4) != 1:
        raise ValueError("no special point recipe")
    s = sqrt(D - 4)
    s1 = s.residue_mod(1)
    for t in range(p):
        if ((t + s1) ** 2 - 4) % p == 0:
            continue
        if (t * t - 4) % p == 0:
            continue
        if (4 - t * (t + s1)) % p == 0:
            continue
        tt = PadicInt(p, k, t)
        pt = SurfacePoint(PadicInt(p, k, 2), tt + s, tt, D)
        return pt.validate()
    raise ValueError("no special point recipe")


def _parab_candidates(pt: SurfacePoint):
    p = pt.prime
    for name, coord in zip("xyz", pt.coords()):
        if coord.residue % p in (2, p - 2):
            yield AutWord(_PAIR_FIXING[name]).power(p)


def _conjugated_power_candidates(pt: SurfacePoint):
    p = pt.prime
    n_quarter = (p * p - 1) // 4
    conjugators = [AutWord(())]
    conjugators += [AutWord((g,)) for g in VIETA_LETTERS]
    conjugators += [
        AutWord((g, h))
        for g in VIETA_LETTERS
        for h in VIETA_LETTERS
        if g != h
    ]
    for name in "xyz":
        power = AutWord(_PAIR_FIXING[name]).power(n_quarter)
        for alpha in conjugators:
            yield alpha.inverse() * power * alpha


def _collision_bfs(pt: SurfacePoint, budget: int) -> AutWord | None:
    """Find w1, w2 with w1.pt = w2.pt mod p but not mod p^2; return w1^-1 w2.

    Breadth-first search over the Vieta orbit of pt reduced mod p^2, with
    words tracked; distinct mod-p^2 points sharing a mod-p class give the
    strict move by isometry.  Guaranteed to succeed once more points are
    visited than there are mod-p classes.
    """
    p = pt.prime
    M = p * p
    start = reduce_point(pt, 2)
    words: dict[tuple, tuple] = {start: ()}
    classes: dict[tuple, tuple] = {tuple(c % p for c in start): start}
    queue = deque([(start, 0)])
    while queue:
        (x, y, z), depth = queue.popleft()
        if depth >= budget:
            continue
        w = words[(x, y, z)]
        for g in VIETA_LETTERS:
            if g == "sx":
                t = ((y * z - x) % M, y, z)
            elif g == "sy":
                t = (x, (x * z - y) % M, z)
            else:
                t = (x, y, (x * y - z) % M)
            if t in words:
                continue
            wt = (g,) + w
            words[t] = wt
            cls = tuple(c % p for c in t)
            if cls in classes:
                other = classes[cls]
                return AutWord(words[other]).inverse() * AutWord(wt)
            classes[cls] = t
            queue.append((t, depth + 1))
    return None


def strict_move_search(pt: SurfacePoint, budget: int = 8):
    """A Vieta word moving pt by exactly p^{-1}.

    Tries the explicit parabolic power (s_. s_.)^p on coordinates at +-2,
    then the (p^2-1)/4-th powers conjugated by short words, then a bounded
    breadth-first collision search over the orbit mod p^2.  The returned
    distance is re-verified before returning.
    """
    if pt.precision < 2:
        raise ValueError("precision >= 2 required")
    pt.validate()

    def check(word):
        if not len(word):
            return None
        d = dist(pt, apply_word(word, pt, gamma_only=True))
        return d if d.exponent == 1 else None

    for word in _parab_candidates(pt):
        d = check(word)
        if d is not None:
            return word, d
    for word in _conjugated_power_candidates(pt):
        d = check(word)
        if d is not None:
            return word, d
    word = _collision_bfs(pt, budget)
    if word is not None:
        d = check(word)
        if d is not None:
            return word, d
    raise ValueError("no strict move found")


def residual_transitivity(chart: PolydiskChart, gens, extra=None) -> dict:
    """BFS the mod-p action of conjugated words on the p^2 chart residues.

    Every word must stabilize the chart polydisk.  The report carries the
    full orbit partition sizes; the verdict is a single orbit.
    """
    p = chart.prime
    words = list(gens) + ([extra] if extra is not None else [])
    tables = []
    for word in words:
        table = [0] * (p * p)
        for iu in range(p):
            for iv in range(p):
                ju, jv = chart.apply_word_uv(word, chart.uv(iu, iv, level=1))
                table[iu * p + iv] = (ju.residue % p) * p + (jv.residue % p)
        tables.append(table)
    seen = [False] * (p * p)
    orbit_sizes = []
    for seed in range(p * p):
        if seen[seed]:
            continue
        seen[seed] = True
        size = 1
        stack = [seed]
        while stack:
            cur = stack.pop()
            for table in tables:
                nxt = table[cur]
                if not seen[nxt]:
                    seen[nxt] = True
                    size += 1
                    stack.append(nxt)
        orbit_sizes.append(size)
    return {
        "transitive": len(orbit_sizes) == 1,
        "orbit_sizes": sorted(orbit_sizes),
        "generators": [str(w) for w in words],
    }


def _certificate_skeleton(p, k, D, budget):
    return {
        "schema_version": SCHEMA_VERSION,
        "p": p,
        "K": k,
        "D": D.residue,
        "budget_words": budget,
        "route": None,
        "base_point": None,
        "chart": None,
        "strict_move": None,
        "residual_transitivity": None,
        "minimal_subdisk": None,
        "stage_failures": [],
        "overall": False,
    }


def _pick_arbitrary_base(p: int, D: PadicInt, k: int):
    """Least enumerated mod-p point, permuted so dP/dx is a unit, lifted."""
    pts = census.enumerate_points(p, 1, D.residue_mod(1))
    if len(pts) == 0:
        raise ValueError("no points mod p")
    x1, y1, z1 = (int(v) for v in census._decode(pts[0], p))
    for c in (x1, y1, z1):
        if c % p in (0, 2, p - 2):
            raise ValueError(
                "expected all coordinates away from 0, +-2 mod p on this route"
            )
    partials = ((2 * x1 - y1 * z1) % p, (2 * y1 - x1 * z1) % p, (2 * z1 - x1 * y1) % p)
    perm = None
    triple = (x1, y1, z1)
    if partials[0] == 0:
        if partials[1] != 0:
            perm = "pxy"
            triple = (y1, x1, z1)
        elif partials[2] != 0:
            perm = "pzx"
            triple = (z1, y1, x1)
        else:
            raise ValueError("point is singular mod p")
    return lift_point(triple, D, p, k, solved="x"), perm


def certify_minimal_polydisk(
    p: int, k: int, D, budget: int = 8, optimize_exponent: bool = False
) -> dict:
    """Assemble a minimality certificate for a level-1 polydisk.

    Admissible parameters: p > 3 prime, K >= 3, and either D = 0 mod p^2 or
    (D-4) a nonzero quadratic residue mod p; p = 5 with D = 3 mod 5 runs
    the exceptional pipeline.  Returns the certificate dict; any stage
    failure is recorded under stage_failures with overall = False.

    With optimize_exponent the stabilizer powers use the least admissible
    exponent derived from the rotation orders of the recentred base
    coordinates instead of the uniform (p^2-1)/4.
    """
    if p <= 3:
        raise ValueError("certification requires p > 3")
    if k < 3:
        raise ValueError("precision >= 3 required")
    D = _coerce_D(D, p, k)
    cert = _certificate_skeleton(p, k, D, budget)
    cert["optimized_exponent"] = bool(optimize_exponent)

    exceptional = p == 5 and D.residue_mod(1) == 3
    if exceptional:
        cert["route"] = "exceptional-p5"
    elif legendre(D - 4) == 1:
        cert["route"] = "special-point"
    elif D.residue_mod(2) == 0:
        cert["route"] = "arbitrary-point"
    else:
        raise ValueError(
            "certification hypotheses fail: need D = 0 mod p^2 or (D-4) a "
            "nonzero quadratic residue mod p"
        )

    n = (p * p - 1) // 2

    # stage 1-2: base point and chart
    try:
        perm = None
        if cert["route"] == "special-point":
            base = find_special_point(p, D, k)
        elif cert["route"] == "arbitrary-point":
            base, perm = _pick_arbitrary_base(p, D, k)
        else:
            base = find_special_point(p, D, k)
        original = base.residues()
        chart = parametrize(base, "x")
        if cert["route"] == "exceptional-p5":
            centred = chart  # (2, 0) are exact fixed points of T_5
        else:
            centred = recentre(chart)
        cert["base_point"] = {
            "original": list(original),
            "permutation": perm,
            "recentred": list(centred.base.residues()),
        }
        cert["chart"] = {
            "solved": centred.solved,
            "partial_mod_p": centred.partial.residue_mod(1),
        }
    except ValueError as exc:
        cert["stage_failures"].append(f"base-point/chart: {exc}")
        return cert

    # stage 3: strict move
    try:
        gamma, d = strict_move_search(centred.base, budget)
        cert["strict_move"] = {"word": str(gamma), "dist": str(d)}
    except ValueError as exc:
        cert["stage_failures"].append(f"strict-move: {exc}")
        return cert

    # stage 4-5: residual transitivity
    try:
        m_g = m_h = n // 2
        if optimize_exponent and cert["route"] != "exceptional-p5":
            from .chebyshev import rotation_order

            r_y = rotation_order(centred.base.y)
            r_z = rotation_order(centred.base.z)
            m_g = r_y if r_y % 2 else r_y // 2
            m_h = r_z if r_z % 2 else r_z // 2
        if cert["route"] == "exceptional-p5":
            gens = [
                AutWord(("sy", "sz")).power(p),
                AutWord(("sz", "sx")).power(p),
                AutWord(("sx", "sy")).power(n // 2),
            ]
        else:
            gens = [
                AutWord(("sz", "sx")).power(m_g),
                AutWord(("sx", "sy")).power(m_h),
            ]
            cert["chart"]["stabilizer_powers"] = {"g": m_g, "h": m_h}
        rt = residual_transitivity(centred, gens, extra=gamma)
        cert["residual_transitivity"] = rt
        if not rt["transitive"]:
            cert["stage_failures"].append("residual-transitivity: not transitive")
            return cert
    except ValueError as exc:
        cert["stage_failures"].append(f"residual-transitivity: {exc}")
        return cert

    # stage 6: minimal subdisk determinant
    try:
        if cert["route"] == "exceptional-p5":
            z0 = centred.base.z
            c2 = (centred.partial * n) * (z0 * z0 - 4).invert()
            A = Mat2(
                PadicInt(p, k, 1), c2, PadicInt(p, k, 0), PadicInt(p, k, 1)
            )
            f_map = centred.point_map(AutWord(("sz", "sx")).power(p * p))
            g_map = centred.point_map(
                AutWord(("sx", "sy")).power(n // 2),
                kind="affine",
                A=A,
                b=(PadicInt(p, k, 0), PadicInt(p, k, 0)),
            )
            witness = (0, 0)
            det, unit = twisted_minimality_det(
                f_map, g_map, centred.uv(*witness)
            )
            method = "twisted"
        else:
            f_map = centred.point_map(AutWord(("sz", "sx")).power(p * m_g))
            g_map = centred.point_map(AutWord(("sx", "sy")).power(p * m_h))
            witness = (1, 1)
            det, unit = local_minimality_det(f_map, g_map, centred.uv(*witness))
            method = "direct"
        cert["minimal_subdisk"] = {
            "witness": list(witness),
            "method": method,
            "det": det.residue,
            "det_precision": det.precision,
            "unit": unit,
        }
        if not unit:
            cert["stage_failures"].append("minimal-subdisk: determinant not a unit")
            return cert
    except ValueError as exc:
        cert["stage_failures"].append(f"minimal-subdisk: {exc}")
        return cert

    cert["overall"] = True
    return cert


def certificate_json(cert: dict) -> str:
    """Byte-stable serialization (fixed field order, no volatile data)."""
    return json.dumps(cert, indent=2)


def replay(cert: dict) -> tuple[bool, dict]:
    """Re-run the pipeline on the certificate's parameters and compare."""
    fresh = certify_minimal_polydisk(
        cert["p"],
        cert["K"],
        cert["D"],
        budget=cert["budget_words"],
        optimize_exponent=cert.get("optimized_exponent", False),
    )
    return certificate_json(fresh) == certificate_json(cert), fresh


def check_XD(p: int, k: int, D, budget: int = 8, start=None) -> dict:
    """Scan for a point and word with P(T_p(word.point)) != D mod p^2.

    T_p contracts each mod-p disk, so the scanned value only depends on the
    mod-p image of word.point; the scan therefore walks Vieta orbits of the
    mod-p census (word length bounded by the budget), lifting one
    representative per visited class.  A negative report is a valid outcome.
    """
    if k < 3:
        raise ValueError("precision >= 3 required")
    D = _coerce_D(D, p, k)
    d2 = D.residue_mod(2)
    if start is not None:
        starts = [tuple(int(c) % p for c in start)]
    else:
        pts = census.enumerate_points(p, 1, D.residue_mod(1))
        starts = [
            tuple(int(v) for v in census._decode(code, p)) for code in pts
        ]
    hypotheses_hold = D.residue_mod(2) == 0 or legendre(D - 4) == 1
    scanned = 0
    globally_seen = set()
    for root in starts:
        if root in globally_seen:
            continue
        words = {root: ()}
        queue = deque([(root, 0)])
        globally_seen.add(root)
        while queue:
            (x, y, z), depth = queue.popleft()
            scanned += 1
            lifted = lift_point((x, y, z), D.truncate(2), p, 2)
            tx, ty, tz = (chebyshev_T_at(c, p) for c in lifted.coords())
            value = eval_P(tx, ty, tz).residue_mod(2)
            if value != d2:
                return {
                    "found": True,
                    "start": list(root),
                    "word": str(AutWord(words[(x, y, z)])),
                    "point": [x, y, z],
                    "value_mod_p2": value,
                    "D_mod_p2": d2,
                    "scanned": scanned,
                    "certify_hypotheses_hold": hypotheses_hold,
                }
            if depth >= budget:
                continue
            w = words[(x, y, z)]
            for g in VIETA_LETTERS:
                if g == "sx":
                    t = ((y * z - x) % p, y, z)
                elif g == "sy":
                    t = (x, (x * z - y) % p, z)
                else:
                    t = (x, y, (x * y - z) % p)
                if t not in words:
                    words[t] = (g,) + w
                    globally_seen.add(t)
                    queue.append((t, depth + 1))
    return {
        "found": False,
        "scanned": scanned,
        "D_mod_p2": d2,
        "certify_hypotheses_hold": hypotheses_hold,
    }
