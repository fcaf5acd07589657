"""Monic Chebyshev polynomials, companion-matrix powers, and their verifiers.

The two families T_N, U_N satisfy the recurrence f_N = x f_{N-1} - f_{N-2}
with initials (T_{-1}, T_0) = (x, 2) and (U_{-1}, U_0) = (0, 1), and the
symmetries T_{-N} = T_N, U_{-N-2} = -U_N.  The companion matrix
C(x) = [[x, -1], [1, 0]] has C(x)^N = [[U_N, -U_{N-1}], [U_{N-1}, -U_{N-2}]],
so T_N(x) = trace C(x)^N; large powers are always evaluated by binary
exponentiation on matrices, never expanded symbolically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .padic import PadicInt

DEGREE_CAP = 10_000

NEG_INF = float("-inf")


class DensePoly:
    """Polynomial with integer coefficients reduced modulo p^K."""

    __slots__ = ("prime", "precision", "coeffs")

    def __init__(self, prime: int, precision: int, coeffs):
        self.prime = prime
        self.precision = precision
        mod = prime**precision
        cs = [c % mod for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __eq__(self, other) -> bool:
        if not isinstance(other, DensePoly):
            return NotImplemented
        return (self.prime, self.precision, self.coeffs) == (
            other.prime,
            other.precision,
            other.coeffs,
        )

    def __hash__(self) -> int:
        return hash((self.prime, self.precision, self.coeffs))

    def __repr__(self) -> str:
        return f"DensePoly(p={self.prime}, K={self.precision}, {list(self.coeffs)})"

    def _new(self, coeffs) -> "DensePoly":
        return DensePoly(self.prime, self.precision, coeffs)

    def __add__(self, other: "DensePoly") -> "DensePoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return self._new(out)

    def __sub__(self, other: "DensePoly") -> "DensePoly":
        a, b = list(self.coeffs), other.coeffs
        a += [0] * (len(b) - len(a))
        for i, c in enumerate(b):
            a[i] -= c
        return self._new(a)

    def __mul__(self, other) -> "DensePoly":
        if isinstance(other, int):
            return self._new([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return self._new(out)

    __rmul__ = __mul__

    def shift_x(self) -> "DensePoly":
        """Multiply by x."""
        return self._new((0,) + self.coeffs)

    def __call__(self, x: PadicInt) -> PadicInt:
        acc = PadicInt(x.prime, x.precision, 0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reduced(self, level: int) -> "DensePoly":
        return DensePoly(self.prime, level, self.coeffs)


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over PadicInt; companion powers have determinant 1."""

    a11: PadicInt
    a12: PadicInt
    a21: PadicInt
    a22: PadicInt

    @staticmethod
    def identity(p: int, k: int) -> "Mat2":
        one = PadicInt(p, k, 1)
        zero = PadicInt(p, k, 0)
        return Mat2(one, zero, zero, one)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a11 + other.a11,
            self.a12 + other.a12,
            self.a21 + other.a21,
            self.a22 + other.a22,
        )

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a11 - other.a11,
            self.a12 - other.a12,
            self.a21 - other.a21,
            self.a22 - other.a22,
        )

    def scale(self, c: PadicInt | int) -> "Mat2":
        return Mat2(self.a11 * c, self.a12 * c, self.a21 * c, self.a22 * c)

    def power(self, n: int) -> "Mat2":
        if n < 0:
            raise ValueError("negative matrix powers not supported")
        result = Mat2.identity(self.a11.prime, self.a11.precision)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def det(self) -> PadicInt:
        return self.a11 * self.a22 - self.a12 * self.a21

    def trace(self) -> PadicInt:
        return self.a11 + self.a22

    def apply(self, v: tuple[PadicInt, PadicInt]) -> tuple[PadicInt, PadicInt]:
        return (self.a11 * v[0] + self.a12 * v[1], self.a21 * v[0] + self.a22 * v[1])

    def inverse(self) -> "Mat2":
        d = self.det()
        if not d.is_unit():
            raise ValueError("matrix not invertible")
        w = d.invert()
        return Mat2(self.a22 * w, -self.a12 * w, -self.a21 * w, self.a11 * w)

    def entries(self) -> tuple[PadicInt, PadicInt, PadicInt, PadicInt]:
        return (self.a11, self.a12, self.a21, self.a22)

    def congruent_to(self, other: "Mat2", level: int | None = None) -> bool:
        return all(
            s.congruent_to(o, level)
            for s, o in zip(self.entries(), other.entries())
        )


def _cheb_family(n: int, p: int, k: int, f_m1, f_0, cap: int) -> DensePoly:
    """Run f_N = x f_{N-1} - f_{N-2} up to index n >= 0."""
    if n > cap:
        raise ValueError(f"degree cap {cap} exceeded")
    prev = DensePoly(p, k, f_m1)
    cur = DensePoly(p, k, f_0)
    if n == -1:
        return prev
    for _ in range(n):
        prev, cur = cur, cur.shift_x() - prev
    return cur


def chebyshev_T(n: int, p: int, k: int, cap: int = DEGREE_CAP) -> DensePoly:
    """T_n modulo p^k, using T_{-N} = T_N for negative indices."""
    return _cheb_family(abs(n), p, k, [0, 1], [2], cap)


def chebyshev_U(n: int, p: int, k: int, cap: int = DEGREE_CAP) -> DensePoly:
    """U_n modulo p^k, using U_{-N-2} = -U_N for indices below -1."""
    if n >= -1:
        return _cheb_family(n, p, k, [], [1], cap)
    return chebyshev_U(-n - 2, p, k, cap) * (-1)


def companion(x: PadicInt) -> Mat2:
    """The companion matrix [[x, -1], [1, 0]]."""
    p, k = x.prime, x.precision
    return Mat2(x, PadicInt(p, k, -1), PadicInt(p, k, 1), PadicInt(p, k, 0))


def companion_power(x: PadicInt, n: int) -> Mat2:
    """C(x)^n by binary exponentiation."""
    return companion(x).power(n)


def chebyshev_T_at(x: PadicInt, n: int) -> PadicInt:
    """T_n(x) = trace C(x)^n, without building the polynomial."""
    return companion_power(x, abs(n)).trace()


def chebyshev_U_at(x: PadicInt, n: int) -> PadicInt:
    """U_n(x) from the top-left entry of C(x)^n."""
    if n >= 0:
        return companion_power(x, n).a11
    if n == -1:
        return PadicInt(x.prime, x.precision, 0)
    return -chebyshev_U_at(x, -n - 2)


def companion_derivative(x: PadicInt, n: int, step: int | None = None) -> Mat2:
    """(C^n)'(x) modulo p^step, by an exact p-adic finite difference.

    Entries of C(x)^n are integer polynomials, so the forward difference
    (C_n(x + p^m) - C_n(x)) / p^m equals the derivative modulo p^m exactly.
    Requires precision >= 2*step + 1.
    """
    m = step if step is not None else (x.precision - 1) // 2
    if m < 1 or x.precision < 2 * m + 1:
        raise ValueError(
            f"precision {x.precision} insufficient for difference step {m}"
        )
    shifted = PadicInt(x.prime, x.precision, x.residue + x.prime**m)
    diff = companion_power(shifted, n) - companion_power(x, n)
    return Mat2(*(e.div_p_power(m).truncate(m) for e in diff.entries()))


def companion_derivative_formula(x: PadicInt, n: int) -> Mat2:
    """(C^n)'(x) from the closed trace/entry formula; needs x != +-2 mod p."""
    p, k = x.prime, x.precision
    disc = x * x - 4
    if not disc.is_unit():
        raise ValueError("closed formula needs x not congruent to +-2 mod p")
    w = disc.invert()
    t_next = chebyshev_T_at(x, n + 1)
    t_cur = chebyshev_T_at(x, n)
    t_prev = chebyshev_T_at(x, n - 1)
    u_prev = chebyshev_U_at(x, n - 1)
    first = Mat2(t_next, -t_cur, t_cur, -t_prev).scale(w * n)
    two = PadicInt(p, k, 2)
    second = Mat2(-two, x, -x, two).scale(w * u_prev)
    return first + second


def companion_derivative_border(x_sign: int, n: int, p: int, k: int) -> Mat2:
    """(C^n)'(+-2) from the binomial-coefficient formula."""
    if x_sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    sign = 1 if x_sign == 1 else (-1) ** (n + 1)
    b3 = math.comb(n + 2, 3)
    b2 = math.comb(n + 1, 3)
    b1 = math.comb(n, 3)
    m = Mat2(
        PadicInt(p, k, b3),
        PadicInt(p, k, -x_sign * b2),
        PadicInt(p, k, x_sign * b2),
        PadicInt(p, k, -b1),
    )
    return m.scale(sign)


def fixed_point_Tp(x0: PadicInt) -> PadicInt:
    """The unique fixed point of T_p in the residue disk of x0.

    T_p is a p^{-1}-contraction on every mod-p disk, so exactly K-1
    iterations of x <- T_p(x) pin the fixed point to full precision.
    """
    x = x0
    for _ in range(x0.precision - 1):
        x = chebyshev_T_at(x, x0.prime)
    return x


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rotation_order(x1: PadicInt) -> int:
    """Order of x1 as a trace of rational rotation (x1 a T_p fixed point).

    Returns the least divisor r of (p^2-1)/2 with C(x1)^r = I at working
    precision; the borderline residues +-2 are unipotent and rejected.
    """
    p, k = x1.prime, x1.precision
    if x1.residue % p in (2, p - 2):
        raise ValueError("unipotent case")
    ident = Mat2.identity(p, k)
    for r in _divisors((p * p - 1) // 2):
        if companion_power(x1, r).congruent_to(ident):
            return r
    raise ValueError("no rotation order found; x1 is not a T_p fixed point")


def verify_power_sum_identity(p: int, k: int) -> dict:
    """Check x^p = sum_j binom(p, j) T_{p-2j} and T_p = x^p mod p, on coefficients."""
    x_to_p = DensePoly(p, k, [0] * p + [1])
    total = DensePoly(p, k, [])
    for j in range((p - 1) // 2 + 1):
        total = total + chebyshev_T(p - 2 * j, p, k) * math.comb(p, j)
    collect_ok = total == x_to_p
    tp_mod_p = chebyshev_T(p, p, 1)
    frobenius_ok = tp_mod_p == DensePoly(p, 1, [0] * p + [1])
    first_discrepancy = None
    if not collect_ok:
        a, b = total.coeffs, x_to_p.coeffs
        for i in range(max(len(a), len(b))):
            ca = a[i] if i < len(a) else 0
            cb = b[i] if i < len(b) else 0
            if ca != cb:
                first_discrepancy = {"degree": i, "lhs": cb, "rhs": ca}
                break
    return {
        "p": p,
        "k": k,
        "binomial_collection": collect_ok,
        "frobenius_mod_p": frobenius_ok,
        "passed": collect_ok and frobenius_ok,
        "first_discrepancy": first_discrepancy,
    }


def _estimate_matrix(x0: PadicInt) -> Mat2:
    """[[x0, -2], [2, -x0]] over the precision of x0."""
    p, k = x0.prime, x0.precision
    two = PadicInt(p, k, 2)
    return Mat2(x0, -two, two, -x0)


def verify_companion_estimates(x0: PadicInt, sample_us) -> dict:
    """Check the four near-identity congruences for high companion powers.

    For x0 not congruent to +-2 mod p, with N = (p^2-1)/2 and x1 the T_p fixed
    point near x0:
      C(x0+pu)^N     = I + (N/(x0^2-4)) [[x0,-2],[2,-x0]] (x0-x1+pu)   mod p^2
      C(x0+pu)^{pN}  = I + (pN/(x0^2-4)) [[x0,-2],[2,-x0]] (x0-x1+pu)  mod p^3
    For x0 congruent to +-2 mod p:
      C(x0+pu)^{2p}   = I + p   [[2,-x0],[x0,-2]]                      mod p^2
      C(x0+pu)^{2p^2} = I + p^2 [[2,-x0],[x0,-2]]                      mod p^3
    Every sampled u is tested; the report carries per-sample verdicts.
    """
    p, k = x0.prime, x0.precision
    if k < 3:
        raise ValueError("precision >= 3 required")
    n_half = (p * p - 1) // 2
    ident = Mat2.identity(p, k)
    parabolic = x0.residue % p in (2, p - 2)
    samples = []
    if not parabolic:
        x1 = fixed_point_Tp(x0)
        slope = _estimate_matrix(x0).scale((x0 * x0 - 4).invert() * n_half)
        for u in sample_us:
            uu = x0._coerce(u)
            arg = x0 + uu.mul_p_power(1)
            drift = x0 - x1 + uu.mul_p_power(1)
            rhs1 = ident + slope.scale(drift)
            ok1 = companion_power(arg, n_half).congruent_to(rhs1, 2)
            rhs2 = ident + slope.scale(drift * p)
            ok2 = companion_power(arg, p * n_half).congruent_to(rhs2, 3)
            samples.append({"u": uu.residue, "mod_p2": ok1, "mod_p3": ok2})
    else:
        two = PadicInt(p, k, 2)
        base = Mat2(two, -x0, x0, -two)
        for u in sample_us:
            uu = x0._coerce(u)
            arg = x0 + uu.mul_p_power(1)
            rhs1 = ident + base.scale(p)
            ok1 = companion_power(arg, 2 * p).congruent_to(rhs1, 2)
            rhs2 = ident + base.scale(p * p)
            ok2 = companion_power(arg, 2 * p * p).congruent_to(rhs2, 3)
            samples.append({"u": uu.residue, "mod_p2": ok1, "mod_p3": ok2})
    passed = all(s["mod_p2"] and s["mod_p3"] for s in samples)
    return {
        "p": p,
        "x0": x0.residue,
        "class": "parabolic" if parabolic else "generic",
        "samples": samples,
        "passed": passed,
    }
