"""Dense univariate polynomial arithmetic over a prime field.

A polynomial is a list of int coefficients in ascending degree with no
trailing zeros; the zero polynomial is the empty list.  Functions take the
prime modulus ``p`` explicitly so hot loops stay free of wrapper objects.

:class:`PointSystem` bundles the evaluation data used throughout: distinct
points ``alpha_j`` with multiplicities ``lambda_j``, the local moduli
``m_j = (x - alpha_j)**lambda_j``, their product ``M``, and the CRT machinery
for interpolating residues back to a polynomial of degree < L = deg(M).
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, Sequence

Poly = list  # list[int], ascending coefficients, no trailing zeros


def normalize(f: Sequence[int]) -> Poly:
    """Strip trailing zeros (the zero polynomial is [])."""
    n = len(f)
    while n and f[n - 1] == 0:
        n -= 1
    return list(f[:n])


def degree(f: Poly) -> int:
    """Degree of f; -1 encodes the degree of the zero polynomial."""
    return len(f) - 1


def padd(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return normalize(out)


def psub(a: Poly, b: Poly, p: int) -> Poly:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return normalize(out)


def pneg(a: Poly, p: int) -> Poly:
    return [-c % p for c in a]


def pscale(a: Poly, s: int, p: int) -> Poly:
    s %= p
    if s == 0:
        return []
    return [c * s % p for c in a]


def pmul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return normalize([c % p for c in out])


def pdivmod(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    """Quotient and remainder of a by b (b nonzero)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    r = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    q = [0] * (len(a) - db)
    for i in range(len(a) - db - 1, -1, -1):
        c = r[i + db] % p
        if c:
            c = c * inv_lead % p
            q[i] = c
            for k in range(db + 1):
                r[i + k] = (r[i + k] - c * b[k]) % p
    return normalize(q), normalize(r[:db])


def pmod(a: Poly, b: Poly, p: int) -> Poly:
    return pdivmod(a, b, p)[1]


def pdiv_exact(a: Poly, b: Poly, p: int) -> Poly:
    q, r = pdivmod(a, b, p)
    if r:
        raise ValueError("division is not exact")
    return q


def monic(f: Poly, p: int) -> Poly:
    if not f:
        return []
    if f[-1] == 1:
        return list(f)
    return pscale(f, pow(f[-1], -1, p), p)


def pgcd(a: Poly, b: Poly, p: int) -> Poly:
    """Monic greatest common divisor."""
    while b:
        a, b = b, pmod(a, b, p)
    return monic(a, p)


def pxgcd(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
        t0, t1 = t1, psub(t0, pmul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    lead_inv = pow(r0[-1], -1, p)
    return (pscale(r0, lead_inv, p), pscale(s0, lead_inv, p),
            pscale(t0, lead_inv, p))


def pinv_mod(a: Poly, m: Poly, p: int) -> Poly:
    """Inverse of a modulo m; raises if gcd(a, m) != 1."""
    g, s, _ = pxgcd(a, m, p)
    if g != [1]:
        raise ValueError("polynomial is not invertible modulo m")
    return pmod(s, m, p)


def peval(f: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def linear_power(alpha: int, k: int, p: int) -> Poly:
    """Coefficients of (x - alpha)**k."""
    out = [1]
    base = [-alpha % p, 1]
    for _ in range(k):
        out = pmul(out, base, p)
    return out


def synth_div(f: Poly, alpha: int, p: int) -> tuple[Poly, int]:
    """Divide f by (x - alpha): returns (quotient, f(alpha))."""
    acc = 0
    q = [0] * max(len(f) - 1, 0)
    for i in range(len(f) - 1, 0, -1):
        acc = (acc * alpha + f[i]) % p
        q[i - 1] = acc
    rem = (acc * alpha + f[0]) % p if f else 0
    return normalize(q), rem


def valuation(f: Poly, alpha: int, p: int):
    """Multiplicity of alpha as a root of f; math.inf for f = 0."""
    if not f:
        return math.inf
    v = 0
    while True:
        q, rem = synth_div(f, alpha, p)
        if rem != 0:
            return v
        v += 1
        f = q
        if not f:
            # exhausted all factors; cannot happen for nonzero input
            return v


def adic_coeffs(f: Poly, alpha: int, k: int, p: int) -> list[int]:
    """First k coefficients of f in powers of (x - alpha)."""
    out = []
    cur = list(f)
    for _ in range(k):
        cur, rem = synth_div(cur, alpha, p)
        out.append(rem)
    return out


def from_adic(alpha: int, coeffs: Sequence[int], p: int) -> Poly:
    """Polynomial sum of coeffs[i] * (x - alpha)**i."""
    out: Poly = []
    base = [-alpha % p, 1]
    for c in reversed(coeffs):
        out = padd(pmul(out, base, p), [c % p] if c % p else [], p)
    return out


def poly_to_text(f: Poly) -> str:
    """Space-separated decimal coefficients, ascending degree; "0" if zero."""
    if not f:
        return "0"
    return " ".join(str(c) for c in f)


def poly_from_text(text: str, p: int) -> Poly:
    parts = text.split()
    if not parts:
        raise ValueError("empty polynomial text")
    try:
        coeffs = [int(tok) % p for tok in parts]
    except ValueError as exc:
        raise ValueError(f"bad polynomial text {text!r}") from exc
    return normalize(coeffs)


class PointSystem:
    """Distinct evaluation points with multiplicities over F_p."""

    def __init__(self, field, alphas: Sequence[int], lams: Sequence[int]):
        p = field.p
        alphas = [a % p for a in alphas]
        if len(alphas) == 0:
            raise ValueError("need at least one evaluation point")
        if len(set(alphas)) != len(alphas):
            raise ValueError("evaluation points must be distinct")
        if len(lams) != len(alphas):
            raise ValueError("multiplicity count must match point count")
        if any(l < 1 for l in lams):
            raise ValueError("multiplicities must be >= 1")
        self.field = field
        self.p = p
        self.alphas = list(alphas)
        self.lams = list(lams)
        self.n = len(alphas)
        self.L = sum(lams)
        self.moduli = [linear_power(a, l, p) for a, l in zip(alphas, lams)]
        big = [1]
        for m in self.moduli:
            big = pmul(big, m, p)
        self.M = big
        # CRT data: M_j = M / m_j and u_j = M_j^{-1} mod m_j
        self.cofactors = [pdiv_exact(big, m, p) for m in self.moduli]
        self.crt_units = [pinv_mod(c, m, p)
                          for c, m in zip(self.cofactors, self.moduli)]

    def residue(self, f: Poly, j: int) -> Poly:
        return pmod(f, self.moduli[j], self.p)

    def residues(self, f: Poly) -> list[Poly]:
        return [pmod(f, m, self.p) for m in self.moduli]

    def crt(self, residues: Sequence[Poly]) -> Poly:
        """The unique polynomial of degree < L with the given residues."""
        if len(residues) != self.n:
            raise ValueError("one residue per point required")
        p = self.p
        out: Poly = []
        for res, unit, mod, cof in zip(residues, self.crt_units,
                                       self.moduli, self.cofactors):
            if not res:
                continue
            t = pmod(pmul(res, unit, p), mod, p)
            out = padd(out, pmul(t, cof, p), p)
        return out

    def lift(self, j: int, res: Poly) -> Poly:
        """Polynomial of degree < L that is res mod m_j and 0 elsewhere."""
        p = self.p
        if not res:
            return []
        t = pmod(pmul(res, self.crt_units[j], p), self.moduli[j], p)
        return pmul(t, self.cofactors[j], p)

    def trunc_val(self, f: Poly, j: int) -> int:
        """Valuation of f at alpha_j, truncated at lambda_j."""
        lam = self.lams[j]
        res = pmod(f, self.moduli[j], self.p)
        if not res:
            return lam
        v = valuation(res, self.alphas[j], self.p)
        return lam if v > lam else v

    def locator_poly(self, exps: Sequence[int]) -> Poly:
        """prod_j (x - alpha_j)**exps[j]."""
        self.check_exponents(exps)
        out = [1]
        for a, e in zip(self.alphas, exps):
            if e:
                out = pmul(out, linear_power(a, e, self.p), self.p)
        return out

    def check_exponents(self, exps: Sequence[int]) -> None:
        if len(exps) != self.n:
            raise ValueError("exponent vector length must equal point count")
        for e, lam in zip(exps, self.lams):
            if not 0 <= e <= lam:
                raise ValueError(
                    f"exponent {e} outside [0, {lam}] for its point")


def divisor_exponents(bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All exponent vectors 0 <= e_j <= bounds[j], lexicographic order."""
    return itertools.product(*(range(b + 1) for b in bounds))


def exps_degree(exps: Iterable[int]) -> int:
    return sum(exps)
