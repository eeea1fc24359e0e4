"""Exact arithmetic in the ring of Gaussian integers Z[i].

Provides norms, the canonical first-quadrant representative of an ideal,
rounded Euclidean division, GCDs, factorization into Gaussian primes, and
the Moebius function on ideals.  Everything here is a pure function on
immutable values; Python integers keep all intermediates exact at any size.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .errors import DomainError

UNITS: tuple[tuple[int, int], ...] = ((1, 0), (-1, 0), (0, 1), (0, -1))


@dataclass(frozen=True, slots=True)
class GaussianInt:
    """A Gaussian integer re + im*i."""

    re: int
    im: int

    def __add__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __str__(self) -> str:
        return f"{self.re}{self.im:+}i"


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)


@dataclass(frozen=True, slots=True)
class CanonicalIdeal:
    """A nonzero ideal of Z[i], represented by its unique generator with
    re >= 1 and im >= 0."""

    gen: GaussianInt
    norm: int = field(default=-1)

    def __post_init__(self) -> None:
        if self.gen.re < 1 or self.gen.im < 0:
            raise DomainError(f"generator {self.gen} is not canonical")
        n = self.gen.re * self.gen.re + self.gen.im * self.gen.im
        if self.norm == -1:
            object.__setattr__(self, "norm", n)
        elif self.norm != n:
            raise DomainError(f"stated norm {self.norm} != norm({self.gen}) = {n}")

    def __str__(self) -> str:
        return f"({self.gen})"


@dataclass(frozen=True, slots=True)
class GaussianFactorization:
    """unit * product of canonical prime powers, reconstructing the input."""

    unit: GaussianInt
    factors: tuple[tuple[CanonicalIdeal, int], ...]

    def product(self) -> GaussianInt:
        z = self.unit
        for prime, exp in self.factors:
            for _ in range(exp):
                z = z * prime.gen
        return z


def norm(z: GaussianInt) -> int:
    """N(z) = re^2 + im^2."""
    return z.re * z.re + z.im * z.im


def canonical_associate(z: GaussianInt) -> CanonicalIdeal:
    """The unique associate of z with re >= 1, im >= 0.

    Exactly one of z, iz, -z, -iz lands in the chosen half-open quadrant,
    which makes ideal representatives bijective.
    """
    a, b = z.re, z.im
    if a == 0 and b == 0:
        raise DomainError("zero has no canonical associate")
    for _ in range(4):
        if a >= 1 and b >= 0:
            return CanonicalIdeal(GaussianInt(a, b))
        a, b = -b, a  # multiply by i
    raise AssertionError("unreachable: one associate per quadrant")


def _div_rounded(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    """Quotient of (a+bi)/(c+di) with each component rounded to the nearest
    integer, halves rounding up (floor(t + 1/2))."""
    nb = c * c + d * d
    qr_num = a * c + b * d
    qi_num = b * c - a * d
    qr = (2 * qr_num + nb) // (2 * nb)
    qi = (2 * qi_num + nb) // (2 * nb)
    return qr, qi


def div_rem_rounded(a: GaussianInt, b: GaussianInt) -> tuple[GaussianInt, GaussianInt]:
    """Rounded Euclidean division: a = q*b + r with N(r) <= N(b)/2."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero Gaussian integer")
    qr, qi = _div_rounded(a.re, a.im, b.re, b.im)
    q = GaussianInt(qr, qi)
    r = a - q * b
    return q, r


def _gcd_ints(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    """Euclidean GCD of a+bi and c+di on plain integers (hot loop)."""
    while c != 0 or d != 0:
        nb = c * c + d * d
        qr = (2 * (a * c + b * d) + nb) // (2 * nb)
        qi = (2 * (b * c - a * d) + nb) // (2 * nb)
        a, b, c, d = c, d, a - qr * c + qi * d, b - qr * d - qi * c
    return a, b


def euclid_gcd(a: GaussianInt, b: GaussianInt) -> CanonicalIdeal:
    """Canonical generator of the GCD ideal of a and b.

    The remainder bound N(r) <= N(b)/2 makes the loop terminate in
    O(log N(b)) steps.
    """
    if a.is_zero() and b.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    g_re, g_im = _gcd_ints(a.re, a.im, b.re, b.im)
    return canonical_associate(GaussianInt(g_re, g_im))


def divides(d: GaussianInt, z: GaussianInt) -> bool:
    """True when d divides z exactly in Z[i]."""
    if d.is_zero():
        return z.is_zero()
    nd = d.re * d.re + d.im * d.im
    num = z * d.conjugate()
    return num.re % nd == 0 and num.im % nd == 0


# --- rational-prime helpers used by the factorizer -------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)  # deterministic < 3.3e24


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n."""
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def _factor_int(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 over the rational integers."""
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def _sqrt_minus_one_mod(p: int) -> int:
    """A square root of -1 mod p for a prime p = 1 (mod 4).

    Raises pseudo-random residues to the (p-1)/4 power; the seed is fixed by
    p so repeated factorizations are reproducible.
    """
    rng = random.Random(p)
    e = (p - 1) // 4
    while True:
        a = rng.randrange(2, p)
        x = pow(a, e, p)
        if (x * x + 1) % p == 0:
            return x


def _exact_quot(z: GaussianInt, d: GaussianInt) -> GaussianInt | None:
    nd = d.re * d.re + d.im * d.im
    num = z * d.conjugate()
    if num.re % nd or num.im % nd:
        return None
    return GaussianInt(num.re // nd, num.im // nd)


def factor_gaussian(z: GaussianInt) -> GaussianFactorization:
    """Factor z into canonical Gaussian primes.

    Rational primes dividing N(z) classify the prime ideals involved: 2 gives
    the ramified prime (1+i); p = 3 (mod 4) stays inert; p = 1 (mod 4) splits
    into the two conjugate primes found via a square root of -1 mod p and a
    Gaussian GCD.  Factors come back sorted by (norm, re) with the leftover
    unit recorded.
    """
    if z.is_zero():
        raise DomainError("zero has no factorization")
    work = z
    factors: list[tuple[CanonicalIdeal, int]] = []
    for p in sorted(_factor_int(norm(z))):
        if p == 2:
            candidates = [GaussianInt(1, 1)]
        elif p % 4 == 3:
            candidates = [GaussianInt(p, 0)]
        else:
            u = _sqrt_minus_one_mod(p)
            pi = euclid_gcd(GaussianInt(p, 0), GaussianInt(u, 1)).gen
            candidates = [pi, canonical_associate(pi.conjugate()).gen]
        for pi in candidates:
            exp = 0
            while True:
                q = _exact_quot(work, pi)
                if q is None:
                    break
                work = q
                exp += 1
            if exp:
                factors.append((canonical_associate(pi), exp))
    if norm(work) != 1:
        raise AssertionError(f"factorization left non-unit cofactor {work}")
    factors.sort(key=lambda fe: (fe[0].norm, fe[0].gen.re))
    return GaussianFactorization(unit=work, factors=tuple(factors))


def ideal_moebius(k: CanonicalIdeal) -> int:
    """Moebius function on ideals: 1 at (1), (-1)^t on squarefree products of
    t distinct prime ideals, 0 otherwise."""
    if k.norm == 1:
        return 1
    fact = factor_gaussian(k.gen)
    if any(exp > 1 for _, exp in fact.factors):
        return 0
    return -1 if len(fact.factors) % 2 else 1


def ideal_divisors(k: CanonicalIdeal) -> list[CanonicalIdeal]:
    """All ideal divisors of k, enumerated from its prime factorization."""
    fact = factor_gaussian(k.gen)
    divs = [ONE]
    for prime, exp in fact.factors:
        powers = [ONE]
        for _ in range(exp):
            powers.append(powers[-1] * prime.gen)
        divs = [d * pw for d in divs for pw in powers]
    return [canonical_associate(d) for d in divs]


def ideals_up_to(x: int | float) -> list[CanonicalIdeal]:
    """Every nonzero ideal of norm <= x, as canonical representatives sorted
    by (norm, re)."""
    if x < 1:
        return []
    bound = int(x)
    out = []
    for a in range(1, math.isqrt(bound) + 1):
        for b in range(0, math.isqrt(bound - a * a) + 1):
            out.append(CanonicalIdeal(GaussianInt(a, b)))
    out.sort(key=lambda c: (c.norm, c.gen.re))
    return out
