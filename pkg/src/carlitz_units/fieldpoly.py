"""Exact arithmetic over F_q, F_q[T], residue rings, and infinity-adic Laurent series.

The base field F_q (q = p^e) uses integer-coded elements 0..q-1 (base-p
digits of the polynomial representative for e > 1).  Polynomials are
immutable dense coefficient tuples.  Laurent series live in F_q((u)) for a
global uniformizer u with u^(q-1) = -1/T, so ord_infinity(T) = -1 and
fractional valuations at infinity are integers in units of 1/(q-1).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._linalg import snf_with_transform, invert_unimodular


class InsufficientPrecisionError(ArithmeticError):
    """A series result cannot be certified at the requested precision."""


# ---------------------------------------------------------------------------
# Base field F_q


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(math.isqrt(n)) + 1):
        if n % d == 0:
            return False
    return True


class GF:
    """The finite field F_q with integer-coded elements.

    For e > 1 the defining modulus is the lexicographically least monic
    irreducible of degree e over F_p (encoded-integer order), so the tables
    are reproducible across implementations.
    """

    _cache: dict[int, "GF"] = {}

    def __new__(cls, q: int):
        if q in cls._cache:
            return cls._cache[q]
        inst = super().__new__(cls)
        cls._cache[q] = inst
        inst._init(q)
        return inst

    def _init(self, q: int) -> None:
        p, e = _prime_power_split(q)
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            self.modulus = None
        else:
            self.modulus = _least_irreducible_mod_p(p, e)
        self._build_tables()

    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        if e == 1:
            self._mul = None
            return
        # dense q x q multiplication table via polynomial arithmetic mod modulus
        mod = self.modulus

        def digits(n):
            out = []
            for _ in range(e + 1):
                out.append(n % p)
                n //= p
            return out

        def encode(ds):
            n = 0
            for c in reversed(ds):
                n = n * p + c
            return n

        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            da = digits(a)
            for b in range(a, q):
                db = digits(b)
                prod = [0] * (2 * e + 1)
                for i, ca in enumerate(da):
                    if ca:
                        for j, cb in enumerate(db):
                            prod[i + j] = (prod[i + j] + ca * cb) % p
                # reduce mod the defining polynomial
                md = digits(mod)
                for k in range(2 * e, e - 1, -1):
                    c = prod[k]
                    if c:
                        prod[k] = 0
                        for i in range(e):
                            prod[k - e + i] = (prod[k - e + i] - c * md[i]) % p
                v = encode(prod[:e])
                mul[a][b] = v
                mul[b][a] = v
        self._mul = mul
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    self._inv[a] = b
                    break

    # -- field operations (elements are ints in range(q)) --
    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p, out, mult = self.p, 0, 1
        for _ in range(self.e):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        p, out, mult = self.p, 0, 1
        for _ in range(self.e):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv[a]

    def pow(self, a: int, n: int) -> int:
        n %= (self.q - 1) if a != 0 else 1
        out, base = 1, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    @property
    def minus_one(self) -> int:
        return self.neg(1)

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def generator(self) -> int:
        """Least generator of the multiplicative group."""
        n = self.q - 1
        prime_divs = sorted({f for f in _int_factor(n)})
        for g in range(1, self.q):
            if all(self.pow(g, n // r) != 1 for r in prime_divs):
                return g
        raise AssertionError("no generator found")

    def __repr__(self):
        return f"GF({self.q})"

    def __hash__(self):
        return hash(("GF", self.q))

    def __eq__(self, other):
        return isinstance(other, GF) and other.q == self.q


def _prime_power_split(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if _is_prime(p) and q % p == 0:
            e = 0
            n = q
            while n % p == 0:
                n //= p
                e += 1
            if n != 1:
                raise ValueError(f"q = {q} is not a prime power")
            return p, e
    raise ValueError(f"q = {q} is not a prime power")


def _int_factor(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _least_irreducible_mod_p(p: int, e: int) -> int:
    """Integer encoding of the least monic irreducible of degree e over F_p."""
    gf = GF(p)
    for tail in range(p**e):
        coeffs = []
        n = tail
        for _ in range(e):
            coeffs.append(n % p)
            n //= p
        coeffs.append(1)
        f = Poly(gf, tuple(coeffs))
        if f.is_irreducible():
            enc = 0
            for c in reversed(coeffs):
                enc = enc * p + c
            return enc
    raise AssertionError


# ---------------------------------------------------------------------------
# Polynomials over F_q


@dataclass(frozen=True)
class Poly:
    """Immutable dense polynomial over F_q in the variable T."""

    gf: GF
    coeffs: tuple  # (c0, c1, ..., cd), no trailing zeros

    def __post_init__(self):
        c = self.coeffs
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", tuple(c))

    # -- constructors --
    @staticmethod
    def zero(gf: GF) -> "Poly":
        return Poly(gf, ())

    @staticmethod
    def one(gf: GF) -> "Poly":
        return Poly(gf, (1,))

    @staticmethod
    def constant(gf: GF, c: int) -> "Poly":
        return Poly(gf, (c,))

    @staticmethod
    def T(gf: GF) -> "Poly":
        return Poly(gf, (0, 1))

    @staticmethod
    def from_key(gf: GF, key: int) -> "Poly":
        coeffs = []
        while key:
            coeffs.append(key % gf.q)
            key //= gf.q
        return Poly(gf, tuple(coeffs))

    def key(self) -> int:
        """Integer encoding sum c_i q^i; defines the global lexicographic order."""
        n = 0
        for c in reversed(self.coeffs):
            n = n * self.gf.q + c
        return n

    # -- structure --
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("leading coefficient of 0")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        inv = self.gf.inv(self.leading())
        return Poly(self.gf, tuple(self.gf.mul(inv, c) for c in self.coeffs))

    # -- ring operations --
    def __add__(self, other: "Poly") -> "Poly":
        gf = self.gf
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = gf.add(out[i], c)
        return Poly(gf, tuple(out))

    def __neg__(self) -> "Poly":
        gf = self.gf
        return Poly(gf, tuple(gf.neg(c) for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        gf = self.gf
        if self.is_zero() or other.is_zero():
            return Poly.zero(gf)
        if gf.e == 1:
            a = np.asarray(self.coeffs, dtype=np.int64)
            b = np.asarray(other.coeffs, dtype=np.int64)
            return Poly(gf, tuple(int(x) for x in np.convolve(a, b) % gf.p))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ca in enumerate(self.coeffs):
            if ca:
                for j, cb in enumerate(other.coeffs):
                    if cb:
                        out[i + j] = gf.add(out[i + j], gf.mul(ca, cb))
        return Poly(gf, tuple(out))

    def scale(self, c: int) -> "Poly":
        gf = self.gf
        return Poly(gf, tuple(gf.mul(c, x) for x in self.coeffs))

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        gf = self.gf
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by 0")
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = gf.inv(other.leading())
        quot = [0] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = gf.mul(c, lead_inv)
            quot[i - d] = f
            for j, oc in enumerate(other.coeffs):
                rem[i - d + j] = gf.sub(rem[i - d + j], gf.mul(f, oc))
        return Poly(gf, tuple(quot)), Poly(gf, tuple(rem))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "Poly":
        out, base = Poly.one(self.gf), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def pow_mod(self, n: int, modulus: "Poly") -> "Poly":
        out, base = Poly.one(self.gf), self % modulus
        while n:
            if n & 1:
                out = (out * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return out

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def evaluate(self, x: int) -> int:
        gf = self.gf
        out = 0
        for c in reversed(self.coeffs):
            out = gf.add(gf.mul(out, x), c)
        return out

    def derivative(self) -> "Poly":
        gf = self.gf
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(gf.mul(i % gf.p, self.coeffs[i]))
        return Poly(gf, tuple(out))

    # -- irreducibility / factorization --
    def is_irreducible(self) -> bool:
        """Rabin's test: x^(q^n) = x mod f and gcd(x^(q^(n/r)) - x, f) = 1."""
        n = self.degree
        if n <= 0:
            return False
        if n == 1:
            return True
        if self.coeffs[0] == 0:
            return False
        gf = self.gf
        x = Poly.T(gf)
        checkpoints = {n // r for r in set(_int_factor(n))}
        h = x
        for i in range(1, n + 1):
            h = h.pow_mod(gf.q, self)
            if i in checkpoints:
                g = (h - x).gcd(self)
                if g.degree != 0:
                    return False
        return h == x % self

    def factor(self) -> list[tuple["Poly", int]]:
        """Factor into monic irreducibles by deterministic trial division.

        Intended for desk-scale moduli (the prime searches test
        irreducibility directly and never factor large inputs).
        """
        gf = self.gf
        f = self.monic()
        if f.degree <= 0:
            return []
        out = []
        d = 1
        while f.degree >= 2 * d:
            for p in monic_enumerate_all(gf, d):
                if f.degree < 2 * d:
                    break
                if not p.is_irreducible():
                    continue
                e = 0
                while True:
                    q_, r = divmod(f, p)
                    if r.is_zero():
                        f = q_
                        e += 1
                    else:
                        break
                if e:
                    out.append((p, e))
            d += 1
        if f.degree >= 1:
            out.append((f, 1))
        out.sort(key=lambda pe: pe[0].key())
        return out

    def is_squarefree(self) -> bool:
        der = self.derivative()
        if der.is_zero():
            return self.degree == 0
        return self.gcd(der).degree == 0

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(f"{c}")
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}T" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly(q={self.gf.q}, {self})"


def poly_from_coeff_string(gf: GF, s: str) -> Poly:
    """Parse the CLI's little-endian coefficient string, e.g. "1,1,1" = 1+T+T^2."""
    coeffs = tuple(int(x.strip()) % gf.p for x in s.split(","))
    if gf.e > 1:
        raise ValueError("coefficient strings are over the prime field only")
    return Poly(gf, coeffs)


def monic_enumerate_all(gf: GF, d: int):
    """All monic polynomials of degree exactly d, lexicographic order."""
    for tail in range(gf.q**d):
        coeffs = []
        n = tail
        for _ in range(d):
            coeffs.append(n % gf.q)
            n //= gf.q
        coeffs.append(1)
        yield Poly(gf, tuple(coeffs))


def monic_enumerate(gf: GF, d: int, m: Poly) -> list[Poly]:
    """All monic polynomials of degree exactly d coprime to m, lex order."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    out = []
    for f in monic_enumerate_all(gf, d):
        if m.degree <= 0 or f.gcd(m).degree == 0:
            out.append(f)
    return out


def monic_irreducibles(gf: GF, d: int):
    """Monic irreducibles of degree d in lexicographic order."""
    for f in monic_enumerate_all(gf, d):
        if f.is_irreducible():
            yield f


# ---------------------------------------------------------------------------
# Laurent series in u, with u^(q-1) = -1/T


@dataclass(frozen=True)
class LaurentSeries:
    """Truncated Laurent series over F_q in the uniformizer u.

    `val` is the u-adic valuation (ord_infinity = val/(q-1)); coefficients
    cover exponents val..val+len(coeffs)-1.  `prec` (absolute exponent
    bound, or None for exact finite series) marks where knowledge stops:
    coefficients at exponents >= prec are not certified.  Coefficients
    inside the window but beyond the stored tuple are certified zero.
    """

    gf: GF
    val: int
    coeffs: tuple
    prec: int | None  # None = exact

    def __post_init__(self):
        c = list(self.coeffs)
        v = self.val
        if self.prec is not None:
            c = c[: max(self.prec - v, 0)]
        while c and c[0] == 0:
            c.pop(0)
            v += 1
        while c and c[-1] == 0:
            c.pop()
        if not c:
            v = self.prec if self.prec is not None else 0
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "val", v)

    # -- constructors --
    @staticmethod
    def zero(gf: GF) -> "LaurentSeries":
        return LaurentSeries(gf, 0, (), None)

    @staticmethod
    def one(gf: GF) -> "LaurentSeries":
        return LaurentSeries(gf, 0, (1,), None)

    @staticmethod
    def u_power(gf: GF, k: int, c: int = 1) -> "LaurentSeries":
        return LaurentSeries(gf, k, (c,), None)

    @staticmethod
    def unknown(gf: GF, prec: int) -> "LaurentSeries":
        """The series O(u^prec)."""
        return LaurentSeries(gf, prec, (), prec)

    def is_certified_zero(self) -> bool:
        return not self.coeffs and self.prec is None

    def is_unknown(self) -> bool:
        return not self.coeffs and self.prec is not None

    def known_upto(self) -> int | None:
        return self.prec

    # -- valuation --
    def u_valuation(self) -> int:
        if self.coeffs:
            return self.val
        if self.prec is None:
            raise ValueError("valuation of the zero series")
        raise InsufficientPrecisionError(
            f"series is O(u^{self.prec}); leading term not certified"
        )

    def ord_infinity(self) -> Fraction:
        """Exact ord_infinity = u_valuation / (q-1)."""
        return Fraction(self.u_valuation(), self.gf.q - 1)

    # -- arithmetic --
    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        gf = self.gf
        precs = [p for p in (self.prec, other.prec) if p is not None]
        prec = min(precs) if precs else None
        if not self.coeffs:
            return LaurentSeries(gf, other.val, other.coeffs, prec)
        if not other.coeffs:
            return LaurentSeries(gf, self.val, self.coeffs, prec)
        v = min(self.val, other.val)
        end = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        out = [0] * (end - v)
        for i, c in enumerate(self.coeffs):
            out[self.val - v + i] = c
        for i, c in enumerate(other.coeffs):
            j = other.val - v + i
            out[j] = gf.add(out[j], c)
        return LaurentSeries(gf, v, tuple(out), prec)

    def __neg__(self) -> "LaurentSeries":
        gf = self.gf
        return LaurentSeries(gf, self.val, tuple(gf.neg(c) for c in self.coeffs), self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        gf = self.gf
        if self.is_certified_zero() or other.is_certified_zero():
            return LaurentSeries.zero(gf)
        prec = None
        if self.prec is not None:
            prec = self.prec + other.val
        if other.prec is not None:
            p2 = other.prec + self.val
            prec = p2 if prec is None else min(prec, p2)
        if not self.coeffs or not other.coeffs:
            if prec is None:
                return LaurentSeries.zero(gf)
            return LaurentSeries.unknown(gf, prec)
        v = self.val + other.val
        if gf.e == 1:
            a = np.asarray(self.coeffs, dtype=np.int64)
            b = np.asarray(other.coeffs, dtype=np.int64)
            conv = np.convolve(a, b) % gf.p
            return LaurentSeries(gf, v, tuple(int(x) for x in conv), prec)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ca in enumerate(self.coeffs):
            if ca:
                for j, cb in enumerate(other.coeffs):
                    if cb:
                        out[i + j] = gf.add(out[i + j], gf.mul(ca, cb))
        return LaurentSeries(gf, v, tuple(out), prec)

    def inverse(self, prec: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse certified up to exponent `prec`.

        For an exact operand `prec` must be supplied (the inverse of a
        polynomial is an infinite series).
        """
        gf = self.gf
        if not self.coeffs:
            if self.prec is None:
                raise ZeroDivisionError("inverse of the zero series")
            raise InsufficientPrecisionError(
                f"inverse of O(u^{self.prec}): leading term unknown"
            )
        v = self.val
        # output certified window: [-v, out_prec)
        limit = None if self.prec is None else self.prec - 2 * v
        if prec is None:
            if limit is None:
                raise ValueError("inverse of an exact series needs a target precision")
            out_prec = limit
        else:
            out_prec = prec if limit is None else min(prec, limit)
        n = out_prec + v  # number of coefficients of (1 + t)^(-1) to produce
        if n <= 0:
            return LaurentSeries.unknown(gf, out_prec)
        c0_inv = gf.inv(self.coeffs[0])
        a = [gf.mul(c0_inv, c) for c in self.coeffs[:n]]  # normalized: a[0] = 1
        inv = [0] * n
        inv[0] = 1
        for k in range(1, n):
            s = 0
            for j in range(1, min(k, len(a) - 1) + 1):
                if a[j] and inv[k - j]:
                    s = gf.add(s, gf.mul(a[j], inv[k - j]))
            inv[k] = gf.neg(s)
        inv = [gf.mul(c0_inv, c) for c in inv]
        return LaurentSeries(gf, -v, tuple(inv), out_prec)

    def __pow__(self, n: int) -> "LaurentSeries":
        if n < 0:
            base = self.inverse(prec=None if self.prec is None else self.prec - 2 * self.val)
            return base ** (-n)
        out = LaurentSeries.one(self.gf)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def truncate(self, prec: int) -> "LaurentSeries":
        if self.prec is not None and self.prec <= prec:
            return self
        return LaurentSeries(self.gf, self.val, self.coeffs, prec)

    def coefficient(self, exponent: int) -> int:
        """Certified coefficient at u^exponent (raises beyond precision)."""
        if self.prec is not None and exponent >= self.prec:
            raise InsufficientPrecisionError(f"coefficient at u^{exponent} unknown")
        i = exponent - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def agreement(self, other: "LaurentSeries") -> tuple[bool, int]:
        """(equal-on-common-window, number-of-jointly-certified coefficients).

        The comparison window starts at the smaller valuation, so a
        valuation mismatch counts as disagreement.
        """
        precs = [p for p in (self.prec, other.prec) if p is not None]
        prec = min(precs) if precs else None
        lo = min(
            self.val if self.coeffs else (prec if prec is not None else 0),
            other.val if other.coeffs else (prec if prec is not None else 0),
        )
        if prec is None:
            return (
                self.val == other.val and self.coeffs == other.coeffs,
                max(
                    len(self.coeffs) + (self.val - lo),
                    len(other.coeffs) + (other.val - lo),
                ),
            )
        n = prec - lo
        if n <= 0:
            return True, 0
        for k in range(lo, prec):
            if self.coefficient(k) != other.coefficient(k):
                return False, n
        return True, n

    def __str__(self):
        if not self.coeffs:
            return "0" if self.prec is None else f"O(u^{self.prec})"
        parts = []
        for i, c in enumerate(self.coeffs[:8]):
            if c:
                parts.append(f"{c}*u^{self.val + i}")
        s = " + ".join(parts)
        if len(self.coeffs) > 8:
            s += " + ..."
        if self.prec is not None:
            s += f" + O(u^{self.prec})"
        return s


def embed_poly(f: Poly) -> LaurentSeries:
    """Exact image of f(T) in F_q((u)) under T = -u^(-(q-1))."""
    gf = f.gf
    if f.is_zero():
        return LaurentSeries.zero(gf)
    w = gf.q - 1
    d = f.degree
    out = [0] * (d * w + 1)  # exponents -d*w .. 0
    for i, c in enumerate(f.coeffs):
        if c:
            sign = gf.pow(gf.minus_one, i)
            out[d * w - i * w] = gf.add(out[d * w - i * w], gf.mul(sign, c))
    return LaurentSeries(gf, -d * w, tuple(out), None)


def embed_ratio(num: Poly, den: Poly, prec: int) -> LaurentSeries:
    """num/den in F_q((u)), certified below exponent `prec`."""
    return embed_poly(num) * embed_poly(den).inverse(prec=prec + (num.degree + 1) * (num.gf.q - 1))


# ---------------------------------------------------------------------------
# Unit groups of residue rings


@dataclass
class UnitGroupData:
    """(O_K/m)^x as an explicit finite abelian group.

    `gens`/`orders` are in elementary-divisor form (d_1 | d_2 | ...);
    `dlog` maps a residue coprime to m to its exponent vector.
    """

    modulus: Poly
    gens: list[Poly]
    orders: list[int]
    _dlog_table: dict

    @property
    def order(self) -> int:
        n = 1
        for d in self.orders:
            n *= d
        return n

    def dlog(self, x: Poly) -> tuple:
        x = x % self.modulus
        key = x.key()
        if key not in self._dlog_table:
            raise ValueError(f"{x!r} is not a unit modulo {self.modulus!r}")
        return self._dlog_table[key]

    def is_unit(self, x: Poly) -> bool:
        return (x % self.modulus).key() in self._dlog_table

    def residues(self) -> list[Poly]:
        gf = self.modulus.gf
        return [Poly.from_key(gf, k) for k in sorted(self._dlog_table)]


def _unit_group_prime_power(P: Poly, k: int) -> tuple[list[Poly], list[int]]:
    """Generators and orders of (O_K/P^k)^x (direct-product form)."""
    gf = P.gf
    q, p, d = gf.q, gf.p, P.degree
    Pk = P**k
    gens: list[Poly] = []
    orders: list[int] = []
    # Teichmueller part: generator of the residue field, lifted and projected
    n0 = q**d - 1
    prime_divs = sorted(set(_int_factor(n0))) if n0 > 1 else []
    g0 = None
    for f in _residue_candidates(gf, d):
        if (f % P).is_zero():
            continue
        if all(f.pow_mod(n0 // r, P) != Poly.one(gf) for r in prime_divs):
            g0 = f
            break
    assert g0 is not None
    if n0 > 1:
        t = g0.pow_mod(q ** (d * k), Pk) if k > 1 else g0 % P
        gens.append(t)
        orders.append(n0)
    # 1-units: 1 + c*P^i for p not dividing i, c over F_p-basis lifts of O/P
    if k > 1:
        lifts = []
        for j in range(d):
            for s in range(gf.e):
                lifts.append(Poly(gf, (0,) * j + (gf.p**s,)))
        for i in range(1, k):
            if i % p == 0:
                continue
            e = 0  # order = p^ceil(log_p(k/i))
            while i * p**e < k:
                e += 1
            Pi = P**i
            for c in lifts:
                gens.append((Poly.one(gf) + c * Pi) % Pk)
                orders.append(p**e)
    return gens, orders


def _residue_candidates(gf: GF, d: int):
    """Nonzero residues mod a degree-d prime, in lexicographic order."""
    for key in range(1, gf.q**d):
        yield Poly.from_key(gf, key)


@functools.lru_cache(maxsize=None)
def unit_group(m: Poly) -> UnitGroupData:
    """Structure of (O_K/m)^x with a total discrete log on units.

    Elementary-divisor form is produced from the CRT prime-power
    decomposition by an SNF change of generators.
    """
    gf = m.gf
    if m.is_zero():
        raise ValueError("modulus must be nonzero")
    m = m.monic()
    if m.degree == 0:
        return UnitGroupData(m, [], [], {Poly.zero(gf).key(): ()})
    fact = m.factor()
    raw_gens: list[Poly] = []
    raw_orders: list[int] = []
    for P, k in fact:
        Pk = P**k
        cofactor = m // Pk
        comp_gens, comp_orders = _unit_group_prime_power(P, k)
        for g in comp_gens:
            raw_gens.append(_crt_pair(g, Pk, Poly.one(gf), cofactor))
        raw_orders.extend(comp_orders)
    # canonicalize to elementary divisors via SNF of diag(raw_orders)
    n = len(raw_orders)
    if n == 0:
        gens, orders = [], []
    else:
        diag, U, _ = snf_with_transform([[raw_orders[i] if i == j else 0 for j in range(n)] for i in range(n)])
        Uinv = invert_unimodular(U)
        gens = []
        orders = []
        for i in range(n):
            if diag[i] == 1:
                continue
            g = Poly.one(gf)
            for j in range(n):
                e = Uinv[j][i] % raw_orders[j]
                if e:
                    g = (g * raw_gens[j].pow_mod(e, m)) % m
            gens.append(g)
            orders.append(diag[i])
    # dlog by table: enumerate all products (desk scale)
    table: dict[int, tuple] = {}
    def rec(i: int, acc: Poly, vec: tuple):
        if i == len(gens):
            table[acc.key()] = vec
            return
        g, d = gens[i], orders[i]
        cur = acc
        for e in range(d):
            rec(i + 1, cur, vec + (e,))
            cur = (cur * g) % m
    rec(0, Poly.one(gf), ())
    data = UnitGroupData(m, gens, orders, table)
    expected = 1
    for P, k in fact:
        expected *= (gf.q ** P.degree - 1) * gf.q ** ((k - 1) * P.degree)
    assert data.order == expected == len(table), "unit group order mismatch"
    return data


def _crt_pair(a: Poly, m1: Poly, b: Poly, m2: Poly) -> Poly:
    """x with x = a mod m1, x = b mod m2 (m1, m2 coprime)."""
    if m2.degree <= 0:
        return a % m1
    g, s, t = _poly_xgcd(m1, m2)
    assert g.degree == 0
    ginv = g.gf.inv(g.coeffs[0])
    # x = a + m1 * s * (b - a) / g
    diff = (b - a) % (m1 * m2)
    x = (a + m1 * s.scale(ginv) * diff) % (m1 * m2)
    assert (x - a) % m1 == Poly.zero(a.gf) and (x - b) % m2 == Poly.zero(a.gf)
    return x


def _poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    gf = a.gf
    old_r, r = a, b
    old_s, s = Poly.one(gf), Poly.zero(gf)
    old_t, t = Poly.zero(gf), Poly.one(gf)
    while not r.is_zero():
        q, rem = divmod(old_r, r)
        old_r, r = r, rem
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def crt(residues: list[Poly], moduli: list[Poly]) -> Poly:
    """Simultaneous residue for pairwise-coprime moduli."""
    x, m = residues[0], moduli[0]
    for r, n in zip(residues[1:], moduli[1:]):
        x = _crt_pair(x, m, r, n)
        m = m * n
    return x % m


def multiplicative_order(x: Poly, m: Poly) -> int:
    """Order of x in (O_K/m)^x."""
    ug = unit_group(m)
    vec = ug.dlog(x)
    n = 1
    for e, d in zip(vec, ug.orders):
        g = math.gcd(e, d)
        n = n * (d // g) // math.gcd(n, d // g)
    return n
