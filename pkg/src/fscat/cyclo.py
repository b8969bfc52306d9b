"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored as coordinate vectors in the power basis
``1, z, ..., z^(phi(N)-1)`` of Q(zeta_N), reduced modulo the N-th
cyclotomic polynomial, with rational coordinates.  The complex embedding
used throughout is ``zeta_N = exp(2*pi*i/N)``.

Two equal elements at the same conductor always have identical coordinate
vectors; operands at different conductors are coerced to the lcm conductor
first.  Division goes through the extended gcd of polynomials over Q, so
no numeric inversion is ever involved.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath

Rational = Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending degree, monic."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _exact_polydiv(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _exact_polydiv(num, den):
    # den is monic; the remainder must vanish.
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        out[k] = c
        if c:
            for i in range(dd + 1):
                num[k + i] -= c * den[i]
    assert not any(num), "cyclotomic polynomial division left a remainder"
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_reduction(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Rows k = 0..2*phi-2 giving z^k on the power basis mod Phi_n."""
    phi = euler_phi(n)
    rows = []
    for k in range(phi):
        row = [_F0] * phi
        row[k] = _F1
        rows.append(row)
    mod = cyclotomic_polynomial(n)
    for k in range(phi, 2 * phi - 1):
        # z^k = z * z^(k-1), then fold the overflow back with Phi_n
        prev = rows[k - 1]
        row = [_F0] + list(prev[: phi - 1])
        top = prev[phi - 1]
        if top:
            for i in range(phi):
                row[i] -= top * mod[i]
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def _reduce_power(n: int, k: int) -> tuple[Fraction, ...]:
    """Coordinates of z^k (k >= 0, arbitrary) at conductor n."""
    k %= n
    phi = euler_phi(n)
    if k < 2 * phi - 1:
        return _power_reduction(n)[k]
    # fall back to repeated folding for the rare large-k case
    coeffs = [_F0] * (k + 1)
    coeffs[k] = _F1
    mod = cyclotomic_polynomial(n)
    for j in range(k, phi - 1, -1):
        c = coeffs[j]
        if c:
            coeffs[j] = _F0
            for i in range(phi):
                coeffs[j - phi + i] -= c * mod[i]
    return tuple(coeffs[:phi])


def _solve_rational(columns, target):
    """Solve sum_j x_j * columns[j] = target over Q; None if inconsistent."""
    rows = len(target)
    ncols = len(columns)
    aug = [[columns[j][i] for j in range(ncols)] + [target[i]] for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][ncols]:
            return None
    x = [_F0] * ncols
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][ncols]
    # re-check (guards against free columns silently set to zero)
    for i in range(rows):
        if sum(columns[j][i] * x[j] for j in range(ncols)) != target[i]:
            return None
    return x


class Cyc:
    """An exact element of Q(zeta_N)."""

    __slots__ = ("conductor", "coeffs", "_reduced")

    def __init__(self, conductor: int, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != euler_phi(conductor):
            raise ValueError("coefficient vector has wrong length for conductor")
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_reduced", None)

    def __setattr__(self, name, value):
        raise AttributeError("Cyc values are immutable")

    # -- constructors ------------------------------------------------

    @staticmethod
    def rational(q) -> "Cyc":
        return Cyc(1, (Fraction(q),))

    @staticmethod
    def zero() -> "Cyc":
        return _ZERO

    @staticmethod
    def one() -> "Cyc":
        return _ONE

    # -- conductor handling -------------------------------------------

    def at_conductor(self, m: int) -> "Cyc":
        """Rewrite at conductor m (m must be a multiple of the current one)."""
        n = self.conductor
        if m == n:
            return self
        if m % n:
            raise ValueError("can only coerce to a multiple of the conductor")
        phi_m = euler_phi(m)
        step = m // n
        out = [_F0] * phi_m
        for j, c in enumerate(self.coeffs):
            if c:
                row = _reduce_power(m, j * step)
                for i in range(phi_m):
                    out[i] += c * row[i]
        return Cyc(m, out)

    @staticmethod
    def _common(a: "Cyc", b: "Cyc"):
        if a.conductor == b.conductor:
            return a, b
        m = math.lcm(a.conductor, b.conductor)
        return a.at_conductor(m), b.at_conductor(m)

    @staticmethod
    def _promote(x) -> "Cyc":
        if isinstance(x, Cyc):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyc.rational(x)
        raise TypeError(f"cannot interpret {x!r} as a cyclotomic number")

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = Cyc._promote(other)
        if other.conductor == 1:
            c = other.coeffs[0]
            if not c:
                return self
            out = list(self.coeffs)
            out[0] += c
            return Cyc(self.conductor, out)
        if self.conductor == 1:
            return other + self
        a, b = Cyc._common(self, other)
        return Cyc(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.conductor, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-Cyc._promote(other))

    def __rsub__(self, other):
        return Cyc._promote(other) - self

    def __mul__(self, other):
        other = Cyc._promote(other)
        if other.conductor == 1:
            c = other.coeffs[0]
            if c == 1:
                return self
            return Cyc(self.conductor, [x * c for x in self.coeffs])
        if self.conductor == 1:
            return other * self
        a, b = Cyc._common(self, other)
        n = a.conductor
        phi = euler_phi(n)
        conv = [_F0] * (2 * phi - 1)
        ac, bc = a.coeffs, b.coeffs
        for i, x in enumerate(ac):
            if x:
                for j, y in enumerate(bc):
                    if y:
                        conv[i + j] += x * y
        red = _power_reduction(n)
        out = list(conv[:phi])
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                row = red[k]
                for i in range(phi):
                    out[i] += c * row[i]
        return Cyc(n, out)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        n = self.conductor
        if n == 1:
            return Cyc(1, (1 / self.coeffs[0],))
        mod = [Fraction(c) for c in cyclotomic_polynomial(n)]
        # extended gcd of selfs polynomial with Phi_n; Phi_n irreducible over Q
        r0, r1 = mod, _trim(list(self.coeffs))
        s0, s1 = [], [_F1]
        while True:
            q, r = _polydivmod(r0, r1)
            if not r:
                break
            s = _polysub(s0, _polymul(q, s1))
            r0, s0, r1, s1 = r1, s1, r, s
        lead = r1[-1]
        inv_coeffs = [c / lead for c in s1]
        inv_coeffs += [_F0] * (euler_phi(n) - len(inv_coeffs))
        out = Cyc(n, inv_coeffs[: euler_phi(n)])
        assert (out * self) == 1, "polynomial xgcd produced a wrong inverse"
        return out

    def __truediv__(self, other):
        other = Cyc._promote(other)
        if not other:
            raise ZeroDivisionError("division by zero in a cyclotomic field")
        if other.conductor == 1:
            return self * Cyc(1, (1 / other.coeffs[0],))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyc._promote(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- comparisons / hashing ----------------------------------------

    def __eq__(self, other):
        try:
            other = Cyc._promote(other)
        except TypeError:
            return NotImplemented
        a, b = Cyc._common(self, other)
        return a.coeffs == b.coeffs

    def __bool__(self):
        return any(self.coeffs)

    def __hash__(self):
        return hash(("Cyc",) + self.reduced_key())

    def reduced_key(self):
        """(minimal conductor, coordinates) -- equal elements share this key."""
        cached = object.__getattribute__(self, "_reduced")
        if cached is not None:
            return cached
        n, coeffs = self.conductor, self.coeffs
        for d in sorted(d for d in range(1, n) if n % d == 0):
            cols = [_reduce_power(n, j * (n // d)) for j in range(euler_phi(d))]
            x = _solve_rational(cols, coeffs)
            if x is not None:
                n, coeffs = d, tuple(x)
                break
        else:
            key = (n, coeffs)
            object.__setattr__(self, "_reduced", key)
            return key
        key = Cyc(n, coeffs).reduced_key()
        object.__setattr__(self, "_reduced", key)
        return key

    def reduced(self) -> "Cyc":
        """Equal element at its minimal conductor dividing the current one."""
        n, coeffs = self.reduced_key()
        return Cyc(n, coeffs)

    # -- Galois action -------------------------------------------------

    def galois(self, k: int) -> "Cyc":
        """Image under zeta_N -> zeta_N^k (requires gcd(k, N) = 1)."""
        n = self.conductor
        if math.gcd(k, n) != 1:
            raise ValueError("Galois maps need gcd(k, conductor) = 1")
        phi = euler_phi(n)
        out = [_F0] * phi
        for j, c in enumerate(self.coeffs):
            if c:
                row = _reduce_power(n, j * k)
                for i in range(phi):
                    out[i] += c * row[i]
        return Cyc(n, out)

    def conjugate(self) -> "Cyc":
        """Complex conjugation, realized as zeta_N -> zeta_N^(N-1)."""
        if self.conductor == 1:
            return self
        return self.galois(self.conductor - 1)

    # -- numeric embedding ----------------------------------------------

    def embed(self) -> complex:
        """Evaluate at zeta_N = exp(2*pi*i/N) as a complex double."""
        height = 1
        for c in self.coeffs:
            height = max(height, abs(c.numerator), c.denominator)
        dps = 25 + len(str(height))
        with mpmath.workdps(dps):
            z = mpmath.e ** (2j * mpmath.pi / self.conductor)
            acc = mpmath.mpc(0)
            for c in reversed(self.coeffs):
                acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
        return complex(float(acc.real), float(acc.imag))

    # -- misc -----------------------------------------------------------

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.coeffs[0]

    def encode(self) -> dict:
        """Spec-file encoding {"N": conductor, "c": rational strings}."""
        n, coeffs = self.reduced_key()
        return {"N": n, "c": [_fraction_str(c) for c in coeffs]}

    @staticmethod
    def decode(data) -> "Cyc":
        if not isinstance(data, dict) or set(data) != {"N", "c"}:
            raise ValueError(f"bad cyclotomic encoding: {data!r}")
        n = data["N"]
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"bad conductor in encoding: {n!r}")
        coeffs = [_parse_fraction(s) for s in data["c"]]
        return Cyc(n, coeffs)

    def __repr__(self):
        n, coeffs = self.conductor, self.coeffs
        if not any(coeffs):
            return "Cyc(0)"
        terms = []
        for j, c in enumerate(coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                z = f"z{n}" if j == 1 else f"z{n}^{j}"
                terms.append(z if c == 1 else f"{c}*{z}")
        return "Cyc(" + " + ".join(terms) + ")"


_ZERO = Cyc(1, (_F0,))
_ONE = Cyc(1, (_F1,))


def _trim(poly):
    while poly and not poly[-1]:
        poly.pop()
    return poly


def _polydivmod(num, den):
    num = list(num)
    dd = len(den) - 1
    if len(num) <= dd:
        return [], _trim(num)
    q = [_F0] * (len(num) - dd)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + dd] / den[dd]
        q[k] = c
        if c:
            for i in range(dd + 1):
                num[k + i] -= c * den[i]
    return q, _trim(num)


def _polymul(a, b):
    if not a or not b:
        return []
    out = [_F0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _polysub(a, b):
    out = [_F0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


def _fraction_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _parse_fraction(s) -> Fraction:
    if not isinstance(s, str):
        raise ValueError(f"rational entries must be strings, got {s!r}")
    try:
        q = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational string {s!r}") from exc
    return q


# -- module-level operation surface ------------------------------------


def root_of_unity(n: int, k: int) -> Cyc:
    """zeta_n^k in canonical form at conductor n."""
    if n < 1:
        raise ValueError("conductor must be positive")
    return Cyc(n, _reduce_power(n, k % n))


def galois_conjugate(a: Cyc) -> Cyc:
    return a.conjugate()


def embed_complex(a: Cyc) -> complex:
    return a.embed()


def field_arith(a: Cyc, b: Cyc, op: str) -> Cyc:
    ops = {
        "add": Cyc.__add__,
        "sub": Cyc.__sub__,
        "mul": Cyc.__mul__,
        "div": Cyc.__truediv__,
    }
    if op not in ops:
        raise ValueError(f"unknown field operation {op!r}")
    return ops[op](a, b)
