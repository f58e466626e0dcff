"""Exact arithmetic with roots of unity and cyclotomic numbers.

Two layers:

* :class:`RootOfUnity` -- the multiplicative group of all roots of unity,
  represented by the reduced exponent fraction k/N (the value exp(2*pi*i*k/N)).
  Products and powers are exponent arithmetic, so group operations never leave
  this type.

* :class:`CycNumber` -- elements of cyclotomic number fields Q(zeta_N),
  stored as a conductor N together with a sparse map {e: Fraction} over the
  power basis {zeta_N^e : 0 <= e < phi(N)}, always reduced modulo the N-th
  cyclotomic polynomial.  The representation is exact; zero is the empty map,
  so zero tests are structural.  Mixed-conductor arithmetic lifts both
  operands into Q(zeta_lcm) first.  :meth:`CycNumber.canonical` additionally
  descends to the smallest cyclotomic field containing the value, giving a
  unique representation for each value.

No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union


class DivisionByZero(ZeroDivisionError):
    """Division of a cyclotomic number by zero."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, low degree first)
# ---------------------------------------------------------------------------


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Divide integer polynomials, asserting the division is exact."""
    num = list(num)
    dn, dd = len(num) - 1, len(den) - 1
    lead = den[dd]
    quot = [0] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        c, rem = divmod(num[dd + k], lead)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        quot[k] = c
        for j in range(dd + 1):
            num[k + j] -= c * den[j]
    if any(num):
        raise ArithmeticError("nonzero remainder in polynomial division")
    return quot


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d < n:
            poly = _poly_div_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Representations of zeta_n^e over the power basis, for phi(n) <= e < n.

    Entry ``table[e - phi(n)]`` is the length-phi(n) integer coefficient
    vector of x^e reduced modulo the n-th cyclotomic polynomial.
    """
    poly = cyclotomic_poly(n)
    phi = len(poly) - 1
    rows: list[tuple[int, ...]] = []
    # x^phi == -(poly[0] + poly[1] x + ... + poly[phi-1] x^{phi-1})
    cur = [-c for c in poly[:phi]]
    for _ in range(phi, n):
        rows.append(tuple(cur))
        lead = cur[phi - 1]
        nxt = [0] + cur[: phi - 1]
        if lead:
            top = rows[0]
            nxt = [a + lead * b for a, b in zip(nxt, top)]
        cur = nxt
    return tuple(rows)


def _fold_monomials(n: int, items: Iterable[tuple[int, Fraction]]) -> dict[int, Fraction]:
    """Accumulate c * zeta_n^e terms into reduced power-basis form."""
    phi = euler_phi(n)
    table = None
    acc: dict[int, Fraction] = {}
    for e, c in items:
        if not c:
            continue
        e %= n
        if e < phi:
            v = acc.get(e)
            v = c if v is None else v + c
            if v:
                acc[e] = v
            elif e in acc:
                del acc[e]
        else:
            if table is None:
                table = _reduction_table(n)
            row = table[e - phi]
            for j, m in enumerate(row):
                if m:
                    v = acc.get(j)
                    v = c * m if v is None else v + c * m
                    if v:
                        acc[j] = v
                    elif j in acc:
                        del acc[j]
    return acc


# ---------------------------------------------------------------------------
# exact linear solving over Q (tiny systems; used for inverses and descent)
# ---------------------------------------------------------------------------


def _solve_rational(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve A x = b exactly; return None if inconsistent.

    ``rows`` is a list of matrix rows.  The system may be overdetermined; any
    solution is returned when one exists (the systems used here have at most
    one).
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, m) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for pr, pc in pivots:
        x[pc] = aug[pr][ncols]
    return x


# ---------------------------------------------------------------------------
# roots of unity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootOfUnity:
    """The root of unity exp(2*pi*i*exponent) with exponent a reduced k/N."""

    exponent: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponent", self.exponent % 1)

    @property
    def order(self) -> int:
        return self.exponent.denominator

    @property
    def numerator(self) -> int:
        return self.exponent.numerator

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.exponent + other.exponent)

    def __truediv__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.exponent - other.exponent)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.exponent * k)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.exponent)

    def is_one(self) -> bool:
        return self.exponent == 0

    def as_cyc(self) -> "CycNumber":
        n = self.order
        return CycNumber(n, _fold_monomials(n, [(self.numerator, Fraction(1))]))._shrink_fast()

    def __str__(self) -> str:
        if self.order == 1:
            return "1"
        if self.order == 2:
            return "-1"
        return f"z({self.order},{self.numerator})"

    def __repr__(self) -> str:
        return f"rou({self.order},{self.numerator})"


def rou(n: int, k: int) -> RootOfUnity:
    """The root of unity exp(2*pi*i*k/n)."""
    if n <= 0:
        raise ValueError("order must be positive")
    return RootOfUnity(Fraction(k % n, n))


ONE = rou(1, 0)
MINUS_ONE = rou(2, 1)


def order(z: RootOfUnity) -> int:
    """Multiplicative order of a root of unity."""
    return z.order


Scalar = Union["CycNumber", RootOfUnity, Fraction, int]


# ---------------------------------------------------------------------------
# cyclotomic field elements
# ---------------------------------------------------------------------------


class CycNumber:
    """An element of Q(zeta_conductor) over the power basis, reduced."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: dict[int, Fraction]):
        self.conductor = conductor
        self.coeffs = coeffs

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(q: Fraction | int) -> "CycNumber":
        q = Fraction(q)
        return CycNumber(1, {0: q} if q else {})

    @staticmethod
    def coerce(x: Scalar) -> "CycNumber":
        if isinstance(x, CycNumber):
            return x
        if isinstance(x, RootOfUnity):
            return x.as_cyc()
        return CycNumber.from_rational(x)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == {0: Fraction(1)}

    def is_rational(self) -> bool:
        return all(e == 0 for e in self.coeffs)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.coeffs.get(0, Fraction(0))

    def _shrink_fast(self) -> "CycNumber":
        """Cheap descent: rational values drop to conductor 1."""
        if self.conductor > 1 and self.is_rational():
            return CycNumber(1, dict(self.coeffs))
        return self

    def _lift(self, n: int) -> "CycNumber":
        """Rewrite in Q(zeta_n); n must be a multiple of the conductor."""
        if n == self.conductor:
            return self
        step = n // self.conductor
        return CycNumber(n, _fold_monomials(n, ((e * step, c) for e, c in self.coeffs.items())))

    def canonical(self) -> "CycNumber":
        """The unique representation over the smallest cyclotomic field."""
        v = self._shrink_fast()
        changed = True
        while changed and v.conductor > 1:
            changed = False
            n = v.conductor
            phi = euler_phi(n)
            vec = [v.coeffs.get(e, Fraction(0)) for e in range(phi)]
            for p in _prime_factors(n):
                m = n // p
                cols = _descent_columns(n, m)
                rows = [[col[i] for col in cols] for i in range(phi)]
                sol = _solve_rational(rows, vec)
                if sol is not None:
                    v = CycNumber(m, {e: c for e, c in enumerate(sol) if c})
                    changed = True
                    break
        return v._shrink_fast()

    # -- arithmetic --------------------------------------------------------

    def _merged(self, other: "CycNumber") -> tuple["CycNumber", "CycNumber", int]:
        a, b = self, other
        if a.conductor == b.conductor:
            return a, b, a.conductor
        n = a.conductor * b.conductor // gcd(a.conductor, b.conductor)
        return a._lift(n), b._lift(n), n

    def __add__(self, other: Scalar) -> "CycNumber":
        a, b, n = self._merged(CycNumber.coerce(other))
        acc = dict(a.coeffs)
        for e, c in b.coeffs.items():
            v = acc.get(e)
            v = c if v is None else v + c
            if v:
                acc[e] = v
            elif e in acc:
                del acc[e]
        return CycNumber(n, acc)._shrink_fast()

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.conductor, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: Scalar) -> "CycNumber":
        return self + (-CycNumber.coerce(other))

    def __mul__(self, other: Scalar) -> "CycNumber":
        b = CycNumber.coerce(other)
        if b.is_rational():
            q = b.coeffs.get(0, Fraction(0))
            if not q:
                return CycNumber(1, {})
            return CycNumber(self.conductor, {e: c * q for e, c in self.coeffs.items()})._shrink_fast()
        if self.is_rational():
            return b * self
        a, b, n = self._merged(b)
        items = [
            (e1 + e2, c1 * c2)
            for e1, c1 in a.coeffs.items()
            for e2, c2 in b.coeffs.items()
        ]
        return CycNumber(n, _fold_monomials(n, items))._shrink_fast()

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise DivisionByZero("cyclotomic division by zero")
        if self.is_rational():
            return CycNumber.from_rational(1 / self.coeffs[0])
        n = self.conductor
        phi = euler_phi(n)
        # columns of the multiplication-by-self matrix over the power basis
        cols = []
        for j in range(phi):
            prod = _fold_monomials(n, ((e + j, c) for e, c in self.coeffs.items()))
            cols.append([prod.get(i, Fraction(0)) for i in range(phi)])
        rows = [[col[i] for col in cols] for i in range(phi)]
        rhs = [Fraction(1)] + [Fraction(0)] * (phi - 1)
        sol = _solve_rational(rows, rhs)
        if sol is None:  # cannot happen in a field; defensive
            raise ArithmeticError("inverse solve failed")
        return CycNumber(n, {e: c for e, c in enumerate(sol) if c})._shrink_fast()

    def __truediv__(self, other: Scalar) -> "CycNumber":
        return self * CycNumber.coerce(other).inverse()

    def __pow__(self, k: int) -> "CycNumber":
        if k < 0:
            return self.inverse() ** (-k)
        out = CycNumber.from_rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other: Scalar) -> "CycNumber":
        return CycNumber.coerce(other) - self

    def __rtruediv__(self, other: Scalar) -> "CycNumber":
        return CycNumber.coerce(other) / self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (CycNumber, RootOfUnity, Fraction, int)):
            return NotImplemented
        return (self - CycNumber.coerce(other)).is_zero()

    def __hash__(self) -> int:
        c = self.canonical()
        return hash((c.conductor, tuple(sorted(c.coeffs.items()))))

    # -- display -----------------------------------------------------------

    def as_rou(self) -> RootOfUnity | None:
        """Return the equal root of unity, or None if there is none."""
        c = self.canonical()
        n = c.conductor
        if c.is_rational():
            q = c.coeffs.get(0, Fraction(0))
            if q == 1:
                return ONE
            if q == -1:
                return MINUS_ONE
            return None
        for k in range(1, n):
            if gcd(k, n) != 1:
                continue
            if c.coeffs == _fold_monomials(n, [(k, Fraction(1))]):
                return rou(n, k)
        return None

    def __str__(self) -> str:
        c = self.canonical()
        if c.is_rational():
            return str(c.coeffs.get(0, Fraction(0)))
        z = c.as_rou()
        if z is not None:
            return str(z)
        n = c.conductor
        parts = []
        for e in sorted(c.coeffs):
            q = c.coeffs[e]
            base = "1" if e == 0 else f"z({n},{e})"
            if e == 0:
                term = str(q)
            elif q == 1:
                term = base
            elif q == -1:
                term = "-" + base
            else:
                term = f"{q}*{base}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out

    def __repr__(self) -> str:
        return f"CycNumber({self.conductor}, {self.coeffs!r})"


@lru_cache(maxsize=None)
def _descent_columns(n: int, m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Power basis of Q(zeta_m) expressed inside Q(zeta_n), for m | n."""
    step = n // m
    phi_n = euler_phi(n)
    cols = []
    for j in range(euler_phi(m)):
        rep = _fold_monomials(n, [(j * step, Fraction(1))])
        cols.append(tuple(rep.get(i, Fraction(0)) for i in range(phi_n)))
    return tuple(cols)


def cyc_zero() -> CycNumber:
    return CycNumber(1, {})


def cyc_one() -> CycNumber:
    return CycNumber(1, {0: Fraction(1)})


def cyc_arith(a: Scalar, b: Scalar, op: str) -> CycNumber:
    """Field arithmetic dispatcher: op in {'add', 'sub', 'mul', 'div'}."""
    x = CycNumber.coerce(a)
    y = CycNumber.coerce(b)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")
