"""Exact scalar arithmetic.

Rationals are `fractions.Fraction` (always reduced, positive denominator).
On top of that this module provides univariate polynomials, Sturm-sequence
real root isolation, squarefree/irreducible factorization over the rationals,
a single real algebraic number field Q(alpha), and exact sign decisions for
its elements via interval bisection.  No floating point is used anywhere in a
decision path.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

QQ = Fraction

FACTOR_DEGREE_CAP = 64


class ExactNumError(Exception):
    pass


class IrrationalValueError(ExactNumError):
    """Raised when a rational value is required but the element is irrational."""


class FieldExtensionNeeded(ExactNumError):
    """Raised when a computation would leave the configured field.

    `needed` carries a human-readable description of the missing extension.
    """

    def __init__(self, message: str, needed: str = ""):
        super().__init__(message)
        self.needed = needed or message


def rational_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_from_str(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        d = int(den)
        if d == 0:
            raise ExactNumError(f"zero denominator in rational {s!r}")
        return Fraction(int(num), d)
    return Fraction(int(s))


# ---------------------------------------------------------------------------
# The field Q(alpha) and its elements
# ---------------------------------------------------------------------------

class RealAlgebraicField:
    """The field Q(alpha) for one real algebraic number alpha.

    alpha is described by a monic irreducible minimal polynomial together with
    a rational isolating interval containing exactly one of its real roots.
    Both conditions are verified at construction time, not trusted.
    """

    def __init__(self, min_poly: "Poly", interval: tuple[Fraction, Fraction]):
        if min_poly.field is not None:
            raise ExactNumError("minimal polynomial must have rational coefficients")
        coeffs = min_poly.rational_coeffs()
        lead = coeffs[-1]
        if lead != 1:
            coeffs = [c / lead for c in coeffs]
        if len(coeffs) < 3:
            raise ExactNumError("minimal polynomial must have degree >= 2")
        self.min_poly_coeffs = tuple(coeffs)
        lo, hi = Fraction(interval[0]), Fraction(interval[1])
        if not lo < hi:
            raise ExactNumError("isolating interval must have lo < hi")
        factors = factor_over_Q(Poly.from_rationals(coeffs))
        if len(factors) != 1 or factors[0][1] != 1:
            raise ExactNumError("minimal polynomial is not irreducible over Q")
        if _sturm_count(coeffs, lo, hi) != 1:
            raise ExactNumError("isolating interval does not contain exactly one root")
        self._lo = lo
        self._hi = hi
        self._float_cache: float | None = None
        self._eq_cache: dict[int, bool] = {}
        self._eq_refs: list = []  # pins compared fields so cached ids stay valid

    @property
    def degree(self) -> int:
        return len(self.min_poly_coeffs) - 1

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return (self._lo, self._hi)

    def min_poly(self) -> "Poly":
        return Poly.from_rationals(self.min_poly_coeffs)

    def refine(self) -> None:
        """Halve the isolating interval, keeping exactly one root inside."""
        mid = (self._lo + self._hi) / 2
        # irreducible of degree >= 2 has no rational roots, so sign(mid) != 0
        s_lo = _eval_sign(self.min_poly_coeffs, self._lo)
        s_mid = _eval_sign(self.min_poly_coeffs, mid)
        if s_lo * s_mid < 0:
            self._hi = mid
        else:
            self._lo = mid

    def refine_below(self, width: Fraction) -> tuple[Fraction, Fraction]:
        while self._hi - self._lo > width:
            self.refine()
        return (self._lo, self._hi)

    def root_float(self) -> float:
        if self._float_cache is None:
            lo, hi = self.refine_below(Fraction(1, 10**18))
            self._float_cache = float((lo + hi) / 2)
        return self._float_cache

    def element(self, coords: Sequence[Fraction]) -> "FieldElement":
        coords = list(coords)
        if len(coords) > self.degree:
            raise ExactNumError("too many coordinates for field degree")
        coords += [Fraction(0)] * (self.degree - len(coords))
        return FieldElement(tuple(Fraction(c) for c in coords), self)

    def alpha(self) -> "FieldElement":
        return self.element([Fraction(0), Fraction(1)])

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, RealAlgebraicField):
            return NotImplemented
        if self.min_poly_coeffs != other.min_poly_coeffs:
            return False
        key = id(other)
        hit = self._eq_cache.get(key)
        if hit is None:
            hit = _intervals_same_root(self, other)
            self._eq_cache[key] = hit
            self._eq_refs.append(other)
        return hit

    def __hash__(self):
        return hash(self.min_poly_coeffs)

    def __repr__(self):
        cs = ", ".join(rational_to_str(c) for c in self.min_poly_coeffs)
        return f"RealAlgebraicField([{cs}], [{self._lo}, {self._hi}])"


def _intervals_same_root(a: RealAlgebraicField, b: RealAlgebraicField) -> bool:
    lo = max(a._lo, b._lo)
    hi = min(a._hi, b._hi)
    if lo >= hi:
        return False
    return _sturm_count(a.min_poly_coeffs, lo, hi) == 1


def sqrt_field(n: int) -> RealAlgebraicField:
    """Q(sqrt(n)) for a positive nonsquare integer n, alpha = +sqrt(n)."""
    p = Poly.from_rationals([Fraction(-n), Fraction(0), Fraction(1)])
    return RealAlgebraicField(p, (Fraction(0), Fraction(n + 1)))


class FieldElement:
    """An exact real scalar: rational, or an element of one Q(alpha).

    `coords` holds the coefficients of sum c_k alpha^k.  A plain rational is
    represented with `field is None` and a single coordinate.  Instances are
    immutable by convention.
    """

    __slots__ = ("coords", "field")

    def __init__(self, coords: tuple[Fraction, ...], field: RealAlgebraicField | None = None):
        if field is None:
            if len(coords) != 1:
                raise ExactNumError("rational element must have one coordinate")
        elif len(coords) != field.degree:
            raise ExactNumError("coordinate count must equal the field degree")
        self.coords = coords
        self.field = field

    # -- constructors -------------------------------------------------------

    @staticmethod
    def rational(q) -> "FieldElement":
        return FieldElement((Fraction(q),), None)

    @staticmethod
    def zero(field: RealAlgebraicField | None = None) -> "FieldElement":
        if field is None:
            return FieldElement((Fraction(0),), None)
        return field.element([])

    @staticmethod
    def one(field: RealAlgebraicField | None = None) -> "FieldElement":
        if field is None:
            return FieldElement((Fraction(1),), None)
        return field.element([Fraction(1)])

    # -- coercion -----------------------------------------------------------

    def lift(self, field: RealAlgebraicField | None) -> "FieldElement":
        if self.field is field or field is None or self.field == field:
            return self
        if self.field is None:
            return field.element([self.coords[0]])
        raise ExactNumError("cannot mix elements of different algebraic fields")

    def _pair(self, other) -> tuple["FieldElement", "FieldElement"]:
        if not isinstance(other, FieldElement):
            other = FieldElement.rational(other)
        f1, f2 = self.field, other.field
        if f1 is f2:
            return self, other
        if f1 is None:
            return self.lift(f2), other
        if f2 is None:
            return self, other.lift(f1)
        if f1 != f2:
            raise ExactNumError("cannot mix elements of different algebraic fields")
        return self, other

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_part(self) -> Fraction:
        """The rational value, or IrrationalValueError if any alpha^k term remains."""
        if not self.is_rational():
            raise IrrationalValueError(f"{self} is irrational")
        return self.coords[0]

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}, decided by interval bisection on alpha."""
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.coords[0] > 0 else -1
        field = self.field
        assert field is not None
        while True:
            lo, hi = field.interval
            vlo, vhi = _interval_eval(self.coords, lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            # zero was excluded above: min_poly is the minimal polynomial, so a
            # nonzero coordinate vector cannot evaluate to 0 at alpha
            field.refine()

    def __float__(self) -> float:
        if self.is_rational():
            return float(self.coords[0])
        a = self.field.root_float()
        acc = 0.0
        for c in reversed(self.coords):
            acc = acc * a + float(c)
        return acc

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        return FieldElement(tuple(x + y for x, y in zip(a.coords, b.coords)), a.field)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(tuple(-x for x in self.coords), self.field)

    def __sub__(self, other):
        a, b = self._pair(other)
        return FieldElement(tuple(x - y for x, y in zip(a.coords, b.coords)), a.field)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a.field is None:
            return FieldElement((a.coords[0] * b.coords[0],), None)
        d = a.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.coords):
            if x == 0:
                continue
            for j, y in enumerate(b.coords):
                if y != 0:
                    prod[i + j] += x * y
        return FieldElement(tuple(_reduce_mod_minpoly(prod, a.field)), a.field)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.field is None:
            return FieldElement((1 / self.coords[0],), None)
        # extended Euclid in Q[x]: u * self + v * min_poly = 1
        m = list(self.field.min_poly_coeffs)
        a = _qp_trim(list(self.coords))
        g, u = _xgcd_poly_mod(a, m)
        inv_lead = 1 / g[0]
        coords = [c * inv_lead for c in u]
        coords += [Fraction(0)] * (self.field.degree - len(coords))
        return FieldElement(tuple(coords[: self.field.degree]), self.field)

    def __truediv__(self, other):
        a, b = self._pair(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return FieldElement.rational(other)._pair(self)[0] / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = FieldElement.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            a, b = self._pair(other)
        except ExactNumError:
            return NotImplemented
        return a.coords == b.coords

    def __hash__(self):
        return hash((self.coords, None if self.field is None else self.field.min_poly_coeffs))

    def __lt__(self, other):
        a, b = self._pair(other)
        return (a - b).sign() < 0

    def __le__(self, other):
        a, b = self._pair(other)
        return (a - b).sign() <= 0

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def __repr__(self):
        if self.is_rational():
            return rational_to_str(self.coords[0])
        parts = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            if k == 0:
                parts.append(rational_to_str(c))
            elif k == 1:
                parts.append(f"{rational_to_str(c)}*a")
            else:
                parts.append(f"{rational_to_str(c)}*a^{k}")
        return " + ".join(parts) if parts else "0"


def as_element(x, field: RealAlgebraicField | None = None) -> FieldElement:
    if isinstance(x, FieldElement):
        return x if field is None else x.lift(field)
    e = FieldElement.rational(Fraction(x))
    return e if field is None else e.lift(field)


def element_rational_part(e: FieldElement) -> Fraction:
    return e.rational_part()


def element_sign(e: FieldElement) -> int:
    return e.sign()


def _reduce_mod_minpoly(prod: list[Fraction], field: RealAlgebraicField) -> list[Fraction]:
    d = field.degree
    m = field.min_poly_coeffs  # monic
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c == 0:
            continue
        prod[k] = Fraction(0)
        for j in range(d):
            prod[k - d + j] -= c * m[j]
    return prod[:d] + [Fraction(0)] * (d - len(prod))


def _xgcd_poly_mod(a: list[Fraction], m: list[Fraction]):
    """gcd(a, m) with the Bezout coefficient of a, over Q[x]; gcd is constant."""
    r0, r1 = m[:], a[:]
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while _qp_degree(r1) > 0:
        q, r = _qp_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qp_sub(s0, _qp_mul(q, s1))
        if _qp_is_zero(r1):
            raise ExactNumError("element not invertible: shares a factor with min_poly")
    # here r1 is a nonzero constant since min_poly is irreducible
    return r1, s1


def _interval_eval(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction):
    """Exact interval Horner evaluation of sum c_k x^k on [lo, hi]."""
    vlo = vhi = Fraction(0)
    for c in reversed(list(coeffs)):
        cands = (vlo * lo, vlo * hi, vhi * lo, vhi * hi)
        vlo, vhi = min(cands) + c, max(cands) + c
    return vlo, vhi


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Univariate polynomial, coefficients lowest degree first.

    Coefficients are FieldElements over a single common field (or plain
    rationals).  The zero polynomial has an empty coefficient list.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Sequence[FieldElement], field: RealAlgebraicField | None = None):
        cs = [as_element(c, field) for c in coeffs]
        for c in cs:
            if c.field is not None:
                field = c.field
        cs = [c.lift(field) for c in cs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[FieldElement, ...] = tuple(cs)
        self.field = field

    @staticmethod
    def from_rationals(qs: Iterable) -> "Poly":
        return Poly([FieldElement.rational(Fraction(q)) for q in qs])

    @staticmethod
    def x_minus(r: FieldElement) -> "Poly":
        return Poly([-r, as_element(1, r.field)], r.field)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def lead(self) -> FieldElement:
        if self.is_zero():
            raise ExactNumError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def rational_coeffs(self) -> list[Fraction]:
        return [c.rational_part() for c in self.coeffs]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.lead().inverse()
        return Poly([c * inv for c in self.coeffs], self.field)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        z = FieldElement.zero(self.field or other.field)
        out = [(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)]
        return Poly(out, self.field or other.field)

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (FieldElement, Fraction, int)):
            o = as_element(other, self.field)
            return Poly([c * o for c in self.coeffs], self.field or o.field)
        if self.is_zero() or other.is_zero():
            return Poly([], self.field or other.field)
        field = self.field or other.field
        out = [FieldElement.zero(field) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(out, field)

    __rmul__ = __mul__

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        field = self.field or other.field
        rem = list(self.coeffs)
        dv = other.coeffs
        inv_lead = other.lead().inverse()
        q = [FieldElement.zero(field) for _ in range(max(0, len(rem) - len(dv) + 1))]
        for k in range(len(rem) - len(dv), -1, -1):
            c = rem[k + len(dv) - 1] * inv_lead
            if c.is_zero():
                continue
            q[k] = c
            for j, d in enumerate(dv):
                rem[k + j] = rem[k + j] - c * d
        return Poly(q, field), Poly(rem[: len(dv) - 1], field)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self) -> "Poly":
        return Poly(
            [c * k for k, c in enumerate(self.coeffs)][1:],
            self.field,
        )

    def eval(self, x) -> FieldElement:
        x = as_element(x, self.field)
        acc = FieldElement.zero(self.field or x.field)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(x))."""
        field = self.field or inner.field
        acc = Poly([], field)
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly([c], field)
        return acc

    def scale_input(self, s: FieldElement) -> "Poly":
        """p(s*x)."""
        out, power = [], FieldElement.one(self.field)
        for c in self.coeffs:
            out.append(c * power)
            power = power * s
        return Poly(out, self.field)

    def negate_input(self) -> "Poly":
        """p(-x)."""
        return Poly(
            [c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)], self.field
        )

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            terms.append(f"({c})*x^{k}" if k else f"({c})")
        return "Poly(" + " + ".join(terms) + ")"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the coefficient field."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: p = lc * prod q_i^i with q_i monic squarefree coprime."""
    if p.is_zero():
        raise ExactNumError("zero polynomial")
    p = p.monic()
    if p.degree == 0:
        return []
    out: list[tuple[Poly, int]] = []
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return [(p, 1)]
    c = p // g
    d = p.derivative() // g - c.derivative()
    i = 1
    while c.degree > 0:
        y = poly_gcd(c, d)
        if y.degree > 0:
            out.append((y.monic(), i))
        c2 = c // y
        d = d // y - c2.derivative()
        c = c2
        i += 1
    return out


def radical(p: Poly) -> Poly:
    """Product of the distinct irreducible factors (the squarefree part)."""
    return (p // poly_gcd(p, p.derivative())).monic()


# ---------------------------------------------------------------------------
# Sturm sequences and real root isolation (rational coefficient helpers)
# ---------------------------------------------------------------------------

def _qp_trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qp_is_zero(a) -> bool:
    return not a


def _qp_degree(a) -> int:
    return len(a) - 1


def _qp_sub(a, b):
    n = max(len(a), len(b))
    return _qp_trim(
        [(a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0)) for i in range(n)]
    )


def _qp_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _qp_trim(out)


def _qp_divmod(a, b):
    rem = a[:]
    q = [Fraction(0)] * max(0, len(rem) - len(b) + 1)
    for k in range(len(rem) - len(b), -1, -1):
        c = rem[k + len(b) - 1] / b[-1]
        if c == 0:
            continue
        q[k] = c
        for j, d in enumerate(b):
            rem[k + j] -= c * d
    return _qp_trim(q), _qp_trim(rem[: len(b) - 1])


def _eval_sign(coeffs: Sequence[Fraction], x: Fraction) -> int:
    acc = Fraction(0)
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return (acc > 0) - (acc < 0)


def sturm_chain(p: Poly) -> list[Poly]:
    """Canonical Sturm chain of the squarefree part of p."""
    p0 = radical(p)
    chain = [p0, p0.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree >= 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero():
            break
        chain.append(-rem)
    return chain


def sign_changes_at(chain: list[Poly], x: Fraction) -> int:
    signs = []
    for q in chain:
        if q.is_zero():
            continue
        s = q.eval(x).sign()
        if s != 0:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sturm_count(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> int:
    chain = sturm_chain(Poly.from_rationals(coeffs))
    return sign_changes_at(chain, lo) - sign_changes_at(chain, hi)


def sturm_count(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in (lo, hi]."""
    chain = sturm_chain(p)
    return sign_changes_at(chain, lo) - sign_changes_at(chain, hi)


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every real root lies in (-B, B)."""
    lead = p.lead()
    worst = Fraction(0)
    for c in p.coeffs[:-1]:
        q = c / lead
        # |q| needs a rational magnitude bound; interval endpoints suffice
        if q.is_rational():
            mag = abs(q.rational_part())
        else:
            lo, hi = _abs_bound(q)
            mag = hi
        worst = max(worst, mag)
    return 1 + worst


def _abs_bound(e: FieldElement) -> tuple[Fraction, Fraction]:
    lo, hi = _interval_eval(e.coords, *e.field.interval)
    return (max(Fraction(0), min(abs(lo), abs(hi)) if lo * hi > 0 else Fraction(0)),
            max(abs(lo), abs(hi)))


def sturm_real_roots(p: Poly) -> list[tuple[tuple[Fraction, Fraction], int]]:
    """Isolating intervals with multiplicities for all real roots of p.

    Intervals are pairwise disjoint, each (lo, hi] containing exactly one
    distinct real root.  Multiplicities come from the squarefree
    decomposition.  Rejects the zero polynomial.
    """
    if p.is_zero():
        raise ExactNumError("zero polynomial has no isolated roots")
    if p.degree == 0:
        return []
    found: list[list] = []  # [lo, hi, mult, part, chain]
    for part, mult in squarefree_decomposition(p):
        chain = sturm_chain(part)
        bound = root_bound(part)
        stack = [(-bound, bound)]
        while stack:
            lo, hi = stack.pop()
            n = sign_changes_at(chain, lo) - sign_changes_at(chain, hi)
            if n == 0:
                continue
            if n == 1:
                found.append([lo, hi, mult, part, chain])
                continue
            mid = (lo + hi) / 2
            if part.eval(mid).is_zero():
                # land the root strictly inside its own subinterval, shrinking
                # until no other root of the part is caught
                width = (hi - lo) / 4
                while (
                    sign_changes_at(chain, mid - width)
                    - sign_changes_at(chain, mid + width)
                    > 1
                ):
                    width /= 2
                found.append([mid - width, mid + width, mult, part, chain])
                stack.append((lo, mid - width))
                stack.append((mid + width, hi))
            else:
                stack.append((lo, mid))
                stack.append((mid, hi))
    # refine until pairwise disjoint; each interval keeps its own part's root,
    # and roots of distinct squarefree parts are distinct
    changed = True
    while changed:
        changed = False
        found.sort(key=lambda t: (t[0], t[1]))
        for i in range(len(found) - 1):
            a, b = found[i], found[i + 1]
            if a[1] > b[0]:
                _shrink(a)
                _shrink(b)
                changed = True
    return [((f[0], f[1]), f[2]) for f in found]


def _shrink(entry: list) -> None:
    """Halve an isolating interval in place, keeping its part's root inside."""
    lo, hi, _, part, chain = entry
    mid = (lo + hi) / 2
    if part.eval(mid).is_zero():
        width = (hi - lo) / 8
        entry[0], entry[1] = mid - width, mid + width
        return
    if sign_changes_at(chain, lo) - sign_changes_at(chain, mid) == 1:
        entry[1] = mid
    else:
        entry[0] = mid


def refine_root(p: Poly, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval of a squarefree p below the given width."""
    chain = sturm_chain(p)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if p.eval(mid).is_zero():
            shift = (hi - lo) / 8
            lo, hi = mid - shift, mid + shift
            continue
        if sign_changes_at(chain, lo) - sign_changes_at(chain, mid) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


# ---------------------------------------------------------------------------
# Factorization over Q
# ---------------------------------------------------------------------------

def _to_int_primitive(qs: list[Fraction]) -> list[int]:
    from math import gcd, lcm

    den = 1
    for q in qs:
        den = lcm(den, q.denominator)
    ints = [int(q * den) for q in qs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _int_divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return []
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(ints: list[int]) -> list[Fraction]:
    """All rational roots of an integer polynomial (lowest degree first)."""
    if not ints:
        return []
    shift = 0
    while ints[shift] == 0:
        shift += 1
    roots = [Fraction(0)] if shift else []
    body = ints[shift:]
    p = Poly.from_rationals(body)
    for num in _int_divisors(body[0]):
        for den in _int_divisors(body[-1]):
            for sgn in (1, -1):
                r = Fraction(sgn * num, den)
                if r not in roots and p.eval(r).is_zero():
                    roots.append(r)
    return roots


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23)


def _modp_poly(ints: list[int], p: int) -> list[int]:
    a = [c % p for c in ints]
    while a and a[-1] == 0:
        a.pop()
    return a


def _modp_divmod(a, b, p):
    rem = a[:]
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(rem) - len(b) + 1)
    for k in range(len(rem) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv % p
        if c:
            q[k] = c
            for j, d in enumerate(b):
                rem[k + j] = (rem[k + j] - c * d) % p
    while rem and rem[-1] == 0:
        rem.pop()
    return q, rem[: len(b) - 1] if len(rem) >= len(b) else rem


def _modp_gcd(a, b, p):
    while b:
        _, r = _modp_divmod(a, b, p)
        a, b = b, r
    return a


def _modp_pow_mod(base, e, mod, p):
    result = [1]
    base = _modp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _modp_divmod(_modp_mul(result, base, p), mod, p)[1]
        base = _modp_divmod(_modp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _modp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _irreducible_mod_p(ints: list[int], p: int) -> bool:
    """Exact irreducibility test in GF(p)[x] via x^(p^d) Frobenius steps."""
    f = _modp_poly(ints, p)
    n = len(f) - 1
    if n <= 0 or len(_modp_poly([ints[-1]], p)) == 0:
        return False
    if n != len(ints) - 1:
        return False  # degree dropped mod p
    # f irreducible iff x^(p^n) == x mod f and gcd(x^(p^(n/q)) - x, f) == 1
    x = [0, 1]
    t = _modp_pow_mod(x, p**n, f, p)
    if _qp_int_sub(t, x, p):
        return False
    for q in set(_prime_factors(n)):
        t = _modp_pow_mod(x, p ** (n // q), f, p)
        g = _modp_gcd(f, _qp_int_sub(t, x, p), p)
        if len(g) - 1 > 0:
            return False
    return True


def _qp_int_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _prime_factors(n: int) -> list[int]:
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


_FACTOR_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


def _modp_monic(a: list[int], p: int) -> list[int]:
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def _berlekamp_gfp(f: list[int], p: int) -> list[list[int]]:
    """Monic irreducible factors of a squarefree monic f over GF(p)."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    x_p = _modp_pow_mod([0, 1], p, f, p)
    rows = []
    current = [1]
    for _ in range(n):
        rows.append((current + [0] * n)[:n])
        current = _modp_divmod(_modp_mul(current, x_p, p), f, p)[1]
    # nullspace vectors v: v(x)^p = v(x) mod f; their count is the factor count
    mat = [[(rows[i][j] - (1 if i == j else 0)) % p for i in range(n)] for j in range(n)]
    basis = _gfp_nullspace(mat, p)
    factors = [f]
    for v in basis:
        if len(factors) == len(basis):
            break
        vpoly = list(v)
        while vpoly and vpoly[-1] == 0:
            vpoly.pop()
        if len(vpoly) <= 1:
            continue
        nxt = []
        for g in factors:
            if len(g) - 1 <= 1:
                nxt.append(g)
                continue
            pieces = []
            rem = g
            for s in range(p):
                if len(rem) - 1 == 0:
                    break
                d = _modp_gcd(rem, _qp_int_sub(vpoly, [s], p), p)
                if 0 < len(d) - 1 < len(rem) - 1:
                    pieces.append(_modp_monic(d, p))
                    rem = _modp_monic(_modp_divmod(rem, d, p)[0], p)
            if len(rem) - 1 > 0:
                pieces.append(_modp_monic(rem, p))
            nxt.extend(pieces)
        factors = nxt
    return factors


def _gfp_nullspace(mat: list[list[int]], p: int) -> list[list[int]]:
    n = len(mat)
    a = [row[:] for row in mat]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if a[i][c] % p), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] % p:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    out = []
    for fc in (c for c in range(n) if c not in pivots):
        v = [0] * n
        v[fc] = 1
        for rr, pc in enumerate(pivots):
            v[pc] = (-a[rr][fc]) % p
        out.append(v)
    return out


def _pm_trim(a: list[int], m: int) -> list[int]:
    while a and a[-1] % m == 0:
        a.pop()
    return a


def _pm_mul(a: list[int], b: list[int], m: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % m
    return _pm_trim(out, m)


def _pm_add(a: list[int], b: list[int], m: int) -> list[int]:
    n = max(len(a), len(b))
    return _pm_trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m for i in range(n)], m)


def _pm_sub(a: list[int], b: list[int], m: int) -> list[int]:
    n = max(len(a), len(b))
    return _pm_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)], m)


def _pm_divmod_monic(a: list[int], b: list[int], m: int):
    """divmod by a monic b in (Z/m)[x]."""
    rem = [x % m for x in a]
    q = [0] * max(0, len(rem) - len(b) + 1)
    for k in range(len(rem) - len(b), -1, -1):
        c = rem[k + len(b) - 1] % m
        if c:
            q[k] = c
            for j, d in enumerate(b):
                rem[k + j] = (rem[k + j] - c * d) % m
    rem = rem[: len(b) - 1]
    return _pm_trim(q, m), _pm_trim(rem, m)


def _modp_xgcd(a: list[int], b: list[int], p: int):
    """(g, s, t) with s*a + t*b = g over GF(p), g monic."""
    r0, r1 = _pm_trim([x % p for x in a], p), _pm_trim([x % p for x in b], p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _modp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _pm_sub(s0, _pm_mul(q, s1, p), p)
        t0, t1 = t1, _pm_sub(t0, _pm_mul(q, t1, p), p)
    inv = pow(r0[-1], p - 2, p)
    return ([c * inv % p for c in r0], [c * inv % p for c in s0], [c * inv % p for c in t0])


def _hensel_step(f, g, h, s, t, m):
    """One quadratic Hensel step (von zur Gathen & Gerhard, Alg. 15.10).

    Given f = g*h (mod m) and s*g + t*h = 1 (mod m) with f, g, h monic,
    returns (g*, h*, s*, t*) satisfying the same relations mod m^2.
    """
    m2 = m * m
    e = _pm_sub(f, _pm_mul(g, h, m2), m2)
    q, r = _pm_divmod_monic(_pm_mul(s, e, m2), h, m2)
    g1 = _pm_add(g, _pm_add(_pm_mul(t, e, m2), _pm_mul(q, g, m2), m2), m2)
    h1 = _pm_add(h, r, m2)
    b = _pm_sub(_pm_add(_pm_mul(s, g1, m2), _pm_mul(t, h1, m2), m2), [1], m2)
    c, d = _pm_divmod_monic(_pm_mul(s, b, m2), h1, m2)
    s1 = _pm_sub(s, d, m2)
    t1 = _pm_sub(t, _pm_add(_pm_mul(t, b, m2), _pm_mul(c, g1, m2), m2), m2)
    return g1, h1, s1, t1, m2


def _hensel_tree(f: list[int], modular: list[list[int]], p: int, target: int) -> tuple[list[list[int]], int]:
    """Lift a coprime monic mod-p factorization of monic f to modulus >= target."""
    modulus = p
    while modulus < target:
        modulus *= modulus
    if len(modular) == 1:
        return [[c % modulus for c in f]], modulus
    half = len(modular) // 2
    g = [1]
    for piece in modular[:half]:
        g = _pm_mul(g, piece, p)
    h = [1]
    for piece in modular[half:]:
        h = _pm_mul(h, piece, p)
    _, s, t = _modp_xgcd(g, h, p)
    m = p
    while m < target:
        g, h, s, t, m = _hensel_step([c % (m * m) for c in f], g, h, s, t, m)
    left, _ = _hensel_tree(g, modular[:half], p, target)
    right, _ = _hensel_tree(h, modular[half:], p, target)
    return left + right, m


def _centered(x: int, m: int) -> int:
    x %= m
    return x - m if x > m // 2 else x


def _recombine_monic(f: list[int], lifted: list[list[int]], modulus: int) -> list[list[int]]:
    """True monic integer factors of monic f from its lifted modular factors."""
    remaining = list(range(len(lifted)))
    current = f[:]
    out: list[list[int]] = []
    r = 1
    while 2 * r <= len(remaining):
        found = True
        while found and 2 * r <= len(remaining):
            found = False
            for subset in itertools.combinations(remaining, r):
                prod = [1]
                for idx in subset:
                    prod = _pm_mul(prod, lifted[idx], modulus)
                cand = [_centered(c, modulus) for c in prod]
                while cand and cand[-1] == 0:
                    cand.pop()
                if not cand or cand[-1] != 1:
                    continue
                q, rem = _qp_divmod([Fraction(c) for c in current], [Fraction(c) for c in cand])
                if _qp_is_zero(rem) and all(c.denominator == 1 for c in q):
                    out.append(cand)
                    current = [int(c) for c in q]
                    remaining = [i for i in remaining if i not in subset]
                    found = True
                    break
        r += 1
    if len(current) - 1 > 0:
        out.append(current)
    return out


def _isqrt_ceil(n: int) -> int:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else r + 1


def _factor_squarefree_monic_int(f: list[int]) -> list[list[int]]:
    """Irreducible monic integer factors of a squarefree monic f (Zassenhaus)."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    deriv = [i * c for i, c in enumerate(f)][1:]
    for p in _FACTOR_PRIMES:
        fp = _modp_poly(f, p)
        if len(fp) - 1 != n:
            continue
        if len(_modp_gcd(_modp_monic(fp, p), _modp_poly(deriv, p), p)) - 1 != 0:
            continue  # not squarefree mod p
        modular = _berlekamp_gfp(_modp_monic(fp, p), p)
        if len(modular) == 1:
            return [f]
        norm2 = sum(c * c for c in f)
        bound = (2 ** n) * (_isqrt_ceil(norm2) + 1) * 2 + 1  # Mignotte-style, doubled for centering
        lifted, modulus = _hensel_tree(f, modular, p, bound)
        return _recombine_monic(f, lifted, modulus)
    raise ExactNumError("no usable factorization prime found (unexpected for squarefree input)")


def _factor_squarefree_Q(p: Poly) -> list[Poly]:
    """Monic irreducible factors of a squarefree rational polynomial."""
    if p.degree > FACTOR_DEGREE_CAP:
        raise ExactNumError(
            f"factor search capped at degree {FACTOR_DEGREE_CAP}, got {p.degree}"
        )
    out: list[Poly] = []
    work = p.monic()
    # strip rational roots first
    ints = _to_int_primitive(work.rational_coeffs())
    for r in _rational_roots(ints):
        lin = Poly.from_rationals([-r, 1])
        while (work % lin).is_zero():
            out.append(lin)
            work = work // lin
    if work.degree <= 0:
        return out
    if work.degree <= 3:
        # no rational roots left: degree 2 and 3 are irreducible
        out.append(work.monic())
        return out
    ints = _to_int_primitive(work.rational_coeffs())
    if any(_irreducible_mod_p(ints, q) for q in _SMALL_PRIMES if ints[-1] % q != 0):
        out.append(work.monic())
        return out
    # monicize: F(x) = L^(n-1) f(x/L) is monic with integer coefficients
    n = len(ints) - 1
    lead = ints[-1]
    monic_int = [ints[k] * lead ** (n - 1 - k) for k in range(n)] + [1]
    for g in _factor_squarefree_monic_int(monic_int):
        k = len(g) - 1
        coeffs = [Fraction(g[j] * lead**j, lead**k) for j in range(k + 1)]
        out.append(Poly.from_rationals(coeffs))
    return out


def factor_over_Q(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors over Q with multiplicities.

    The product of factors^multiplicities equals p up to its leading
    coefficient.  Squarefree decomposition first, then rational root
    extraction and a Kronecker-style divisor search for the rest.
    """
    if p.is_zero():
        raise ExactNumError("cannot factor the zero polynomial")
    if p.field is not None:
        for c in p.coeffs:
            if not c.is_rational():
                raise ExactNumError("factor_over_Q requires rational coefficients")
    out: list[tuple[Poly, int]] = []
    for part, mult in squarefree_decomposition(p):
        for f in _factor_squarefree_Q(part):
            out.append((f, mult))
    out.sort(key=lambda t: (t[0].degree, [str(c) for c in t[0].coeffs]))
    return out


# ---------------------------------------------------------------------------
# Factorization over Q(alpha): norm-based reduction to Q
# ---------------------------------------------------------------------------

def _resultant_rational(a: list[Fraction], b: list[Fraction]) -> Fraction:
    """res(a, b) over Q via a padded Sylvester determinant."""
    da, db = len(a) - 1, len(b) - 1
    if da < 0 or db < 0:
        return Fraction(0)
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    n = da + db
    rows: list[list[Fraction]] = []
    for i in range(db):
        row = [Fraction(0)] * n
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(da):
        row = [Fraction(0)] * n
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return _det_fraction(rows)


def _det_fraction(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    det = Fraction(1)
    m = [row[:] for row in rows]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def _norm_poly(g: Poly, field: RealAlgebraicField) -> Poly:
    """N(x) = res_y(min_poly(y), g(x; alpha -> y)), by evaluate/interpolate."""
    d = field.degree
    deg_bound = d * g.degree
    m = list(field.min_poly_coeffs)
    xs = []
    x = 0
    while len(xs) < deg_bound + 1:
        xs.append(Fraction(x))
        x = -x if x > 0 else -x + 1
    vals = []
    for x0 in xs:
        # g(x0) as a polynomial in y of formal degree d - 1
        gy = [Fraction(0)] * d
        power = FieldElement.one(field)
        x0e = as_element(x0, field)
        acc = [Fraction(0)] * d
        for c in g.coeffs:
            cc = c.lift(field)
            term = cc * power
            for k in range(d):
                acc[k] += term.coords[k]
            power = power * x0e
        gy = acc
        # pad to formal degree d - 1 even if leading entries vanish
        vals.append(_resultant_padded(m, gy, d - 1))
    return _lagrange_rational(xs, vals)


def _resultant_padded(m: list[Fraction], g: list[Fraction], formal_deg: int) -> Fraction:
    da = len(m) - 1
    db = formal_deg
    g = g + [Fraction(0)] * (formal_deg + 1 - len(g))
    n = da + db
    if db == 0:
        return g[0] ** da
    rows: list[list[Fraction]] = []
    for i in range(db):
        row = [Fraction(0)] * n
        for j, c in enumerate(reversed(m)):
            row[i + j] = c
        rows.append(row)
    for i in range(da):
        row = [Fraction(0)] * n
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return _det_fraction(rows)


def _lagrange_rational(xs: list[Fraction], ys: list[Fraction]) -> Poly:
    coeffs = [Fraction(0)] * len(xs)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if i == j:
                continue
            basis = _qp_mul(basis, [-xj, Fraction(1)])
            denom *= xi - xj
        scale = yi / denom
        for k, b in enumerate(basis):
            coeffs[k] += scale * b
    return Poly.from_rationals(coeffs)


def _factor_squarefree_field(p: Poly, field: RealAlgebraicField) -> list[Poly]:
    """Monic irreducible factors of a squarefree p over Q(alpha) (Trager)."""
    alpha = field.alpha()
    for s in (0, 1, -1, 2, -2, 3, -3, 4, -4):
        shift = Poly([(-s) * alpha, FieldElement.one(field)], field)  # x - s*alpha
        g = p.compose(shift).monic()
        norm = _norm_poly(g, field)
        if norm.is_zero():
            continue
        if poly_gcd(norm, norm.derivative()).degree == 0:
            n_factors = factor_over_Q(norm)
            out = []
            unshift = Poly([as_element(s, field) * alpha, FieldElement.one(field)], field)
            for nf, _ in n_factors:
                nf_field = Poly([c.lift(field) for c in nf.coeffs], field)
                h = poly_gcd(g, nf_field)
                if h.degree > 0:
                    out.append(h.compose(unshift).monic())
            return out
    raise ExactNumError("norm squarefree shift search failed")


def factor_over_field(p: Poly, field: RealAlgebraicField | None) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities over Q or Q(alpha)."""
    if field is None:
        return factor_over_Q(p)
    p = Poly([c.lift(field) for c in p.coeffs], field)
    out: list[tuple[Poly, int]] = []
    for part, mult in squarefree_decomposition(p):
        if all(c.is_rational() for c in part.coeffs):
            # rational parts may still split further over Q(alpha)
            for qf, qm in factor_over_Q(Poly.from_rationals(part.rational_coeffs())):
                qf_lift = Poly([c.lift(field) for c in qf.coeffs], field)
                if qf.degree <= 1:
                    out.append((qf_lift, mult * qm))
                else:
                    for f in _factor_squarefree_field(qf_lift, field):
                        out.append((f, mult * qm))
        else:
            for f in _factor_squarefree_field(part, field):
                out.append((f, mult))
    out.sort(key=lambda t: (t[0].degree, [str(c) for c in t[0].coeffs]))
    return out


def field_sqrt(e: FieldElement) -> FieldElement | None:
    """The nonnegative square root of e inside its own field, if it exists."""
    s = e.sign()
    if s < 0:
        return None
    if s == 0:
        return FieldElement.zero(e.field)
    if e.field is None:
        q = e.rational_part()
        num = _isqrt_exact(q.numerator)
        den = _isqrt_exact(q.denominator)
        if num is None or den is None:
            return None
        return FieldElement.rational(Fraction(num, den))
    x2 = Poly([-e, FieldElement.zero(e.field), FieldElement.one(e.field)], e.field)
    for f, _ in factor_over_field(x2, e.field):
        if f.degree == 1:
            root = -f.coeffs[0]
            return root if root.sign() >= 0 else -root
    return None


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None
