"""Exact arithmetic on integer-coefficient polynomials.

Polynomials are dense with arbitrary-precision integer coefficients stored
low-to-high: ``IntPoly([a0, a1, ..., ad])`` is a0 + a1*x + ... + ad*x^d.
The representation is canonical (no stored zeros above the degree) and
instances are immutable values, so they hash and can be shared freely
across parallel workers.

Resultants follow the Sylvester convention with the first argument's
coefficients in the top rows.  Two independent routes are provided -- a
fraction-free determinant for small degrees and a subresultant remainder
sequence for larger ones -- and they agree including sign.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ParseError, ZeroPolynomial


class IntPoly:
    """Immutable dense polynomial over the integers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def zero() -> "IntPoly":
        return IntPoly(())

    @staticmethod
    def one() -> "IntPoly":
        return IntPoly((1,))

    @staticmethod
    def x() -> "IntPoly":
        return IntPoly((0, 1))

    @staticmethod
    def monomial(coeff: int, power: int) -> "IntPoly":
        return IntPoly((0,) * power + (coeff,))

    @staticmethod
    def linear(a: int, b: int) -> "IntPoly":
        """The polynomial a*x - b (root b/a)."""
        return IntPoly((-b, a))

    # -- basic structure ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.lc == 1

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __repr__(self):
        return f"IntPoly({self.to_text()!r})"

    def __bool__(self):
        return bool(self.coeffs)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return IntPoly(())
            return IntPoly(tuple(other * a for a in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = IntPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def compose_linear(self, a: int, b: int) -> "IntPoly":
        """Return p(a*x + b) by Horner."""
        result = IntPoly(())
        lin = IntPoly((b, a))
        for c in reversed(self.coeffs):
            result = result * lin + c
        return result

    def shift_int(self, n: int) -> "IntPoly":
        """Return p(x + n) for an integer n."""
        return self if n == 0 else self.compose_linear(1, n)

    def reflect(self) -> "IntPoly":
        """Return p(-x)."""
        return IntPoly(tuple(-a if i % 2 else a for i, a in enumerate(self.coeffs)))

    def one_minus_x(self) -> "IntPoly":
        """Return p(1 - x)."""
        return self.compose_linear(-1, 1)

    # -- evaluation -----------------------------------------------------------

    def __call__(self, x):
        """Exact evaluation at an int or Fraction."""
        acc = Fraction(0) if isinstance(x, Fraction) else 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def sign_at(self, r) -> int:
        """Sign of p(r) at a rational point, pure integer arithmetic."""
        if self.is_zero:
            return 0
        r = Fraction(r)
        num, den = r.numerator, r.denominator
        acc = self.coeffs[-1]
        den_pow = 1
        for i in range(self.degree - 1, -1, -1):
            den_pow *= den
            acc = acc * num + self.coeffs[i] * den_pow
        return (acc > 0) - (acc < 0)

    def interval_eval(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Exact rational interval extension of p over [lo, hi].

        Interval Horner: sound (the output always contains the true range)
        but possibly loose.
        """
        vlo = vhi = Fraction(0)
        for a in reversed(self.coeffs):
            cands = (vlo * lo, vlo * hi, vhi * lo, vhi * hi)
            vlo, vhi = min(cands) + a, max(cands) + a
        return vlo, vhi

    # -- calculus -------------------------------------------------------------

    def derivative(self, k: int = 1) -> "IntPoly":
        """Exact k-th derivative."""
        if k < 0:
            raise ValueError("negative derivative order")
        c = self.coeffs
        for _ in range(k):
            c = tuple(i * a for i, a in enumerate(c))[1:]
            if not c:
                return IntPoly(())
        return IntPoly(c)

    # -- content / primitive parts -------------------------------------------

    def content(self) -> int:
        """Nonnegative gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
            if g == 1:
                break
        return g

    def primitive_part(self) -> "IntPoly":
        """p divided by its content; sign of the leading coefficient kept."""
        g = self.content()
        if g in (0, 1):
            return self
        return IntPoly(tuple(a // g for a in self.coeffs))

    def normalized(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        p = self.primitive_part()
        return -p if p.lc < 0 else p

    # -- division -------------------------------------------------------------

    def pseudo_rem(self, other: "IntPoly") -> "IntPoly":
        """prem(self, other) = lc(other)^(deg self - deg other + 1) * self mod other."""
        if other.is_zero:
            raise ZeroDivisionError("pseudo-division by zero polynomial")
        d = other.degree
        k = self.degree - d
        if k < 0:
            return self
        r = list(self.coeffs)
        c = other.lc
        for i in range(k, -1, -1):
            lead = r[i + d]
            for j in range(len(r)):
                r[j] *= c
            if lead:
                for j in range(d):
                    r[i + j] -= lead * other.coeffs[j]
            r[i + d] = 0
        return IntPoly(r[:d] if d > 0 else ())

    def divmod_rational(self, other: "IntPoly"):
        """(quotient, remainder) over the rationals, as Fraction lists (low-to-high)."""
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        rem = [Fraction(a) for a in self.coeffs]
        dv = [Fraction(a) for a in other.coeffs]
        dq = len(rem) - len(dv)
        if dq < 0:
            return [], rem
        quo = [Fraction(0)] * (dq + 1)
        for i in range(dq, -1, -1):
            c = rem[i + len(dv) - 1] / dv[-1]
            quo[i] = c
            if c:
                for j, b in enumerate(dv):
                    rem[i + j] -= c * b
        while rem and rem[-1] == 0:
            rem.pop()
        return quo, rem

    def divides(self, other: "IntPoly") -> bool:
        """True when self divides other exactly over the rationals."""
        if self.is_zero:
            return other.is_zero
        _, rem = other.divmod_rational(self)
        return not rem

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        """self / other when the quotient exists and has integer coefficients."""
        quo, rem = self.divmod_rational(other)
        if rem or any(q.denominator != 1 for q in quo):
            raise ValueError("division is not exact over the integers")
        return IntPoly(tuple(int(q) for q in quo))

    # -- gcd / squarefree -----------------------------------------------------

    def gcd(self, other: "IntPoly") -> "IntPoly":
        """Primitive gcd over the integers, positive leading coefficient."""
        a, b = self.normalized(), other.normalized()
        if a.is_zero:
            return b
        if b.is_zero:
            return a
        cont = gcd(self.content(), other.content())
        if a.degree < b.degree:
            a, b = b, a
        while not b.is_zero:
            r = a.pseudo_rem(b).primitive_part()
            a, b = b, r
        g = a.normalized()
        return g * cont if cont > 1 else g

    def squarefree_part(self) -> "IntPoly":
        """Product of the distinct irreducible factors, positive lc."""
        if self.is_zero:
            raise ZeroPolynomial("squarefree part of the zero polynomial")
        p = self.normalized()
        if p.degree == 0:
            return IntPoly.one()
        g = p.gcd(p.derivative())
        if g.degree == 0:
            return p
        return p.exact_div(g).normalized()

    def squarefree_decomposition(self) -> list[tuple["IntPoly", int]]:
        """Yun decomposition: [(g1, 1), (g2, 2), ...], p = +-content * prod gi^i."""
        if self.is_zero:
            raise ZeroPolynomial("decomposition of the zero polynomial")
        p = self.normalized()
        if p.degree == 0:
            return []
        dp = p.derivative()
        g = p.gcd(dp)
        b = p.exact_div(g).normalized()
        c = dp.exact_div(g)
        d = c - b.derivative()
        out = []
        i = 1
        while b.degree > 0:
            a = b.gcd(d)
            if a.degree > 0:
                out.append((a, i))
            b = b.exact_div(a).normalized()
            c = d.exact_div(a)
            d = c - b.derivative()
            i += 1
        return out

    # -- text / JSON forms ------------------------------------------------------

    def to_text(self) -> str:
        """Human-readable term syntax, e.g. ``7x^3-7x^2+1``."""
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            sign = "-" if a < 0 else ("+" if parts else "")
            mag = abs(a)
            if i == 0:
                term = str(mag)
            else:
                coeff = "" if mag == 1 else str(mag)
                term = f"{coeff}x" if i == 1 else f"{coeff}x^{i}"
            parts.append(sign + term)
        return "".join(parts)

    @staticmethod
    def from_text(text: str) -> "IntPoly":
        """Parse term syntax ('7x^3-7x^2+1', caret optional) or JSON coeff form."""
        s = text.strip()
        if not s:
            raise ParseError("empty polynomial text")
        if s.startswith("{"):
            try:
                data = json.loads(s)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad JSON polynomial: {exc}") from exc
            return IntPoly.from_json_dict(data)
        return _parse_terms(s)

    def to_json_dict(self) -> dict:
        return {"coeffs": [str(a) for a in self.coeffs]}

    @staticmethod
    def from_json_dict(data: dict) -> "IntPoly":
        if not isinstance(data, dict) or "coeffs" not in data:
            raise ParseError("JSON polynomial needs a 'coeffs' field")
        try:
            return IntPoly(int(a) for a in data["coeffs"])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad coefficient in JSON polynomial: {exc}") from exc


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
            (?P<coeff>\d+)\s*(?:\*\s*)?(?P<var1>x)?(?:\s*(?:\^|\*\*)\s*(?P<exp1>\d+))?
          | (?P<var2>x)(?:\s*(?:\^|\*\*)\s*(?P<exp2>\d+))?
        )\s*""",
    re.VERBOSE,
)


def _parse_terms(s: str) -> IntPoly:
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse polynomial near {s[pos:pos + 10]!r}", pos)
        sign = m.group("sign")
        if sign is None and not first:
            raise ParseError("missing sign between terms", pos)
        sgn = -1 if sign == "-" else 1
        if m.group("var1") is not None or m.group("var2") is not None:
            coeff = int(m.group("coeff")) if m.group("coeff") else 1
            exp_s = m.group("exp1") or m.group("exp2")
            power = int(exp_s) if exp_s else 1
        else:
            if m.group("coeff") is None:
                raise ParseError("malformed term", pos)
            coeff = int(m.group("coeff"))
            power = 0
        coeffs[power] = coeffs.get(power, 0) + sgn * coeff
        pos = m.end()
        first = False
    if not coeffs:
        raise ParseError("empty polynomial text")
    top = max(coeffs)
    return IntPoly(tuple(coeffs.get(i, 0) for i in range(top + 1)))


# ---------------------------------------------------------------------------
# Obstruction values a^(-1/d)
# ---------------------------------------------------------------------------

class ObstructionValue:
    """The value a^(-1/d) for a positive integer a and positive index d.

    Comparisons are exact: (a, d) vs (c, e) is decided by comparing the
    integer powers c^d and a^e (a larger power of the own base means a
    smaller value), and comparison against a positive rational p/q by
    comparing a*p^d and q^d.
    """

    __slots__ = ("base", "root_index")

    def __init__(self, base: int, root_index: int):
        base, root_index = int(base), int(root_index)
        if base < 1 or root_index < 1:
            raise ValueError("obstruction value needs a >= 1 and d >= 1")
        self.base = base
        self.root_index = root_index

    def __repr__(self):
        if self.base == 1:
            return "ObstructionValue(1)"
        if self.root_index == 1:
            return f"ObstructionValue(1/{self.base})"
        return f"ObstructionValue({self.base}^(-1/{self.root_index}))"

    def __float__(self):
        return self.base ** (-1.0 / self.root_index)

    def as_fraction(self) -> Fraction | None:
        """Exact rational value when the base is a perfect power, else None."""
        r = round(self.base ** (1.0 / self.root_index))
        for cand in (r - 1, r, r + 1):
            if cand >= 1 and cand ** self.root_index == self.base:
                return Fraction(1, cand)
        return None

    def _cmp(self, other) -> int:
        """-1/0/1 comparing self against an ObstructionValue or a rational."""
        if isinstance(other, ObstructionValue):
            # self > other  <=>  a^(-1/d) > c^(-1/e)  <=>  c^d > a^e
            lhs = other.base ** self.root_index
            rhs = self.base ** other.root_index
            return (lhs > rhs) - (lhs < rhs)
        t = Fraction(other)
        if t <= 0:
            return 1
        # self > t  <=>  a * p^d < q^d
        lhs = t.denominator ** self.root_index
        rhs = self.base * t.numerator ** self.root_index
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other):
        if isinstance(other, (ObstructionValue, Fraction, int)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        f = self.as_fraction()
        if f is not None:
            return hash(f)
        return hash(("ObstructionValue", self.base, self.root_index))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0


# ---------------------------------------------------------------------------
# Resultants
# ---------------------------------------------------------------------------

def _sylvester_resultant(p: IntPoly, q: IntPoly) -> int:
    """Fraction-free (Bareiss) determinant of the Sylvester matrix."""
    m, n = p.degree, q.degree
    if m == 0 and n == 0:
        return 1
    if m == 0:
        return p.lc ** n
    if n == 0:
        return q.lc ** m
    size = m + n
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - n - 1 - i))
    sign = 1
    prev = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            for swap in range(k + 1, size):
                if rows[swap][k] != 0:
                    rows[k], rows[swap] = rows[swap], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        for i in range(k + 1, size):
            rik = rows[i][k]
            for j in range(k + 1, size):
                rows[i][j] = (rows[i][j] * pivot - rik * rows[k][j]) // prev
            rows[i][k] = 0
        prev = pivot
    return sign * rows[size - 1][size - 1]


def _subresultant_resultant(p: IntPoly, q: IntPoly) -> int:
    """Resultant via the subresultant pseudo-remainder sequence (Cohen 3.3.7)."""
    m, n = p.degree, q.degree
    if m == 0 and n == 0:
        return 1
    if m == 0:
        return p.lc ** n
    if n == 0:
        return q.lc ** m
    s = 1
    a, b = p, q
    if a.degree < b.degree:
        if (a.degree * b.degree) % 2 == 1:
            s = -s
        a, b = b, a
    ca, cb = a.content(), b.content()
    t = ca ** b.degree * cb ** a.degree
    a, b = a.primitive_part(), b.primitive_part()
    g = h = 1
    while True:
        da, db = a.degree, b.degree
        delta = da - db
        if (da % 2 == 1) and (db % 2 == 1):
            s = -s
        r = a.pseudo_rem(b)
        if r.is_zero:
            return 0
        a = b
        denom = g * h ** delta
        b = IntPoly(tuple(c // denom for c in r.coeffs))
        g = a.lc
        if delta > 0:
            h = g ** delta // h ** (delta - 1) if delta > 1 else g
        if b.degree <= 0:
            break
    # b is a nonzero constant here
    da = a.degree
    final = b.lc ** da
    if da > 1:
        final //= h ** (da - 1)
    return s * t * final


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Sylvester resultant Res(p, q), exact, with the standard sign.

    Degrees up to 6 go through the fraction-free determinant; larger
    instances through the subresultant sequence, which avoids coefficient
    blowup.
    """
    if p.is_zero or q.is_zero:
        raise ZeroPolynomial("resultant needs nonzero polynomials")
    if max(p.degree, q.degree) <= 6:
        return _sylvester_resultant(p, q)
    return _subresultant_resultant(p, q)


# ---------------------------------------------------------------------------
# Factorization over the integers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    """content * prod(factor^multiplicity) reproduces the input exactly.

    Factors are primitive with positive leading coefficient, irreducible
    over the integers, ordered by (degree, coefficient tuple).
    """

    content: int
    factors: tuple[tuple[IntPoly, int], ...]

    def expand(self) -> IntPoly:
        out = IntPoly((self.content,))
        for f, mult in self.factors:
            out = out * f ** mult
        return out

    @property
    def is_irreducible(self) -> bool:
        """True when the input is +-1 times a single multiplicity-1 factor."""
        return (abs(self.content) == 1 and len(self.factors) == 1
                and self.factors[0][1] == 1)


_SYMPY_X = None


def _sympy_x():
    global _SYMPY_X
    if _SYMPY_X is None:
        import sympy
        _SYMPY_X = sympy.symbols("x")
    return _SYMPY_X


def factor(p: IntPoly) -> Factorization:
    """Complete factorization into irreducibles over the integers."""
    if p.is_zero:
        raise ZeroPolynomial("factorization of the zero polynomial")
    if p.degree == 0:
        return Factorization(p.constant, ())
    from sympy import Poly as SymPoly, ZZ
    sp = SymPoly(list(reversed(p.coeffs)), _sympy_x(), domain=ZZ)
    content, sym_factors = sp.factor_list()
    factors = []
    for f, mult in sym_factors:
        coeffs = tuple(int(c) for c in reversed(f.all_coeffs()))
        factors.append((IntPoly(coeffs), int(mult)))
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return Factorization(int(content), tuple(factors))


def is_irreducible(p: IntPoly) -> bool:
    """Irreducible over the integers (content +-1, single factor)."""
    if p.is_zero or p.degree == 0:
        return False
    return factor(p).is_irreducible


# ---------------------------------------------------------------------------
# Arithmetic in Q[x]/(q) -- used by relation certificates
# ---------------------------------------------------------------------------

def poly_mod(num: list[Fraction], q: IntPoly) -> list[Fraction]:
    """num mod q over the rationals (low-to-high Fraction list)."""
    rem = [Fraction(c) for c in num]
    while rem and rem[-1] == 0:
        rem.pop()
    dv = [Fraction(a) for a in q.coeffs]
    while len(rem) >= len(dv):
        c = rem[-1] / dv[-1]
        off = len(rem) - len(dv)
        for j, b in enumerate(dv):
            rem[off + j] -= c * b
        while rem and rem[-1] == 0:
            rem.pop()
    return rem


def poly_mulmod(a: list[Fraction], b: list[Fraction], q: IntPoly) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return poly_mod(out, q)


def poly_powmod(a: list[Fraction], e: int, q: IntPoly) -> list[Fraction]:
    """a^e mod q for e >= 0."""
    result = [Fraction(1)]
    base = poly_mod(list(a), q)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, q)
        base = poly_mulmod(base, base, q)
        e >>= 1
    return result


def poly_invmod(a: list[Fraction], q: IntPoly) -> list[Fraction]:
    """Inverse of a modulo q over the rationals (extended Euclid)."""
    r0 = [Fraction(c) for c in q.coeffs]
    r1 = poly_mod(list(a), q)
    s0: list[Fraction] = []
    s1: list[Fraction] = [Fraction(1)]
    while r1:
        quo: list[Fraction] = []
        rem = list(r0)
        while len(rem) >= len(r1):
            c = rem[-1] / r1[-1]
            deg = len(rem) - len(r1)
            while len(quo) < deg + 1:
                quo.append(Fraction(0))
            quo[deg] += c
            for j, b in enumerate(r1):
                rem[deg + j] -= c * b
            while rem and rem[-1] == 0:
                rem.pop()
        qs = [Fraction(0)] * (len(quo) + len(s1) - 1) if quo and s1 else []
        for i, qi in enumerate(quo):
            if qi:
                for j, sj in enumerate(s1):
                    qs[i + j] += qi * sj
        s_next = [Fraction(0)] * max(len(s0), len(qs))
        for i, v in enumerate(s0):
            s_next[i] += v
        for i, v in enumerate(qs):
            s_next[i] -= v
        while s_next and s_next[-1] == 0:
            s_next.pop()
        r0, r1 = r1, rem
        s0, s1 = s1, s_next
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible modulo q")
    inv_c = 1 / r0[0]
    return poly_mod([c * inv_c for c in s0], q)
