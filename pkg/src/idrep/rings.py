"""Exact arithmetic in the supported Euclidean domains and their fraction fields.

Four rings are supported:

    Z        the rational integers
    Z[i]     the Gaussian integers, values stored as pairs (a, b) for a+bi
    F_p      the prime field, values are residues in {0, ..., p-1}
    F_p[x]   polynomials over F_p, values are coefficient tuples (c_0, ..., c_n)
             with c_n nonzero; the zero polynomial is the empty tuple

Elements are immutable and carry their ring, so mixing rings raises
:class:`RingMismatchError`.  Fractions are always stored reduced with a
canonical (unit-normalised) denominator, which makes equality structural.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

__all__ = [
    "RingMismatchError",
    "RingId",
    "RingElement",
    "Fraction",
    "Window",
    "INTEGERS",
    "GAUSSIAN_INTEGERS",
    "prime_field",
    "poly_ring",
    "parse_ring",
    "is_prime",
    "is_unit",
    "unit_inverse",
    "canonical_associate",
    "gcd",
    "exact_div",
    "divides",
    "fraction_make",
    "to_fraction",
    "enumerate_window",
    "fraction_window",
    "make_window",
    "irreducibles",
    "parse_element",
    "parse_fraction",
]


class RingMismatchError(ValueError):
    """Raised when elements of different rings are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


_KINDS = ("Z", "ZI", "FP", "FPX")


@dataclass(frozen=True)
class RingId:
    """Identifies one of the supported integral domains."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind in ("FP", "FPX"):
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"characteristic must be prime, got {self.p}")
        elif self.p is not None:
            raise ValueError(f"ring {self.kind} takes no characteristic")

    def __str__(self):
        return {
            "Z": "Z",
            "ZI": "Z[i]",
            "FP": f"F_{self.p}",
            "FPX": f"F_{self.p}[x]",
        }[self.kind]

    @property
    def is_field(self) -> bool:
        return self.kind == "FP"

    def __call__(self, value) -> RingElement:
        """Build an element from an int, a raw value or a literal string."""
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingMismatchError(f"{value!r} is not in {self}")
            return value
        if isinstance(value, str):
            return parse_element(value, self)
        return RingElement(self, self._canon(value))

    def _canon(self, value):
        if self.kind == "Z":
            return int(value)
        if self.kind == "ZI":
            if isinstance(value, int):
                return (value, 0)
            a, b = value
            return (int(a), int(b))
        if self.kind == "FP":
            return int(value) % self.p
        if isinstance(value, int):
            value = (value,)
        return _ptrim(tuple(int(c) % self.p for c in value))

    @property
    def zero(self) -> RingElement:
        return self(0)

    @property
    def one(self) -> RingElement:
        return self(1)

    @property
    def i(self) -> RingElement:
        if self.kind != "ZI":
            raise AttributeError(f"{self} has no imaginary unit")
        return self((0, 1))

    @property
    def x(self) -> RingElement:
        if self.kind != "FPX":
            raise AttributeError(f"{self} has no indeterminate")
        return self((0, 1))


INTEGERS = RingId("Z")
GAUSSIAN_INTEGERS = RingId("ZI")


def prime_field(p: int) -> RingId:
    return RingId("FP", p)


def poly_ring(p: int) -> RingId:
    return RingId("FPX", p)


def parse_ring(text: str) -> RingId:
    """Parse a ring selector: ``z``, ``zi``, ``fp:<p>``, ``fpx:<p>`` or ``f<p>x``."""
    t = text.strip().lower()
    if t == "z":
        return INTEGERS
    if t == "zi":
        return GAUSSIAN_INTEGERS
    m = re.fullmatch(r"fp:(\d+)", t) or re.fullmatch(r"f(\d+)", t)
    if m:
        return prime_field(int(m.group(1)))
    m = re.fullmatch(r"fpx:(\d+)", t) or re.fullmatch(r"f(\d+)x", t)
    if m:
        return poly_ring(int(m.group(1)))
    raise ValueError(f"unknown ring selector {text!r}")


# -- polynomial helpers over F_p (coefficient tuples, low degree first) --------


def _ptrim(c: tuple) -> tuple:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _ptrim(tuple(((a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0)) % p
                        for k in range(n)))


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(tuple(out))


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    r = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] * inv % p
        if c:
            q[k] = c
            for j, bj in enumerate(b):
                r[k + j] = (r[k + j] - c * bj) % p
    return _ptrim(tuple(q)), _ptrim(tuple(r[: len(b) - 1]))


def _gauss_round_div(a: int, n: int) -> int:
    # nearest integer to a/n, n > 0
    return (2 * a + n) // (2 * n)


@dataclass(frozen=True)
class RingElement:
    ring: RingId
    value: object

    # -- structure --

    def _check(self, other) -> RingElement:
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot combine {self.ring} and {other.ring}")
        return other

    def is_zero(self) -> bool:
        return self.value in (0, (0, 0), ())

    def __bool__(self):
        return not self.is_zero()

    @property
    def degree(self) -> int:
        if self.ring.kind != "FPX":
            raise AttributeError("degree is defined for polynomials only")
        return len(self.value) - 1

    def norm(self) -> int:
        """Euclidean size: |n|, a^2+b^2, 0/1 in F_p, or p^deg for polynomials."""
        k, v = self.ring.kind, self.value
        if k == "Z":
            return abs(v)
        if k == "ZI":
            return v[0] * v[0] + v[1] * v[1]
        if k == "FP":
            return 0 if v == 0 else 1
        return 0 if not v else self.ring.p ** (len(v) - 1)

    # -- arithmetic --

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        k, a, b = self.ring.kind, self.value, other.value
        if k == "Z":
            v = a + b
        elif k == "ZI":
            v = (a[0] + b[0], a[1] + b[1])
        elif k == "FP":
            v = (a + b) % self.ring.p
        else:
            v = _padd(a, b, self.ring.p)
        return RingElement(self.ring, v)

    __radd__ = __add__

    def __neg__(self):
        k, a = self.ring.kind, self.value
        if k == "Z":
            v = -a
        elif k == "ZI":
            v = (-a[0], -a[1])
        elif k == "FP":
            v = -a % self.ring.p
        else:
            v = tuple(-c % self.ring.p for c in a)
        return RingElement(self.ring, v)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        k, a, b = self.ring.kind, self.value, other.value
        if k == "Z":
            v = a * b
        elif k == "ZI":
            v = (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])
        elif k == "FP":
            v = a * b % self.ring.p
        else:
            v = _pmul(a, b, self.ring.p)
        return RingElement(self.ring, v)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return unit_inverse(self) ** (-e)
        out = self.ring.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other):
        """Euclidean division: ``a = q*b + r`` with ``norm(r) < norm(b)``."""
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        k, a, b = self.ring.kind, self.value, other.value
        if k == "Z":
            q, r = divmod(a, b)
            return self.ring(q), self.ring(r)
        if k == "ZI":
            n = b[0] * b[0] + b[1] * b[1]
            # a * conj(b)
            re_ = a[0] * b[0] + a[1] * b[1]
            im_ = a[1] * b[0] - a[0] * b[1]
            q = self.ring((_gauss_round_div(re_, n), _gauss_round_div(im_, n)))
            return q, self - q * other
        if k == "FP":
            p = self.ring.p
            return self.ring(a * pow(b, -1, p)), self.ring.zero
        q, r = _pdivmod(a, b, self.ring.p)
        return RingElement(self.ring, q), RingElement(self.ring, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        return fraction_make(self, other)

    def __rtruediv__(self, other):
        return fraction_make(self.ring(other), self)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.ring(other).value
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def __lt__(self, other):
        # only meaningful in Z; used for sorting windows
        if self.ring.kind != "Z" or not isinstance(other, RingElement):
            return NotImplemented
        return self.value < other.value

    # -- text --

    def __str__(self):
        k, v = self.ring.kind, self.value
        if k in ("Z", "FP"):
            return str(v)
        if k == "ZI":
            return _format_gauss(*v)
        return _format_poly(v)

    def __repr__(self):
        return f"{self.ring}({self})"


def _format_gauss(a: int, b: int) -> str:
    if b == 0:
        return str(a)
    im = {1: "i", -1: "-i"}.get(b, f"{b}i")
    if a == 0:
        return im
    return f"{a}{'' if im.startswith('-') else '+'}{im}"


def _format_poly(c: tuple) -> str:
    if not c:
        return "0"
    terms = []
    for k in range(len(c) - 1, -1, -1):
        if not c[k]:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if not mono:
            terms.append(str(c[k]))
        elif c[k] == 1:
            terms.append(mono)
        else:
            terms.append(f"{c[k]}*{mono}")
    return "+".join(terms)


# -- unit group, associates, gcd -------------------------------------------------


def _nonzero(r: RingElement, what: str):
    if r.is_zero():
        raise ValueError(f"{what} of zero is undefined")


def is_unit(r: RingElement) -> bool:
    """True iff ``r`` has a multiplicative inverse in its ring."""
    _nonzero(r, "unit test")
    k = r.ring.kind
    if k == "Z":
        return abs(r.value) == 1
    if k == "ZI":
        return r.norm() == 1
    if k == "FP":
        return True
    return len(r.value) == 1


def unit_inverse(r: RingElement) -> RingElement:
    if not is_unit(r):
        raise ValueError(f"{r} is not a unit of {r.ring}")
    k = r.ring.kind
    if k == "Z":
        return r
    if k == "ZI":
        a, b = r.value
        return r.ring((a, -b))
    if k == "FP":
        return r.ring(pow(r.value, -1, r.ring.p))
    return r.ring(pow(r.value[0], -1, r.ring.p))


def _gauss_units(ring: RingId):
    return [ring(1), ring((0, 1)), ring(-1), ring((0, -1))]


def canonical_associate(r: RingElement) -> tuple[RingElement, RingElement]:
    """Split ``r`` as ``unit * assoc`` with ``assoc`` the chosen coset representative.

    Representatives are positive integers, monic polynomials, ``1`` in F_p and
    Gaussian integers ``a+bi`` with ``a > 0, b >= 0``.
    """
    _nonzero(r, "canonical associate")
    ring, k = r.ring, r.ring.kind
    if k == "Z":
        return ring(1 if r.value > 0 else -1), ring(abs(r.value))
    if k == "FP":
        return r, ring.one
    if k == "FPX":
        lead = ring(r.value[-1])
        return lead, r * unit_inverse(lead)
    for v in _gauss_units(ring):
        a = r * v
        if a.value[0] > 0 and a.value[1] >= 0:
            return unit_inverse(v), a
    raise AssertionError("unreachable: some rotation lands in the first quadrant")


def gcd(a: RingElement, b: RingElement) -> RingElement:
    """Canonical-associate greatest common divisor by the Euclidean algorithm."""
    if a.ring != b.ring:
        raise RingMismatchError(f"cannot combine {a.ring} and {b.ring}")
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return canonical_associate(a)[1]


def exact_div(a: RingElement, b: RingElement) -> RingElement:
    q, r = divmod(a, b)
    if not r.is_zero():
        raise ValueError(f"{b} does not divide {a}")
    return q


def divides(b: RingElement, a: RingElement) -> bool:
    if b.is_zero():
        return a.is_zero()
    return (a % b).is_zero()


# -- fractions ----------------------------------------------------------------------


@dataclass(frozen=True)
class Fraction:
    """Reduced element ``num/den`` of the fraction field; build with :func:`fraction_make`."""

    num: RingElement
    den: RingElement

    @property
    def ring(self) -> RingId:
        return self.num.ring

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_integral(self) -> bool:
        return self.den == self.ring.one

    def _lift(self, other):
        if isinstance(other, Fraction):
            if other.ring != self.ring:
                raise RingMismatchError(f"cannot combine {self.ring} and {other.ring}")
            return other
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatchError(f"cannot combine {self.ring} and {other.ring}")
            return Fraction(other, self.ring.one)
        if isinstance(other, int) and not isinstance(other, bool):
            return Fraction(self.ring(other), self.ring.one)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return fraction_make(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Fraction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return fraction_make(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> Fraction:
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return fraction_make(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Fraction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (RingElement, int)) and not isinstance(other, bool):
            o = self._lift(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        if self.is_integral():
            return hash(self.num)
        return hash((self.num, self.den))

    def __lt__(self, other):
        if self.ring.kind != "Z" or not isinstance(other, Fraction):
            return NotImplemented
        return self.num.value * other.den.value < other.num.value * self.den.value

    def __float__(self):
        if self.ring.kind != "Z":
            raise TypeError(f"{self.ring} fractions have no real value")
        return self.num.value / self.den.value

    def __str__(self):
        if self.is_integral():
            return str(self.num)
        n, d = str(self.num), str(self.den)
        if any(ch in n[1:] for ch in "+-"):
            n = f"({n})"
        if any(ch in d[1:] for ch in "+-"):
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"Q({self.ring})({self})"


def fraction_make(p: RingElement, q: RingElement) -> Fraction:
    """Reduce ``p/q`` by the gcd and normalise the denominator to its canonical associate."""
    if p.ring != q.ring:
        raise RingMismatchError(f"cannot combine {p.ring} and {q.ring}")
    if q.is_zero():
        raise ZeroDivisionError("zero denominator")
    ring = p.ring
    if p.is_zero():
        return Fraction(ring.zero, ring.one)
    g = gcd(p, q)
    p, q = exact_div(p, g), exact_div(q, g)
    unit, q = canonical_associate(q)
    return Fraction(p * unit_inverse(unit), q)


def to_fraction(x: RingElement | Fraction) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x, x.ring.one)


# -- windows ------------------------------------------------------------------------

Label = Union[RingElement, Fraction]


@dataclass(frozen=True)
class Window:
    """A finite ordered set of basis labels with position lookup."""

    ring: RingId
    elements: tuple
    descriptor: str = ""
    index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        idx = {e: k for k, e in enumerate(self.elements)}
        if len(idx) != len(self.elements):
            raise ValueError("window elements must be distinct")
        for e in self.elements:
            if e.ring != self.ring:
                raise RingMismatchError(f"{e!r} does not belong to {self.ring}")
        object.__setattr__(self, "index", idx)
        zero, one = self.ring.zero, self.ring.one
        if self.is_fractional:
            zero, one = to_fraction(zero), to_fraction(one)
        if zero not in idx or one not in idx:
            raise ValueError("a window must contain 0 and 1")
        if self.ring.kind in ("Z", "ZI") and any(-e not in idx for e in self.elements):
            raise ValueError("windows over Z and Z[i] must be closed under negation")

    @property
    def is_fractional(self) -> bool:
        return bool(self.elements) and isinstance(self.elements[0], Fraction)

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __contains__(self, label) -> bool:
        return label in self.index

    def position(self, label):
        return self.index.get(label)

    def __str__(self):
        return self.descriptor or f"{self.ring}-window[{len(self)}]"


def make_window(ring: RingId, elements: Iterable, descriptor: str = "") -> Window:
    return Window(ring, tuple(elements), descriptor)


def _poly_enum(ring: RingId, max_degree: int) -> Iterator[RingElement]:
    p = ring.p
    for code in range(p ** (max_degree + 1)):
        coeffs = []
        while code:
            code, c = divmod(code, p)
            coeffs.append(c)
        yield ring(tuple(coeffs))


def enumerate_window(ring: RingId, bound: int | None = None) -> Window:
    """The standard finite window of ``ring``.

    ``bound`` is ``B`` for ``[-B..B]`` in Z, the box half-width for Z[i] and the
    degree cap for F_p[x]; F_p always yields the whole field.
    """
    k = ring.kind
    if k == "FP":
        return make_window(ring, (ring(j) for j in range(ring.p)), str(ring))
    if bound is None or bound < (0 if k == "FPX" else 1):
        raise ValueError(f"invalid window bound {bound!r} for {ring}")
    if k == "Z":
        elems = (ring(j) for j in range(-bound, bound + 1))
        return make_window(ring, elems, f"Z[-{bound}..{bound}]")
    if k == "ZI":
        elems = (ring((a, b)) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1))
        return make_window(ring, elems, f"Z[i]box({bound})")
    return make_window(ring, _poly_enum(ring, bound), f"{ring}deg<={bound}")


def fraction_window(ring: RingId, num_bound: int | None, den_bound: int | None) -> Window:
    """Reduced fractions over the canonical denominators of ``enumerate_window(ring, den_bound)``.

    Over Z, ``num_bound`` caps the magnitude of the value (``|n/d| <= B``), so
    ``fraction_window(Z, 2, 2)`` contains ``3/2``; the result is sorted by value.
    Elsewhere numerators come from ``enumerate_window(ring, num_bound)`` and the
    order is first appearance.
    """
    dens = []
    for d in enumerate_window(ring, den_bound).elements:
        if not d.is_zero():
            c = canonical_associate(d)[1]
            if c not in dens:
                dens.append(c)
    seen: dict = {}
    for d in dens:
        if ring.kind == "Z":
            span = num_bound * d.value
            nums = [ring(n) for n in range(-span, span + 1)]
        else:
            nums = enumerate_window(ring, num_bound).elements
        for n in nums:
            seen.setdefault(fraction_make(n, d), None)
    elems = list(seen)
    if ring.kind == "Z":
        elems.sort()
    return make_window(ring, elems, f"Q({ring}){{num<={num_bound}, den<={den_bound}}}")


def irreducibles(ring: RingId, bound: int) -> list[RingElement]:
    """Canonical irreducibles up to ``bound`` (magnitude for Z, degree for F_p[x])."""
    if ring.kind == "Z":
        return [ring(n) for n in range(2, bound + 1) if is_prime(n)]
    if ring.kind != "FPX":
        raise ValueError(f"irreducible enumeration is not supported for {ring}")
    found: list[RingElement] = []
    p = ring.p
    for d in range(1, bound + 1):
        for code in range(p ** d):
            coeffs = []
            for _ in range(d):
                code, c = divmod(code, p)
                coeffs.append(c)
            f = ring(tuple(coeffs) + (1,))
            if not any(2 * g.degree <= d and divides(g, f) for g in found):
                found.append(f)
    return found


# -- literal syntax -----------------------------------------------------------------

_TERM = re.compile(r"[+-]?[^+-]+")


def _terms(text: str) -> list[str]:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty ring literal")
    terms = _TERM.findall(s)
    if "".join(terms) != s:
        raise ValueError(f"malformed ring literal {text!r}")
    return terms


def _signed_int(s: str) -> int:
    if s in ("", "+"):
        return 1
    if s == "-":
        return -1
    return int(s)


def parse_element(text: str, ring: RingId) -> RingElement:
    """Parse a ring literal: ``-3``, ``2-i``, ``2*x^2+x+1``."""
    k = ring.kind
    s = re.sub(r"\s+", "", text)
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if k in ("Z", "FP"):
        if not re.fullmatch(r"[+-]?\d+", s):
            raise ValueError(f"not an integer literal: {text!r}")
        return ring(int(s))
    if k == "ZI":
        a = b = 0
        for t in _terms(s):
            m = re.fullmatch(r"([+-]?\d*)\*?i", t)
            if m:
                b += _signed_int(m.group(1))
            elif re.fullmatch(r"[+-]?\d+", t):
                a += int(t)
            else:
                raise ValueError(f"bad Gaussian term {t!r} in {text!r}")
        return ring((a, b))
    acc = ring.zero
    for t in _terms(s):
        m = re.fullmatch(r"([+-]?\d*)\*?x(?:\^(\d+))?", t)
        if m:
            c = _signed_int(m.group(1))
            e = int(m.group(2)) if m.group(2) else 1
            acc = acc + ring(c) * ring.x ** e
        elif re.fullmatch(r"[+-]?\d+", t):
            acc = acc + ring(int(t))
        else:
            raise ValueError(f"bad polynomial term {t!r} in {text!r}")
    return acc


def parse_fraction(text: str, ring: RingId) -> Fraction:
    """Parse ``p/q`` (or a plain element, read as ``p/1``)."""
    s = re.sub(r"\s+", "", text)
    depth = 0
    for k, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "/" and depth == 0:
            return fraction_make(parse_element(s[:k], ring), parse_element(s[k + 1:], ring))
    return to_fraction(parse_element(s, ring))
