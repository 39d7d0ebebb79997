"""Words in the generators ``u^n`` and ``s_r`` and their normal forms.

Generators obey

    s_r s_t = s_{rt},    u^n u^m = u^{n+m},    s_r u^n = u^{rn} s_r,

the last in the orientation realised by the regular representation
(``s_r u^n e_q = e_{rq+rn} = u^{rn} s_r e_q``).  The literal statement
``u^n s_r = s_r u^{rn}`` is *not* satisfied by that model; see
``regrep.check_relation(kind="covariance-as-stated")``.

Every adjoint-free word therefore reduces to ``u^N s_R`` which acts on basis
labels as the affine map ``q -> R*q + N``.  A :class:`NormalForm` stores the
pair ``(R, N)``; entries are ring elements, or fractions for words over the
fraction field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Callable, Mapping, Union

from .rings import (
    INTEGERS,
    GAUSSIAN_INTEGERS,
    Fraction,
    RingElement,
    RingId,
    RingMismatchError,
    poly_ring,
    prime_field,
    to_fraction,
)

__all__ = [
    "Generator",
    "U",
    "S",
    "Word",
    "NormalForm",
    "ComplexRational",
    "AlgebraElement",
    "Embedding",
    "Z_TO_ZI",
    "Z_TO_Q",
    "fp_to_fpx",
    "normalize",
    "nf_multiply",
    "algebra_multiply",
    "induced_map",
    "induced_nf",
    "embed_in_quotient_field",
    "act_affine",
    "letter_action",
]

Elem = Union[RingElement, Fraction]


@dataclass(frozen=True)
class Generator:
    kind: str  # "u" or "s"
    elem: Elem

    def __post_init__(self):
        if self.kind not in ("u", "s"):
            raise ValueError(f"generator kind must be 'u' or 's', got {self.kind!r}")
        if self.kind == "s" and self.elem.is_zero():
            raise ValueError("s_r needs r != 0")

    @property
    def ring(self) -> RingId:
        return self.elem.ring

    def __str__(self):
        return f"{self.kind}[{self.elem}]"


def U(n: Elem) -> Generator:
    return Generator("u", n)


def S(r: Elem) -> Generator:
    return Generator("s", r)


@dataclass(frozen=True)
class Word:
    """Operator product of generators; the rightmost letter acts first."""

    ring: RingId
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for g in self.letters:
            if g.ring != self.ring:
                raise RingMismatchError(f"letter {g} is not over {self.ring}")

    @classmethod
    def of(cls, ring: RingId, *letters: Generator) -> Word:
        return cls(ring, letters)

    def __mul__(self, other: Word) -> Word:
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot concatenate words over {self.ring} and {other.ring}")
        return Word(self.ring, self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    @property
    def is_fractional(self) -> bool:
        return any(isinstance(g.elem, Fraction) for g in self.letters)

    def __str__(self):
        return "*".join(str(g) for g in self.letters)


@dataclass(frozen=True)
class NormalForm:
    """The reduced word ``u^trans s_mult``, i.e. the affine map ``q -> mult*q + trans``."""

    mult: Elem
    trans: Elem

    def __post_init__(self):
        if self.mult.ring != self.trans.ring:
            raise RingMismatchError("multiplier and translation live in different rings")
        if type(self.mult) is not type(self.trans):
            raise TypeError("multiplier and translation must both be ring elements or both fractions")
        if self.mult.is_zero():
            raise ValueError("normal form multiplier must be nonzero")

    @classmethod
    def identity(cls, ring: RingId) -> NormalForm:
        return cls(ring.one, ring.zero)

    @property
    def ring(self) -> RingId:
        return self.mult.ring

    @property
    def is_fractional(self) -> bool:
        return isinstance(self.mult, Fraction)

    def __mul__(self, other: NormalForm) -> NormalForm:
        return nf_multiply(self, other)

    def to_word(self) -> Word:
        return Word(self.ring, (U(self.trans), S(self.mult)))

    def __call__(self, q: Elem) -> Elem:
        return act_affine(self, q)

    def __str__(self):
        return f"({self.mult}, {self.trans})"


def normalize(w: Word) -> NormalForm:
    """Reduce a word to its normal form by folding letters right to left."""
    mult: Elem = w.ring.one
    trans: Elem = w.ring.zero
    for g in reversed(w.letters):
        if g.kind == "s":
            mult, trans = g.elem * mult, g.elem * trans
        else:
            trans = trans + g.elem
    if w.is_fractional:
        mult, trans = to_fraction(mult), to_fraction(trans)
    return NormalForm(mult, trans)


def nf_multiply(a: NormalForm, b: NormalForm) -> NormalForm:
    """Composition ``a o b`` of the affine maps."""
    if a.ring != b.ring:
        raise RingMismatchError(f"cannot multiply normal forms over {a.ring} and {b.ring}")
    if a.is_fractional != b.is_fractional:
        a, b = embed_in_quotient_field(a), embed_in_quotient_field(b)
    return NormalForm(a.mult * b.mult, a.trans + a.mult * b.trans)


def act_affine(nf: NormalForm, q: Elem) -> Elem:
    if q.ring != nf.ring:
        raise RingMismatchError(f"{q!r} is not in {nf.ring} or its fraction field")
    if isinstance(q, Fraction) and not nf.is_fractional:
        nf = embed_in_quotient_field(nf)
    return nf.mult * q + nf.trans


def letter_action(g: Generator, q: Elem) -> Elem:
    """Image label of ``e_q`` under a single generator (``q+n`` or ``r*q``)."""
    return q + g.elem if g.kind == "u" else g.elem * q


def embed_in_quotient_field(nf: NormalForm) -> NormalForm:
    return NormalForm(to_fraction(nf.mult), to_fraction(nf.trans))


# -- exact complex-rational coefficients ------------------------------------------------


@dataclass(frozen=True)
class ComplexRational:
    re: Q = Q(0)
    im: Q = Q(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Q(self.re))
        object.__setattr__(self, "im", Q(self.im))

    @classmethod
    def coerce(cls, x) -> ComplexRational:
        if isinstance(x, ComplexRational):
            return x
        if isinstance(x, complex):
            return cls(Q(x.real), Q(x.imag))
        return cls(Q(x))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, o):
        o = ComplexRational.coerce(o)
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-ComplexRational.coerce(o))

    def __mul__(self, o):
        o = ComplexRational.coerce(o)
        return ComplexRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> ComplexRational:
        return ComplexRational(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


@dataclass(frozen=True)
class AlgebraElement:
    """Finite linear combination of normal forms with exact complex-rational coefficients."""

    ring: RingId
    terms: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for nf, c in dict(self.terms).items():
            if nf.ring != self.ring:
                raise RingMismatchError(f"term {nf} is not over {self.ring}")
            c = ComplexRational.coerce(c)
            if c:
                clean[nf] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def of(cls, nf: NormalForm, coeff=1) -> AlgebraElement:
        return cls(nf.ring, {nf: coeff})

    @classmethod
    def identity(cls, ring: RingId) -> AlgebraElement:
        return cls.of(NormalForm.identity(ring))

    def _same(self, other: AlgebraElement):
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot combine algebra elements over {self.ring} and {other.ring}")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._same(other)
        out = dict(self.terms)
        for nf, c in other.terms.items():
            out[nf] = out.get(nf, ComplexRational()) + c
        return AlgebraElement(self.ring, out)

    def scale(self, c) -> AlgebraElement:
        return AlgebraElement(self.ring, {nf: v * c for nf, v in self.terms.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        return algebra_multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{nf}" for nf, c in self.terms.items())


def algebra_multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._same(y)
    out: dict = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            nf = nf_multiply(a, b)
            out[nf] = out.get(nf, ComplexRational()) + ca * cb
    return AlgebraElement(x.ring, out)


# -- functoriality ------------------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """A unital injective ring map used to transport words."""

    name: str
    source: RingId
    target: RingId
    func: Callable[[RingElement], Elem] = field(compare=False)

    def __call__(self, a: Elem) -> Elem:
        if a.ring != self.source:
            raise RingMismatchError(f"{self.name} expects elements of {self.source}")
        if isinstance(a, Fraction):
            raise TypeError(f"{self.name} acts on ring elements, not fractions")
        return self.func(a)


Z_TO_ZI = Embedding("Z->Z[i]", INTEGERS, GAUSSIAN_INTEGERS, lambda a: GAUSSIAN_INTEGERS((a.value, 0)))
Z_TO_Q = Embedding("Z->Q", INTEGERS, INTEGERS, to_fraction)


def fp_to_fpx(p: int) -> Embedding:
    src, dst = prime_field(p), poly_ring(p)
    return Embedding(f"F_{p}->F_{p}[x]", src, dst, lambda a: dst(a.value))


def induced_map(phi: Embedding, w: Word) -> Word:
    """Apply ``phi`` letter by letter."""
    if w.ring != phi.source:
        raise RingMismatchError(f"{phi.name} cannot act on a word over {w.ring}")
    return Word(phi.target, tuple(Generator(g.kind, phi(g.elem)) for g in w.letters))


def induced_nf(phi: Embedding, nf: NormalForm) -> NormalForm:
    return NormalForm(phi(nf.mult), phi(nf.trans))

