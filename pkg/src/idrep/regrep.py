"""The regular representation on a finite window of basis vectors.

Operators of the regular representation send basis vectors to basis vectors,
so on a window they are partial injections of positions: ``U^n`` sends ``e_q``
to ``e_{q+n}`` and ``S_r`` sends ``e_q`` to ``e_{rq}``, undefined whenever the
image label leaves the window.  Relation checks compare both sides point by
point and never blame truncation on the relations: a point counts only when
every intermediate image of both sides stays inside the window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .report import Report
from .rings import (
    Fraction,
    RingElement,
    RingMismatchError,
    Window,
    enumerate_window,
    is_unit,
    to_fraction,
    unit_inverse,
)
from .words import Generator, NormalForm, S, U, Word, letter_action

__all__ = [
    "PartialInjection",
    "RELATIONS",
    "rep_generator",
    "rep_word",
    "adjoint",
    "check_relation",
    "relation_sides",
    "separation_test",
    "unitary_regular_rep",
    "check_compression",
    "convergence_bound",
]


@dataclass(frozen=True)
class PartialInjection:
    """Injective partial map on the positions of a window (``None`` = undefined)."""

    window: Window
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != len(self.window):
            raise ValueError("image table must cover the whole window")
        hit = [j for j in self.images if j is not None]
        if len(set(hit)) != len(hit):
            raise ValueError("map is not injective")
        if any(not 0 <= j < len(self.window) for j in hit):
            raise ValueError("image position outside the window")

    @classmethod
    def identity(cls, window: Window) -> PartialInjection:
        return cls(window, range(len(window)))

    @classmethod
    def from_labels(cls, window: Window, mapping: Mapping) -> PartialInjection:
        images = [None] * len(window)
        for a, b in mapping.items():
            images[window.index[a]] = window.index[b]
        return cls(window, images)

    def __call__(self, pos: int):
        return self.images[pos]

    def apply(self, label):
        """Image label of ``label``, or ``None`` if undefined there."""
        pos = self.window.position(label)
        if pos is None:
            return None
        j = self.images[pos]
        return None if j is None else self.window.elements[j]

    def __matmul__(self, other: PartialInjection) -> PartialInjection:
        """Composition ``self o other`` (``other`` acts first)."""
        if other.window != self.window:
            raise ValueError("partial injections live on different windows")
        return PartialInjection(
            self.window, (None if j is None else self.images[j] for j in other.images)
        )

    def adjoint(self) -> PartialInjection:
        inv = [None] * len(self.images)
        for i, j in enumerate(self.images):
            if j is not None:
                inv[j] = i
        return PartialInjection(self.window, inv)

    @property
    def domain(self) -> list:
        return [self.window.elements[i] for i, j in enumerate(self.images) if j is not None]

    @property
    def image(self) -> list:
        return [self.window.elements[j] for j in self.images if j is not None]

    def is_total(self) -> bool:
        return None not in self.images

    def is_bijection(self) -> bool:
        return self.is_total()  # injective and total on a finite set

    def missing_points(self) -> list:
        """Window labels outside the range."""
        hit = set(j for j in self.images if j is not None)
        return [e for k, e in enumerate(self.window.elements) if k not in hit]

    def as_dict(self) -> dict:
        el = self.window.elements
        return {el[i]: el[j] for i, j in enumerate(self.images) if j is not None}


def adjoint(p: PartialInjection) -> PartialInjection:
    return p.adjoint()


def _check_ring(g: Generator, w: Window):
    if g.ring != w.ring:
        raise RingMismatchError(f"generator {g} is not over {w.ring}")
    if isinstance(g.elem, Fraction) and not w.is_fractional:
        raise RingMismatchError(f"fraction generator {g} needs a fraction window")


def rep_generator(g: Generator, w: Window) -> PartialInjection:
    _check_ring(g, w)
    images = []
    for q in w.elements:
        images.append(w.position(letter_action(g, q)))
    return PartialInjection(w, images)


def rep_word(wd: Word, w: Window) -> PartialInjection:
    if wd.ring != w.ring:
        raise RingMismatchError(f"word over {wd.ring} on a window over {w.ring}")
    out = PartialInjection.identity(w)
    for g in wd.letters:
        out = out @ rep_generator(g, w)
    return out


def unitary_regular_rep(g: Generator, wq: Window) -> PartialInjection:
    """The same formulas on a fraction window; ``S~_r`` is built from ``e_{q/r} -> e_q``."""
    if not wq.is_fractional:
        raise ValueError("the regular unitary representation needs a fraction window")
    _check_ring(g, wq)
    if g.kind == "u":
        return rep_generator(g, wq)
    images = [None] * len(wq)
    for k, t in enumerate(wq.elements):
        pre = wq.position(t / g.elem)
        if pre is not None:
            images[pre] = k
    return PartialInjection(wq, images)


# -- relation checks ---------------------------------------------------------------

RELATIONS = ("mul-S", "add-U", "covariance", "isometry", "unit-unitarity", "covariance-as-stated")


def _nonzero(params, name):
    r = params[name]
    if r.is_zero():
        raise ValueError(f"parameter {name} must be nonzero")
    return r


def relation_sides(kind: str, params: Mapping, w: Window) -> list[tuple[PartialInjection, PartialInjection]]:
    """The pairs of operators a relation asserts equal on ``w``."""
    rep = lambda g: rep_generator(g, w)  # noqa: E731
    if kind == "mul-S":
        r, t = _nonzero(params, "r"), _nonzero(params, "t")
        return [(rep(S(r)) @ rep(S(t)), rep(S(r * t)))]
    if kind == "add-U":
        n, m = params["n"], params["m"]
        return [(rep(U(n)) @ rep(U(m)), rep(U(n + m)))]
    if kind == "covariance":
        r, n = _nonzero(params, "r"), params["n"]
        return [(rep(S(r)) @ rep(U(n)), rep(U(r * n)) @ rep(S(r)))]
    if kind == "covariance-as-stated":
        r, n = _nonzero(params, "r"), params["n"]
        return [(rep(U(n)) @ rep(S(r)), rep(S(r)) @ rep(U(r * n)))]
    if kind == "isometry":
        s = rep(S(_nonzero(params, "r")))
        return [(s.adjoint() @ s, PartialInjection.identity(w))]
    if kind == "unit-unitarity":
        r = _nonzero(params, "r")
        if isinstance(r, RingElement) and not is_unit(r):
            raise ValueError(f"{r} is not a unit")
        inv = unit_inverse(r) if isinstance(r, RingElement) else r.inverse()
        s, s_inv = rep(S(r)), rep(S(inv))
        ident = PartialInjection.identity(w)
        return [(s.adjoint(), s_inv), (s @ s_inv, ident), (s_inv @ s, ident)]
    raise ValueError(f"unknown relation {kind!r}; expected one of {RELATIONS}")


def _classify(pairs, points) -> tuple[list, list, list]:
    verified, violated, inconclusive = [], [], []
    for k, label in points:
        state = "verified"
        for lhs, rhs in pairs:
            a, b = lhs(k), rhs(k)
            if a is None or b is None:
                state = "inconclusive" if state == "verified" else state
            elif a != b:
                state = "violated"
        {"verified": verified, "violated": violated, "inconclusive": inconclusive}[state].append(label)
    return verified, violated, inconclusive


def check_relation(kind: str, params: Mapping, w: Window) -> Report:
    """Classify every window point for one relation instance."""
    pairs = relation_sides(kind, params, w)
    v, x, i = _classify(pairs, enumerate(w.elements))
    notes = ()
    if kind == "covariance-as-stated":
        notes = ("checks u^n s_r = s_r u^{rn}; the regular representation satisfies s_r u^n = u^{rn} s_r",)
    return Report(kind, tuple(params.items()), str(w), v, x, i, notes)


def _size(q) -> int:
    # search outward from the origin so the reported point is the simplest one
    if isinstance(q, Fraction):
        return max(_size(q.num), _size(q.den))
    k = q.ring.kind
    if k == "FPX":
        return q.degree
    if k == "FP":
        return q.value
    return q.norm()


def separation_test(a: NormalForm, b: NormalForm, w: Window):
    """The smallest window label where both normal forms act conclusively and differently, else ``None``."""
    if a.ring != b.ring:
        raise RingMismatchError(f"normal forms over {a.ring} and {b.ring}")
    if a == b:
        return None
    pa, pb = rep_word(a.to_word(), w), rep_word(b.to_word(), w)
    for k, label in sorted(enumerate(w.elements), key=lambda kl: _size(kl[1])):
        ia, ib = pa(k), pb(k)
        if ia is not None and ib is not None and ia != ib:
            return label
    return None


def check_compression(r: RingElement, wr: Window, wq: Window, n: RingElement | None = None) -> Report:
    """Check that the integral labels span an invariant subspace of the unitary
    representation and that compressing ``S~_r`` (and ``U~^n``) to it gives ``S_r`` (``U^n``)."""
    if wr.is_fractional or not wq.is_fractional:
        raise ValueError("expected an integral window inside a fraction window")
    if any(to_fraction(q) not in wq for q in wr):
        raise ValueError("integral window is not contained in the fraction window")
    gens = [S(r)] + ([U(n)] if n is not None else [])
    ops = [(unitary_regular_rep(g, wq), rep_generator(g, wr)) for g in gens]
    verified, violated, inconclusive = [], [], []
    for q in wr.elements:
        state = "verified"
        for big, small in ops:
            img = big.apply(to_fraction(q))
            if img is None:
                state = "inconclusive" if state == "verified" else state
                continue
            if not img.is_integral():
                state = "violated"  # H is not invariant
                continue
            restricted = small.apply(q)
            if restricted is None:
                if img.num in wr:
                    state = "violated"
                elif state == "verified":
                    state = "inconclusive"
            elif restricted != img.num:
                state = "violated"
        {"verified": verified, "violated": violated, "inconclusive": inconclusive}[state].append(q)
    params = (("r", r),) + ((("n", n),) if n is not None else ())
    return Report("compression", params, f"{wr} in {wq}", verified, violated, inconclusive)


def convergence_bound(kind: str, params: Mapping, q, ring=None, start: int = 1, limit: int = 1 << 16) -> int:
    """Smallest doubled bound ``B`` at which ``q`` is conclusive and verified.

    Raises ``AssertionError`` if ``q`` is ever violated and ``RuntimeError`` if
    ``B`` exceeds ``limit``.
    """
    ring = ring if ring is not None else q.ring
    b = start
    while b <= limit:
        w = enumerate_window(ring, b)
        if q in w:
            rep = check_relation(kind, params, w)
            if q in rep.violated:
                raise AssertionError(f"{kind} {dict(params)} violated at {q} with bound {b}")
            if q in rep.verified:
                return b
        b *= 2
    raise RuntimeError(f"{q} still inconclusive at bound {limit}")

