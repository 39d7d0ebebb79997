"""Cyclic unitary models of the integers and their extension to fractions.

The model of modulus ``m`` acts on ``C^m`` with the shift ``V: j -> j+1`` and,
for every residue ``r`` coprime to ``m``, the multiplier ``T_r: j -> r*j``.
All operators are permutations, so every identity is checked as an equality
of permutations.

Fractions ``p/q`` with ``q`` coprime to ``m`` extend the model:

    s_{p/q} -> T_p T_q^*            (multiplication by p * q^-1)
    u_{p/q} -> T_q^* V^p T_q        (translation by p * q^-1)

The conjugation order for ``u`` is the one compatible with ``T_r V = V^r T_r``.
The alternative ``T_q V^p T_q^*`` is translation by ``p*q`` and is kept as
:func:`extend_literal` so the two conventions can be compared.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Iterable

import numpy as np

from .report import Report
from .rings import INTEGERS, Fraction, fraction_make, to_fraction
from .words import NormalForm, embed_in_quotient_field

__all__ = [
    "PermMatrix",
    "FiniteModel",
    "AdmissibilityError",
    "build_cyclic_model",
    "extend_pair",
    "extend_to_fractions",
    "extend_literal",
    "represent",
    "verify_quotient_relations",
    "check_factorization",
    "generated_group",
    "admissible_fractions",
    "parse_perm",
]


class AdmissibilityError(ValueError):
    """A fraction has no unitary image in the given model."""


@dataclass(frozen=True)
class PermMatrix:
    """Permutation ``j -> images[j]`` of ``{0..dim-1}``."""

    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(j) for j in self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("not a permutation")

    @classmethod
    def identity(cls, dim: int) -> PermMatrix:
        return cls(range(dim))

    @property
    def dim(self) -> int:
        return len(self.images)

    def __matmul__(self, other: PermMatrix) -> PermMatrix:
        # (self o other)(j) = self(other(j))
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return PermMatrix(self.images[j] for j in other.images)

    def __pow__(self, e: int) -> PermMatrix:
        base = self if e >= 0 else self.adjoint()
        out = PermMatrix.identity(self.dim)
        for _ in range(abs(e)):
            out = out @ base
        return out

    def adjoint(self) -> PermMatrix:
        inv = [0] * self.dim
        for j, k in enumerate(self.images):
            inv[k] = j
        return PermMatrix(inv)

    inverse = adjoint

    def matrix(self) -> np.ndarray:
        """The 0/1 matrix with ``M e_j = e_{images[j]}``."""
        m = np.zeros((self.dim, self.dim), dtype=np.int64)
        m[list(self.images), range(self.dim)] = 1
        return m

    def __str__(self):
        return "[" + " ".join(str(j) for j in self.images) + "]"


def _translation(m: int, a: int) -> PermMatrix:
    return PermMatrix((j + a) % m for j in range(m))


def _scaling(m: int, a: int) -> PermMatrix:
    return PermMatrix((a * j) % m for j in range(m))


@dataclass(frozen=True)
class FiniteModel:
    m: int
    V: PermMatrix
    multipliers: dict

    @property
    def dim(self) -> int:
        return self.m

    def T(self, r: int) -> PermMatrix:
        try:
            return self.multipliers[r % self.m]
        except KeyError:
            raise AdmissibilityError(f"{r} is not invertible mod {self.m}") from None

    def Vp(self, n: int) -> PermMatrix:
        return self.V ** (n % self.m)

    def __hash__(self):
        return hash(self.m)


def build_cyclic_model(m: int) -> FiniteModel:
    """The modulus-``m`` model, with its relations checked exhaustively."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    V = _translation(m, 1)
    mults = {r: _scaling(m, r) for r in range(m) if gcd(r, m) == 1}
    powers = [PermMatrix.identity(m)]
    for _ in range(1, m):
        powers.append(powers[-1] @ V)
    for r, T in mults.items():
        for n in range(m):
            if T @ powers[n] != powers[r * n % m] @ T:
                raise AssertionError(f"covariance fails for r={r}, n={n}")
        for t, T2 in mults.items():
            if T @ T2 != mults[r * t % m]:
                raise AssertionError(f"multiplicativity fails for r={r}, t={t}")
    return FiniteModel(m, V, mults)


def _unit(model: FiniteModel, a: int, what: str) -> int:
    if gcd(a, model.m) != 1:
        raise AdmissibilityError(f"{what} {a} shares a factor with m={model.m}")
    return a


def extend_pair(model: FiniteModel, p: int, q: int, kind: str) -> PermMatrix:
    """Image of ``s_{p/q}`` or ``u_{p/q}`` computed from the (unreduced) pair ``(p, q)``."""
    T_q = model.T(_unit(model, q, "denominator"))
    if kind == "s":
        return model.T(_unit(model, p, "numerator")) @ T_q.adjoint()
    if kind == "u":
        return T_q.adjoint() @ model.Vp(p) @ T_q
    raise ValueError(f"kind must be 's' or 'u', got {kind!r}")


def _int_pair(f) -> tuple[int, int]:
    f = to_fraction(f)
    if f.ring != INTEGERS:
        raise ValueError("cyclic models extend fractions of Z only")
    return f.num.value, f.den.value


def extend_to_fractions(model: FiniteModel, f: Fraction, kind: str) -> PermMatrix:
    p, q = _int_pair(f)
    return extend_pair(model, p, q, kind)


def extend_literal(model: FiniteModel, f: Fraction) -> PermMatrix:
    """``T_q V^p T_q^*`` taken literally; it translates by ``p*q``, not ``p/q``."""
    p, q = _int_pair(f)
    T_q = model.T(_unit(model, q, "denominator"))
    return T_q @ model.Vp(p) @ T_q.adjoint()


def represent(model: FiniteModel, nf: NormalForm) -> PermMatrix:
    """``pi(u^N s_R) = V^N T_R``, or its extension when the entries are fractions."""
    if nf.is_fractional:
        return extend_to_fractions(model, nf.trans, "u") @ extend_to_fractions(model, nf.mult, "s")
    return model.Vp(nf.trans.value) @ model.T(nf.mult.value)


def admissible_fractions(model: FiniteModel, num_bound: int, den_bound: int, kind: str = "u") -> list[Fraction]:
    """Reduced fractions ``p/q`` with ``|p| <= num_bound``, ``1 <= q <= den_bound`` admissible for ``kind``."""
    seen: dict = {}
    for q in range(1, den_bound + 1):
        for p in range(-num_bound, num_bound + 1):
            f = fraction_make(INTEGERS(p), INTEGERS(q))
            a, b = f.num.value, f.den.value
            if gcd(b, model.m) != 1 or (kind == "s" and gcd(a, model.m) != 1):
                continue
            seen.setdefault(f, None)
    return list(seen)


def _s_ok(model: FiniteModel, f: Fraction) -> bool:
    return gcd(f.num.value, model.m) == 1 and gcd(f.den.value, model.m) == 1


def verify_quotient_relations(model: FiniteModel, sample: Iterable[tuple[Fraction, Fraction]]) -> Report:
    """Check the fraction-field relations on each pair ``(a, b)``.

    Translation identities need admissible denominators; the multiplier
    identities are checked whenever the relevant numerators are invertible too.
    """
    verified, violated = [], []
    for k, (a, b) in enumerate(sample):
        for f in (a, b):
            _unit(model, f.den.value, "denominator")
        ok = extend_to_fractions(model, a, "u") @ extend_to_fractions(model, b, "u") == \
            extend_to_fractions(model, a + b, "u")
        if _s_ok(model, a):
            s_a = extend_to_fractions(model, a, "s")
            ok &= s_a @ extend_to_fractions(model, b, "u") == extend_to_fractions(model, a * b, "u") @ s_a
            p, q = _int_pair(a)
            ok &= model.T(p) @ model.T(q).adjoint() == model.T(q).adjoint() @ model.T(p)
            if _s_ok(model, b):
                ok &= s_a @ extend_to_fractions(model, b, "s") == extend_to_fractions(model, a * b, "s")
        (verified if ok else violated).append(f"#{k}({a},{b})")
    return Report("quotient-relations", (("m", model.m),), f"Z/{model.m}", verified, violated)


def check_factorization(model: FiniteModel, n_random: int = 100, seed: int = 0) -> Report:
    """``tau o i = pi``: integer generators and random normal forms, evaluated directly
    and through the fraction field, must give identical permutations."""
    m = model.m
    verified, violated = [], []

    def record(label, ok):
        (verified if ok else violated).append(label)

    for n in range(m):
        record(f"u^{n}", extend_to_fractions(model, to_fraction(INTEGERS(n)), "u") == model.Vp(n))
    for p in sorted(model.multipliers):
        record(f"s_{p}", extend_to_fractions(model, to_fraction(INTEGERS(p)), "s") == model.T(p))
    rng = random.Random(seed)
    units = [r for r in range(-6 * m, 6 * m + 1) if r and gcd(r, m) == 1]
    for k in range(n_random):
        nf = NormalForm(INTEGERS(rng.choice(units)), INTEGERS(rng.randint(-6 * m, 6 * m)))
        record(f"nf#{k}{nf}", represent(model, nf) == represent(model, embed_in_quotient_field(nf)))
    literal_agrees = all(
        extend_literal(model, f) == extend_to_fractions(model, f, "u")
        for f in admissible_fractions(model, 6, 6)
    )
    notes = (
        f"seed={seed}",
        "u_{p/q} := T_q^* V^p T_q (translation by p/q)",
        f"literal T_q V^p T_q^* agrees on all |p|,q<=6: {literal_agrees}",
    )
    return Report("factorization", (("m", m),), f"Z/{m}", verified, violated, (), notes)


def generated_group(model: FiniteModel) -> set:
    """All permutations in the group generated by ``V`` and the ``T_r`` (breadth-first closure)."""
    gens = [model.V] + list(model.multipliers.values())
    seen = {PermMatrix.identity(model.m)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                k = h @ g
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return seen


def parse_perm(text: str) -> PermMatrix:
    return PermMatrix(int(t) for t in text.strip().strip("[]").split())

