"""Covariant representations of finite dynamical systems, and 2x2 nest representations.

Two covariance identities are distinguished for a shift ``S_t`` and a
function representation ``pi``:

    forward:   S_t pi(f) = pi(f o tau_t) S_t
    backward:  pi(f) S_t = S_t pi(f o tau_t)

The orbit representation on ``l^2(X x S)`` (basis ``e_(x,s)``, ``pi(f)`` diagonal
with entries ``f(tau_s(x))`` and ``S_t e_(x,s) = e_(x,ts)``) satisfies the
backward identity.  The regular representation of a ring, written on the dual
of ``Z/m`` where ``T_r`` permutes characters by ``k -> r^-1 k``, satisfies the
forward one.  :func:`check_covariance_orientation` decides which holds.
"""

from __future__ import annotations

import cmath
import itertools
import random
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction as Q
from math import gcd
from typing import Callable, Mapping, Sequence

import numpy as np

from .report import Report
from .rings import RingElement, RingId, canonical_associate, irreducibles
from .words import Generator, NormalForm, S, U, Word, normalize

__all__ = [
    "FiniteDynSys",
    "CovariantRep",
    "OrbitRep",
    "RingModelRep",
    "NestRep",
    "parse_system",
    "build_orbit_rep",
    "build_ring_model_rep",
    "check_covariance_orientation",
    "indicators",
    "build_nest_rep",
    "check_nest_multiplicativity",
    "nest_unitarity_deviation",
    "nest_covariance_deviation",
    "random_word_pairs",
    "distinguishes",
]

NEST_TOL = 1e-12


@dataclass(frozen=True)
class FiniteDynSys:
    """Commuting self-maps of a finite set ``points``; ``maps[name][k]`` is the image position of point ``k``."""

    points: tuple
    maps: tuple  # ((name, images), ...)

    def __post_init__(self):
        n = len(self.points)
        if len(set(self.points)) != n:
            raise ValueError("points must be distinct")
        for name, imgs in self.maps:
            if len(imgs) != n or any(not 0 <= j < n for j in imgs):
                raise ValueError(f"map {name} is not a self-map of the point set")
        for (a, fa), (b, fb) in itertools.combinations(self.maps, 2):
            for k in range(n):
                if fa[fb[k]] != fb[fa[k]]:
                    raise ValueError(f"maps {a} and {b} do not commute at {self.points[k]}")

    @classmethod
    def from_maps(cls, points: Sequence, maps: Mapping[str, Mapping]) -> FiniteDynSys:
        pts = tuple(points)
        pos = {x: k for k, x in enumerate(pts)}
        out = []
        for name, f in maps.items():
            if callable(f):
                out.append((name, tuple(pos[f(x)] for x in pts)))
            else:
                out.append((name, tuple(pos[f.get(x, x)] for x in pts)))
        return cls(pts, tuple(out))

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.maps]

    @property
    def commutative(self) -> bool:
        return True  # enforced at construction

    def _images(self, name: str) -> tuple:
        for n, imgs in self.maps:
            if n == name:
                return imgs
        raise KeyError(f"no generator named {name!r}")

    def tau(self, name: str, x):
        return self.points[self._images(name)[self.points.index(x)]]

    def tau_word(self, degrees: tuple, k: int) -> int:
        """Position of ``tau_s(x_k)`` for the monoid element with multidegree ``degrees``."""
        for (_, imgs), d in zip(self.maps, degrees):
            for _ in range(d):
                k = imgs[k]
        return k


def parse_system(text: str) -> FiniteDynSys:
    """Read ``name: x -> y, x -> y, ...`` lines (``#`` starts a comment).

    Points are the union of all labels seen; unmentioned points are fixed.
    Integer labels are read as ints.
    """
    maps: dict = {}
    points: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"([A-Za-z_][\w]*)\s*:\s*(.*)", line)
        if not m:
            raise ValueError(f"line {lineno}: expected 'name: x -> y, ...'")
        name, body = m.groups()
        pairs = {}
        for item in filter(None, (s.strip() for s in body.split(","))):
            pm = re.fullmatch(r"(\S+)\s*->\s*(\S+)", item)
            if not pm:
                raise ValueError(f"line {lineno}: bad pair {item!r}")
            a, b = (int(v) if re.fullmatch(r"-?\d+", v) else v for v in pm.groups())
            if a in pairs:
                raise ValueError(f"line {lineno}: {a} mapped twice")
            pairs[a] = b
            points.setdefault(a, None)
            points.setdefault(b, None)
        maps[name] = pairs
    if not maps:
        raise ValueError("no generators found")
    pts = list(points)
    if all(isinstance(x, int) for x in pts):
        pts.sort()
    return FiniteDynSys.from_maps(pts, maps)


def indicators(sys: FiniteDynSys) -> list[Callable]:
    return [(lambda x, y=y: 1.0 if x == y else 0.0) for y in sys.points]


class CovariantRep:
    """Common interface: ``pi(f)``, ``shift(t)`` and the columns where ``shift(t)`` is exact."""

    system: FiniteDynSys
    basis: list

    def pi(self, f: Callable) -> np.ndarray:
        raise NotImplementedError

    def shift(self, t: str) -> np.ndarray:
        raise NotImplementedError

    def conclusive(self, t: str) -> list[int]:
        raise NotImplementedError

    def label(self, k: int) -> str:
        return str(self.basis[k])


@dataclass
class OrbitRep(CovariantRep):
    system: FiniteDynSys
    L: int
    basis: list = field(default_factory=list)

    def __post_init__(self):
        k = len(self.system.maps)
        degs = [d for d in itertools.product(range(self.L + 1), repeat=k) if sum(d) <= self.L]
        degs.sort(key=lambda d: (sum(d), d))
        self.degrees = degs
        self.basis = [(x, d) for x in range(len(self.system.points)) for d in degs]
        self.index = {b: j for j, b in enumerate(self.basis)}

    def label(self, k: int) -> str:
        x, d = self.basis[k]
        return f"({self.system.points[x]},{'.'.join(map(str, d))})"

    def pi(self, f: Callable) -> np.ndarray:
        pts = self.system.points
        return np.diag([f(pts[self.system.tau_word(d, x)]) for x, d in self.basis])

    def _step(self, t: str, d: tuple) -> tuple | None:
        j = self.system.names.index(t)
        e = tuple(v + (1 if i == j else 0) for i, v in enumerate(d))
        return e if sum(e) <= self.L else None

    def shift(self, t: str) -> np.ndarray:
        n = len(self.basis)
        M = np.zeros((n, n))
        for col, (x, d) in enumerate(self.basis):
            e = self._step(t, d)
            if e is not None:
                M[self.index[(x, e)], col] = 1.0
        return M

    def conclusive(self, t: str) -> list[int]:
        return [col for col, (_, d) in enumerate(self.basis) if self._step(t, d) is not None]


def build_orbit_rep(sys: FiniteDynSys, L: int) -> OrbitRep:
    if L < 1:
        raise ValueError("truncation length must be >= 1")
    return OrbitRep(sys, L)


@dataclass
class RingModelRep(CovariantRep):
    """Cyclic model of modulus ``m`` in the character basis: ``pi(f)`` diagonal, ``T_r`` a permutation."""

    m: int
    multipliers: tuple

    def __post_init__(self):
        for r in self.multipliers:
            if gcd(r, self.m) != 1:
                raise ValueError(f"multiplier {r} is not invertible mod {self.m}")
        self.system = FiniteDynSys.from_maps(
            range(self.m), {f"r{r}": (lambda k, r=r: r * k % self.m) for r in self.multipliers}
        )
        self.basis = list(range(self.m))

    def pi(self, f: Callable) -> np.ndarray:
        return np.diag([f(k) for k in range(self.m)])

    def shift(self, t: str) -> np.ndarray:
        r = int(t[1:])
        inv = pow(r, -1, self.m)
        M = np.zeros((self.m, self.m))
        M[[inv * k % self.m for k in range(self.m)], range(self.m)] = 1.0
        return M

    def conclusive(self, t: str) -> list[int]:
        return list(range(self.m))

    def fourier_deviation(self, r: int) -> float:
        """Distance between ``F^* T_r F`` (``T_r: j -> rj`` on ``C^m``) and ``shift(r)``."""
        m = self.m
        w = np.exp(2j * np.pi / m)
        F = np.array([[w ** (k * j) for k in range(m)] for j in range(m)]) / np.sqrt(m)
        T = np.zeros((m, m))
        T[[r * j % m for j in range(m)], range(m)] = 1.0
        return float(np.abs(F.conj().T @ T @ F - self.shift(f"r{r}")).max())


def build_ring_model_rep(m: int, multipliers: Sequence[int]) -> RingModelRep:
    return RingModelRep(m, tuple(multipliers))


def check_covariance_orientation(rep: CovariantRep, fs: Sequence[Callable], t: str) -> tuple[str, Report, Report]:
    """Return ``(verdict, forward_report, backward_report)`` with verdict in
    ``forward``, ``backward``, ``both``, ``neither``."""
    cols = rep.conclusive(t)
    if not cols:
        raise ValueError(f"no conclusive columns for generator {t}")
    St = rep.shift(t)
    sys = rep.system
    bad_f = {c: False for c in cols}
    bad_b = {c: False for c in cols}
    for f in fs:
        P = rep.pi(f)
        Pt = rep.pi(lambda x, f=f: f(sys.tau(t, x)))
        fwd = (St @ P) != (Pt @ St)
        bwd = (P @ St) != (St @ Pt)
        for c in cols:
            bad_f[c] |= bool(fwd[:, c].any())
            bad_b[c] |= bool(bwd[:, c].any())
    reports = []
    for name, bad in (("forward", bad_f), ("backward", bad_b)):
        ver = [rep.label(c) for c in cols if not bad[c]]
        vio = [rep.label(c) for c in cols if bad[c]]
        rest = [rep.label(c) for c in range(len(rep.basis)) if c not in bad]
        reports.append(Report(f"covariance-{name}", (("t", t),), type(rep).__name__, ver, vio, rest))
    fwd_ok, bwd_ok = reports[0].ok, reports[1].ok
    verdict = {(True, True): "both", (True, False): "forward",
               (False, True): "backward", (False, False): "neither"}[(fwd_ok, bwd_ok)]
    return verdict, reports[0], reports[1]


# -- two-dimensional nest representations ---------------------------------------------------

E12 = np.array([[0, 1], [0, 0]], dtype=complex)


def _character(ring: RingId, theta) -> Callable[[RingElement], complex]:
    if ring.kind == "Z":
        if isinstance(theta, (Q, int)):
            t = Q(theta)
            return lambda n: cmath.exp(2j * cmath.pi * float((t * n.value) % 1))
        t = float(theta)
        return lambda n: cmath.exp(2j * cmath.pi * ((t * n.value) % 1.0))
    if ring.kind == "FPX":
        p, a = ring.p, int(theta) % ring.p

        def chi(f: RingElement) -> complex:
            v = 0
            for c in reversed(f.value):
                v = (v * a + c) % p
            return cmath.exp(2j * cmath.pi * v / p)
        return chi
    raise ValueError(f"nest representations are built for Z and F_p[x], not {ring}")


@dataclass
class NestRep:
    ring: RingId
    x: RingElement
    theta: object
    n_sample: list
    r_sample: list
    chi: Callable = field(repr=False, default=None)

    def u(self, n: RingElement) -> np.ndarray:
        return np.diag([self.chi(n), self.chi(self.x * n)])

    def s(self, r: RingElement) -> np.ndarray:
        if r.is_zero() or canonical_associate(r)[1] != r:
            raise ValueError(f"s_{r}: nest representations are defined on canonical associates")
        if r == self.ring.one:
            return np.eye(2, dtype=complex)
        if r == self.x:
            return E12.copy()
        return np.zeros((2, 2), dtype=complex)

    def gen(self, g: Generator) -> np.ndarray:
        return self.u(g.elem) if g.kind == "u" else self.s(g.elem)

    def nf(self, nf: NormalForm) -> np.ndarray:
        return self.u(nf.trans) @ self.s(nf.mult)

    def word(self, w: Word) -> np.ndarray:
        out = np.eye(2, dtype=complex)
        for g in w.letters:
            out = out @ self.gen(g)
        return out


def _is_irreducible(x: RingElement) -> bool:
    ring = x.ring
    if ring.kind == "Z":
        return x.value >= 2 and x in irreducibles(ring, x.value)
    if ring.kind == "FPX":
        return x.degree >= 1 and x in irreducibles(ring, x.degree)
    raise ValueError(f"irreducibility test not supported for {ring}")


def build_nest_rep(ring: RingId, x: RingElement, theta, n_sample: Sequence | None = None,
                   r_sample: Sequence | None = None) -> NestRep:
    """``u^n -> diag(chi(n), chi(xn))``, ``s_x -> E12``, ``s_1 -> 1`` and ``s_r -> 0`` otherwise."""
    if x.ring != ring or not _is_irreducible(x):
        raise ValueError(f"{x} is not an irreducible canonical associate of {ring}")
    chi = _character(ring, theta)
    if ring.kind == "Z" and theta % 1 == 0:
        warnings.warn(f"theta={theta} gives the trivial character", stacklevel=2)
    if n_sample is None:
        if ring.kind == "Z":
            n_sample = [ring(n) for n in range(-20, 21)]
        else:
            n_sample = [ring(tuple(c)) for c in itertools.product(range(ring.p), repeat=3)]
    if r_sample is None:
        bound = 13 if ring.kind == "Z" else 3
        r_sample = [ring.one] + irreducibles(ring, max(bound, x.value if ring.kind == "Z" else x.degree))
    if x not in r_sample:
        r_sample = list(r_sample) + [x]
    return NestRep(ring, x, theta, list(n_sample), list(r_sample), chi)


def nest_unitarity_deviation(rep: NestRep) -> float:
    eye = np.eye(2)
    return max(float(np.abs(rep.u(n).conj().T @ rep.u(n) - eye).max()) for n in rep.n_sample)


def nest_covariance_deviation(rep: NestRep) -> float:
    """max over sampled ``n`` of ``|pi(s_x) pi(u^n) - pi(u^{xn}) pi(s_x)|`` (entrywise)."""
    sx = rep.s(rep.x)
    return max(float(np.abs(sx @ rep.u(n) - rep.u(rep.x * n) @ sx).max()) for n in rep.n_sample)


def random_word_pairs(rep: NestRep, count: int, seed: int = 0, max_len: int = 6) -> list[tuple[Word, Word]]:
    rng = random.Random(seed)

    def word():
        letters = []
        for _ in range(rng.randint(0, max_len)):
            if rng.random() < 0.5:
                letters.append(U(rng.choice(rep.n_sample)))
            else:
                letters.append(S(rng.choice(rep.r_sample)))
        return Word(rep.ring, letters)

    return [(word(), word()) for _ in range(count)]


def check_nest_multiplicativity(rep: NestRep, pairs: Sequence[tuple[Word, Word]]) -> float:
    """max over pairs of ``|pi(w1) pi(w2) - pi(normalize(w1 w2))|`` (entrywise modulus)."""
    dev = 0.0
    for w1, w2 in pairs:
        lhs = rep.word(w1) @ rep.word(w2)
        rhs = rep.nf(normalize(w1 * w2))
        dev = max(dev, float(np.abs(lhs - rhs).max()))
    return dev


def distinguishes(rep1: NestRep, rep2: NestRep) -> bool:
    """The reps send ``s_{x1}`` to different matrices (one the matrix unit, the other 0)."""
    a, b = rep1.s(rep1.x), rep2.s(rep1.x)
    return not np.array_equal(a, b)
