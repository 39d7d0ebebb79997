"""Finite-field dual dynamics, unit groups and the monoid of associates.

For ``R = F_p`` the additive group is self-dual via ``k -> (n -> e^{2 pi i kn/p})``
and the multiplicative action dualises to ``k -> lambda*k``.  Everything here
is exact except :func:`affine_group_algebra_decomposition`, which diagonalises
a central element of the group algebra of the affine group ``q -> rq + n``
numerically and clusters its spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt

import numpy as np

from .rings import (
    INTEGERS,
    RingElement,
    RingId,
    canonical_associate,
    divides,
    exact_div,
    is_prime,
)

__all__ = [
    "OrbitDecomposition",
    "BlockDecomposition",
    "GenerationWitness",
    "ClusteringError",
    "WitnessNotFound",
    "dual_action_orbits",
    "multiplicative_orbits",
    "unit_group",
    "monoid_elements",
    "is_generated",
    "monoid_generation_witness",
    "recheck_witness",
    "affine_group_algebra_decomposition",
    "affine_conjugacy_classes",
]

MAX_DECOMPOSITION_PRIME = 31


@dataclass(frozen=True)
class OrbitDecomposition:
    p: int
    orbits: tuple

    @property
    def fixed_points(self) -> list[int]:
        return [o[0] for o in self.orbits if len(o) == 1]

    @property
    def transitive_off_zero(self) -> bool:
        """True iff the nonzero residues form a single orbit."""
        return len(self.orbits) == 2 and self.orbits[0] == (0,)


def multiplicative_orbits(m: int) -> OrbitDecomposition:
    """Orbits of the unit group of ``Z/m`` acting on ``Z/m`` by multiplication."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    units = [u for u in range(1, m) if gcd(u, m) == 1]
    seen = [False] * m
    orbits = []
    for k in range(m):
        if seen[k]:
            continue
        orbit, frontier = {k}, [k]
        while frontier:
            j = frontier.pop()
            for u in units:
                i = u * j % m
                if i not in orbit:
                    orbit.add(i)
                    frontier.append(i)
        for j in orbit:
            seen[j] = True
        orbits.append(tuple(sorted(orbit)))
    return OrbitDecomposition(m, tuple(orbits))


def dual_action_orbits(p: int) -> OrbitDecomposition:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return multiplicative_orbits(p)


@dataclass(frozen=True)
class UnitGroup:
    ring: RingId
    elements: tuple

    @property
    def order(self) -> int:
        return len(self.elements)


def unit_group(ring: RingId) -> UnitGroup:
    k = ring.kind
    if k == "Z":
        els = (ring(1), ring(-1))
    elif k == "ZI":
        els = (ring(1), ring(-1), ring((0, 1)), ring((0, -1)))
    else:
        els = tuple(ring(c) for c in range(1, ring.p))
    return UnitGroup(ring, els)


# -- the monoid M(R) of canonical associates ---------------------------------------------


def _check_monoid_ring(ring: RingId):
    if ring.kind not in ("Z", "FPX"):
        raise ValueError(f"M(R) search supports Z and F_p[x], not {ring}")


def monoid_elements(ring: RingId, bound: int):
    """Canonical associates up to ``bound`` in a fixed order.

    Z: ``1, 2, ..., bound``.  F_p[x]: monic polynomials of degree ``<= bound``
    ordered by degree, then by base-``p`` coefficient code.
    """
    _check_monoid_ring(ring)
    if ring.kind == "Z":
        for n in range(1, bound + 1):
            yield ring(n)
        return
    p = ring.p
    for d in range(bound + 1):
        for code in range(p ** d):
            coeffs = []
            for _ in range(d):
                code, c = divmod(code, p)
                coeffs.append(c)
            yield ring(tuple(coeffs) + (1,))


def _size(e: RingElement) -> int:
    return e.value if e.ring.kind == "Z" else e.degree


def is_generated(e: RingElement, gens, trace: list | None = None, _memo=None) -> bool:
    """Whether ``e`` is a product of ``gens`` (repetition allowed), by exhaustive division."""
    if _memo is None:
        _memo = {}
    if e in _memo:
        return _memo[e]
    if e == e.ring.one:
        _memo[e] = True
        return True
    ok = False
    for g in gens:
        if g == g.ring.one:
            continue
        if divides(g, e):
            rest = exact_div(e, g)
            if is_generated(rest, gens, None, _memo):
                ok = True
                if trace is not None:
                    trace.append(f"{g} | {e}, cofactor {rest} generated")
                break
            if trace is not None:
                trace.append(f"{g} | {e}, cofactor {rest} not generated")
        elif trace is not None:
            trace.append(f"{g} does not divide {e}")
    _memo[e] = ok
    return ok


@dataclass(frozen=True)
class GenerationWitness:
    ring: RingId
    candidate_gens: tuple
    witness: RingElement
    certificate: tuple = ()
    proof_candidate: RingElement | None = None
    proof_candidate_outside: bool = False
    search_bound: int = 0
    notes: tuple = field(default=())

    def items(self) -> list[tuple[str, str]]:
        out = [
            ("ring", str(self.ring)),
            ("gens", ",".join(str(g) for g in self.candidate_gens) or "(none)"),
            ("bound", str(self.search_bound)),
            ("witness", str(self.witness)),
            ("proof_candidate", str(self.proof_candidate)),
            ("proof_candidate_outside", str(self.proof_candidate_outside).lower()),
        ]
        out += [(f"certificate.{k}", line) for k, line in enumerate(self.certificate)]
        return out


class WitnessNotFound(RuntimeError):
    """No element outside the generated monoid exists within the search bound."""


def monoid_generation_witness(ring: RingId, gens, search_bound: int) -> GenerationWitness:
    """Smallest canonical associate within ``search_bound`` not generated by ``gens``.

    The construction ``1 + prod(gens)`` is evaluated as well and reported with
    a flag saying whether it lies outside the generated monoid.
    """
    _check_monoid_ring(ring)
    gens = tuple(gens)
    for g in gens:
        if g.ring != ring or g.is_zero() or canonical_associate(g)[1] != g:
            raise ValueError(f"generator {g} is not a canonical associate of {ring}")
    prod = ring.one
    for g in gens:
        prod = prod * g
    candidate = prod + ring.one
    if candidate.is_zero():
        candidate, cand_outside = None, False
    else:
        candidate = canonical_associate(candidate)[1]
        cand_outside = not is_generated(candidate, gens)
    memo: dict = {}
    for e in monoid_elements(ring, search_bound):
        if not is_generated(e, gens, None, memo):
            trace: list = []
            is_generated(e, gens, trace)
            if not gens:
                trace.append("no generators: only 1 is generated")
            return GenerationWitness(ring, gens, e, tuple(trace), candidate, cand_outside, search_bound)
    raise WitnessNotFound(f"every element up to {search_bound} is generated by {gens}")


def recheck_witness(w: GenerationWitness) -> bool:
    """Independent check: enumerate all products of the generators up to the witness size."""
    limit = _size(w.witness)
    gens = [g for g in w.candidate_gens if g != w.ring.one and _size(g) > 0]
    products = {w.ring.one}
    frontier = [w.ring.one]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a * g
                within = b.value <= limit if w.ring.kind == "Z" else b.degree <= limit
                if within and b not in products:
                    products.add(b)
                    nxt.append(b)
        frontier = nxt
    return w.witness not in products


# -- block decomposition of the affine group algebra over F_p ------------------------------


class ClusteringError(RuntimeError):
    """Eigenvalue clusters could not be separated within tolerance."""


@dataclass(frozen=True)
class BlockDecomposition:
    p: int
    dims: tuple
    residuals: tuple
    seed: int
    n_classes: int
    notes: tuple = ()

    def items(self) -> list[tuple[str, str]]:
        out = [
            ("p", str(self.p)),
            ("seed", str(self.seed)),
            ("group_order", str(self.p * (self.p - 1))),
            ("conjugacy_classes", str(self.n_classes)),
            ("dims", " ".join(str(d) for d in self.dims)),
            ("sum_of_squares", str(sum(d * d for d in self.dims))),
            ("max_residual", f"{max(self.residuals):.3e}"),
        ]
        out += [(f"note.{k}", n) for k, n in enumerate(self.notes)]
        return out


def _affine_elements(p: int) -> list[tuple[int, int]]:
    return [(r, n) for r in range(1, p) for n in range(p)]


def affine_conjugacy_classes(p: int) -> list[list[int]]:
    """Conjugacy classes of ``{q -> rq + n}`` as lists of element indices (brute force)."""
    els = _affine_elements(p)
    index = {g: k for k, g in enumerate(els)}
    seen = [False] * len(els)
    classes = []
    for k, (r, n) in enumerate(els):
        if seen[k]:
            continue
        cls = set()
        for s, m in els:
            # (s,m) o (r,n) o (s,m)^-1 = (r, s*n + m - r*m)
            cls.add(index[(r, (s * n + m - r * m) % p)])
        for j in cls:
            seen[j] = True
        classes.append(sorted(cls))
    return classes


def affine_group_algebra_decomposition(p: int, seed: int = 0, tol: float = 1e-9) -> BlockDecomposition:
    """Block dimensions of the group algebra of the affine group of ``F_p``.

    A random class function ``c`` (complex coefficients) defines a central element
    ``z``; its self-adjoint part ``h = z + z^*`` acts on the left-regular
    representation as a scalar on each isotypic component, so the eigenvalue
    clusters of ``h`` have multiplicity ``d^2`` for a block ``M_d``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > MAX_DECOMPOSITION_PRIME:
        raise ValueError(f"p={p} exceeds the desk-scale limit {MAX_DECOMPOSITION_PRIME}")
    els = _affine_elements(p)
    N = len(els)
    rng = np.random.default_rng(seed)
    classes = affine_conjugacy_classes(p)
    coef = np.zeros(N, dtype=complex)
    for cls in classes:
        coef[cls] = rng.normal() + 1j * rng.normal()
    r = np.array([g[0] for g in els])
    n = np.array([g[1] for g in els])
    # composition table: comp[g, x] = index of g o x = (r_g r_x, r_g n_x + n_g)
    rr = (r[:, None] * r[None, :]) % p
    nn = (r[:, None] * n[None, :] + n[:, None]) % p
    comp = (rr - 1) * p + nn
    L = np.zeros((N, N), dtype=complex)
    cols = np.broadcast_to(np.arange(N), (N, N))
    L[comp, cols] = coef[:, None]
    h = L + L.conj().T
    h /= max(np.abs(h).max(), 1.0)
    vals, vecs = np.linalg.eigh(h)
    residual_vec = np.abs(h @ vecs - vecs * vals).max(axis=0)

    gap = max(1e3 * tol, 1e-6)
    clusters: list[list[int]] = [[0]]
    for k in range(1, N):
        if vals[k] - vals[k - 1] > gap:
            clusters.append([k])
        else:
            clusters[-1].append(k)
    dims, residuals = [], []
    for cl in clusters:
        spread = float(vals[cl[-1]] - vals[cl[0]])
        res = max(spread, float(residual_vec[cl].max()))
        d = isqrt(len(cl))
        if d * d != len(cl):
            raise ClusteringError(f"cluster of multiplicity {len(cl)} is not a square (p={p}, seed={seed})")
        if res > tol:
            raise ClusteringError(f"cluster residual {res:.2e} exceeds {tol:.0e} (p={p}, seed={seed})")
        dims.append(d)
        residuals.append(res)
    if len(dims) != len(classes):
        raise ClusteringError(f"{len(dims)} clusters for {len(classes)} conjugacy classes")
    order = sorted(range(len(dims)), key=lambda k: dims[k])
    dims = [dims[k] for k in order]
    residuals = [residuals[k] for k in order]
    ones = sum(1 for d in dims if d == 1)
    notes = (
        f"{ones} one-dimensional blocks; C + simple would have exactly one",
    )
    return BlockDecomposition(p, tuple(dims), tuple(residuals), seed, len(classes), notes)
