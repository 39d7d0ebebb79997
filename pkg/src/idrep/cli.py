"""Command-line front end.

Every subcommand prints a deterministic report to standard output, one
``key: value`` line per field (``--format structured`` switches to
``key=value``).  Exit status: 0 on success, 1 if any check is violated,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction as Q
from pathlib import Path

from . import covariant, duals, finitemodels, regrep
from .report import Report
from .rings import (
    INTEGERS,
    RingId,
    enumerate_window,
    fraction_window,
    parse_element,
    parse_fraction,
    parse_ring,
)
from .words import Generator, Word, act_affine, normalize

__all__ = ["WordSyntaxError", "parse_word", "format_word", "build_parser", "run", "main"]


class WordSyntaxError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


def _parse_elem(text: str, ring: RingId):
    if "/" in text:
        f = parse_fraction(text, ring)
        return f
    return parse_element(text, ring)


def parse_word(src: str, ring: RingId) -> Word:
    """Parse ``term (* term)*`` with ``term = u[<elem>] | s[<elem>]``; columns are 1-based."""
    letters = []
    k, n = 0, len(src)

    def skip():
        nonlocal k
        while k < n and src[k].isspace():
            k += 1

    skip()
    if k == n:
        return Word(ring, ())
    while True:
        skip()
        if k >= n or src[k] not in "us":
            raise WordSyntaxError("expected 'u[' or 's['", k + 1)
        kind = src[k]
        k += 1
        skip()
        if k >= n or src[k] != "[":
            raise WordSyntaxError("expected '['", k + 1)
        start = k + 1
        close = src.find("]", start)
        if close < 0:
            raise WordSyntaxError("unclosed '['", k + 1)
        body = src[start:close]
        try:
            elem = _parse_elem(body, ring)
        except (ValueError, ZeroDivisionError) as e:
            raise WordSyntaxError(f"bad element {body.strip()!r}: {e}", start + 1) from None
        if kind == "s" and elem.is_zero():
            raise WordSyntaxError("s[0] is not allowed: s_r needs r != 0", start + 1)
        letters.append(Generator(kind, elem))
        k = close + 1
        skip()
        if k == n:
            return Word(ring, tuple(letters))
        if src[k] != "*":
            raise WordSyntaxError("expected '*' between terms", k + 1)
        k += 1


def format_word(w: Word) -> str:
    return str(w)


# -- output ----------------------------------------------------------------------------


def _emit(items, fmt: str, out) -> None:
    sep = "=" if fmt == "structured" else ": "
    for key, value in items:
        out.write(f"{key}{sep}{value}\n")


def _report_items(rep: Report, prefix: str = ""):
    return [(prefix + k, v) for k, v in rep.items()]


# -- subcommands -------------------------------------------------------------------------


def _cmd_normalize(a, out):
    ring = parse_ring(a.ring)
    w = parse_word(a.word, ring)
    nf = normalize(w)
    return 0, [("ring", str(ring)), ("word", str(w) or "(empty)"), ("mult", str(nf.mult)),
               ("trans", str(nf.trans))]


def _cmd_act(a, out):
    ring = parse_ring(a.ring)
    nf = normalize(parse_word(a.word, ring))
    q = _parse_elem(a.at, ring)
    return 0, [("ring", str(ring)), ("normal_form", str(nf)), ("at", str(q)),
               ("value", str(act_affine(nf, q)))]


def _window(ring: RingId, bound):
    if ring.kind == "FP":
        return enumerate_window(ring)
    if bound is None:
        raise ValueError(f"--window is required for {ring}")
    return enumerate_window(ring, bound)


def _cmd_check(a, out):
    ring = parse_ring(a.ring)
    el = lambda v, name: parse_element(v, ring) if v is not None else _missing(name)  # noqa: E731
    if a.relation == "compression":
        wr = _window(ring, a.window)
        wq = fraction_window(ring, a.num_bound or 6 * (a.window or 1), a.den_bound)
        n = parse_element(a.n, ring) if a.n is not None else None
        rep = regrep.check_compression(el(a.r, "--r"), wr, wq, n)
    else:
        needed = {"mul-S": ("r", "t"), "add-U": ("n", "m"), "covariance": ("r", "n"),
                  "covariance-as-stated": ("r", "n"), "isometry": ("r",), "unit-unitarity": ("r",)}
        params = {k: el(getattr(a, k), f"--{k}") for k in needed[a.relation]}
        rep = regrep.check_relation(a.relation, params, _window(ring, a.window))
    return (1 if rep.violated else 0), rep.items()


def _missing(name):
    raise ValueError(f"{name} is required for this relation")


def _cmd_orbits(a, out):
    if (a.p is None) == (a.m is None):
        raise ValueError("give exactly one of --p (prime) or --m (any modulus)")
    dec = duals.dual_action_orbits(a.p) if a.p is not None else duals.multiplicative_orbits(a.m)
    items = [("modulus", str(dec.p)), ("orbit_count", str(len(dec.orbits)))]
    items += [(f"orbit.{k}", " ".join(map(str, o))) for k, o in enumerate(dec.orbits)]
    items += [("fixed_points", " ".join(map(str, dec.fixed_points))),
              ("transitive_off_zero", str(dec.transitive_off_zero).lower())]
    return 0, items


def _cmd_decompose(a, out):
    dec = duals.affine_group_algebra_decomposition(a.p, a.seed)
    return 0, dec.items()


def _cmd_model(a, out):
    model = finitemodels.build_cyclic_model(a.m)
    items = [("m", str(a.m)), ("V", str(model.V))]
    items += [(f"T_{r}", str(T)) for r, T in sorted(model.multipliers.items())]
    code = 0
    if a.extend is not None:
        c, more = _extend(model, a.extend, a.kind)
        items += more
    if a.verify:
        us = finitemodels.admissible_fractions(model, 6, 6)
        rel = finitemodels.verify_quotient_relations(model, [(x, y) for x in us for y in us])
        fac = finitemodels.check_factorization(model, seed=a.seed)
        items += _report_items(rel, "relations.") + _report_items(fac, "factorization.")
        code = 1 if (rel.violated or fac.violated) else 0
    return code, items


def _extend(model, text, kind):
    f = parse_fraction(text, INTEGERS)
    perm = finitemodels.extend_to_fractions(model, f, kind)
    items = [("fraction", str(f)), ("kind", kind), ("image", str(perm))]
    if kind == "u":
        lit = finitemodels.extend_literal(model, f)
        items += [("literal_T_q_V^p_T_q*", str(lit)), ("conventions_agree", str(lit == perm).lower())]
    return 0, items


def _cmd_extend(a, out):
    model = finitemodels.build_cyclic_model(a.m)
    code, items = _extend(model, a.fraction, a.kind)
    return code, [("m", str(a.m))] + items


def _cmd_witness(a, out):
    ring = parse_ring(a.ring)
    gens = [parse_element(g, ring) for g in a.gens.split(",") if g.strip()] if a.gens else []
    w = duals.monoid_generation_witness(ring, gens, a.bound)
    return 0, w.items() + [("independent_recheck", str(duals.recheck_witness(w)).lower())]


def _theta(text: str, ring: RingId):
    if ring.kind != "Z":
        return int(text)
    return float(text) if "." in text or "e" in text.lower() else Q(text)


def _cmd_nest(a, out):
    ring = parse_ring(a.ring)
    x = parse_element(a.x, ring)
    rep = covariant.build_nest_rep(ring, x, _theta(a.theta, ring))
    items = [("ring", str(ring)), ("x", str(x)), ("theta", a.theta),
             ("s_x", "E12"), ("n_sample", str(len(rep.n_sample))),
             ("r_sample", " ".join(str(r) for r in rep.r_sample))]
    code = 0
    if a.check:
        pairs = covariant.random_word_pairs(rep, a.pairs, a.seed)
        devs = {
            "unitarity": covariant.nest_unitarity_deviation(rep),
            "covariance": covariant.nest_covariance_deviation(rep),
            "multiplicativity": covariant.check_nest_multiplicativity(rep, pairs),
        }
        items += [("seed", str(a.seed)), ("pairs", str(a.pairs))]
        for k, v in devs.items():
            items.append((f"deviation.{k}", f"{v:.3e}"))
        ok = all(v <= covariant.NEST_TOL for v in devs.values())
        items.append(("verdict", "pass" if ok else "fail"))
        code = 0 if ok else 1
    return code, items


def _cmd_cov(a, out):
    if (a.system is None) == (a.ring_model is None):
        raise ValueError("give exactly one of --system FILE or --ring-model M")
    if a.system is not None:
        sys_ = covariant.parse_system(Path(a.system).read_text())
        rep = covariant.build_orbit_rep(sys_, a.L)
        names = [a.t] if a.t else sys_.names
    else:
        mults = [int(r) for r in a.r.split(",")] if a.r else [2]
        rep = covariant.build_ring_model_rep(a.ring_model, mults)
        sys_ = rep.system
        names = [a.t] if a.t else sys_.names
    items = [("representation", type(rep).__name__)]
    code = 0
    for t in names:
        verdict, fwd, bwd = covariant.check_covariance_orientation(rep, covariant.indicators(sys_), t)
        items.append((f"{t}.orientation", verdict))
        items += _report_items(fwd, f"{t}.forward.") + _report_items(bwd, f"{t}.backward.")
        if verdict == "neither":
            code = 1
    return code, items


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="idrep", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("text", "structured"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="reduce a word to (mult, trans)")
    p.add_argument("--ring", default="z", help="z, zi, fp:<p>, fpx:<p>")
    p.add_argument("word", nargs="?", default="", help="e.g. 'u[1]*s[2]*u[3]*s[5]'")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("act", help="apply a word to a basis label")
    p.add_argument("--ring", default="z")
    p.add_argument("word", nargs="?", default="")
    p.add_argument("--at", required=True, help="label q (element or p/q)")
    p.set_defaults(func=_cmd_act)

    p = sub.add_parser("check", help="check a relation on a finite window")
    p.add_argument("--ring", default="z")
    p.add_argument("--relation", required=True, choices=regrep.RELATIONS + ("compression",))
    for name in ("r", "t", "n", "m"):
        p.add_argument(f"--{name}")
    p.add_argument("--window", type=int, help="bound B (degree for polynomials); ignored for fp")
    p.add_argument("--num-bound", type=int, help="compression: value bound of the fraction window")
    p.add_argument("--den-bound", type=int, default=6, help="compression: denominator bound")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("orbits", help="orbits of the multiplicative action on Z/p")
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int, help="composite modulus (unit-group action)")
    p.set_defaults(func=_cmd_orbits)

    p = sub.add_parser("decompose", help="block dimensions of the affine group algebra of F_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("model", help="cyclic unitary model of modulus m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--extend", help="fraction p/q to extend")
    p.add_argument("--kind", choices=("s", "u"), default="u")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_model)

    p = sub.add_parser("extend", help="image of s_{p/q} or u_{p/q} in a cyclic model")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--fraction", required=True)
    p.add_argument("--kind", choices=("s", "u"), default="u")
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("witness", help="element outside a finitely generated submonoid")
    p.add_argument("--ring", default="f2x")
    p.add_argument("--gens", default="", help="comma separated canonical associates")
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("nest", help="two-dimensional nest representation")
    p.add_argument("--ring", default="z")
    p.add_argument("--x", required=True)
    p.add_argument("--theta", required=True, help="1/3, 0.3 (Z) or an evaluation point (F_p[x])")
    p.add_argument("--check", action="store_true")
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_nest)

    p = sub.add_parser("cov", help="covariance orientation of a covariant representation")
    p.add_argument("--system", help="file with lines 'name: x -> y, ...'")
    p.add_argument("--L", type=int, default=3)
    p.add_argument("--t", help="generator name (default: all)")
    p.add_argument("--ring-model", type=int, metavar="M", help="use the cyclic ring model of modulus M")
    p.add_argument("--r", help="ring model multipliers, comma separated")
    p.set_defaults(func=_cmd_cov)
    return ap


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, items = args.func(args, out)
    except (ValueError, ZeroDivisionError, KeyError, OSError) as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"idrep {args.command}: error: {e}\n")
        return 2
    _emit(items, args.format, out)
    return code


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as e:  # argparse usage errors
        return int(e.code or 0)


if __name__ == "__main__":
    sys.exit(main())
