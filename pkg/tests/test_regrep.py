import pytest
from hypothesis import given, strategies as st

from idrep.regrep import (
    PartialInjection,
    check_compression,
    check_relation,
    convergence_bound,
    rep_generator,
    rep_word,
    separation_test,
    unitary_regular_rep,
)
from idrep.rings import INTEGERS as Z, enumerate_window, fraction_window, parse_fraction, prime_field, to_fraction
from idrep.words import NormalForm, S, U, Word

F5 = prime_field(5)
W3 = enumerate_window(Z, 3)
EXAMPLE = Word.of(Z, U(Z(1)), S(Z(2)), U(Z(3)), S(Z(5)))


def test_generator_on_window():
    u1 = rep_generator(U(Z(1)), W3)
    assert u1.as_dict() == {Z(q): Z(q + 1) for q in range(-3, 3)}
    assert rep_generator(S(Z(1)), W3) == PartialInjection.identity(W3)


def test_word_on_window():
    assert rep_word(Word(Z), W3) == PartialInjection.identity(W3)
    assert rep_word(EXAMPLE, enumerate_window(Z, 30)).apply(Z(1)) == 17
    assert rep_word(EXAMPLE, enumerate_window(Z, 5)).apply(Z(1)) is None


def test_adjoint_examples():
    s2 = rep_generator(S(Z(2)), W3)
    assert s2.adjoint().as_dict() == {Z(-2): Z(-1), Z(0): Z(0), Z(2): Z(1)}
    w = enumerate_window(F5)
    inv = rep_generator(S(F5(2)), w).adjoint()
    assert inv.is_bijection() and inv == rep_generator(S(F5(3)), w)


def test_relation_examples():
    rep = check_relation("covariance", {"r": F5(2), "n": F5(1)}, enumerate_window(F5))
    assert len(rep.verified) == 5 and rep.verdict == "pass"
    rep = check_relation("covariance", {"r": Z(2), "n": Z(1)}, enumerate_window(Z, 10))
    assert rep.verdict == "pass" and not rep.violated and rep.inconclusive
    assert Z(0) in rep.verified and Z(10) in rep.inconclusive
    assert check_relation("isometry", {"r": Z(3)}, enumerate_window(Z, 10)).verdict == "pass"


def test_stated_orientation_fails_on_integers():
    rep = check_relation("covariance-as-stated", {"r": Z(2), "n": Z(1)}, enumerate_window(Z, 10))
    assert rep.verdict == "fail" and Z(0) in rep.violated


def test_separation_examples():
    a = NormalForm(Z(2), Z(0))
    assert separation_test(a, a, enumerate_window(Z, 5)) is None
    assert separation_test(a, NormalForm(Z(1), Z(1)), enumerate_window(Z, 5)) == 0


def test_unitary_rep_on_fractions():
    wq = fraction_window(Z, 2, 2)
    s2 = unitary_regular_rep(S(Z(2)), wq)
    f = lambda t: parse_fraction(t, Z)  # noqa: E731
    assert s2.apply(f("1/2")) == 1 and s2.apply(f("1")) == 2 and s2.apply(f("-1/2")) == -1
    assert unitary_regular_rep(S(Z(1)), wq) == PartialInjection.identity(wq)


def test_compression_examples():
    wq = fraction_window(Z, 2, 2)
    assert check_compression(Z(2), enumerate_window(Z, 2), wq).verdict == "pass"
    assert check_compression(Z(1), enumerate_window(Z, 2), wq).verdict == "pass"
    assert check_compression(Z(1), enumerate_window(Z, 2), wq, n=Z(1)).verdict == "pass"


def test_non_unit_is_not_surjective():
    s2 = rep_generator(S(Z(2)), enumerate_window(Z, 10))
    assert Z(1) in s2.missing_points() and not s2.is_bijection()
    with pytest.raises(ValueError):
        check_relation("unit-unitarity", {"r": Z(2)}, enumerate_window(Z, 3))
    assert check_relation("unit-unitarity", {"r": Z(-1)}, enumerate_window(Z, 3)).verdict == "pass"


def test_truncation_convergence():
    assert convergence_bound("covariance", {"r": Z(2), "n": Z(3)}, Z(5)) == 16


# -- invariants --------------------------------------------------------------------------

maps = st.lists(st.integers(-4, 4), min_size=9, max_size=9)
W4 = enumerate_window(Z, 4)


def _pinj(images):
    seen, out = set(), []
    for j in images:
        j = j + 4
        out.append(None if j in seen or j < 0 else j)
        seen.add(j)
    return PartialInjection(W4, out)


@given(maps, maps, maps)
def test_partial_injection_laws(a, b, c):
    p, q, r = _pinj(a), _pinj(b), _pinj(c)
    assert (p @ q) @ r == p @ (q @ r)
    assert p.adjoint().adjoint() == p
    assert (p @ q).adjoint() == q.adjoint() @ p.adjoint()
    assert p @ p.adjoint() @ p == p


@given(st.integers(-20, 20).filter(bool), st.integers(-20, 20))
def test_covariance_never_violated(r, n):
    rep = check_relation("covariance", {"r": Z(r), "n": Z(n)}, enumerate_window(Z, 25))
    assert not rep.violated


@given(st.sampled_from([2, 3, 5, 7, 11]), st.data())
def test_field_windows_are_exact(p, data):
    F = prime_field(p)
    r = F(data.draw(st.integers(1, p - 1)))
    w = enumerate_window(F)
    s = rep_generator(S(r), w)
    assert s.is_bijection()
    assert check_relation("unit-unitarity", {"r": r}, w).verdict == "pass"
