from math import gcd

import pytest
from hypothesis import given, strategies as st

from idrep.finitemodels import (
    AdmissibilityError,
    PermMatrix,
    admissible_fractions,
    build_cyclic_model,
    check_factorization,
    extend_pair,
    extend_to_fractions,
    extend_literal,
    generated_group,
    parse_perm,
    represent,
    verify_quotient_relations,
)
from idrep.rings import INTEGERS as Z, parse_fraction, to_fraction
from idrep.words import NormalForm, embed_in_quotient_field

M5, M7 = build_cyclic_model(5), build_cyclic_model(7)
f = lambda t: parse_fraction(t, Z)  # noqa: E731


def translation(m, a):
    return PermMatrix((j + a) % m for j in range(m))


def scaling(m, a):
    return PermMatrix((a * j) % m for j in range(m))


def test_trivial_model():
    m1 = build_cyclic_model(1)
    assert m1.V == PermMatrix.identity(1)


def test_covariance_in_model():
    assert M5.T(2) @ M5.V == (M5.V ** 2) @ M5.T(2)


def test_extension_examples():
    assert extend_to_fractions(M5, f("1/1"), "s") == PermMatrix.identity(5)
    assert extend_to_fractions(M5, f("1/2"), "s") == scaling(5, 3)
    assert extend_to_fractions(M5, f("1/2"), "u") == translation(5, 3)
    assert extend_to_fractions(M5, f("2/1"), "s") == M5.T(2)
    assert extend_to_fractions(M5, f("0/1"), "u") == PermMatrix.identity(5)


def test_literal_formula_translates_by_product():
    assert extend_literal(M5, f("1/2")) == translation(5, 2)


def test_quotient_relation_examples():
    rep = verify_quotient_relations(M5, [(f("1/2"), f("1/3"))])
    assert rep.verdict == "pass"
    assert extend_to_fractions(M5, f("1/2"), "u") @ extend_to_fractions(M5, f("1/3"), "u") == PermMatrix.identity(5)
    assert verify_quotient_relations(M5, [(f("1"), f("1"))]).verdict == "pass"
    a, b = f("2/3"), f("1/2")
    s_a = extend_to_fractions(M7, a, "s")
    assert s_a @ extend_to_fractions(M7, b, "u") == extend_to_fractions(M7, a * b, "u") @ s_a


def test_factorization_example():
    nf = NormalForm(Z(3), Z(2))
    assert represent(M7, nf) == (M7.V ** 2) @ M7.T(3) == represent(M7, embed_in_quotient_field(nf))
    rep = check_factorization(M7, seed=3)
    assert rep.verdict == "pass" and "seed=3" in rep.notes


def test_admissibility():
    with pytest.raises(AdmissibilityError):
        extend_to_fractions(M5, f("1/5"), "u")
    with pytest.raises(AdmissibilityError):
        extend_to_fractions(M5, f("5/2"), "s")
    assert f("5/2") in admissible_fractions(M5, 6, 6, "u")
    assert f("5/2") not in admissible_fractions(M5, 6, 6, "s")


def test_surjectivity_onto_generated_group():
    # every element of the group generated by V and the T_r is an affine map j -> r j + n
    group = generated_group(M7)
    assert len(group) == 7 * 6
    images = {represent(M7, embed_in_quotient_field(NormalForm(Z(r), Z(n)))) for r in range(1, 7) for n in range(7)}
    assert images == group


def test_perm_text_round_trip():
    p = scaling(7, 3)
    assert parse_perm(str(p)) == p
    assert (p.matrix() @ p.adjoint().matrix() == PermMatrix.identity(7).matrix()).all()


@given(st.sampled_from([5, 7, 9, 11]), st.integers(-6, 6), st.integers(1, 6), st.integers(1, 6))
def test_well_defined_on_equivalent_pairs(m, p, q, c):
    model = build_cyclic_model(m)
    if gcd(q * c, m) != 1:
        return
    assert extend_pair(model, p, q, "u") == extend_pair(model, p * c, q * c, "u")
    if gcd(p, m) == 1:
        assert extend_pair(model, p, q, "s") == extend_pair(model, p * c, q * c, "s")
