import random
from fractions import Fraction

import pytest

from kvquad import (
    AssocSeries,
    LieElement,
    NotLieError,
    RationalUnivariateSeries,
    ad_apply,
    apply_operator_series,
    assoc_to_lie,
    bch,
    bch_multi,
    bracket,
    ch_t,
    decompose,
    directional_derivative,
    exp,
    generator,
    is_lyndon,
    kernel_series,
    lie_to_assoc,
    log,
    lyndon_words,
    scale,
    standard_factorization,
    substitute,
    univariate_substitute,
    word_from_str,
)
from kvquad.sampling import random_lie_element

from oracles import bernoulli_kernel, dynkin_bch, left_nested, to_word_dict

X = generator(2, 0, 6)
Y = generator(2, 1, 6)


def lyndon(order, spec):
    return LieElement(2, order, {word_from_str(w): c for w, c in spec.items()})


# --- Lyndon combinatorics ---------------------------------------------------

def test_is_lyndon():
    assert is_lyndon(b"\x00")
    assert is_lyndon(b"\x00\x01")
    assert is_lyndon(b"\x00\x00\x01")
    assert not is_lyndon(b"\x01\x00")
    assert not is_lyndon(b"\x00\x01\x00\x01")  # a square
    assert not is_lyndon(b"")


def test_lyndon_word_counts():
    # necklace counts for two letters, degrees 1..8
    words = lyndon_words(2, 8)
    by_degree = {}
    for w in words:
        by_degree[len(w)] = by_degree.get(len(w), 0) + 1
    assert [by_degree[d] for d in range(1, 9)] == [2, 1, 2, 3, 6, 9, 18, 30]
    assert all(is_lyndon(w) for w in words)


def test_standard_factorization():
    assert standard_factorization(b"\x00\x01") == (b"\x00", b"\x01")
    assert standard_factorization(word_from_str("aab")) == (b"\x00", word_from_str("ab"))
    assert standard_factorization(word_from_str("aabb")) == (b"\x00", word_from_str("abb"))
    with pytest.raises(ValueError):
        standard_factorization(b"\x01\x00")


# --- embedding and projection -----------------------------------------------

def test_embed_generator():
    assert lie_to_assoc(X) == AssocSeries.letter(2, 0, 6)


def test_embed_bracket_word():
    assert lie_to_assoc(lyndon(2, {"ab": 1})) == AssocSeries(
        2, 2, {word_from_str("ab"): 1, word_from_str("ba"): -1})


def test_embed_nested_bracket():
    # [x, [x, y]] expanded by hand: xxy - 2 xyx + yxx
    got = lie_to_assoc(lyndon(3, {"aab": 1}))
    assert got == AssocSeries(2, 3, {
        word_from_str("aab"): 1, word_from_str("aba"): -2, word_from_str("baa"): 1})


def test_project_commutator():
    s = AssocSeries(2, 2, {word_from_str("ab"): 1, word_from_str("ba"): -1})
    assert assoc_to_lie(s) == lyndon(2, {"ab": 1})


def test_project_rejects_symmetric_part():
    s = AssocSeries(2, 2, {word_from_str("ab"): 1, word_from_str("ba"): 1})
    with pytest.raises(NotLieError) as err:
        assoc_to_lie(s)
    assert err.value.degree == 2


def test_project_log_of_exponentials():
    x = AssocSeries.letter(2, 0, 3)
    y = AssocSeries.letter(2, 1, 3)
    got = assoc_to_lie(log(exp(x) * exp(y)))
    assert got == lyndon(3, {"ab": Fraction(1, 2),
                             "aab": Fraction(1, 12),
                             "abb": Fraction(1, 12),
                             "a": 1, "b": 1})


def test_projection_roundtrip_random():
    rng = random.Random(201)
    for _ in range(25):
        a = random_lie_element(rng, rng.choice([2, 3]), 6)
        assert assoc_to_lie(lie_to_assoc(a)) == a


def test_bracket_antisymmetry_and_jacobi():
    rng = random.Random(202)
    for _ in range(10):
        a = random_lie_element(rng, 2, 6, terms=4)
        b = random_lie_element(rng, 2, 6, terms=4)
        c = random_lie_element(rng, 2, 6, terms=4)
        assert bracket(a, b) == -bracket(b, a)
        assert (bracket(a, bracket(b, c)) + bracket(b, bracket(c, a))
                + bracket(c, bracket(a, b))).is_zero()


def test_bracket_matches_commutator_of_expansions():
    rng = random.Random(203)
    for _ in range(10):
        a = random_lie_element(rng, 2, 5)
        b = random_lie_element(rng, 2, 5)
        ea, eb = lie_to_assoc(a), lie_to_assoc(b)
        assert lie_to_assoc(bracket(a, b)) == ea * eb - eb * ea


# --- Campbell-Hausdorff -----------------------------------------------------

def test_bch_low_degrees():
    ch = bch(2)
    assert ch.degree_part(1) == generator(2, 0, 2) + generator(2, 1, 2)
    assert ch.degree_part(2) == lyndon(2, {"ab": Fraction(1, 2)})


def test_bch_against_dynkin_summation_oracle():
    assert to_word_dict(lie_to_assoc(bch(5))) == dynkin_bch(5)


def test_bch_unit_argument():
    zero = LieElement.zero(2, 6)
    assert substitute(bch(6), (X, zero)) == X
    assert substitute(bch(6), (zero, Y)) == Y


def test_bch_associativity():
    x, y, z = (generator(3, i, 6) for i in range(3))
    ch = bch(6)
    ch3 = bch_multi(3, 6)
    left = substitute(ch, (substitute(ch, (x, y)), z))
    right = substitute(ch, (x, substitute(ch, (y, z))))
    assert left == ch3
    assert right == ch3


# --- substitution, scaling --------------------------------------------------

def test_substitute_relabeling():
    one_letter = generator(1, 0, 6)
    z = generator(3, 2, 6)
    assert substitute(one_letter, (z,)) == z
    moved = substitute(lyndon(2, {"ab": 1}), (generator(3, 1, 6), z))
    assert moved == LieElement(3, 6, {word_from_str("bc"): 1})


def test_substitute_identity():
    ch = bch(6)
    assert substitute(ch, (X, Y)) == ch


def test_substitute_is_homomorphism():
    rng = random.Random(204)
    x3, y3, z3 = (generator(3, i, 5) for i in range(3))
    ch_yz = substitute(bch(5), (y3, z3))
    args = (x3 + z3, ch_yz)
    for _ in range(8):
        a = random_lie_element(rng, 2, 5, terms=3)
        b = random_lie_element(rng, 2, 5, terms=3)
        assert substitute(bracket(a, b), args) == bracket(substitute(a, args),
                                                          substitute(b, args))


def test_scale_is_identity_at_one():
    rng = random.Random(205)
    a = random_lie_element(rng, 2, 6)
    assert scale(a, 1) == a
    assert scale(a, 2).coefficient(b"\x00\x01") == 4 * a.coefficient(b"\x00\x01")


def test_ch_t_low_degree_and_homogeneity():
    assert ch_t(1, 6) == bch(6)
    assert ch_t(Fraction(3, 2), 6).degree_part(2) == lyndon(
        6, {"ab": Fraction(3, 4)})  # (t/2)[x, y]
    ch = bch(6)
    for t in (1, 2, 3):
        scaled = ch_t(t, 6)
        for k in range(1, 7):
            assert scaled.degree_part(k) == ch.degree_part(k) * Fraction(t) ** (k - 1)


def test_ch_t_rejects_zero():
    with pytest.raises(ValueError):
        ch_t(0, 4)


# --- operator series ---------------------------------------------------------

def test_apply_constant_kernel_is_identity():
    one = RationalUnivariateSeries(6, {0: 1})
    rng = random.Random(206)
    a = random_lie_element(rng, 2, 6)
    assert apply_operator_series(one, 0, a) == a


def test_apply_rejects_short_kernel():
    short = RationalUnivariateSeries(3, {0: 1})
    rng = random.Random(212)
    with pytest.raises(ValueError):
        apply_operator_series(short, 0, random_lie_element(rng, 2, 6))


def test_lie_element_json_roundtrip():
    elt = lyndon(4, {"ab": Fraction(1, 2), "aabb": -3})
    data = elt.to_json_dict()
    assert data["basis"] == "lyndon"
    assert LieElement.from_json_dict(data) == elt
    data["basis"] = "hall"
    with pytest.raises(ValueError):
        LieElement.from_json_dict(data)


def test_apply_single_ad():
    t = RationalUnivariateSeries(6, {1: 1})
    assert apply_operator_series(t, 0, Y) == lyndon(6, {"ab": 1})


def test_kernel_inverse_recovers_input():
    phi = kernel_series("t/(1-exp(-t))", 8).inverse()  # (1-e^{-t})/t
    psi = kernel_series("t/(1-exp(-t))", 8)
    rng = random.Random(207)
    for _ in range(8):
        a = random_lie_element(rng, 2, 8)
        assert apply_operator_series(psi, 0, apply_operator_series(phi, 0, a)) == a


def test_kernel_series_values():
    f = kernel_series("f", 8)
    # Bernoulli numbers: B2/2! = 1/12, odd coefficients vanish,
    # B4/4! = -1/720, B6/6! = 1/30240, B8/8! = -1/1209600
    assert f.coefficient(0) == 0 and f.coefficient(1) == 0
    assert f.coefficient(2) == Fraction(1, 12)
    assert f.coefficient(3) == 0 and f.coefficient(5) == 0 and f.coefficient(7) == 0
    assert f.coefficient(4) == Fraction(-1, 720)
    assert f.coefficient(6) == Fraction(1, 30240)
    assert f.coefficient(8) == Fraction(-1, 1209600)
    assert list(f.coeffs.values()) == [c for c in bernoulli_kernel(8) if c]

    todd = kernel_series("t/(1-exp(-t))", 6)
    assert todd.coefficient(0) == 1
    assert todd.coefficient(1) == Fraction(1, 2)
    # classic relation: t/(1-e^{-t}) - t/(e^t-1) = t
    assert todd - kernel_series("t/(exp(t)-1)", 6) == RationalUnivariateSeries(6, {1: 1})


def test_kernel_series_errors():
    with pytest.raises(ValueError):
        kernel_series("nope", 4)
    with pytest.raises(ValueError):
        kernel_series("alpha", 4)  # parameter b required


def test_alpha_kernel_pole_cancellation():
    # alpha(t; b) = b*t/(1-e^{-t}) - t/((e^t-1)(1-e^{-t})) + 1/(1-e^{-t})
    # has a finite limit b + 1/2 at t = 0
    for b in (Fraction(-1, 4), Fraction(3, 4), 0):
        alpha = kernel_series("alpha", 6, b=b)
        assert alpha.coefficient(0) == b + Fraction(1, 2)


def test_univariate_series_ops():
    s = RationalUnivariateSeries(5, {0: 1, 1: -2, 3: Fraction(1, 3)})
    assert (s * s.inverse()).coefficient(0) == 1
    assert all((s * s.inverse()).coefficient(k) == 0 for k in range(1, 6))
    assert s.derivative().coefficient(2) == 1
    assert s.odd_part() == RationalUnivariateSeries(5, {1: -2, 3: Fraction(1, 3)})
    data = s.to_json_dict()
    assert data["coeffs"][1] == "-2/1"
    assert RationalUnivariateSeries.from_json_dict(data) == s
    with pytest.raises(ValueError):
        RationalUnivariateSeries(5, {1: 1}).inverse()


def test_univariate_substitute():
    f = RationalUnivariateSeries(4, {0: 3, 2: 1})
    x = AssocSeries.letter(2, 0, 4)
    got = univariate_substitute(f, x)
    assert got == AssocSeries(2, 4, {b"": 3, b"\x00\x00": 1})
    with pytest.raises(ValueError):
        univariate_substitute(f, AssocSeries.unit(2, 4))


# --- adjoint action and derivatives ------------------------------------------

def test_ad_unit_acts_as_identity():
    rng = random.Random(208)
    z = random_lie_element(rng, 2, 6)
    assert ad_apply(AssocSeries.unit(2, 6), z) == z


def test_ad_generator_is_bracket():
    assert ad_apply(AssocSeries.letter(2, 0, 6), Y) == lyndon(6, {"ab": 1})


def test_ad_is_multiplicative():
    rng = random.Random(209)
    for _ in range(6):
        u = AssocSeries.from_word(2, 6, b"\x00\x01")  # word xy
        z = random_lie_element(rng, 2, 6, terms=3)
        xpart = AssocSeries.letter(2, 0, 6)
        ypart = AssocSeries.letter(2, 1, 6)
        assert ad_apply(u, z) == ad_apply(xpart, ad_apply(ypart, z))


def test_directional_derivative_on_words():
    x = AssocSeries.letter(2, 0, 6)
    xy = AssocSeries.from_word(2, 6, b"\x00\x01")
    z = generator(3, 2, 6)  # fresh letter in the extended alphabet
    assert directional_derivative(x, 0, z) == lie_to_assoc(z)
    got = directional_derivative(xy, 0, z)
    assert got == AssocSeries(3, 6, {word_from_str("cb"): 1})


def test_directional_derivative_matches_partial_adjoint():
    # the derivative of [x, y] along z at slot x equals [z, y],
    # which is ad of the x-partial applied to z
    xy = lyndon(6, {"ab": 1})
    z = generator(3, 2, 6)
    got = directional_derivative(xy, 0, z)
    assert got == LieElement(3, 6, {word_from_str("bc"): -1})  # [z, y] = -[y, z]
    partial = decompose(lie_to_assoc(xy)).partials[0].with_arity(3)
    assert got == ad_apply(partial, z)


def test_directional_derivative_equals_adjoint_of_partial_random():
    rng = random.Random(210)
    for arity in (2, 3):
        fresh = generator(arity + 1, arity, 6)
        for _ in range(10):
            a = random_lie_element(rng, arity, 6)
            for i in range(arity):
                lhs = directional_derivative(a, i, fresh)
                partial = decompose(lie_to_assoc(a)).partials[i].with_arity(arity + 1)
                assert lhs == ad_apply(partial, fresh)


def test_dynkin_idempotent_on_lie_parts():
    # the left-to-right bracketing map is k times the identity in degree k
    rng = random.Random(211)
    for _ in range(20):
        a = random_lie_element(rng, rng.choice([2, 3]), 6)
        expansion = to_word_dict(lie_to_assoc(a))
        for k in range(1, 7):
            part = {w: c for w, c in expansion.items() if len(w) == k}
            image = {}
            for w, c in part.items():
                for v, m in left_nested(w).items():
                    image[v] = image.get(v, Fraction(0)) + c * m
            image = {w: c for w, c in image.items() if c}
            assert image == {w: k * c for w, c in part.items()}
