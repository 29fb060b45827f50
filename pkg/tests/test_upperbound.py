import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mutpot.laurent import LaurentPoly
from mutpot.upperbound import (
    UnsupportedShapeError,
    check_property_V,
    generators_for,
    member_via_generators,
    mutation_is_laurent,
    sample_ub_element,
    ub_member,
    verify_ring_identities,
    verify_vlemma,
)

from conftest import F, L, coll, omega

E1 = (1, 0)
E2 = (0, 1)


def _gen_strings(presentation):
    return sorted(g.to_string() for g in presentation.generators)


# -- single-direction Laurentness ----------------------------------------------


def test_mutation_is_laurent_frozen(omega1):
    ok, failure = mutation_is_laurent(L("x2^-1*(1+x1)"), E2, omega1)
    assert ok and failure is None

    ok, failure = mutation_is_laurent(L("x2^-1"), E2, omega1)
    assert not ok
    assert failure.level == -1
    assert failure.direction == (-1, 0)
    assert failure.required_power == 1


def test_mutation_is_laurent_multiplicity(omega1):
    # (1+x1)^2 / x2 survives two mutations at e2, but 1/x2 only zero.
    assert mutation_is_laurent(L("x2^-1*(1+x1)^2"), E2, omega1, times=2)[0]
    assert not mutation_is_laurent(L("x2^-1*(1+x1)"), E2, omega1, times=2)[0]


def test_positive_levels_never_obstruct(omega1):
    # Terms pairing nonnegatively with the direction need no divisibility.
    assert mutation_is_laurent(L("x2^5 + x1*x2 + 7"), E2, omega1)[0]


# -- membership ------------------------------------------------------------------


def test_check_property_v_frozen(omega1):
    report = check_property_V(L("x2^-1"), omega1, coll(E2))
    assert not report.verdict
    assert report.w_is_laurent
    (direction,) = report.directions
    assert direction.direction == E2
    assert not direction.ok
    assert direction.failure.level == -1

    good = check_property_V(L("x2^-1*(1+x1)"), omega1, coll(E2))
    assert good.verdict


def test_membership_distinguishes_unit_twins(omega1):
    # Over {1 x (0,1), 1 x (-1,0)} only one of the two unit-equivalent
    # numerators lands inside: the binomial must face the right way.
    sigma = coll(E2, (-1, 0))
    assert ub_member(F("(1+x1^-1)/x2"), omega1, sigma).verdict
    assert not ub_member(F("(1+x1)/x2"), omega1, sigma).verdict


def test_membership_excludes_inverse_variables_on_basis_pair(omega1):
    sigma = coll(E1, E2)
    assert not ub_member(L("x1^-1"), omega1, sigma).verdict
    assert not ub_member(L("x2^-1"), omega1, sigma).verdict
    assert ub_member(L("x1"), omega1, sigma).verdict


def test_non_laurent_member_reports_witness(omega1):
    report = ub_member(F("1/(1+x1)"), omega1, coll(E2))
    assert not report.verdict
    assert not report.w_is_laurent
    assert report.not_laurent_factor is not None
    assert report.not_laurent_factor.direction == (1, 0)


def test_membership_is_a_subring(omega1):
    # Constructive spot-check: products and sums of members are members.
    sigma = coll((E2, 2))
    a = F("x1^-1")
    b = F("(1+x1)^2/x2")
    for w in (a * b, a + b, b * b):
        assert ub_member(w, omega1, sigma).verdict


@given(st.integers(0, 10_000))
def test_sampled_elements_are_members(seed):
    rng = random.Random(seed)
    form = omega(rng.choice((1, 2, 3)))
    sigma = coll((E2, rng.randint(1, 3)))
    w = sample_ub_element(form, sigma, rng)
    assert ub_member(w, form, sigma).verdict


# -- generator presentations ------------------------------------------------------


def test_generators_one_vector(omega1):
    pres = generators_for(omega1, coll((E2, 2)))
    assert pres.shape == "one-vector"
    assert _gen_strings(pres) == sorted(
        [
            L("x1").to_string(),
            L("x1^-1").to_string(),
            L("x2").to_string(),
            L("(1+x1)^2/x2").to_string(),
        ]
    )


def test_generators_opposite_pair():
    pres = generators_for(omega(2), coll(E2, (0, -1)))
    assert pres.shape == "opposite-pair"
    wanted = [
        L("x1"),
        L("x1^-1"),
        L("x2*(1+x1^2)"),
        L("(1+x1^2)/x2"),
    ]
    assert _gen_strings(pres) == sorted(w.to_string() for w in wanted)


def test_generators_opposite_pair_multiplicity():
    # multiplicities (1, 3): each x2-generator carries the power demanded by
    # the opposite direction's multiplicity
    pres = generators_for(omega(2), coll(E2, ((0, -1), 3)))
    strings = _gen_strings(pres)
    assert L("x2*(1+x1^2)^3").to_string() in strings
    assert L("(1+x1^2)/x2").to_string() in strings


def test_generators_basis_pair(omega1):
    pres = generators_for(omega1, coll(E1, E2))
    assert pres.shape == "basis-pair"
    assert set(pres.labels) == {"z1", "z2", "z1-star", "z2-star"}
    wanted = [L("x1"), L("x2"), L("(1+x2)/x1"), L("(1+x1)/x2")]
    assert _gen_strings(pres) == sorted(w.to_string() for w in wanted)


def test_generators_unsupported_shapes(omega1):
    with pytest.raises(UnsupportedShapeError):
        generators_for(omega1, coll(E1, E2, (1, 1)))  # three distinct directions
    with pytest.raises(UnsupportedShapeError):
        generators_for(omega(0), coll(E2))  # degenerate form
    with pytest.raises(UnsupportedShapeError):
        generators_for(omega1, coll((2, 0)))  # imprimitive direction


def test_generators_are_members(omega1):
    for sigma in (coll((E2, 2)), coll(E2, (0, -1)), coll(E1, E2)):
        pres = generators_for(omega1, sigma)
        for gen in pres.generators:
            assert ub_member(gen, omega1, sigma).verdict, gen.to_string()


def test_member_via_generators_agrees_spot(omega1):
    sigma = coll(E1, E2)
    members = [L("x1"), F("(1+x2)/x1"), F("(1+x1)/x2") * F("(1+x2)/x1")]
    non_members = [L("x1^-1"), L("x2^-1"), F("(1+x1)/x2") + L("x1^-1")]
    for w in members:
        assert member_via_generators(w, omega1, sigma)
        assert ub_member(w, omega1, sigma).verdict
    for w in non_members:
        assert not member_via_generators(w, omega1, sigma)
        assert not ub_member(w, omega1, sigma).verdict


def test_negative_k_routes_through_swap():
    sigma = coll((E2, 2))
    pres = generators_for(omega(-1), sigma)
    for gen in pres.generators:
        assert ub_member(gen, omega(-1), sigma).verdict


# -- seed mutation invariance (the headline theorem) ------------------------------


def test_vlemma_frozen(omega1):
    sigma = coll(E1, E2)
    w = L("x1^-1*x2 + x1^-1*x2^2 + 4 + x2 + x2^2")
    assert ub_member(w, omega1, sigma).verdict
    assert verify_vlemma(w, E2, omega1, sigma)

    assert verify_vlemma(F("(1+x2)/x1"), E2, omega1, sigma)
    assert verify_vlemma(F("(1+x2)/x1"), E1, omega1, sigma)


def test_vlemma_opposite_pair():
    form = omega(2)
    sigma = coll(E2, (0, -1))
    w = F("x2*(1+x1^2)") + F("(1+x1^2)/x2")
    assert verify_vlemma(w, E2, form, sigma)
    assert verify_vlemma(w, (0, -1), form, sigma)


def test_vlemma_randomized_members():
    rng = random.Random(7)
    shapes = [coll((E2, 2)), coll(E2, (0, -1)), coll(E1, E2)]
    for _ in range(25):
        form = omega(rng.choice((1, 2)))
        sigma = rng.choice(shapes)
        w = sample_ub_element(form, sigma, rng)
        d = rng.choice(sigma.distinct_directions())
        assert verify_vlemma(w, d, form, sigma)


# -- ring identities ---------------------------------------------------------------


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("m2", [1, 2])
def test_ring_identities(k, m2):
    assert verify_ring_identities(k, m2=m2)


def test_ring_identities_reject_bad_args():
    with pytest.raises(ValueError):
        verify_ring_identities(0)
    with pytest.raises(ValueError):
        verify_ring_identities(1, m2=0)
