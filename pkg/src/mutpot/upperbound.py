"""Ring membership for potentials: divisibility criteria, generator
presentations for the supported collection shapes, and the exact identities
behind the k-family of examples."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .lattice import (
    _egcd,
    SkewForm,
    is_primitive,
    mat_inv_int,
    mat_transpose,
    sign_normalize,
    sl2_change_of_basis,
    vec_neg,
    vec_scale,
)
from .laurent import (
    BinomialFactor,
    BinomialRationalFn,
    LaurentPoly,
    binomial_divide,
    binomial_power,
    divide_exact,
    grade_by,
    monomial_substitution,
)
from .mutation import ExchangeCollection, fn_mutate

__all__ = [
    "LaurentFailure",
    "mutation_is_laurent",
    "DirectionResult",
    "MembershipReport",
    "check_property_V",
    "ub_member",
    "UnsupportedShapeError",
    "GeneratorPresentation",
    "generators_for",
    "member_via_generators",
    "verify_vlemma",
    "sample_ub_element",
    "verify_ring_identities",
]


class LaurentFailure(NamedTuple):
    """Witness that a graded piece misses the required binomial power."""

    level: int
    direction: tuple
    required_power: int
    remainder: "LaurentPoly"


def mutation_is_laurent(w, u, form, times=1):
    """Decide whether the times-fold mutation of w at u is again Laurent.

    The binomial (1 + X^b) with b = i_omega(u) sits at pairing level 0 with
    u, so the image is Laurent exactly when each negative-level piece of w
    is divisible by (1 + X^b)^(times * -level).  Returns (verdict, failure);
    the failure, if any, is reported for the smallest failing level.
    """
    if times < 0:
        raise ValueError("times must be nonnegative")
    b = form.i_omega(u)
    if times == 0 or all(x == 0 for x in b) or w.is_zero():
        return True, None
    for level, piece in grade_by(w, u).items():
        if level >= 0:
            break
        required = -times * level
        res = binomial_divide(piece, b, required)
        if not res.exact:
            return False, LaurentFailure(level, b, required, res.remainder)
    return True, None


class DirectionResult(NamedTuple):
    direction: tuple
    multiplicity: int
    ok: bool
    failure: Optional[LaurentFailure]


class MembershipReport(NamedTuple):
    verdict: bool
    w_is_laurent: bool
    directions: tuple
    not_laurent_factor: Optional[BinomialFactor]


def check_property_V(w, form, collection):
    """Definitional membership test.

    w must be Laurent, and for every distinct direction v of the collection
    with multiplicity m, the m-fold mutation of w at v must be Laurent.
    """
    if isinstance(w, BinomialRationalFn):
        poly, witness = w.laurent_or_witness()
    else:
        poly, witness = w, None
    if poly is None:
        return MembershipReport(False, False, (), witness)
    results = []
    verdict = True
    for v, m in collection.items():
        ok, failure = mutation_is_laurent(poly, v, form, times=m)
        results.append(DirectionResult(v, m, ok, failure))
        verdict = verdict and ok
    return MembershipReport(verdict, True, tuple(results), None)


def ub_member(w, form, collection):
    """Ring membership; the divisibility criterion is the decision procedure."""
    return check_property_V(w, form, collection)


# -- generator presentations --------------------------------------------------


class UnsupportedShapeError(ValueError):
    """No generator presentation is implemented for this collection shape."""


@dataclass(frozen=True)
class GeneratorPresentation:
    shape: str
    generators: tuple
    labels: tuple
    ordered_directions: tuple
    coordinate_change: object = None


def _grading_covectors(v):
    """For primitive v = (a, b): w with <w, v> = 1 and the primitive z0 with
    <z0, v> = 0, z0 sign-normalized."""
    a, b = v
    _, s, t = _egcd(a, b)
    w = (s, t)
    z0 = sign_normalize((-b, a))
    return w, z0


def _one_vector_presentation(form, v, m):
    w, z0 = _grading_covectors(v)
    b_norm = sign_normalize(form.i_omega(v))
    gens = (
        LaurentPoly.monomial(2, z0),
        LaurentPoly.monomial(2, vec_neg(z0)),
        LaurentPoly.monomial(2, w),
        binomial_power(2, b_norm, m) * LaurentPoly.monomial(2, vec_neg(w)),
    )
    return GeneratorPresentation(
        shape="one-vector",
        generators=gens,
        labels=("z0", "z0-inv", "z1", "z1-star"),
        ordered_directions=((v, m),),
    )


def _opposite_pair_presentation(form, v1, m1, v2, m2):
    vp = sign_normalize(v1)
    if vp == v1:
        m_plus, m_minus = m1, m2
    else:
        m_plus, m_minus = m2, m1
    w, z0 = _grading_covectors(vp)
    b_norm = sign_normalize(form.i_omega(vp))
    gens = (
        LaurentPoly.monomial(2, z0),
        LaurentPoly.monomial(2, vec_neg(z0)),
        LaurentPoly.monomial(2, w) * binomial_power(2, b_norm, m_minus),
        binomial_power(2, b_norm, m_plus) * LaurentPoly.monomial(2, vec_neg(w)),
    )
    return GeneratorPresentation(
        shape="opposite-pair",
        generators=gens,
        labels=("z0", "z0-inv", "z1", "z1-star"),
        ordered_directions=((vp, m_plus), (vec_neg(vp), m_minus)),
    )


def _basis_pair_presentation(form, v1, m1, v2, m2):
    a, b = v1
    c, d = v2
    z1 = (d, -c)
    z2 = (-b, a)
    kk = abs(form.omega(v1, v2))
    gens = (
        LaurentPoly.monomial(2, z1),
        LaurentPoly.monomial(2, z2),
        binomial_power(2, vec_scale(kk, z2), m1) * LaurentPoly.monomial(2, vec_neg(z1)),
        binomial_power(2, vec_scale(kk, z1), m2) * LaurentPoly.monomial(2, vec_neg(z2)),
    )
    return GeneratorPresentation(
        shape="basis-pair",
        generators=gens,
        labels=("z1", "z2", "z1-star", "z2-star"),
        ordered_directions=((v1, m1), (v2, m2)),
        coordinate_change=sl2_change_of_basis(v1, v2, form),
    )


def generators_for(form, collection):
    """A finite generator presentation of the membership ring.

    Supported shapes (rank 2, nondegenerate form, primitive directions):
    a single direction, an opposite pair {v, -v}, and a pair forming a
    lattice basis.
    """
    if form.rank != 2 or collection.rank != 2:
        raise UnsupportedShapeError("presentations are implemented for rank 2 only")
    if form.k == 0:
        raise UnsupportedShapeError("the form must be nondegenerate")
    items = collection.items()
    if not items:
        raise UnsupportedShapeError("the collection is empty")
    if any(not is_primitive(v) for v, _ in items):
        raise UnsupportedShapeError("directions must be primitive vectors")
    if len(items) == 1:
        (v, m), = items
        return _one_vector_presentation(form, v, m)
    if len(items) == 2:
        (v1, m1), (v2, m2) = items
        if v1 == vec_neg(v2):
            return _opposite_pair_presentation(form, v1, m1, v2, m2)
        det = v1[0] * v2[1] - v1[1] * v2[0]
        if det == -1:
            (v1, m1), (v2, m2) = (v2, m2), (v1, m1)
            det = 1
        if det == 1:
            return _basis_pair_presentation(form, v1, m1, v2, m2)
        raise UnsupportedShapeError("the two directions do not form a lattice basis")
    raise UnsupportedShapeError(
        "collections with three or more distinct directions are not presented"
    )


def _graded_divisible(w, v, bdir, mult):
    """Each negative-level piece of w along v must be a Laurent multiple of
    (1 + X^bdir)^(mult * -level); checked with the generic division routine."""
    for level, piece in grade_by(w, v).items():
        if level >= 0:
            break
        divisor = binomial_power(w.rank, bdir, mult * (-level))
        if divide_exact(piece, divisor) is None:
            return False
    return True


def member_via_generators(w, form, collection):
    """Membership decided along the presentation's own coordinates.

    This is an independent route from check_property_V: it uses the generic
    exact-division routine on whole binomial powers and, for basis pairs,
    works in the changed coordinates where the pair becomes the standard
    basis.  Raises UnsupportedShapeError for shapes without a presentation.
    """
    if isinstance(w, BinomialRationalFn):
        poly, _ = w.laurent_or_witness()
        if poly is None:
            return False
        w = poly
    pres = generators_for(form, collection)
    if pres.shape in ("one-vector", "opposite-pair"):
        return all(
            _graded_divisible(w, v, form.i_omega(v), m)
            for v, m in pres.ordered_directions
        )
    # basis pair: exponents transform by the inverse transpose, so the
    # grading along v_i becomes the grading along e_i
    m_matrix = pres.coordinate_change.matrix
    wz = monomial_substitution(w, mat_transpose(mat_inv_int(m_matrix)))
    k = form.k
    (_, m1), (_, m2) = pres.ordered_directions
    return _graded_divisible(wz, (1, 0), (0, k), m1) and _graded_divisible(
        wz, (0, 1), (-k, 0), m2
    )


def verify_vlemma(w, direction, form, collection):
    """Membership is preserved and reflected by a seed mutation.

    The potential travels to the mutated seed by fn_mutate with the form
    negated (the coordinate change of the mutated seed; inverse to
    fn_mutate at -direction).  Returns True when the membership verdict
    for w before mutating equals the verdict for the transported potential
    on the mutated collection (a non-Laurent image counts as a negative
    verdict).
    """
    before = ub_member(w, form, collection).verdict
    image = fn_mutate(w, direction, -form)
    poly, _ = image.laurent_or_witness()
    if poly is None:
        after = False
    else:
        after = ub_member(poly, form, collection.mutate(direction, form)).verdict
    return before == after


def sample_ub_element(form, collection, rng, max_terms=3, max_factors=4):
    """A random nonzero member: a positive combination of generator products."""
    gens = generators_for(form, collection).generators
    rank = collection.rank
    total = LaurentPoly.zero(rank)
    for _ in range(rng.randint(1, max_terms)):
        prod = LaurentPoly.constant(rank, rng.randint(1, 3))
        for _ in range(rng.randint(0, max_factors)):
            prod = prod * gens[rng.randrange(len(gens))]
        total = total + prod
    return total


# -- the k-family identities ---------------------------------------------------


def verify_ring_identities(k, m2=1):
    """Machine check of the exact identities behind the rank-2 k-family.

    With A = 1 + x1^k, C = (1 + x2^k)^k, B = C - 1, h = A + B = x1^k + C,
    g = (1 + x2^k)/x1, S = B/x2, G = h^m/(x1^(m k) x2) and m = m2, the
    following hold as exact Laurent-polynomial identities:

      (a)  (1+x1^k)^m / x2
             == x1^(m k) * G - sum_{i=1..m} C(m,i) A^(m-i) B^(i-1) S
      (b)  G == g^(k m) * (1+x1^k)^m / x2
             + sum_{i=0..m-1} C(m,i) A^i g^(k i) (-S)^(m-i) x2^(m-1-i)

    Each side exhibits one membership ring's fraction generator inside the
    other; both fraction generators are also cross-checked against the
    definitional membership test on the collection {1 x e1, m x e2}.
    """
    if k < 1 or m2 < 1:
        raise ValueError("k and m2 must be positive")
    m = m2
    big_a = binomial_power(2, (k, 0), 1)  # 1 + x1^k
    big_c = binomial_power(2, (0, k), k)  # (1 + x2^k)^k
    big_b = big_c - 1
    h = LaurentPoly.monomial(2, (k, 0)) + big_c
    g = binomial_power(2, (0, k), 1) * LaurentPoly.monomial(2, (-1, 0))
    s = LaurentPoly(2, {(0, k * j - 1): math.comb(k, j) for j in range(1, k + 1)})
    gen_left = big_a ** m * LaurentPoly.monomial(2, (0, -1))
    gen_right = h ** m * LaurentPoly.monomial(2, (-m * k, -1))

    checks = [s == big_b * LaurentPoly.monomial(2, (0, -1))]

    rhs_a = LaurentPoly.monomial(2, (m * k, 0)) * gen_right
    for i in range(1, m + 1):
        rhs_a = rhs_a - math.comb(m, i) * big_a ** (m - i) * big_b ** (i - 1) * s
    checks.append(gen_left == rhs_a)

    rhs_b = g ** (k * m) * gen_left
    for i in range(m):
        rhs_b = rhs_b + (
            math.comb(m, i)
            * big_a ** i
            * g ** (k * i)
            * (-s) ** (m - i)
            * LaurentPoly.monomial(2, (0, m - 1 - i))
        )
    checks.append(gen_right == rhs_b)

    form = SkewForm.rank2(k)
    collection = ExchangeCollection(2, [((1, 0), 1), ((0, 1), m)])
    checks.append(ub_member(gen_left, form, collection).verdict)
    checks.append(ub_member(gen_right, form, collection).verdict)
    return all(checks)
