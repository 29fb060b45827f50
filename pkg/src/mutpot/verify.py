"""Bulk self-verification suites, callable from the library and the CLI.

Every suite draws its cases from a seeded random generator, so runs are
reproducible; `cases=None` selects each suite's default size.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    LatticeMap,
    SkewForm,
    _egcd,
    gcd_vec,
    mat_inv_int,
    mat_transpose,
    mat_vec,
    pair,
    pl_mutate,
    pl_mutate_inv,
    reflect,
    vec_neg,
)
from .laurent import (
    BinomialRationalFn,
    LaurentPoly,
    binomial_power,
    content,
    monomial_substitution,
)
from .mutation import (
    ExchangeCollection,
    b_matrix,
    bfz_matrix_mutate,
    collection_mutate_ordered,
    fn_mutate,
    fn_mutate_iter,
    reflection_substitution,
)
from .upperbound import (
    UnsupportedShapeError,
    generators_for,
    member_via_generators,
    sample_ub_element,
    ub_member,
    verify_ring_identities,
    verify_vlemma,
)

__all__ = ["SuiteResult", "SUITE_NAMES", "run_suite"]

_MAX_FAILURES = 20


@dataclass(frozen=True)
class SuiteResult:
    name: str
    total: int
    passed: int
    failures: tuple

    @property
    def ok(self):
        return self.passed == self.total


class _Tally:
    def __init__(self):
        self.total = 0
        self.passed = 0
        self.failures = []

    def check(self, ok, label, context=None):
        self.total += 1
        if ok:
            self.passed += 1
        elif len(self.failures) < _MAX_FAILURES:
            detail = context() if callable(context) else context
            self.failures.append(f"{label}: {detail}" if detail else label)

    def result(self, name):
        return SuiteResult(name, self.total, self.passed, tuple(self.failures))


# -- random generators ---------------------------------------------------------


def _random_vector(rng, bound, rank=2):
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(rank))
        if any(v):
            return v


def _random_primitive(rng, bound, rank=2):
    while True:
        v = _random_vector(rng, bound, rank)
        if gcd_vec(v) == 1:
            return v


def _random_laurent(rng, rank=2, max_terms=8, exp_bound=4, coeff_bound=5,
                    fractions=False):
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        exp = tuple(rng.randint(-exp_bound, exp_bound) for _ in range(rank))
        coeff = rng.randint(-coeff_bound, coeff_bound) or 1
        if fractions and rng.random() < 0.4:
            coeff = Fraction(coeff, rng.randint(1, 4))
        terms.append((exp, coeff))
    poly = LaurentPoly(rank, terms)
    if poly.is_zero():
        poly = poly + 1
    return poly


def _random_mutable(rng, u, form, times, max_terms=6, exp_bound=3):
    """Integer-coefficient w whose times-fold mutation at u stays Laurent:
    each term carries the binomial power its level requires."""
    b = form.i_omega(u)
    total = LaurentPoly.zero(form.rank)
    for _ in range(rng.randint(1, max_terms)):
        exp = tuple(rng.randint(-exp_bound, exp_bound) for _ in range(form.rank))
        coeff = rng.randint(-4, 4) or 1
        level = times * pair(exp, u)
        term = LaurentPoly.monomial(form.rank, exp, coeff)
        if level < 0:
            term = term * binomial_power(form.rank, b, -level)
        total = total + term
    if total.is_zero():
        total = total + 1
    return total


def _random_sl2(rng, steps=3):
    """A small SL2 matrix as a word in the two standard shears."""
    m = ((1, 0), (0, 1))
    for _ in range(rng.randint(1, steps)):
        j = rng.randint(-2, 2)
        if rng.random() < 0.5:
            shear = ((1, j), (0, 1))
        else:
            shear = ((1, 0), (j, 1))
        m = tuple(
            tuple(sum(m[i][t] * shear[t][k] for t in range(2)) for k in range(2))
            for i in range(2)
        )
    return m


def _substitute_fraction(f, matrix):
    num = monomial_substitution(f.numerator, matrix)
    dens = [(mat_vec(matrix, d), e) for d, e in f.denominator_dict().items()]
    return BinomialRationalFn(num, dens)


# -- suites ---------------------------------------------------------------------


def suite_pl(cases=None, rng_seed=0):
    """Piecewise-linear identities, exhaustively over a coordinate box."""
    tally = _Tally()
    us = ((0, 1), (1, 0), (1, 1), (1, -1), (2, 1))
    scalars = (1, 2, 3)

    def run():
        for k in (1, 2, 3):
            form = SkewForm.rank2(k)
            shear = LatticeMap(((1, 1), (0, 1)), form, form)
            for u in us:
                for v1 in range(-10, 11):
                    for v2 in range(-10, 11):
                        v = (v1, v2)
                        ctx = lambda: f"k={k} u={u} v={v}"
                        mv = pl_mutate(form, u, v)
                        tally.check(
                            pl_mutate_inv(form, u, mv) == v, "pl-inverse", ctx
                        )
                        double = pl_mutate(form, vec_neg(u), mv)
                        tally.check(
                            double == reflect(form, u, v), "pl-double-reflect", ctx
                        )
                        fv = shear.push_forward(v)
                        fu = shear.push_forward(u)
                        tally.check(
                            shear.push_forward(mv) == pl_mutate(form, fu, fv),
                            "pl-functorial",
                            ctx,
                        )
                        for a in scalars:
                            big = form.scaled(a)
                            for b in scalars:
                                bu = tuple(b * x for x in u)
                                sctx = lambda: f"k={k} u={u} v={v} a={a} b={b}"
                                r = v
                                for _ in range(a * b * b):
                                    r = reflect(form, u, r)
                                tally.check(
                                    reflect(big, bu, v) == r, "pl-reflect-scale", sctx
                                )
                                p = v
                                for _ in range(a * b * b):
                                    p = pl_mutate(form, u, p)
                                tally.check(
                                    pl_mutate(big, bu, v) == p, "pl-mutate-scale", sctx
                                )
                        if cases is not None and tally.total >= cases:
                            return

    run()
    return tally.result("pl")


def suite_birational(cases=None, rng_seed=0):
    """Inverse, reflection, iteration, and conjugation laws of fn_mutate."""
    tally = _Tally()
    rng = random.Random(rng_seed)
    n = 200 if cases is None else cases
    while tally.total < n * 4:
        k = rng.randint(1, 3)
        form = SkewForm.rank2(k)
        u = _random_primitive(rng, 3)
        f = _random_laurent(rng, fractions=True)
        ctx = lambda: f"k={k} u={u} f={f.to_string()}"

        g = fn_mutate(f, u, form)
        back = fn_mutate(g, vec_neg(u), -form)
        tally.check(back.equals(BinomialRationalFn(f)), "fn-inverse", ctx)

        double = fn_mutate(g, vec_neg(u), form)
        tally.check(
            double.equals(BinomialRationalFn(reflection_substitution(f, u, form))),
            "fn-double-reflect",
            ctx,
        )

        t = rng.randint(2, 3)
        tally.check(
            fn_mutate(f, u, form, t).equals(fn_mutate_iter(f, u, form, t)),
            "fn-iterate",
            lambda: f"k={k} u={u} t={t} f={f.to_string()}",
        )

        a = _random_sl2(rng)
        at = mat_transpose(a)
        lhs = fn_mutate(f, mat_vec(a, u), form)
        mid = fn_mutate(monomial_substitution(f, at), u, form)
        rhs = _substitute_fraction(mid, mat_inv_int(at))
        tally.check(
            rhs.equals(lhs), "fn-conjugation", lambda: f"k={k} u={u} A={a}"
        )
    return tally.result("birational")


def suite_bmatrix(cases=None, rng_seed=0):
    """Matrix mutation commutes with collection mutation, and is involutive.

    One tally entry per case, so `cases=N` reports exactly N/N on success.
    """
    tally = _Tally()
    rng = random.Random(rng_seed)
    n = 200 if cases is None else cases
    for _ in range(n):
        k = rng.randint(1, 3)
        form = SkewForm.rank2(k)
        count = rng.randint(2, 6)
        vs = tuple(_random_vector(rng, 5) for _ in range(count))
        idx = rng.randrange(count)
        bad = []

        left = bfz_matrix_mutate(b_matrix(vs, form), idx)
        mutated = collection_mutate_ordered(vs, idx, form)
        if left != b_matrix(mutated, form):
            bad.append("commutes")

        col = ExchangeCollection(2, [(v, 1) for v in vs])
        via_multiset = col.mutate(vs[idx], form)
        via_ordered = ExchangeCollection(2, [(v, 1) for v in mutated])
        if via_multiset != via_ordered:
            bad.append("multiset")

        size = rng.randint(2, 6)
        skew = [[0] * size for _ in range(size)]
        for i in range(size):
            for j in range(i + 1, size):
                x = rng.randint(-5, 5)
                skew[i][j] = x
                skew[j][i] = -x
        skew = tuple(tuple(row) for row in skew)
        j = rng.randrange(size)
        if bfz_matrix_mutate(bfz_matrix_mutate(skew, j), j) != skew:
            bad.append("involutive")

        tally.check(
            not bad,
            "bmatrix",
            lambda: f"failed {'+'.join(bad)}: k={k} vs={vs} idx={idx} B={skew} j={j}",
        )
    return tally.result("bmatrix")


def suite_content(cases=None, rng_seed=0):
    """Content is multiplicative, and Laurent mutations keep integrality."""
    tally = _Tally()
    rng = random.Random(rng_seed)
    n = 200 if cases is None else cases
    for _ in range(n):
        f = _random_laurent(rng, max_terms=6, fractions=True)
        g = _random_laurent(rng, max_terms=6, fractions=True)
        tally.check(
            content(f * g) == content(f) * content(g),
            "content-multiplicative",
            lambda: f"f={f.to_string()} g={g.to_string()}",
        )
    for _ in range(max(1, n // 2)):
        k = rng.randint(1, 3)
        form = SkewForm.rank2(k)
        u = _random_primitive(rng, 3)
        t = rng.randint(1, 2)
        w = _random_mutable(rng, u, form, t)
        image, _ = fn_mutate(w, u, form, t).laurent_or_witness()
        ok = image is not None and all(
            c.denominator == 1 for c in image.terms.values()
        )
        tally.check(
            ok, "content-integral", lambda: f"k={k} u={u} t={t} w={w.to_string()}"
        )
    return tally.result("content")


def _random_shape(rng, kinds=("one", "opposite", "basis"), kind=None):
    if kind is None:
        kind = rng.choice(kinds)
    v1 = _random_primitive(rng, 3)
    if kind == "one":
        return ExchangeCollection(2, [(v1, rng.randint(1, 3))])
    if kind == "opposite":
        return ExchangeCollection(
            2, [(v1, rng.randint(1, 3)), (vec_neg(v1), rng.randint(1, 3))]
        )
    v2 = _basis_partner(rng, v1)
    return ExchangeCollection(2, [(v1, rng.randint(1, 3)), (v2, rng.randint(1, 3))])


def _basis_partner(rng, v1, det=1):
    """A second vector with det(v1, v2) = det, randomly sheared along v1."""
    a, b = v1
    _, s, t = _egcd(a, b)
    base = (-t * det, s * det)
    j = rng.randint(-2, 2)
    v2 = (base[0] + j * a, base[1] + j * b)
    if v2 == v1 or v2 == vec_neg(v1):
        v2 = (base[0] + 3 * a, base[1] + 3 * b)
    return v2


def suite_ub(cases=None, rng_seed=0):
    """The generator route and the definitional route agree on membership.

    One tally entry per case.  Cases cycle through the three presentable
    shapes, and within each shape alternate between a W sampled from the
    ring (which must also test positive) and an unconstrained random W.
    """
    tally = _Tally()
    rng = random.Random(rng_seed)
    n = 600 if cases is None else cases
    for i in range(n):
        k = rng.choice((1, 2, 3, -1, -2))
        form = SkewForm.rank2(k)
        collection = _random_shape(
            rng, kind=("one", "opposite", "basis")[i % 3]
        )
        bad = []

        pres = generators_for(form, collection)
        if not all(ub_member(g, form, collection).verdict for g in pres.generators):
            bad.append("generator-soundness")

        if (i // 3) % 2 == 0:
            w = sample_ub_element(form, collection, rng)
            expected = ub_member(w, form, collection).verdict
            if not expected:
                bad.append("sampled-member")
        else:
            w = _random_laurent(rng, max_terms=6, exp_bound=3)
            expected = ub_member(w, form, collection).verdict
        if member_via_generators(w, form, collection) != expected:
            bad.append("routes-agree")

        tally.check(
            not bad,
            "ub",
            lambda: (
                f"failed {'+'.join(bad)}: k={k} V={collection.encode()} "
                f"w={w.to_string()}"
            ),
        )
    return tally.result("ub")


def _positive_cone_sample(rng, collection):
    """Laurent polynomial whose exponents pair nonnegatively with every
    direction of the collection (so membership needs no divisibility)."""
    dirs = collection.distinct_directions()
    terms = []
    for _ in range(30):
        exp = tuple(rng.randint(-4, 4) for _ in range(2))
        if all(pair(exp, v) >= 0 for v in dirs):
            terms.append((exp, rng.randint(1, 3)))
            if len(terms) >= 4:
                break
    if not terms:
        terms = [((0, 0), 1)]
    return LaurentPoly(2, terms)


def _single_direction_sample(rng, collection, form):
    """Laurent polynomial built to pass the divisibility test along one
    chosen direction (and carrying no guarantee for the others)."""
    v, m = rng.choice(collection.items())
    b = form.i_omega(v)
    total = LaurentPoly.zero(2)
    for _ in range(rng.randint(1, 4)):
        exp = tuple(rng.randint(-3, 3) for _ in range(2))
        level = pair(exp, v)
        term = LaurentPoly.monomial(2, exp, rng.randint(1, 3))
        if level < 0:
            term = term * binomial_power(2, b, m * (-level))
        total = total + term
    if total.is_zero():
        total = total + 1
    return total


def suite_vlemma(cases=None, rng_seed=0):
    """Seed mutation preserves and reflects the membership verdict."""
    tally = _Tally()
    rng = random.Random(rng_seed)
    n = 500 if cases is None else cases
    for _ in range(n):
        k = rng.randint(1, 3)
        form = SkewForm.rank2(k)
        shape = rng.choice(("opposite", "basis", "nonbasis2", "nonbasis3"))
        v1 = _random_primitive(rng, 3)
        if shape == "opposite":
            collection = ExchangeCollection(
                2, [(v1, rng.randint(1, 3)), (vec_neg(v1), rng.randint(1, 3))]
            )
        elif shape == "basis":
            collection = ExchangeCollection(
                2,
                [(v1, rng.randint(1, 3)), (_basis_partner(rng, v1), rng.randint(1, 3))],
            )
        else:
            det = 2 if shape == "nonbasis2" else 3
            collection = ExchangeCollection(
                2,
                [
                    (v1, rng.randint(1, 2)),
                    (_basis_partner(rng, v1, det), rng.randint(1, 2)),
                ],
            )

        kind = rng.choice(("sampled", "random", "cone", "single"))
        if kind == "sampled":
            try:
                w = sample_ub_element(form, collection, rng)
            except UnsupportedShapeError:
                w = _positive_cone_sample(rng, collection)
        elif kind == "random":
            w = _random_laurent(rng, max_terms=5, exp_bound=3)
        elif kind == "cone":
            w = _positive_cone_sample(rng, collection)
        else:
            w = _single_direction_sample(rng, collection, form)

        d = rng.choice(collection.distinct_directions())
        tally.check(
            verify_vlemma(w, d, form, collection),
            "vlemma",
            lambda: (
                f"k={k} V={collection.encode()} d={d} kind={kind} w={w.to_string()}"
            ),
        )
    return tally.result("vlemma")


def suite_identities(cases=None, rng_seed=0):
    """The exact mutual-membership identities of the k-family."""
    tally = _Tally()
    for k in (1, 2, 3):
        for m2 in (1, 2):
            tally.check(
                verify_ring_identities(k, m2),
                "identities",
                f"k={k} m2={m2}",
            )
    return tally.result("identities")


_SUITES = {
    "pl": suite_pl,
    "birational": suite_birational,
    "bmatrix": suite_bmatrix,
    "content": suite_content,
    "ub": suite_ub,
    "vlemma": suite_vlemma,
    "identities": suite_identities,
}

SUITE_NAMES = tuple(_SUITES) + ("all",)


def run_suite(name, cases=None, rng_seed=0):
    """Run one suite (or 'all'); returns a list of SuiteResult."""
    if name == "all":
        return [fn(cases=cases, rng_seed=rng_seed) for fn in _SUITES.values()]
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r} (choose from {SUITE_NAMES})")
    return [_SUITES[name](cases=cases, rng_seed=rng_seed)]
