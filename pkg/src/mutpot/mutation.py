"""Exchange collections, seeds, birational mutation, and matrix mutation."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .lattice import SkewForm, pair, pl_mutate, vec_neg
from .laurent import (
    BinomialRationalFn,
    LaurentPoly,
    UnsupportedDenominatorError,
    binomial_power,
    divide_exact,
    monomial_substitution,
)

__all__ = [
    "ExchangeCollection",
    "Seed",
    "fn_mutate",
    "fn_mutate_iter",
    "reflection_matrix",
    "reflection_substitution",
    "collection_mutate_ordered",
    "b_matrix",
    "bfz_matrix_mutate",
]


def _fmt_vec(v):
    return "(" + ",".join(str(x) for x in v) + ")"


class ExchangeCollection:
    """A finite multiset of nonzero direction vectors in Z^r."""

    __slots__ = ("_rank", "_counts")

    def __init__(self, rank, vectors=()):
        items = vectors.items() if hasattr(vectors, "items") else vectors
        counts = {}
        for vec, count in items:
            v = tuple(int(x) for x in vec)
            if len(v) != rank:
                raise ValueError(f"vector {v} does not have rank {rank}")
            if all(x == 0 for x in v):
                raise ValueError("the zero vector cannot be a direction")
            count = int(count)
            if count < 0:
                raise ValueError("multiplicities must be nonnegative")
            if count:
                counts[v] = counts.get(v, 0) + count
        self._rank = rank
        self._counts = counts

    @property
    def rank(self):
        return self._rank

    def items(self):
        """Sorted tuple of (vector, multiplicity) pairs."""
        return tuple(sorted(self._counts.items()))

    def distinct_directions(self):
        return tuple(sorted(self._counts))

    def count(self, v):
        return self._counts.get(tuple(v), 0)

    def size(self):
        """Total number of vectors, counted with multiplicity."""
        return sum(self._counts.values())

    def ordered(self):
        """Sorted tuple of vectors, each repeated by its multiplicity."""
        out = []
        for v, c in sorted(self._counts.items()):
            out.extend([v] * c)
        return tuple(out)

    def __contains__(self, v):
        return self.count(v) > 0

    def mutate(self, direction, form):
        """Mutate at a direction of the collection.

        One copy of the direction flips sign; every other vector moves by
        the piecewise-linear mutation at that direction.
        """
        d = tuple(direction)
        if self.count(d) < 1:
            raise ValueError(f"direction {_fmt_vec(d)} is not in the collection")
        out = [(vec_neg(d), 1)]
        for v, c in self._counts.items():
            if v == d:
                c -= 1
            if c:
                out.append((pl_mutate(form, d, v), c))
        return ExchangeCollection(self._rank, out)

    def encode(self):
        """Deterministic one-line encoding, e.g. '(0,1)x2;(1,0)x1'."""
        return ";".join(f"{_fmt_vec(v)}x{c}" for v, c in self.items())

    def __eq__(self, other):
        return (
            isinstance(other, ExchangeCollection)
            and self._rank == other._rank
            and self._counts == other._counts
        )

    def __hash__(self):
        return hash((self._rank, frozenset(self._counts.items())))

    def __repr__(self):
        return f"ExchangeCollection({self._rank}, {self.encode()!r})"


# -- birational mutation of potentials ---------------------------------------


def fn_mutate(f, u, form, times=1):
    """The times-fold birational mutation at u.

    Monomials move by X^m -> X^m (1 + X^b)^(times * <m, u>) with
    b = i_omega(u).  f may be a LaurentPoly or a BinomialRationalFn; the
    result is a normalized BinomialRationalFn.  A denominator factor whose
    direction pairs nonzero with u has a non-binomial image; it must divide
    the transformed numerator exactly, otherwise
    UnsupportedDenominatorError is raised.
    """
    if isinstance(f, LaurentPoly):
        f = BinomialRationalFn(f)
    if not isinstance(f, BinomialRationalFn):
        raise TypeError("f must be a LaurentPoly or BinomialRationalFn")
    if times < 0:
        raise ValueError("times must be nonnegative; mutate at -u under -form to invert")
    rank = f.rank
    if len(u) != rank or form.rank != rank:
        raise ValueError("rank mismatch")
    b = form.i_omega(u)
    if times == 0 or all(x == 0 for x in b) or f.numerator.is_zero():
        return f.normalized()

    levels = {e: times * pair(e, u) for e in f.numerator.terms}
    lmin = min(0, min(levels.values()))
    p = LaurentPoly.zero(rank)
    for e, c in f.numerator.items():
        p = p + LaurentPoly.monomial(rank, e, c) * binomial_power(
            rank, b, levels[e] - lmin
        )

    dens = []
    for d, e in f.denominator_dict().items():
        la = times * pair(d, u)
        if la == 0:
            dens.append((d, e))
            continue
        if la > 0:
            q_a = 1 + LaurentPoly.monomial(rank, d) * binomial_power(rank, b, la)
        else:
            q_a = binomial_power(rank, b, -la) + LaurentPoly.monomial(rank, d)
            p = p * binomial_power(rank, b, e * (-la))
        for _ in range(e):
            quotient = divide_exact(p, q_a)
            if quotient is None:
                raise UnsupportedDenominatorError(
                    "the mutated denominator is not a binomial product and "
                    "does not divide the numerator"
                )
            p = quotient
    dens.append((b, -lmin))
    return BinomialRationalFn(p, dens).normalized()


def fn_mutate_iter(f, u, form, times=1):
    """times successive single mutations at u; same map as fn_mutate."""
    if isinstance(f, LaurentPoly):
        f = BinomialRationalFn(f)
    result = f.normalized()
    for _ in range(times):
        result = fn_mutate(result, u, form, 1)
    return result


def reflection_matrix(form, u):
    """Exponent matrix of the substitution X^m -> X^(m + <m, u> i_omega(u))."""
    b = form.i_omega(u)
    n = form.rank
    return tuple(
        tuple((1 if i == j else 0) + b[i] * u[j] for j in range(n)) for i in range(n)
    )


def reflection_substitution(w, u, form):
    """The monomial substitution matching the double mutation at u and -u."""
    return monomial_substitution(w, reflection_matrix(form, u))


# -- seeds --------------------------------------------------------------------


@dataclass(frozen=True)
class Seed:
    """A skew form, a multiset of directions, and a potential."""

    form: SkewForm
    collection: ExchangeCollection
    potential: BinomialRationalFn
    name: str = ""
    comment: str = ""

    def __post_init__(self):
        if isinstance(self.potential, LaurentPoly):
            object.__setattr__(
                self, "potential", BinomialRationalFn(self.potential)
            )
        if (
            self.form.rank != self.collection.rank
            or self.potential.rank != self.form.rank
        ):
            raise ValueError("form, collection, and potential ranks differ")
        for s in (self.name, self.comment):
            if "#" in s or "\n" in s:
                raise ValueError("names and comments must not contain '#' or newlines")
        object.__setattr__(self, "potential", self.potential.normalized())

    @property
    def rank(self):
        return self.form.rank

    def mutate(self, direction, times=1):
        """Full seed mutation (collection and potential), repeated times.

        The collection mutates by the piecewise-linear rule.  The potential
        is rewritten in the mutated seed's coordinates, which is fn_mutate
        with the form negated -- the inverse of fn_mutate at -direction --
        so that membership verdicts travel with the seed.
        """
        seed = self
        for _ in range(times):
            pot = fn_mutate(seed.potential, direction, -seed.form)
            col = seed.collection.mutate(direction, seed.form)
            seed = dataclasses.replace(seed, collection=col, potential=pot)
        return seed


# -- matrix mutation ----------------------------------------------------------


def collection_mutate_ordered(vectors, index, form):
    """Mutate an ordered tuple of vectors at a position (not a direction)."""
    vs = [tuple(v) for v in vectors]
    if not 0 <= index < len(vs):
        raise ValueError("index out of range")
    d = vs[index]
    return tuple(
        vec_neg(d) if i == index else pl_mutate(form, d, v) for i, v in enumerate(vs)
    )


def b_matrix(vectors, form):
    """The skew matrix b[i][j] = omega(v_i, v_j) of an ordered tuple."""
    vs = [tuple(v) for v in vectors]
    return tuple(tuple(form.omega(vi, vj) for vj in vs) for vi in vs)


def bfz_matrix_mutate(b, k):
    """Standard skew-matrix mutation at row/column k (0-based)."""
    n = len(b)
    if not 0 <= k < n:
        raise ValueError("index out of range")
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-b[i][j])
            else:
                row.append(
                    b[i][j]
                    + (abs(b[i][k]) * b[k][j] + b[i][k] * abs(b[k][j])) // 2
                )
        out.append(tuple(row))
    return tuple(out)
