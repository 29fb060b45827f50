"""Sparse Laurent polynomials over Q and fractions with binomial denominators.

A Laurent polynomial is stored as a dict mapping integer exponent tuples to
nonzero Fractions.  A BinomialRationalFn is a Laurent polynomial divided by a
product of factors (1 + X^d)^e; that class is closed under the birational
mutation maps, which is why it is the carrier type for potentials.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from .lattice import (
    complete_to_basis,
    mat_det,
    mat_inv_int,
    mat_vec,
    pair,
    primitive_part,
    sign_normalize,
    vec_neg,
    vec_scale,
)

__all__ = [
    "LaurentPoly",
    "UnsupportedDenominatorError",
    "monomial_substitution",
    "grade_by",
    "content",
    "binomial_power",
    "DivisionResult",
    "binomial_divide",
    "is_divisible_up_to_unit",
    "divide_exact",
    "BinomialFactor",
    "BinomialRationalFn",
]

_ZERO = Fraction(0)


class UnsupportedDenominatorError(ValueError):
    """A denominator left the monomial-times-binomial-product class."""


def _as_fraction(c):
    if isinstance(c, float):
        raise TypeError("float coefficients are not allowed; use Fraction")
    return Fraction(c)


class LaurentPoly:
    """A Laurent polynomial with Fraction coefficients, stored sparsely."""

    __slots__ = ("_rank", "_terms")

    def __init__(self, rank, terms=()):
        items = terms.items() if hasattr(terms, "items") else terms
        acc = {}
        for exp, coeff in items:
            e = tuple(int(x) for x in exp)
            if len(e) != rank:
                raise ValueError(f"exponent {e} does not have rank {rank}")
            c = acc.get(e, _ZERO) + _as_fraction(coeff)
            if c:
                acc[e] = c
            else:
                acc.pop(e, None)
        self._rank = rank
        self._terms = acc

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, rank):
        return cls(rank)

    @classmethod
    def constant(cls, rank, c):
        return cls(rank, {(0,) * rank: c})

    @classmethod
    def one(cls, rank):
        return cls.constant(rank, 1)

    @classmethod
    def monomial(cls, rank, exp, coeff=1):
        return cls(rank, {tuple(exp): coeff})

    @classmethod
    def variable(cls, rank, index):
        """The variable x_{index+1}, i.e. exponent e_index (0-based)."""
        if not 0 <= index < rank:
            raise ValueError(f"variable index {index} out of range for rank {rank}")
        exp = tuple(1 if i == index else 0 for i in range(rank))
        return cls(rank, {exp: 1})

    # -- basic queries ---------------------------------------------------

    @property
    def rank(self):
        return self._rank

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exp):
        return self._terms.get(tuple(exp), _ZERO)

    def n_terms(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def is_one(self):
        return self._terms == {(0,) * self._rank: Fraction(1)}

    def is_monomial(self):
        return len(self._terms) == 1

    def leading_term(self):
        """(exponent, coefficient) for the lex-largest exponent."""
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        e = max(self._terms)
        return e, self._terms[e]

    def trailing_term(self):
        """(exponent, coefficient) for the lex-smallest exponent."""
        if not self._terms:
            raise ValueError("the zero polynomial has no trailing term")
        e = min(self._terms)
        return e, self._terms[e]

    def exponent_box(self):
        """Componentwise (mins, maxs) over the support.  Nonzero only."""
        if not self._terms:
            raise ValueError("the zero polynomial has no exponent box")
        exps = list(self._terms)
        mins = tuple(min(e[i] for e in exps) for i in range(self._rank))
        maxs = tuple(max(e[i] for e in exps) for i in range(self._rank))
        return mins, maxs

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self._rank, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._rank == other._rank and self._terms == other._terms

    def __hash__(self):
        return hash((self._rank, frozenset(self._terms.items())))

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other._rank != self._rank:
                raise ValueError("rank mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self._rank, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in o._terms.items():
            s = acc.get(e, _ZERO) + c
            if s:
                acc[e] = s
            else:
                acc.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._rank = self._rank
        out._terms = acc
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out._rank = self._rank
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = acc.get(e, _ZERO) + c1 * c2
                if s:
                    acc[e] = s
                else:
                    acc.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._rank = self._rank
        out._terms = acc
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            c = Fraction(1, 1) / Fraction(other)
            return LaurentPoly(self._rank, {e: v * c for e, v in self._terms.items()})
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = LaurentPoly.one(self._rank)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- evaluation and rendering ---------------------------------------

    def evaluate(self, point):
        """Evaluate at a tuple of Fractions (nonzero where exponents are < 0)."""
        if len(point) != self._rank:
            raise ValueError("point has wrong rank")
        pt = [Fraction(p) for p in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            val = c
            for p, a in zip(pt, e):
                if a:
                    val *= p ** a
            total += val
        return total

    def to_string(self):
        """Canonical rendering, parseable by the expression grammar."""
        if not self._terms:
            return "0"
        parts = []
        for exp in sorted(self._terms):
            coeff = self._terms[exp]
            factors = []
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                factors.append(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}")
            mon = "*".join(factors)
            mag = abs(coeff)
            if not mon:
                body = str(mag)
            elif mag == 1:
                body = mon
            else:
                body = f"{mag}*{mon}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if coeff > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self._rank}: {self.to_string()})"


# -- free functions ----------------------------------------------------------


def monomial_substitution(w, matrix):
    """Apply the exponent substitution X^m -> X^(matrix @ m).

    matrix must be square with nonzero determinant, so the substitution is a
    ring embedding (no exponent collisions).
    """
    n = len(matrix)
    if n != w.rank or any(len(row) != w.rank for row in matrix):
        raise ValueError("substitution matrix shape does not match rank")
    if mat_det(matrix) == 0:
        raise ValueError("substitution matrix must be invertible")
    return LaurentPoly(n, {mat_vec(matrix, e): c for e, c in w.items()})


def grade_by(w, u):
    """Split w into graded pieces by the pairing level <exponent, u>."""
    pieces = {}
    for e, c in w.items():
        level = pair(e, u)
        pieces.setdefault(level, []).append((e, c))
    return {
        level: LaurentPoly(w.rank, terms) for level, terms in sorted(pieces.items())
    }


def content(w):
    """gcd of numerators over lcm of denominators of the coefficients."""
    if w.is_zero():
        return Fraction(0)
    num_gcd, den_lcm = 0, 1
    for c in w.terms.values():
        num_gcd = math.gcd(num_gcd, abs(c.numerator))
        den_lcm = math.lcm(den_lcm, c.denominator)
    return Fraction(num_gcd, den_lcm)


def binomial_power(rank, direction, power):
    """(1 + X^direction)^power, expanded."""
    if power < 0:
        raise ValueError("power must be nonnegative")
    d = tuple(direction)
    return LaurentPoly(
        rank,
        [(vec_scale(j, d), math.comb(power, j)) for j in range(power + 1)],
    )


class DivisionResult(NamedTuple):
    quotient: "LaurentPoly"
    remainder: "LaurentPoly"

    @property
    def exact(self):
        return self.remainder.is_zero()


def _dense_divmod(num, den):
    """Ascending-coefficient-list divmod; den must be monic at the top."""
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [], num
    quot = [Fraction(0)] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if not c:
            continue
        q = c / den[dn]
        quot[i - dn] = q
        for j, dcoef in enumerate(den):
            num[i - dn + j] -= q * dcoef
    while num and not num[-1]:
        num.pop()
    return quot, num


def binomial_divide(w, direction, power):
    """Divide w by (1 + X^direction)^power in the Laurent ring.

    Returns DivisionResult(quotient, remainder) with
    w == quotient * (1 + X^direction)^power + remainder, and remainder zero
    exactly when the division is exact.  direction may be any nonzero vector.
    """
    rank = w.rank
    if power < 0:
        raise ValueError("power must be nonnegative")
    if power == 0:
        return DivisionResult(w, LaurentPoly.zero(rank))
    d = tuple(direction)
    if len(d) != rank:
        raise ValueError("direction has wrong rank")
    if all(x == 0 for x in d):
        return DivisionResult(w / Fraction(2) ** power, LaurentPoly.zero(rank))
    if w.is_zero():
        return DivisionResult(w, w)

    g, d0 = primitive_part(d)
    m = complete_to_basis(d0)  # M @ d0 = e1, so X^d becomes Y1^g
    m_inv = mat_inv_int(m)
    v = monomial_substitution(w, m)

    # (1 + t^g)^power as a dense coefficient list in t
    den = [Fraction(0)] * (g * power + 1)
    for j in range(power + 1):
        den[g * j] = Fraction(math.comb(power, j))

    groups = {}
    for e, c in v.items():
        groups.setdefault(e[1:], []).append((e[0], c))

    quot_terms = []
    rem_terms = []
    for tail, entries in groups.items():
        emin = min(e0 for e0, _ in entries)
        coeffs = [Fraction(0)] * (max(e0 for e0, _ in entries) - emin + 1)
        for e0, c in entries:
            coeffs[e0 - emin] = c
        q, r = _dense_divmod(coeffs, den)
        for i, c in enumerate(q):
            if c:
                quot_terms.append(((i + emin,) + tail, c))
        for i, c in enumerate(r):
            if c:
                rem_terms.append(((i + emin,) + tail, c))

    quotient = monomial_substitution(LaurentPoly(rank, quot_terms), m_inv)
    remainder = monomial_substitution(LaurentPoly(rank, rem_terms), m_inv)
    return DivisionResult(quotient, remainder)


def is_divisible_up_to_unit(w, direction, power):
    """True when w = Q * (1 + X^direction)^power for some Laurent Q.

    Monomials are units of the Laurent ring, so divisibility by binomial
    powers is automatically a divisibility-up-to-unit statement.
    """
    return binomial_divide(w, direction, power).exact


def divide_exact(w, d):
    """Exact Laurent division w / d, or None when d does not divide w.

    Works for an arbitrary nonzero divisor d.  The quotient's support is
    confined to the componentwise box [min(w) - min(d), max(w) - max(d)]
    (extreme slices multiply without cancellation over an integral domain),
    and lex-greedy elimination visits strictly decreasing exponents, so the
    loop always terminates.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rank = w.rank
    if d.rank != rank:
        raise ValueError("rank mismatch")
    if w.is_zero():
        return LaurentPoly.zero(rank)

    w_min, w_max = w.exponent_box()
    d_min, d_max = d.exponent_box()
    box_min = tuple(a - b for a, b in zip(w_min, d_min))
    box_max = tuple(a - b for a, b in zip(w_max, d_max))
    if any(lo > hi for lo, hi in zip(box_min, box_max)):
        return None

    lead_d, lead_c = d.leading_term()
    remainder = w
    quot_terms = {}
    while not remainder.is_zero():
        lead_r, lead_rc = remainder.leading_term()
        qe = tuple(a - b for a, b in zip(lead_r, lead_d))
        if any(q < lo or q > hi for q, lo, hi in zip(qe, box_min, box_max)):
            return None
        qc = lead_rc / lead_c
        quot_terms[qe] = qc
        remainder = remainder - LaurentPoly.monomial(rank, qe, qc) * d
    return LaurentPoly(rank, quot_terms)


# -- fractions with binomial denominators ------------------------------------


class BinomialFactor(NamedTuple):
    direction: tuple
    power: int


def _factor_binomial_product(w):
    """Factor w as coeff * X^m * prod (1 + X^a)^p, or return None.

    Every factor direction in the result is lex-positive.  The candidate
    direction at each step is forced: subset sums of lex-positive vectors
    exceed every single summand, so the lex-least nonconstant exponent of a
    normalized binomial product is its least factor direction.
    """
    if w.is_zero():
        return None
    t_exp, t_coeff = w.trailing_term()
    coeff = t_coeff
    base = w / t_coeff
    base = base * LaurentPoly.monomial(w.rank, vec_neg(t_exp))
    factors = {}
    while not base.is_one():
        cand = min(e for e in base.terms if any(e))
        res = binomial_divide(base, cand, 1)
        if not res.exact:
            return None
        base = res.quotient
        factors[cand] = factors.get(cand, 0) + 1
    return coeff, t_exp, factors


class BinomialRationalFn:
    """numerator / prod (1 + X^d)^e, with sign-normalized directions d.

    Flipping a direction uses (1 + X^d)^e == X^(e d) (1 + X^(-d))^e, which
    multiplies the numerator by the unit X^(-e d).  The zero function is
    stored with an empty denominator.
    """

    __slots__ = ("_numerator", "_denominator")

    def __init__(self, numerator, denominator=()):
        if not isinstance(numerator, LaurentPoly):
            raise TypeError("numerator must be a LaurentPoly")
        items = (
            denominator.items() if hasattr(denominator, "items") else denominator
        )
        dens = {}
        num = numerator
        for direction, power in items:
            d = tuple(int(x) for x in direction)
            power = int(power)
            if len(d) != numerator.rank:
                raise ValueError("denominator direction has wrong rank")
            if power < 0:
                raise ValueError("denominator powers must be nonnegative")
            if power == 0:
                continue
            if all(x == 0 for x in d):
                num = num / Fraction(2) ** power
                continue
            nd = sign_normalize(d)
            if nd != d:
                num = num * LaurentPoly.monomial(num.rank, vec_scale(-power, d))
            dens[nd] = dens.get(nd, 0) + power
        if num.is_zero():
            dens = {}
        self._numerator = num
        self._denominator = dens

    @classmethod
    def from_laurent(cls, w):
        return cls(w)

    @classmethod
    def constant(cls, rank, c):
        return cls(LaurentPoly.constant(rank, c))

    @property
    def rank(self):
        return self._numerator.rank

    @property
    def numerator(self):
        return self._numerator

    @property
    def denominator(self):
        """Sorted tuple of BinomialFactor entries."""
        return tuple(
            BinomialFactor(d, e) for d, e in sorted(self._denominator.items())
        )

    def denominator_dict(self):
        return dict(self._denominator)

    def denominator_poly(self):
        out = LaurentPoly.one(self.rank)
        for d, e in sorted(self._denominator.items()):
            out = out * binomial_power(self.rank, d, e)
        return out

    # -- normal form and Laurentness ------------------------------------

    def normalized(self):
        """Cancel every binomial factor that divides the numerator."""
        num = self._numerator
        dens = dict(self._denominator)
        if num.is_zero():
            return BinomialRationalFn(num)
        changed = True
        while changed and dens:
            changed = False
            for d in sorted(dens):
                e = dens[d]
                while e > 0:
                    res = binomial_divide(num, d, 1)
                    if not res.exact:
                        break
                    num = res.quotient
                    e -= 1
                    changed = True
                if e:
                    dens[d] = e
                else:
                    del dens[d]
        return BinomialRationalFn(num, dens)

    def laurent_or_witness(self):
        """(laurent_polynomial, None) when Laurent, else (None, witness).

        The witness is a BinomialFactor from the normalized denominator that
        does not divide the numerator.
        """
        norm = self.normalized()
        if not norm._denominator:
            return norm._numerator, None
        d = min(norm._denominator)
        return None, BinomialFactor(d, norm._denominator[d])

    def is_laurent(self):
        return self.laurent_or_witness()[0] is not None

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, BinomialRationalFn):
            if other.rank != self.rank:
                raise ValueError("rank mismatch")
            return other
        if isinstance(other, LaurentPoly):
            return BinomialRationalFn(other)
        if isinstance(other, (int, Fraction)):
            return BinomialRationalFn.constant(self.rank, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        dens = dict(self._denominator)
        for d, e in o._denominator.items():
            dens[d] = max(dens.get(d, 0), e)
        left = self._numerator
        for d, e in dens.items():
            extra = e - self._denominator.get(d, 0)
            if extra:
                left = left * binomial_power(self.rank, d, extra)
        right = o._numerator
        for d, e in dens.items():
            extra = e - o._denominator.get(d, 0)
            if extra:
                right = right * binomial_power(self.rank, d, extra)
        return BinomialRationalFn(left + right, dens)

    __radd__ = __add__

    def __neg__(self):
        return BinomialRationalFn(-self._numerator, self._denominator)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        dens = dict(self._denominator)
        for d, e in o._denominator.items():
            dens[d] = dens.get(d, 0) + e
        return BinomialRationalFn(self._numerator * o._numerator, dens)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValueError("powers must be integers")
        if n < 0:
            return self.invert() ** (-n)
        result = BinomialRationalFn.constant(self.rank, 1)
        base = self
        for _ in range(n):
            result = result * base
        return result

    def invert(self):
        """1 / self, when the numerator is a monomial times binomials."""
        factored = _factor_binomial_product(self._numerator)
        if factored is None:
            if self._numerator.is_zero():
                raise UnsupportedDenominatorError("division by zero")
            raise UnsupportedDenominatorError(
                "denominator is not a monomial times a product of binomials"
            )
        coeff, mono, factors = factored
        num = LaurentPoly.monomial(self.rank, vec_neg(mono), Fraction(1, 1) / coeff)
        num = num * self.denominator_poly()
        return BinomialRationalFn(num, factors)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.invert()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.invert()

    # -- comparison, evaluation, rendering -------------------------------

    def __eq__(self, other):
        """Structural equality; use equals() for equality as functions."""
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = self._coerce(other)
        if not isinstance(other, BinomialRationalFn):
            return NotImplemented
        return (
            self._numerator == other._numerator
            and self._denominator == other._denominator
        )

    def __hash__(self):
        return hash(
            (self._numerator, frozenset(self._denominator.items()))
        )

    def equals(self, other):
        """Exact equality as rational functions (cross-multiplied)."""
        o = self._coerce(other)
        if o is None:
            raise TypeError("cannot compare")
        return self._numerator * o.denominator_poly() == (
            o._numerator * self.denominator_poly()
        )

    def evaluate(self, point):
        total = self._numerator.evaluate(point)
        for d, e in self._denominator.items():
            base = Fraction(1)
            for p, a in zip(point, d):
                if a:
                    base *= Fraction(p) ** a
            total /= (1 + base) ** e
        return total

    def to_string(self):
        num = self._numerator.to_string()
        if not self._denominator:
            return num
        pieces = []
        for d, e in sorted(self._denominator.items()):
            mono = LaurentPoly.monomial(self.rank, d).to_string()
            base = f"(1 + {mono})"
            pieces.append(base if e == 1 else f"{base}^{e}")
        den = "*".join(pieces)
        return f"({num}) / ({den})"

    def __repr__(self):
        return f"BinomialRationalFn({self.to_string()})"
