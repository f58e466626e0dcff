"""Braided free algebra: Lyndon combinatorics, brackets, and root vectors.

Words are tuples of 0-based letters; the degree of a word is its letter-count
vector.  Two total orders appear: plain lexicographic order (tuples compare
the right way natively) drives the Lyndon machinery, and the deg-lex order
``u >> v  iff  len(u) < len(v), or equal lengths and u > v lexicographically``
(shorter words are larger, the empty word is maximal) orders hyperwords: the
hyperletter of a Lyndon word u equals u plus deg-lex-larger terms, which on
homogeneous components means lex-larger rearrangements.

Noncommutative polynomials multiply by plain word concatenation; the braiding
enters only through the braided bracket

    [x, y]_c = x y - chi(deg x, deg y) y x

on homogeneous arguments.  Root vectors follow the bracketing conventions of
the reference tables for roots supported on at most two vertices (the eleven
composite two-vertex patterns plus the adjoint chains (m a_i + a_j)); for any
other root the canonical choice is the largest Lyndon word of that degree
whose hyperletter survives in the truncated quotient, checked with the
symmetrizer oracle when the degree component is small enough and taken as the
largest Lyndon word outright otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Optional, Sequence, Union

from .braiding import BraidingMatrix, DegreeVector, bichar, support
from .cyclo import CycNumber, RootOfUnity

Word = tuple[int, ...]
Scalar = Union[int, Fraction, RootOfUnity, CycNumber]


class NonHomogeneous(ValueError):
    """An operation that needs a Z^rank-homogeneous argument got a mixed one."""


class NotARoot(ValueError):
    """A degree vector outside the positive root system was passed."""


# ---------------------------------------------------------------------------
# words and Lyndon combinatorics
# ---------------------------------------------------------------------------


def word_degree(w: Word, rank: int) -> DegreeVector:
    out = [0] * rank
    for letter in w:
        out[letter] += 1
    return tuple(out)


def render_word(w: Word) -> str:
    """1-based digit string; letters beyond 9 are parenthesized."""
    return "".join(str(x + 1) if x < 9 else f"({x + 1})" for x in w)


def is_lyndon(u: Word) -> bool:
    """True iff u is nonempty and smaller than every proper suffix."""
    if not u:
        return False
    return all(u < u[k:] for k in range(1, len(u)))


def lyndon_factorize(u: Word) -> list[Word]:
    """Duval's algorithm: the unique non-increasing Lyndon factorization."""
    if not u:
        raise ValueError("empty word has no Lyndon factorization")
    out: list[Word] = []
    k = 0
    n = len(u)
    while k < n:
        i, j = k, k + 1
        while j < n and u[i] <= u[j]:
            i = k if u[i] < u[j] else i + 1
            j += 1
        while k <= i:
            out.append(u[k : k + j - i])
            k += j - i
    return out


def shirshov_split(u: Word) -> tuple[Word, Word]:
    """Split a Lyndon word u = v w with v, w Lyndon and w the smallest such end."""
    if not is_lyndon(u) or len(u) < 2:
        raise ValueError(f"shirshov_split needs a Lyndon word of length >= 2, got {u}")
    best: Optional[int] = None
    for cut in range(1, len(u)):
        if is_lyndon(u[:cut]) and is_lyndon(u[cut:]):
            if best is None or u[cut:] < u[best:]:
                best = cut
    assert best is not None  # every Lyndon word of length >= 2 splits
    return u[:best], u[best:]


def deg_lex_greater(u: Word, v: Word) -> bool:
    """The hyperword order: u is larger when shorter, then lexicographically."""
    if len(u) != len(v):
        return len(u) < len(v)
    return u > v


def lyndon_words_of_degree(degree: DegreeVector) -> Iterator[Word]:
    """Lyndon words with the given letter counts, in decreasing lex order."""
    total = sum(degree)
    if total == 0:
        return
    letters = [i for i, c in enumerate(degree) if c > 0]
    first = letters[0]
    if total == 1:
        yield (first,)
        return
    if degree[first] == total:  # single repeated letter, never Lyndon for total>1
        return

    counts = list(degree)
    counts[first] -= 1
    prefix = [first]

    def walk() -> Iterator[Word]:
        if len(prefix) == total:
            w = tuple(prefix)
            if is_lyndon(w):
                yield w
            return
        for letter in sorted((i for i, c in enumerate(counts) if c > 0), reverse=True):
            counts[letter] -= 1
            prefix.append(letter)
            yield from walk()
            prefix.pop()
            counts[letter] += 1

    yield from walk()


def words_of_degree(degree: DegreeVector) -> list[Word]:
    """All words with the given letter counts, lexicographically sorted."""
    total = sum(degree)
    out: list[Word] = []
    counts = list(degree)
    prefix: list[int] = []

    def walk() -> None:
        if len(prefix) == total:
            out.append(tuple(prefix))
            return
        for letter in range(len(counts)):
            if counts[letter] > 0:
                counts[letter] -= 1
                prefix.append(letter)
                walk()
                prefix.pop()
                counts[letter] += 1

    walk()
    return out


def degree_word_count(degree: DegreeVector) -> int:
    """Multinomial coefficient: number of words of the given degree."""
    total = sum(degree)
    n = factorial(total)
    for c in degree:
        n //= factorial(c)
    return n


# ---------------------------------------------------------------------------
# noncommutative polynomials
# ---------------------------------------------------------------------------


def _term_order_key(w: Word):
    # ascending deg-lex: longer words first, lex ascending within a length
    return (-len(w), w)


class NCPoly:
    """Noncommutative polynomial: finite map word -> cyclotomic coefficient.

    Canonical (no zero coefficients stored) and immutable by convention.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[dict[Word, CycNumber]] = None):
        clean: dict[Word, CycNumber] = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    clean[w] = c
        self._terms = clean

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "NCPoly":
        return NCPoly()

    @staticmethod
    def from_word(w: Word, coeff: Scalar = 1) -> "NCPoly":
        return NCPoly({tuple(w): CycNumber.coerce(coeff)})

    @staticmethod
    def letter(i: int) -> "NCPoly":
        return NCPoly.from_word((i,))

    # -- inspection ----------------------------------------------------------

    def terms(self) -> list[tuple[Word, CycNumber]]:
        return sorted(self._terms.items(), key=lambda t: _term_order_key(t[0]))

    def words(self) -> list[Word]:
        return sorted(self._terms, key=_term_order_key)

    def coeff(self, w: Word) -> CycNumber:
        return self._terms.get(tuple(w), CycNumber.coerce(0))

    def is_zero(self) -> bool:
        return not self._terms

    def leading_word(self) -> Word:
        """The deg-lex smallest word (the PBW-triangular leading term)."""
        if self.is_zero():
            raise ValueError("zero polynomial has no leading word")
        return self.words()[0]

    def degree(self, rank: int) -> DegreeVector:
        degs = {word_degree(w, rank) for w in self._terms}
        if len(degs) != 1:
            raise NonHomogeneous(f"polynomial mixes degrees {sorted(degs)}")
        return degs.pop()

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "NCPoly") -> "NCPoly":
        if not isinstance(other, NCPoly):
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            if w in out:
                out[w] = out[w] + c
            else:
                out[w] = c
        return NCPoly(out)

    def __neg__(self) -> "NCPoly":
        return NCPoly({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, s: Scalar) -> "NCPoly":
        c = CycNumber.coerce(s)
        if c.is_zero():
            return NCPoly.zero()
        return NCPoly({w: coeff * c for w, coeff in self._terms.items()})

    def __mul__(self, other: Union["NCPoly", Scalar]) -> "NCPoly":
        if isinstance(other, NCPoly):
            out: dict[Word, CycNumber] = {}
            for w1, c1 in self._terms.items():
                for w2, c2 in other._terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    if w in out:
                        out[w] = out[w] + c
                    else:
                        out[w] = c
            return NCPoly(out)
        return self.scale(other)

    def __rmul__(self, other: Scalar) -> "NCPoly":
        return self.scale(other)

    def __pow__(self, k: int) -> "NCPoly":
        if k < 0:
            raise ValueError("negative power of a noncommutative polynomial")
        out = NCPoly.from_word(())
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash(frozenset((w, c.canonical()) for w, c in self._terms.items()))

    # -- display -------------------------------------------------------------

    def render(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for w, c in self.terms():
            xw = f"x[{render_word(w)}]"
            s = str(c.canonical())
            if s == "1":
                t = xw
            elif s == "-1":
                t = "-" + xw
            elif " " in s:
                t = f"({s})*{xw}"
            else:
                t = f"{s}*{xw}"
            parts.append(t)
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"NCPoly<{self.render()}>"


# ---------------------------------------------------------------------------
# braided brackets and hyperletters
# ---------------------------------------------------------------------------


def braided_bracket(x: NCPoly, y: NCPoly, m: BraidingMatrix) -> NCPoly:
    """[x, y]_c = x y - chi(deg x, deg y) y x on homogeneous x, y."""
    if x.is_zero() or y.is_zero():
        return NCPoly.zero()
    dx = x.degree(m.rank)
    dy = y.degree(m.rank)
    q = bichar(m, dx, dy)
    return x * y - (y * x).scale(q)


def hyperletter(u: Word, m: BraidingMatrix) -> NCPoly:
    """The bracketing [u]_c: letters fixed, Shirshov halves for Lyndon words,
    products over Lyndon letters for everything else."""
    u = tuple(u)
    if len(u) <= 1:
        return NCPoly.from_word(u)
    if is_lyndon(u):
        v, w = shirshov_split(u)
        return braided_bracket(hyperletter(v, m), hyperletter(w, m), m)
    out = NCPoly.from_word(())
    for factor in lyndon_factorize(u):
        out = out * hyperletter(factor, m)
    return out


def ad_chain(indices: Sequence[int], m: BraidingMatrix) -> NCPoly:
    """(ad_c x_{i_1}) ... (ad_c x_{i_{k-1}}) x_{i_k} for 0-based indices."""
    if not indices:
        raise ValueError("ad_chain needs at least one index")
    out = NCPoly.letter(indices[-1])
    for i in reversed(indices[:-1]):
        out = braided_bracket(NCPoly.letter(i), out, m)
    return out


def ladder(steps: int, i: int, j: int, m: BraidingMatrix) -> NCPoly:
    """The element of degree (steps+1) a_i + steps a_j:
    seed (ad x_i)^2 x_j, then repeated bracketing with x_{ij} on the right."""
    if steps < 1:
        raise ValueError("ladder needs steps >= 1")
    out = ad_chain((i, i, j), m)
    if steps == 1:
        return out
    xij = ad_chain((i, j), m)
    for _ in range(steps - 1):
        out = braided_bracket(out, xij, m)
    return out


# ---------------------------------------------------------------------------
# root vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootVector:
    root: DegreeVector
    word: Word
    value: NCPoly


# two-vertex composite patterns: degree (a, b) on vertices (i, j) maps to a
# bracket of smaller patterns; (m, 1) is handled by adjoint chains directly.
_PAIR_TABLE: dict[tuple[int, int], tuple[tuple[int, int], tuple[int, int]]] = {
    (1, 2): ((1, 1), (0, 1)),
    (3, 2): ((2, 1), (1, 1)),
    (4, 3): ((3, 2), (1, 1)),
    (5, 2): ((3, 1), (2, 1)),
    (5, 3): ((2, 1), (3, 2)),
    (5, 4): ((4, 3), (1, 1)),
    (7, 2): ((4, 1), (3, 1)),
    (7, 3): ((5, 2), (2, 1)),
    (7, 4): ((2, 1), (5, 3)),
    (8, 3): ((3, 1), (5, 2)),
    (8, 5): ((5, 3), (3, 2)),
}


def _pair_word(a: int, b: int, i: int, j: int) -> Word:
    if b == 0:
        return (i,) * a
    if a == 0:
        return (j,) * b
    if b == 1:
        return (i,) * a + (j,)
    if (a, b) in _PAIR_TABLE:
        (la, lb), (ra, rb) = _PAIR_TABLE[(a, b)]
        return _pair_word(la, lb, i, j) + _pair_word(ra, rb, i, j)
    if a == 1:
        return (j,) * b + (i,)  # roles swapped: chain on the other vertex
    raise NotARoot(f"no two-vertex bracketing pattern for degree ({a}, {b})")


def _pair_vector(a: int, b: int, i: int, j: int, m: BraidingMatrix) -> NCPoly:
    if b == 0:
        return NCPoly.from_word((i,) * a)
    if a == 0:
        return NCPoly.from_word((j,) * b)
    if b == 1:
        return ad_chain((i,) * a + (j,), m)
    if (a, b) in _PAIR_TABLE:
        (la, lb), (ra, rb) = _PAIR_TABLE[(a, b)]
        return braided_bracket(
            _pair_vector(la, lb, i, j, m), _pair_vector(ra, rb, i, j, m), m
        )
    if a == 1:
        return ad_chain((j,) * b + (i,), m)
    raise NotARoot(f"no two-vertex bracketing pattern for degree ({a}, {b})")


def _general_root_word(alpha: DegreeVector, m: BraidingMatrix, oracle_cap: int) -> Word:
    """Largest Lyndon word of degree alpha whose hyperletter survives in the
    quotient; the symmetrizer check is skipped above the feasibility cap."""
    check = degree_word_count(alpha) <= oracle_cap
    fallback: Optional[Word] = None
    for w in lyndon_words_of_degree(alpha):
        if fallback is None:
            fallback = w
        if not check:
            return w
        from . import oracle  # deferred: oracle consumes NCPoly from this module

        if not oracle.in_ideal(m, hyperletter(w, m)):
            return w
    if fallback is not None:
        return fallback
    raise NotARoot(f"no Lyndon word of degree {alpha}")


def root_vector(alpha: DegreeVector, roots, m: BraidingMatrix, oracle_cap: int = 5000) -> RootVector:
    """The PBW generator for a positive root: its word and bracketed value.

    `roots` is the RootSystem of m (only membership is consulted).
    """
    alpha = tuple(alpha)
    if alpha not in set(roots.roots):
        raise NotARoot(f"{alpha} is not a positive root of this braiding")
    supp = support(alpha)
    if len(supp) == 1 and alpha[supp[0]] == 1:
        i = supp[0]
        return RootVector(alpha, (i,), NCPoly.letter(i))
    if len(supp) == 2:
        i, j = supp
        a, b = alpha[i], alpha[j]
        try:
            return RootVector(alpha, _pair_word(a, b, i, j), _pair_vector(a, b, i, j, m))
        except NotARoot:
            pass  # fall through to the Lyndon-word construction
    word = _general_root_word(alpha, m, oracle_cap)
    return RootVector(alpha, word, hyperletter(word, m))
