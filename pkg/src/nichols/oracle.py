"""Quantum-symmetrizer oracle: independent graded dimensions and ideal tests.

The defining ideal of the braided-vector-space quotient is, degree by degree,
the kernel of the total quantum symmetrizer S_n = sum over the symmetric
group of the Matsumoto lifts T_sigma built from the braiding.  The lifts are
never enumerated one permutation at a time; S_n is computed through the
length-increasing recursion

    S_1 = id,
    S_n = (S_{n-1} tensor id) o (id + c_{n-1} + c_{n-1}c_{n-2} + ... + c_{n-1}...c_1)

where c_p swaps the letters at positions p, p+1 with the diagonal braiding
coefficient.  On a fixed multidegree every word has the same letter content,
so each operator restricts to the (finite) word basis of that degree; ranks
of the restricted matrices are graded dimensions of the quotient, and a
homogeneous element lies in the ideal iff the symmetrizer kills its
coefficient vector.  All arithmetic is exact over cyclotomic fields; degree
components larger than a hard cap raise DegreeTooLarge instead of silently
truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .braiding import BraidingMatrix, DegreeVector
from .cyclo import CycNumber
from .freealg import (
    NCPoly,
    NonHomogeneous,
    Word,
    degree_word_count,
    words_of_degree,
)

DEFAULT_WORD_CAP = 5000


class DegreeTooLarge(ValueError):
    """The word basis of the requested degree exceeds the configured cap."""

    def __init__(self, degree: DegreeVector, size: int, cap: int):
        super().__init__(
            f"degree {degree} has a word basis of size {size}, above the cap {cap}"
        )
        self.degree = degree
        self.size = size
        self.cap = cap


Vector = dict[Word, CycNumber]


def braid_action(m: BraidingMatrix, w: Word, p: int) -> NCPoly:
    """c_p on a word: swap the letters at positions p, p+1 (1-based), scaled
    by the braiding coefficient of the swapped pair."""
    if not 1 <= p < len(w):
        raise ValueError(f"position {p} out of range for a word of length {len(w)}")
    a, b = w[p - 1], w[p]
    swapped = w[: p - 1] + (b, a) + w[p + 1 :]
    return NCPoly.from_word(swapped, m.q(a, b))


def _braid_vec(m: BraidingMatrix, vec: Vector, p: int) -> Vector:
    out: Vector = {}
    for w, c in vec.items():
        a, b = w[p - 1], w[p]
        swapped = w[: p - 1] + (b, a) + w[p + 1 :]
        coeff = c * m.q(a, b)
        if swapped in out:
            out[swapped] = out[swapped] + coeff
        else:
            out[swapped] = coeff
    return {w: c for w, c in out.items() if not c.is_zero()}


def _vec_add(a: Vector, b: Vector) -> Vector:
    out = dict(a)
    for w, c in b.items():
        if w in out:
            s = out[w] + c
            if s.is_zero():
                del out[w]
            else:
                out[w] = s
        else:
            out[w] = c
    return out


def apply_symmetrizer(m: BraidingMatrix, vec: Vector) -> Vector:
    """S_n applied to a vector of words of common length n (any letter mix)."""
    if not vec:
        return {}
    n = len(next(iter(vec)))
    if any(len(w) != n for w in vec):
        raise NonHomogeneous("symmetrizer input mixes word lengths")
    return _symmetrize(m, vec, n)


def _apply_tail_sum(m: BraidingMatrix, vec: Vector, n: int) -> Vector:
    """(id + c_{n-1} + c_{n-1}c_{n-2} + ... + c_{n-1}...c_1) applied to vec."""
    total = dict(vec)
    for k in range(n - 1, 0, -1):
        term = dict(vec)
        for p in range(k, n):  # c_k first, then c_{k+1}, ..., c_{n-1}
            term = _braid_vec(m, term, p)
        total = _vec_add(total, term)
    return total


def _symmetrize(m: BraidingMatrix, vec: Vector, n: int) -> Vector:
    if n <= 1 or not vec:
        return dict(vec)
    mixed = _apply_tail_sum(m, vec, n)
    # (S_{n-1} tensor id): split by last letter, recurse on the prefixes
    by_last: dict[int, Vector] = {}
    for w, c in mixed.items():
        by_last.setdefault(w[-1], {})[w[:-1]] = c
    out: Vector = {}
    for last, sub in by_last.items():
        for w, c in _symmetrize(m, sub, n - 1).items():
            full = w + (last,)
            if full in out:
                out[full] = out[full] + c
            else:
                out[full] = c
    return {w: c for w, c in out.items() if not c.is_zero()}


@dataclass(frozen=True)
class SymmetrizerMatrix:
    degree: DegreeVector
    basis: tuple[Word, ...]  # lexicographically sorted
    columns: tuple[tuple[CycNumber, ...], ...]  # columns[j][i] = <basis_i | S basis_j>

    @property
    def size(self) -> int:
        return len(self.basis)

    def rank(self) -> int:
        return _rank(list(list(col) for col in self.columns))


def symmetrizer(
    m: BraidingMatrix, degree: DegreeVector, cap: int = DEFAULT_WORD_CAP
) -> SymmetrizerMatrix:
    """Matrix of the total symmetrizer on the word basis of a degree."""
    size = degree_word_count(degree)
    if size > cap:
        raise DegreeTooLarge(degree, size, cap)
    basis = tuple(words_of_degree(degree))
    index = {w: i for i, w in enumerate(basis)}
    n = sum(degree)
    zero = CycNumber.coerce(0)
    cols = []
    for w in basis:
        image = _symmetrize(m, {w: CycNumber.coerce(1)}, n)
        col = [zero] * size
        for word, c in image.items():
            col[index[word]] = c
        cols.append(tuple(col))
    return SymmetrizerMatrix(tuple(degree), basis, tuple(cols))


def _rank(columns: list[list[CycNumber]]) -> int:
    """Exact rank by Gaussian elimination over the cyclotomic field."""
    if not columns:
        return 0
    nrows = len(columns[0])
    rank = 0
    row = 0
    cols = [list(c) for c in columns]
    ncols = len(cols)
    used = [False] * ncols
    while row < nrows and rank < ncols:
        pivot_j: Optional[int] = None
        for j in range(ncols):
            if not used[j] and not cols[j][row].is_zero():
                pivot_j = j
                break
        if pivot_j is None:
            row += 1
            continue
        used[pivot_j] = True
        rank += 1
        inv = cols[pivot_j][row].inverse()
        for j in range(ncols):
            if j == pivot_j or used[j]:
                continue
            factor = cols[j][row]
            if factor.is_zero():
                continue
            scale = factor * inv
            pivot_col = cols[pivot_j]
            col = cols[j]
            for r in range(row, nrows):
                if not pivot_col[r].is_zero():
                    col[r] = col[r] - pivot_col[r] * scale
        row += 1
    return rank


def _compositions(rank: int, total: int) -> Iterator[DegreeVector]:
    """All degree vectors of the given total, lexicographically."""
    if rank == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(rank - 1, total - first):
            yield (first,) + rest


def graded_dims(
    m: BraidingMatrix, max_total_degree: int, cap: int = DEFAULT_WORD_CAP
) -> dict[DegreeVector, int]:
    """dim of the quotient per degree = rank of the symmetrizer there."""
    out: dict[DegreeVector, int] = {}
    for total in range(max_total_degree + 1):
        for degree in _compositions(m.rank, total):
            if total == 0:
                out[degree] = 1
                continue
            out[degree] = symmetrizer(m, degree, cap).rank()
    return out


def in_ideal(m: BraidingMatrix, r: NCPoly, cap: int = DEFAULT_WORD_CAP) -> bool:
    """Whether a homogeneous element lies in the defining ideal (kernel test)."""
    if r.is_zero():
        return True
    degree = r.degree(m.rank)  # raises NonHomogeneous on mixed input
    size = degree_word_count(degree)
    if size > cap:
        raise DegreeTooLarge(degree, size, cap)
    vec = {w: c for w, c in r.terms()}
    image = _symmetrize(m, vec, sum(degree))
    return all(c.is_zero() for c in image.values())


def pbw_graded_dims(
    roots, max_total_degree: int
) -> dict[DegreeVector, int]:
    """Graded dimensions predicted by the root system: coefficients of
    prod over positive roots alpha of (1 + t^alpha + ... + t^((N_alpha-1) alpha)),
    truncated at the given total degree."""
    rank = roots.rank
    series: dict[DegreeVector, int] = {(0,) * rank: 1}
    for alpha in roots.roots:
        n_alpha = roots.order_of(alpha)
        new: dict[DegreeVector, int] = {}
        for deg, coeff in series.items():
            shifted = deg
            for power in range(n_alpha):
                if power:
                    shifted = tuple(a + b for a, b in zip(shifted, alpha))
                    if sum(shifted) > max_total_degree:
                        break
                new[shifted] = new.get(shifted, 0) + coeff
        series = new
    return {
        deg: c for deg, c in series.items() if sum(deg) <= max_total_degree
    }


def quotient_graded_dims(
    m: BraidingMatrix,
    relations,
    max_total_degree: int,
    cap: int = DEFAULT_WORD_CAP,
) -> dict[DegreeVector, int]:
    """Graded dimensions of the free algebra modulo the two-sided ideal
    generated by the given homogeneous elements, up to a total degree.

    Together with graded_dims this yields a completeness test for a
    proposed relation set: the quotient by the generated ideal always
    dominates the canonical quotient degreewise, with equality exactly
    when the relations generate the full defining ideal there."""
    rank = m.rank
    zero = CycNumber.coerce(0)
    by_degree: dict[DegreeVector, list[NCPoly]] = {}
    for r in relations:
        if r.is_zero():
            continue
        by_degree.setdefault(r.degree(rank), []).append(r)

    echelon: dict[DegreeVector, list[list[CycNumber]]] = {}
    pivots: dict[DegreeVector, list[int]] = {}
    dims: dict[DegreeVector, int] = {}
    for total in range(max_total_degree + 1):
        for degree in _compositions(rank, total):
            size = degree_word_count(degree)
            if size > cap:
                raise DegreeTooLarge(degree, size, cap)
            basis = tuple(words_of_degree(degree))
            index = {w: i for i, w in enumerate(basis)}
            rows: list[list[CycNumber]] = []
            rows_pivots: list[int] = []

            def insert(vec: list[CycNumber]) -> None:
                for piv, row in zip(rows_pivots, rows):
                    factor = vec[piv]
                    if not factor.is_zero():
                        for t in range(len(vec)):
                            if not row[t].is_zero():
                                vec[t] = vec[t] - row[t] * factor
                lead = next(
                    (t for t, c in enumerate(vec) if not c.is_zero()), None
                )
                if lead is None:
                    return
                inv = vec[lead].inverse()
                rows.append([c * inv for c in vec])
                rows_pivots.append(lead)

            for r in by_degree.get(degree, ()):
                vec = [zero] * size
                for w, c in r.terms():
                    vec[index[w]] = c
                insert(vec)
            for k in range(rank):
                sub = tuple(
                    d - 1 if j == k else d for j, d in enumerate(degree)
                )
                if any(d < 0 for d in sub):
                    continue
                sub_basis = tuple(words_of_degree(sub))
                for row in echelon.get(sub, ()):
                    left = [zero] * size
                    right = [zero] * size
                    for i, c in enumerate(row):
                        if c.is_zero():
                            continue
                        w = sub_basis[i]
                        left[index[(k,) + w]] = c
                        right[index[w + (k,)]] = c
                    insert(left)
                    insert(right)
            echelon[degree] = rows
            pivots[degree] = rows_pivots
            dims[degree] = size - len(rows)
    return dims
