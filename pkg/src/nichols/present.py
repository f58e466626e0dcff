"""Minimal defining relations for Nichols algebras of diagonal type.

A finite root system (from `groupoid.explore`) plus the braiding matrix
determine a defining ideal.  The generators fall into twenty-four clause
shapes, each keyed by a small index tuple:

  * power relations: one per positive root in the Cartan orbit (R1) and one
    per non-Cartan vertex (R3);
  * quantum Serre relations (R2) whenever the adjoint power does not already
    vanish for degree reasons;
  * a catalogue of sporadic relations (R4-R24) whose hypotheses are scalar
    conditions on the braiding entries, Cartan integers m_ij = -a_ij, and
    membership of specific composite roots in the root system.

`applicable_clauses` scans all index tuples deterministically,
`emit_relation` builds the actual free-algebra element for one clause
instance, and `presentation` packages the whole answer.  Relation elements
are built lazily: power relations of high degree are never expanded unless
`.element` is accessed (their degree and rendering do not need it).

Vertex indices in the public interface are 1-based, matching the input
format; R1 instances are keyed by the root vector itself.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Callable, Optional, Sequence, Union

from .braiding import BraidingMatrix, DegreeVector, height, unit_vector
from .cyclo import CycNumber, RootOfUnity, cyc_one, rou
from .freealg import (
    NCPoly,
    _pair_vector,
    ad_chain,
    braided_bracket,
    render_word,
    root_vector,
)
from .groupoid import (
    BoundExceeded,
    ExploreLimits,
    RootSystem,
    cartan_entry,
    cartan_vertices,
    explore,
    factored,
    nichols_dimension,
)

__all__ = [
    "ClauseId",
    "Relation",
    "Presentation",
    "HypothesisViolated",
    "UnknownFormat",
    "applicable_clauses",
    "emit_relation",
    "presentation",
    "render",
    "presentation_from_json",
]


class HypothesisViolated(ValueError):
    """The clause hypothesis does not hold at the requested indices."""


class UnknownFormat(ValueError):
    """Unsupported render format."""


class ClauseId(str, Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R4 = "R4"
    R5 = "R5"
    R6 = "R6"
    R7 = "R7"
    R8 = "R8"
    R9 = "R9"
    R10 = "R10"
    R11 = "R11"
    R12 = "R12"
    R13 = "R13"
    R14 = "R14"
    R15 = "R15"
    R16 = "R16"
    R17 = "R17"
    R18 = "R18"
    R19 = "R19"
    R20 = "R20"
    R21 = "R21"
    R22 = "R22"
    R23 = "R23"
    R24 = "R24"

    @property
    def rank_in_list(self) -> int:
        return int(self.value[1:])


CLAUSES: tuple[ClauseId, ...] = tuple(sorted(ClauseId, key=lambda c: c.rank_in_list))

_MINUS_ONE = rou(2, 1)
_ONE = rou(1, 0)


def _c(x: Union[RootOfUnity, CycNumber, int]) -> CycNumber:
    return CycNumber.coerce(x)


def _m_entry(m: BraidingMatrix, i: int, j: int) -> Optional[int]:
    a = cartan_entry(m, i, j)
    return None if a is None else -a


def _embed(rank: int, i: int, j: int, a: int, b: int) -> DegreeVector:
    v = [0] * rank
    v[i] = a
    v[j] = b
    return tuple(v)


def _fmt_vec(v: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


# ---------------------------------------------------------------------------
# relation and presentation containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    """One defining relation: a clause instance with its element.

    `indices` is the 1-based vertex tuple for R2, R4-R24, the 1-based vertex
    for R3, and the root vector itself for R1.  Equality and hashing use the
    (clause, indices, degree) key only; the element is built on first access.
    """

    clause: ClauseId
    indices: tuple[int, ...]
    degree: DegreeVector
    rendered: str = field(compare=False)
    _build: Callable[[], NCPoly] = field(compare=False, repr=False)

    @cached_property
    def element(self) -> NCPoly:
        el = self._build()
        if el.is_zero():
            raise HypothesisViolated(
                f"{self.clause.value} at {self.indices}: element vanishes"
            )
        return el

    def __str__(self) -> str:
        return f"{self.clause.value} {self.indices} deg={_fmt_vec(self.degree)}: {self.rendered}"


@dataclass(frozen=True)
class Presentation:
    """Braiding matrix, root data, and the ordered list of defining relations."""

    matrix: BraidingMatrix
    verdict: Union[RootSystem, BoundExceeded]
    relations: tuple[Relation, ...]
    dimension: Optional[int]
    limits: ExploreLimits = ExploreLimits()

    @property
    def ok(self) -> bool:
        return isinstance(self.verdict, RootSystem)

    @property
    def roots(self) -> RootSystem:
        if not isinstance(self.verdict, RootSystem):
            raise RuntimeError(str(self.verdict))
        return self.verdict

    def factored_dimension(self) -> Optional[str]:
        return None if self.dimension is None else factored(self.dimension)


# ---------------------------------------------------------------------------
# clause scanners (0-based index tuples, canonical order)
# ---------------------------------------------------------------------------


def _scan_r1(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    return sorted(rs.cartan_orbit)


def _scan_r2(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(m.rank):
            if i == j:
                continue
            mij = _m_entry(m, i, j)
            if mij is None:
                continue
            if mij == 0 and i > j:
                continue  # the (j, i) commutation relation is the same line
            if not (m.q(i, i) ** (mij + 1)).is_one():
                out.append((i, j))
    return out


def _scan_r3(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    cartan = set(cartan_vertices(m))
    orbit = rs.cartan_orbit
    out = []
    for i in range(m.rank):
        if i in cartan:
            continue
        if unit_vector(m.rank, i) in orbit:
            continue  # already covered by the R1 power at the simple root
        out.append((i,))
    return out


def _scan_r4(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(i + 1, m.rank):
            if not (m.q(i, i) == _MINUS_ONE and m.q(j, j) == _MINUS_ONE):
                continue
            if m.qtilde(i, j) != _MINUS_ONE:
                continue
            if any(
                k not in (i, j)
                and (
                    not (m.qtilde(i, k) ** 2).is_one()
                    or not (m.qtilde(j, k) ** 2).is_one()
                )
                for k in range(m.rank)
            ):
                out.append((i, j))
    return out


def _scan_r5(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(m.rank):
            for k in range(i + 1, m.rank):
                if j in (i, k):
                    continue
                if m.q(j, j) != _MINUS_ONE:
                    continue
                if not m.qtilde(i, k).is_one():
                    continue
                if m.qtilde(i, j).is_one():
                    continue  # degenerate: already a consequence of (ad x_i) x_j
                if (m.qtilde(i, j) * m.qtilde(k, j)).is_one():
                    out.append((i, j, k))
    return sorted(out)


def _scan_r6(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(m.rank):
            if i == j:
                continue
            if m.q(j, j) != _MINUS_ONE:
                continue
            qt = m.qtilde(i, j)
            if qt.is_one():
                continue
            prod = m.q(i, i) * qt
            if prod.is_one() or not (prod ** 6).is_one():
                continue
            mij = _m_entry(m, i, j)
            if m.q(i, i).order == 3 or (mij is not None and mij >= 3):
                out.append((i, j))
    return out


def _scan_r7(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(m.rank):
            for k in range(m.rank):
                if len({i, j, k}) < 3:
                    continue
                qii = m.q(i, i)
                if qii.order != 3:
                    continue
                qt_ij = m.qtilde(i, j)
                if qt_ij not in (qii, _MINUS_ONE * qii):
                    continue
                if not m.qtilde(i, k).is_one():
                    continue
                qjj = m.q(j, j)
                qt_jk = m.qtilde(j, k)
                branch_a = qjj == _MINUS_ONE and (qt_ij * qt_jk).is_one()
                branch_b = (
                    qjj != _MINUS_ONE
                    and qjj.inverse() == qt_ij
                    and qt_ij == qt_jk
                    and qt_ij != _MINUS_ONE
                )
                if branch_a or branch_b:
                    out.append((i, j, k))
    return sorted(out)


def _scan_r8(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(i + 1, m.rank):
            for k in range(j + 1, m.rank):
                if (
                    not m.qtilde(i, j).is_one()
                    and not m.qtilde(i, k).is_one()
                    and not m.qtilde(j, k).is_one()
                ):
                    out.append((i, j, k))
    return out


def _r9_branch(m: BraidingMatrix, i: int, j: int, k: int) -> bool:
    qii, qjj, qkk = m.q(i, i), m.q(j, j), m.q(k, k)
    qt_ij, qt_jk = m.qtilde(i, j), m.qtilde(j, k)
    if not m.qtilde(i, k).is_one():
        return False
    if qt_ij.is_one() or qt_jk.is_one():
        return False  # hypotheses below degenerate on disconnected legs
    minus = _MINUS_ONE
    if qii == minus and qjj == minus and qt_ij ** 2 == qt_jk.inverse():
        return True
    if qt_ij == minus and qjj == minus and qii.order == 3 and qii == minus * qt_jk ** 2:
        return True
    if (
        qkk == minus
        and qt_jk == minus
        and qjj == minus
        and qii.order == 3
        and qt_ij == minus * qii
    ):
        return True
    if qjj == minus and qt_ij == qii.inverse() ** 2 and qt_jk == minus * qii.inverse() ** 3:
        return True
    if (
        qii == minus
        and qjj == minus
        and qkk == minus
        and qt_jk.order == 3
        and qt_ij in (qt_jk, minus * qt_jk)
    ):
        return True
    return False


def _scan_r9(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    return sorted(
        (i, j, k)
        for i in range(m.rank)
        for j in range(m.rank)
        for k in range(m.rank)
        if len({i, j, k}) == 3 and _r9_branch(m, i, j, k)
    )


def _scan_r10(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    cands = []
    for i in range(m.rank):
        for j in range(m.rank):
            for k in range(m.rank):
                if len({i, j, k}) < 3:
                    continue
                if not (m.q(i, i) == _MINUS_ONE and m.q(j, j) == _MINUS_ONE):
                    continue
                if not m.qtilde(i, k).is_one():
                    continue
                qt_ij, qt_jk = m.qtilde(i, j), m.qtilde(j, k)
                if qt_ij.is_one() or qt_jk.is_one():
                    continue
                # the pivot j must see no vertices beyond i and k
                if any(
                    l not in (i, j, k) and not m.qtilde(j, l).is_one()
                    for l in range(m.rank)
                ):
                    continue
                full = qt_ij ** 3 == qt_jk
                cropped = qt_ij.order == 3 and qt_jk == _MINUS_ONE
                if full or cropped:
                    cands.append((i, j, k))
    return _mirror_dedupe(cands)


def _r10_is_cropped(m: BraidingMatrix, idx: tuple[int, ...]) -> bool:
    i, j, k = idx
    return m.qtilde(i, j).order == 3 and m.qtilde(j, k) == _MINUS_ONE


def _scan_r11(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    rng = range(m.rank)
    for i in rng:
        for j in rng:
            for k in rng:
                for l in rng:
                    if len({i, j, k, l}) < 4:
                        continue
                    qjj = m.q(j, j)
                    if not (qjj * m.qtilde(i, j)).is_one():
                        continue
                    if not (qjj * m.qtilde(j, k)).is_one():
                        continue
                    qll = m.q(l, l)
                    if m.qtilde(j, k) ** 2 != qll:
                        continue
                    if m.qtilde(l, k).inverse() != qll:
                        continue
                    if m.q(k, k) != _MINUS_ONE:
                        continue
                    if not (
                        m.qtilde(i, k).is_one()
                        and m.qtilde(i, l).is_one()
                        and m.qtilde(j, l).is_one()
                    ):
                        continue
                    out.append((i, j, k, l))
    return sorted(out)


def _mirror_dedupe(cands: list[tuple[int, ...]], prefer=None) -> list[tuple[int, ...]]:
    """Drop one of (i,j,k)/(k,j,i) when both fire and share a degree."""
    cset = set(cands)
    out = []
    for t in sorted(cset):
        rev = (t[2], t[1], t[0])
        if rev in cset and rev != t:
            key_t = (prefer(t), t) if prefer else (0, t)
            key_r = (prefer(rev), rev) if prefer else (0, rev)
            if key_r < key_t:
                continue
        out.append(t)
    return out


def _scan_r12(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    cands = []
    for i in range(m.rank):
        for j in range(m.rank):
            for k in range(m.rank):
                if len({i, j, k}) < 3:
                    continue
                qjj = m.q(j, j)
                if qjj.order != 3:
                    continue
                if m.qtilde(i, j) ** 2 != qjj or m.qtilde(j, k) != qjj:
                    continue
                if not m.qtilde(i, k).is_one():
                    continue
                cands.append((i, j, k))
    return _mirror_dedupe(cands)


def _scan_r13(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    cands = []
    for i in range(m.rank):
        for j in range(m.rank):
            for k in range(m.rank):
                if len({i, j, k}) < 3:
                    continue
                qjj = m.q(j, j)
                if qjj.order != 4:
                    continue
                if m.qtilde(i, j) != qjj or m.qtilde(j, k) != _MINUS_ONE * qjj:
                    continue
                if not m.qtilde(i, k).is_one():
                    continue
                if any(
                    l not in (i, j, k) and not m.qtilde(j, l).is_one()
                    for l in range(m.rank)
                ):
                    continue
                cands.append((i, j, k))
    return _mirror_dedupe(cands)


def _scan_r14(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(m.rank):
            for k in range(m.rank):
                if len({i, j, k}) < 3:
                    continue
                if m.q(i, i) != _MINUS_ONE or m.qtilde(i, j) != _MINUS_ONE:
                    continue
                qjj = m.q(j, j)
                if qjj == _MINUS_ONE:
                    continue
                if m.qtilde(j, k) != qjj.inverse():
                    continue
                if not m.qtilde(i, k).is_one():
                    continue
                out.append((i, j, k))
    return sorted(out)


def _scan_r15(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    cands = []
    for i in range(m.rank):
        for j in range(m.rank):
            for k in range(m.rank):
                if len({i, j, k}) < 3:
                    continue
                if m.q(i, i) != _MINUS_ONE:
                    continue
                if not m.qtilde(i, k).is_one():
                    continue
                qt_ij = m.qtilde(i, j)
                if qt_ij.order != 3:
                    continue
                qjj = m.q(j, j)
                if qjj != qt_ij and qjj != _MINUS_ONE * qt_ij:
                    continue
                if m.qtilde(j, k) != _MINUS_ONE * qjj:
                    continue
                cands.append((i, j, k))
    return _mirror_dedupe(cands)


def _scan_r16(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(m.rank):
            for k in range(m.rank):
                if len({i, j, k}) < 3:
                    continue
                if not m.qtilde(j, k).is_one():
                    continue
                qii = m.q(i, i)
                if qii.order != 3:
                    continue
                if m.qtilde(i, j) != qii or m.qtilde(i, k) != _MINUS_ONE * qii:
                    continue
                if _m_entry(m, j, i) != 2:
                    continue
                out.append((i, j, k))
    return sorted(out)


def _scan_r17(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(m.rank):
            for k in range(m.rank):
                if len({i, j, k}) < 3:
                    continue
                if m.q(j, j) != _MINUS_ONE or m.q(k, k) != _MINUS_ONE:
                    continue
                if m.qtilde(j, k) != _MINUS_ONE:
                    continue
                qii = m.q(i, i)
                if qii.order != 3 or m.qtilde(i, j) != _MINUS_ONE * qii:
                    continue
                if not m.qtilde(i, k).is_one():
                    continue
                out.append((i, j, k))
    return sorted(out)


def _scan_r18(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(i + 1, m.rank):
            qt = m.qtilde(i, j)
            if qt.is_one():
                continue
            qii, qjj = m.q(i, i), m.q(j, j)
            if qii == _MINUS_ONE or qjj == _MINUS_ONE:
                continue
            if (qii * qt).is_one() or (qjj * qt).is_one():
                continue
            out.append((i, j))
    return out


def _root_pair_gate(rs: RootSystem, i: int, j: int, a: int, b: int) -> bool:
    return _embed(rs.rank, i, j, a, b) in set(rs.roots)


def _scan_r19(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(m.rank):
            if i == j:
                continue
            mij = _m_entry(m, i, j)
            if mij is None:
                continue
            ok = mij in (4, 5) or (
                m.q(j, j) == _MINUS_ONE and mij == 3 and m.q(i, i).order == 4
            )
            if ok and _root_pair_gate(rs, i, j, 3, 2):
                out.append((i, j))
    return out


def _scan_r20(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(m.rank):
            if i == j:
                continue
            if not _root_pair_gate(rs, i, j, 3, 2):
                continue
            if _root_pair_gate(rs, i, j, 4, 3):
                continue
            mij = _m_entry(m, i, j)
            if mij == 3 or (mij == 2 and m.q(i, i).order == 3):
                out.append((i, j))
    return out


def _scan_r21(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(m.rank):
            if i == j:
                continue
            if _m_entry(m, i, j) != 2:
                continue
            if not _root_pair_gate(rs, i, j, 3, 2):
                continue
            if not _root_pair_gate(rs, i, j, 4, 3):
                continue
            if _root_pair_gate(rs, i, j, 5, 3):
                continue
            qii, qt = m.q(i, i), m.qtilde(i, j)
            if (qii ** 3 * qt).is_one() or (qii ** 4 * qt).is_one():
                continue
            out.append((i, j))
    return out


def _scan_r22(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(m.rank):
            if i == j:
                continue
            if not _root_pair_gate(rs, i, j, 4, 3):
                continue
            if _root_pair_gate(rs, i, j, 5, 4):
                continue
            mij = _m_entry(m, i, j)
            if _root_pair_gate(rs, i, j, 5, 3) or (mij is not None and mij >= 4):
                out.append((i, j))
    return out


def _scan_r23(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(m.rank):
            if i == j:
                continue
            if not _root_pair_gate(rs, i, j, 5, 2):
                continue
            if _root_pair_gate(rs, i, j, 7, 3):
                continue
            if not _root_pair_gate(rs, i, j, 8, 3):
                continue
            out.append((i, j))
    return out


def _scan_r24(m: BraidingMatrix, rs: RootSystem) -> list[tuple[int, ...]]:
    out = []
    for i in range(m.rank):
        for j in range(m.rank):
            if i == j:
                continue
            if m.q(j, j) != _MINUS_ONE:
                continue
            if _root_pair_gate(rs, i, j, 5, 4):
                out.append((i, j))
    return out


_SCANNERS: dict[ClauseId, Callable[[BraidingMatrix, RootSystem], list[tuple[int, ...]]]] = {
    ClauseId.R1: _scan_r1,
    ClauseId.R2: _scan_r2,
    ClauseId.R3: _scan_r3,
    ClauseId.R4: _scan_r4,
    ClauseId.R5: _scan_r5,
    ClauseId.R6: _scan_r6,
    ClauseId.R7: _scan_r7,
    ClauseId.R8: _scan_r8,
    ClauseId.R9: _scan_r9,
    ClauseId.R10: _scan_r10,
    ClauseId.R11: _scan_r11,
    ClauseId.R12: _scan_r12,
    ClauseId.R13: _scan_r13,
    ClauseId.R14: _scan_r14,
    ClauseId.R15: _scan_r15,
    ClauseId.R16: _scan_r16,
    ClauseId.R17: _scan_r17,
    ClauseId.R18: _scan_r18,
    ClauseId.R19: _scan_r19,
    ClauseId.R20: _scan_r20,
    ClauseId.R21: _scan_r21,
    ClauseId.R22: _scan_r22,
    ClauseId.R23: _scan_r23,
    ClauseId.R24: _scan_r24,
}


# ---------------------------------------------------------------------------
# element builders
# ---------------------------------------------------------------------------


def _w(word: Sequence[int]) -> str:
    return "x{" + render_word(tuple(word)) + "}"


def _pair_token(a: int, b: int, i: int, j: int) -> str:
    return f"x{{({a},{b})@{i + 1}{j + 1}}}"


def _deg(rank: int, items: Sequence[tuple[int, int]]) -> DegreeVector:
    v = [0] * rank
    for vertex, mult in items:
        v[vertex] += mult
    return tuple(v)


def _build_r1(m: BraidingMatrix, rs: RootSystem, alpha: tuple[int, ...]):
    rv = root_vector(alpha, rs, m)
    n = rs.order_of(alpha)
    if height(alpha) == 1:
        token = f"x[{alpha.index(1) + 1}]^{n}"
    else:
        token = f"x[{_fmt_vec(alpha)}]^{n}"
    degree = tuple(n * a for a in alpha)
    return (lambda: rv.value ** n), degree, token


def _build_r2(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j = idx
    mij = _m_entry(m, i, j)
    word = (i,) * (mij + 1) + (j,)
    power = f"^{mij + 1}" if mij else ""
    text = f"ad(x[{i + 1}]){power}(x[{j + 1}])"
    degree = _deg(m.rank, [(i, mij + 1), (j, 1)])
    return (lambda: ad_chain(word, m)), degree, text


def _build_r3(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    (i,) = idx
    n = m.q(i, i).order
    degree = _deg(m.rank, [(i, n)])
    return (lambda: NCPoly.from_word((i,) * n)), degree, f"x[{i + 1}]^{n}"


def _build_r4(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j = idx
    degree = _deg(m.rank, [(i, 2), (j, 2)])

    def build() -> NCPoly:
        xij = ad_chain((i, j), m)
        return xij * xij

    return build, degree, f"{_w((i, j))}^2"


def _build_r5(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j, k = idx
    degree = _deg(m.rank, [(i, 1), (j, 2), (k, 1)])

    def build() -> NCPoly:
        return braided_bracket(ad_chain((i, j, k), m), NCPoly.letter(j), m)

    return build, degree, f"[{_w((i, j, k))}, {_w((j,))}]c"


def _build_r6(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j = idx
    degree = _deg(m.rank, [(i, 3), (j, 2)])

    def build() -> NCPoly:
        return braided_bracket(ad_chain((i, i, j), m), ad_chain((i, j), m), m)

    return build, degree, f"[{_w((i, i, j))}, {_w((i, j))}]c"


def _build_r7(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j, k = idx
    degree = _deg(m.rank, [(i, 3), (j, 2), (k, 1)])

    def build() -> NCPoly:
        return braided_bracket(ad_chain((i, i, j, k), m), ad_chain((i, j), m), m)

    return build, degree, f"[{_w((i, i, j, k))}, {_w((i, j))}]c"


def _build_r8(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j, k = idx
    degree = _deg(m.rank, [(i, 1), (j, 1), (k, 1)])
    one = cyc_one()
    c1 = (one - _c(m.qtilde(j, k))) / (_c(m.q(k, j)) * (one - _c(m.qtilde(i, k))))
    c2 = _c(m.q(i, j)) * (one - _c(m.qtilde(j, k)))

    def build() -> NCPoly:
        xik = ad_chain((i, k), m)
        t1 = ad_chain((i, j, k), m)
        t2 = braided_bracket(xik, NCPoly.letter(j), m).scale(c1)
        t3 = (NCPoly.letter(j) * xik).scale(c2)
        return t1 - t2 - t3

    text = (
        f"{_w((i, j, k))} - ({c1}) [{_w((i, k))}, {_w((j,))}]c"
        f" - ({c2}) {_w((j,))}{_w((i, k))}"
    )
    return build, degree, text


def _build_r9(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j, k = idx
    degree = _deg(m.rank, [(i, 2), (j, 3), (k, 1)])

    def build() -> NCPoly:
        xij = ad_chain((i, j), m)
        inner = braided_bracket(xij, ad_chain((i, j, k), m), m)
        return braided_bracket(inner, NCPoly.letter(j), m)

    return build, degree, f"[[{_w((i, j))}, {_w((i, j, k))}]c, {_w((j,))}]c"


def _build_r10(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j, k = idx
    cropped = _r10_is_cropped(m, idx)

    def build() -> NCPoly:
        xij = ad_chain((i, j), m)
        inner = braided_bracket(xij, braided_bracket(xij, ad_chain((i, j, k), m), m), m)
        if cropped:
            return inner
        return braided_bracket(inner, NCPoly.letter(j), m)

    if cropped:
        degree = _deg(m.rank, [(i, 3), (j, 3), (k, 1)])
        text = f"[{_w((i, j))}, [{_w((i, j))}, {_w((i, j, k))}]c]c"
    else:
        degree = _deg(m.rank, [(i, 3), (j, 4), (k, 1)])
        text = f"[[{_w((i, j))}, [{_w((i, j))}, {_w((i, j, k))}]c]c, {_w((j,))}]c"
    return build, degree, text


def _build_r11(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j, k, l = idx
    degree = _deg(m.rank, [(i, 1), (j, 2), (k, 3), (l, 1)])

    def build() -> NCPoly:
        el = braided_bracket(ad_chain((i, j, k, l), m), NCPoly.letter(k), m)
        el = braided_bracket(el, NCPoly.letter(j), m)
        return braided_bracket(el, NCPoly.letter(k), m)

    text = f"[[[{_w((i, j, k, l))}, {_w((k,))}]c, {_w((j,))}]c, {_w((k,))}]c"
    return build, degree, text


def _build_r12(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j, k = idx
    degree = _deg(m.rank, [(i, 1), (j, 3), (k, 1)])

    def build() -> NCPoly:
        el = braided_bracket(ad_chain((i, j, k), m), NCPoly.letter(j), m)
        return braided_bracket(el, NCPoly.letter(j), m)

    return build, degree, f"[[{_w((i, j, k))}, {_w((j,))}]c, {_w((j,))}]c"


def _build_r13(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j, k = idx
    degree = _deg(m.rank, [(i, 1), (j, 4), (k, 1)])

    def build() -> NCPoly:
        el = braided_bracket(ad_chain((i, j, k), m), NCPoly.letter(j), m)
        el = braided_bracket(el, NCPoly.letter(j), m)
        return braided_bracket(el, NCPoly.letter(j), m)

    text = f"[[[{_w((i, j, k))}, {_w((j,))}]c, {_w((j,))}]c, {_w((j,))}]c"
    return build, degree, text


def _build_r14(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j, k = idx
    degree = _deg(m.rank, [(i, 2), (j, 2), (k, 1)])

    def build() -> NCPoly:
        return braided_bracket(ad_chain((i, j), m), ad_chain((i, j, k), m), m)

    return build, degree, f"[{_w((i, j))}, {_w((i, j, k))}]c"


def _build_r15(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j, k = idx
    degree = _deg(m.rank, [(i, 1), (j, 2), (k, 1)])
    one = cyc_one()
    qjj = m.q(j, j)
    c1 = (one + _c(qjj ** 2)) * _c(m.q(k, j).inverse())
    c2 = (one + _c(qjj ** 2)) * (one + _c(qjj)) * _c(m.q(i, j))

    def build() -> NCPoly:
        t1 = braided_bracket(NCPoly.letter(i), ad_chain((j, j, k), m), m)
        t2 = braided_bracket(ad_chain((i, j, k), m), NCPoly.letter(j), m).scale(c1)
        t3 = (NCPoly.letter(j) * ad_chain((i, j, k), m)).scale(c2)
        return t1 - t2 - t3

    text = (
        f"[{_w((i,))}, {_w((j, j, k))}]c - ({c1}) [{_w((i, j, k))}, {_w((j,))}]c"
        f" - ({c2}) {_w((j,))}{_w((i, j, k))}"
    )
    return build, degree, text


def _build_r16(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j, k = idx
    degree = _deg(m.rank, [(i, 3), (j, 1), (k, 1)])
    c1 = _c(m.q(j, k) * m.q(i, k) * m.q(j, i))
    c2 = _c(m.q(i, j))

    def build() -> NCPoly:
        xij = ad_chain((i, j), m)
        xik = ad_chain((i, k), m)
        xiik = ad_chain((i, i, k), m)
        t1 = braided_bracket(NCPoly.letter(i), braided_bracket(xij, xik, m), m)
        t2 = braided_bracket(xiik, xij, m).scale(c1)
        t3 = (xij * xiik).scale(c2)
        return t1 + t2 + t3

    text = (
        f"[{_w((i,))}, [{_w((i, j))}, {_w((i, k))}]c]c"
        f" + ({c1}) [{_w((i, i, k))}, {_w((i, j))}]c + ({c2}) {_w((i, j))}{_w((i, i, k))}"
    )
    return build, degree, text


def _build_r17(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j, k = idx
    degree = _deg(m.rank, [(i, 3), (j, 2), (k, 2)])

    def build() -> NCPoly:
        return braided_bracket(ad_chain((i, i, j, k), m), ad_chain((i, j, k), m), m)

    return build, degree, f"[{_w((i, i, j, k))}, {_w((i, j, k))}]c"


def _build_r18(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j = idx
    degree = _deg(m.rank, [(i, 2), (j, 2)])
    one = cyc_one()
    qjj, qt = m.q(j, j), m.qtilde(i, j)
    c1 = (one - _c(qt)) * _c(qjj) * _c(m.q(j, i))
    c2 = (one + _c(qjj)) * (one - _c(qjj * qt))

    def build() -> NCPoly:
        xij = ad_chain((i, j), m)
        t1 = braided_bracket(
            NCPoly.letter(i), braided_bracket(xij, NCPoly.letter(j), m), m
        ).scale(c1)
        t2 = (xij * xij).scale(c2)
        return t1 - t2

    text = (
        f"({c1}) [{_w((i,))}, [{_w((i, j))}, {_w((j,))}]c]c"
        f" - ({c2}) {_w((i, j))}^2"
    )
    return build, degree, text


def _build_r19(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j = idx
    degree = _deg(m.rank, [(i, 4), (j, 2)])
    one = cyc_one()
    qii, qjj, qt = m.q(i, i), m.q(j, j), m.qtilde(i, j)
    numer = one - _c(qii * qt) - _c(qii ** 2 * qt ** 2 * qjj)
    denom = (one - _c(qii * qt)) * _c(m.q(j, i))
    coeff = numer / denom

    def build() -> NCPoly:
        x32 = _pair_vector(3, 2, i, j, m)
        xiij = ad_chain((i, i, j), m)
        return braided_bracket(NCPoly.letter(i), x32, m) - (xiij * xiij).scale(coeff)

    text = (
        f"[{_w((i,))}, {_pair_token(3, 2, i, j)}]c - ({coeff}) {_w((i, i, j))}^2"
    )
    return build, degree, text


def _build_r20(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j = idx
    degree = _deg(m.rank, [(i, 4), (j, 3)])

    def build() -> NCPoly:
        return braided_bracket(_pair_vector(3, 2, i, j, m), ad_chain((i, j), m), m)

    return build, degree, f"[{_pair_token(3, 2, i, j)}, {_pair_token(1, 1, i, j)}]c"


def _build_r21(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j = idx
    degree = _deg(m.rank, [(i, 5), (j, 3)])

    def build() -> NCPoly:
        return braided_bracket(ad_chain((i, i, j), m), _pair_vector(3, 2, i, j, m), m)

    return build, degree, f"[{_w((i, i, j))}, {_pair_token(3, 2, i, j)}]c"


def _build_r22(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j = idx
    degree = _deg(m.rank, [(i, 5), (j, 4)])

    def build() -> NCPoly:
        return braided_bracket(_pair_vector(4, 3, i, j, m), ad_chain((i, j), m), m)

    return build, degree, f"[{_pair_token(4, 3, i, j)}, {_pair_token(1, 1, i, j)}]c"


def _build_r23(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j = idx
    degree = _deg(m.rank, [(i, 7), (j, 3)])

    def build() -> NCPoly:
        xiiij = ad_chain((i, i, i, j), m)
        xiij = ad_chain((i, i, j), m)
        return braided_bracket(braided_bracket(xiiij, xiij, m), xiij, m)

    text = f"[[{_w((i, i, i, j))}, {_w((i, i, j))}]c, {_w((i, i, j))}]c"
    return build, degree, text


def _build_r24(m: BraidingMatrix, rs: RootSystem, idx: tuple[int, ...]):
    i, j = idx
    degree = _deg(m.rank, [(i, 6), (j, 4)])
    one = cyc_one()
    qii = m.q(i, i)
    z = m.qtilde(i, j)
    a = (one - _c(z)) * (one - _c(qii ** 4 * z ** 3)) - (one - _c(qii * z)) * (
        one + _c(qii)
    ) * _c(qii * z)
    if a.is_zero():
        raise HypothesisViolated(f"R24 at {(i + 1, j + 1)}: degenerate scalar system")
    b = (one - _c(z)) * (one - _c(qii ** 6 * z ** 5)) - a * _c(qii * z)
    numer = b - (one + _c(qii)) * (one - _c(qii * z)) * (
        one + _c(z) + _c(qii * z ** 2)
    ) * _c(qii ** 6 * z ** 4)
    denom = a * _c(qii ** 3 * m.q(i, j) ** 2 * m.q(j, i) ** 3)
    coeff = numer / denom

    def build() -> NCPoly:
        x43 = _pair_vector(4, 3, i, j, m)
        x32 = _pair_vector(3, 2, i, j, m)
        t1 = braided_bracket(ad_chain((i, i, j), m), x43, m)
        return t1 - (x32 * x32).scale(coeff)

    text = (
        f"[{_w((i, i, j))}, {_pair_token(4, 3, i, j)}]c"
        f" - ({coeff}) {_pair_token(3, 2, i, j)}^2"
    )
    return build, degree, text


_BUILDERS: dict[ClauseId, Callable] = {
    ClauseId.R1: _build_r1,
    ClauseId.R2: _build_r2,
    ClauseId.R3: _build_r3,
    ClauseId.R4: _build_r4,
    ClauseId.R5: _build_r5,
    ClauseId.R6: _build_r6,
    ClauseId.R7: _build_r7,
    ClauseId.R8: _build_r8,
    ClauseId.R9: _build_r9,
    ClauseId.R10: _build_r10,
    ClauseId.R11: _build_r11,
    ClauseId.R12: _build_r12,
    ClauseId.R13: _build_r13,
    ClauseId.R14: _build_r14,
    ClauseId.R15: _build_r15,
    ClauseId.R16: _build_r16,
    ClauseId.R17: _build_r17,
    ClauseId.R18: _build_r18,
    ClauseId.R19: _build_r19,
    ClauseId.R20: _build_r20,
    ClauseId.R21: _build_r21,
    ClauseId.R22: _build_r22,
    ClauseId.R23: _build_r23,
    ClauseId.R24: _build_r24,
}


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def _to_public(clause: ClauseId, idx: tuple[int, ...]) -> tuple[int, ...]:
    if clause is ClauseId.R1:
        return idx
    return tuple(v + 1 for v in idx)


def _to_internal(clause: ClauseId, indices: tuple[int, ...], rank: int) -> tuple[int, ...]:
    if clause is ClauseId.R1:
        return tuple(indices)
    idx = tuple(v - 1 for v in indices)
    if not all(0 <= v < rank for v in idx):
        raise HypothesisViolated(f"{clause.value}: vertex indices {indices} out of range")
    return idx


def applicable_clauses(
    m: BraidingMatrix, roots: RootSystem
) -> list[tuple[ClauseId, tuple[int, ...]]]:
    """All clause instances for this braiding, in canonical emission order."""
    out: list[tuple[ClauseId, tuple[int, ...]]] = []
    for clause in CLAUSES:
        for idx in _SCANNERS[clause](m, roots):
            out.append((clause, _to_public(clause, idx)))
    return out


def emit_relation(
    clause: ClauseId,
    indices: tuple[int, ...],
    m: BraidingMatrix,
    roots: RootSystem,
) -> Relation:
    """Build the relation for one clause instance; validates the hypothesis."""
    clause = ClauseId(clause)
    idx = _to_internal(clause, tuple(indices), m.rank)
    if idx not in _SCANNERS[clause](m, roots):
        raise HypothesisViolated(
            f"{clause.value} does not apply at indices {tuple(indices)}"
        )
    build, degree, text = _BUILDERS[clause](m, roots, idx)
    return Relation(
        clause=clause,
        indices=_to_public(clause, idx),
        degree=degree,
        rendered=text,
        _build=build,
    )


def presentation(
    m: BraidingMatrix, limits: ExploreLimits = ExploreLimits()
) -> Presentation:
    """Root system, dimension, and defining relations of the Nichols algebra.

    When exploration hits a cap the verdict is embedded and the relation list
    is empty; no exception is raised.
    """
    res = explore(m, limits)
    if isinstance(res.verdict, BoundExceeded):
        return Presentation(
            matrix=m, verdict=res.verdict, relations=(), dimension=None, limits=limits
        )
    rs = res.verdict
    rels = []
    seen: set[tuple[ClauseId, tuple[int, ...]]] = set()
    for clause, indices in applicable_clauses(m, rs):
        key = (clause, indices)
        if key in seen:
            continue
        seen.add(key)
        rels.append(emit_relation(clause, indices, m, rs))
    return Presentation(
        matrix=m,
        verdict=rs,
        relations=tuple(rels),
        dimension=nichols_dimension(rs),
        limits=limits,
    )


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _matrix_entries(m: BraidingMatrix) -> list[list[list[int]]]:
    return [
        [[m.q(i, j).order, m.q(i, j).numerator] for j in range(m.rank)]
        for i in range(m.rank)
    ]


def _render_text(p: Presentation) -> str:
    lines = [f"rank: {p.matrix.rank}"]
    for i in range(p.matrix.rank):
        row = " ".join(str(p.matrix.q(i, j)) for j in range(p.matrix.rank))
        lines.append(f"q[{i + 1}]: {row}")
    if not p.ok:
        lines.append(f"verdict: {p.verdict}")
        return "\n".join(lines) + "\n"
    rs = p.roots
    lines.append(f"positive roots ({len(rs.roots)}):")
    for r in rs.roots:
        star = " *" if r in rs.cartan_orbit else ""
        lines.append(f"  {_fmt_vec(r)} q={rs.q_of(r)} N={rs.order_of(r)}{star}")
    lines.append(f"dimension: {p.dimension} = {p.factored_dimension()}")
    lines.append(f"relations ({len(p.relations)}):")
    for rel in p.relations:
        lines.append(f"  {rel}")
    return "\n".join(lines) + "\n"


def _render_json(p: Presentation) -> str:
    doc: dict = {
        "version": 1,
        "rank": p.matrix.rank,
        "matrix": _matrix_entries(p.matrix),
        "limits": {
            "max_objects": p.limits.max_objects,
            "max_root_height": p.limits.max_root_height,
        },
    }
    if not p.ok:
        assert isinstance(p.verdict, BoundExceeded)
        doc["verdict"] = {"kind": p.verdict.kind, "limit": p.verdict.limit}
        doc["roots"] = None
        doc["dimension"] = None
        doc["relations"] = []
        return json.dumps(doc, indent=2, sort_keys=True)
    rs = p.roots
    doc["verdict"] = "ok"
    doc["roots"] = [
        {
            "root": list(r),
            "q": [rs.q_of(r).order, rs.q_of(r).numerator],
            "order": rs.order_of(r),
            "cartan_orbit": r in rs.cartan_orbit,
        }
        for r in rs.roots
    ]
    doc["dimension"] = p.dimension
    doc["dimension_factored"] = p.factored_dimension()
    doc["relations"] = [
        {
            "clause": rel.clause.value,
            "indices": list(rel.indices),
            "degree": list(rel.degree),
            "text": rel.rendered,
        }
        for rel in p.relations
    ]
    return json.dumps(doc, indent=2, sort_keys=True)


def render(p: Presentation, format: str = "text") -> str:
    if format == "text":
        return _render_text(p)
    if format == "json":
        return _render_json(p)
    raise UnknownFormat(f"unknown render format: {format!r}")


def presentation_from_json(text: str) -> Presentation:
    """Rebuild a Presentation from its structured render.

    The matrix and the clause instances are taken from the document; root
    data and elements are recomputed, so the result compares equal to the
    original presentation.
    """
    doc = json.loads(text)
    if doc.get("version") != 1:
        raise ValueError("unsupported document version")
    rows = [
        [rou(order, num) for order, num in row] for row in doc["matrix"]
    ]
    m = BraidingMatrix.from_rows(rows)
    limits = ExploreLimits(
        max_objects=doc["limits"]["max_objects"],
        max_root_height=doc["limits"]["max_root_height"],
    )
    res = explore(m, limits)
    if isinstance(res.verdict, BoundExceeded):
        if doc["verdict"] == "ok":
            raise ValueError("document claims success but exploration hit a bound")
        return Presentation(
            matrix=m, verdict=res.verdict, relations=(), dimension=None, limits=limits
        )
    rs = res.verdict
    rels = []
    for item in doc["relations"]:
        clause = ClauseId(item["clause"])
        indices = tuple(item["indices"])
        rel = emit_relation(clause, indices, m, rs)
        if list(rel.degree) != item["degree"]:
            raise ValueError(
                f"degree mismatch for {clause.value} at {indices}: "
                f"{list(rel.degree)} != {item['degree']}"
            )
        rels.append(rel)
    return Presentation(
        matrix=m,
        verdict=rs,
        relations=tuple(rels),
        dimension=nichols_dimension(rs),
        limits=limits,
    )
