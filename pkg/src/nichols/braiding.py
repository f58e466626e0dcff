"""Diagonal braiding matrices, their Dynkin diagrams, and the input format.

A diagonal braiding of rank theta is a theta x theta matrix of roots of unity
(q_ij).  Its generalized Dynkin diagram records the diagonal entries q_ii and,
for i < j, the products qtilde_ij = q_ij * q_ji whenever they differ from 1;
two braidings are twist equivalent exactly when they have the same diagram,
and every quantity this package computes (Cartan entries, roots, dimensions,
relation sets up to normalization) depends only on the diagram.

Input files use a small line-based format::

    rank 2
    v 1 : z(12,4)      # diagonal entry of vertex 1
    v 2 : z(12,8)
    e 1 2 : z(12,9)    # edge label qtilde_12

or, alternatively, full matrix form with lines ``q i j : scalar``.  Scalars
are ``z(N,k)`` (the root of unity exp(2*pi*i*k/N)), ``1`` or ``-1``.  A file
must use either diagram lines (v/e) or matrix lines (q), not both.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclo import ONE, RootOfUnity, rou

DegreeVector = tuple[int, ...]


class InputError(ValueError):
    """Problem with an input description; carries 1-based line/column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class DslSyntaxError(InputError):
    """Malformed token or line in the input format."""


class RankError(InputError):
    """Missing/invalid rank declaration or vertex index out of range."""


class MissingEntryError(InputError):
    """An entry required by the chosen input form was never given."""


# ---------------------------------------------------------------------------
# degree vector helpers
# ---------------------------------------------------------------------------


def unit_vector(rank: int, i: int) -> DegreeVector:
    return tuple(1 if k == i else 0 for k in range(rank))


def deg_add(a: DegreeVector, b: DegreeVector) -> DegreeVector:
    return tuple(x + y for x, y in zip(a, b))


def deg_sub(a: DegreeVector, b: DegreeVector) -> DegreeVector:
    return tuple(x - y for x, y in zip(a, b))


def deg_scale(k: int, a: DegreeVector) -> DegreeVector:
    return tuple(k * x for x in a)


def height(a: DegreeVector) -> int:
    return sum(a)


def support(a: DegreeVector) -> tuple[int, ...]:
    return tuple(i for i, x in enumerate(a) if x)


# ---------------------------------------------------------------------------
# braiding matrices and diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BraidingMatrix:
    """A square matrix of roots of unity defining a diagonal braiding."""

    entries: tuple[tuple[RootOfUnity, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("braiding matrix must be square")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def q(self, i: int, j: int) -> RootOfUnity:
        return self.entries[i][j]

    def qtilde(self, i: int, j: int) -> RootOfUnity:
        return self.entries[i][j] * self.entries[j][i]

    @staticmethod
    def from_rows(rows: Sequence[Sequence[RootOfUnity]]) -> "BraidingMatrix":
        return BraidingMatrix(tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class DynkinDiagram:
    """Twist-equivalence invariant of a braiding: vertex and edge labels.

    ``edges`` holds ((i, j), qtilde_ij) for i < j with qtilde_ij != 1, sorted
    by (i, j).  Structural equality of diagrams is twist equivalence of the
    underlying braidings.
    """

    vertex_labels: tuple[RootOfUnity, ...]
    edges: tuple[tuple[tuple[int, int], RootOfUnity], ...]

    @property
    def rank(self) -> int:
        return len(self.vertex_labels)

    def edge_label(self, i: int, j: int) -> RootOfUnity:
        if i > j:
            i, j = j, i
        for (a, b), lab in self.edges:
            if (a, b) == (i, j):
                return lab
        return ONE

    def neighbors(self, i: int) -> list[int]:
        out = []
        for (a, b), _ in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)

    def to_dsl(self) -> str:
        lines = [f"rank {self.rank}"]
        for i, lab in enumerate(self.vertex_labels):
            lines.append(f"v {i + 1} : {lab}")
        for (i, j), lab in self.edges:
            lines.append(f"e {i + 1} {j + 1} : {lab}")
        return "\n".join(lines) + "\n"


def bichar(m: BraidingMatrix, a: DegreeVector, b: DegreeVector) -> RootOfUnity:
    """The bicharacter value chi(a, b) = prod q_ij^(a_i * b_j)."""
    exp = Fraction(0)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                exp += m.entries[i][j].exponent * (ai * bj)
    return RootOfUnity(exp)


def sym_bichar(m: BraidingMatrix, a: DegreeVector, b: DegreeVector) -> RootOfUnity:
    """The symmetrized form: prod qtilde_ij^(a_i b_j) with qtilde_ii = q_ii^2."""
    return bichar(m, a, b) * bichar(m, b, a)


def q_alpha(m: BraidingMatrix, a: DegreeVector) -> RootOfUnity:
    """The diagonal value chi(a, a) attached to a degree; twist invariant."""
    return bichar(m, a, a)


def diagram(m: BraidingMatrix) -> DynkinDiagram:
    """Generalized Dynkin diagram of a braiding matrix."""
    labels = tuple(m.entries[i][i] for i in range(m.rank))
    edges = []
    for i in range(m.rank):
        for j in range(i + 1, m.rank):
            t = m.qtilde(i, j)
            if not t.is_one():
                edges.append(((i, j), t))
    return DynkinDiagram(labels, tuple(edges))


def matrix_from_diagram(d: DynkinDiagram) -> BraidingMatrix:
    """Canonical twist representative: q_ij = qtilde_ij and q_ji = 1, i < j."""
    n = d.rank
    rows = [[ONE] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = d.vertex_labels[i]
    for (i, j), lab in d.edges:
        rows[i][j] = lab
    return BraidingMatrix.from_rows(rows)


def render(m: BraidingMatrix) -> str:
    """Matrix-mode input text; parse_input(render(m)) == m."""
    lines = [f"rank {m.rank}"]
    for i in range(m.rank):
        for j in range(m.rank):
            lines.append(f"q {i + 1} {j + 1} : {m.entries[i][j]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# input format
# ---------------------------------------------------------------------------

_SCALAR_RE = re.compile(r"z\(\s*(\d+)\s*,\s*(-?\d+)\s*\)$|1$|-1$")


def _parse_scalar(tok: str, line_no: int, col: int) -> RootOfUnity:
    tok = tok.strip()
    if tok == "1":
        return rou(1, 0)
    if tok == "-1":
        return rou(2, 1)
    mm = re.match(r"z\(\s*(\d+)\s*,\s*(-?\d+)\s*\)$", tok)
    if not mm:
        raise DslSyntaxError(f"malformed scalar {tok!r}", line_no, col)
    n, k = int(mm.group(1)), int(mm.group(2))
    if n < 1:
        raise DslSyntaxError(f"root-of-unity order must be >= 1 in {tok!r}", line_no, col)
    return rou(n, k)


def _split_head(line: str) -> tuple[str, str, int]:
    """Split off the part before ':'; returns (head, tail, column of tail)."""
    if ":" not in line:
        return line.strip(), "", len(line) + 1
    head, _, tail = line.partition(":")
    return head.strip(), tail.strip(), line.index(":") + 2


def parse_input(text: str) -> BraidingMatrix:
    """Parse the line-based input format into a braiding matrix.

    Diagram form (v/e lines) yields the canonical twist representative of the
    described diagram; matrix form (q lines) yields exactly the given matrix.
    """
    rank: int | None = None
    mode: str | None = None  # "diagram" or "matrix"
    vlabels: dict[int, RootOfUnity] = {}
    elabels: dict[tuple[int, int], RootOfUnity] = {}
    qentries: dict[tuple[int, int], RootOfUnity] = {}
    decl_line = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        fields = line.split()
        kw = fields[0]
        if rank is None:
            if kw != "rank":
                raise RankError("first statement must declare the rank", line_no, indent + 1)
            if len(fields) != 2 or not fields[1].isdigit() or int(fields[1]) < 1:
                raise RankError("rank must be a positive integer", line_no, indent + 1)
            rank = int(fields[1])
            decl_line = line_no
            continue
        if kw == "rank":
            raise RankError("rank declared more than once", line_no, indent + 1)
        if kw not in ("v", "e", "q"):
            raise DslSyntaxError(f"unknown statement {kw!r}", line_no, indent + 1)
        want = "diagram" if kw in ("v", "e") else "matrix"
        if mode is None:
            mode = want
        elif mode != want:
            raise DslSyntaxError(
                "cannot mix diagram (v/e) and matrix (q) statements", line_no, indent + 1
            )
        head, tail, scol = _split_head(line)
        if not tail:
            raise DslSyntaxError("missing ': scalar' part", line_no, len(line) + 1)
        idx_tokens = head.split()[1:]
        try:
            idx = [int(t) for t in idx_tokens]
        except ValueError:
            raise DslSyntaxError(f"malformed vertex index in {head!r}", line_no, indent + 1)
        for v in idx:
            if not 1 <= v <= rank:
                raise RankError(f"vertex {v} out of range 1..{rank}", line_no, indent + 1)
        val = _parse_scalar(tail, line_no, scol)
        if kw == "v":
            if len(idx) != 1:
                raise DslSyntaxError("v statement takes one vertex", line_no, indent + 1)
            if idx[0] - 1 in vlabels:
                raise DslSyntaxError(f"duplicate label for vertex {idx[0]}", line_no, indent + 1)
            vlabels[idx[0] - 1] = val
        elif kw == "e":
            if len(idx) != 2 or idx[0] == idx[1]:
                raise DslSyntaxError("e statement takes two distinct vertices", line_no, indent + 1)
            i, j = sorted((idx[0] - 1, idx[1] - 1))
            if (i, j) in elabels:
                raise DslSyntaxError(
                    f"duplicate edge {idx[0]} {idx[1]}", line_no, indent + 1
                )
            elabels[(i, j)] = val
        else:
            if len(idx) != 2:
                raise DslSyntaxError("q statement takes two vertices", line_no, indent + 1)
            i, j = idx[0] - 1, idx[1] - 1
            if (i, j) in qentries:
                raise DslSyntaxError(f"duplicate entry q {idx[0]} {idx[1]}", line_no, indent + 1)
            qentries[(i, j)] = val

    if rank is None:
        raise RankError("empty input: missing rank declaration", 1, 1)
    if mode is None:
        raise MissingEntryError("no entries given", decl_line, 1)

    if mode == "matrix":
        for i in range(rank):
            for j in range(rank):
                if (i, j) not in qentries:
                    raise MissingEntryError(
                        f"missing entry q {i + 1} {j + 1}", decl_line, 1
                    )
        rows = [[qentries[(i, j)] for j in range(rank)] for i in range(rank)]
        return BraidingMatrix.from_rows(rows)

    for i in range(rank):
        if i not in vlabels:
            raise MissingEntryError(f"missing label for vertex {i + 1}", decl_line, 1)
    labels = tuple(vlabels[i] for i in range(rank))
    edges = tuple(
        ((i, j), lab) for (i, j), lab in sorted(elabels.items()) if not lab.is_one()
    )
    return matrix_from_diagram(DynkinDiagram(labels, edges))


def parse_file(path: str) -> BraidingMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_input(fh.read())
