"""Weyl groupoid exploration and root systems for diagonal braidings.

From a braiding matrix the generalized Cartan entries are

    a_ii = 2,   a_ij = -min{ n >= 0 : (n+1)_{q_ii} (1 - q_ii^n qtilde_ij) = 0 }

where (k)_q = 1 + q + ... + q^{k-1}; the minimum is Undefined (None) when no n
up to ord(q_ii) * ord(qtilde_ij) works.  Reflecting at vertex i transports the
braiding along s_i(alpha_j) = alpha_j - a_ij alpha_i.  Exploration walks the
groupoid breadth-first, deduplicating objects by generalized Dynkin diagram
*up to relabeling of the vertices*: relabeled braidings have identical root
data up to the same relabeling, and the reference pictures draw one node per
unlabeled diagram.  Each discovered edge records the relabeling needed to
translate between the stored representative and the actual reflection target,
and the positive roots of every object are computed as the least fixed point
of

    roots(X)  >=  s_i^X( perm( roots(Y) ) - {alpha_i} )   for each edge X -i-> Y

seeded with the simple roots.  Root data (Cartan entries, roots, the values
q_alpha = chi(alpha, alpha)) only depend on the twist class, which makes the
per-class computation sound.  Both the number of objects and the root heights
are capped; hitting a cap yields a BoundExceeded verdict instead of an answer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Union

from .braiding import (
    BraidingMatrix,
    DegreeVector,
    DynkinDiagram,
    bichar,
    diagram,
    height,
    matrix_from_diagram,
    unit_vector,
)
from .cyclo import RootOfUnity


class UndefinedReflection(ValueError):
    """Reflection at a vertex whose Cartan row has an undefined entry."""

    def __init__(self, vertex: int, blocking: int):
        super().__init__(
            f"reflection at vertex {vertex + 1} undefined: "
            f"Cartan entry a[{vertex + 1},{blocking + 1}] does not exist"
        )
        self.vertex = vertex
        self.blocking = blocking


@dataclass(frozen=True)
class ExploreLimits:
    """Caps for groupoid exploration."""

    max_objects: int = 10000
    max_root_height: int = 100


@dataclass(frozen=True)
class BoundExceeded:
    """Verdict when exploration hits a cap; not an error, not an answer."""

    kind: str  # "objects" or "root_height"
    limit: int

    def __str__(self) -> str:
        if self.kind == "objects":
            return f"bound exceeded: more than {self.limit} groupoid objects"
        return f"bound exceeded: root of height above {self.limit}"


@dataclass(frozen=True)
class GroupoidObject:
    """One diagram class (up to vertex relabeling) met during exploration."""

    index: int
    matrix: BraidingMatrix  # canonical twist representative, own coordinates
    key: DynkinDiagram
    parent: Optional[tuple[int, int]]  # (source object index, reflection vertex)


@dataclass(frozen=True)
class RootSystem:
    """Positive roots of the input object with their diagonal data."""

    rank: int
    roots: tuple[DegreeVector, ...]  # sorted by (height, components)
    q_values: dict[DegreeVector, RootOfUnity] = field(compare=False)
    orders: dict[DegreeVector, int] = field(compare=False)
    cartan_orbit: frozenset[DegreeVector] = frozenset()

    def q_of(self, alpha: DegreeVector) -> RootOfUnity:
        return self.q_values[alpha]

    def order_of(self, alpha: DegreeVector) -> int:
        return self.orders[alpha]


@dataclass(frozen=True)
class ExploreResult:
    objects: tuple[GroupoidObject, ...]
    # (object index, vertex) -> (target index, relabeling target -> reflected coords)
    edges: dict[tuple[int, int], tuple[int, tuple[int, ...]]]
    verdict: Union[RootSystem, BoundExceeded]

    def edge_targets(self) -> dict[tuple[int, int], int]:
        return {ki: t for ki, (t, _) in self.edges.items()}


# ---------------------------------------------------------------------------
# Cartan entries and reflections
# ---------------------------------------------------------------------------


def _qnum_is_zero(q: RootOfUnity, k: int) -> bool:
    """Whether (k)_q = 1 + q + ... + q^{k-1} vanishes."""
    if k == 0:
        return True
    return not q.is_one() and (q**k).is_one()


def cartan_entry(m: BraidingMatrix, i: int, j: int) -> Optional[int]:
    """Generalized Cartan entry a_ij; None when undefined."""
    if i == j:
        return 2
    qii = m.q(i, i)
    qt = m.qtilde(i, j)
    bound = qii.order * qt.order
    for n in range(bound + 1):
        if _qnum_is_zero(qii, n + 1) or (qii**n * qt).is_one():
            return -n
    return None


def cartan_row(m: BraidingMatrix, i: int) -> tuple[Optional[int], ...]:
    return tuple(cartan_entry(m, i, j) for j in range(m.rank))


def cartan_matrix(m: BraidingMatrix) -> tuple[tuple[Optional[int], ...], ...]:
    return tuple(cartan_row(m, i) for i in range(m.rank))


def reflection_map(m: BraidingMatrix, i: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of s_i on degree vectors (columns s_i(alpha_j)); raises if undefined."""
    rank = m.rank
    row = cartan_row(m, i)
    for j, a in enumerate(row):
        if a is None:
            raise UndefinedReflection(i, j)
    cols = []
    for j in range(rank):
        col = list(unit_vector(rank, j))
        col[i] -= row[j]  # type: ignore[operator]
        cols.append(tuple(col))
    return tuple(cols)


def apply_columns(cols: tuple[tuple[int, ...], ...], v: DegreeVector) -> DegreeVector:
    rank = len(cols[0])
    out = [0] * rank
    for j, c in enumerate(v):
        if c:
            col = cols[j]
            for r in range(rank):
                out[r] += c * col[r]
    return tuple(out)


def reflect(m: BraidingMatrix, i: int) -> BraidingMatrix:
    """The braiding at the object obtained by reflecting at vertex i."""
    cols = reflection_map(m, i)
    rank = m.rank
    rows = [
        [bichar(m, cols[r], cols[s]) for s in range(rank)]
        for r in range(rank)
    ]
    return BraidingMatrix.from_rows(rows)


def cartan_vertices(m: BraidingMatrix) -> tuple[int, ...]:
    """Vertices i with q_ii != -1 and qtilde_ij = q_ii^{a_ij} for every j != i.

    Vertices labeled -1 are excluded even when the exponent condition holds:
    with q_ii = -1 the condition degenerates (every qtilde_ij in {1, -1}
    satisfies it through the vanishing q-number), and treating such vertices
    as Cartan would inject order-2 roots into the Cartan orbit whose power
    relations are never part of a minimal presentation.
    """
    out = []
    for i in range(m.rank):
        qii = m.q(i, i)
        if qii.order == 2:
            continue
        ok = True
        for j in range(m.rank):
            if j == i:
                continue
            a = cartan_entry(m, i, j)
            if a is None or not (m.qtilde(i, j) / qii**a).is_one():
                ok = False
                break
        if ok:
            out.append(i)
    return tuple(out)


# ---------------------------------------------------------------------------
# canonical labeling of diagrams (dedup up to vertex permutation)
# ---------------------------------------------------------------------------


def _rou_key(z: RootOfUnity) -> tuple[int, int]:
    return (z.order, z.numerator)


def _apply_perm(perm: tuple[int, ...], v: DegreeVector) -> DegreeVector:
    """Relabel a degree vector: component at x moves to position perm[x]."""
    out = [0] * len(v)
    for x, c in enumerate(v):
        out[perm[x]] = c
    return tuple(out)


def _invert_perm(perm: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(perm)
    for x, y in enumerate(perm):
        out[y] = x
    return tuple(out)


def _relabel_diagram(d: DynkinDiagram, perm: tuple[int, ...]) -> DynkinDiagram:
    labels = [d.vertex_labels[0]] * d.rank
    for v, lab in enumerate(d.vertex_labels):
        labels[perm[v]] = lab
    edges = []
    for (i, j), lab in d.edges:
        a, b = perm[i], perm[j]
        if a > b:
            a, b = b, a
        edges.append(((a, b), lab))
    return DynkinDiagram(tuple(labels), tuple(sorted(edges, key=lambda e: e[0])))


def _encode(d: DynkinDiagram):
    return (
        tuple(_rou_key(lab) for lab in d.vertex_labels),
        tuple(((i, j), _rou_key(lab)) for (i, j), lab in d.edges),
    )


def canonical_diagram(d: DynkinDiagram) -> tuple[DynkinDiagram, tuple[int, ...]]:
    """Minimal relabeling of a diagram; returns (canonical form, permutation).

    The permutation maps original vertices to their canonical positions.
    Candidate permutations are pruned by iterated neighborhood refinement, so
    only label-preserving relabelings are enumerated.
    """
    n = d.rank
    adj: dict[int, dict[int, tuple[int, int]]] = {v: {} for v in range(n)}
    for (i, j), lab in d.edges:
        adj[i][j] = _rou_key(lab)
        adj[j][i] = _rou_key(lab)
    colors: list = [
        (_rou_key(d.vertex_labels[v]), tuple(sorted(adj[v].values()))) for v in range(n)
    ]
    for _ in range(n):
        refined = [
            (colors[v], tuple(sorted((adj[v][u], colors[u]) for u in adj[v])))
            for v in range(n)
        ]
        if len(set(refined)) == len(set(colors)):
            break
        colors = refined

    groups: dict = {}
    for v in range(n):
        groups.setdefault(colors[v], []).append(v)
    # vertices of equal color are interchangeable candidates; enumerate
    # assignments of canonical positions color class by color class
    ordered_classes = [groups[c] for c in sorted(groups, key=repr)]
    from itertools import permutations as _perms

    slots = []
    start = 0
    for cls in ordered_classes:
        slots.append((cls, list(range(start, start + len(cls)))))
        start += len(cls)

    best: tuple = ()
    best_perm: tuple[int, ...] = ()

    def assignments(idx: int, acc: dict[int, int]):
        if idx == len(slots):
            yield dict(acc)
            return
        cls, positions = slots[idx]
        for images in _perms(positions):
            for v, p in zip(cls, images):
                acc[v] = p
            yield from assignments(idx + 1, acc)
        for v in cls:
            acc.pop(v, None)

    for assign in assignments(0, {}):
        perm = tuple(assign[v] for v in range(n))
        enc = _encode(_relabel_diagram(d, perm))
        if not best or enc < best:
            best = enc
            best_perm = perm
    return _relabel_diagram(d, best_perm), best_perm


# ---------------------------------------------------------------------------
# exploration
# ---------------------------------------------------------------------------


def _positive_rep(v: DegreeVector) -> DegreeVector:
    if all(c <= 0 for c in v):
        return tuple(-c for c in v)
    if all(c >= 0 for c in v):
        return v
    raise ArithmeticError(f"degree vector {v} has mixed signs; not a root")


def explore(m: BraidingMatrix, limits: ExploreLimits = ExploreLimits()) -> ExploreResult:
    """Walk the Weyl groupoid of a braiding and compute its root system.

    Returns the objects (one per diagram class up to vertex relabeling, in
    breadth-first discovery order), the reflection edges between them, and
    either the RootSystem of the input object or a BoundExceeded verdict.
    Each object keeps the coordinates in which it was first met (the base
    object keeps the input coordinates), so the reported roots live in the
    caller's vertex numbering.
    """
    rank = m.rank
    base_diag = diagram(m)
    objects: list[GroupoidObject] = [
        GroupoidObject(0, matrix_from_diagram(base_diag), base_diag, None)
    ]
    _, sigma0 = canonical_diagram(base_diag)
    index_of: dict = {_encode(_relabel_diagram(base_diag, sigma0)): 0}
    to_canon: list[tuple[int, ...]] = [sigma0]  # object coords -> canonical coords
    edges: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}
    refl_cols: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = {}

    queue = deque([0])
    while queue:
        k = queue.popleft()
        mk = objects[k].matrix
        for i in range(rank):
            try:
                cols = reflection_map(mk, i)
            except UndefinedReflection:
                continue
            target_diag = diagram(reflect(mk, i))
            _, sigma = canonical_diagram(target_diag)
            enc = _encode(_relabel_diagram(target_diag, sigma))
            t = index_of.get(enc)
            if t is None:
                if len(objects) >= limits.max_objects:
                    return ExploreResult(
                        tuple(objects), edges, BoundExceeded("objects", limits.max_objects)
                    )
                t = len(objects)
                index_of[enc] = t
                objects.append(
                    GroupoidObject(t, matrix_from_diagram(target_diag), target_diag, (k, i))
                )
                to_canon.append(sigma)
                queue.append(t)
            # translate stored-object coordinates into reflected coordinates
            perm = tuple(_invert_perm(sigma)[to_canon[t][x]] for x in range(rank))
            edges[(k, i)] = (t, perm)
            refl_cols[(k, i)] = cols

    # least fixed point of the per-class root sets
    simples = [unit_vector(rank, i) for i in range(rank)]
    root_sets: list[set[DegreeVector]] = [set(simples) for _ in objects]
    changed = True
    while changed:
        changed = False
        for (k, i), (t, perm) in edges.items():
            cols = refl_cols[(k, i)]
            src = root_sets[k]
            ai = simples[i]
            for beta in list(root_sets[t]):
                moved = _apply_perm(perm, beta)
                if moved == ai:
                    continue
                gamma = apply_columns(cols, moved)
                if gamma not in src:
                    if any(c < 0 for c in gamma):
                        raise ArithmeticError(
                            f"reflection produced non-positive degree {gamma}"
                        )
                    if height(gamma) > limits.max_root_height:
                        return ExploreResult(
                            tuple(objects),
                            edges,
                            BoundExceeded("root_height", limits.max_root_height),
                        )
                    src.add(gamma)
                    changed = True

    # Cartan orbit: images of the Cartan simple roots of every object under
    # every morphism of the groupoid.  Seed each object with its own Cartan
    # simples and close under transport along all edges (self-loops included);
    # signs are dropped since q_{-alpha} = q_alpha.
    orbit_sets: list[set[DegreeVector]] = [
        {simples[i] for i in cartan_vertices(obj.matrix)} for obj in objects
    ]
    changed = True
    while changed:
        changed = False
        for (k, i), (t, perm) in edges.items():
            cols = refl_cols[(k, i)]
            dst = orbit_sets[k]
            for beta in list(orbit_sets[t]):
                gamma = _positive_rep(apply_columns(cols, _apply_perm(perm, beta)))
                if gamma not in dst:
                    dst.add(gamma)
                    changed = True
    orbit = orbit_sets[0]

    roots = tuple(sorted(root_sets[0], key=lambda r: (height(r), r)))
    q_values = {r: bichar(m, r, r) for r in roots}
    orders = {r: q_values[r].order for r in roots}
    rs = RootSystem(rank, roots, q_values, orders, frozenset(orbit))
    return ExploreResult(tuple(objects), edges, rs)


def roots_of(m: BraidingMatrix, limits: ExploreLimits = ExploreLimits()) -> RootSystem:
    """Root system of the input object; raises on BoundExceeded."""
    res = explore(m, limits)
    if isinstance(res.verdict, BoundExceeded):
        raise RuntimeError(str(res.verdict))
    return res.verdict


def cartan_roots(m: BraidingMatrix, rs: RootSystem) -> frozenset[DegreeVector]:
    """The orbit of Cartan simple roots, as positive roots of the input object."""
    return rs.cartan_orbit


def nichols_dimension(rs: RootSystem) -> int:
    """Product over positive roots of the orders of q_alpha."""
    dim = 1
    for r in rs.roots:
        dim *= rs.orders[r]
    return dim


def factored(n: int) -> str:
    """Render an integer as a sorted product of prime powers, e.g. 2^4*3^2."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    if n == 1:
        return "1"
    parts = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            parts.append(f"{d}^{e}" if e > 1 else f"{d}")
        d += 1
    if n > 1:
        parts.append(f"{n}")
    return "*".join(parts)
