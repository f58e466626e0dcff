"""Search for small-label diagonal braidings with finite Nichols algebras.

Enumerates connected Dynkin-style diagrams over a pool of root-of-unity
labels, keeps those whose Weyl groupoid closes with a finite root system,
and optionally filters by an exact factored dimension and by the set of
relation clauses the presentation engine uses.  The survivors are printed
in the input DSL so they can be frozen as fixtures.

The four built-in searches correspond to the label regimes that appear in
the classification of arithmetic root systems at small orders:

  a: ranks 5-7, labels of order 3 or 4, fork-shaped trees, quantum-Serre
     exponents 0 or 1 only.
  b: ranks 3-6, labels of order 2, 3 or 5, exponents up to 2.
  c: rank 4, labels of order 2, 3 or 6; dimensions 2^13*3^10 or 2^20*3^16.
  d: ranks 3-4, labels of order 2, 3 or 6; dimensions 2^7*3^6 (rank 3)
     and 2^19*3^15 (rank 4).

Example:
    python scripts/search_family_diagrams.py --family d --rank 3 --limit 5
"""

from __future__ import annotations

import argparse
import itertools
import sys
from math import prod
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from nichols.braiding import BraidingMatrix, DynkinDiagram, matrix_from_diagram
from nichols.cyclo import rou
from nichols.groupoid import BoundExceeded, ExploreLimits, explore
from nichols.present import presentation

Z = rou
M1 = rou(2, 1)

ORD3 = [Z(3, 1), Z(3, 2)]
ORD4 = [Z(4, 1), Z(4, 3)]
ORD5 = [Z(5, k) for k in range(1, 5)]
ORD6 = [Z(6, 1), Z(6, 5)]

FAMILIES = {
    "a": {
        "ranks": (5, 6, 7),
        "vertex_pool": [M1] + ORD3 + ORD4,
        "edge_pool": [M1] + ORD3 + ORD4,
        "max_serre": 1,
        "clauses": {"R1", "R2", "R3", "R4", "R5", "R8"},
        "dims": {},
    },
    "b": {
        "ranks": (3, 4, 5, 6),
        "vertex_pool": [M1] + ORD3 + ORD5,
        "edge_pool": [M1] + ORD3 + ORD5,
        "max_serre": 2,
        "clauses": {"R1", "R2", "R3", "R5", "R8", "R9", "R12"},
        "dims": {},
    },
    "c": {
        "ranks": (4,),
        "vertex_pool": [M1] + ORD3 + ORD6,
        "edge_pool": [M1] + ORD3 + ORD6,
        "max_serre": 2,
        "clauses": {"R1", "R2", "R3", "R5", "R8", "R9", "R12", "R15"},
        "dims": {4: (2**13 * 3**10, 2**20 * 3**16)},
    },
    "d": {
        "ranks": (3, 4),
        "vertex_pool": [M1] + ORD3 + ORD6,
        "edge_pool": [M1] + ORD3 + ORD6,
        "max_serre": 2,
        "clauses": {"R1", "R2", "R3", "R4", "R6", "R8"},
        "dims": {3: (2**7 * 3**6,), 4: (2**19 * 3**15,)},
    },
}


def serre_exponent(qii, qt, cap=7):
    """Least m >= 0 with (m+1)_{qii} (1 - qii^m qt) = 0, or None."""
    if qt.is_one():
        return 0
    acc = qii ** 0
    total = None
    for m in range(cap + 1):
        # (m+1)_{qii} = 0 iff qii^{m+1} = 1 and qii != 1 ... use product form:
        if (qii ** (m + 1)).is_one() and not qii.is_one():
            return m
        if (qii ** m * qt).is_one():
            return m
    return None


def edge_ok(qii, qjj, qt, max_serre):
    for a, b in ((qii, qjj), (qjj, qii)):
        m = serre_exponent(a, qt)
        if m is None or m > max_serre:
            return False
    return True


def supports(rank):
    """Connected edge subsets; for ranks 5-7, fork trees only."""
    if rank <= 4:
        all_edges = list(itertools.combinations(range(rank), 2))
        out = []
        for r in range(rank - 1, len(all_edges) + 1):
            for sub in itertools.combinations(all_edges, r):
                adj = {i: set() for i in range(rank)}
                for i, j in sub:
                    adj[i].add(j)
                    adj[j].add(i)
                seen, todo = {0}, [0]
                while todo:
                    for n in adj[todo.pop()]:
                        if n not in seen:
                            seen.add(n)
                            todo.append(n)
                if len(seen) == rank:
                    out.append(sub)
        return out
    path = [(i, i + 1) for i in range(rank - 2)]
    forks = []
    for attach in range(rank - 2):
        forks.append(tuple(path + [(attach, rank - 1)]))
    return forks


def candidates(rank, spec):
    vpool, epool = spec["vertex_pool"], spec["edge_pool"]
    for sup in supports(rank):
        for vs in itertools.product(vpool, repeat=rank):
            pools = []
            ok = True
            for i, j in sup:
                good = [e for e in epool if edge_ok(vs[i], vs[j], e, spec["max_serre"])]
                if not good:
                    ok = False
                    break
                pools.append(good)
            if not ok:
                continue
            for es in itertools.product(*pools):
                yield DynkinDiagram(tuple(vs), tuple(zip(sup, es)))


def dsl_of(diag):
    lines = [f"rank {diag.rank}"]
    for i, v in enumerate(diag.vertex_labels):
        lines.append(f"v {i + 1} : {v}")
    for (i, j), lab in diag.edges:
        lines.append(f"e {i + 1} {j + 1} : {lab}")
    return "\n".join(lines)


def factored(n):
    out, d = [], 2
    while n > 1 and d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append(f"{d}^{e}" if e > 1 else f"{d}")
        d += 1
    if n > 1:
        out.append(str(n))
    return "*".join(out) or "1"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", choices="abcd", required=True)
    ap.add_argument("--rank", type=int, required=True)
    ap.add_argument("--limit", type=int, default=3, help="stop after this many hits")
    ap.add_argument("--max-objects", type=int, default=3000)
    ap.add_argument("--all-dims", action="store_true",
                    help="ignore the family's target dimensions")
    args = ap.parse_args()

    spec = FAMILIES[args.family]
    if args.rank not in spec["ranks"]:
        ap.error(f"family {args.family} covers ranks {spec['ranks']}")
    targets = None if args.all_dims else spec["dims"].get(args.rank)

    limits = ExploreLimits(max_objects=args.max_objects, max_root_height=40)
    seen_rootdata = set()
    hits = 0
    tried = 0
    for diag in candidates(args.rank, spec):
        tried += 1
        m = matrix_from_diagram(diag)
        res = explore(m, limits)
        if isinstance(res.verdict, BoundExceeded):
            continue
        rs = res.verdict
        dim = prod(rs.order_of(a) for a in rs.roots)
        if targets and dim not in targets:
            continue
        key = (tuple(sorted(rs.roots)), tuple(sorted(str(rs.q_of(a)) for a in rs.roots)))
        if key in seen_rootdata:
            continue
        pres = presentation(m)
        used = {r.clause.name for r in pres.relations}
        if not used <= spec["clauses"]:
            continue
        seen_rootdata.add(key)
        hits += 1
        print(f"# hit {hits}: dim = {factored(dim)}  roots = {len(rs.roots)}  "
              f"clauses = {sorted(used)}")
        print(dsl_of(diag))
        print()
        if hits >= args.limit:
            break
    print(f"# examined {tried} candidate diagrams, kept {hits}", file=sys.stderr)


if __name__ == "__main__":
    main()
