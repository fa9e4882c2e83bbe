"""Builders for the example models shipped with the package.

Face ids follow a fixed scheme so the JSON files and the tests can refer
to them: vertex faces reuse the divisor id, higher faces are numbered on
from there.
"""

from __future__ import annotations

from .degeneration import (
    DegenerationModel,
    DivisorRecord,
    Face,
    StratumCurveData,
    build_model,
)


def tate_cycle(k: int) -> DegenerationModel:
    """Cycle of k rational curves, all multiplicities one.

    The dual complex is a k-gon: vertices 1..k, edge i joining i to i+1
    (cyclically, face ids k+1..2k).  Every vertex stratum carries b = 2
    and its two neighbours as endpoints.
    """
    if k < 2:
        raise ValueError("a cycle needs at least two components")
    divisors = [DivisorRecord(i, N=1, nu=0, label=f"E{i}") for i in range(1, k + 1)]
    faces = [Face(i, (i,)) for i in range(1, k + 1)]
    edges = {}
    for i in range(1, k + 1):
        j = i % k + 1
        edges[i] = Face(k + i, (i, j), (j, i))
        faces.append(edges[i])
    curves = []
    for i in range(1, k + 1):
        prev_edge = edges[(i - 2) % k + 1]
        next_edge = edges[i]
        prev_div = (i - 2) % k + 1
        next_div = i % k + 1
        curves.append(
            StratumCurveData(
                face_id=i,
                b={i: 2},
                endpoint_face_ids=(prev_edge.id, next_edge.id),
                endpoint_divisor_ids=(prev_div, next_div),
            )
        )
    return build_model(1, divisors, faces, curves)


def k3_tetrahedron() -> DegenerationModel:
    """Four surfaces meeting like the boundary of a tetrahedron.

    Divisors 1..4 labelled A..D, all N = 1, nu = 0; six edges with
    b = (1, 1); four triangles.  The dual complex is a triangulated
    two-sphere.
    """
    labels = {1: "A", 2: "B", 3: "C", 4: "D"}
    divisors = [DivisorRecord(i, N=1, nu=0, label=labels[i]) for i in range(1, 5)]
    faces = [Face(i, (i,)) for i in range(1, 5)]
    pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    edge_id = {}
    for offset, (u, v) in enumerate(pairs):
        fid = 5 + offset
        edge_id[(u, v)] = fid
        faces.append(Face(fid, (u, v), (v, u)))
    triples = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    tri_id = {}
    for offset, (u, v, w) in enumerate(triples):
        fid = 11 + offset
        tri_id[(u, v, w)] = fid
        faces.append(Face(fid, (u, v, w), (edge_id[(v, w)], edge_id[(u, w)], edge_id[(u, v)])))
    curves = []
    for (u, v) in pairs:
        tops = [t for t in triples if u in t and v in t]
        leftovers = [next(x for x in t if x not in (u, v)) for t in tops]
        curves.append(
            StratumCurveData(
                face_id=edge_id[(u, v)],
                b={u: 1, v: 1},
                endpoint_face_ids=(tri_id[tops[0]], tri_id[tops[1]]),
                endpoint_divisor_ids=(leftovers[0], leftovers[1]),
            )
        )
    return build_model(2, divisors, faces, curves)


def nonreduced_cycle() -> DegenerationModel:
    """Three-component cycle with one doubled component.

    Divisors: 1 (N=1), 2 (N=1) and 3 (N=2, nu=1).  The stratum at vertex 1
    carries b = 3 against endpoints 2 and 3, balancing 1 + 2 = 3 * 1.  The
    essential skeleton is the closed edge between divisors 1 and 2.
    """
    divisors = [
        DivisorRecord(1, N=1, nu=0, label="E1"),
        DivisorRecord(2, N=1, nu=0, label="E0"),
        DivisorRecord(3, N=2, nu=1, label="Einf"),
    ]
    faces = [
        Face(1, (1,)),
        Face(2, (2,)),
        Face(3, (3,)),
        Face(4, (1, 2), (2, 1)),
        Face(5, (2, 3), (3, 2)),
        Face(6, (3, 1), (1, 3)),
    ]
    curves = [
        StratumCurveData(1, {1: 3}, (4, 6), (2, 3)),
        StratumCurveData(2, {2: 3}, (4, 5), (1, 3)),
        StratumCurveData(3, {3: 1}, (5, 6), (2, 1)),
    ]
    return build_model(1, divisors, faces, curves)


BUNDLED_BUILDERS = {
    "tate_i2": lambda: tate_cycle(2),
    "tate_i3": lambda: tate_cycle(3),
    "tate_i4": lambda: tate_cycle(4),
    "tate_i5": lambda: tate_cycle(5),
    "k3_tetrahedron": k3_tetrahedron,
    "nonreduced_stratum": nonreduced_cycle,
}
