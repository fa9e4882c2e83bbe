"""Combinatorial model of a one-parameter degeneration.

A model records the prime components of the special fiber (with their
multiplicities N and volume-form weights nu), the dual Delta-complex of
their intersections, and for each interior codimension-one face the curve
data of the corresponding one-dimensional stratum: the integers b_j and
the two top faces / divisors meeting the stratum at its two special
points.

The central consistency requirement is the balance condition on every
stratum: because the special fiber is a principal divisor, the curve C of
a codimension-one face tau must satisfy

    N_0 + N_inf = sum_{j in tau} b_j * N_j

where 0 and inf index the two endpoint divisors.  Every operation that
touches curve data asserts this identity exactly.

Models are immutable values; the mutating operations (star subdivision,
edge flip) return new models.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import lattice
from .errors import (
    DegenerateQuadError,
    InvalidCurveDataError,
    MissingCurveDataError,
    NotASurfaceModelError,
    PostconditionViolatedError,
)


@dataclass(frozen=True)
class DivisorRecord:
    """Prime component of the special fiber."""

    id: int
    N: int
    nu: int
    label: str = ""

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"divisor {self.id}: multiplicity must be >= 1")

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.nu, self.N)


@dataclass(frozen=True)
class Face:
    """Simplex of the dual Delta-complex.

    vertex_ids is an ordered list of distinct divisor ids; subface_ids
    lists, for each omitted vertex position, the id of the corresponding
    codimension-one subface (empty for vertices).  Two distinct faces may
    share the same vertex set; identity is by face id.
    """

    id: int
    vertex_ids: tuple[int, ...]
    subface_ids: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertex_ids", tuple(self.vertex_ids))
        object.__setattr__(self, "subface_ids", tuple(self.subface_ids))
        if len(set(self.vertex_ids)) != len(self.vertex_ids):
            raise ValueError(f"face {self.id}: repeated vertex ids")
        if not self.vertex_ids:
            raise ValueError(f"face {self.id}: needs at least one vertex")

    @property
    def dim(self) -> int:
        return len(self.vertex_ids) - 1


@dataclass(frozen=True)
class StratumCurveData:
    """One-dimensional stratum data attached to a codimension-one face."""

    face_id: int
    b: Mapping[int, int]
    endpoint_face_ids: tuple[int, int]
    endpoint_divisor_ids: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "b", dict(self.b))
        object.__setattr__(self, "endpoint_face_ids", tuple(self.endpoint_face_ids))
        object.__setattr__(self, "endpoint_divisor_ids", tuple(self.endpoint_divisor_ids))


@dataclass(frozen=True)
class DegenerationModel:
    """Divisors, dual complex and per-stratum curve data."""

    n: int
    divisors: Mapping[int, DivisorRecord]
    faces: Mapping[int, Face]
    curves: Mapping[int, StratumCurveData]

    def __post_init__(self):
        object.__setattr__(self, "divisors", dict(self.divisors))
        object.__setattr__(self, "faces", dict(self.faces))
        object.__setattr__(self, "curves", dict(self.curves))
        for key, d in self.divisors.items():
            if key != d.id:
                raise ValueError(f"divisor key {key} != record id {d.id}")
        for key, f in self.faces.items():
            if key != f.id:
                raise ValueError(f"face key {key} != face id {f.id}")
        for key, c in self.curves.items():
            if key != c.face_id:
                raise ValueError(f"curve key {key} != curve face id {c.face_id}")

    @property
    def is_reduced(self) -> bool:
        return all(d.N == 1 for d in self.divisors.values())

    def faces_of_dim(self, d: int) -> list[Face]:
        return sorted((f for f in self.faces.values() if f.dim == d), key=lambda f: f.id)

    def top_faces(self) -> list[Face]:
        return self.faces_of_dim(self.n)


def build_model(
    n: int,
    divisors: Iterable[DivisorRecord],
    faces: Iterable[Face],
    curves: Iterable[StratumCurveData] = (),
) -> DegenerationModel:
    return DegenerationModel(
        n=n,
        divisors={d.id: d for d in divisors},
        faces={f.id: f for f in faces},
        curves={c.face_id: c for c in curves},
    )


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    problems: tuple[str, ...]
    warnings: tuple[str, ...]
    reduced: bool
    skeleton_dim: int


def balance_sides(m: DegenerationModel, curve: StratumCurveData) -> tuple[int, int]:
    """Both sides of the balance condition N_0 + N_inf = sum b_j N_j."""
    e0, einf = curve.endpoint_divisor_ids
    lhs = m.divisors[e0].N + m.divisors[einf].N
    rhs = sum(bj * m.divisors[j].N for j, bj in curve.b.items())
    return lhs, rhs


def codim1_occurrences(m: DegenerationModel, tau_id: int) -> list[int]:
    """Ids of top faces having tau as a codimension-one subface, with multiplicity."""
    out = []
    for top in m.top_faces():
        out.extend(top.id for sid in top.subface_ids if sid == tau_id)
    return out


def validate_model(m: DegenerationModel) -> ValidationReport:
    """Structural checks, balance condition per stratum, adjacency checks."""
    problems: list[str] = []
    warnings: list[str] = []

    if m.n < 1:
        problems.append(f"relative dimension must be >= 1, got {m.n}")

    for f in sorted(m.faces.values(), key=lambda f: f.id):
        if f.dim > m.n:
            problems.append(f"face {f.id} has dimension {f.dim} > n = {m.n}")
        for v in f.vertex_ids:
            if v not in m.divisors:
                problems.append(f"face {f.id} references unknown divisor {v}")
        expected_subs = len(f.vertex_ids) if f.dim >= 1 else 0
        if len(f.subface_ids) != expected_subs:
            problems.append(
                f"face {f.id}: expected {expected_subs} subfaces, got {len(f.subface_ids)}"
            )
            continue
        for pos, sid in enumerate(f.subface_ids):
            sub = m.faces.get(sid)
            if sub is None:
                problems.append(f"face {f.id}: subface {sid} does not exist")
                continue
            want = f.vertex_ids[:pos] + f.vertex_ids[pos + 1:]
            if sub.vertex_ids != want:
                problems.append(
                    f"face {f.id}: subface {sid} at position {pos} has vertices "
                    f"{sub.vertex_ids}, expected {want}"
                )

    vertex_faces: dict[int, list[int]] = {}
    for f in m.faces.values():
        if f.dim == 0:
            vertex_faces.setdefault(f.vertex_ids[0], []).append(f.id)
    for div, ids in sorted(vertex_faces.items()):
        if len(ids) > 1:
            problems.append(f"divisor {div} has {len(ids)} vertex faces {sorted(ids)}")
    for div in sorted(m.divisors):
        if div not in vertex_faces:
            warnings.append(f"divisor {div} has no vertex face")

    for tau_id in sorted(m.curves):
        curve = m.curves[tau_id]
        tau = m.faces.get(tau_id)
        if tau is None:
            problems.append(f"curve data references unknown face {tau_id}")
            continue
        if tau.dim != m.n - 1:
            problems.append(
                f"curve data on face {tau_id} of dimension {tau.dim}, expected {m.n - 1}"
            )
            continue
        if set(curve.b) != set(tau.vertex_ids):
            problems.append(
                f"face {tau_id}: b is keyed by {sorted(curve.b)}, expected {sorted(tau.vertex_ids)}"
            )
            continue
        occurrences = codim1_occurrences(m, tau_id)
        if len(occurrences) != 2:
            problems.append(
                f"face {tau_id} lies in {len(occurrences)} top faces, expected exactly 2"
            )
            continue
        if sorted(curve.endpoint_face_ids) != sorted(occurrences):
            problems.append(
                f"face {tau_id}: endpoint faces {curve.endpoint_face_ids} do not match "
                f"the adjacent top faces {tuple(occurrences)}"
            )
            continue
        ok = True
        for slot, (fid, did) in enumerate(
            zip(curve.endpoint_face_ids, curve.endpoint_divisor_ids)
        ):
            top = m.faces[fid]
            leftover = [v for v in top.vertex_ids if v not in tau.vertex_ids]
            if len(leftover) != 1 or leftover[0] != did:
                problems.append(
                    f"face {tau_id}: endpoint divisor {did} at slot {slot} is not the "
                    f"vertex of face {fid} outside the stratum"
                )
                ok = False
        if not ok:
            continue
        lhs, rhs = balance_sides(m, curve)
        if lhs != rhs:
            problems.append(
                f"face {tau_id}: balance condition fails, N_0 + N_inf = {lhs} "
                f"but sum b_j N_j = {rhs}"
            )

    sk = essential_skeleton(m) if not problems else None
    return ValidationReport(
        passed=not problems,
        problems=tuple(problems),
        warnings=tuple(warnings),
        reduced=m.is_reduced,
        skeleton_dim=sk.dim if sk is not None else -1,
    )


# -- essential skeleton and topology -----------------------------------------


@dataclass(frozen=True)
class EssentialSkeleton:
    """Full subcomplex on the divisors minimizing nu/N."""

    faces: Mapping[int, Face]
    vertex_ids: frozenset[int]
    min_ratio: Fraction

    def __post_init__(self):
        object.__setattr__(self, "faces", dict(self.faces))

    @property
    def dim(self) -> int:
        return max((f.dim for f in self.faces.values()), default=-1)


def essential_skeleton(m: DegenerationModel) -> EssentialSkeleton:
    """Subcomplex spanned by the vertices of minimal nu/N, with the ratio."""
    ratios = {d.id: d.ratio for d in m.divisors.values()}
    min_ratio = min(ratios.values())
    keep = frozenset(i for i, r in ratios.items() if r == min_ratio)
    faces = {
        f.id: f for f in m.faces.values() if all(v in keep for v in f.vertex_ids)
    }
    return EssentialSkeleton(faces=faces, vertex_ids=keep, min_ratio=min_ratio)


def is_maximally_degenerate(m: DegenerationModel) -> bool:
    """True when the essential skeleton contains a face of dimension n."""
    return essential_skeleton(m).dim == m.n


def _face_mapping(complex_like) -> dict[int, Face]:
    if isinstance(complex_like, DegenerationModel) or hasattr(complex_like, "faces"):
        return dict(complex_like.faces)
    return dict(complex_like)


@dataclass(frozen=True)
class PseudomanifoldReport:
    passed: bool
    pure: bool
    walls_have_two_sides: bool
    strongly_connected: bool
    top_dim: int
    problems: tuple[str, ...]


def pseudomanifold_check(complex_like) -> PseudomanifoldReport:
    """Closed-pseudomanifold test for a finite Delta-complex.

    Checks purity (every face sits under a top-dimensional face), that
    every codimension-one face lies in exactly two top faces, and that the
    top faces are strongly connected through codimension-one walls.
    """
    faces = _face_mapping(complex_like)
    problems: list[str] = []
    if not faces:
        return PseudomanifoldReport(False, False, False, False, -1, ("empty complex",))
    d = max(f.dim for f in faces.values())
    tops = sorted((f for f in faces.values() if f.dim == d), key=lambda f: f.id)

    reachable: set[int] = set()
    stack = [f.id for f in tops]
    while stack:
        fid = stack.pop()
        if fid in reachable:
            continue
        reachable.add(fid)
        face = faces.get(fid)
        if face is None:
            problems.append(f"subface {fid} missing from the complex")
            continue
        stack.extend(face.subface_ids)
    pure = reachable == set(faces)
    if not pure:
        stray = sorted(set(faces) - reachable)
        problems.append(f"faces {stray} are not contained in any top face")

    wall_count: dict[int, int] = {}
    for top in tops:
        for sid in top.subface_ids:
            wall_count[sid] = wall_count.get(sid, 0) + 1
    walls_ok = True
    for f in sorted(faces.values(), key=lambda f: f.id):
        if f.dim == d - 1:
            count = wall_count.get(f.id, 0)
            if count != 2:
                walls_ok = False
                problems.append(f"wall {f.id} lies in {count} top faces, expected 2")

    adjacency: dict[int, set[int]] = {t.id: set() for t in tops}
    by_wall: dict[int, list[int]] = {}
    for top in tops:
        for sid in top.subface_ids:
            by_wall.setdefault(sid, []).append(top.id)
    for tids in by_wall.values():
        for a, b in itertools.combinations(tids, 2):
            adjacency[a].add(b)
            adjacency[b].add(a)
    seen: set[int] = set()
    if tops:
        stack = [tops[0].id]
        while stack:
            t = stack.pop()
            if t in seen:
                continue
            seen.add(t)
            stack.extend(adjacency[t] - seen)
    connected = len(seen) == len(tops)
    if not connected:
        problems.append("top faces are not strongly connected through walls")

    return PseudomanifoldReport(
        passed=pure and walls_ok and connected,
        pure=pure,
        walls_have_two_sides=walls_ok,
        strongly_connected=connected,
        top_dim=d,
        problems=tuple(problems),
    )


def homology_ranks(complex_like) -> tuple[int, ...]:
    """Ranks of rational simplicial homology in degrees 0..d.

    Boundary maps use the orientation induced by each face's stored vertex
    order: the boundary of a face is the alternating sum of its subfaces
    by omitted position.  Ranks of the boundary matrices are computed
    exactly over Q.
    """
    faces = _face_mapping(complex_like)
    if not faces:
        return ()
    d = max(f.dim for f in faces.values())
    index: dict[int, dict[int, int]] = {}
    for dim in range(d + 1):
        layer = sorted((f for f in faces.values() if f.dim == dim), key=lambda f: f.id)
        index[dim] = {f.id: i for i, f in enumerate(layer)}

    def boundary_rank(dim: int) -> int:
        cols = [fid for fid, _ in sorted(index[dim].items(), key=lambda kv: kv[1])]
        nrows = len(index[dim - 1])
        if nrows == 0 or not cols:
            return 0
        matrix = [[0] * len(cols) for _ in range(nrows)]
        for cidx, fid in enumerate(cols):
            face = faces[fid]
            for pos, sid in enumerate(face.subface_ids):
                matrix[index[dim - 1][sid]][cidx] += (-1) ** pos
        return lattice.rank(matrix)

    ranks = []
    boundary = {dim: boundary_rank(dim) for dim in range(1, d + 1)}
    boundary[0] = 0
    boundary[d + 1] = 0
    for dim in range(d + 1):
        c = len(index[dim])
        ranks.append(c - boundary[dim] - boundary[dim + 1])
    return tuple(ranks)


# -- star subdivision ---------------------------------------------------------


def _face_at_positions(m: DegenerationModel, face: Face, keep: Sequence[int]) -> Face:
    """The iterated subface of `face` spanned by the given vertex positions."""
    current = face
    positions = list(range(len(face.vertex_ids)))
    for p in sorted(set(positions) - set(keep), reverse=True):
        idx = positions.index(p)
        current = m.faces[current.subface_ids[idx]]
        positions.pop(idx)
    return current


def star_subdivide(m: DegenerationModel, top_face_id: int) -> DegenerationModel:
    """Subdivide a top face at a new central vertex.

    The new vertex gets N = sum of the face's multiplicities and nu = sum
    of its weights.  Curve data is transported so the balance condition
    keeps holding on every stratum: the b of each old wall of the face is
    raised by one and its endpoint at the subdivided face is re-pointed to
    the new top face and new divisor, while each newly created interior
    wall carries b = -1 on its old vertices and b = +1 on the new vertex.
    The balance condition is re-asserted on the whole result.
    """
    sigma = m.faces.get(top_face_id)
    if sigma is None or sigma.dim != m.n:
        raise ValueError(f"face {top_face_id} is not a top face")
    missing = [sid for sid in sigma.subface_ids if sid not in m.curves]
    if missing:
        raise MissingCurveDataError(
            f"walls {sorted(missing)} of face {top_face_id} carry no curve data"
        )

    n = m.n
    verts = sigma.vertex_ids
    new_divisor_id = max(m.divisors) + 1
    new_divisor = DivisorRecord(
        id=new_divisor_id,
        N=sum(m.divisors[v].N for v in verts),
        nu=sum(m.divisors[v].nu for v in verts),
        label=f"center-of-{top_face_id}",
    )

    all_positions = tuple(range(n + 1))
    subsets = []
    for size in range(n + 1):
        subsets.extend(itertools.combinations(all_positions, size))
    next_id = max(m.faces) + 1
    new_ids: dict[tuple[int, ...], int] = {}
    for s in subsets:
        new_ids[s] = next_id
        next_id += 1

    faces = dict(m.faces)
    del faces[sigma.id]
    for s in subsets:
        vertex_ids = tuple(verts[p] for p in s) + (new_divisor_id,)
        if len(s) == 0:
            sub_ids: tuple[int, ...] = ()
        else:
            subs = []
            for k in range(len(s)):
                subs.append(new_ids[s[:k] + s[k + 1:]])
            subs.append(_face_at_positions(m, sigma, s).id)
            sub_ids = tuple(subs)
        faces[new_ids[s]] = Face(new_ids[s], vertex_ids, sub_ids)

    curves = dict(m.curves)
    for p in range(n + 1):
        wall_id = sigma.subface_ids[p]
        old = curves[wall_id]
        slots = [i for i, fid in enumerate(old.endpoint_face_ids) if fid == sigma.id]
        if len(slots) != 1:
            raise InvalidCurveDataError(
                f"wall {wall_id} does not point at face {sigma.id} exactly once"
            )
        slot = slots[0]
        new_top = new_ids[tuple(q for q in all_positions if q != p)]
        endpoint_faces = list(old.endpoint_face_ids)
        endpoint_divisors = list(old.endpoint_divisor_ids)
        endpoint_faces[slot] = new_top
        endpoint_divisors[slot] = new_divisor_id
        curves[wall_id] = StratumCurveData(
            face_id=wall_id,
            b={j: bj + 1 for j, bj in old.b.items()},
            endpoint_face_ids=(endpoint_faces[0], endpoint_faces[1]),
            endpoint_divisor_ids=(endpoint_divisors[0], endpoint_divisors[1]),
        )
    for p, q in itertools.combinations(all_positions, 2):
        s = tuple(r for r in all_positions if r not in (p, q))
        wall_id = new_ids[s]
        b = {verts[r]: -1 for r in s}
        b[new_divisor_id] = 1
        curves[wall_id] = StratumCurveData(
            face_id=wall_id,
            b=b,
            endpoint_face_ids=(
                new_ids[tuple(r for r in all_positions if r != p)],
                new_ids[tuple(r for r in all_positions if r != q)],
            ),
            endpoint_divisor_ids=(verts[q], verts[p]),
        )

    divisors = dict(m.divisors)
    divisors[new_divisor_id] = new_divisor
    result = DegenerationModel(n=n, divisors=divisors, faces=faces, curves=curves)
    for curve in result.curves.values():
        lhs, rhs = balance_sides(result, curve)
        if lhs != rhs:
            raise PostconditionViolatedError(
                f"balance broken on wall {curve.face_id} after subdividing "
                f"{top_face_id}: {lhs} != {rhs}"
            )
    return result


# -- edge flip ----------------------------------------------------------------


def _total_order(items: tuple[int, int, int], constraints: list[tuple[int, int]]):
    for perm in itertools.permutations(sorted(items)):
        if all(perm.index(a) < perm.index(b) for a, b in constraints):
            return perm
    return None


def edge_flip(
    m: DegenerationModel,
    edge_id: int,
    new_b: Mapping[int, int] | None = None,
) -> DegenerationModel:
    """Replace the edge of a triangulated surface by the opposite diagonal.

    The two triangles ABx..., ABy around edge AB become ACD and BCD around
    the new edge CD.  Divisors are untouched.  Curve data for the new edge
    is taken from new_b when supplied (and checked against the balance
    condition), otherwise the new edge carries no curve data.  Boundary
    edge data keeps its b values with endpoints re-pointed at the new
    triangles.
    """
    if m.n != 2:
        raise NotASurfaceModelError(f"edge flips need n = 2, this model has n = {m.n}")
    edge = m.faces.get(edge_id)
    if edge is None or edge.dim != 1:
        raise ValueError(f"face {edge_id} is not an edge")
    occurrences = []
    for top in m.top_faces():
        for sid in top.subface_ids:
            if sid == edge_id:
                occurrences.append(top)
    if len(occurrences) != 2:
        raise ValueError(f"edge {edge_id} lies in {len(occurrences)} triangles, need 2")
    t1, t2 = occurrences
    a, b_vert = edge.vertex_ids
    (c,) = [v for v in t1.vertex_ids if v not in (a, b_vert)]
    (d,) = [v for v in t2.vertex_ids if v not in (a, b_vert)]
    if c == d:
        raise DegenerateQuadError(
            f"triangles around edge {edge_id} share the opposite vertex {c}"
        )

    def boundary_edge(top: Face, u: int, v: int) -> Face:
        for pos, sid in enumerate(top.subface_ids):
            sub = m.faces[sid]
            if set(sub.vertex_ids) == {u, v}:
                return sub
        raise ValueError(f"face {top.id} has no edge on {{{u}, {v}}}")

    e_ac = boundary_edge(t1, a, c)
    e_bc = boundary_edge(t1, b_vert, c)
    e_ad = boundary_edge(t2, a, d)
    e_bd = boundary_edge(t2, b_vert, d)

    def order_constraint(e: Face) -> tuple[int, int]:
        return e.vertex_ids

    # The diagonal's vertex order must embed into both new triangles along
    # with the fixed boundary edge orders; pick the forced order if there
    # is one, ids ascending otherwise.
    def forced(ex: Face, ey: Face, mid: int, x: int, y: int):
        # ex joins x with mid, ey joins mid with y; a chain through mid
        # forces the diagonal's order
        if order_constraint(ex) == (x, mid) and order_constraint(ey) == (mid, y):
            return (x, y)
        if order_constraint(ey) == (y, mid) and order_constraint(ex) == (mid, x):
            return (y, x)
        return None

    force1 = forced(e_ac, e_ad, a, c, d)
    force2 = forced(e_bc, e_bd, b_vert, c, d)
    if force1 and force2 and force1 != force2:
        raise PostconditionViolatedError(
            "boundary edge orders around the quad are inconsistent"
        )
    cd_order = force1 or force2 or tuple(sorted((c, d)))

    order1 = _total_order(
        (a, c, d), [order_constraint(e_ac), order_constraint(e_ad), cd_order]
    )
    order2 = _total_order(
        (b_vert, c, d), [order_constraint(e_bc), order_constraint(e_bd), cd_order]
    )
    if order1 is None or order2 is None:
        raise PostconditionViolatedError("no vertex order embeds the boundary edges")

    next_id = max(m.faces) + 1
    new_edge_id, new_t1_id, new_t2_id = next_id, next_id + 1, next_id + 2

    def vertex_face(top: Face, v: int) -> int:
        return _face_at_positions(m, top, (top.vertex_ids.index(v),)).id

    new_edge = Face(
        new_edge_id,
        cd_order,
        (vertex_face(t1 if cd_order[1] == c else t2, cd_order[1]),
         vertex_face(t1 if cd_order[0] == c else t2, cd_order[0])),
    )

    def make_triangle(tid: int, order: tuple[int, int, int]) -> Face:
        edge_for_pair = {
            frozenset((a, c)): e_ac.id, frozenset((b_vert, c)): e_bc.id,
            frozenset((a, d)): e_ad.id, frozenset((b_vert, d)): e_bd.id,
            frozenset((c, d)): new_edge_id,
        }
        subs = []
        for k in range(3):
            pair = frozenset(order[:k] + order[k + 1:])
            subs.append(edge_for_pair[pair])
        return Face(tid, order, tuple(subs))

    faces = dict(m.faces)
    del faces[edge_id]
    del faces[t1.id]
    del faces[t2.id]
    faces[new_edge_id] = new_edge
    faces[new_t1_id] = make_triangle(new_t1_id, order1)
    faces[new_t2_id] = make_triangle(new_t2_id, order2)

    curves = dict(m.curves)
    curves.pop(edge_id, None)
    repoint = {
        e_ac.id: (t1.id, new_t1_id, d),
        e_bc.id: (t1.id, new_t2_id, d),
        e_ad.id: (t2.id, new_t1_id, c),
        e_bd.id: (t2.id, new_t2_id, c),
    }
    for eid, (old_top, new_top, new_div) in repoint.items():
        curve = curves.get(eid)
        if curve is None:
            continue
        endpoint_faces = list(curve.endpoint_face_ids)
        endpoint_divisors = list(curve.endpoint_divisor_ids)
        for i, fid in enumerate(endpoint_faces):
            if fid == old_top:
                endpoint_faces[i] = new_top
                endpoint_divisors[i] = new_div
        curves[eid] = StratumCurveData(
            face_id=eid,
            b=dict(curve.b),
            endpoint_face_ids=(endpoint_faces[0], endpoint_faces[1]),
            endpoint_divisor_ids=(endpoint_divisors[0], endpoint_divisors[1]),
        )
    if new_b is not None:
        if set(new_b) != {c, d}:
            raise InvalidCurveDataError(
                f"new edge data must be keyed by {{{c}, {d}}}, got {sorted(new_b)}"
            )
        lhs = m.divisors[a].N + m.divisors[b_vert].N
        rhs = new_b[c] * m.divisors[c].N + new_b[d] * m.divisors[d].N
        if lhs != rhs:
            raise InvalidCurveDataError(
                f"new edge data violates the balance condition: {lhs} != {rhs}"
            )
        curves[new_edge_id] = StratumCurveData(
            face_id=new_edge_id,
            b=dict(new_b),
            endpoint_face_ids=(new_t1_id, new_t2_id),
            endpoint_divisor_ids=(a, b_vert),
        )

    result = DegenerationModel(n=2, divisors=dict(m.divisors), faces=faces, curves=curves)
    for eid in repoint:
        curve = result.curves.get(eid)
        if curve is None:
            continue
        lhs, rhs = balance_sides(result, curve)
        if lhs != rhs:
            raise InvalidCurveDataError(
                f"re-pointed edge {eid} violates the balance condition: {lhs} != {rhs}"
            )
    return result
