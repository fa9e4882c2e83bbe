"""Torus-fibration computations over a degeneration model.

This module turns the combinatorial model into geometry: the retraction of
valued points onto the skeleton, tropicalization of torus points, the
two-cone fan attached to a one-dimensional stratum, height-one chart
slices, the affine transitions they induce across walls, and monodromy
around loops of top faces.

Arithmetic is exact throughout.  Chart conventions:

* the canonical chart of a face with vertices i and multiplicities N_i is
  the simplex {w >= 0 : sum N_i w_i = 1}, coordinatized by dropping the
  coordinate of the highest-id vertex, so each vertex i sits at e_i / N_i;
* stratum fans live in Z^n x Z with ray heights N_i / iota, and all slice
  coordinates drop the height axis;
* transitions run from the chart of the first endpoint face (the one at
  the 0-end of the stratum) to the chart of the second.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Mapping, Sequence

from . import lattice
from .degeneration import DegenerationModel, balance_sides
from .errors import (
    BrokenCycleError,
    DimensionMismatchError,
    LabelMismatchError,
    NonPositiveBError,
    NonPositiveValuationError,
    NonUnimodularTransitionError,
    NormalizationError,
    NotLogCalabiYauError,
    NotUnimodularError,
    PostconditionViolatedError,
    ReducedBasisError,
    SingularLatticeError,
)
from .fan import Cone, Fan, IotaWeight, SlicePolytope, common_face, is_smooth, ray_multiplicity, slice_cone_height_one
from .lattice import IntMat, IntVec, RatVec


# -- points -------------------------------------------------------------------


@dataclass(frozen=True)
class ValuedPoint:
    """Normalized valuations q_i > 0 of the divisors of a face at a point."""

    face_id: int
    q: Mapping[int, Fraction]

    def __post_init__(self):
        q = {int(k): Fraction(v) for k, v in dict(self.q).items()}
        object.__setattr__(self, "q", q)
        for k, v in q.items():
            if v <= 0:
                raise NonPositiveValuationError(f"valuation of divisor {k} is {v}")


@dataclass(frozen=True)
class SkeletonPoint:
    """Interior point of a face in barycentric coordinates."""

    face_id: int
    alpha: tuple[Fraction, ...]

    def __post_init__(self):
        alpha = tuple(Fraction(a) for a in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if any(a <= 0 for a in alpha):
            raise ValueError("barycentric coordinates must be positive")
        if sum(alpha) != 1:
            raise ValueError("barycentric coordinates must sum to 1")


@dataclass(frozen=True)
class TorusPoint:
    """Monomial point of a split torus, recorded by its valuation vector."""

    r: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(Fraction(x) for x in self.r))


# -- affine maps ---------------------------------------------------------------


@dataclass(frozen=True)
class AffineTransition:
    """Affine map x -> A x + b with integer linear part."""

    A: IntMat
    b: RatVec

    def __post_init__(self):
        a = tuple(tuple(int(x) for x in row) for row in self.A)
        b = tuple(Fraction(x) for x in self.b)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "b", b)
        if any(len(row) != len(a) for row in a) or len(b) != len(a):
            raise DimensionMismatchError("transition shape mismatch")

    @property
    def linear_det(self) -> int:
        return lattice.determinant(self.A)

    def apply(self, x: Sequence) -> RatVec:
        return tuple(
            sum((Fraction(c) * Fraction(v) for c, v in zip(row, x)), start=off)
            for row, off in zip(self.A, self.b)
        )


def identity_transition(n: int) -> AffineTransition:
    return AffineTransition(lattice.identity_matrix(n), (Fraction(0),) * n)


def compose(outer: AffineTransition, inner: AffineTransition) -> AffineTransition:
    a = lattice.mat_mul(outer.A, inner.A)
    b = tuple(x + y for x, y in zip(lattice.mat_vec(outer.A, inner.b), outer.b))
    return AffineTransition(a, b)


def invert(t: AffineTransition) -> AffineTransition:
    ainv = lattice.int_inverse_unimodular(t.A)
    return AffineTransition(ainv, tuple(-x for x in lattice.mat_vec(ainv, t.b)))


def check_integral_affine(t: AffineTransition, reduced: bool = False) -> bool:
    """True when the linear part is unimodular and, for reduced models,
    the translation is integral."""
    if abs(t.linear_det) != 1:
        return False
    if reduced and any(x.denominator != 1 for x in t.b):
        return False
    return True


# -- retraction and tropicalization --------------------------------------------


def retract(m: DegenerationModel, x: ValuedPoint) -> SkeletonPoint:
    """Skeleton point with barycentric coordinates alpha_i = N_i q_i."""
    face = m.faces.get(x.face_id)
    if face is None:
        raise ValueError(f"unknown face {x.face_id}")
    if set(x.q) != set(face.vertex_ids):
        raise ValueError(
            f"valuations keyed by {sorted(x.q)}, face {face.id} has vertices "
            f"{sorted(face.vertex_ids)}"
        )
    alpha = tuple(m.divisors[v].N * x.q[v] for v in face.vertex_ids)
    total = sum(alpha)
    if total != 1:
        raise NormalizationError(f"sum N_i q_i = {total}, expected 1")
    return SkeletonPoint(face_id=x.face_id, alpha=alpha)


def as_valued_point(m: DegenerationModel, p: SkeletonPoint) -> ValuedPoint:
    """The valued point with q_i = alpha_i / N_i representing p itself."""
    face = m.faces[p.face_id]
    q = {v: a / m.divisors[v].N for v, a in zip(face.vertex_ids, p.alpha)}
    return ValuedPoint(face_id=p.face_id, q=q)


def trop_character(x: TorusPoint, mchar: Sequence[int]) -> Fraction:
    """Valuation of the monomial with exponent vector mchar at x."""
    if len(mchar) != len(x.r):
        raise DimensionMismatchError(
            f"character length {len(mchar)} vs point dimension {len(x.r)}"
        )
    return sum((int(c) * r for c, r in zip(mchar, x.r)), start=Fraction(0))


def quotient_representative(r: Sequence, L: Sequence[Sequence[int]]) -> RatVec:
    """Representative of r modulo the column lattice of L, with all
    L-coordinates in [0, 1)."""
    L = tuple(tuple(int(x) for x in row) for row in L)
    if lattice.determinant(L) == 0:
        raise SingularLatticeError("period lattice matrix is singular")
    coords = lattice.mat_vec(lattice.rat_inverse(L), tuple(Fraction(x) for x in r))
    reduced = tuple(c - floor(c) for c in coords)
    return lattice.mat_vec(L, reduced)


# -- stratum fans ---------------------------------------------------------------


@dataclass(frozen=True)
class StratumFan:
    """Two-cone fan of a one-dimensional stratum.

    The rays over the stratum's own divisors span the common face; the 0
    and inf rays complete it to the two maximal cones.  ray_labels sends
    each primitive ray generator to the divisor id it carries.
    """

    fan: Fan
    iota: IotaWeight
    ray_labels: Mapping[IntVec, int]
    j_divisors: tuple[int, ...]
    e0_divisor: int
    einf_divisor: int
    v_j: Mapping[int, IntVec]
    v0: IntVec
    vinf: IntVec
    basis: IntMat

    def __post_init__(self):
        object.__setattr__(self, "ray_labels", dict(self.ray_labels))
        object.__setattr__(self, "v_j", dict(self.v_j))

    @property
    def sigma0(self) -> Cone:
        return self.fan.maximal_cones[0]

    @property
    def sigmainf(self) -> Cone:
        return self.fan.maximal_cones[1]


def _reduced_case_basis(n: int) -> list[IntVec]:
    """Columns (v_J[0], ..., v_J[n-1], v_0) of the explicit height-one basis:
    the first n-1 stratum rays take the later standard basis vectors, the
    last stratum ray sits over the origin, and the 0-ray takes the first."""
    cols: list[IntVec] = []
    for i in range(n - 1):
        u = [0] * n
        u[i + 1] = 1
        cols.append(tuple(u) + (1,))
    cols.append((0,) * n + (1,))
    e0 = [0] * n
    e0[0] = 1
    cols.append(tuple(e0) + (1,))
    return cols


def fan_from_stratum(
    m: DegenerationModel, tau_id: int, paper_basis: bool = False
) -> StratumFan:
    """Build the smooth two-cone fan attached to a codimension-one face.

    The basis {v_j, v_0} of Z^n x Z with prescribed heights N_i / iota is
    completed deterministically via the Hermite normal form; with
    paper_basis=True (heights all one) the explicit standard-basis choice
    is used instead.  The inf ray is v_inf = -v_0 + sum b_j v_j.  All
    postconditions are asserted: smoothness of both cones, the common face
    on the stratum rays, the height of v_inf, and recovery of every
    multiplicity as iota times the ray height.
    """
    tau = m.faces.get(tau_id)
    if tau is None:
        raise ValueError(f"unknown face {tau_id}")
    if tau.dim != m.n - 1:
        raise ValueError(f"face {tau_id} has dimension {tau.dim}, expected {m.n - 1}")
    curve = m.curves.get(tau_id)
    if curve is None:
        raise NotLogCalabiYauError(f"face {tau_id} carries no curve data")
    bad = sorted(j for j, bj in curve.b.items() if bj <= 0)
    if bad:
        raise NonPositiveBError(f"face {tau_id} has b <= 0 on divisors {bad}")
    lhs, rhs = balance_sides(m, curve)
    if lhs != rhs:
        raise PostconditionViolatedError(
            f"face {tau_id} violates the balance condition: {lhs} != {rhs}"
        )

    n = m.n
    J = tuple(sorted(tau.vertex_ids))
    e0, einf = curve.endpoint_divisor_ids
    iota_val = lattice.gcd_all([m.divisors[j].N for j in J] + [m.divisors[e0].N])
    heights = [m.divisors[j].N // iota_val for j in J] + [m.divisors[e0].N // iota_val]

    if paper_basis:
        if any(h != 1 for h in heights):
            raise ReducedBasisError(
                f"face {tau_id}: explicit basis needs all heights 1, got {heights}"
            )
        cols = _reduced_case_basis(n)
    else:
        basis_matrix = lattice.complete_last_row_to_unimodular(heights)
        cols = [tuple(row[i] for row in basis_matrix) for i in range(n + 1)]

    v_j = {J[i]: cols[i] for i in range(n)}
    v0 = cols[n]
    basis = lattice.transpose(tuple(cols))
    vinf = tuple(
        -x + sum(curve.b[j] * v_j[j][k] for j in J)
        for k, x in enumerate(v0)
    )

    if m.divisors[einf].N % iota_val != 0 or vinf[-1] != m.divisors[einf].N // iota_val:
        raise PostconditionViolatedError(
            f"face {tau_id}: inf ray height {vinf[-1]} does not match "
            f"N_inf/iota = {m.divisors[einf].N}/{iota_val}"
        )
    if not lattice.is_primitive(vinf):
        raise PostconditionViolatedError(f"face {tau_id}: inf ray {vinf} not primitive")

    sigma0 = Cone(n + 1, tuple(v_j[j] for j in J) + (v0,))
    sigmainf = Cone(n + 1, tuple(v_j[j] for j in J) + (vinf,))
    if not (is_smooth(sigma0) and is_smooth(sigmainf)):
        raise PostconditionViolatedError(f"face {tau_id}: stratum cones are not smooth")
    shared = common_face(sigma0, sigmainf)
    if shared is None or shared.ray_set() != frozenset(v_j.values()):
        raise PostconditionViolatedError(
            f"face {tau_id}: cones do not meet along the stratum rays"
        )
    iota = IotaWeight(iota_val)
    labels = {v_j[j]: j for j in J}
    labels[v0] = e0
    labels[vinf] = einf
    for ray, div in labels.items():
        if ray_multiplicity(ray, iota) != m.divisors[div].N:
            raise PostconditionViolatedError(
                f"face {tau_id}: ray {ray} has multiplicity "
                f"{ray_multiplicity(ray, iota)}, divisor {div} has {m.divisors[div].N}"
            )

    return StratumFan(
        fan=Fan(n + 1, (sigma0, sigmainf)),
        iota=iota,
        ray_labels=labels,
        j_divisors=J,
        e0_divisor=e0,
        einf_divisor=einf,
        v_j=v_j,
        v0=v0,
        vinf=vinf,
        basis=basis,
    )


def wall_relation(sf: StratumFan) -> dict[int, int]:
    """Recover the b_j from the fan: v_0 + v_inf = sum_j b_j v_j."""
    w = lattice.vec_add(sf.v0, sf.vinf)
    coeffs = lattice.express_in_basis(sf.basis, w)
    if coeffs[-1] != 0:
        raise NotUnimodularError("wall relation has a component along the 0 ray")
    return {j: coeffs[i] for i, j in enumerate(sf.j_divisors)}


# -- charts and transitions ------------------------------------------------------


@dataclass(frozen=True)
class CanonicalChart:
    """Chart of a face: the simplex {sum N_i w_i = 1} with one coordinate
    per vertex except the highest id, whose coordinate is dropped."""

    face_id: int
    axes: tuple[int, ...]
    dropped: int
    vertex_coords: Mapping[int, RatVec]

    def __post_init__(self):
        object.__setattr__(self, "vertex_coords", dict(self.vertex_coords))


@dataclass(frozen=True)
class CodimOneChart:
    """Height-one slices of the two stratum cones, vertices tagged by
    divisor id; the shared facet is the slice of the common face."""

    face_id: int
    stratum_fan: StratumFan
    slice0: SlicePolytope
    sliceinf: SlicePolytope
    labels0: tuple[int, ...]
    labelsinf: tuple[int, ...]
    shared_labels: tuple[int, ...]


def canonical_chart(m: DegenerationModel, face_id: int) -> CanonicalChart:
    face = m.faces.get(face_id)
    if face is None:
        raise ValueError(f"unknown face {face_id}")
    dropped = max(face.vertex_ids)
    axes = tuple(v for v in face.vertex_ids if v != dropped)
    coords = {}
    for v in face.vertex_ids:
        coords[v] = tuple(
            Fraction(1, m.divisors[v].N) if axis == v else Fraction(0) for axis in axes
        )
    return CanonicalChart(face_id=face_id, axes=axes, dropped=dropped, vertex_coords=coords)


def chart_for_codim1_face(
    m: DegenerationModel, tau_id: int, paper_basis: bool = False
) -> CodimOneChart:
    sf = fan_from_stratum(m, tau_id, paper_basis=paper_basis)
    slice0 = slice_cone_height_one(sf.sigma0)
    sliceinf = slice_cone_height_one(sf.sigmainf)
    labels0 = tuple(sf.ray_labels[g] for g in sf.sigma0.generators)
    labelsinf = tuple(sf.ray_labels[g] for g in sf.sigmainf.generators)
    return CodimOneChart(
        face_id=tau_id,
        stratum_fan=sf,
        slice0=slice0,
        sliceinf=sliceinf,
        labels0=labels0,
        labelsinf=labelsinf,
        shared_labels=sf.j_divisors,
    )


def _affine_from_correspondence(xs, ys):
    """The unique affine map sending each x_i to y_i (n+1 affinely
    independent points in dimension n).  Returns (A, b) over Q."""
    n = len(xs[0])
    if len(xs) != n + 1 or len(ys) != n + 1:
        raise DimensionMismatchError("need n+1 vertex pairs in dimension n")
    xmat = [[Fraction(xs[i + 1][k] - xs[0][k]) for i in range(n)] for k in range(n)]
    ymat = [[Fraction(ys[i + 1][k] - ys[0][k]) for i in range(n)] for k in range(n)]
    a = lattice.mat_mul(ymat, lattice.rat_inverse(xmat))
    ax0 = lattice.mat_vec(a, xs[0])
    b = tuple(Fraction(y) - v for y, v in zip(ys[0], ax0))
    return a, b


def transition_across(
    m: DegenerationModel, tau_id: int, paper_basis: bool = False
) -> AffineTransition:
    """Affine map from the chart of the 0-endpoint face to the chart of the
    inf-endpoint face, factored through the stratum fan slice.

    Chart vertices are matched to slice vertices by divisor label; the two
    resulting affine identifications are composed.  The result must have a
    unimodular integer linear part (and an integral translation when the
    model is reduced), otherwise the input data is inconsistent with an
    integral affine structure and NonUnimodularTransitionError is raised.
    """
    chart = chart_for_codim1_face(m, tau_id, paper_basis=paper_basis)
    sf = chart.stratum_fan
    curve = m.curves[tau_id]
    src_id, dst_id = curve.endpoint_face_ids
    src_face, dst_face = m.faces[src_id], m.faces[dst_id]

    if set(src_face.vertex_ids) != set(sf.j_divisors) | {sf.e0_divisor}:
        raise LabelMismatchError(
            f"face {src_id} vertices {sorted(src_face.vertex_ids)} do not match "
            f"stratum divisors {sorted(sf.j_divisors)} + endpoint {sf.e0_divisor}"
        )
    if set(dst_face.vertex_ids) != set(sf.j_divisors) | {sf.einf_divisor}:
        raise LabelMismatchError(
            f"face {dst_id} vertices {sorted(dst_face.vertex_ids)} do not match "
            f"stratum divisors {sorted(sf.j_divisors)} + endpoint {sf.einf_divisor}"
        )

    slice_of0 = dict(zip(chart.labels0, chart.slice0.vertices))
    slice_ofinf = dict(zip(chart.labelsinf, chart.sliceinf.vertices))
    src_chart = canonical_chart(m, src_id)
    dst_chart = canonical_chart(m, dst_id)

    src_pts = [src_chart.vertex_coords[v] for v in src_face.vertex_ids]
    src_imgs = [slice_of0[v] for v in src_face.vertex_ids]
    dst_pts = [dst_chart.vertex_coords[v] for v in dst_face.vertex_ids]
    dst_imgs = [slice_ofinf[v] for v in dst_face.vertex_ids]

    a_src, b_src = _affine_from_correspondence(src_pts, src_imgs)
    a_dst, b_dst = _affine_from_correspondence(dst_pts, dst_imgs)
    a_dst_inv = lattice.rat_inverse(a_dst)
    a = lattice.mat_mul(a_dst_inv, a_src)
    b = lattice.mat_vec(a_dst_inv, tuple(x - y for x, y in zip(b_src, b_dst)))

    if any(x.denominator != 1 for row in a for x in row):
        raise NonUnimodularTransitionError(
            f"face {tau_id}: transition linear part is not integral: {a}"
        )
    a_int = tuple(tuple(int(x) for x in row) for row in a)
    if abs(lattice.determinant(a_int)) != 1:
        raise NonUnimodularTransitionError(
            f"face {tau_id}: transition determinant is {lattice.determinant(a_int)}"
        )
    if m.is_reduced and any(x.denominator != 1 for x in b):
        raise NonUnimodularTransitionError(
            f"face {tau_id}: reduced model has non-integral translation {b}"
        )
    return AffineTransition(a_int, b)


def monodromy(
    m: DegenerationModel, cycle: Sequence[int], paper_basis: bool = False
) -> AffineTransition:
    """Composition of wall transitions around a cyclic list of top faces,
    expressed in the chart of the first face.

    Consecutive faces must share a wall with curve data.  When they share
    several (as in a two-component cycle), walls whose stored endpoint
    order matches the traversal direction are preferred, then lower face
    ids, skipping the wall just crossed.
    """
    faces = tuple(cycle)
    if not faces:
        return identity_transition(m.n)
    for fid in faces:
        face = m.faces.get(fid)
        if face is None or face.dim != m.n:
            raise BrokenCycleError(f"{fid} is not a top face")
    acc = identity_transition(m.n)
    last_wall = None
    for i, a in enumerate(faces):
        b = faces[(i + 1) % len(faces)]
        candidates = sorted(
            (
                fid
                for fid, c in m.curves.items()
                if sorted(c.endpoint_face_ids) == sorted((a, b))
            ),
            key=lambda fid: (m.curves[fid].endpoint_face_ids != (a, b), fid),
        )
        if not candidates:
            raise BrokenCycleError(f"faces {a} and {b} share no wall with curve data")
        wall = next((w for w in candidates if w != last_wall), candidates[0])
        step = transition_across(m, wall, paper_basis=paper_basis)
        if m.curves[wall].endpoint_face_ids != (a, b):
            step = invert(step)
        acc = compose(step, acc)
        last_wall = wall
    return acc
