"""Simplicial cones and fans in Z^n x Z, with the last coordinate playing
the role of the nonnegative height.

Fans used by the stratum constructions always live in the open upper half
space (every generator has positive last coordinate), so their cones can
be sliced at height one into rational simplices.  Cones themselves are
allowed to have height-zero generators; the fan validator is what enforces
the support condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lattice
from .errors import (
    DimensionMismatchError,
    NonPositiveHeightError,
    ZeroHeightRayError,
)
from .lattice import IntMat, IntVec, RatVec


@dataclass(frozen=True)
class Cone:
    """Cone spanned by primitive integer generators.

    Generators must be pairwise non-proportional and have nonnegative last
    coordinate.  Linear independence (simpliciality) is not required at
    construction; smoothness and face checks handle that themselves.
    """

    ambient_dim: int
    generators: tuple[IntVec, ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        for g in gens:
            if len(g) != self.ambient_dim:
                raise ValueError(f"generator {g} has wrong length")
            if all(x == 0 for x in g):
                raise ValueError("zero vector cannot generate a ray")
            if not lattice.is_primitive(g):
                raise ValueError(f"generator {g} is not primitive")
            if g[-1] < 0:
                raise ValueError(f"generator {g} has negative height")
        for i, g in enumerate(gens):
            for h in gens[i + 1:]:
                if g == h or g == tuple(-x for x in h):
                    raise ValueError(f"proportional generators {g} and {h}")

    @property
    def dim(self) -> int:
        if not self.generators:
            return 0
        return lattice.rank(self.generators)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_simplicial(self) -> bool:
        return self.is_zero or self.dim == len(self.generators)

    def ray_set(self) -> frozenset[IntVec]:
        return frozenset(self.generators)


@dataclass(frozen=True)
class Fan:
    """Fan given by its maximal cones, all in the same ambient lattice."""

    ambient_dim: int
    maximal_cones: tuple[Cone, ...]

    def __post_init__(self):
        cones = tuple(self.maximal_cones)
        object.__setattr__(self, "maximal_cones", cones)
        for c in cones:
            if c.ambient_dim != self.ambient_dim:
                raise DimensionMismatchError("cone/fan ambient dimension mismatch")


@dataclass(frozen=True)
class SlicePolytope:
    """Height-one slice of a cone: one rational vertex per ray."""

    vertices: tuple[RatVec, ...]
    ray_indices: tuple[int, ...]


@dataclass(frozen=True)
class IotaWeight:
    """Positive scaling factor relating ray heights to multiplicities."""

    iota: int

    def __post_init__(self):
        if self.iota < 1:
            raise ValueError("iota must be a positive integer")


@dataclass(frozen=True)
class FanReport:
    passed: bool
    problems: tuple[str, ...]
    cone_smooth: tuple[bool, ...]
    cone_strongly_convex: tuple[bool, ...]
    cone_supported: tuple[bool, ...]
    pair_face_ok: tuple[tuple[int, int, bool], ...]


def is_smooth(c: Cone) -> bool:
    """True when the generators extend to a basis of the ambient lattice.

    Non-simplicial cones report False rather than raising.  The test reads
    the pivots of the column echelon form of the generator matrix: the
    cone is smooth exactly when there is one pivot per generator and every
    pivot equals 1.
    """
    if c.is_zero:
        return True
    if not c.is_simplicial:
        return False
    cols = lattice.transpose(c.generators)
    h, _ = lattice.hermite_normal_form(cols)
    pivots = []
    for col in lattice.transpose(h):
        nz = next((x for x in col if x != 0), None)
        if nz is not None:
            pivots.append(nz)
    return len(pivots) == len(c.generators) and all(p == 1 for p in pivots)


def _feasible(eqs, ineqs, dim) -> bool:
    """Exact feasibility of {x : eq . x = rhs, ineq . x >= rhs} over Q.

    Equalities are eliminated by substitution, the remaining system by
    Fourier-Motzkin.  Sizes here are tiny (dim <= 7), so blowup is not a
    concern.
    """
    eqs = [([Fraction(c) for c in coeffs], Fraction(rhs)) for coeffs, rhs in eqs]
    ineqs = [([Fraction(c) for c in coeffs], Fraction(rhs)) for coeffs, rhs in ineqs]

    for idx in range(len(eqs)):
        coeffs, rhs = eqs[idx]
        pivot = next((j for j, c in enumerate(coeffs) if c != 0), None)
        if pivot is None:
            if rhs != 0:
                return False
            continue
        inv = 1 / coeffs[pivot]
        coeffs = [c * inv for c in coeffs]
        rhs = rhs * inv
        eqs[idx] = (coeffs, rhs)
        for system in (eqs, ineqs):
            for k, (oc, orhs) in enumerate(system):
                if system is eqs and k == idx:
                    continue
                factor = oc[pivot]
                if factor:
                    system[k] = (
                        [a - factor * b for a, b in zip(oc, coeffs)],
                        orhs - factor * rhs,
                    )

    for var in range(dim):
        pos = [(c, r) for c, r in ineqs if c[var] > 0]
        neg = [(c, r) for c, r in ineqs if c[var] < 0]
        rest = [(c, r) for c, r in ineqs if c[var] == 0]
        new = list(rest)
        for pc, pr in pos:
            for nc, nr in neg:
                scale_p, scale_n = -nc[var], pc[var]
                new.append((
                    [scale_p * a + scale_n * b for a, b in zip(pc, nc)],
                    scale_p * pr + scale_n * nr,
                ))
        ineqs = new

    return all(rhs <= 0 for _, rhs in ineqs)


def common_face(c1: Cone, c2: Cone) -> Cone | None:
    """The cone on the shared rays when it is a common face, else None.

    Two simplicial smooth cones meet in the face spanned by their shared
    rays exactly when some integral functional is zero on the shared rays,
    strictly positive on the remaining rays of the first cone and strictly
    negative on those of the second.  Feasibility of that functional is
    decided exactly.
    """
    if c1.ambient_dim != c2.ambient_dim:
        raise DimensionMismatchError("cones live in different lattices")
    if not (c1.is_simplicial and c2.is_simplicial and is_smooth(c1) and is_smooth(c2)):
        raise ValueError("common_face expects simplicial smooth cones")
    shared = [g for g in c1.generators if g in c2.ray_set()]
    dim = c1.ambient_dim
    eqs = [(g, 0) for g in shared]
    ineqs = [(g, 1) for g in c1.generators if g not in shared]
    ineqs += [(tuple(-x for x in h), 1) for h in c2.generators if h not in shared]
    if _feasible(eqs, ineqs, dim):
        return Cone(dim, tuple(shared))
    return None


def validate_fan(f: Fan) -> FanReport:
    """Check smoothness, convexity, support and pairwise face conditions."""
    problems: list[str] = []
    smooth, convex, supported = [], [], []
    for i, c in enumerate(f.maximal_cones):
        s = is_smooth(c)
        smooth.append(s)
        if not s:
            problems.append(f"cone {i} is not smooth")
        sc = c.is_simplicial
        convex.append(sc)
        if not sc:
            problems.append(f"cone {i} has linearly dependent generators")
        sup = all(g[-1] > 0 for g in c.generators)
        supported.append(sup)
        if not sup:
            problems.append(f"cone {i} has a generator of height 0")
    pair_ok: list[tuple[int, int, bool]] = []
    cones = f.maximal_cones
    for i in range(len(cones)):
        for j in range(i + 1, len(cones)):
            if cones[i].ray_set() == cones[j].ray_set():
                pair_ok.append((i, j, False))
                problems.append(f"maximal cones {i} and {j} coincide")
                continue
            if not (convex[i] and convex[j] and smooth[i] and smooth[j]):
                pair_ok.append((i, j, False))
                continue
            ok = common_face(cones[i], cones[j]) is not None
            pair_ok.append((i, j, ok))
            if not ok:
                problems.append(f"cones {i} and {j} do not meet along a common face")
    return FanReport(
        passed=not problems,
        problems=tuple(problems),
        cone_smooth=tuple(smooth),
        cone_strongly_convex=tuple(convex),
        cone_supported=tuple(supported),
        pair_face_ok=tuple(pair_ok),
    )


def slice_cone_height_one(c: Cone) -> SlicePolytope:
    vertices = []
    for g in c.generators:
        if g[-1] == 0:
            raise ZeroHeightRayError(f"ray {g} has height 0, cannot slice")
        h = g[-1]
        vertices.append(tuple(Fraction(x, h) for x in g[:-1]))
    return SlicePolytope(tuple(vertices), tuple(range(len(c.generators))))


def slice_height_one(f: Fan) -> tuple[SlicePolytope, ...]:
    """Height-one slice of every maximal cone, dropping the height axis."""
    return tuple(slice_cone_height_one(c) for c in f.maximal_cones)


def ray_multiplicity(ray: Sequence[int], iota: IotaWeight) -> int:
    """Multiplicity of the divisor attached to a ray: iota times its height."""
    ray = tuple(int(x) for x in ray)
    if not lattice.is_primitive(ray):
        raise ValueError(f"ray {ray} is not primitive")
    if ray[-1] <= 0:
        raise NonPositiveHeightError(f"ray {ray} has nonpositive height")
    return iota.iota * ray[-1]


@dataclass(frozen=True)
class Location:
    cone_index: int
    barycentric: RatVec


def locate(f: Fan, p: Sequence) -> Location | None:
    """Find the first maximal cone whose height-one simplex contains p.

    The point is given in slice coordinates (height axis dropped).  Ties on
    shared faces break to the lowest cone index.  Returns None when the
    point is outside every slice.
    """
    target = tuple(Fraction(x) for x in p)
    for idx, cone in enumerate(f.maximal_cones):
        sl = slice_cone_height_one(cone)
        coeffs = lattice.solve_affine_combination(sl.vertices, target)
        if coeffs is not None and all(c >= 0 for c in coeffs):
            return Location(idx, coeffs)
    return None
