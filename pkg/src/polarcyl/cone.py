"""Effective-cone machinery: negative classes, membership, Fujita data.

The pseudo-effective cone of the resolution is approximated from below
by the exceptional section Q together with every integral class of
bounded fiber degree satisfying D.D = D.K = -1 (each such class has
chi = 1 and pairs nonnegatively with the fiber, hence is effective).
The enumeration is best-effort: completeness up to the declared fiber
degree is certain, beyond it unknown, and results carry that flag.

All decision procedures are exact LPs (Bland simplex over Fractions)
whose answers ship with verifiable certificates: nonnegative
coefficients for members, separating functionals for non-members,
optimal dual multipliers for Fujita invariants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg, linprog
from .errors import (ConeModelInsufficientError, InvalidParameterError,
                     NotAmpleError, UnrecognizedFaceError)
from .lattice import RESOLUTION, SINGULAR, DivisorClass, SurfaceModel
from .singular import canonical_on_S, intersect_on_S, pullback, pushforward


@dataclass(frozen=True)
class EffectiveConeModel:
    """Generators of the (best-effort) effective cone of the resolution."""

    model: SurfaceModel
    generators: tuple[DivisorClass, ...]
    fiber_degree_bound: int
    complete: bool

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [g.coords for g in self.generators]


@dataclass(frozen=True)
class MembershipCertificate:
    member: bool
    #: nonnegative coefficients aligned with the cone generators (members)
    coefficients: tuple[Fraction, ...] | None
    #: class N with N.G >= 0 for every generator and N.v < 0 (non-members)
    separating: DivisorClass | None


@dataclass(frozen=True)
class MuCertificate:
    mu: Fraction
    #: coefficients with sum(c_j G_j) = pullback(K + mu H)
    coefficients: tuple[Fraction, ...]
    #: dual functional y (coordinate pairing) with y.G_j <= 0, y.(-P_H) <= 1
    #: and y.P_K = mu; certifies minimality of mu.
    dual: tuple[Fraction, ...]


@dataclass(frozen=True)
class FaceResult:
    generators: tuple[DivisorClass, ...]
    rank: int


@dataclass(frozen=True)
class FujitaResult:
    mu: Fraction
    face: tuple[DivisorClass, ...]
    rank: int
    type: str                 # "B" | "C"
    count_smooth: int
    a: Fraction
    coefficients: tuple[tuple[str, Fraction], ...]
    complete: bool


def _gamma_vectors(slots: int, sq: int, total: int):
    """Integer tuples of given length with fixed sum of squares and sum."""
    prefix = [0] * slots

    def search(position, sq_left, total_left):
        if position == slots:
            if sq_left == 0 and total_left == 0:
                yield tuple(prefix)
            return
        remaining = slots - position - 1
        for g in range(-math.isqrt(sq_left), math.isqrt(sq_left) + 1):
            sq_rest = sq_left - g * g
            t_rest = total_left - g
            if abs(t_rest) > sq_rest or t_rest * t_rest > remaining * sq_rest:
                continue
            prefix[position] = g
            yield from search(position + 1, sq_rest, t_rest)
        prefix[position] = 0

    return search(0, sq, total)


def enumerate_negative_classes(model: SurfaceModel, fiber_degree_bound: int = 2) -> EffectiveConeModel:
    """Q plus all integral classes aQ + bF + sum(g_i E_i) with D.D = D.K = -1.

    The search runs over 0 <= a <= fiber_degree_bound; for each (a, b) the
    remaining Diophantine system is sum(g_i^2) = 2ab - m a^2 + 1 and
    sum(g_i) = a(m-2) + 1 - 2b, finite by Cauchy-Schwarz.  Output is
    deduplicated and sorted lexicographically by coordinates.
    """
    if not isinstance(fiber_degree_bound, int) or fiber_degree_bound < 1:
        raise InvalidParameterError(f"fiber degree bound must be >= 1, got {fiber_degree_bound!r}")
    m = model.m
    n = m + 4
    found = set()
    for alpha in range(fiber_degree_bound + 1):
        a_lin = alpha * (m - 2) + 1
        # Cauchy-Schwarz window: (a_lin - 2b)^2 <= n * (2*alpha*b - m*alpha^2 + 1).
        p_coef = 4 * a_lin + 2 * n * alpha
        q_coef = a_lin * a_lin + n * m * alpha * alpha - n
        disc = p_coef * p_coef - 16 * q_coef
        if disc < 0:
            continue
        root = math.isqrt(disc)
        for beta in range((p_coef - root - 8) // 8, (p_coef + root + 8) // 8 + 1):
            sq = 2 * alpha * beta - m * alpha * alpha + 1
            total = a_lin - 2 * beta
            if sq < 0 or total * total > n * sq:
                continue
            for gamma in _gamma_vectors(n, sq, total):
                found.add((alpha, beta) + gamma)
    found.add((1, 0) + (0,) * n)  # Q itself
    # Every non-Q entry has D.D = D.K = -1 by construction, hence chi = 1
    # and fiber degree alpha >= 0; both are re-checked property-style in tests.
    classes = tuple(model.class_from(c) for c in sorted(found))
    return EffectiveConeModel(
        model=model,
        generators=classes,
        fiber_degree_bound=fiber_degree_bound,
        complete=False,
    )


def _functional_to_class(model: SurfaceModel, y) -> DivisorClass:
    """Class N with intersect(N, x) = y.x (coordinate pairing) for all x."""
    inverse = linalg.invert([list(row) for row in model.gram])
    coords = tuple(sum(inverse[i][j] * y[j] for j in range(model.rank))
                   for i in range(model.rank))
    return model.class_from(coords)


def cone_membership(v: DivisorClass, cone: EffectiveConeModel) -> MembershipCertificate:
    """Exact membership of v in the generated cone, with certificate."""
    model = cone.model
    if v.lattice != RESOLUTION or len(v.coords) != model.rank:
        raise InvalidParameterError("membership is tested on resolution classes")
    columns = cone.columns()
    rows = [[col[i] for col in columns] for i in range(model.rank)]
    result = linprog.solve_feasibility(rows, list(v.coords))
    if result.status == "optimal":
        return MembershipCertificate(member=True, coefficients=tuple(result.x), separating=None)
    separating = _functional_to_class(model, [-y for y in result.farkas])
    return MembershipCertificate(member=False, coefficients=None, separating=separating)


def ample_screen(model: SurfaceModel, h: DivisorClass, cone: EffectiveConeModel):
    """Best-effort Nakai-Moishezon screen against the enumerated curves.

    Returns the list of (description, value) pairs checked; raises
    NotAmpleError on the first failure.
    """
    if h.lattice != SINGULAR:
        raise InvalidParameterError("polarizations live on the singular surface")
    checks = []

    def check(description, value):
        checks.append((description, value))
        if value <= 0:
            raise NotAmpleError(f"ampleness screen failed: {description} = {value}")

    check("H.H", intersect_on_S(model, h, h))
    check("H.F", intersect_on_S(model, h, pushforward(model, model.F)))
    check("H.B", intersect_on_S(model, h, pushforward(model, model.named_class("B").cls)))
    # intersect_on_S(H, push(G)) = pullback(H).G because the pullback is
    # Q-orthogonal and pullback(push(G)) differs from G by a multiple of Q.
    p_h = pullback(model, h)
    worst = None
    for gen in cone.generators:
        if gen == model.Q:
            continue
        value = model.intersect(p_h, gen)
        if worst is None or value < worst[1]:
            worst = (gen, value)
        if value <= 0:
            raise NotAmpleError(
                f"ampleness screen failed: H.({model.format_class(gen)}) = {value}")
    if worst is not None:
        checks.append((f"min over negative classes, at {model.format_class(worst[0])}",
                       worst[1]))
    return checks


def fujita_invariant_certified(model: SurfaceModel, h: DivisorClass,
                               cone: EffectiveConeModel) -> MuCertificate:
    """Minimal rational mu with pullback(K + mu*H) in the generated cone.

    A single LP in the variables (mu, c_j): minimize mu subject to
    sum(c_j G_j) - mu * pullback(H) = pullback(K).
    """
    ample_screen(model, h, cone)
    p_h = pullback(model, h)
    p_k = pullback(model, canonical_on_S(model))
    columns = [tuple(-x for x in p_h.coords)] + cone.columns()
    rows = [[col[i] for col in columns] for i in range(model.rank)]
    costs = [Fraction(1)] + [Fraction(0)] * len(cone.generators)
    result = linprog.solve_lp(rows, list(p_k.coords), costs)
    if result.status != "optimal":
        raise ConeModelInsufficientError(
            f"pseudo-effectivity LP returned {result.status}; the enumerated cone"
            f" (fiber degree <= {cone.fiber_degree_bound}) cannot decide H")
    return MuCertificate(mu=result.objective,
                         coefficients=tuple(result.x[1:]),
                         dual=tuple(result.dual))


def fujita_invariant(model: SurfaceModel, h: DivisorClass, cone: EffectiveConeModel) -> Fraction:
    return fujita_invariant_certified(model, h, cone).mu


def _face_candidates(model, cone, v, certificate):
    """Generators on which the mu-LP's supporting functional vanishes.

    Every functional supporting the cone at v vanishes on the whole
    minimal face of v, so the zero set is a safe over-approximation;
    the exact per-generator LP below finishes the job.
    """
    y = certificate.dual
    n_dot_v = -sum(a * b for a, b in zip(y, v.coords))
    pairings = {gen: -sum(a * b for a, b in zip(y, gen.coords)) for gen in cone.generators}
    if n_dot_v == 0 and all(p >= 0 for p in pairings.values()):
        return [gen for gen in cone.generators if pairings[gen] == 0]
    return list(cone.generators)


def _member_of(v_coords, columns, n_rows) -> bool:
    rows = [[col[i] for col in columns] for i in range(n_rows)]
    return linprog.solve_feasibility(rows, list(v_coords)).status == "optimal"


def _in_minimal_face(model, candidates, v, gen) -> bool:
    """LP test: v - t*gen stays in the cone for some rational t > 0."""
    columns = [gen.coords] + [c.coords for c in candidates]
    # Variables: t, slack (for t <= 1), then candidate coefficients.
    rows = [[columns[0][i], Fraction(0)] + [col[i] for col in columns[1:]]
            for i in range(model.rank)]
    rows.append([Fraction(1), Fraction(1)] + [Fraction(0)] * len(candidates))
    rhs = list(v.coords) + [Fraction(1)]
    costs = [Fraction(-1), Fraction(0)] + [Fraction(0)] * len(candidates)
    result = linprog.solve_lp(rows, rhs, costs)
    return result.status == "optimal" and -result.objective > 0


def _compute_face(model, cone, h, certificate) -> FaceResult:
    v = pullback(model, canonical_on_S(model) + certificate.mu * h)
    if v.is_zero:
        return FaceResult(generators=(), rank=0)
    candidates = _face_candidates(model, cone, v, certificate)
    face = tuple(g for g in candidates if _in_minimal_face(model, candidates, v, g))
    push_rows = [list(pushforward(model, g).coords) for g in face]
    return FaceResult(generators=face, rank=linalg.rank(push_rows))


def fujita_face(model: SurfaceModel, h: DivisorClass, mu: Fraction,
                cone: EffectiveConeModel) -> FaceResult:
    """Minimal face of the generated cone containing pullback(K + mu*H).

    Membership of a generator G is decided by LP feasibility of
    v - t*G in the cone for some t > 0; the rank reported is the
    dimension of the linear span of the face's pushforwards on S
    (the exceptional section pushes to zero).
    """
    certificate = fujita_invariant_certified(model, h, cone)
    if certificate.mu != mu:
        raise InvalidParameterError(f"mu = {mu} is not the Fujita invariant {certificate.mu}")
    return _compute_face(model, cone, h, certificate)


def _extremal_rays(model, face):
    rays = []
    for gen in face:
        others = [g.coords for g in face if g != gen]
        if not others or not _member_of(gen.coords, others, model.rank):
            rays.append(gen)
    return rays


def _bounds_ok(model, smooth: bool, value: Fraction) -> bool:
    if smooth:
        return 0 < value < 1
    return 0 < value < Fraction(2, model.m - 1)


def _labels_for(model, rays):
    labels = []
    for ray in rays:
        label = model.label_for(ray)
        labels.append(label if label is not None else model.format_class(ray))
    return labels


def _span_basis(nonzero):
    basis, rows = [], []
    for item in nonzero:
        candidate = rows + [list(item[1].coords)]
        if linalg.rank(candidate) > len(rows):
            rows.append(list(item[1].coords))
            basis.append(item)
    return basis


def classify_polarization(model: SurfaceModel, h: DivisorClass,
                          cone: EffectiveConeModel) -> FujitaResult:
    """Fujita type of an ample polarization, with exact decomposition.

    Type B when the face's intersection form on S is negative definite;
    the decomposition K + mu*H = sum(a_i L_i) is then the unique exact
    solution over the extremal rays.  Otherwise the face degenerates
    along a single fibration class B and K + mu*H = a*B + sum(a_i L_i)
    is solved by an LP maximizing a.  Maximizing a is the canonical
    normal form: B is Q-equivalent to the sum of the fiber components
    through the singular point, so any smaller a can be traded for
    uniform mass on those components.
    """
    certificate = fujita_invariant_certified(model, h, cone)
    mu = certificate.mu
    face = _compute_face(model, cone, h, certificate)
    v_s = canonical_on_S(model) + mu * h
    if not face.generators:
        if not v_s.is_zero:
            raise UnrecognizedFaceError("empty face but K + mu*H is nonzero")
        return FujitaResult(mu=mu, face=(), rank=0, type="B", count_smooth=0,
                            a=Fraction(0), coefficients=(), complete=cone.complete)

    rays = _extremal_rays(model, face.generators)
    nonzero = [(ray, pushforward(model, ray)) for ray in rays
               if not pushforward(model, ray).is_zero]
    gram = [[intersect_on_S(model, a, b) for _, b in nonzero] for _, a in nonzero]
    independent = linalg.rank([list(p.coords) for _, p in nonzero]) == len(nonzero)
    if independent and not linalg.nullspace(gram):
        return _classify_type_b(model, cone, mu, face, nonzero, gram, v_s)
    return _classify_type_c(model, cone, mu, face, nonzero, v_s)


def _classify_type_b(model, cone, mu, face, nonzero, gram, v_s):
    if not linalg.is_negative_definite(gram):
        raise UnrecognizedFaceError("non-degenerate face that is not negative definite")
    columns = [list(p.coords) for _, p in nonzero]
    rows = [[col[i] for col in columns] for i in range(model.rank - 1)]
    solution = linalg.solve(rows, list(v_s.coords))
    if solution is None:
        raise UnrecognizedFaceError("K + mu*H does not lie in the span of its face")
    smooth_flags = [model.intersect(ray, model.Q) == 0 for ray, _ in nonzero]
    for value, smooth in zip(solution, smooth_flags):
        if not _bounds_ok(model, smooth, value):
            bound = "(0, 1)" if smooth else "(0, 2/(m-1))"
            raise UnrecognizedFaceError(f"type-B coefficient {value} outside {bound}")
    rank = face.rank
    count_smooth = sum(smooth_flags)
    if not (rank <= model.m + 4 and 0 <= rank - count_smooth <= model.m - 1):
        raise UnrecognizedFaceError("face cardinality bounds violated")
    labels = _labels_for(model, [ray for ray, _ in nonzero])
    return FujitaResult(mu=mu, face=face.generators, rank=rank, type="B",
                        count_smooth=count_smooth, a=Fraction(0),
                        coefficients=tuple(zip(labels, solution)),
                        complete=cone.complete)


def _classify_type_c(model, cone, mu, face, nonzero, v_s):
    basis = _span_basis(nonzero)
    gram = [[intersect_on_S(model, a[1], b[1]) for b in basis] for a in basis]
    kernel = linalg.nullspace(gram)
    if len(kernel) != 1:
        raise UnrecognizedFaceError(f"face radical has dimension {len(kernel)}, expected 1")
    combo = kernel[0]
    fiber = DivisorClass(SINGULAR, tuple(
        sum(combo[k] * basis[k][1].coords[i] for k in range(len(basis)))
        for i in range(model.rank - 1)))
    k_degree = intersect_on_S(model, fiber, canonical_on_S(model))
    if k_degree == 0:
        raise UnrecognizedFaceError("degenerate direction has zero K-degree")
    fiber = (Fraction(-2) / k_degree) * fiber
    assert intersect_on_S(model, fiber, fiber) == 0
    if not _member_of(fiber.coords, [p.coords for _, p in nonzero], model.rank - 1):
        raise UnrecognizedFaceError("fibration class is not a combination of the face")

    lp_columns = [fiber.coords] + [p.coords for _, p in nonzero]
    lp_rows = [[col[i] for col in lp_columns] for i in range(model.rank - 1)]
    costs = [Fraction(-1)] + [Fraction(0)] * len(nonzero)
    result = linprog.solve_lp(lp_rows, list(v_s.coords), costs)
    if result.status != "optimal":
        raise UnrecognizedFaceError(f"type-C decomposition LP returned {result.status}")
    a = result.x[0]
    if a <= 0:
        raise UnrecognizedFaceError(f"type-C decomposition has a = {a} <= 0")
    coefficients = result.x[1:]
    smooth_flags = [model.intersect(ray, model.Q) == 0 for ray, _ in nonzero]
    for value, smooth in zip(coefficients, smooth_flags):
        if value != 0 and not _bounds_ok(model, smooth, value):
            raise UnrecognizedFaceError(f"type-C coefficient {value} violates its bound")
    count_smooth = sum(1 for value, smooth in zip(coefficients, smooth_flags)
                       if value != 0 and smooth)
    if count_smooth > 4:
        raise UnrecognizedFaceError(f"type-C smooth count {count_smooth} exceeds 4")
    labels = _labels_for(model, [ray for ray, _ in nonzero])
    pairs = tuple((label, value) for label, value in zip(labels, coefficients) if value != 0)
    return FujitaResult(mu=mu, face=face.generators, rank=face.rank, type="C",
                        count_smooth=count_smooth, a=a, coefficients=pairs,
                        complete=cone.complete)
