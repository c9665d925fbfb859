"""Lattice-level replay of the blow-down constructions.

The cylinder open sets are identified by contracting explicit curve
configurations down to a Hirzebruch surface or the plane.  This module
replays those contractions purely numerically:

* `extend_two_point_blowup` adjoins the two exceptional classes of the
  blow-up at a point q on the exceptional section followed by the
  infinitely near point in the direction of the section (the common
  tangent of the section and the 0-curve tangent to it at q);
* `contract_set` contracts an ordered list of classes, checking at each
  step that the class is a (-1)-class of arithmetic genus zero and
  pushing every tracked class D to D + (D.e)e;
* `verify_lemma_configuration` runs the three pipelines end to end and
  compares every numerical claim (final rank, K^2, image squares and
  incidences) against its expected value.

The three pipelines (selected by `lemma`):

1. contract E_1..E_t, E_j' (j > t), Fbar, then L1: lands on the
   Hirzebruch surface F_{t-2} with images of squares -(t-2), 0, t-2;
2. contract Fbar, Cbar, E_1, E_2, E_i' (i >= 3): lands on F_1 with
   three disjoint 0-curve images crossed by a (-1)-section;
3. no extra blow-up; contract C, E_1, E_i' (i >= 2): lands on the
   plane, the section mapping to a conic met doubly by the image line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidClassError, InvalidParameterError, NotContractibleError
from .lattice import EXTENDED, DivisorClass, SurfaceModel, make_surface


class BlowupModel:
    """The lattice of the resolution blown up twice more at the tangency point.

    Basis (Q, F, E1, ..., E(m+4), ee1, ee2) in total-transform
    coordinates: ee1 and ee2 are orthogonal (-1)-classes and the
    canonical class gains ee1 + ee2.  The second center lies on the
    first exceptional curve and on the common tangent of the section
    and the 0-curve through q, but not on the fiber through q, which
    forces the strict-transform table

        Qbar = Q - ee1 - ee2,   Gammabar = Gamma - ee1 - ee2,
        Fbar = F - ee1,         L1 = ee1 - ee2,   L2 = ee2,
        Cbar = Cq - ee1,

    with all other catalog classes unchanged.
    """

    def __init__(self, base: SurfaceModel):
        self.base = base
        self.m = base.m
        self.rank = base.rank + 2
        self.labels = base.labels + ("ee1", "ee2")
        gram = [list(row) + [0, 0] for row in base.gram]
        gram.append([0] * self.rank)
        gram.append([0] * self.rank)
        gram[-2][-2] = -1
        gram[-1][-1] = -1
        self.gram = tuple(tuple(row) for row in gram)
        self._gram_entries = tuple((i, j, g) for i, row in enumerate(self.gram)
                                   for j, g in enumerate(row) if g)
        self.canonical = self.lift(base.canonical) + self.ee(1) + self.ee(2)

    def lift(self, cls: DivisorClass) -> DivisorClass:
        if cls.lattice != "resolution" or len(cls.coords) != self.base.rank:
            raise InvalidClassError(f"resolution class expected, got {cls!r}")
        return DivisorClass(EXTENDED, cls.coords + (Fraction(0), Fraction(0)))

    def ee(self, which: int) -> DivisorClass:
        coords = [Fraction(0)] * self.rank
        coords[self.rank - 3 + which] = Fraction(1)
        return DivisorClass(EXTENDED, tuple(coords))

    def intersect(self, a: DivisorClass, b: DivisorClass) -> Fraction:
        for cls in (a, b):
            if cls.lattice != EXTENDED or len(cls.coords) != self.rank:
                raise InvalidClassError(f"extended class expected, got {cls!r}")
        total = Fraction(0)
        ac, bc = a.coords, b.coords
        for i, j, g in self._gram_entries:
            if ac[i] and bc[j]:
                total += ac[i] * g * bc[j]
        return total

    def strict_transform(self, label: str) -> DivisorClass:
        """Strict transforms of the configuration curves; others lift unchanged."""
        base = self.base
        if label == "L1":
            return self.ee(1) - self.ee(2)
        if label == "L2":
            return self.ee(2)
        lifted = self.lift(base.class_for_label(label))
        if label in ("Q", "Gamma", "Gamma_q"):
            return lifted - self.ee(1) - self.ee(2)
        if label in ("F", "Fq", "F_q"):
            return lifted - self.ee(1)
        if label in ("Cq", "C_q"):
            return lifted - self.ee(1)
        return lifted


def extend_two_point_blowup(model: SurfaceModel) -> BlowupModel:
    """Extended lattice with the strict-transform table asserted."""
    bm = BlowupModel(model)
    dot = bm.intersect
    l1, l2 = bm.strict_transform("L1"), bm.strict_transform("L2")
    fbar = bm.strict_transform("F")
    qbar = bm.strict_transform("Q")
    gbar = bm.strict_transform("Gamma")
    table = [
        (dot(l1, l1), Fraction(-2)),
        (dot(l2, l2), Fraction(-1)),
        (dot(l1, l2), Fraction(1)),
        (dot(fbar, l1), Fraction(1)),
        (dot(fbar, l2), Fraction(0)),
        (dot(gbar, l2), Fraction(1)),
        (dot(qbar, l2), Fraction(1)),
        (dot(qbar, l1), Fraction(0)),
        (dot(gbar, qbar), Fraction(0)),
        (dot(bm.canonical, bm.canonical),
         model.intersect(model.canonical, model.canonical) - 2),
    ]
    for actual, expected in table:
        assert actual == expected, (actual, expected)
    return bm


@dataclass(frozen=True)
class ContractionStep:
    cls: DivisorClass            # input coordinates
    image: DivisorClass          # coordinates at the time of contraction
    k_squared_after: Fraction


@dataclass(frozen=True)
class ContractionSequence:
    contracted: tuple[DivisorClass, ...]
    steps: tuple[ContractionStep, ...]
    images: dict
    final_rank: int
    final_canonical: DivisorClass
    final_k_squared: Fraction


def contract_set(model_like, classes, tracked=None) -> ContractionSequence:
    """Sequentially contract (-1)-classes, tracking images of named classes.

    `model_like` is a SurfaceModel or BlowupModel (anything with gram,
    rank, canonical and intersect).  Each class must have square -1 and
    arithmetic genus 0 at its turn, after the pushforwards of the
    previous contractions; chains must be ordered by the caller.
    """
    tracked = dict(tracked or {})
    dot = model_like.intersect
    canonical = model_like.canonical
    images = dict(tracked)
    steps = []
    done = []
    k_sq = dot(canonical, canonical)
    for cls in classes:
        current = cls
        for e in done:
            current = current + dot(current, e) * e
        square = dot(current, current)
        if square != -1:
            raise NotContractibleError(
                f"class {tuple(str(c) for c in cls.coords)} has square {square} "
                f"at its turn, not -1", cls=cls, square=square)
        genus = 1 + (square + dot(current, canonical)) / 2
        if genus != 0:
            raise NotContractibleError(
                f"class has arithmetic genus {genus} at its turn, not 0",
                cls=cls, square=square)
        done.append(current)
        canonical = canonical + dot(canonical, current) * current
        for key in images:
            img = images[key]
            images[key] = img + dot(img, current) * current
        new_k_sq = dot(canonical, canonical)
        assert new_k_sq == k_sq + 1
        k_sq = new_k_sq
        steps.append(ContractionStep(cls=cls, image=current, k_squared_after=k_sq))
    return ContractionSequence(
        contracted=tuple(classes),
        steps=tuple(steps),
        images=images,
        final_rank=model_like.rank - len(steps),
        final_canonical=canonical,
        final_k_squared=k_sq,
    )


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class LemmaReport:
    lemma: int
    m: int
    t: int | None
    checks: tuple[LemmaCheck, ...]
    sequence: ContractionSequence

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return tuple(c for c in self.checks if not c.passed)


def _pipeline_hirzebruch(model, bm, t):
    n = model.m + 4
    classes = [bm.strict_transform(f"E{i}") for i in range(1, t + 1)]
    classes += [bm.strict_transform(f"E{j}'") for j in range(t + 1, n + 1)]
    classes += [bm.strict_transform("F"), bm.strict_transform("L1")]
    tracked = {"Qbar": bm.strict_transform("Q"),
               "L2": bm.strict_transform("L2"),
               "Gammabar": bm.strict_transform("Gamma")}
    return classes, tracked


def _pipeline_f1(model, bm):
    n = model.m + 4
    classes = [bm.strict_transform("F"), bm.strict_transform("Cq"),
               bm.strict_transform("E1"), bm.strict_transform("E2")]
    classes += [bm.strict_transform(f"E{i}'") for i in range(3, n + 1)]
    tracked = {"Qbar": bm.strict_transform("Q"),
               "Gammabar": bm.strict_transform("Gamma"),
               "L1": bm.strict_transform("L1"),
               "L2": bm.strict_transform("L2")}
    return classes, tracked


def _pipeline_plane(model):
    n = model.m + 4
    classes = [model.class_for_label("C"), model.class_for_label("E1")]
    classes += [model.class_for_label(f"E{i}'") for i in range(2, n + 1)]
    tracked = {"Q": model.Q, "Gamma": model.class_for_label("Gamma")}
    return classes, tracked


def verify_lemma_configuration(lemma: int, m: int, t: int | None = None) -> LemmaReport:
    """Run one blow-down pipeline and check every numerical claim."""
    model = make_surface(m)
    checks = []

    if lemma == 1:
        if t is None or not 2 <= t <= m + 4:
            raise InvalidParameterError(f"pipeline 1 requires 2 <= t <= {m + 4}, got {t!r}")
        bm = extend_two_point_blowup(model)
        classes, tracked = _pipeline_hirzebruch(model, bm, t)
        seq = contract_set(bm, classes, tracked)
        dot = bm.intersect
        img = seq.images
        checks += [
            LemmaCheck("final_rank", 2, seq.final_rank),
            LemmaCheck("final_K_squared", Fraction(8), seq.final_k_squared),
            LemmaCheck("image_Qbar_square", Fraction(-(t - 2)), dot(img["Qbar"], img["Qbar"])),
            LemmaCheck("image_L2_square", Fraction(0), dot(img["L2"], img["L2"])),
            LemmaCheck("image_Gammabar_square", Fraction(t - 2),
                       dot(img["Gammabar"], img["Gammabar"])),
            LemmaCheck("L2_meets_Qbar", Fraction(1), dot(img["L2"], img["Qbar"])),
            LemmaCheck("L2_meets_Gammabar", Fraction(1), dot(img["L2"], img["Gammabar"])),
            LemmaCheck("Qbar_Gammabar_disjoint", Fraction(0),
                       dot(img["Qbar"], img["Gammabar"])),
        ]
    elif lemma == 2:
        if t is not None:
            raise InvalidParameterError("pipeline 2 takes no t")
        bm = extend_two_point_blowup(model)
        classes, tracked = _pipeline_f1(model, bm)
        seq = contract_set(bm, classes, tracked)
        dot = bm.intersect
        img = seq.images
        checks += [
            LemmaCheck("final_rank", 2, seq.final_rank),
            LemmaCheck("final_K_squared", Fraction(8), seq.final_k_squared),
            LemmaCheck("image_Qbar_square", Fraction(0), dot(img["Qbar"], img["Qbar"])),
            LemmaCheck("image_Gammabar_square", Fraction(0),
                       dot(img["Gammabar"], img["Gammabar"])),
            LemmaCheck("image_L1_square", Fraction(0), dot(img["L1"], img["L1"])),
            LemmaCheck("image_L2_square", Fraction(-1), dot(img["L2"], img["L2"])),
            # boundary dual graph: the (-1)-section L2 crosses the three
            # disjoint 0-curves once each
            LemmaCheck("L2_meets_Qbar", Fraction(1), dot(img["L2"], img["Qbar"])),
            LemmaCheck("L2_meets_Gammabar", Fraction(1), dot(img["L2"], img["Gammabar"])),
            LemmaCheck("L2_meets_L1", Fraction(1), dot(img["L2"], img["L1"])),
            LemmaCheck("Qbar_Gammabar_disjoint", Fraction(0),
                       dot(img["Qbar"], img["Gammabar"])),
            LemmaCheck("Qbar_L1_disjoint", Fraction(0), dot(img["Qbar"], img["L1"])),
            LemmaCheck("Gammabar_L1_disjoint", Fraction(0), dot(img["Gammabar"], img["L1"])),
        ]
    elif lemma == 3:
        if t is not None:
            raise InvalidParameterError("pipeline 3 takes no t")
        classes, tracked = _pipeline_plane(model)
        seq = contract_set(model, classes, tracked)
        dot = model.intersect
        img = seq.images
        checks += [
            LemmaCheck("final_rank", 1, seq.final_rank),
            LemmaCheck("final_K_squared", Fraction(9), seq.final_k_squared),
            LemmaCheck("image_Q_square", Fraction(4), dot(img["Q"], img["Q"])),
            LemmaCheck("image_Gamma_square", Fraction(1), dot(img["Gamma"], img["Gamma"])),
            LemmaCheck("tangency_degree", Fraction(2), dot(img["Q"], img["Gamma"])),
        ]
    else:
        raise InvalidParameterError(f"lemma must be 1, 2 or 3, got {lemma!r}")

    return LemmaReport(lemma=lemma, m=m, t=t, checks=tuple(checks), sequence=seq)
