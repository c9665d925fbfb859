"""Transfer between the resolution and the singular surface S.

The rational class group of S is represented by the pushforward basis
(F, E1, ..., E(m+4)); equality of coordinate vectors is Q-linear
equivalence on S.  The numerical pullback of a class D is the unique
lift that is orthogonal to the exceptional curve Q, and intersection
numbers on S are defined as intersections of numerical pullbacks (the
Mumford intersection on a normal surface).  In particular the images of
the fiber components through the singular point acquire the fractional
numbers

    L.L = -(m-1)/m,     L.K = -2/m,

while (-1)-curves away from the singular point keep (-1, -1).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidClassError
from .lattice import RESOLUTION, SINGULAR, DivisorClass, SurfaceModel


def singular_labels(model: SurfaceModel) -> tuple[str, ...]:
    """Basis labels (F, E1, ..., E(m+4)) of the class group of S."""
    return model.labels[1:]


def singular_class(model: SurfaceModel, coords) -> DivisorClass:
    coords = tuple(coords)
    if len(coords) != model.rank - 1:
        raise InvalidClassError(
            f"expected {model.rank - 1} coordinates on S, got {len(coords)}")
    return DivisorClass(SINGULAR, coords)


def _require(model: SurfaceModel, cls: DivisorClass, lattice: str):
    expected = model.rank if lattice == RESOLUTION else model.rank - 1
    if not isinstance(cls, DivisorClass) or cls.lattice != lattice:
        raise InvalidClassError(f"{lattice} class expected, got {cls!r}")
    if len(cls.coords) != expected:
        raise InvalidClassError(f"rank mismatch: expected {expected}, got {len(cls.coords)}")


def pushforward(model: SurfaceModel, d: DivisorClass) -> DivisorClass:
    """Drop the Q-coordinate; the linear pushforward along the resolution."""
    _require(model, d, RESOLUTION)
    return DivisorClass(SINGULAR, d.coords[1:])


def lift(model: SurfaceModel, d: DivisorClass) -> DivisorClass:
    """Naive lift F -> F, Ei -> Ei with zero Q-coordinate."""
    _require(model, d, SINGULAR)
    return DivisorClass(RESOLUTION, (Fraction(0),) + d.coords)


def pullback(model: SurfaceModel, d: DivisorClass) -> DivisorClass:
    """Numerical pullback: the unique lift orthogonal to Q.

    The Q-coefficient is solved from (lift(D) + c*Q).Q = 0 rather than
    hard-coded, so it stays correct for every m.
    """
    naive = lift(model, d)
    c = -model.intersect(naive, model.Q) / model.intersect(model.Q, model.Q)
    return naive + c * model.Q


def intersect_on_S(model: SurfaceModel, a: DivisorClass, b: DivisorClass) -> Fraction:
    """Mumford intersection number on S via numerical pullbacks."""
    return model.intersect(pullback(model, a), pullback(model, b))


def discrepancy(model: SurfaceModel) -> Fraction:
    """Coefficient c with pullback(K_S) = K + c*Q, determined by orthogonality."""
    difference = pullback(model, pushforward(model, model.canonical)) - model.canonical
    assert all(x == 0 for x in difference.coords[1:])
    return difference.coords[0]


def qlinear_equal_S(a: DivisorClass, b: DivisorClass) -> bool:
    """Q-linear equivalence on S is equality of coordinate vectors."""
    for cls in (a, b):
        if not isinstance(cls, DivisorClass) or cls.lattice != SINGULAR:
            raise InvalidClassError(f"singular-surface class expected, got {cls!r}")
    return a.coords == b.coords


def canonical_on_S(model: SurfaceModel) -> DivisorClass:
    return pushforward(model, model.canonical)


def anticanonical_on_S(model: SurfaceModel) -> DivisorClass:
    return -canonical_on_S(model)


def class_on_S_for_label(model: SurfaceModel, label: str) -> DivisorClass:
    """Pushforward of a catalog curve, addressed by label such as ``E3'``."""
    return pushforward(model, model.class_for_label(label))
