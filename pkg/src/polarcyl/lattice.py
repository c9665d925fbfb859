"""Exact intersection lattice of the resolved surface.

Blowing up the weighted projective plane P(1,1,m) at m+4 general points
gives a normal surface S with one quotient singularity of type 1/m(1,1);
its minimal resolution carries a P^1-fibration whose general fiber is F,
with the (-m)-curve Q over the singular point as a section and exactly
m+4 singular fibers F_i = E_i + E_i', ordered so that E_i.Q = 0.

This module models the rational divisor class group of the resolution as
a rank-(m+6) lattice with fixed basis (Q, F, E1, ..., E(m+4)), together
with the catalog of named curve classes used by the cylinder and
blow-down constructions.  All arithmetic is exact: coordinates are
`fractions.Fraction` and floats are rejected outright.

Everything here is immutable and side-effect free, so values can be
shared freely across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import InvalidClassError, InvalidParameterError

#: Lattice tags carried by DivisorClass values.
RESOLUTION = "resolution"
SINGULAR = "singular"
EXTENDED = "extended"


def as_fraction(value) -> Fraction:
    """Coerce an int/Fraction to Fraction; floats are a hard error."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise InvalidClassError(
        f"exact rational expected, got {type(value).__name__}: {value!r}"
    )


@dataclass(frozen=True)
class DivisorClass:
    """A divisor class with exact rational coordinates in a fixed basis.

    Two classes are Q-linearly equivalent exactly when their coordinate
    vectors (and lattice tags) agree, so dataclass equality is
    Q-linear equivalence.
    """

    lattice: str
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(as_fraction(c) for c in self.coords))

    def _check_compatible(self, other: "DivisorClass"):
        if not isinstance(other, DivisorClass):
            raise InvalidClassError(f"expected a DivisorClass, got {type(other).__name__}")
        if self.lattice != other.lattice or len(self.coords) != len(other.coords):
            raise InvalidClassError(
                f"incompatible classes: {self.lattice}[{len(self.coords)}] "
                f"vs {other.lattice}[{len(other.coords)}]"
            )

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_compatible(other)
        return DivisorClass(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_compatible(other)
        return DivisorClass(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.lattice, tuple(-a for a in self.coords))

    def scale(self, s) -> "DivisorClass":
        s = as_fraction(s)
        return DivisorClass(self.lattice, tuple(s * a for a in self.coords))

    __rmul__ = scale
    __mul__ = scale

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __str__(self):
        return f"{self.lattice}({', '.join(str(c) for c in self.coords)})"


@dataclass(frozen=True)
class CurveCatalogEntry:
    """A named curve class with its intersection profile.

    The profile entries are computed from the Gram matrix at catalog
    construction time, never hard-coded.
    """

    name: str
    params: tuple[int, ...]
    cls: DivisorClass
    self_intersection: Fraction
    dot_canonical: Fraction
    dot_exceptional: Fraction
    fiber_degree: Fraction

    @property
    def profile(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.self_intersection, self.dot_canonical,
                self.dot_exceptional, self.fiber_degree)


#: Catalog names understood by :meth:`SurfaceModel.named_class`.
CATALOG_NAMES = ("Q", "F", "Ei", "EiPrime", "EiDoublePrime",
                 "Gamma", "C", "Cq", "CqAlt", "B")

_LABEL_E = re.compile(r"^E(\d+)('{0,2})$")
_LABEL_ALIASES = {
    "Q": ("Q", ()),
    "F": ("F", ()),
    "Fq": ("F", ()),
    "F_q": ("F", ()),
    "Gamma": ("Gamma", ()),
    "Gamma_q": ("Gamma", ()),
    "C": ("C", ()),
    "Cq": ("Cq", ()),
    "C_q": ("Cq", ()),
    "CqAlt": ("CqAlt", ()),
    "B": ("B", ()),
}


def parse_label(label: str) -> tuple[str, tuple[int, ...]]:
    """Parse a curve label such as ``E3``, ``E3'``, ``E2''`` or ``Gamma_q``.

    Returns the catalog name and parameter tuple.
    """
    if label in _LABEL_ALIASES:
        return _LABEL_ALIASES[label]
    match = _LABEL_E.match(label)
    if match:
        index = int(match.group(1))
        name = {"": "Ei", "'": "EiPrime", "''": "EiDoublePrime"}[match.group(2)]
        return name, (index,)
    raise InvalidParameterError(f"unknown curve label: {label!r}")


class SurfaceModel:
    """The intersection lattice of the resolution, with its curve catalog.

    Basis order is fixed as (Q, F, E1, ..., E(m+4)); every serialization
    in this package uses that order.  The Gram matrix is

        Q.Q = -m,  F.F = 0,  Q.F = 1,  Ei.Ei = -1,

    all remaining products zero, and the canonical class is
    K = -2Q - (m+2)F + sum(Ei).
    """

    def __init__(self, m: int):
        if not isinstance(m, int) or isinstance(m, bool) or m < 2:
            raise InvalidParameterError(f"m must be an integer >= 2, got {m!r}")
        self.m = m
        self.rank = m + 6
        self.labels = ("Q", "F") + tuple(f"E{i}" for i in range(1, m + 5))
        gram = [[0] * self.rank for _ in range(self.rank)]
        gram[0][0] = -m
        gram[0][1] = gram[1][0] = 1
        for k in range(2, self.rank):
            gram[k][k] = -1
        self.gram = tuple(tuple(row) for row in gram)
        self._gram_entries = tuple((i, j, g) for i, row in enumerate(self.gram)
                                   for j, g in enumerate(row) if g)
        coords = [-2, -(m + 2)] + [1] * (m + 4)
        self.canonical = DivisorClass(RESOLUTION, tuple(coords))

    # -- basis helpers -------------------------------------------------

    def class_from(self, coords) -> DivisorClass:
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise InvalidClassError(f"expected {self.rank} coordinates, got {len(coords)}")
        return DivisorClass(RESOLUTION, coords)

    def zero(self) -> DivisorClass:
        return DivisorClass(RESOLUTION, (0,) * self.rank)

    def basis_class(self, index: int) -> DivisorClass:
        coords = [0] * self.rank
        coords[index] = 1
        return DivisorClass(RESOLUTION, tuple(coords))

    @cached_property
    def Q(self) -> DivisorClass:
        return self.basis_class(0)

    @cached_property
    def F(self) -> DivisorClass:
        return self.basis_class(1)

    def E(self, i: int) -> DivisorClass:
        self._check_fiber_index(i)
        return self.basis_class(1 + i)

    def _check_fiber_index(self, i):
        if not isinstance(i, int) or not 1 <= i <= self.m + 4:
            raise InvalidParameterError(f"fiber index must be in 1..{self.m + 4}, got {i!r}")

    # -- intersection theory -------------------------------------------

    def intersect(self, a: DivisorClass, b: DivisorClass) -> Fraction:
        """Exact intersection number a.b on the resolution."""
        for cls in (a, b):
            if not isinstance(cls, DivisorClass) or cls.lattice != RESOLUTION:
                raise InvalidClassError(f"resolution class expected, got {cls!r}")
            if len(cls.coords) != self.rank:
                raise InvalidClassError(
                    f"rank mismatch: expected {self.rank}, got {len(cls.coords)}")
        total = Fraction(0)
        ac, bc = a.coords, b.coords
        for i, j, g in self._gram_entries:
            if ac[i] and bc[j]:
                total += ac[i] * g * bc[j]
        return total

    def euler_characteristic(self, d: DivisorClass) -> Fraction:
        """chi(O(D)) = 1 + D.(D - K)/2 for the rational resolution."""
        return 1 + self.intersect(d, d - self.canonical) / 2

    def arithmetic_genus(self, d: DivisorClass) -> Fraction:
        """p_a(D) = 1 + (D.D + D.K)/2 by adjunction."""
        return 1 + (self.intersect(d, d) + self.intersect(d, self.canonical)) / 2

    # -- curve catalog ---------------------------------------------------

    def _sum_E(self, indices) -> DivisorClass:
        total = self.zero()
        for i in indices:
            total = total + self.E(i)
        return total

    def _catalog_class(self, name: str, params: tuple[int, ...]) -> DivisorClass:
        m = self.m
        n = m + 4
        if name == "Q":
            return self.Q
        if name == "F":
            return self.F
        if name == "Ei":
            (i,) = params
            return self.E(i)
        if name == "EiPrime":
            (i,) = params
            return self.F - self.E(i)
        if name == "Gamma":
            return self.Q + (m + 2) * self.F - self._sum_E(range(1, n + 1))
        if name == "C":
            omit = params[0] if params else 1
            self._check_fiber_index(omit)
            return self.Q + (m + 1) * self.F - self._sum_E(i for i in range(1, n + 1) if i != omit)
        if name in ("Cq", "CqAlt"):
            omit = params if params else (1, 2)
            if len(omit) != 2 or len(set(omit)) != 2:
                raise InvalidParameterError(f"{name} takes two distinct omitted indices, got {params}")
            for i in omit:
                self._check_fiber_index(i)
            fiber_coeff = m + 1 if name == "Cq" else m
            return self.Q + fiber_coeff * self.F - self._sum_E(
                i for i in range(1, n + 1) if i not in omit)
        if name == "B":
            smooth = params if params else (1, 2, 3, 4)
            if len(smooth) != 4 or len(set(smooth)) != 4:
                raise InvalidParameterError(f"B takes four distinct omitted indices, got {params}")
            for i in smooth:
                self._check_fiber_index(i)
            return self.Q + m * self.F - self._sum_E(
                i for i in range(1, n + 1) if i not in smooth)
        if name == "EiDoublePrime":
            i = params[0]
            smooth = params[1:] if len(params) > 1 else (1, 2, 3, 4)
            if i not in smooth:
                raise InvalidParameterError(
                    f"E{i}'' requires i among the smooth quadruple {smooth}")
            return self._catalog_class("B", tuple(smooth)) - self.E(i)
        raise InvalidParameterError(f"unknown catalog name: {name!r}")

    def named_class(self, name: str, params=()) -> CurveCatalogEntry:
        """Catalog entry for a named curve; profile computed from the Gram matrix."""
        if name not in CATALOG_NAMES:
            raise InvalidParameterError(f"unknown catalog name: {name!r}")
        params = tuple(params)
        cls = self._catalog_class(name, params)
        return CurveCatalogEntry(
            name=name,
            params=params,
            cls=cls,
            self_intersection=self.intersect(cls, cls),
            dot_canonical=self.intersect(cls, self.canonical),
            dot_exceptional=self.intersect(cls, self.Q),
            fiber_degree=self.intersect(cls, self.F),
        )

    def class_for_label(self, label: str) -> DivisorClass:
        name, params = parse_label(label)
        return self._catalog_class(name, params)

    @cached_property
    def catalog(self) -> tuple[CurveCatalogEntry, ...]:
        """All canonical catalog entries (default parameter conventions)."""
        entries = [self.named_class(name) for name in ("Q", "F", "Gamma", "C", "Cq", "CqAlt", "B")]
        for i in range(1, self.m + 5):
            entries.append(self.named_class("Ei", (i,)))
            entries.append(self.named_class("EiPrime", (i,)))
        for i in range(1, 5):
            entries.append(self.named_class("EiDoublePrime", (i,)))
        return tuple(entries)

    def label_for(self, cls: DivisorClass) -> str | None:
        """Reverse lookup of a class among the canonical catalog entries."""
        for entry in self.catalog:
            if entry.cls == cls:
                if entry.name == "Ei":
                    return f"E{entry.params[0]}"
                if entry.name == "EiPrime":
                    return f"E{entry.params[0]}'"
                if entry.name == "EiDoublePrime":
                    return f"E{entry.params[0]}''"
                return entry.name
        return None

    def format_class(self, cls: DivisorClass) -> str:
        """Human-readable form such as ``Q + 4F - E1 - E2``."""
        parts = []
        for label, c in zip(self.labels, cls.coords):
            if c == 0:
                continue
            coeff = "" if c == 1 else ("-" if c == -1 else f"{c}")
            if parts:
                sign = "+ " if c > 0 else "- "
                mag = abs(c)
                coeff = "" if mag == 1 else f"{mag}"
                parts.append(f"{sign}{coeff}{label}")
            else:
                parts.append(f"{coeff}{label}")
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        return f"SurfaceModel(m={self.m})"


def make_surface(m: int) -> SurfaceModel:
    """Build the rank-(m+6) lattice model for the blow-up at m+4 general points."""
    return SurfaceModel(m)
