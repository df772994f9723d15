"""Seifert fibration symbols and their exact invariants.

A Seifert fibration of an orientable 3-manifold is encoded by the symbol
S(g, h; (p_1,q_1), ..., (p_k,q_k)): a base surface of genus g with h
boundary components (g < 0 meaning the non-orientable surface with |g|
crosscaps) and k Dehn-filled fibered solid tori with coprime filling
slopes (p_i, q_i), p_i >= 1.

This module implements the calculus of such symbols: the four moves that
preserve the oriented isomorphism type, a canonical form, the Euler
number, the base orbifold with its geometry, and the recognition of the
finitely many manifolds that carry more than one fibration (solid torus,
twisted I-bundle over the Klein bottle, twisted S^1-bundle over the
Klein bottle).  All arithmetic is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd


class UnsupportedManifoldError(ValueError):
    """Raised for closed symbols covered by S^3 or S^2 x S^1 (lens spaces
    and friends), which this library deliberately does not classify."""


@dataclass(frozen=True)
class SeifertSymbol:
    """The invariant tuple S(genus, boundary; pairs)."""

    genus: int
    boundary: int
    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((int(p), int(q)) for p, q in self.pairs))
        if self.boundary < 0:
            raise ValueError("boundary count must be >= 0")
        for p, q in self.pairs:
            if p < 1:
                raise ValueError(f"filling index p must be >= 1, got {p}")
            if gcd(p, q) != 1:
                raise ValueError(f"filling slope ({p},{q}) is not coprime")

    def __str__(self):
        pairs = ",".join(f"({p},{q})" for p, q in self.pairs)
        return f"S({self.genus},{self.boundary};{pairs})"

    @classmethod
    def parse(cls, text: str) -> "SeifertSymbol":
        m = re.fullmatch(r"\s*S\(\s*(-?\d+)\s*,\s*(\d+)\s*;(.*)\)\s*", text)
        if m is None:
            raise ValueError(f"cannot parse Seifert symbol: {text!r}")
        pairs = tuple(
            (int(p), int(q))
            for p, q in re.findall(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)", m.group(3))
        )
        return cls(int(m.group(1)), int(m.group(2)), pairs)


@dataclass(frozen=True)
class EulerNumber:
    """Euler number of a fibration; only defined mod Z when the base has
    boundary, in which case ``value`` is the representative in [0,1)."""

    value: Fraction
    mod_z: bool

    def __str__(self):
        if self.mod_z:
            return f"{self.value} (mod 1)"
        return str(self.value)


class GeometryClass(Enum):
    HYPERBOLIC = "hyperbolic"
    EUCLIDEAN = "euclidean"
    ELLIPTIC = "elliptic"
    BAD = "bad"


class SpecialManifold(Enum):
    SOLID_TORUS = "solid torus"
    TORUS_X_INTERVAL = "T^2 x I"
    KLEIN_X_INTERVAL = "K x~ I"
    KLEIN_X_S1 = "K x~ S^1"
    OTHER = "other"


@dataclass(frozen=True)
class OrbifoldSignature:
    """Base 2-orbifold: underlying surface plus cone point orders."""

    genus: int
    boundary: int
    cone_orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cone_orders", tuple(sorted(int(p) for p in self.cone_orders)))
        if any(p < 2 for p in self.cone_orders):
            raise ValueError("cone orders must be >= 2")


# ---------------------------------------------------------------------------
# moves

@dataclass(frozen=True)
class Move:
    """Explicit move descriptor: move id plus the pair indices / sign /
    permutation it acts with.  Indices are 0-based."""

    kind: int
    i: int = -1
    j: int = -1
    sign: int = 1
    perm: tuple[int, ...] = ()

    @staticmethod
    def shift(i: int, j: int) -> "Move":
        """Move (1): (p_i,q_i),(p_j,q_j) -> (p_i,q_i-p_i),(p_j,q_j+p_j)."""
        return Move(1, i=i, j=j)

    @staticmethod
    def add_trivial() -> "Move":
        """Move (2), forward direction: append a (1,0) pair."""
        return Move(2, i=-1)

    @staticmethod
    def drop_trivial(i: int) -> "Move":
        """Move (2), backward direction: delete the (1,0) pair at i."""
        return Move(2, i=i)

    @staticmethod
    def twist(i: int, sign: int = 1) -> "Move":
        """Move (3): (p_i,q_i) -> (p_i, q_i +/- p_i); needs boundary."""
        return Move(3, i=i, sign=1 if sign >= 0 else -1)

    @staticmethod
    def permute(perm) -> "Move":
        """Move (4): reorder the pairs by the given permutation."""
        return Move(4, perm=tuple(perm))


def apply_move(s: SeifertSymbol, m: Move) -> SeifertSymbol:
    pairs = list(s.pairs)
    k = len(pairs)
    if m.kind == 1:
        if not (0 <= m.i < k and 0 <= m.j < k) or m.i == m.j:
            raise ValueError(f"move (1) needs two distinct valid pair indices, got {m.i},{m.j}")
        pi, qi = pairs[m.i]
        pj, qj = pairs[m.j]
        pairs[m.i] = (pi, qi - pi)
        pairs[m.j] = (pj, qj + pj)
    elif m.kind == 2:
        if m.i < 0:
            pairs.append((1, 0))
        else:
            if not 0 <= m.i < k:
                raise ValueError(f"move (2) pair index out of range: {m.i}")
            if pairs[m.i] != (1, 0):
                raise ValueError(f"move (2) can only delete a (1,0) pair, found {pairs[m.i]}")
            del pairs[m.i]
    elif m.kind == 3:
        if s.boundary == 0:
            raise ValueError("move (3) requires a symbol with boundary (h > 0)")
        if not 0 <= m.i < k:
            raise ValueError(f"move (3) pair index out of range: {m.i}")
        p, q = pairs[m.i]
        pairs[m.i] = (p, q + m.sign * p)
    elif m.kind == 4:
        if sorted(m.perm) != list(range(k)):
            raise ValueError(f"move (4) needs a permutation of 0..{k - 1}, got {m.perm}")
        pairs = [pairs[t] for t in m.perm]
    else:
        raise ValueError(f"unknown move kind {m.kind}")
    return SeifertSymbol(s.genus, s.boundary, tuple(pairs))


# ---------------------------------------------------------------------------
# invariants

def euler_sum(s: SeifertSymbol) -> Fraction:
    return sum((Fraction(q, p) for p, q in s.pairs), Fraction(0))


def euler_number(s: SeifertSymbol) -> EulerNumber:
    e = euler_sum(s)
    if s.boundary > 0:
        return EulerNumber(e - (e.numerator // e.denominator), True)
    return EulerNumber(e, False)


def canonicalize(s: SeifertSymbol) -> SeifertSymbol:
    """Canonical representative of the oriented isomorphism class.

    With boundary, pairs with p = 1 are deleted and each remaining slope
    is reduced to 0 < q < p (moves (2), (3)), then sorted.  For closed
    symbols the slopes are reduced the same way but the integer part of
    the Euler number cannot be discarded: it is carried by a single
    trailing (1, b) pair, so e(S) is preserved exactly.
    """
    reduced = sorted((p, q % p) for p, q in s.pairs if p >= 2)
    if s.boundary > 0:
        return SeifertSymbol(s.genus, s.boundary, tuple(reduced))
    b = euler_sum(s) - sum((Fraction(q, p) for p, q in reduced), Fraction(0))
    assert b.denominator == 1
    return SeifertSymbol(s.genus, 0, tuple(reduced) + ((1, int(b)),))


def mirror(s: SeifertSymbol) -> SeifertSymbol:
    """The same fibration with all fiber orientations reversed."""
    return SeifertSymbol(s.genus, s.boundary, tuple((p, -q) for p, q in s.pairs))


def isomorphic_oriented(s1: SeifertSymbol, s2: SeifertSymbol) -> bool:
    """Fibration isomorphism preserving all orientations.

    Equality of canonical forms is the whole test: with boundary the
    canonical pairs determine the Euler number mod Z, and for closed
    symbols the trailing (1,b) pair pins it exactly.
    """
    return canonicalize(s1) == canonicalize(s2)


def isomorphic_unoriented(s1: SeifertSymbol, s2: SeifertSymbol) -> bool:
    return isomorphic_oriented(s1, s2) or isomorphic_oriented(s1, mirror(s2))


def base_orbifold(s: SeifertSymbol) -> OrbifoldSignature:
    return OrbifoldSignature(s.genus, s.boundary, tuple(p for p, _ in s.pairs if p >= 2))


def orbifold_chi(o: OrbifoldSignature) -> Fraction:
    if o.genus >= 0:
        chi_top = 2 - 2 * o.genus - o.boundary
    else:
        chi_top = 2 - (-o.genus) - o.boundary
    return chi_top - sum((1 - Fraction(1, p) for p in o.cone_orders), Fraction(0))


def geometry_class(o: OrbifoldSignature) -> GeometryClass:
    if o.genus == 0 and o.boundary == 0:
        cones = o.cone_orders
        if len(cones) == 1:
            return GeometryClass.BAD
        if len(cones) == 2 and cones[0] != cones[1] and gcd(cones[0], cones[1]) == 1:
            return GeometryClass.BAD
    chi = orbifold_chi(o)
    if chi > 0:
        return GeometryClass.ELLIPTIC
    if chi == 0:
        return GeometryClass.EUCLIDEAN
    return GeometryClass.HYPERBOLIC


# The twisted I-bundle over the Klein bottle fibers over the Moebius band
# and over the disk with two order-2 cone points; the twisted S^1-bundle
# over the Klein bottle fibers over the Klein bottle and over the sphere
# with four order-2 cone points.  These are the only bounded/closed
# manifolds with two non-isomorphic fibrations (besides the solid torus,
# which has infinitely many).
KLEIN_I_FIBRATIONS = (
    SeifertSymbol(-1, 1),
    SeifertSymbol(0, 1, ((2, 1), (2, 1))),
)
KLEIN_S1_FIBRATIONS = (
    SeifertSymbol(-2, 0),
    SeifertSymbol(0, 0, ((2, 1), (2, 1), (2, -1), (2, -1))),
)


def recognize_special(s: SeifertSymbol) -> SpecialManifold:
    c = canonicalize(s)
    if c.genus == 0 and c.boundary == 1 and len(c.pairs) <= 1:
        return SpecialManifold.SOLID_TORUS
    if c.genus == 0 and c.boundary == 2 and not c.pairs:
        return SpecialManifold.TORUS_X_INTERVAL
    if any(isomorphic_unoriented(s, t) for t in KLEIN_I_FIBRATIONS):
        return SpecialManifold.KLEIN_X_INTERVAL
    if any(isomorphic_unoriented(s, t) for t in KLEIN_S1_FIBRATIONS):
        return SpecialManifold.KLEIN_X_S1
    return SpecialManifold.OTHER


def same_manifold(s1: SeifertSymbol, s2: SeifertSymbol) -> bool:
    """Do the two fibrations describe diffeomorphic total spaces?

    Only the exceptional multi-fibration manifolds are identified beyond
    fibration isomorphism.  Closed symbols over elliptic or bad base
    orbifolds (the manifolds covered by S^3 or S^2 x S^1) are rejected.
    """
    for s in (s1, s2):
        if s.boundary == 0:
            geo = geometry_class(base_orbifold(s))
            if geo in (GeometryClass.ELLIPTIC, GeometryClass.BAD):
                raise UnsupportedManifoldError(
                    f"{s} is covered by S^3 or S^2 x S^1; such manifolds are not classified here"
                )
    if isomorphic_unoriented(s1, s2):
        return True
    special = recognize_special(s1)
    if special in (
        SpecialManifold.SOLID_TORUS,
        SpecialManifold.KLEIN_X_INTERVAL,
        SpecialManifold.KLEIN_X_S1,
    ):
        return special == recognize_special(s2)
    return False
