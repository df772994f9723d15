"""Word problem in the fundamental group of a bounded Seifert piece.

The fiber subgroup <f> is central up to the orientation character of the
base, so every element factors uniquely as s(w) * f^n where w is the
normal form of its image in the orbifold group and s is the tautological
section (spell the normal form with torsion exponents in (0, p_j)).
Elements are therefore stored as pairs (orbifold word, fiber exponent);
multiplication pushes fiber letters to the right, flipping the sign
across each crosscap generator, and every torsion wraparound
c_j^{p_j} -> f^{-q_j} deposits its fiber defect exactly.

The twisted I-bundle over the Klein bottle is not covered by this
engine (its base orbifold is Euclidean); its two-generator group
<a, f | a f a^-1 = f^-1> gets a small dedicated normal form instead.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .orbifold import FREE, FreeProductSignature, _free_append
from .seifert import (
    GeometryClass,
    SeifertSymbol,
    SpecialManifold,
    base_orbifold,
    canonicalize,
    geometry_class,
    recognize_special,
)


@dataclass(frozen=True)
class PeripheralCoordinates:
    """Exponents (m, n) with x = d_i^m f^n at boundary component i."""

    index: int
    section_exp: int
    fiber_exp: int


class SeifertElement:
    """Group element of a Seifert piece, as (orbifold word, fiber exponent)."""

    __slots__ = ("group", "orb", "fiber")

    def __init__(self, group: "SeifertGroup", orb, fiber: int):
        self.group = group
        self.orb = orb
        self.fiber = fiber

    def __eq__(self, other):
        return (
            isinstance(other, SeifertElement)
            and self.group.symbol == other.group.symbol
            and self.orb == other.orb
            and self.fiber == other.fiber
        )

    def __hash__(self):
        return hash((self.orb, self.fiber))

    def __mul__(self, other: "SeifertElement") -> "SeifertElement":
        return self.group.multiply(self, other)

    def inverse(self) -> "SeifertElement":
        return self.group.invert(self)

    def __pow__(self, n: int) -> "SeifertElement":
        return self.group.pow(self, n)

    @property
    def is_identity(self) -> bool:
        return not self.orb and self.fiber == 0

    def __repr__(self):
        return f"<{self}>"

    def __str__(self):
        w = self.group.sig.format_word(self.orb)
        if self.fiber == 0:
            return w
        f = "f" if self.fiber == 1 else f"f^{self.fiber}"
        return f if w == "1" else f"{w}*{f}"


class SeifertGroup:
    """pi_1 of a Seifert piece with boundary over a hyperbolic orbifold.

    Construction canonicalizes the symbol first, so generators refer to
    the canonical presentation (torsion slopes 0 < q < p, pairs sorted).
    """

    def __init__(self, symbol: SeifertSymbol):
        c = canonicalize(symbol)
        if c.boundary == 0:
            raise ValueError(f"{symbol}: closed Seifert manifolds have no boundary word engine")
        special = recognize_special(c)
        if special is SpecialManifold.KLEIN_X_INTERVAL:
            raise ValueError(
                f"{symbol} is the twisted I-bundle over the Klein bottle, which has two "
                "regular fibers; use the Klein-piece operations"
            )
        if special in (SpecialManifold.SOLID_TORUS, SpecialManifold.TORUS_X_INTERVAL):
            raise ValueError(f"{symbol} is {special.value}: no unique regular fiber")
        if geometry_class(base_orbifold(c)) is not GeometryClass.HYPERBOLIC:
            raise ValueError(f"{symbol} does not fiber over a hyperbolic base orbifold")
        self.symbol = c
        self.sig = FreeProductSignature.from_symbol(c)
        self.fiber_slopes = tuple(q for _, q in c.pairs)
        self._dh_element = None

    # -- element constructors ---------------------------------------------

    def identity(self) -> SeifertElement:
        return SeifertElement(self, (), 0)

    def fiber_element(self, n: int = 1) -> SeifertElement:
        return SeifertElement(self, (), n)

    def generator(self, name: str, exp: int = 1) -> SeifertElement:
        return self.from_tokens([(name, exp)])

    def from_word(self, text: str) -> SeifertElement:
        """Element spelled by a word in the canonical presentation's
        generators (a_i, b_i, c_j, d_l, f), e.g. ``"c1^2 d1 f^-1"``."""
        return self.from_tokens(self.sig.parse_tokens(text))

    def from_tokens(self, tokens) -> SeifertElement:
        letters = []
        h = self.sig.boundary
        for name, exp in tokens:
            if name == "f":
                letters.append(("f", 0, exp))
            elif name == f"d{h}":
                # the long relation of the presentation has no fiber term,
                # so d_h is spelled exactly by the inverted relation prefix
                block = []
                for pname, pexp in reversed(self.sig.long_relation_prefix_tokens()):
                    block.extend(self._gen_letters(pname, -pexp))
                if exp < 0:
                    block = [(k, i, -e) for k, i, e in reversed(block)]
                letters.extend(block * abs(exp))
            else:
                letters.extend(self._gen_letters(name, exp))
        return self._from_letters(letters)

    def _gen_letters(self, name: str, exp: int):
        if exp == 0:
            return []
        sig = self.sig
        if name in sig._free_ids:
            return [("g", sig._free_ids[name], exp)]
        if name in sig._torsion_ids:
            return [("t", sig._torsion_ids[name], exp)]
        raise ValueError(f"unknown generator {name!r}")

    def _from_letters(self, letters) -> SeifertElement:
        stack: list = []
        phi = 0
        orders = self.sig.torsion_orders
        slopes = self.fiber_slopes
        a_ids = self.sig._a_ids
        for kind, idx, exp in letters:
            if kind == "f":
                phi += exp
                continue
            if kind == "g":
                if idx in a_ids and exp % 2:
                    phi = -phi
                if stack and stack[-1][0] == FREE:
                    ls = list(stack.pop()[1])
                    _free_append(ls, idx, exp)
                    if ls:
                        stack.append((FREE, tuple(ls)))
                else:
                    stack.append((FREE, ((idx, exp),)))
            else:
                e = exp
                if stack and stack[-1][0] == idx:
                    e += stack.pop()[1]
                t, r = divmod(e, orders[idx])
                if r:
                    stack.append((idx, r))
                phi -= slopes[idx] * t
        return SeifertElement(self, tuple(stack), phi)

    # -- group operations ----------------------------------------------------

    def _orb_letters(self, x: SeifertElement):
        out = []
        for fid, payload in x.orb:
            if fid == FREE:
                out.extend(("g", gid, exp) for gid, exp in payload)
            else:
                out.append(("t", fid, payload))
        return out

    def multiply(self, x: SeifertElement, y: SeifertElement) -> SeifertElement:
        if x.group.symbol != y.group.symbol:
            raise ValueError("elements of different Seifert pieces")
        letters = self._orb_letters(x)
        if x.fiber:
            letters.append(("f", 0, x.fiber))
        letters.extend(self._orb_letters(y))
        if y.fiber:
            letters.append(("f", 0, y.fiber))
        return self._from_letters(letters)

    def invert(self, x: SeifertElement) -> SeifertElement:
        letters = [("f", 0, -x.fiber)] if x.fiber else []
        letters.extend((k, i, -e) for k, i, e in reversed(self._orb_letters(x)))
        return self._from_letters(letters)

    def pow(self, x: SeifertElement, n: int) -> SeifertElement:
        if n < 0:
            x, n = self.invert(x), -n
        acc = self.identity()
        for _ in range(n):
            acc = self.multiply(acc, x)
        return acc

    def conjugate(self, x: SeifertElement, g: SeifertElement) -> SeifertElement:
        return self.multiply(self.multiply(g, x), self.invert(g))

    def eps(self, x: SeifertElement) -> int:
        """Orientation character, evaluated on the orbifold image."""
        return self.sig.orientation_character(x.orb)

    def project(self, x: SeifertElement):
        """Image in the orbifold group (quotient by the fiber)."""
        return x.orb

    # -- peripheral structure --------------------------------------------------

    @property
    def boundary_count(self) -> int:
        return self.sig.boundary

    def _dh(self) -> SeifertElement:
        if self._dh_element is None:
            self._dh_element = self.generator(f"d{self.sig.boundary}")
        return self._dh_element

    def peripheral_element(self, index: int, m: int, n: int) -> SeifertElement:
        """d_index^m * f^n."""
        if not 1 <= index <= self.sig.boundary:
            raise ValueError(f"boundary index {index} out of range")
        d = self.generator(f"d{index}", m) if m else self.identity()
        return self.multiply(d, self.fiber_element(n))

    def peripheral_membership(self, x: SeifertElement, index: int):
        """Coordinates of x in the peripheral subgroup <d_index, f>, or None."""
        if not 1 <= index <= self.sig.boundary:
            raise ValueError(f"boundary index {index} out of range")
        h = self.sig.boundary
        if index < h:
            gid = self.sig._free_ids[f"d{index}"]
            if not x.orb:
                return PeripheralCoordinates(index, 0, x.fiber)
            if (
                len(x.orb) == 1
                and x.orb[0][0] == FREE
                and len(x.orb[0][1]) == 1
                and x.orb[0][1][0][0] == gid
            ):
                return PeripheralCoordinates(index, x.orb[0][1][0][1], x.fiber)
            return None
        if not x.orb:
            return PeripheralCoordinates(index, 0, x.fiber)
        w = self.sig.substitute_dh()
        if not w or self.sig.has_finite_order(w):
            return None
        m = self.sig.in_cyclic_subgroup(x.orb, w)
        if m is None:
            return None
        dm = self.pow(self._dh(), m)
        return PeripheralCoordinates(index, m, x.fiber - dm.fiber)

    # -- enumeration -------------------------------------------------------------

    def letter_elements(self):
        return [(lbl, self.from_tokens(toks)) for lbl, toks in self._letter_tokens()]

    def _letter_tokens(self):
        toks = []
        for name in self.sig.free_names:
            toks.append((name, [(name, 1)]))
            toks.append((f"{name}^-1", [(name, -1)]))
        for j in range(len(self.sig.torsion_orders)):
            toks.append((f"c{j + 1}", [(f"c{j + 1}", 1)]))
            toks.append((f"c{j + 1}^-1", [(f"c{j + 1}", -1)]))
        toks.append(("f", [("f", 1)]))
        toks.append(("f^-1", [("f", -1)]))
        return toks

    def ball(self, radius: int):
        """Distinct elements spelled by at most ``radius`` generator
        letters (including f), breadth-first, deterministic order."""
        letters = [x for _, x in self.letter_elements()]
        identity = self.identity()
        seen = {(identity.orb, identity.fiber): identity}
        frontier = [identity]
        for _ in range(radius):
            new = []
            for w in frontier:
                for l in letters:
                    x = self.multiply(w, l)
                    key = (x.orb, x.fiber)
                    if key not in seen:
                        seen[key] = x
                        new.append(x)
            frontier = new
        return list(seen.values())


def regular_fiber(symbol: SeifertSymbol) -> SeifertElement:
    """Generator of the unique maximal infinite cyclic normal subgroup.

    Raises for the three bounded manifolds where this is ambiguous or
    degenerate (solid torus, T^2 x I, and the twisted I-bundle over the
    Klein bottle, which has two regular fibers).
    """
    return SeifertGroup(symbol).fiber_element(1)


# ---------------------------------------------------------------------------
# peripheral conjugate intersections (bounded check)

@dataclass(frozen=True)
class IntersectionRow:
    section_exp: int
    fiber_exp: int
    landed: bool
    ok: bool


@dataclass(frozen=True)
class PeripheralIntersectionReport:
    conjugator: str
    index_from: int
    index_to: int
    bound: int
    rows: tuple[IntersectionRow, ...]
    passed: bool


def peripheral_conjugate_intersection_check(
    group: SeifertGroup, g: SeifertElement, i: int, j: int, bound: int
) -> PeripheralIntersectionReport:
    """Check g <d_i, f> g^-1 cap <d_j, f> == <f> on exponents up to bound.

    A conjugated peripheral element may land in the target subgroup only
    when its section exponent vanishes, i.e. when it is a fiber power.
    """
    if i == j and group.peripheral_membership(g, i) is not None:
        raise ValueError("for i == j the conjugator must lie outside the peripheral subgroup")
    rows = []
    passed = True
    g_inv = group.invert(g)
    for m in range(-bound, bound + 1):
        for n in range(-bound, bound + 1):
            if m == 0 and n == 0:
                continue
            x = group.peripheral_element(i, m, n)
            y = group.multiply(group.multiply(g, x), g_inv)
            landed = group.peripheral_membership(y, j) is not None
            ok = landed == (m == 0)
            rows.append(IntersectionRow(m, n, landed, ok))
            passed = passed and ok
    return PeripheralIntersectionReport(str(g), i, j, bound, tuple(rows), passed)


# ---------------------------------------------------------------------------
# the Klein piece K x~ I:  <a, f | a f a^-1 = f^-1>

@dataclass(frozen=True)
class KleinElement:
    """Normal form a^m f^n in the Klein-piece group."""

    a_exp: int
    f_exp: int

    def __mul__(self, other: "KleinElement") -> "KleinElement":
        n1 = -self.f_exp if other.a_exp % 2 else self.f_exp
        return KleinElement(self.a_exp + other.a_exp, n1 + other.f_exp)

    def inverse(self) -> "KleinElement":
        n = self.f_exp if self.a_exp % 2 else -self.f_exp
        return KleinElement(-self.a_exp, n)

    def __pow__(self, n: int) -> "KleinElement":
        x = self if n >= 0 else self.inverse()
        acc = KleinElement(0, 0)
        for _ in range(abs(n)):
            acc = acc * x
        return acc

    @property
    def is_identity(self) -> bool:
        return self.a_exp == 0 and self.f_exp == 0

    def __str__(self):
        if self.is_identity:
            return "1"
        parts = []
        if self.a_exp:
            parts.append("a" if self.a_exp == 1 else f"a^{self.a_exp}")
        if self.f_exp:
            parts.append("f" if self.f_exp == 1 else f"f^{self.f_exp}")
        return "*".join(parts)


def klein_multiply(x: KleinElement, y: KleinElement) -> KleinElement:
    return x * y


def klein_invert(x: KleinElement) -> KleinElement:
    return x.inverse()


def klein_from_word(text: str) -> KleinElement:
    acc = KleinElement(0, 0)
    for chunk in re.split(r"[\s*]+", text.strip()):
        if not chunk:
            continue
        m = re.fullmatch(r"([af])(?:\^(-?[0-9]+))?", chunk)
        if m is None:
            raise ValueError(f"bad Klein generator token {chunk!r}")
        exp = int(m.group(2) or 1)
        acc = acc * (KleinElement(exp, 0) if m.group(1) == "a" else KleinElement(0, exp))
    return acc


def klein_peripheral(x: KleinElement):
    """Coordinates (p, q) with x = (a^2)^p f^q, or None when a_exp is odd.
    The boundary subgroup <a^2, f> has index two."""
    if x.a_exp % 2:
        return None
    return (x.a_exp // 2, x.f_exp)


@dataclass(frozen=True)
class KleinSlopeRow:
    k: int
    conjugate: str
    in_subgroup: bool


@dataclass(frozen=True)
class KleinSlopeReport:
    p: int
    q: int
    bound: int
    rows: tuple[KleinSlopeRow, ...]
    passed: bool


def klein_slope_separation_check(p: int, q: int, bound: int) -> KleinSlopeReport:
    """Verify a <a^2p f^q>^k a^-1 never returns to <a^2p f^q> (0 < |k| <= bound).

    The slopes (+-1, 0) and (0, +-1) are the two regular fibers a^2 and f,
    whose cyclic groups are normal, so they are rejected as degenerate.
    """
    if gcd(p, q) != 1:
        raise ValueError(f"slope ({p},{q}) is not primitive")
    if (abs(p), abs(q)) in ((1, 0), (0, 1)):
        raise ValueError(f"slope ({p},{q}) is a regular fiber; its subgroup is normal")
    gen = KleinElement(2 * p, q)
    a = KleinElement(1, 0)
    rows = []
    passed = True
    for k in [k for k in range(-bound, bound + 1) if k]:
        y = a * (gen ** k) * a.inverse()
        inside = False
        if y.a_exp % (2 * p) == 0:
            t = y.a_exp // (2 * p)
            inside = (gen ** t) == y
        rows.append(KleinSlopeRow(k, str(y), inside))
        passed = passed and not inside
    return KleinSlopeReport(p, q, bound, rows, passed)
