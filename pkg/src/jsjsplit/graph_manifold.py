"""Graph manifolds: pieces at vertices, torus gluings on edges.

A spec lists pieces (bounded Seifert pieces over hyperbolic orbifolds,
twisted I-bundles over the Klein bottle, or opaque hyperbolic-type
pieces carrying only a boundary torus count) and gluings.  Each gluing
identifies two boundary tori through an integer matrix with determinant
+-1 written in the declared peripheral bases: (d_i, f) on a Seifert
boundary, (a^2, f) on the Klein boundary, an abstract symbol pair on a
hyperbolic piece.  A column vector (m, n) means d_i^m f^n.

Validation enforces the shape a JSJ decomposition can have: no solid
torus / T^2 x I / Klein pieces disguised as Seifert symbols, every
Klein slot glued, the graph connected, and every gluing between fibered
pieces transverse on fibers (otherwise the fibrations would match up
across the torus and the edge would not be a JSJ torus).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .seifert import (
    GeometryClass,
    SeifertSymbol,
    SpecialManifold,
    base_orbifold,
    geometry_class,
    recognize_special,
)

Matrix = tuple[tuple[int, int], tuple[int, int]]


def mat_det(m: Matrix) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def mat_inv(m: Matrix) -> Matrix:
    d = mat_det(m)
    if d not in (1, -1):
        raise ValueError(f"matrix {m} is not unimodular")
    return ((m[1][1] * d, -m[0][1] * d), (-m[1][0] * d, m[0][0] * d))


def mat_apply(m: Matrix, v):
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


IDENTITY: Matrix = ((1, 0), (0, 1))


class PieceKind(Enum):
    SEIFERT = "seifert"
    KLEIN = "klein"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class Piece:
    name: str
    kind: PieceKind
    symbol: SeifertSymbol | None = None
    stub_slots: int = 0

    @property
    def slot_count(self) -> int:
        if self.kind is PieceKind.SEIFERT:
            return self.symbol.boundary
        if self.kind is PieceKind.KLEIN:
            return 1
        return self.stub_slots


def seifert_piece(name: str, symbol: SeifertSymbol) -> Piece:
    return Piece(name, PieceKind.SEIFERT, symbol=symbol)


def klein_piece(name: str) -> Piece:
    return Piece(name, PieceKind.KLEIN)


def hyperbolic_piece(name: str, slots: int) -> Piece:
    if slots < 1:
        raise ValueError("a hyperbolic piece needs at least one boundary torus")
    return Piece(name, PieceKind.HYPERBOLIC, stub_slots=slots)


@dataclass(frozen=True)
class TorusSlot:
    piece: str
    index: int  # 1-based boundary index within the piece

    def __str__(self):
        return f"{self.piece}.{self.index}"


@dataclass(frozen=True)
class Gluing:
    name: str
    minus: TorusSlot
    plus: TorusSlot
    matrix: Matrix

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in row) for row in self.matrix))
        if mat_det(self.matrix) not in (1, -1):
            raise ValueError(f"gluing {self.name}: matrix must have determinant +-1")


@dataclass(frozen=True)
class GraphManifoldSpec:
    pieces: tuple[Piece, ...]
    gluings: tuple[Gluing, ...]
    positive: tuple[str, ...] = ()  # gluing names declared positively oriented

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "gluings", tuple(self.gluings))
        if not self.positive:
            object.__setattr__(self, "positive", tuple(g.name for g in self.gluings))

    def piece(self, name: str) -> Piece:
        for p in self.pieces:
            if p.name == name:
                return p
        raise KeyError(f"no piece named {name!r}")

    def gluing(self, name: str) -> Gluing:
        for g in self.gluings:
            if g.name == name:
                return g
        raise KeyError(f"no gluing named {name!r}")


# ---------------------------------------------------------------------------
# diagnostics

@dataclass(frozen=True)
class Diagnostic:
    level: str  # "error" | "warning" | "info"
    code: str
    subject: str
    message: str


@dataclass
class Diagnostics:
    entries: list[Diagnostic] = field(default_factory=list)

    def error(self, code, subject, message):
        self.entries.append(Diagnostic("error", code, subject, message))

    def warn(self, code, subject, message):
        self.entries.append(Diagnostic("warning", code, subject, message))

    def info(self, code, subject, message):
        self.entries.append(Diagnostic("info", code, subject, message))

    @property
    def ok(self) -> bool:
        return not any(d.level == "error" for d in self.entries)


def _fiber_classes(piece: Piece):
    """Primitive fiber classes in the declared peripheral basis."""
    if piece.kind is PieceKind.SEIFERT:
        return [(0, 1)]
    if piece.kind is PieceKind.KLEIN:
        # both regular fibers: f = (0,1) and a^2 = (1,0)
        return [(0, 1), (1, 0)]
    return []


def fiber_transverse(spec: GraphManifoldSpec, gluing: Gluing | str) -> bool:
    """True when no fiber class maps to a fiber class across the gluing.

    Vacuously true (the fibration cannot extend) when either end is a
    hyperbolic piece.
    """
    if isinstance(gluing, str):
        gluing = spec.gluing(gluing)
    pm = spec.piece(gluing.minus.piece)
    pp = spec.piece(gluing.plus.piece)
    minus_fibers = _fiber_classes(pm)
    plus_fibers = _fiber_classes(pp)
    if not minus_fibers or not plus_fibers:
        return True
    for v in minus_fibers:
        image = mat_apply(gluing.matrix, v)
        for w in plus_fibers:
            if image[0] * w[1] - image[1] * w[0] == 0:
                return False
    return True


def _slot_usage(spec: GraphManifoldSpec):
    usage: dict[TorusSlot, list[str]] = {}
    for g in spec.gluings:
        for slot in (g.minus, g.plus):
            usage.setdefault(slot, []).append(g.name)
    return usage


def _components(spec: GraphManifoldSpec, skip: str | None = None):
    names = [p.name for p in spec.pieces]
    parent = {n: n for n in names}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in spec.gluings:
        if g.name == skip:
            continue
        a, b = find(g.minus.piece), find(g.plus.piece)
        if a != b:
            parent[a] = b
    comps: dict[str, set[str]] = {}
    for n in names:
        comps.setdefault(find(n), set()).add(n)
    return list(comps.values())


def validate(spec: GraphManifoldSpec) -> Diagnostics:
    diag = Diagnostics()
    names = [p.name for p in spec.pieces]
    if len(set(names)) != len(names):
        diag.error("dup-piece", ",".join(names), "duplicate piece names")
        return diag
    if not spec.pieces:
        diag.error("empty", "-", "no pieces declared")
        return diag

    for p in spec.pieces:
        if p.kind is PieceKind.SEIFERT:
            special = recognize_special(p.symbol)
            if special is SpecialManifold.SOLID_TORUS:
                diag.error("forbidden-piece", p.name,
                           "solid torus pieces cannot occur: a JSJ torus bounding one "
                           "would be compressible")
            elif special is SpecialManifold.TORUS_X_INTERVAL:
                diag.error("forbidden-piece", p.name,
                           "T^2 x I pieces cannot occur in a minimal torus family")
            elif special is SpecialManifold.KLEIN_X_INTERVAL:
                diag.error("forbidden-piece", p.name,
                           f"{p.symbol} is the twisted I-bundle over the Klein bottle; "
                           "declare it with 'klein'")
            elif p.symbol.boundary == 0:
                diag.error("closed-piece", p.name, "pieces must have boundary tori")
            elif geometry_class(base_orbifold(p.symbol)) is not GeometryClass.HYPERBOLIC:
                diag.error("bad-base", p.name,
                           f"{p.symbol} does not fiber over a hyperbolic base orbifold")

    usage = _slot_usage(spec)
    for slot, users in usage.items():
        try:
            piece = spec.piece(slot.piece)
        except KeyError:
            diag.error("unknown-piece", str(slot), f"gluing references unknown piece {slot.piece!r}")
            continue
        if not 1 <= slot.index <= piece.slot_count:
            diag.error("bad-slot", str(slot),
                       f"piece {slot.piece} has {piece.slot_count} boundary tori")
        if len(users) > 1:
            diag.error("slot-reuse", str(slot), f"slot used by gluings {', '.join(users)}")
    for g in spec.gluings:
        if g.minus == g.plus:
            diag.error("self-slot", g.name, "a slot cannot be glued to itself")

    for p in spec.pieces:
        if p.kind is PieceKind.KLEIN:
            if TorusSlot(p.name, 1) not in usage:
                diag.error("free-klein-slot", p.name,
                           "the Klein piece boundary must be glued: no boundary torus of "
                           "the manifold lies on a twisted I-bundle piece")

    if len(_components(spec)) > 1:
        diag.error("disconnected", "-", "the underlying graph is not connected")

    if diag.ok:
        for g in spec.gluings:
            pm = spec.piece(g.minus.piece)
            pp = spec.piece(g.plus.piece)
            if pm.kind is PieceKind.HYPERBOLIC or pp.kind is PieceKind.HYPERBOLIC:
                diag.info("stub-edge", g.name,
                          "fiber transversality not applicable at a hyperbolic piece")
            elif not fiber_transverse(spec, g):
                diag.error("fiber-parallel", g.name,
                           "a regular fiber maps to a regular fiber: the fibrations "
                           "would extend across this torus, so it is not a JSJ torus")
            if mat_det(g.matrix) == 1:
                diag.info("det", g.name,
                          "det = +1; orientation compatibility of the gluing is recorded, "
                          "not enforced")
        if any(p.kind is PieceKind.KLEIN for p in spec.pieces) and _has_cycle(spec):
            diag.info("klein-cycle", "-",
                      "Klein pieces next to cycles: torus-bundle covers beyond the "
                      "all-Klein rule are not analyzed")
    return diag


def _has_cycle(spec: GraphManifoldSpec) -> bool:
    return len(spec.gluings) > len(spec.pieces) - len(_components(spec))


# ---------------------------------------------------------------------------
# edge queries

class SplitCase(Enum):
    D1 = "D1"
    D2 = "D2"
    D3 = "D3"
    D4 = "D4"
    ND1 = "ND1"
    ND2 = "ND2"


class SolLikeError(ValueError):
    """The spec is excluded from splitting analysis (Sol geometry)."""


def sol_like(spec: GraphManifoldSpec) -> bool:
    """All-Klein specs (e.g. the doubled twisted I-bundle) are finitely
    covered by torus bundles and admit no acylindrical splitting."""
    return bool(spec.pieces) and all(p.kind is PieceKind.KLEIN for p in spec.pieces)


def edge_separating(spec: GraphManifoldSpec, edge: Gluing | str) -> bool:
    if isinstance(edge, str):
        edge = spec.gluing(edge)
    if edge.minus.piece == edge.plus.piece:
        return False
    return len(_components(spec, skip=edge.name)) > len(_components(spec))


def classify_edge(spec: GraphManifoldSpec, edge: Gluing | str) -> SplitCase:
    """Which of the six splitting cases the JSJ torus realizes.

    Separating: hyperbolic/hyperbolic -> D1; hyperbolic with any Seifert
    fibered piece (Klein included) -> D2; Seifert/Seifert -> D3; Seifert
    with hyperbolic base against Klein -> D4.  Non-separating: both
    sides hyperbolic -> ND1, anything else -> ND2.
    """
    if isinstance(edge, str):
        edge = spec.gluing(edge)
    if sol_like(spec):
        raise SolLikeError("excluded: Sol-like (all pieces are twisted I-bundles)")
    km = spec.piece(edge.minus.piece).kind
    kp = spec.piece(edge.plus.piece).kind
    if edge_separating(spec, edge):
        if km is PieceKind.HYPERBOLIC and kp is PieceKind.HYPERBOLIC:
            return SplitCase.D1
        if PieceKind.HYPERBOLIC in (km, kp):
            return SplitCase.D2
        if km is PieceKind.SEIFERT and kp is PieceKind.SEIFERT:
            return SplitCase.D3
        if PieceKind.KLEIN in (km, kp) and PieceKind.SEIFERT in (km, kp):
            return SplitCase.D4
        raise SolLikeError("excluded: separating torus between two twisted I-bundles "
                           "(doubled K x~ I is Sol-like)")
    if km is PieceKind.HYPERBOLIC and kp is PieceKind.HYPERBOLIC:
        return SplitCase.ND1
    return SplitCase.ND2


def boundary_tori(spec: GraphManifoldSpec):
    """Slots not consumed by gluings, grouped in piece order."""
    usage = _slot_usage(spec)
    out = []
    for p in spec.pieces:
        for i in range(1, p.slot_count + 1):
            slot = TorusSlot(p.name, i)
            if slot not in usage:
                out.append(slot)
    return out
