"""Exact word problem in orbifold fundamental groups of bounded bases.

For a base orbifold with boundary the orbifold group is a free product

    F_m * Z_{p_1} * ... * Z_{p_k}

where the free factor of rank m = 2g+h-1 (resp. |g|+h-1 for g < 0) is
generated by the surface generators a_i, b_i and the first h-1 boundary
loops d_l; the last boundary loop d_h is eliminated through the long
surface relation.  Words are kept in free product normal form: an
alternating sequence of syllables, each either a freely reduced word in
the free factor or a torsion letter c_j^e with 0 < e < p_j.

Internally a syllable is a pair ``(fid, payload)`` where ``fid == -1``
marks the free factor (payload: tuple of (generator id, exponent)) and
``fid == j >= 0`` the j-th torsion factor (payload: exponent).  A word
is a tuple of syllables with no two consecutive syllables in the same
factor.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .seifert import SeifertSymbol, canonicalize

FREE = -1

_TOKEN_RE = re.compile(r"([a-z]+[0-9]*)(?:\^(-?[0-9]+))?")


def _free_append(letters: list, gid: int, exp: int):
    """Append gid^exp to a freely reduced letter list, reducing in place."""
    if exp == 0:
        return
    if letters and letters[-1][0] == gid:
        e = letters[-1][1] + exp
        if e == 0:
            letters.pop()
        else:
            letters[-1] = (gid, e)
    else:
        letters.append((gid, exp))


class FreeProductSignature:
    """Presentation data for pi_1^orb of a bounded base orbifold.

    The free generators are ordered a1, b1, ..., ag, bg (or a1..a|g|),
    then d1, ..., d_{h-1}; torsion factors keep the symbol's pair order.
    The orientation character eps sends each a_i to -1 when the base is
    non-orientable and every other generator to +1.
    """

    def __init__(self, genus: int, boundary: int, torsion_orders=()):
        if boundary < 1:
            raise ValueError("bounded bases only: need h >= 1")
        self.genus = genus
        self.boundary = boundary
        self.torsion_orders = tuple(int(p) for p in torsion_orders)
        if any(p < 2 for p in self.torsion_orders):
            raise ValueError("torsion orders must be >= 2")
        names = []
        self._a_ids = set()
        if genus >= 0:
            for i in range(1, genus + 1):
                names.append(f"a{i}")
                names.append(f"b{i}")
        else:
            for i in range(1, -genus + 1):
                self._a_ids.add(len(names))
                names.append(f"a{i}")
        for l in range(1, boundary):
            names.append(f"d{l}")
        self.free_names = tuple(names)
        self.free_rank = len(names)
        self._free_ids = {n: i for i, n in enumerate(names)}
        self._torsion_ids = {f"c{j + 1}": j for j in range(len(self.torsion_orders))}
        self._dh_word = None

    @classmethod
    def from_symbol(cls, symbol: SeifertSymbol) -> "FreeProductSignature":
        c = canonicalize(symbol)
        return cls(c.genus, c.boundary, tuple(p for p, _ in c.pairs))

    @property
    def degenerate(self) -> bool:
        """Trivial free product (disk base); accepted but flagged."""
        return self.free_rank == 0 and not self.torsion_orders

    def eps_free(self, gid: int) -> int:
        return -1 if gid in self._a_ids else 1

    # -- construction of words -------------------------------------------

    def identity(self):
        return ()

    def generator(self, name: str, exp: int = 1):
        return self.word([(name, exp)])

    def parse_tokens(self, text: str):
        """Token list from a string like ``"a1 c1^2 d1^-1"``."""
        tokens = []
        for chunk in re.split(r"[\s*]+", text.strip()):
            if not chunk:
                continue
            m = _TOKEN_RE.fullmatch(chunk)
            if m is None:
                raise ValueError(f"bad generator token {chunk!r}")
            tokens.append((m.group(1), int(m.group(2) or 1)))
        return tokens

    def word(self, tokens):
        """Normal form of a product of generator powers.

        Tokens are (name, exponent) pairs, or a raw string.  The
        eliminated boundary generator d_h is substituted on the fly.
        """
        if isinstance(tokens, str):
            tokens = self.parse_tokens(tokens)
        w = ()
        for name, exp in tokens:
            w = self.multiply(w, self._letter_word(name, exp))
        return w

    normal_form = word

    def _letter_word(self, name: str, exp: int):
        if exp == 0:
            return ()
        if name in self._free_ids:
            return ((FREE, ((self._free_ids[name], exp),)),)
        if name in self._torsion_ids:
            j = self._torsion_ids[name]
            e = exp % self.torsion_orders[j]
            return ((j, e),) if e else ()
        if name == f"d{self.boundary}":
            return self.power(self.substitute_dh(), exp)
        raise ValueError(f"unknown generator {name!r}")

    # -- group operations --------------------------------------------------

    def multiply(self, u, v):
        stack = list(u)
        for syl in v:
            self._push_syllable(stack, syl)
        return tuple(stack)

    def _push_syllable(self, stack: list, syl):
        fid, payload = syl
        if not stack or stack[-1][0] != fid:
            stack.append(syl)
            return
        if fid == FREE:
            letters = list(stack.pop()[1])
            for gid, exp in payload:
                _free_append(letters, gid, exp)
            if letters:
                stack.append((FREE, tuple(letters)))
        else:
            e = (stack.pop()[1] + payload) % self.torsion_orders[fid]
            if e:
                stack.append((fid, e))

    def invert(self, u):
        out = []
        for fid, payload in reversed(u):
            if fid == FREE:
                out.append((FREE, tuple((g, -e) for g, e in reversed(payload))))
            else:
                out.append((fid, self.torsion_orders[fid] - payload))
        return tuple(out)

    def power(self, u, n: int):
        if n < 0:
            u, n = self.invert(u), -n
        acc = ()
        for _ in range(n):
            acc = self.multiply(acc, u)
        return acc

    def conjugate(self, u, g):
        return self.multiply(self.multiply(g, u), self.invert(g))

    # -- structural queries ------------------------------------------------

    def syllable_length(self, u) -> int:
        return len(u)

    def orientation_character(self, u) -> int:
        sign = 1
        for fid, payload in u:
            if fid == FREE:
                for gid, exp in payload:
                    if gid in self._a_ids and exp % 2:
                        sign = -sign
        return sign

    def substitute_dh(self):
        """The eliminated boundary generator d_h as a word in the others.

        Solves the long surface relation (product of commutators or of
        squares, then the torsion letters, then d_1..d_h) for d_h.
        """
        if self._dh_word is None:
            prefix = self.long_relation_prefix_tokens()
            self._dh_word = self.invert(self.word(prefix))
        return self._dh_word

    def long_relation_prefix_tokens(self):
        """Tokens of the long relation with the final d_h removed."""
        tokens = []
        if self.genus >= 0:
            for i in range(1, self.genus + 1):
                tokens += [(f"a{i}", 1), (f"b{i}", 1), (f"a{i}", -1), (f"b{i}", -1)]
        else:
            for i in range(1, -self.genus + 1):
                tokens.append((f"a{i}", 2))
        for j in range(len(self.torsion_orders)):
            tokens.append((f"c{j + 1}", 1))
        for l in range(1, self.boundary):
            tokens.append((f"d{l}", 1))
        return tokens

    def boundary_words(self):
        """The h peripheral words d_1, ..., d_{h-1} and the substituted d_h."""
        out = [(f"d{l}", self.generator(f"d{l}")) for l in range(1, self.boundary)]
        out.append((f"d{self.boundary}", self.substitute_dh()))
        return out

    # -- powers of a fixed element ------------------------------------------

    def cyclic_decompose(self, u):
        """Write u = z * core * z^-1 with core power-additive.

        The core is cyclically reduced on the syllable level and, when it
        is a single free syllable, also on the letter level, so that the
        (syllable or letter) length of core^m is exactly |m| times that
        of core.
        """
        z = ()
        core = u
        while len(core) >= 2 and core[0][0] == core[-1][0]:
            first = (core[0],)
            z = self.multiply(z, first)
            core = self.multiply(self.multiply(self.invert(first), core), first)
        if len(core) == 1 and core[0][0] == FREE:
            letters = list(core[0][1])
            while (
                len(letters) >= 2
                and letters[0][0] == letters[-1][0]
                and (letters[0][1] > 0) != (letters[-1][1] > 0)
            ):
                g, e = letters[0]
                peel = ((FREE, ((g, 1 if e > 0 else -1),)),)
                z = self.multiply(z, peel)
                core = self.multiply(self.multiply(self.invert(peel), core), peel)
                letters = list(core[0][1]) if core else []
        return z, core

    def has_finite_order(self, u) -> bool:
        _, core = self.cyclic_decompose(u)
        return len(core) == 0 or (len(core) == 1 and core[0][0] != FREE)

    def in_cyclic_subgroup(self, w, u):
        """The integer m with w = u^m, or None.  Exact: elements of
        infinite order in a free product have unique roots, and the
        cyclically reduced core of u has additive powers."""
        z, core = self.cyclic_decompose(u)
        if len(core) == 0:
            raise ValueError("u is the identity")
        if len(core) == 1 and core[0][0] != FREE:
            raise ValueError("u has finite order")
        w2 = self.conjugate(w, self.invert(z))
        if not w2:
            return 0
        if len(core) >= 2:
            if len(w2) % len(core):
                return None
            m = len(w2) // len(core)
        else:
            if len(w2) != 1 or w2[0][0] != FREE:
                return None
            lam_core = sum(abs(e) for _, e in core[0][1])
            lam_w = sum(abs(e) for _, e in w2[0][1])
            if lam_w % lam_core:
                return None
            m = lam_w // lam_core
        if self.power(core, m) == w2:
            return m
        if self.power(core, -m) == w2:
            return -m
        return None

    # -- enumeration ---------------------------------------------------------

    def letter_words(self):
        """Single-generator words, in the deterministic enumeration order."""
        out = []
        for name in self.free_names:
            out.append((f"{name}", self.generator(name)))
            out.append((f"{name}^-1", self.generator(name, -1)))
        for j in range(len(self.torsion_orders)):
            out.append((f"c{j + 1}", self.generator(f"c{j + 1}")))
            out.append((f"c{j + 1}^-1", self.generator(f"c{j + 1}", -1)))
        return out

    def ball(self, radius: int):
        """All distinct elements spelled by at most ``radius`` generators,
        breadth-first, ties broken by generator order."""
        letters = self.letter_words()
        seen = {(): "1"}
        frontier = [()]
        for _ in range(radius):
            new = []
            for w in frontier:
                for _, l in letters:
                    x = self.multiply(w, l)
                    if x not in seen:
                        seen[x] = ""
                        new.append(x)
            frontier = new
        return list(seen.keys())

    def format_word(self, u) -> str:
        if not u:
            return "1"
        parts = []
        for fid, payload in u:
            if fid == FREE:
                for gid, exp in payload:
                    name = self.free_names[gid]
                    parts.append(name if exp == 1 else f"{name}^{exp}")
            else:
                parts.append(f"c{fid + 1}" if payload == 1 else f"c{fid + 1}^{payload}")
        return "*".join(parts)


@dataclass(frozen=True)
class ConjugacyHit:
    conjugator: str
    power: int
    target: str
    target_power: int
    in_subgroup: bool


@dataclass(frozen=True)
class MalnormalityCertificate:
    """Bounded evidence that <u> is malnormal and conjugately separated
    from the other boundary subgroups: every conjugator found in the
    ball must lie in <u> itself and hit no other boundary subgroup."""

    subgroup: str
    radius: int
    ball_size: int
    hits: tuple[ConjugacyHit, ...]
    passed: bool


def malnormality_certificate(sig: FreeProductSignature, u, radius: int) -> MalnormalityCertificate:
    boundary = sig.boundary_words()
    label = next((lab for lab, w in boundary if w == u), None)
    if label is None:
        raise ValueError("u must be a boundary generator word (d_i or the substituted d_h)")
    ball = sig.ball(radius)
    hits = []
    passed = True
    for g in ball:
        g_inv = sig.invert(g)
        for lab2, u2 in boundary:
            found = None
            for m in range(1, radius + 1):
                x = sig.multiply(sig.multiply(g, sig.power(u, m)), g_inv)
                n = sig.in_cyclic_subgroup(x, u2)
                if n is not None:
                    found = (m, n)
                    break
            if found is not None:
                ok = lab2 == label and sig.in_cyclic_subgroup(g, u) is not None
                hits.append(
                    ConjugacyHit(sig.format_word(g), found[0], lab2, found[1], ok)
                )
                passed = passed and ok
    return MalnormalityCertificate(label, radius, len(ball), tuple(hits), passed)
