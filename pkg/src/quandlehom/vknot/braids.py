"""Virtual braid words, closed virtual link diagrams and their components.

Strand positions are 1-based, as in the usual notation s_i / v_i acting on
positions i and i+1.  Conventions for a classical letter on positions
(i, i+1) carrying colors [a, b]:

* ``s_i``    gives [b, a*b]; the over strand is the one entering at i+1
  and the crossing is positive.
* ``s_i^-1`` gives [b*^-1 a, a]; the over strand is the one entering at i
  and the crossing is negative.
* ``v_i``    gives [b, a] with no crossing information.

Attached virtual loops are compiled into extra strand positions that are
routed next to their target strand with virtual crossings.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import ParseError


@dataclass(frozen=True)
class Letter:
    kind: str   # "s" (classical) or "v" (virtual)
    index: int  # acts on positions index, index + 1
    sign: int = 1

    def __post_init__(self):
        if self.kind not in ("s", "v"):
            raise ValueError("letter kind must be 's' or 'v'")
        if self.index < 1:
            raise ValueError("letter index must be >= 1")
        if self.sign not in (1, -1) or (self.kind == "v" and self.sign != 1):
            raise ValueError("bad letter sign")

    def inverse(self) -> Letter:
        return self if self.kind == "v" else Letter("s", self.index, -self.sign)

    def __str__(self):
        if self.kind == "v":
            return f"v{self.index}"
        return f"s{self.index}" + ("" if self.sign > 0 else "^-1")


_TOKEN = re.compile(r"^(s|v|sigma|S|V)(\d+)(?:\^?(-1|\+1|1|-))?$")


def parse_letter(token: str) -> Letter:
    m = _TOKEN.match(token.strip())
    if not m:
        raise ParseError(f"cannot parse braid letter {token!r}")
    kind = "v" if m.group(1) in ("v", "V") else "s"
    sign = -1 if m.group(3) in ("-1", "-") else 1
    if kind == "v" and sign == -1:
        sign = 1  # virtual crossings are involutions
    return Letter(kind, int(m.group(2)), sign)


@dataclass(frozen=True)
class VirtualBraidWord:
    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("need at least one strand")
        for L in self.letters:
            if L.index >= self.strands:
                raise ValueError(f"letter {L} needs more than {self.strands} strands")

    @classmethod
    def parse(cls, text: str, strands: int | None = None) -> VirtualBraidWord:
        letters = tuple(parse_letter(t) for t in text.replace(",", " ").split())
        need = max((L.index + 1 for L in letters), default=1)
        return cls(max(need, strands or 1), letters)

    def __str__(self):
        return " ".join(str(L) for L in self.letters)

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: VirtualBraidWord) -> VirtualBraidWord:
        return VirtualBraidWord(max(self.strands, other.strands), self.letters + other.letters)

    def __mul__(self, k: int) -> VirtualBraidWord:
        return VirtualBraidWord(self.strands, self.letters * k)

    def inverse(self) -> VirtualBraidWord:
        return VirtualBraidWord(self.strands, tuple(L.inverse() for L in reversed(self.letters)))

    def is_classical(self) -> bool:
        return all(L.kind == "s" for L in self.letters)

    def strand_tracks(self) -> list[list[int]]:
        """tracks[k][p-1] = top position of the strand at position p after k letters."""
        cur = list(range(1, self.strands + 1))
        tracks = [list(cur)]
        for L in self.letters:
            i = L.index - 1
            cur[i], cur[i + 1] = cur[i + 1], cur[i]
            tracks.append(list(cur))
        return tracks

    def permutation(self) -> tuple[int, ...]:
        """perm[t-1] = bottom position reached by the strand starting at top position t."""
        final = self.strand_tracks()[-1]
        out = [0] * self.strands
        for p, t in enumerate(final, start=1):
            out[t - 1] = p
        return tuple(out)


def word(text: str, strands: int | None = None) -> VirtualBraidWord:
    return VirtualBraidWord.parse(text, strands)


# ---------------------------------------------------------------- crossing gadgets


def _virtual_path(start: int, stop: int) -> list[Letter]:
    """Virtual crossings moving the strand at ``start`` to ``stop`` (stop < start)."""
    return [Letter("v", p) for p in range(start - 1, stop - 1, -1)]


def over_gadget(over: int, under: int, sign: int) -> list[Letter]:
    """Letters making the strand at position ``over`` cross over the one at ``under`` once.

    The two strands are brought next to each other through virtual
    crossings, cross classically with the given sign, and every strand is
    returned to its original position.
    """
    if over == under:
        raise ValueError("a strand cannot cross itself in a gadget")
    if over < under:
        # bring the under strand down to over + 1, then "over at p, under at p+1"
        down = _virtual_path(under, over + 1)
        p = over
        core = [Letter("v", p), Letter("s", p, 1)] if sign > 0 else [Letter("s", p, -1), Letter("v", p)]
    else:
        down = _virtual_path(over, under + 1)
        p = under
        core = [Letter("s", p, 1), Letter("v", p)] if sign > 0 else [Letter("v", p), Letter("s", p, -1)]
    back = list(reversed(down))
    return down + core + back


# ---------------------------------------------------------------- diagrams


@dataclass(frozen=True)
class LoopSpec:
    """A virtual loop crossing once over ``strand`` just before letter ``pos``.

    ``color`` fixes the loop's color (an element index) when given.
    """

    strand: int
    pos: int
    sign: int = 1
    color: int | None = None


@dataclass(frozen=True)
class VirtualLinkDiagram:
    base: VirtualBraidWord
    loops: tuple[LoopSpec, ...] = ()
    label: str = ""

    def __post_init__(self):
        for lp in self.loops:
            if not 1 <= lp.strand <= self.base.strands:
                raise ValueError(f"loop strand {lp.strand} out of range")
            if not 0 <= lp.pos <= len(self.base):
                raise ValueError(f"loop position {lp.pos} out of range")
            if lp.sign not in (1, -1):
                raise ValueError("loop sign must be +-1")

    @property
    def strands(self) -> int:
        return self.base.strands + len(self.loops)

    def compiled(self) -> VirtualBraidWord:
        """The closed braid on base strands plus one extra strand per loop."""
        j = self.base.strands
        order = sorted(range(len(self.loops)), key=lambda k: (self.loops[k].pos, k))
        letters: list[Letter] = []
        nxt = 0
        for pos in range(len(self.base) + 1):
            while nxt < len(order) and self.loops[order[nxt]].pos == pos:
                k = order[nxt]
                lp = self.loops[k]
                letters += over_gadget(j + k + 1, lp.strand, lp.sign)
                nxt += 1
            if pos < len(self.base):
                letters.append(self.base.letters[pos])
        return VirtualBraidWord(self.strands, tuple(letters))

    def with_word(self, base: VirtualBraidWord) -> VirtualLinkDiagram:
        return VirtualLinkDiagram(base, self.loops, self.label)

    def to_text(self, names=None) -> str:
        lines = []
        if self.base.strands > max((L.index + 1 for L in self.base.letters), default=1):
            lines.append(f"strands {self.base.strands}")
        lines.append(str(self.base) if len(self.base) else "")
        for lp in self.loops:
            line = f"loop strand={lp.strand} pos={lp.pos} sign={lp.sign:+d}"
            if lp.color is not None:
                line += f" color={names[lp.color] if names else lp.color}"
            lines.append(line)
        return "\n".join(lines) + "\n"


def as_diagram(D) -> VirtualLinkDiagram:
    if isinstance(D, VirtualLinkDiagram):
        return D
    if isinstance(D, VirtualBraidWord):
        return VirtualLinkDiagram(D)
    if isinstance(D, str):
        return VirtualLinkDiagram(VirtualBraidWord.parse(D))
    raise TypeError(f"cannot interpret {D!r} as a diagram")


def parse_diagram(text: str, element_index=None) -> VirtualLinkDiagram:
    """Read the diagram text format: braid tokens, optional ``strands N`` and loop lines."""
    tokens: list[str] = []
    strands = None
    loop_lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("loop"):
            loop_lines.append(line)
        elif line.startswith("strands"):
            strands = int(line.split()[1])
        else:
            tokens += line.split()
    base = VirtualBraidWord.parse(" ".join(tokens), strands)
    loops = []
    for line in loop_lines:
        fields = dict(part.split("=", 1) for part in line.split()[1:])
        try:
            color = fields.get("color")
            if color is not None:
                color = element_index(color) if element_index else int(color)
            loops.append(LoopSpec(int(fields["strand"]), int(fields.get("pos", len(base))),
                                  int(fields.get("sign", "+1")), color))
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad loop line {line!r}") from exc
    return VirtualLinkDiagram(base, tuple(loops))


# ---------------------------------------------------------------- components and linking numbers


@dataclass
class CrossingInfo:
    """A classical crossing of the compiled word: which component passes over which."""

    letter: int
    index: int
    sign: int
    over_component: int
    under_component: int


@dataclass
class ComponentData:
    components: list[tuple[int, ...]]   # top positions of each component
    component_of: list[int]             # top position (0-based) -> component
    crossings: list[CrossingInfo] = field(default_factory=list)
    vlk: list[list[int]] = field(default_factory=list)


def components_and_vlk(D) -> ComponentData:
    """Components (cycles of the closure permutation) and the matrix vlk[i][j]
    = signed count of crossings where component i passes over component j."""
    D = as_diagram(D)
    w = D.compiled()
    perm = w.permutation()
    comp_of = [-1] * w.strands
    comps = []
    for t in range(w.strands):
        if comp_of[t] >= 0:
            continue
        cyc = []
        p = t
        while comp_of[p] < 0:
            comp_of[p] = len(comps)
            cyc.append(p + 1)
            p = perm[p] - 1
        comps.append(tuple(sorted(cyc)))
    tracks = w.strand_tracks()
    k = len(comps)
    vlk = [[0] * k for _ in range(k)]
    crossings = []
    for n, L in enumerate(w.letters):
        if L.kind != "s":
            continue
        before = tracks[n]
        left, right = comp_of[before[L.index - 1] - 1], comp_of[before[L.index] - 1]
        over, under = (right, left) if L.sign > 0 else (left, right)
        vlk[over][under] += L.sign
        crossings.append(CrossingInfo(n, L.index, L.sign, over, under))
    return ComponentData(comps, comp_of, crossings, vlk)


# ---------------------------------------------------------------- standard diagrams


def unknot() -> VirtualLinkDiagram:
    return VirtualLinkDiagram(VirtualBraidWord(1), label="unknot")


def trefoil() -> VirtualLinkDiagram:
    """Closure of s1^3."""
    return VirtualLinkDiagram(VirtualBraidWord.parse("s1 s1 s1"), label="trefoil")


def virtual_hopf(sign: int = 1) -> VirtualLinkDiagram:
    """Two components, the first crossing over the second once with the given sign."""
    return VirtualLinkDiagram(VirtualBraidWord(2, tuple(over_gadget(1, 2, sign))),
                              label="H+" if sign > 0 else "H-")


def twisted_family(m: int) -> VirtualLinkDiagram:
    """Closure of (s1 s1 v1)^m."""
    return VirtualLinkDiagram(VirtualBraidWord.parse("s1 s1 v1") * m, label=f"K{m}")


def disjoint_union(*diagrams) -> VirtualLinkDiagram:
    """Place diagrams side by side (loops are shifted along)."""
    strands = 0
    letters: list[Letter] = []
    loops: list[LoopSpec] = []
    offset_pos = 0
    for D in diagrams:
        D = as_diagram(D)
        base = D.base
        for lp in D.loops:
            loops.append(LoopSpec(lp.strand + strands, lp.pos + offset_pos, lp.sign, lp.color))
        letters += [Letter(L.kind, L.index + strands, L.sign) for L in base.letters]
        strands += base.strands
        offset_pos += len(base)
    return VirtualLinkDiagram(VirtualBraidWord(max(strands, 1), tuple(letters)), tuple(loops))


def prescribed_vlk_link(matrix: Sequence[Sequence[int]]) -> VirtualLinkDiagram:
    """A k-component virtual link with vlk(K_i, K_j) = matrix[i][j] off the diagonal.

    Component i is the closure of strand i; for every ordered pair a copy of
    the virtual Hopf gadget (component i over j, with the sign of the entry)
    is inserted |matrix[i][j]| times, which amounts to connected sums with
    H_+ or H_-.
    """
    k = len(matrix)
    letters: list[Letter] = []
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            n = int(matrix[i][j])
            for _ in range(abs(n)):
                letters += over_gadget(i + 1, j + 1, 1 if n > 0 else -1)
    return VirtualLinkDiagram(VirtualBraidWord(max(k, 1), tuple(letters)), label="prescribed-vlk")


# ---------------------------------------------------------------- moves


def _random_sign(rng) -> int:
    return rng.choice((1, -1))


def _rewrite_once(letters: list[Letter], strands: int, rng) -> list[Letter] | None:
    """Apply one relation to an existing occurrence, if any."""
    options = []
    n = len(letters)
    for p in range(n - 1):
        a, b = letters[p], letters[p + 1]
        # far commutation
        if abs(a.index - b.index) >= 2:
            options.append((p, 2, [b, a]))
    for p in range(n - 2):
        a, b, c = letters[p:p + 3]
        if a == c and abs(a.index - b.index) == 1:
            i, j = a.index, b.index
            if a.kind == b.kind == "s" and a.sign == b.sign == c.sign:
                options.append((p, 3, [Letter("s", j, a.sign), Letter("s", i, a.sign), Letter("s", j, a.sign)]))
            elif a.kind == b.kind == "v":
                options.append((p, 3, [Letter("v", j), Letter("v", i), Letter("v", j)]))
            elif a.kind == "v" and b.kind == "s":
                options.append((p, 3, [Letter("v", j), Letter("s", i, b.sign), Letter("v", j)]))
    if not options:
        return None
    p, length, repl = rng.choice(options)
    return letters[:p] + repl + letters[p + length:]


def random_move(w: VirtualBraidWord, rng: random.Random) -> VirtualBraidWord:
    """One randomly chosen virtual braid move at a random position (strand count preserved)."""
    letters = list(w.letters)
    j = w.strands
    moves = ["rewrite"]
    if j >= 2:
        moves += ["cancel", "virtual_cancel"]
    if j >= 3:
        moves += ["braid", "virtual_braid", "mixed"]
    move = rng.choice(moves)
    p = rng.randint(0, len(letters))
    if move == "rewrite":
        out = _rewrite_once(letters, j, rng)
        if out is not None:
            return VirtualBraidWord(j, tuple(out))
        move = "cancel" if j >= 2 else None
    if move is None:
        return w
    i = rng.randint(1, j - 1)
    if move == "cancel":
        e = _random_sign(rng)
        ins = [Letter("s", i, e), Letter("s", i, -e)]
    elif move == "virtual_cancel":
        ins = [Letter("v", i), Letter("v", i)]
    else:
        i = rng.randint(1, j - 2)
        if move == "braid":
            e = _random_sign(rng)
            X = [Letter("s", i, e), Letter("s", i + 1, e), Letter("s", i, e)]
            Xr = [Letter("s", i + 1, e), Letter("s", i, e), Letter("s", i + 1, e)]
        elif move == "virtual_braid":
            X = [Letter("v", i), Letter("v", i + 1), Letter("v", i)]
            Xr = [Letter("v", i + 1), Letter("v", i), Letter("v", i + 1)]
        else:
            e = _random_sign(rng)
            if rng.random() < 0.5:
                X = [Letter("v", i), Letter("s", i + 1, e), Letter("v", i)]
                Xr = [Letter("v", i + 1), Letter("s", i, e), Letter("v", i + 1)]
            else:
                X = [Letter("v", i + 1), Letter("s", i, e), Letter("v", i + 1)]
                Xr = [Letter("v", i), Letter("s", i + 1, e), Letter("v", i)]
        inv = [L.inverse() for L in reversed(X)]
        # X X^-1 is trivial; then replace X by its relation partner
        ins = Xr + inv if rng.random() < 0.5 else inv + Xr
        # (inv + Xr) realises X^-1 X with X rewritten, also trivial
    letters[p:p] = ins
    return VirtualBraidWord(j, tuple(letters))


def move_variants(w: VirtualBraidWord | VirtualLinkDiagram, count: int = 5, steps: int = 3,
                  seed: int | None = 0) -> list:
    """Equivalent words built from random insertions of trivial pairs and braid relations.

    No conjugation or stabilization is used, so strand positions and hence
    component labels are preserved.  For diagrams with loops only the base
    word is changed and loops keep their positions only when inserted after
    them, so loops are required to sit at the end of the word.
    """
    rng = random.Random(seed)
    diagram = None
    if isinstance(w, VirtualLinkDiagram):
        diagram = w
        if any(lp.pos != len(w.base) for lp in w.loops):
            raise ValueError("move_variants needs loops attached at the end of the word")
        w = w.base
    out = []
    for _ in range(count):
        v = w
        for _ in range(steps):
            v = random_move(v, rng)
        if diagram is not None:
            loops = tuple(LoopSpec(lp.strand, len(v), lp.sign, lp.color) for lp in diagram.loops)
            out.append(VirtualLinkDiagram(v, loops, diagram.label))
        else:
            out.append(v)
    return out


def random_word(strands: int, length: int, rng: random.Random, virtual_ratio: float = 0.3) -> VirtualBraidWord:
    letters = []
    for _ in range(length):
        i = rng.randint(1, strands - 1)
        if rng.random() < virtual_ratio:
            letters.append(Letter("v", i))
        else:
            letters.append(Letter("s", i, _random_sign(rng)))
    return VirtualBraidWord(strands, tuple(letters))
