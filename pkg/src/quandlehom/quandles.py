"""Finite quandles: construction, axiom checking, orbits, homomorphisms, equalizers."""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .errors import AxiomViolation, NotFinite, ParseError, SearchTooLarge
from .polynomials import LaurentPoly, ResidueRing

BRUTE_FORCE_LIMIT = 8


@dataclass(frozen=True, eq=False)
class FiniteQuandle:
    """An m x m operation table ``table[a][b] = a * b`` on elements ``0..m-1``.

    Instances are immutable and hash by their table, so they can key caches.
    ``names`` holds a printable label per element (polynomials, permutations).
    """

    table: tuple[tuple[int, ...], ...]
    label: str = ""
    names: tuple[str, ...] | None = None
    is_rack: bool = field(default=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def __eq__(self, other):
        return isinstance(other, FiniteQuandle) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteQuandle({self.label or 'unnamed'}, size={self.size})"

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverse_table(self) -> tuple[tuple[int, ...], ...]:
        """``inverse_table[c][b]`` is the unique a with a * b = c."""
        m = self.size
        inv = [[0] * m for _ in range(m)]
        for b in range(m):
            for a in range(m):
                inv[self.table[a][b]][b] = a
        return tuple(tuple(r) for r in inv)

    def op_inv(self, c: int, b: int) -> int:
        return self.inverse_table[c][b]

    def element_name(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def element_index(self, name: str | int) -> int:
        if isinstance(name, int):
            return name
        if self.names and name in self.names:
            return self.names.index(name)
        try:
            return int(name)
        except ValueError as exc:
            raise ParseError(f"unknown element {name!r} of {self!r}") from exc

    def to_json(self) -> dict:
        out = {"size": self.size, "table": [list(r) for r in self.table], "label": self.label}
        if self.names:
            out["names"] = list(self.names)
        return out


def check_axioms(table: Sequence[Sequence[int]], require_idempotent: bool = True) -> None:
    """Raise :class:`AxiomViolation` for the first failing axiom (I, II, then III)."""
    m = len(table)
    if m == 0:
        raise ValueError("empty table")
    for r in table:
        if len(r) != m:
            raise ValueError("table is not square")
        for v in r:
            if not (isinstance(v, int) and 0 <= v < m):
                raise ValueError(f"entry {v!r} out of range")
    if require_idempotent:
        for a in range(m):
            if table[a][a] != a:
                raise AxiomViolation("I", (a,))
    for b in range(m):
        seen = {}
        for a in range(m):
            c = table[a][b]
            if c in seen:
                raise AxiomViolation("II", (seen[c], a, b))
            seen[c] = a
    for a in range(m):
        ta = table[a]
        for b in range(m):
            tab = ta[b]
            tb = table[b]
            for c in range(m):
                if table[tab][c] != table[ta[c]][tb[c]]:
                    raise AxiomViolation("III", (a, b, c))


def validate(table: Sequence[Sequence[int]], label: str = "", names=None) -> FiniteQuandle:
    check_axioms(table)
    return FiniteQuandle(tuple(tuple(int(v) for v in r) for r in table), label,
                         tuple(names) if names else None)


def validate_rack(table: Sequence[Sequence[int]], label: str = "") -> FiniteQuandle:
    """Racks skip idempotency; only the R complex is available for them."""
    check_axioms(table, require_idempotent=False)
    t = tuple(tuple(int(v) for v in r) for r in table)
    idempotent = all(t[a][a] == a for a in range(len(t)))
    return FiniteQuandle(t, label, None, is_rack=not idempotent)


def make_trivial(m: int) -> FiniteQuandle:
    if m < 1:
        raise ValueError("m must be positive")
    return FiniteQuandle(tuple(tuple([a] * m) for a in range(m)), f"T{m}")


def make_dihedral(k: int) -> FiniteQuandle:
    if k < 1:
        raise ValueError("k must be positive")
    return FiniteQuandle(tuple(tuple((2 * j - i) % k for j in range(k)) for i in range(k)), f"R{k}")


@dataclass(frozen=True)
class AlexanderPresentation:
    """Z_n[T, T^{-1}]/(h(T)) given by the modulus and h's coefficients ``[c_0, c_1, ...]``."""

    modulus: int
    h: tuple[int, ...]

    @classmethod
    def from_poly(cls, modulus: int, h: LaurentPoly | str) -> AlexanderPresentation:
        if isinstance(h, str):
            h = LaurentPoly.parse(h)
        h = h.normalized()
        return cls(modulus, tuple(h.coefficient_list()))

    def ring(self) -> ResidueRing:
        if self.modulus == 0:
            raise NotFinite("integer Alexander quandles are infinite")
        return ResidueRing(self.modulus, LaurentPoly(list(self.h)))


class AlexanderQuandle(FiniteQuandle):
    """A finite Alexander quandle retaining its residue ring for element lookup."""

    ring: ResidueRing
    presentation: AlexanderPresentation

    def residue(self, x: int) -> tuple[int, ...]:
        return self.ring.element(x)

    def poly(self, x: int) -> LaurentPoly:
        return self.ring.to_poly(self.ring.element(x))

    def element_of(self, p: LaurentPoly | str | int) -> int:
        """Index of the residue class of a polynomial (string, int or LaurentPoly)."""
        if isinstance(p, str):
            p = LaurentPoly.parse(p)
        elif isinstance(p, int):
            p = LaurentPoly.constant(p)
        return self.ring.index(self.ring.reduce(p))

    def element_index(self, name):
        if isinstance(name, str):
            try:
                return self.element_of(name)
            except ParseError:
                pass
        return super().element_index(name)

    def to_json(self) -> dict:
        out = super().to_json()
        out["alexander"] = {"modulus": self.presentation.modulus, "h": list(self.presentation.h)}
        return out


def make_alexander(pres: AlexanderPresentation | int, h=None) -> AlexanderQuandle:
    """Alexander quandle with a * b = T a + (1 - T) b on residues mod (n, h)."""
    if not isinstance(pres, AlexanderPresentation):
        pres = AlexanderPresentation.from_poly(pres, h if isinstance(h, (str, LaurentPoly))
                                               else LaurentPoly(list(h)))
    if pres.modulus < 2:
        raise NotFinite("modulus must be at least 2")
    ring = pres.ring()
    size = ring.size
    elems = [ring.element(i) for i in range(size)]
    t = ring.t()
    one_minus_t = ring.sub(ring.from_int(1), t)
    ta = [ring.mul(t, a) for a in elems]
    sb = [ring.mul(one_minus_t, b) for b in elems]
    table = tuple(tuple(ring.index(ring.add(ta[i], sb[j])) for j in range(size))
                  for i in range(size))
    label = f"Z{pres.modulus}[T]/({LaurentPoly(list(pres.h))})"
    q = AlexanderQuandle(table, label, tuple(ring.name(e) for e in elems))
    object.__setattr__(q, "ring", ring)
    object.__setattr__(q, "presentation", pres)
    return q


_S3_ELEMENTS = [
    ("(0 1)", (1, 0, 2)),
    ("(0 2)", (2, 1, 0)),
    ("(1 2)", (0, 2, 1)),
    ("(0 1 2)", (1, 2, 0)),
    ("(0 2 1)", (2, 0, 1)),
]


def make_s3_conjugation() -> FiniteQuandle:
    """Non-identity permutations of three letters under a * b = b^-1 a b.

    Ordered as the three transpositions followed by the two 3-cycles.
    Permutations act on the right: (pq)(x) = q(p(x)).
    """

    def compose(p, q):
        return tuple(q[p[x]] for x in range(3))

    def inverse(p):
        out = [0] * 3
        for x, y in enumerate(p):
            out[y] = x
        return tuple(out)

    perms = [p for _, p in _S3_ELEMENTS]
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[compose(compose(inverse(b), a), b)] for b in perms) for a in perms
    )
    return FiniteQuandle(table, "QS5", tuple(n for n, _ in _S3_ELEMENTS))


def load_quandle(path: str | Path) -> FiniteQuandle:
    data = json.loads(Path(path).read_text())
    return quandle_from_json(data)


def quandle_from_json(data: dict) -> FiniteQuandle:
    try:
        table = data["table"]
    except (KeyError, TypeError) as exc:
        raise ParseError("quandle JSON needs a 'table' field") from exc
    if "size" in data and data["size"] != len(table):
        raise ParseError("declared size does not match table")
    X = validate(table, data.get("label", ""), data.get("names"))
    if "alexander" in data:
        a = data["alexander"]
        Y = make_alexander(AlexanderPresentation(a["modulus"], tuple(a["h"])))
        if Y.table != X.table:
            raise ParseError("table does not match its Alexander presentation")
        return Y
    return X


def save_quandle(q: FiniteQuandle, path: str | Path) -> None:
    Path(path).write_text(json.dumps(q.to_json()))


# ---------------------------------------------------------------- orbits


@dataclass(frozen=True)
class OrbitDecomposition:
    orbits: tuple[tuple[int, ...], ...]
    orbit_of: tuple[int, ...]

    def __len__(self):
        return len(self.orbits)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.orbits)


def orbits(X: FiniteQuandle) -> OrbitDecomposition:
    """Closure of each element under all S(b) and S(b)^-1, numbered by smallest member."""
    m = X.size
    orbit_of = [-1] * m
    classes = []
    for start in range(m):
        if orbit_of[start] >= 0:
            continue
        k = len(classes)
        orbit_of[start] = k
        members = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for b in range(m):
                for y in (X.table[x][b], X.inverse_table[x][b]):
                    if orbit_of[y] < 0:
                        orbit_of[y] = k
                        members.append(y)
                        queue.append(y)
        classes.append(tuple(sorted(members)))
    return OrbitDecomposition(tuple(classes), tuple(orbit_of))


@dataclass(frozen=True)
class QuandleHom:
    source: FiniteQuandle
    target: FiniteQuandle
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.source.size:
            raise ValueError("map length must equal the source size")
        S, T = self.source.table, self.target.table
        f = self.map
        for a in range(self.source.size):
            for b in range(self.source.size):
                if f[S[a][b]] != T[f[a]][f[b]]:
                    raise ValueError(f"not a homomorphism: f({a}*{b}) != f({a})*f({b})")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_surjective(self) -> bool:
        return set(self.map) == set(range(self.target.size))

    def fiber(self, y: int) -> tuple[int, ...]:
        return tuple(x for x, fx in enumerate(self.map) if fx == y)


def identity_hom(X: FiniteQuandle) -> QuandleHom:
    return QuandleHom(X, X, tuple(range(X.size)))


def hom_from_function(X: FiniteQuandle, Y: FiniteQuandle, f: Callable[[int], int]) -> QuandleHom:
    return QuandleHom(X, Y, tuple(f(x) for x in range(X.size)))


def orbit_projection(X: FiniteQuandle) -> QuandleHom:
    orb = orbits(X)
    return QuandleHom(X, make_trivial(len(orb)), orb.orbit_of)


def alexander_reduction(X: AlexanderQuandle, Y: AlexanderQuandle) -> QuandleHom:
    """Coefficient reduction X -> Y; valid when Y's (n, h) divide X's."""
    return hom_from_function(X, Y, lambda x: Y.element_of(X.poly(x).with_modulus(0)))


def alexander_evaluation(X: AlexanderQuandle, value: int, Y: FiniteQuandle | None = None) -> QuandleHom:
    """The map f(T) -> f(value) mod n, landing in the Alexander quandle Z_n with T = value.

    For value = 1 the target is the trivial quandle on Z_n, for value = -1 the
    dihedral quandle R_n (when ``Y`` is omitted).
    """
    n = X.presentation.modulus
    if Y is None:
        if value % n == 1 % n:
            Y = make_trivial(n)
        elif value % n == (-1) % n:
            Y = make_dihedral(n)
        else:
            Y = make_alexander(AlexanderPresentation(n, ((-value) % n, 1)))
    return hom_from_function(X, Y, lambda x: X.poly(x).evaluate(value, n))


# ---------------------------------------------------------------- equalizers


@dataclass(frozen=True)
class Subquandle:
    quandle: FiniteQuandle
    inclusion: tuple[int, ...]


def subquandle(X: FiniteQuandle, elements: Iterable[int], label: str = "") -> Subquandle:
    elems = tuple(sorted(set(elements)))
    pos = {x: i for i, x in enumerate(elems)}
    try:
        table = tuple(tuple(pos[X.table[a][b]] for b in elems) for a in elems)
    except KeyError as exc:
        raise ValueError("subset is not closed under the operation") from exc
    check_axioms(table)
    names = tuple(X.element_name(x) for x in elems) if X.names else None
    return Subquandle(FiniteQuandle(table, label, names), elems)


def equalizer(f: QuandleHom, x: int) -> Subquandle:
    return subquandle(f.source, f.fiber(f(x)), f"E_{x}")


@dataclass(frozen=True)
class InnerWord:
    """Letters ``(b, +1)`` act by S(b) and ``(b, -1)`` by its inverse, left to right."""

    letters: tuple[tuple[int, int], ...] = ()

    def inverse(self) -> InnerWord:
        return InnerWord(tuple((b, -e) for b, e in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: InnerWord) -> InnerWord:
        return InnerWord(self.letters + other.letters)


def apply_inner_word(X: FiniteQuandle, a: int, w: InnerWord | Sequence[tuple[int, int]]) -> int:
    letters = w.letters if isinstance(w, InnerWord) else tuple(w)
    for b, e in letters:
        a = X.table[a][b] if e > 0 else X.inverse_table[a][b]
    return a


def homogeneity_words(X: FiniteQuandle, elements: Sequence[int] | None = None):
    """Breadth-first words: ``words[(c0, c)]`` maps c0 to c using letters from ``elements``.

    ``elements`` must form a subquandle; letters are given as indices of X.
    Missing keys mean c is not reachable from c0.
    """
    elems = tuple(range(X.size)) if elements is None else tuple(elements)
    words: dict[tuple[int, int], InnerWord] = {}
    for c0 in elems:
        parent = {c0: None}
        queue = deque([c0])
        while queue:
            y = queue.popleft()
            for b in elems:
                for e in (1, -1):
                    z = X.table[y][b] if e > 0 else X.inverse_table[y][b]
                    if z not in parent:
                        parent[z] = (y, (b, e))
                        queue.append(z)
        for c, _ in parent.items():
            letters = []
            node = c
            while parent[node] is not None:
                prev, letter = parent[node]
                letters.append(letter)
                node = prev
            words[(c0, c)] = InnerWord(tuple(reversed(letters)))
    return words


def is_locally_homogeneous(f: QuandleHom):
    """Return ``(flag, words)`` where ``words[(c_prime, c)]`` satisfies c_prime * w = c.

    Words use only letters from the shared equalizer.  When the flag is False
    the dictionary holds only the pairs that were reachable.
    """
    words: dict[tuple[int, int], InnerWord] = {}
    ok = True
    for y in sorted(set(f.map)):
        fiber = f.fiber(y)
        w = homogeneity_words(f.source, fiber)
        words.update(w)
        if len(w) != len(fiber) ** 2:
            ok = False
    return ok, words


# ---------------------------------------------------------------- brute force helpers


def _check_small(*qs: FiniteQuandle) -> None:
    for q in qs:
        if q.size > BRUTE_FORCE_LIMIT:
            raise SearchTooLarge(f"brute-force search is limited to {BRUTE_FORCE_LIMIT} elements")


def isomorphism(X: FiniteQuandle, Y: FiniteQuandle) -> tuple[int, ...] | None:
    """An isomorphism X -> Y found by exhaustive search, or None."""
    _check_small(X, Y)
    if X.size != Y.size:
        return None
    m = X.size
    for perm in itertools.permutations(range(m)):
        if all(perm[X.table[a][b]] == Y.table[perm[a]][perm[b]]
               for a in range(m) for b in range(m)):
            return perm
    return None


def automorphisms(X: FiniteQuandle) -> list[tuple[int, ...]]:
    _check_small(X)
    m = X.size
    return [p for p in itertools.permutations(range(m))
            if all(p[X.table[a][b]] == X.table[p[a]][p[b]] for a in range(m) for b in range(m))]


def weak_orbits(X: FiniteQuandle) -> list[tuple[int, ...]]:
    """Orbits under the full automorphism group (brute force, at most 8 elements)."""
    auts = automorphisms(X)
    seen = set()
    out = []
    for x in range(X.size):
        if x in seen:
            continue
        cls = tuple(sorted({p[x] for p in auts}))
        seen.update(cls)
        out.append(cls)
    return out
