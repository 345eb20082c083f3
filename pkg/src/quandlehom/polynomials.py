"""Laurent polynomials over Z or Z_n, and residue arithmetic modulo h(T)."""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .errors import NotFinite, ParseError


class LaurentPoly:
    """A Laurent polynomial with integer coefficients, optionally reduced mod n.

    Coefficients are stored sparsely as ``{exponent: coefficient}``; zero
    coefficients are never stored.  ``modulus == 0`` means coefficients in Z.
    """

    __slots__ = ("coeffs", "modulus")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[int] = (), modulus: int = 0):
        if modulus < 0:
            raise ValueError("modulus must be non-negative")
        if not isinstance(coeffs, Mapping):
            coeffs = dict(enumerate(coeffs))
        clean = {}
        for e, c in coeffs.items():
            c = int(c)
            if modulus:
                c %= modulus
            if c:
                clean[int(e)] = c
        self.coeffs = clean
        self.modulus = modulus

    # construction helpers
    @classmethod
    def monomial(cls, coefficient: int = 1, exponent: int = 1, modulus: int = 0) -> LaurentPoly:
        return cls({exponent: coefficient}, modulus)

    @classmethod
    def constant(cls, c: int, modulus: int = 0) -> LaurentPoly:
        return cls({0: c}, modulus)

    @classmethod
    def parse(cls, text: str, modulus: int = 0, var: str = "T") -> LaurentPoly:
        """Parse strings such as ``"1-T+T^3"``, ``"-4T-1"`` or ``"2*T^-1 + 3"``."""
        s = text.replace(" ", "").replace("**", "^").replace("*", "")
        if not s:
            raise ParseError("empty polynomial")
        term_re = re.compile(rf"([+-]?)(\d*)({var}(?:\^\(?(-?\d+)\)?)?)?")
        pos = 0
        coeffs: dict[int, int] = {}
        while pos < len(s):
            m = term_re.match(s, pos)
            if m is None or m.end() == pos or not (m.group(2) or m.group(3)):
                raise ParseError(f"cannot parse polynomial {text!r} at offset {pos}")
            sign = -1 if m.group(1) == "-" else 1
            c = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                e = int(m.group(4)) if m.group(4) is not None else 1
            else:
                e = 0
            coeffs[e] = coeffs.get(e, 0) + sign * c
            pos = m.end()
        return cls(coeffs, modulus)

    # basic queries
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    @property
    def low_degree(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def coefficient(self, e: int) -> int:
        return self.coeffs.get(e, 0)

    def coefficient_list(self) -> list[int]:
        """Coefficients ``[c_0, ..., c_d]``; requires no negative exponents."""
        if self.coeffs and self.low_degree < 0:
            raise ValueError("polynomial has negative exponents")
        return [self.coeffs.get(e, 0) for e in range(self.degree + 1)]

    def with_modulus(self, modulus: int) -> LaurentPoly:
        return LaurentPoly(self.coeffs, modulus)

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.modulus != self.modulus:
                if self.modulus == 0:
                    return other
                if other.modulus == 0:
                    return other.with_modulus(self.modulus)
                raise ValueError("mismatched moduli")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.modulus)
        return NotImplemented

    def _mod(self, other: LaurentPoly) -> int:
        return self.modulus or other.modulus

    # ring operations
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self._mod(other))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()}, self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out, self._mod(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((e, c),) = self.coeffs.items()
            if c not in (1, -1) and not (self.modulus and _inverse_mod(c, self.modulus)):
                raise ValueError("coefficient is not a unit")
            inv = c if c in (1, -1) else _inverse_mod(c, self.modulus)
            return LaurentPoly({-e: inv}, self.modulus) ** (-k)
        result = LaurentPoly.constant(1, self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``T**k``."""
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()}, self.modulus)

    def evaluate(self, value: int, modulus: int | None = None) -> int:
        """Evaluate at ``T = value``; negative exponents need ``value`` invertible."""
        n = self.modulus if modulus is None else modulus
        total = 0
        for e, c in self.coeffs.items():
            if e >= 0:
                term = c * value**e
            else:
                if value in (1, -1):
                    term = c * value ** (-e)
                elif n:
                    term = c * pow(_inverse_mod(value, n), -e, n)
                else:
                    raise ValueError("negative exponent at a non-unit value over Z")
            total += term
        return total % n if n else total

    def normalized(self) -> LaurentPoly:
        """Shift so that the lowest exponent is zero."""
        return self.shift(-self.low_degree) if self.coeffs else self

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.modulus)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.modulus != other.modulus:
            n = self.modulus or other.modulus
            return self.with_modulus(n).coeffs == other.with_modulus(n).coeffs
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((tuple(sorted(self.coeffs.items())), self.modulus))

    def __repr__(self):
        return f"LaurentPoly({self!s}{', mod ' + str(self.modulus) if self.modulus else ''})"

    def __str__(self):
        return format_poly(self.coeffs)


def format_poly(coeffs: Mapping[int, int], var: str = "T") -> str:
    if not coeffs:
        return "0"
    parts = []
    for e in sorted(coeffs):
        c = coeffs[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{a}{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


def _inverse_mod(a: int, n: int) -> int | None:
    try:
        return pow(a, -1, n)
    except ValueError:
        return None


class ResidueRing:
    """The ring Z_n[T, T^{-1}]/(h) for a Laurent polynomial h with unit end coefficients.

    Residues are canonical coefficient tuples of length ``deg h`` (after h is
    shifted to start at T^0 and made monic).  Elements index as base-n
    numbers: the coefficient of T^k is the k-th digit.
    """

    def __init__(self, modulus: int, h: LaurentPoly | Iterable[int]):
        if modulus < 2:
            raise NotFinite("residue rings need a modulus n >= 2")
        if not isinstance(h, LaurentPoly):
            h = LaurentPoly(list(h))
        h = h.with_modulus(modulus).normalized()
        if h.is_zero():
            raise NotFinite("h vanishes mod n")
        lead = h.coefficient(h.degree)
        const = h.coefficient(0)
        lead_inv = _inverse_mod(lead, modulus)
        if lead_inv is None or _inverse_mod(const, modulus) is None:
            raise NotFinite(
                f"leading and constant coefficients of {h} must be units mod {modulus}"
            )
        self.modulus = modulus
        self.h = h * lead_inv
        self.degree = self.h.degree
        self._h_list = self.h.coefficient_list()
        # T^{-1} = -h_0^{-1} (h_1 + h_2 T + ... + T^{d-1})
        c0_inv = _inverse_mod(self._h_list[0], modulus)
        self._t_inverse = tuple((-c0_inv * c) % modulus for c in self._h_list[1:])

    @property
    def size(self) -> int:
        return self.modulus**self.degree

    def reduce(self, p: LaurentPoly | Iterable[int]) -> tuple[int, ...]:
        """Canonical residue of a Laurent polynomial."""
        if not isinstance(p, LaurentPoly):
            p = LaurentPoly(list(p))
        n, d = self.modulus, self.degree
        if d == 0:
            return ()
        low = p.low_degree if p.coeffs else 0
        shift = -low if low < 0 else 0
        q = p.with_modulus(n).shift(shift)
        coeffs = q.coefficient_list() if q.coeffs else []
        rem = self._reduce_list(coeffs)
        for _ in range(shift):
            rem = self.mul(rem, self._t_inverse)
        return rem

    def _reduce_list(self, coeffs: list[int]) -> tuple[int, ...]:
        n, d, h = self.modulus, self.degree, self._h_list
        c = [x % n for x in coeffs]
        for top in range(len(c) - 1, d - 1, -1):
            a = c[top]
            if a:
                base = top - d
                for k in range(d + 1):
                    c[base + k] = (c[base + k] - a * h[k]) % n
        c = c[:d] + [0] * max(0, d - len(c))
        return tuple(c)

    def add(self, a, b):
        n = self.modulus
        return tuple((x + y) % n for x, y in zip(a, b))

    def sub(self, a, b):
        n = self.modulus
        return tuple((x - y) % n for x, y in zip(a, b))

    def mul(self, a, b):
        d = self.degree
        if d == 0:
            return ()
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._reduce_list(prod)

    def from_int(self, c: int) -> tuple[int, ...]:
        return self.reduce(LaurentPoly.constant(c))

    def t(self) -> tuple[int, ...]:
        return self.reduce(LaurentPoly.monomial(1, 1))

    def index(self, residue: tuple[int, ...]) -> int:
        n = self.modulus
        idx = 0
        for c in reversed(residue):
            idx = idx * n + c
        return idx

    def element(self, index: int) -> tuple[int, ...]:
        n = self.modulus
        out = []
        for _ in range(self.degree):
            out.append(index % n)
            index //= n
        return tuple(out)

    def to_poly(self, residue: tuple[int, ...]) -> LaurentPoly:
        return LaurentPoly(list(residue), self.modulus)

    def name(self, residue: tuple[int, ...]) -> str:
        return format_poly(dict(enumerate(residue)))
